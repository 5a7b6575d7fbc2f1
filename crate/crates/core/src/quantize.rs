//! Hash index over real vectors rounded to a fixed grid.

use std::collections::HashMap;

/// Maps quantized coordinate keys to caller-side ids.
///
/// Two vectors are identified when every coordinate differs by at most `quant`.
/// A coordinate lying near a cell boundary is also looked up in the adjacent
/// cell, so rounding noise cannot split a single vector across two keys.
#[derive(Debug)]
pub struct QuantizedIndex {
    quant: f64,
    map: HashMap<Box<[i128]>, usize>,
}

const STRADDLE: f64 = 0.4;
const MAX_STRADDLE: usize = 6;

impl QuantizedIndex {
    pub fn new(quant: f64) -> Self {
        assert!(quant > 0.0, "quantization step must be positive");
        Self {
            quant,
            map: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn key(&self, v: &[f64]) -> (Box<[i128]>, Vec<(usize, i128)>) {
        let mut alts = Vec::new();
        let key = v
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let s = x / self.quant;
                let r = s.round();
                let res = s - r;
                if res.abs() > STRADDLE {
                    alts.push((i, if res > 0.0 { 1 } else { -1 }));
                }
                r as i128
            })
            .collect();
        alts.truncate(MAX_STRADDLE);
        (key, alts)
    }

    /// Id stored for a vector equal to `v` up to quantization.
    pub fn get(&self, v: &[f64]) -> Option<usize> {
        let (key, alts) = self.key(v);
        self.probe(key, &alts)
    }

    fn probe(&self, mut key: Box<[i128]>, alts: &[(usize, i128)]) -> Option<usize> {
        for mask in 0u32..(1 << alts.len()) {
            for (b, &(i, d)) in alts.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    key[i] += d;
                }
            }
            let hit = self.map.get(&key).copied();
            for (b, &(i, d)) in alts.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    key[i] -= d;
                }
            }
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Inserts `v` with `id` unless an equal vector is present; returns the
    /// existing id in that case.
    pub fn insert(&mut self, v: &[f64], id: usize) -> Result<(), usize> {
        let (key, alts) = self.key(v);
        if let Some(existing) = self.probe(key.clone(), &alts) {
            return Err(existing);
        }
        self.map.insert(key, id);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifies_nearby_vectors() {
        let mut idx = QuantizedIndex::new(1e-8);
        assert_eq!(idx.insert(&[1.0, 2.0], 0), Ok(()));
        assert_eq!(idx.insert(&[1.0 + 1e-12, 2.0 - 1e-12], 1), Err(0));
        assert_eq!(idx.insert(&[1.0 + 1e-6, 2.0], 1), Ok(()));
        assert_eq!(idx.len(), 2);
    }

    #[test]
    fn boundary_straddle_is_merged() {
        let mut idx = QuantizedIndex::new(1.0);
        idx.insert(&[0.4999999, 3.0], 7).unwrap();
        assert_eq!(idx.get(&[0.5000001, 3.0]), Some(7));
    }

    #[test]
    fn large_coordinates_do_not_overflow() {
        let mut idx = QuantizedIndex::new(1e-8);
        idx.insert(&[3.0e15, -2.0e15], 0).unwrap();
        assert_eq!(idx.get(&[3.0e15, -2.0e15]), Some(0));
    }
}
