//! Breadth-first enumeration of positive roots and their normalization.

use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::forms::{normalize, BilinearForm, NormalizationData};
use crate::quantize::QuantizedIndex;

/// Default bound on the number of stored roots.
pub const DEFAULT_ROOT_CAP: usize = 10_000_000;

/// Minimum allowed coordinate of a positive root.
pub const EPS_POS: f64 = 1e-9;

/// `s_i(v) = v - 2 B(alpha_i, v) alpha_i`.
pub fn reflect(form: &BilinearForm, i: usize, v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    reflect_in_place(form, i, &mut out);
    out
}

pub fn reflect_in_place(form: &BilinearForm, i: usize, v: &mut [f64]) {
    let b = form.pair_simple(i, v);
    v[i] -= 2.0 * b;
}

/// Reflection in an arbitrary non-isotropic vector `alpha`.
pub fn reflect_along(form: &BilinearForm, alpha: &[f64], v: &[f64]) -> Vec<f64> {
    let k = 2.0 * form.pair(alpha, v) / form.qvalue(alpha);
    v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
}

/// A positive root with the word that produced it: `vector = s_{word[k-1]} ... s_{word[0]} alpha_base`.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub vector: Vec<f64>,
    pub depth: usize,
    pub base: usize,
    pub word: Vec<usize>,
}

/// Positive roots stored column-wise, in BFS order.
#[derive(Clone, Debug)]
pub struct RootInventory {
    rank: usize,
    coords: Vec<f64>,
    depth: Vec<u32>,
    parent: Vec<u32>,
    generator: Vec<u16>,
    by_depth: Vec<usize>,
    max_depth: usize,
}

const NO_PARENT: u32 = u32::MAX;

impl RootInventory {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    /// Depth bound the enumeration ran to.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Number of roots at each depth `0..=max_depth`.
    pub fn by_depth(&self) -> &[usize] {
        &self.by_depth
    }

    pub fn count_at_depth(&self, d: usize) -> usize {
        self.by_depth.get(d).copied().unwrap_or(0)
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.coords[k * self.rank..(k + 1) * self.rank]
    }

    pub fn depth(&self, k: usize) -> usize {
        self.depth[k] as usize
    }

    pub fn root(&self, k: usize) -> Root {
        let mut word = Vec::new();
        let mut cur = k;
        while self.parent[cur] != NO_PARENT {
            word.push(self.generator[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        word.reverse();
        Root {
            vector: self.vector(k).to_vec(),
            depth: self.depth(k),
            base: self.generator[cur] as usize,
            word,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], usize)> + '_ {
        self.coords
            .chunks_exact(self.rank)
            .zip(&self.depth)
            .map(|(v, &d)| (v, d as usize))
    }
}

/// Roots reachable from the simple roots by at most `max_depth` reflections.
pub fn enumerate_roots(form: &BilinearForm, max_depth: usize, quant: f64) -> Result<RootInventory> {
    enumerate_roots_capped(form, max_depth, quant, DEFAULT_ROOT_CAP)
}

/// As [`enumerate_roots`] with an explicit bound on the inventory size.
///
/// Only ascents (`B(alpha_i, rho) < 0`) are followed: every root of depth
/// `d + 1` is such a reflection of a root of depth `d`, so duplicates can only
/// occur within a layer and are removed there.
pub fn enumerate_roots_capped(
    form: &BilinearForm,
    max_depth: usize,
    quant: f64,
    cap: usize,
) -> Result<RootInventory> {
    let n = form.rank();
    let mut inv = RootInventory {
        rank: n,
        coords: Vec::new(),
        depth: Vec::new(),
        parent: Vec::new(),
        generator: Vec::new(),
        by_depth: vec![n],
        max_depth,
    };
    if n > cap {
        return Err(Error::Overflow { cap });
    }
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        inv.coords.extend(v);
        inv.depth.push(0);
        inv.parent.push(NO_PARENT);
        inv.generator.push(i as u16);
    }
    let mut layer = 0..n;
    for d in 1..=max_depth {
        let frontier: Vec<usize> = layer.clone().collect();
        let children: Vec<(usize, usize, Vec<f64>)> = frontier
            .par_iter()
            .flat_map_iter(|&k| {
                let v = inv.vector(k);
                (0..n).filter_map(move |i| {
                    let b = form.pair_simple(i, v);
                    if b < -EPS_POS {
                        let mut c = v.to_vec();
                        c[i] -= 2.0 * b;
                        Some((k, i, c))
                    } else {
                        None
                    }
                })
            })
            .collect();
        let start = inv.len();
        let mut index = QuantizedIndex::new(quant);
        for (parent, gen, c) in children {
            if index.insert(&c, inv.len()).is_err() {
                continue;
            }
            if let Some(&m) = c.iter().min_by(|a, b| a.total_cmp(b)) {
                if m < -EPS_POS {
                    return Err(Error::NegativeRoot { depth: d, value: m });
                }
            }
            if inv.len() >= cap {
                return Err(Error::Overflow { cap });
            }
            inv.coords.extend(c);
            inv.depth.push(d as u32);
            inv.parent.push(parent as u32);
            inv.generator.push(gen as u16);
        }
        let count = inv.len() - start;
        inv.by_depth.push(count);
        if count == 0 {
            inv.by_depth.resize(max_depth + 1, 0);
            break;
        }
        layer = start..inv.len();
    }
    Ok(inv)
}

/// One normalized point per root, labelled with its depth.
pub fn normalized_roots(
    form: &BilinearForm,
    inv: &RootInventory,
    nd: &NormalizationData,
    eps0: f64,
) -> Result<PointCloud> {
    let points: Vec<_> = inv
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(v, _)| normalize(form, nd, v, eps0))
        .collect::<Result<_>>()?;
    let mut cloud = PointCloud::with_capacity(inv.rank(), inv.len());
    for (p, (_, d)) in points.iter().zip(inv.iter()) {
        cloud.push(&p.coords, p.qvalue, d, -1);
    }
    Ok(cloud)
}

/// Points of depth at least `depth_min` and the fraction with `|q| <= eps_q`.
#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub cloud: PointCloud,
    pub depth_min: usize,
    pub eps_q: f64,
    pub pass_fraction: f64,
}

pub fn limit_estimate(cloud: &PointCloud, depth_min: usize, eps_q: f64) -> Result<LimitEstimate> {
    let sub = cloud.filter(|k| cloud.depth(k) >= depth_min);
    if sub.is_empty() {
        return Err(Error::EmptyEstimate { depth_min });
    }
    let pass = (0..sub.len())
        .filter(|&k| sub.qvalue(k).abs() <= eps_q)
        .count();
    Ok(LimitEstimate {
        pass_fraction: pass as f64 / sub.len() as f64,
        cloud: sub,
        depth_min,
        eps_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Bond, CoxeterSpec};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn form2(bond: Bond) -> BilinearForm {
        let spec = CoxeterSpec::new(2).unwrap().with_bond(0, 1, bond).unwrap();
        BilinearForm::from_spec(&spec).unwrap()
    }

    fn triangle(p: u32, q: u32, r: u32) -> BilinearForm {
        let spec = CoxeterSpec::new(3)
            .unwrap()
            .with_bond(0, 1, Bond::Order(p))
            .unwrap()
            .with_bond(1, 2, Bond::Order(q))
            .unwrap()
            .with_bond(0, 2, Bond::Order(r))
            .unwrap();
        BilinearForm::from_spec(&spec).unwrap()
    }

    /// Closure of the simple roots under all simple reflections, with no depth
    /// bookkeeping; positives are the vectors with nonnegative coordinates.
    fn brute_force_positive_count(form: &BilinearForm) -> usize {
        let n = form.rank();
        let mut seen: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let mut k = 0;
        while k < seen.len() {
            assert!(seen.len() < 10_000, "closure did not terminate");
            for i in 0..n {
                let w: Vec<f64> = {
                    let v = &seen[k];
                    let b: f64 = (0..n).map(|j| form.entry(i, j) * v[j]).sum();
                    let mut w = v.clone();
                    w[i] -= 2.0 * b;
                    w
                };
                if !seen
                    .iter()
                    .any(|u| u.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-9))
                {
                    seen.push(w);
                }
            }
            k += 1;
        }
        seen.iter()
            .filter(|v| v.iter().all(|&x| x >= -1e-9))
            .count()
    }

    #[test]
    fn reflect_examples() {
        let f = form2(Bond::Order(3));
        let close = |a: Vec<f64>, b: [f64; 2]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(reflect(&f, 0, &[1.0, 0.0]), [-1.0, 0.0]));
        assert!(close(reflect(&f, 0, &[1.0, 2.0]), [1.0, 2.0]));
        assert!(close(reflect(&f, 0, &[0.0, 1.0]), [1.0, 1.0]));
    }

    #[test]
    fn finite_dihedral_closure() {
        for (m, expected) in [(3, 3), (4, 4), (5, 5), (6, 6)] {
            let f = form2(Bond::Order(m));
            let inv = enumerate_roots(&f, 50, 1e-8).unwrap();
            assert_eq!(inv.len(), expected);
            assert_eq!(brute_force_positive_count(&f), expected);
        }
    }

    #[test]
    fn finite_rank3_closure_matches_brute_force() {
        // A3, B3, H3 have 6, 9, 15 positive roots.
        for ((p, q, r), expected) in [((3, 3, 2), 6), ((4, 3, 2), 9), ((5, 3, 2), 15)] {
            let f = triangle(p, q, r);
            let inv = enumerate_roots(&f, 100, 1e-8).unwrap();
            assert_eq!(inv.len(), expected);
            assert_eq!(brute_force_positive_count(&f), expected);
        }
    }

    #[test]
    fn lorentzian_layers_never_empty() {
        let f = triangle(3, 3, 7);
        let inv = enumerate_roots(&f, 15, 1e-8).unwrap();
        assert!(inv.by_depth().iter().all(|&c| c > 0));
        assert_eq!(&inv.by_depth()[..6], &[3, 4, 6, 9, 13, 20]);
    }

    #[test]
    fn witnesses_reproduce_roots() {
        let f = triangle(3, 3, 7);
        let inv = enumerate_roots(&f, 10, 1e-8).unwrap();
        for k in (0..inv.len()).step_by(7) {
            let r = inv.root(k);
            assert_eq!(r.word.len(), r.depth);
            let mut v = vec![0.0; 3];
            v[r.base] = 1.0;
            for &g in &r.word {
                reflect_in_place(&f, g, &mut v);
            }
            for (a, b) in v.iter().zip(&r.vector) {
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let f = triangle(3, 3, 7);
        assert!(matches!(
            enumerate_roots_capped(&f, 20, 1e-8, 100),
            Err(Error::Overflow { cap: 100 })
        ));
    }

    #[test]
    fn normalized_simple_roots_are_vertices() {
        let f = triangle(3, 3, 7);
        let nd = f.normalization(1e-9).unwrap();
        let inv = enumerate_roots(&f, 0, 1e-8).unwrap();
        let cloud = normalized_roots(&f, &inv, &nd, 1e-12).unwrap();
        for i in 0..3 {
            let p = cloud.point(i);
            assert!((p[i] - 1.0 / nd.o()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn deep_root_flatter_than_ancestor() {
        let f = triangle(3, 3, 7);
        let nd = f.normalization(1e-9).unwrap();
        let inv = enumerate_roots(&f, 10, 1e-8).unwrap();
        let k = (0..inv.len()).find(|&k| inv.depth(k) == 10).unwrap();
        let r = inv.root(k);
        let mut v = vec![0.0; 3];
        v[r.base] = 1.0;
        for &g in &r.word[..5] {
            reflect_in_place(&f, g, &mut v);
        }
        let ancestor = normalize(&f, &nd, &v, 1e-12).unwrap();
        let deep = normalize(&f, &nd, inv.vector(k), 1e-12).unwrap();
        assert!(deep.qvalue > 0.0 && deep.qvalue < ancestor.qvalue);
    }

    #[test]
    fn finite_group_has_empty_estimate() {
        let f = form2(Bond::Order(5));
        let nd = f.normalization(1e-9).unwrap();
        let inv = enumerate_roots(&f, 30, 1e-8).unwrap();
        let cloud = normalized_roots(&f, &inv, &nd, 1e-12).unwrap();
        assert!(matches!(
            limit_estimate(&cloud, 5, 1e-2),
            Err(Error::EmptyEstimate { depth_min: 5 })
        ));
    }

    fn arb_form3() -> impl Strategy<Value = BilinearForm> {
        let entry = prop_oneof![
            (2u32..8).prop_map(Bond::Order),
            (-3.0f64..-1.0).prop_map(Bond::Infinite)
        ];
        (entry.clone(), entry.clone(), entry).prop_map(|(a, b, c)| {
            let m = DMatrix::from_row_slice(
                3,
                3,
                &[
                    1.0,
                    a.weight(),
                    c.weight(),
                    a.weight(),
                    1.0,
                    b.weight(),
                    c.weight(),
                    b.weight(),
                    1.0,
                ],
            );
            BilinearForm::from_matrix(m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn reflection_is_involutive(f in arb_form3(), i in 0usize..3, v in prop::array::uniform3(-10.0f64..10.0)) {
            let w = reflect(&f, i, &reflect(&f, i, &v));
            for (a, b) in v.iter().zip(&w) {
                prop_assert!((a - b).abs() <= 1e-12 * v.iter().fold(1.0f64, |m, x| m.max(x.abs())) * 10.0);
            }
        }

        #[test]
        fn reflection_preserves_form(f in arb_form3(), i in 0usize..3,
                                     u in prop::array::uniform3(-10.0f64..10.0),
                                     v in prop::array::uniform3(-10.0f64..10.0)) {
            let before = f.pair(&u, &v);
            let after = f.pair(&reflect(&f, i, &u), &reflect(&f, i, &v));
            let scale = 1.0 + u.iter().map(|x| x.abs()).sum::<f64>() * v.iter().map(|x| x.abs()).sum::<f64>();
            prop_assert!((before - after).abs() <= 1e-10 * scale);
        }

        #[test]
        fn roots_are_positive_with_positive_norm(
            f in arb_form3().prop_filter("irreducible", |f| [(0, 1), (1, 2), (0, 2)].iter().filter(|&&(i, j)| f.entry(i, j) != 0.0).count() >= 2)
        ) {
            if let Ok(nd) = f.normalization(1e-9) {
                let inv = enumerate_roots_capped(&f, 8, 1e-8, 100_000).unwrap();
                for (v, _) in inv.iter() {
                    prop_assert!(v.iter().all(|&x| x >= -EPS_POS));
                    prop_assert!(nd.norm1(v) > 0.0);
                }
            }
        }
    }
}
