//! Words in the generators and their matrices.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{BilinearForm, CoxeterSystem, NormalizedPoint};
use crate::quantize::QuantizedIndex;

/// Matrix acting on simple-root coordinates, tagged with a word.
///
/// The word `(i_1, ..., i_k)` has matrix `S_{i_1} ... S_{i_k}`, where
/// `S_i = I - 2 e_i e_i^T B` is the simple reflection.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    matrix: DMatrix<f64>,
    word: Vec<usize>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            word: Vec::new(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    /// `S_i * self`.
    pub fn left_multiply(&self, form: &BilinearForm, i: usize) -> GroupElement {
        let n = self.rank();
        let mut m = self.matrix.clone();
        for c in 0..n {
            let b: f64 = (0..n).map(|j| form.entry(i, j) * self.matrix[(j, c)]).sum();
            m[(i, c)] -= 2.0 * b;
        }
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(i);
        word.extend_from_slice(&self.word);
        GroupElement { matrix: m, word }
    }

    /// `self * other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
            word: self.word.iter().chain(&other.word).copied().collect(),
        }
    }

    /// Inverse, computed as the reversed word rather than by matrix inversion.
    pub fn inverse(&self, form: &BilinearForm) -> GroupElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        word_matrix(form, &rev)
    }

    pub fn power(&self, k: usize) -> GroupElement {
        let mut out = GroupElement::identity(self.rank());
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.rank();
        (0..n)
            .map(|r| (0..n).map(|c| self.matrix[(r, c)] * v[c]).sum())
            .collect()
    }

    /// `max |M^T B M - B|`.
    pub fn preservation_error(&self, form: &BilinearForm) -> f64 {
        let d = self.matrix.transpose() * form.matrix() * &self.matrix - form.matrix();
        d.amax()
    }

    /// `preservation_error / max(1, max|M|^2)`: round-off in `M^T B M` scales
    /// with the square of the entries, so this is the size-independent measure.
    pub fn relative_preservation_error(&self, form: &BilinearForm) -> f64 {
        let m = self.matrix.amax().max(1.0);
        self.preservation_error(form) / (m * m)
    }

    /// `max |M - I|`.
    pub fn distance_to_identity(&self) -> f64 {
        (&self.matrix - DMatrix::identity(self.rank(), self.rank())).amax()
    }
}

/// Matrix of the word, multiplied in word order.
pub fn word_matrix(form: &BilinearForm, word: &[usize]) -> GroupElement {
    let mut g = GroupElement::identity(form.rank());
    for &i in word.iter().rev() {
        g = g.left_multiply(form, i);
    }
    g
}

/// `w(x) / |w(x)|_1`.
pub fn normalized_action(
    sys: &CoxeterSystem,
    w: &GroupElement,
    x: &[f64],
) -> Result<NormalizedPoint> {
    sys.normalize(&w.apply(x))
}

/// Distinct elements of word length at most `max_len`, breadth first.
///
/// Elements are identified by their matrices quantized at `quant`; the
/// representative word of each is the first found, hence of minimal length.
pub fn enumerate_elements(
    form: &BilinearForm,
    max_len: usize,
    quant: f64,
    cap: usize,
) -> Result<Vec<GroupElement>> {
    let n = form.rank();
    let mut out = vec![GroupElement::identity(n)];
    let mut index = QuantizedIndex::new(quant);
    index
        .insert(out[0].matrix.as_slice(), 0)
        .expect("empty index");
    let mut layer = 0..1;
    for _ in 0..max_len {
        let candidates: Vec<GroupElement> = out[layer.clone()]
            .par_iter()
            .flat_map_iter(|g| {
                (0..n)
                    .filter(move |&i| g.word.first() != Some(&i))
                    .map(move |i| g.left_multiply(form, i))
            })
            .collect();
        let start = out.len();
        for g in candidates {
            if index.insert(g.matrix.as_slice(), out.len()).is_ok() {
                if out.len() >= cap {
                    return Err(Error::Overflow { cap });
                }
                out.push(g);
            }
        }
        if out.len() == start {
            break;
        }
        layer = start..out.len();
    }
    Ok(out)
}
