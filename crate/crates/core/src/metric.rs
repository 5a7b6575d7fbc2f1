//! Chordal metric on the slice `|x|_1 = 1`, Hausdorff distances and clustering.
//!
//! For `x, y` on `Q̂` we have `B(x - y, x - y) = -2 B(x, y)`, so
//! `sqrt(B(x - y, x - y) / 2)` agrees with `|B(x, y)|^{1/2}` there. The
//! difference form is used everywhere: it stays a metric on the whole slice
//! (`B` is positive definite on `|v|_1 = 0`) and loses no precision when the
//! points are close.

use kdtree::distance::squared_euclidean;
use kdtree::KdTree;
use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, NormalizationData};

/// `sqrt(max(0, B(x - y, x - y)) / 2)`.
pub fn chordal_d(form: &BilinearForm, x: &[f64], y: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    (form.qvalue(&d).max(0.0) / 2.0).sqrt()
}

/// `|B(x, y)|^{1/2}`, the textbook expression; only meaningful on `Q̂`.
pub fn chordal_raw(form: &BilinearForm, x: &[f64], y: &[f64]) -> f64 {
    form.pair(x, y).abs().sqrt()
}

/// Sum of chordal distances between consecutive points.
pub fn chain_length(form: &BilinearForm, polyline: &[Vec<f64>]) -> f64 {
    polyline
        .windows(2)
        .map(|w| chordal_d(form, &w[0], &w[1]))
        .sum()
}

/// Linear map sending the slice to Euclidean space so that Euclidean distance
/// equals [`chordal_d`].
#[derive(Clone, Debug)]
pub struct ChordalEmbedding {
    rows: DMatrix<f64>,
}

impl ChordalEmbedding {
    pub fn new(form: &BilinearForm, nd: &NormalizationData) -> Self {
        let n = form.rank();
        let o = nalgebra::DVector::from_column_slice(nd.o());
        let o = o.normalize();
        // Orthonormal basis of o^perp from the QR factorization of [o | I].
        let mut m = DMatrix::zeros(n, n + 1);
        m.column_mut(0).copy_from(&o);
        m.view_mut((0, 1), (n, n))
            .copy_from(&DMatrix::identity(n, n));
        let q = m.qr().q();
        let basis = q.columns(1, n - 1).into_owned();
        let g = basis.transpose() * form.matrix() * &basis;
        let eig = SymmetricEigen::new(g);
        let scale = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| (l.max(0.0) / 2.0).sqrt()));
        let rows = scale * eig.eigenvectors.transpose() * basis.transpose();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.nrows()
    }

    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        let n = self.rows.ncols();
        (0..self.rows.nrows())
            .map(|r| (0..n).map(|c| self.rows[(r, c)] * x[c]).sum())
            .collect()
    }

    pub fn embed_cloud(&self, cloud: &PointCloud) -> Vec<Vec<f64>> {
        cloud
            .points()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|p| self.embed(p))
            .collect()
    }
}

/// Nearest-neighbour index over an embedded cloud.
pub struct ChordalIndex {
    embedding: ChordalEmbedding,
    tree: KdTree<f64, usize, Vec<f64>>,
    len: usize,
}

impl ChordalIndex {
    pub fn new(embedding: ChordalEmbedding, cloud: &PointCloud) -> Self {
        let pts = embedding.embed_cloud(cloud);
        let mut tree = KdTree::with_capacity(embedding.dim().max(1), 64);
        for (k, p) in pts.into_iter().enumerate() {
            tree.add(p, k).expect("finite embedded point");
        }
        Self {
            embedding,
            tree,
            len: cloud.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn embedding(&self) -> &ChordalEmbedding {
        &self.embedding
    }

    /// Nearest indexed point to the raw slice point `x`: `(index, distance)`.
    pub fn nearest(&self, x: &[f64]) -> Option<(usize, f64)> {
        self.nearest_embedded(&self.embedding.embed(x))
    }

    /// Indices of points within chordal distance `r` of the raw slice point `x`.
    pub fn within(&self, x: &[f64], r: f64) -> Vec<usize> {
        self.within_embedded(&self.embedding.embed(x), r)
    }

    fn nearest_embedded(&self, e: &[f64]) -> Option<(usize, f64)> {
        self.tree
            .nearest(e, 1, &squared_euclidean)
            .ok()?
            .first()
            .map(|&(d2, &k)| (k, d2.sqrt()))
    }

    /// Second-nearest distance, for nearest-neighbour statistics of the indexed cloud itself.
    fn second_nearest_embedded(&self, e: &[f64]) -> Option<f64> {
        self.tree
            .nearest(e, 2, &squared_euclidean)
            .ok()?
            .get(1)
            .map(|&(d2, _)| d2.sqrt())
    }

    fn within_embedded(&self, e: &[f64], r: f64) -> Vec<usize> {
        self.tree
            .within(e, r * r, &squared_euclidean)
            .map(|v| v.into_iter().map(|(_, &k)| k).collect())
            .unwrap_or_default()
    }
}

/// Directed distances `sup_a inf_b` in both directions and their maximum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Hausdorff {
    pub a_to_b: f64,
    pub b_to_a: f64,
    pub symmetric: f64,
}

/// `sup_{a in A} inf_{b in B} chordal_d(a, b)`.
pub fn directed_hausdorff(
    form: &BilinearForm,
    nd: &NormalizationData,
    a: &PointCloud,
    b: &PointCloud,
) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let index = ChordalIndex::new(ChordalEmbedding::new(form, nd), b);
    Ok(directed_to_index(&index, a))
}

/// Directed distance from every point of `a` to an existing index.
pub fn directed_to_index(index: &ChordalIndex, a: &PointCloud) -> f64 {
    nearest_distances(index, a).into_iter().fold(0.0, f64::max)
}

/// Distance from each point of `a` to its nearest indexed point.
pub fn nearest_distances(index: &ChordalIndex, a: &PointCloud) -> Vec<f64> {
    a.points()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| index.nearest(p).map_or(f64::INFINITY, |(_, d)| d))
        .collect()
}

pub fn hausdorff(
    form: &BilinearForm,
    nd: &NormalizationData,
    a: &PointCloud,
    b: &PointCloud,
) -> Result<Hausdorff> {
    let a_to_b = directed_hausdorff(form, nd, a, b)?;
    let b_to_a = directed_hausdorff(form, nd, b, a)?;
    Ok(Hausdorff {
        a_to_b,
        b_to_a,
        symmetric: a_to_b.max(b_to_a),
    })
}

/// Median distance from each point to its nearest other point.
pub fn median_nn_distance(form: &BilinearForm, nd: &NormalizationData, cloud: &PointCloud) -> f64 {
    if cloud.len() < 2 {
        return 0.0;
    }
    let emb = ChordalEmbedding::new(form, nd);
    let pts = emb.embed_cloud(cloud);
    let index = ChordalIndex::new(emb, cloud);
    let mut d: Vec<f64> = pts
        .par_iter()
        .map(|e| index.second_nearest_embedded(e).unwrap_or(0.0))
        .collect();
    d.sort_by(f64::total_cmp);
    d[d.len() / 2]
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Component label per element, numbered by first appearance.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut map = std::collections::HashMap::new();
        (0..n)
            .map(|x| {
                let r = self.find(x);
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect()
    }
}

/// Single-linkage clusters: points closer than `radius` share a label.
/// Returns labels numbered by first appearance and the cluster count.
pub fn clusters(
    form: &BilinearForm,
    nd: &NormalizationData,
    cloud: &PointCloud,
    radius: f64,
) -> (Vec<usize>, usize) {
    let emb = ChordalEmbedding::new(form, nd);
    let pts = emb.embed_cloud(cloud);
    let index = ChordalIndex::new(emb, cloud);
    let neighbours: Vec<Vec<usize>> = pts
        .par_iter()
        .map(|e| index.within_embedded(e, radius))
        .collect();
    let mut uf = UnionFind::new(cloud.len());
    for (k, nb) in neighbours.iter().enumerate() {
        for &j in nb {
            uf.union(k, j);
        }
    }
    let labels = uf.labels();
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    (labels, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Bond, CoxeterSpec};

    fn triangle337() -> (BilinearForm, NormalizationData) {
        let spec = CoxeterSpec::new(3)
            .unwrap()
            .with_bond(0, 1, Bond::Order(3))
            .unwrap()
            .with_bond(1, 2, Bond::Order(3))
            .unwrap()
            .with_bond(0, 2, Bond::Order(7))
            .unwrap();
        let f = BilinearForm::from_spec(&spec).unwrap();
        let nd = f.normalization(1e-9).unwrap();
        (f, nd)
    }

    /// Point of the isotropic ellipse at angle `t`, built from the 3x3
    /// eigen-decomposition independently of the sampler.
    fn ellipse_point(f: &BilinearForm, nd: &NormalizationData, t: f64) -> Vec<f64> {
        let l = f.eigenvalues();
        let u = f.eigenvectors();
        let (a1, a2) = ((-l[0] / l[1]).sqrt(), (-l[0] / l[2]).sqrt());
        (0..3)
            .map(|i| nd.o()[i] + a1 * t.cos() * u[(i, 1)] + a2 * t.sin() * u[(i, 2)])
            .collect()
    }

    #[test]
    fn chordal_agrees_with_raw_on_qhat() {
        let (f, nd) = triangle337();
        let x = ellipse_point(&f, &nd, 0.3);
        let y = ellipse_point(&f, &nd, 2.0);
        assert!(f.qvalue(&x).abs() < 1e-12);
        assert!((chordal_d(&f, &x, &y) - chordal_raw(&f, &x, &y)).abs() < 1e-12);
        assert!(f.pair(&x, &y) < 0.0);
        assert_eq!(chordal_d(&f, &x, &x), 0.0);
    }

    #[test]
    fn embedding_is_isometric() {
        let (f, nd) = triangle337();
        let emb = ChordalEmbedding::new(&f, &nd);
        assert_eq!(emb.dim(), 2);
        for (s, t) in [(0.1, 0.2), (1.0, 4.0), (2.5, 2.5 + 1e-6)] {
            let (x, y) = (ellipse_point(&f, &nd, s), ellipse_point(&f, &nd, t));
            let (ex, ey) = (emb.embed(&x), emb.embed(&y));
            let e: f64 = ex
                .iter()
                .zip(&ey)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((e - chordal_d(&f, &x, &y)).abs() < 1e-12);
        }
    }

    #[test]
    fn hausdorff_examples() {
        let (f, nd) = triangle337();
        let mut a = PointCloud::new(3);
        for k in 0..200 {
            let x = ellipse_point(&f, &nd, k as f64 * 0.0314159);
            a.push(&x, f.qvalue(&x), 0, -1);
        }
        let h = hausdorff(&f, &nd, &a, &a).unwrap();
        assert_eq!(h.symmetric, 0.0);
        let sub = a.thin(4, 0);
        let h = hausdorff(&f, &nd, &sub, &a).unwrap();
        assert!(h.a_to_b < 1e-12 && h.b_to_a > 0.0);
        let (p, q) = (a.select(&[3]), a.select(&[77]));
        let h = hausdorff(&f, &nd, &p, &q).unwrap();
        assert!((h.symmetric - chordal_d(&f, p.point(0), q.point(0))).abs() < 1e-12);
        assert!(matches!(
            hausdorff(&f, &nd, &PointCloud::new(3), &a),
            Err(Error::EmptyCloud)
        ));
    }

    #[test]
    fn clusters_split_at_gaps() {
        let (f, nd) = triangle337();
        let mut c = PointCloud::new(3);
        for t in [0.0, 1e-5, 2e-5, 1.0, 1.0 + 1e-5, 3.0] {
            let x = ellipse_point(&f, &nd, t);
            c.push(&x, 0.0, 0, -1);
        }
        let (labels, count) = clusters(&f, &nd, &c, 1e-3);
        assert_eq!(count, 3);
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 2]);
    }

    #[test]
    fn chain_refinement_single_segment() {
        let (f, nd) = triangle337();
        let x = ellipse_point(&f, &nd, 0.0);
        let y = ellipse_point(&f, &nd, 0.5);
        assert_eq!(
            chain_length(&f, &[x.clone(), y.clone()]),
            chordal_d(&f, &x, &y)
        );
    }

    #[test]
    fn union_find_labels() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 4);
        uf.union(0, 4);
        assert_eq!(uf.labels(), vec![0, 1, 2, 0, 0]);
    }
}
