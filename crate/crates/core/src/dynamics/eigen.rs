//! Fixed points of a group element on `Q̂` from its real eigenvectors.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::dynamics::element::{word_matrix, GroupElement};
use crate::error::{Error, Result};
use crate::forms::{CoxeterSystem, NormalizedPoint};
use crate::geometry::sampler::sphere_directions;

/// Real eigenvalues within this distance of `+-1` are treated as unimodular.
/// Unipotent Jordan blocks split by about the cube root of round-off, so the
/// threshold is far above `1e-16`.
pub const UNIMODULAR_TOL: f64 = 1e-4;

const IMAG_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenClass {
    NoneOnQhat,
    SingleFixed,
    HyperbolicPair,
}

/// Isotropic part of the `+1` or `-1` eigenspace.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub eigenvalue: f64,
    /// Dimension of the eigenspace.
    pub eigenspace_dim: usize,
    /// Dimension of the sphere of fixed points on `Q̂`; `None` when empty, `Some(0)`
    /// for a pair of points or a single point (see `points`).
    pub sphere_dim: Option<usize>,
    /// Representative fixed points on `Q̂`.
    pub points: Vec<NormalizedPoint>,
}

#[derive(Clone, Debug)]
pub struct QhatEigenData {
    /// Eigenvalues with `|lambda| != 1` and their normalized eigenvectors,
    /// dominant first; for `SingleFixed` the single unimodular fixed point.
    pub pairs: Vec<(f64, NormalizedPoint)>,
    pub class: EigenClass,
    /// Fixed loci of the `+-1` eigenspaces that meet `Q̂` in more than one point.
    pub loci: Vec<FixedLocus>,
}

impl QhatEigenData {
    pub fn dominant(&self) -> Option<&(f64, NormalizedPoint)> {
        (self.class == EigenClass::HyperbolicPair).then(|| &self.pairs[0])
    }

    pub fn subdominant(&self) -> Option<&(f64, NormalizedPoint)> {
        (self.class == EigenClass::HyperbolicPair).then(|| &self.pairs[1])
    }
}

fn schur_candidates(m: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let n = m.nrows();
    let mut out = vec![m.clone(), m.transpose()];
    for angle in [0.3f64, 1.1] {
        let mut q = DMatrix::identity(n, n);
        for k in 0..n.saturating_sub(1) {
            let mut g = DMatrix::identity(n, n);
            let (s, c) = (angle * (k + 1) as f64).sin_cos();
            g[(k, k)] = c;
            g[(k + 1, k + 1)] = c;
            g[(k, k + 1)] = -s;
            g[(k + 1, k)] = s;
            q = g * q;
        }
        out.push(&q * m * q.transpose());
    }
    out
}

/// Right singular vectors of `m` whose singular value is at most `thr`.
fn null_space(m: &DMatrix<f64>, thr: f64) -> Vec<DVector<f64>> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thr)
        .map(|(k, _)| vt.row(k).transpose().normalize())
        .collect()
}

/// Unit vector minimizing `|(m - lambda I) v|`.
fn eigenvector(m: &DMatrix<f64>, lambda: f64) -> DVector<f64> {
    let n = m.nrows();
    let shifted = m - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let k = svd.singular_values.imin();
    vt.row(k).transpose().normalize()
}

/// Two-sided Rayleigh quotient `u^T m v / u^T v`: second order in the
/// eigenvector errors, unlike the one-sided quotient for a non-normal `m`.
fn rayleigh(m: &DMatrix<f64>, u: &DVector<f64>, v: &DVector<f64>, fallback: f64) -> f64 {
    let den = u.dot(v);
    if den.abs() < 1e-8 {
        return fallback;
    }
    u.dot(&(m * v)) / den
}

/// Eigenvalue and eigenvector for `|lambda| > 1`, computed on `m`.
fn expanding_pair(m: &DMatrix<f64>, lambda: f64) -> (f64, DVector<f64>) {
    let v = eigenvector(m, lambda);
    let u = eigenvector(&m.transpose(), lambda);
    (rayleigh(m, &u, &v, lambda), v)
}

/// Splits a word as `a core a^{-1}` after cancelling `i i` pairs, with `core`
/// cyclically reduced.
pub fn cyclic_reduction(word: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut reduced: Vec<usize> = Vec::with_capacity(word.len());
    for &g in word {
        if reduced.last() == Some(&g) {
            reduced.pop();
        } else {
            reduced.push(g);
        }
    }
    let (mut lo, mut hi) = (0, reduced.len());
    while hi - lo >= 2 && reduced[lo] == reduced[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (reduced[..lo].to_vec(), reduced[lo..hi].to_vec())
}

/// Classifies the real eigen-structure of `w` relative to `Q̂`.
///
/// The eigenproblem is solved for the cyclically reduced core of the word and
/// the eigenvectors carried back by the stripped prefix: a conjugate `g h g^{-1}`
/// has eigenvalue condition numbers growing like `|g|^2`, the core does not.
/// Contracting eigenvalues are obtained as reciprocals of expanding eigenvalues
/// of `w^{-1}` (built from the reversed word), which keeps their relative
/// accuracy when the matrix entries are large.
pub fn qhat_eigen(sys: &CoxeterSystem, w: &GroupElement) -> Result<QhatEigenData> {
    let (prefix, core) = cyclic_reduction(w.word());
    if core.len() == w.length() {
        return core_eigen(sys, w);
    }
    let form = sys.form();
    let inner = core_eigen(sys, &word_matrix(form, &core))?;
    let a = word_matrix(form, &prefix);
    let carry = |p: &NormalizedPoint| sys.normalize(&a.apply(&p.coords));
    Ok(QhatEigenData {
        pairs: inner
            .pairs
            .iter()
            .map(|(l, p)| Ok((*l, carry(p)?)))
            .collect::<Result<_>>()?,
        class: inner.class,
        loci: inner
            .loci
            .into_iter()
            .map(|l| {
                Ok(FixedLocus {
                    points: l.points.iter().map(carry).collect::<Result<_>>()?,
                    ..l
                })
            })
            .collect::<Result<_>>()?,
    })
}

fn core_eigen(sys: &CoxeterSystem, w: &GroupElement) -> Result<QhatEigenData> {
    let n = w.rank();
    let m = w.matrix().clone();
    // Only eigenvalues are used, so similar matrices are fair game. Shifted QR
    // without exceptional shifts can cycle on matrices with exact +-1 blocks;
    // the transpose or an orthogonal conjugate breaks the cycle.
    let schur = schur_candidates(&m)
        .into_iter()
        .find_map(|a| a.try_schur(1e-15, 10_000))
        .ok_or_else(|| {
            Error::DegenerateEigen(format!("Schur iteration failed for word {:?}", w.word()))
        })?;
    let eigenvalues = schur.complex_eigenvalues();
    let scale = m.amax().max(1.0);
    let mut reals: Vec<f64> = eigenvalues
        .iter()
        .filter(|z| z.im.abs() <= IMAG_TOL * z.re.abs().max(1.0))
        .map(|z| z.re)
        .collect();
    reals.sort_by(|a, b| b.abs().total_cmp(&a.abs()));

    let inverse = w.inverse(sys.form());
    let eps_q = sys.tolerances().eps_q;
    let mut pairs: Vec<(f64, NormalizedPoint)> = Vec::new();
    let mut seen: Vec<f64> = Vec::new();
    for &lambda in &reals {
        if (lambda.abs() - 1.0).abs() <= UNIMODULAR_TOL {
            continue;
        }
        if seen
            .iter()
            .any(|s| (s - lambda).abs() <= 1e-8 * lambda.abs())
        {
            continue;
        }
        seen.push(lambda);
        let (value, v) = if lambda.abs() > 1.0 {
            expanding_pair(&m, lambda)
        } else {
            let (mu, v) = expanding_pair(inverse.matrix(), 1.0 / lambda);
            (1.0 / mu, v)
        };
        let p = sys.normalize(v.as_slice())?;
        if p.qvalue.abs() <= eps_q.max(1e-12 * scale) {
            pairs.push((value, p));
        }
    }
    if pairs.len() > 2 {
        return Err(Error::DegenerateEigen(format!(
            "{} expanding or contracting isotropic eigenvectors",
            pairs.len()
        )));
    }
    pairs.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()));
    if pairs.len() == 2 {
        return Ok(QhatEigenData {
            pairs,
            class: EigenClass::HyperbolicPair,
            loci: Vec::new(),
        });
    }

    let mut loci = Vec::new();
    let mut single = None;
    for sign in [1.0, -1.0] {
        if !reals.iter().any(|l| (l - sign).abs() <= UNIMODULAR_TOL) {
            continue;
        }
        let shifted = &m - DMatrix::identity(n, n) * sign;
        let basis = null_space(&shifted, 1e-8 * scale);
        if basis.is_empty() {
            continue;
        }
        let locus = isotropic_locus(sys, sign, &basis)?;
        if locus.sphere_dim == Some(0) && locus.points.len() == 1 && single.is_none() {
            single = Some((sign, locus.points[0].clone()));
        } else if locus.sphere_dim.is_some() {
            loci.push(locus);
        }
    }
    match single {
        Some(pair) => Ok(QhatEigenData {
            pairs: vec![pair],
            class: EigenClass::SingleFixed,
            loci,
        }),
        None => Ok(QhatEigenData {
            pairs: Vec::new(),
            class: EigenClass::NoneOnQhat,
            loci,
        }),
    }
}

/// Isotropic vectors of `B` restricted to the span of `basis`.
fn isotropic_locus(
    sys: &CoxeterSystem,
    eigenvalue: f64,
    basis: &[DVector<f64>],
) -> Result<FixedLocus> {
    let n = sys.rank();
    let k = basis.len();
    let kmat = DMatrix::from_columns(basis);
    let g = kmat.transpose() * sys.form().matrix() * &kmat;
    let eig = SymmetricEigen::new(g);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let l: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let col = |i: usize| -> DVector<f64> { &kmat * eig.eigenvectors.column(order[i]) };
    let tol = 1e-9 * l.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let mut locus = FixedLocus {
        eigenvalue,
        eigenspace_dim: k,
        sphere_dim: None,
        points: Vec::new(),
    };
    if l[0] < -tol && k >= 2 {
        // Lorentzian restriction: the fixed set is a sphere of dimension k - 2.
        let center = col(0);
        let axes: Vec<DVector<f64>> = (1..k).map(|i| col(i) * (-l[0] / l[i]).sqrt()).collect();
        locus.sphere_dim = Some(k - 2);
        for c in sphere_directions(k - 1, 64, 0) {
            let mut x = center.clone();
            for (ci, a) in c.iter().zip(&axes) {
                x += a * *ci;
            }
            locus.points.push(sys.normalize(x.as_slice())?);
        }
    } else if l[0] >= -tol && l[0].abs() <= tol && l.get(1).is_none_or(|&v| v > tol) {
        locus.sphere_dim = Some(0);
        let v = col(0);
        debug_assert_eq!(v.len(), n);
        locus.points.push(sys.normalize(v.as_slice())?);
    }
    Ok(locus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::element::word_matrix;
    use crate::fixtures;
    use crate::forms::Tolerances;
    use crate::metric::chordal_d;

    #[test]
    fn rank2_hyperbolic_closed_form() {
        let sys = fixtures::rank2_infinite(-1.5)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1]);
        let e = qhat_eigen(&sys, &w).unwrap();
        assert_eq!(e.class, EigenClass::HyperbolicPair);
        let c: f64 = 1.5;
        let big = 2.0 * c * c - 1.0 + 2.0 * c * (c * c - 1.0).sqrt();
        let small = 2.0 * c * c - 1.0 - 2.0 * c * (c * c - 1.0).sqrt();
        assert!((e.pairs[0].0 - big).abs() < 1e-12);
        assert!((e.pairs[1].0 - small).abs() < 1e-13);
        assert!((e.pairs[0].0 * e.pairs[1].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_rotation_fixes_midpoint() {
        let sys = fixtures::rank2_infinite(-1.0)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1]);
        let e = qhat_eigen(&sys, &w).unwrap();
        assert_eq!(e.class, EigenClass::SingleFixed);
        let p = &e.pairs[0].1;
        assert!((p.coords[0] - 0.5).abs() < 1e-12 && (p.coords[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reflection_fixes_two_boundary_points() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[1]);
        let e = qhat_eigen(&sys, &w).unwrap();
        assert_eq!(e.class, EigenClass::NoneOnQhat);
        assert_eq!(e.loci.len(), 1);
        let locus = &e.loci[0];
        assert_eq!(
            (locus.eigenvalue, locus.eigenspace_dim, locus.sphere_dim),
            (1.0, 2, Some(0))
        );
        for p in &locus.points {
            assert!(p.qvalue.abs() < 1e-12);
            assert!(sys.form().pair_simple(1, &p.coords).abs() < 1e-12);
        }
        assert!(chordal_d(sys.form(), &locus.points[0].coords, &locus.points[1].coords) > 0.1);
    }

    #[test]
    fn rank4_reflection_fixes_a_circle() {
        let sys = fixtures::chain535().system(Tolerances::default()).unwrap();
        let e = qhat_eigen(&sys, &word_matrix(sys.form(), &[0])).unwrap();
        assert_eq!(e.loci[0].sphere_dim, Some(1));
    }

    #[test]
    fn finite_rotation_has_no_fixed_point() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let e = qhat_eigen(&sys, &word_matrix(sys.form(), &[0, 2])).unwrap();
        assert_eq!(e.class, EigenClass::NoneOnQhat);
    }

    #[test]
    fn coxeter_element_pair() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1, 2]);
        let e = qhat_eigen(&sys, &w).unwrap();
        assert_eq!(e.class, EigenClass::HyperbolicPair);
        let (lambda, p) = e.dominant().unwrap();
        let wp = w.apply(&p.coords);
        for (a, b) in wp.iter().zip(&p.coords) {
            assert!((a - lambda * b).abs() < 1e-10);
        }
    }

    #[test]
    fn cyclic_reduction_splits_conjugates() {
        assert_eq!(cyclic_reduction(&[1, 0, 2, 0, 1]), (vec![1, 0], vec![2]));
        assert_eq!(cyclic_reduction(&[0, 1, 1, 0]), (vec![], vec![]));
        assert_eq!(cyclic_reduction(&[2, 1, 0, 1]), (vec![], vec![2, 1, 0, 1]));
        assert_eq!(cyclic_reduction(&[0, 1, 2, 2, 0]), (vec![0], vec![1]));
    }

    #[test]
    fn conjugate_keeps_eigenvalues_and_moves_fixed_points() {
        let sys = fixtures::all_bonds(3, -1.1)
            .system(Tolerances::default())
            .unwrap();
        let core = qhat_eigen(&sys, &word_matrix(sys.form(), &[2, 0])).unwrap();
        let word = [1, 0, 2, 0, 1, 2, 0, 1, 0, 2, 0, 1];
        let w = word_matrix(sys.form(), &word);
        let e = qhat_eigen(&sys, &w).unwrap();
        assert_eq!(e.class, EigenClass::HyperbolicPair);
        let (l0, l1) = (e.pairs[0].0, e.pairs[1].0);
        assert!((l0 - core.pairs[0].0).abs() < 1e-12 && (l0 * l1 - 1.0).abs() < 1e-12);
        let p = &e.dominant().unwrap().1;
        let wp = sys.normalize(&w.apply(&p.coords)).unwrap();
        for (a, b) in wp.coords.iter().zip(&p.coords) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
