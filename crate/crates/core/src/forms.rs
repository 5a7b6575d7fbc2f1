//! Coxeter data, the bilinear form `B`, its signature and the normalization
//! functional `|v|_1 = <o, v>`.
//!
//! Vectors are plain coordinate slices against the simple-root basis, which is
//! treated as orthonormal for every Euclidean operation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry of the Coxeter matrix for an unordered pair of generators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Bond {
    /// `(s_i s_j)^m = 1`, giving `B_ij = -cos(pi / m)`.
    Order(u32),
    /// Infinite order with weight `B_ij = c`, `c <= -1`.
    Infinite(f64),
}

impl Bond {
    pub fn weight(self) -> f64 {
        match self {
            Bond::Order(2) => 0.0,
            Bond::Order(m) => -(PI / m as f64).cos(),
            Bond::Infinite(c) => c,
        }
    }
}

/// Rank plus the non-default bonds, indexed from zero. Absent pairs mean order 2.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterSpec {
    rank: usize,
    bonds: BTreeMap<(usize, usize), Bond>,
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    rank: usize,
    #[serde(default)]
    bonds: Vec<BondEntry>,
}

#[derive(Serialize, Deserialize)]
struct BondEntry {
    i: usize,
    j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
}

impl CoxeterSpec {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpec("rank must be positive".into()));
        }
        Ok(Self {
            rank,
            bonds: BTreeMap::new(),
        })
    }

    /// Sets the bond between generators `i` and `j` (zero-based).
    pub fn set_bond(&mut self, i: usize, j: usize, bond: Bond) -> Result<()> {
        if i == j || i >= self.rank || j >= self.rank {
            return Err(Error::InvalidSpec(format!(
                "bond ({}, {}) out of range for rank {}",
                i + 1,
                j + 1,
                self.rank
            )));
        }
        match bond {
            Bond::Order(m) if m < 2 => {
                return Err(Error::RejectBadBond {
                    i,
                    j,
                    reason: format!("order {m} < 2"),
                })
            }
            Bond::Infinite(c) if !(c <= -1.0) => {
                return Err(Error::RejectBadBond {
                    i,
                    j,
                    reason: format!("infinite-bond weight {c} > -1"),
                })
            }
            _ => {}
        }
        let key = (i.min(j), i.max(j));
        if self.bonds.insert(key, bond).is_some() {
            return Err(Error::InvalidSpec(format!(
                "duplicate bond ({}, {})",
                key.0 + 1,
                key.1 + 1
            )));
        }
        Ok(())
    }

    pub fn with_bond(mut self, i: usize, j: usize, bond: Bond) -> Result<Self> {
        self.set_bond(i, j, bond)?;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(Bond::Order(2))
    }

    /// Largest finite order among all pairs (2 when every bond is infinite or absent).
    pub fn max_finite_order(&self) -> u32 {
        self.bonds
            .values()
            .filter_map(|b| match b {
                Bond::Order(m) => Some(*m),
                Bond::Infinite(_) => None,
            })
            .max()
            .unwrap_or(2)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.rank;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if !seen[u] && u != v && self.bond(u, v).weight() != 0.0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses the JSON spec format (1-based indices, absent pairs mean `m = 2`).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text)?;
        let mut spec = Self::new(file.rank)?;
        for entry in file.bonds {
            if entry.i == 0 || entry.j == 0 {
                return Err(Error::InvalidSpec("indices are 1-based".into()));
            }
            let bond = match (entry.m, entry.c) {
                (Some(m), None) => Bond::Order(m),
                (None, Some(c)) => Bond::Infinite(c),
                _ => {
                    return Err(Error::InvalidSpec(format!(
                        "bond ({}, {}) needs exactly one of \"m\" or \"c\"",
                        entry.i, entry.j
                    )))
                }
            };
            spec.set_bond(entry.i - 1, entry.j - 1, bond)?;
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let bonds = self
            .bonds
            .iter()
            .filter(|(_, b)| **b != Bond::Order(2))
            .map(|(&(i, j), b)| BondEntry {
                i: i + 1,
                j: j + 1,
                m: match b {
                    Bond::Order(m) => Some(*m),
                    _ => None,
                },
                c: match b {
                    Bond::Infinite(c) => Some(*c),
                    _ => None,
                },
            })
            .collect();
        serde_json::to_string(&SpecFile {
            rank: self.rank,
            bonds,
        })
        .expect("spec serializes")
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }

    pub fn as_array(self) -> [usize; 3] {
        [self.positive, self.negative, self.zero]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Symmetric matrix `B` with `B_ii = 1` and its spectral data (ascending).
#[derive(Clone, Debug)]
pub struct BilinearForm {
    matrix: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

const ENTRY_TOL: f64 = 1e-12;

fn admissible_off_diagonal(b: f64) -> bool {
    if b <= -1.0 + ENTRY_TOL || b.abs() <= ENTRY_TOL {
        return true;
    }
    if b > 0.0 {
        return false;
    }
    let k = (PI / (-b).acos()).round();
    k >= 2.0 && (b + (PI / k).cos()).abs() <= 1e-9
}

impl BilinearForm {
    /// Builds the form of an irreducible Coxeter spec.
    pub fn from_spec(spec: &CoxeterSpec) -> Result<Self> {
        if !spec.is_connected() {
            return Err(Error::RejectReducible);
        }
        let n = spec.rank();
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else {
                spec.bond(i, j).weight()
            }
        });
        Self::from_matrix(matrix)
    }

    /// Wraps an explicit matrix after checking the Coxeter-matrix conditions.
    /// Irreducibility is not checked here, so principal sub-forms go through this path.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::InvalidSpec(
                "form must be a non-empty square matrix".into(),
            ));
        }
        for i in 0..n {
            if (matrix[(i, i)] - 1.0).abs() > ENTRY_TOL {
                return Err(Error::InvalidSpec(format!(
                    "diagonal entry {} is not 1",
                    i + 1
                )));
            }
            for j in (i + 1)..n {
                let (a, b) = (matrix[(i, j)], matrix[(j, i)]);
                if !a.is_finite() || (a - b).abs() > ENTRY_TOL * a.abs().max(1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "entries ({}, {}) not symmetric",
                        i + 1,
                        j + 1
                    )));
                }
                if !admissible_off_diagonal(a) {
                    return Err(Error::RejectBadBond {
                        i,
                        j,
                        reason: format!("{a} is neither <= -1 nor -cos(pi/k)"),
                    });
                }
            }
        }
        let eig = SymmetricEigen::new(matrix.clone());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Ok(Self {
            matrix,
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unit eigenvectors as columns, aligned with [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// An eigenvalue counts as zero iff `|e| <= tol`.
    pub fn signature(&self, tol: f64) -> Signature {
        let mut sig = Signature::new(0, 0, 0);
        for &e in &self.eigenvalues {
            if e.abs() <= tol {
                sig.zero += 1;
            } else if e > 0.0 {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
        }
        sig
    }

    /// `B(u, v)`.
    pub fn pair(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.rank();
        let mut acc = 0.0;
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            let mut row = 0.0;
            for j in 0..n {
                row += self.matrix[(i, j)] * v[j];
            }
            acc += u[i] * row;
        }
        acc
    }

    /// `B(alpha_i, v)`.
    pub fn pair_simple(&self, i: usize, v: &[f64]) -> f64 {
        (0..self.rank()).map(|j| self.matrix[(i, j)] * v[j]).sum()
    }

    /// `B(v, v)`.
    pub fn qvalue(&self, v: &[f64]) -> f64 {
        self.pair(v, v)
    }

    /// Principal sub-form on the given generator subset.
    pub fn principal(&self, subset: &[usize]) -> Result<BilinearForm> {
        let k = subset.len();
        let m = DMatrix::from_fn(k, k, |a, b| self.matrix[(subset[a], subset[b])]);
        Self::from_matrix(m)
    }

    /// Largest finite order `m` among off-diagonal entries of the form `-cos(pi/m)`.
    pub fn max_finite_order(&self) -> u32 {
        let n = self.rank();
        let mut best = 2;
        for i in 0..n {
            for j in (i + 1)..n {
                let b = self.matrix[(i, j)];
                if b > -1.0 + ENTRY_TOL && b < -ENTRY_TOL {
                    best = best.max((PI / (-b).acos()).round() as u32);
                }
            }
        }
        best
    }

    pub fn normalization(&self, zero_tol: f64) -> Result<NormalizationData> {
        NormalizationData::for_form(self, zero_tol)
    }
}

/// How `o` was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `B` positive semi-definite; `o` is the sum of the simple roots.
    PositiveType,
    /// Signature `(n-1, 1)`; `o` is the unit eigenvector of the negative eigenvalue.
    Lorentzian,
}

#[derive(Clone, Debug)]
pub struct NormalizationData {
    o: Vec<f64>,
    lambda_neg: Option<f64>,
    mode: Mode,
}

impl NormalizationData {
    pub fn for_form(form: &BilinearForm, zero_tol: f64) -> Result<Self> {
        let sig = form.signature(zero_tol);
        let n = form.rank();
        if sig.negative == 0 {
            return Ok(Self {
                o: vec![1.0; n],
                lambda_neg: None,
                mode: Mode::PositiveType,
            });
        }
        if sig.negative > 1 || sig.zero > 0 {
            return Err(Error::UnsupportedSignature(sig));
        }
        let lambda = form.eigenvalues()[0];
        let col = form.eigenvectors().column(0);
        let norm = col.norm();
        let sign = if col[0] < 0.0 { -1.0 } else { 1.0 };
        let o: Vec<f64> = col.iter().map(|x| sign * x / norm).collect();
        Ok(Self {
            o,
            lambda_neg: Some(lambda),
            mode: Mode::Lorentzian,
        })
    }

    pub fn o(&self) -> &[f64] {
        &self.o
    }

    pub fn lambda_neg(&self) -> Option<f64> {
        self.lambda_neg
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `|v|_1`, the Euclidean inner product with `o`.
    pub fn norm1(&self, v: &[f64]) -> f64 {
        self.o.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `|alpha_i|_1 = o_i`.
    pub fn simple_norm(&self, i: usize) -> f64 {
        self.o[i]
    }
}

/// A point of the affine slice `|x|_1 = 1` with its cached `B(x, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPoint {
    pub coords: Vec<f64>,
    pub qvalue: f64,
}

/// Numerical thresholds used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Slack on `|x|_1 = 1` for normalized points.
    pub eps_v1: f64,
    /// `|B(x, x)| <= eps_q` means `x` is on the isotropic ellipsoid.
    pub eps_q: f64,
    /// Eigenvalues with `|e| <= eigen_zero` count as zero.
    pub eigen_zero: f64,
    /// `||v|_1| <= near_v0` is rejected by normalization.
    pub near_v0: f64,
    /// Minimum allowed coordinate of a stored positive root.
    pub positivity: f64,
    /// Sign threshold for `B(alpha, x)` in visibility tests.
    pub visibility: f64,
    /// Minimum allowed barycentric coordinate for simplex membership.
    pub barycentric: f64,
    /// Dedup grid for root and group-element coordinates.
    pub quant: f64,
    /// Chordal step size that ends fixed-point iteration.
    pub convergence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_v1: 1e-9,
            eps_q: 1e-7,
            eigen_zero: 1e-9,
            near_v0: 1e-12,
            positivity: 1e-9,
            visibility: 1e-9,
            barycentric: 1e-9,
            quant: 1e-8,
            convergence: 1e-10,
        }
    }
}

/// Broad classification used to gate the limit-set machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// Positive definite: finite group, no isotropic vectors.
    Finite,
    /// Positive semi-definite with a radical: the ellipsoid degenerates to one point.
    Affine,
    /// Signature `(n-1, 1)`.
    Lorentzian,
}

/// A form together with its normalization and tolerances; the handle most
/// operations take.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    form: BilinearForm,
    norm: NormalizationData,
    signature: Signature,
    tol: Tolerances,
    max_finite_order: u32,
}

impl CoxeterSystem {
    pub fn from_spec(spec: &CoxeterSpec, tol: Tolerances) -> Result<Self> {
        let form = BilinearForm::from_spec(spec)?;
        let mut sys = Self::from_form(form, tol)?;
        sys.max_finite_order = spec.max_finite_order();
        Ok(sys)
    }

    pub fn from_form(form: BilinearForm, tol: Tolerances) -> Result<Self> {
        let norm = form.normalization(tol.eigen_zero)?;
        let signature = form.signature(tol.eigen_zero);
        let max_finite_order = form.max_finite_order();
        Ok(Self {
            form,
            norm,
            signature,
            tol,
            max_finite_order,
        })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn normalization(&self) -> &NormalizationData {
        &self.norm
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn max_finite_order(&self) -> u32 {
        self.max_finite_order
    }

    pub fn kind(&self) -> SystemKind {
        match (self.norm.mode(), self.signature.zero) {
            (Mode::Lorentzian, _) => SystemKind::Lorentzian,
            (Mode::PositiveType, 0) => SystemKind::Finite,
            (Mode::PositiveType, _) => SystemKind::Affine,
        }
    }

    pub fn norm1(&self, v: &[f64]) -> f64 {
        self.norm.norm1(v)
    }

    pub fn normalize(&self, v: &[f64]) -> Result<NormalizedPoint> {
        normalize(&self.form, &self.norm, v, self.tol.near_v0)
    }

    pub fn is_on_qhat(&self, x: &NormalizedPoint) -> bool {
        is_on_qhat(x, self.tol.eps_q)
    }

    /// Simple root `alpha_i` in coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.rank()];
        v[i] = 1.0;
        v
    }
}

/// `v / |v|_1`, rejecting vectors within `eps0` of the hyperplane `|v|_1 = 0`.
pub fn normalize(
    form: &BilinearForm,
    nd: &NormalizationData,
    v: &[f64],
    eps0: f64,
) -> Result<NormalizedPoint> {
    let n1 = nd.norm1(v);
    if !(n1.abs() > eps0) {
        return Err(Error::NearV0 { value: n1 });
    }
    let coords: Vec<f64> = v.iter().map(|x| x / n1).collect();
    let qvalue = form.qvalue(&coords);
    Ok(NormalizedPoint { coords, qvalue })
}

pub fn is_on_qhat(x: &NormalizedPoint, eps_q: f64) -> bool {
    x.qvalue.abs() <= eps_q
}

pub fn to_dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn rank2(c: f64) -> CoxeterSpec {
        CoxeterSpec::new(2)
            .unwrap()
            .with_bond(0, 1, Bond::Infinite(c))
            .unwrap()
    }

    #[test]
    fn bond_weights() {
        assert_eq!(Bond::Order(2).weight(), 0.0);
        assert!(close(Bond::Order(3).weight(), -0.5, 1e-15));
        assert_eq!(Bond::Infinite(-1.01).weight(), -1.01);
    }

    #[test]
    fn rejects_weak_infinite_bond() {
        let err = CoxeterSpec::new(2)
            .unwrap()
            .with_bond(0, 1, Bond::Infinite(-0.9));
        assert!(matches!(err, Err(Error::RejectBadBond { .. })));
    }

    #[test]
    fn rejects_disconnected() {
        let spec = CoxeterSpec::new(4)
            .unwrap()
            .with_bond(0, 1, Bond::Order(3))
            .unwrap()
            .with_bond(2, 3, Bond::Order(3))
            .unwrap();
        assert!(matches!(
            BilinearForm::from_spec(&spec),
            Err(Error::RejectReducible)
        ));
    }

    #[test]
    fn json_roundtrip_and_defaults() {
        let spec = CoxeterSpec::from_json(
            r#"{"rank": 3, "bonds": [{"i": 1, "j": 2, "m": 3}, {"i": 2, "j": 3, "c": -1.5}]}"#,
        )
        .unwrap();
        assert_eq!(spec.bond(0, 1), Bond::Order(3));
        assert_eq!(spec.bond(2, 1), Bond::Infinite(-1.5));
        assert_eq!(spec.bond(0, 2), Bond::Order(2));
        assert_eq!(CoxeterSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn json_rejects_ambiguous_entry() {
        let r =
            CoxeterSpec::from_json(r#"{"rank": 2, "bonds": [{"i": 1, "j": 2, "m": 3, "c": -2}]}"#);
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
        let r = CoxeterSpec::from_json(r#"{"rank": 2, "bonds": [{"i": 0, "j": 2, "m": 3}]}"#);
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn from_matrix_rejects_inadmissible_entry() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -0.9, -0.9, 1.0]);
        assert!(matches!(
            BilinearForm::from_matrix(m),
            Err(Error::RejectBadBond { .. })
        ));
    }

    #[test]
    fn identity_signature() {
        let form = BilinearForm::from_matrix(DMatrix::identity(3, 3)).unwrap();
        assert_eq!(form.signature(1e-9), Signature::new(3, 0, 0));
    }

    #[test]
    fn rank2_normalization_vector() {
        // B = [[1, -1.5], [-1.5, 1]]: eigenpairs (-0.5, (1,1)/sqrt2) and (2.5, (1,-1)/sqrt2).
        let form = BilinearForm::from_spec(&rank2(-1.5)).unwrap();
        let nd = form.normalization(1e-9).unwrap();
        assert_eq!(nd.mode(), Mode::Lorentzian);
        assert!(close(nd.lambda_neg().unwrap(), -0.5, 1e-12));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(nd.o()[0], s, 1e-12) && close(nd.o()[1], s, 1e-12));
        assert!(close(nd.norm1(nd.o()), 1.0, 1e-12));
        assert_eq!(nd.norm1(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn positive_type_normalization() {
        let spec = CoxeterSpec::new(2)
            .unwrap()
            .with_bond(0, 1, Bond::Order(3))
            .unwrap();
        let form = BilinearForm::from_spec(&spec).unwrap();
        let nd = form.normalization(1e-9).unwrap();
        assert_eq!(nd.mode(), Mode::PositiveType);
        assert_eq!(nd.o(), &[1.0, 1.0]);
    }

    #[test]
    fn normalize_is_homogeneous_and_rejects_v0() {
        let sys = CoxeterSystem::from_spec(&rank2(-1.5), Tolerances::default()).unwrap();
        let x = sys.normalize(&[0.3, 0.9]).unwrap();
        let y = sys.normalize(&[0.6, 1.8]).unwrap();
        assert!(close(x.coords[0], y.coords[0], 1e-15) && close(x.coords[1], y.coords[1], 1e-15));
        assert!(close(sys.norm1(&x.coords), 1.0, 1e-12));
        assert!(matches!(
            sys.normalize(&[1.0, -1.0]),
            Err(Error::NearV0 { .. })
        ));
    }

    #[test]
    fn simple_root_qvalue() {
        let sys = CoxeterSystem::from_spec(&rank2(-1.5), Tolerances::default()).unwrap();
        let a = sys.normalize(&sys.simple_root(0)).unwrap();
        let o1 = sys.normalization().o()[0];
        assert!(close(a.qvalue, 1.0 / (o1 * o1), 1e-12));
        assert!(!sys.is_on_qhat(&a));
    }

    #[test]
    fn midpoint_of_unit_bond_is_isotropic() {
        let sys = CoxeterSystem::from_spec(&rank2(-1.0), Tolerances::default()).unwrap();
        assert_eq!(sys.kind(), SystemKind::Affine);
        let mid = sys.normalize(&[0.5, 0.5]).unwrap();
        assert!(close(mid.qvalue, 0.0, 1e-15));
        assert!(sys.is_on_qhat(&mid));
    }
}
