//! Visibility regions `V_alpha = {B(alpha, x) >= 0}` on `Q̂` and the
//! expansion constants derived from them.

use serde::Serialize;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, CoxeterSystem, Mode};
use crate::geometry::simplex::in_simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Visibility {
    Interior,
    Boundary,
    Outside,
}

/// Sign of `B(alpha_i, x)` with a dead zone of width `tol_vis`.
pub fn is_visible(form: &BilinearForm, i: usize, x: &[f64], tol_vis: f64) -> Visibility {
    let b = form.pair_simple(i, x);
    if b > tol_vis {
        Visibility::Interior
    } else if b.abs() <= tol_vis {
        Visibility::Boundary
    } else {
        Visibility::Outside
    }
}

/// `x` lies in `U_alpha^C`, i.e. `B(alpha_i, x) > C`.
pub fn in_u_alpha(form: &BilinearForm, i: usize, x: &[f64], c: f64) -> bool {
    form.pair_simple(i, x) > c
}

/// Values `B(alpha_i, x)` and labels for every point and generator, row-major by point.
#[derive(Clone, Debug, Serialize)]
pub struct VisibilityReport {
    pub rank: usize,
    pub values: Vec<f64>,
    pub labels: Vec<Visibility>,
    pub threshold: Option<f64>,
}

impl VisibilityReport {
    pub fn value(&self, point: usize, generator: usize) -> f64 {
        self.values[point * self.rank + generator]
    }

    pub fn label(&self, point: usize, generator: usize) -> Visibility {
        self.labels[point * self.rank + generator]
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.rank.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Points seen by at least one generator.
    pub fn covered(&self, point: usize) -> bool {
        (0..self.rank).any(|i| self.label(point, i) != Visibility::Outside)
    }

    /// Points in `U_alpha` for some `alpha`, when a threshold was given.
    pub fn in_some_u(&self, point: usize) -> Option<bool> {
        self.threshold
            .map(|c| (0..self.rank).any(|i| self.value(point, i) > c))
    }
}

pub fn visibility_report(
    sys: &CoxeterSystem,
    cloud: &PointCloud,
    threshold: Option<f64>,
) -> VisibilityReport {
    let n = sys.rank();
    let tol = sys.tolerances().visibility;
    let mut values = Vec::with_capacity(cloud.len() * n);
    let mut labels = Vec::with_capacity(cloud.len() * n);
    for x in cloud.points() {
        for i in 0..n {
            values.push(sys.form().pair_simple(i, x));
            labels.push(is_visible(sys.form(), i, x, tol));
        }
    }
    VisibilityReport {
        rank: n,
        values,
        labels,
        threshold,
    }
}

/// `C' = min_x max_alpha B(x, alpha)` over `Q̂` samples.
///
/// Requires a Lorentzian system whose samples lie strictly inside the simplex
/// (every barycentric coordinate above `tol_bary`).
pub fn visibility_constant(sys: &CoxeterSystem, samples: &PointCloud) -> Result<f64> {
    if sys.normalization().mode() != Mode::Lorentzian {
        return Err(Error::NotApplicable("no Lorentzian ellipsoid".into()));
    }
    if samples.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let tol = sys.tolerances().barycentric;
    let nd = sys.normalization();
    if let Some(k) =
        (0..samples.len()).find(|&k| in_simplex(nd, samples.point(k), 0.0).min_coordinate() <= tol)
    {
        return Err(Error::NotApplicable(format!(
            "sample {k} is not strictly inside the simplex"
        )));
    }
    let n = sys.rank();
    let c = samples
        .points()
        .map(|x| {
            (0..n)
                .map(|i| sys.form().pair_simple(i, x))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(c)
}

/// `T = min_alpha 1 / (1 - 2 C |alpha|_1)`, defined for `0 < C < min_alpha 1 / (2 |alpha|_1)`.
pub fn expansion_t(sys: &CoxeterSystem, c: f64) -> Result<f64> {
    let o = sys.normalization().o();
    let bound = o
        .iter()
        .map(|oi| 1.0 / (2.0 * oi))
        .fold(f64::INFINITY, f64::min);
    if !(c > 0.0 && c < bound) {
        return Err(Error::BadC { c, bound });
    }
    Ok(o.iter()
        .map(|oi| 1.0 / (1.0 - 2.0 * c * oi))
        .fold(f64::INFINITY, f64::min))
}
