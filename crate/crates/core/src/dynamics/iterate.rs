//! Forward iterates `w^n . x` and their limits.

use serde::Serialize;

use crate::dynamics::eigen::{qhat_eigen, EigenClass, QhatEigenData};
use crate::dynamics::element::GroupElement;
use crate::error::{Error, Result};
use crate::forms::{CoxeterSystem, NormalizedPoint};
use crate::metric::chordal_d;

pub const DEFAULT_N_MAX: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationStatus {
    Converged,
    /// Converged to the contracting eigenvector, which happens only when the
    /// start is (numerically) that fixed point.
    FixedAtSubdominant,
    NoConvergence,
}

#[derive(Clone, Debug)]
pub struct IterationOutcome {
    pub limit: NormalizedPoint,
    pub steps: usize,
    pub status: IterationStatus,
    /// `log |w^k(x_0)|_1` for `k = 1..=steps` (the start is normalized, so `k = 0` gives 0).
    pub log_norm_growth: Vec<f64>,
    pub eigen: QhatEigenData,
}

/// Errors with `FiniteOrder` unless `w` has a hyperbolic pair or no power up
/// to `2 * max_finite_order` is the identity.
pub fn check_infinite_order(
    sys: &CoxeterSystem,
    w: &GroupElement,
    eigen: &QhatEigenData,
) -> Result<()> {
    if eigen.class == EigenClass::HyperbolicPair {
        return Ok(());
    }
    let bound = 2 * sys.max_finite_order() as usize;
    let mut p = GroupElement::identity(w.rank());
    for k in 1..=bound {
        p = p.compose(w);
        if p.distance_to_identity() <= 1e-8 * p.matrix().amax().max(1.0) {
            return Err(Error::FiniteOrder { order: k });
        }
    }
    Ok(())
}

/// Iterates `x <- w . x` until consecutive points are within `conv_tol` (chordal).
pub fn iterate_to_limit(
    sys: &CoxeterSystem,
    w: &GroupElement,
    x0: &NormalizedPoint,
    n_max: usize,
    conv_tol: f64,
) -> Result<IterationOutcome> {
    let eigen = qhat_eigen(sys, w)?;
    check_infinite_order(sys, w, &eigen)?;
    let form = sys.form();
    let mut x = x0.clone();
    let mut log_norm = 0.0;
    let mut growth = Vec::new();
    let mut status = IterationStatus::NoConvergence;
    let mut steps = 0;
    for k in 0..n_max {
        let y = w.apply(&x.coords);
        let n1 = sys.norm1(&y);
        log_norm += n1.abs().ln();
        let next = sys.normalize(&y)?;
        let step = chordal_d(form, &x.coords, &next.coords);
        if step <= conv_tol {
            status = IterationStatus::Converged;
            steps = k;
            break;
        }
        growth.push(log_norm);
        x = next;
        steps = k + 1;
    }
    if status == IterationStatus::Converged {
        if let Some((_, p)) = eigen.subdominant() {
            if chordal_d(form, &x.coords, &p.coords) <= 10.0 * conv_tol {
                status = IterationStatus::FixedAtSubdominant;
            }
        }
    }
    Ok(IterationOutcome {
        limit: x,
        steps,
        status,
        log_norm_growth: growth,
        eigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::element::word_matrix;
    use crate::fixtures;
    use crate::forms::Tolerances;
    use crate::geometry::sample_qhat;

    #[test]
    fn coxeter_element_converges_to_dominant() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1, 2]);
        let x0 = sample_qhat(&sys, 5, 1).unwrap().normalized(2);
        let out = iterate_to_limit(&sys, &w, &x0, DEFAULT_N_MAX, 1e-10).unwrap();
        assert_eq!(out.status, IterationStatus::Converged);
        let p = &out.eigen.dominant().unwrap().1;
        assert!(chordal_d(sys.form(), &out.limit.coords, &p.coords) <= 1e-9);
    }

    #[test]
    fn fixed_points_take_zero_steps() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1, 2]);
        let e = qhat_eigen(&sys, &w).unwrap();
        let p = e.dominant().unwrap().1.clone();
        let out = iterate_to_limit(&sys, &w, &p, 100, 1e-10).unwrap();
        assert_eq!((out.status, out.steps), (IterationStatus::Converged, 0));
        let q = e.subdominant().unwrap().1.clone();
        let out = iterate_to_limit(&sys, &w, &q, 100, 1e-10).unwrap();
        assert_eq!(
            (out.status, out.steps),
            (IterationStatus::FixedAtSubdominant, 0)
        );
    }

    #[test]
    fn finite_order_is_rejected() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 2]);
        let x0 = sample_qhat(&sys, 3, 0).unwrap().normalized(0);
        assert!(matches!(
            iterate_to_limit(&sys, &w, &x0, 100, 1e-10),
            Err(Error::FiniteOrder { order: 7 })
        ));
    }

    #[test]
    fn parabolic_reports_no_convergence_with_growth() {
        // s1 s2 with B12 = -1 inside a Lorentzian system is parabolic: iterates
        // approach the fixed point only like 1/n.
        let sys = fixtures::cycle4_mixed()
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[0, 1]);
        let x0 = sample_qhat(&sys, 3, 0).unwrap().normalized(1);
        let out = iterate_to_limit(&sys, &w, &x0, 200, 1e-10).unwrap();
        assert_eq!(out.status, IterationStatus::NoConvergence);
        assert_eq!(out.log_norm_growth.len(), 200);
        assert_eq!(out.eigen.class, EigenClass::SingleFixed);
    }

    #[test]
    fn shifted_starts_share_the_limit() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let w = word_matrix(sys.form(), &[2, 0, 1, 0]);
        let x0 = sample_qhat(&sys, 7, 3).unwrap().normalized(4);
        let base = iterate_to_limit(&sys, &w, &x0, DEFAULT_N_MAX, 1e-10).unwrap();
        let inv = w.inverse(sys.form());
        let mut starts = vec![];
        let mut fwd = x0.clone();
        let mut back = x0.clone();
        for _ in 0..2 {
            fwd = crate::dynamics::normalized_action(&sys, &w, &fwd.coords).unwrap();
            back = crate::dynamics::normalized_action(&sys, &inv, &back.coords).unwrap();
            starts.push(fwd.clone());
            starts.push(back.clone());
        }
        for s in starts {
            let out = iterate_to_limit(&sys, &w, &s, DEFAULT_N_MAX, 1e-10).unwrap();
            assert!(chordal_d(sys.form(), &out.limit.coords, &base.limit.coords) <= 1e-8);
        }
    }
}
