//! Barycentric coordinates against the normalized simple roots.

use crate::forms::NormalizationData;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexMembership {
    pub inside: bool,
    pub barycentric: Vec<f64>,
}

impl SimplexMembership {
    pub fn min_coordinate(&self) -> f64 {
        self.barycentric
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Since the normalized simple root is `alpha_i / o_i`, the barycentric
/// coordinates of `x` are `x_i o_i`.
pub fn barycentric(nd: &NormalizationData, x: &[f64]) -> Vec<f64> {
    x.iter().zip(nd.o()).map(|(a, o)| a * o).collect()
}

/// `inside` iff every barycentric coordinate is at least `-tol_bary`.
pub fn in_simplex(nd: &NormalizationData, x: &[f64], tol_bary: f64) -> SimplexMembership {
    let barycentric = barycentric(nd, x);
    let inside = barycentric.iter().all(|&b| b >= -tol_bary);
    SimplexMembership {
        inside,
        barycentric,
    }
}
