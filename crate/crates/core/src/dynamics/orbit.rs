//! Orbit clouds `{w . x}` over all elements up to a word length.

use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::dynamics::element::{enumerate_elements, GroupElement};
use crate::error::{Error, Result};
use crate::forms::{CoxeterSystem, NormalizedPoint};
use crate::geometry::components::{Case, ComponentDecomposition};

/// Images of every point of `seeds` under every element, labelled with the
/// element's word length and the seed's component label.
pub fn orbit_of_cloud(
    sys: &CoxeterSystem,
    elements: &[GroupElement],
    seeds: &PointCloud,
    cap: usize,
) -> Result<PointCloud> {
    let total = elements.len().saturating_mul(seeds.len());
    if total > cap {
        return Err(Error::Overflow { cap });
    }
    let images: Vec<Vec<(NormalizedPoint, usize, i32)>> = elements
        .par_iter()
        .map(|g| {
            (0..seeds.len())
                .map(|k| {
                    let p = sys.normalize(&g.apply(seeds.point(k)))?;
                    Ok((p, g.length(), seeds.component(k)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut cloud = PointCloud::with_capacity(sys.rank(), total);
    for (p, len, comp) in images.into_iter().flatten() {
        cloud.push_point(&p, len, comp);
    }
    Ok(cloud)
}

/// `{w . x0 : length(w) <= max_word_len}` with elements deduplicated.
pub fn orbit_sample(
    sys: &CoxeterSystem,
    x0: &NormalizedPoint,
    max_word_len: usize,
    cap: usize,
) -> Result<PointCloud> {
    let elements = enumerate_elements(sys.form(), max_word_len, sys.tolerances().quant, cap)?;
    let mut seed = PointCloud::new(sys.rank());
    seed.push_point(x0, 0, -1);
    orbit_of_cloud(sys, &elements, &seed, cap)
}

/// Images of the outside components under all elements up to `max_word_len`,
/// labelled by component id.
pub fn excluded_orbit(
    sys: &CoxeterSystem,
    decomposition: &ComponentDecomposition,
    max_word_len: usize,
    cap: usize,
) -> Result<PointCloud> {
    if decomposition.case != Case::NotContained {
        return Err(Error::NotApplicable(
            "no components outside the simplex".into(),
        ));
    }
    let seeds = decomposition.outside_cloud().ok_or(Error::EmptyCloud)?;
    let elements = enumerate_elements(sys.form(), max_word_len, sys.tolerances().quant, cap)?;
    orbit_of_cloud(sys, &elements, &seeds, cap)
}

/// `max(sup |w(y)|_1, 1 / inf |w(y)|_1)` over `Q̂` samples `y`.
pub fn norm1_distortion_bound(sys: &CoxeterSystem, w: &GroupElement, samples: &PointCloud) -> f64 {
    let (lo, hi) = samples
        .points()
        .map(|y| sys.norm1(&w.apply(y)).abs())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    hi.max(1.0 / lo)
}
