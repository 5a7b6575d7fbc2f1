//! Pieces of `Q̂` lying outside `conv(Δ̂)`.

use serde::Serialize;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::forms::{CoxeterSystem, Mode};
use crate::geometry::sampler::IsotropicCone;
use crate::geometry::simplex::in_simplex;
use crate::metric::{median_nn_distance, ChordalEmbedding, ChordalIndex, UnionFind};

/// Minimum number of samples a component needs to be trusted.
pub const MIN_COMPONENT_SAMPLES: usize = 10;

/// Multiple of the median nearest-neighbour distance used as adjacency radius.
pub const EPSILON_FACTOR: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Contained,
    NotContained,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub id: usize,
    pub points: PointCloud,
}

#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    pub case: Case,
    pub components: Vec<Component>,
    pub epsilon: f64,
    /// Set when more components than generators were found, which points at a
    /// badly calibrated radius rather than at the geometry.
    pub excess: bool,
}

impl ComponentDecomposition {
    pub fn m(&self) -> usize {
        self.components.len()
    }

    /// All component samples with their component id as label.
    pub fn outside_cloud(&self) -> Option<PointCloud> {
        let first = self.components.first()?;
        let mut c = PointCloud::new(first.points.dim());
        for comp in &self.components {
            c.extend(&comp.points);
        }
        Some(c)
    }

    /// Same decomposition with every component subsampled by `stride`.
    pub fn thinned(&self, stride: usize) -> ComponentDecomposition {
        ComponentDecomposition {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    id: c.id,
                    points: c.points.thin(stride, 0),
                })
                .collect(),
            ..self.clone()
        }
    }

    pub fn summary(&self, c_prime: Option<f64>, t: Option<f64>) -> ClassificationReport {
        ClassificationReport {
            case: self.case,
            m: self.m(),
            components: self
                .components
                .iter()
                .map(|c| ComponentSummary {
                    id: c.id,
                    count: c.points.len(),
                    centroid: c.points.centroid(),
                })
                .collect(),
            c_prime,
            t,
            epsilon: self.epsilon,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub id: usize,
    pub count: usize,
    pub centroid: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub case: Case,
    pub m: usize,
    pub components: Vec<ComponentSummary>,
    #[serde(rename = "C_prime")]
    pub c_prime: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub epsilon: f64,
}

/// `Contained` iff every sample is in the simplex; otherwise the outside
/// samples are split into components by single linkage at radius
/// `EPSILON_FACTOR` times their median nearest-neighbour distance.
pub fn classify_case(sys: &CoxeterSystem, samples: &PointCloud) -> Result<ComponentDecomposition> {
    if samples.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let nd = sys.normalization();
    let tol = sys.tolerances().barycentric;
    let outside: Vec<usize> = (0..samples.len())
        .filter(|&k| !in_simplex(nd, samples.point(k), tol).inside)
        .collect();
    if outside.is_empty() {
        return Ok(ComponentDecomposition {
            case: Case::Contained,
            components: Vec::new(),
            epsilon: 0.0,
            excess: false,
        });
    }
    if sys.normalization().mode() != Mode::Lorentzian {
        return Err(Error::NotApplicable(
            "outside samples without a Lorentzian form".into(),
        ));
    }
    let out = samples.select(&outside);
    if out.len() < MIN_COMPONENT_SAMPLES {
        return Err(Error::InsufficientSampling {
            component: 0,
            count: out.len(),
        });
    }
    let epsilon = EPSILON_FACTOR * median_nn_distance(sys.form(), nd, &out);
    let emb = ChordalEmbedding::new(sys.form(), nd);
    let index = ChordalIndex::new(emb.clone(), &out);
    let mut uf = UnionFind::new(out.len());
    for (k, p) in out.points().enumerate() {
        for j in index.within(p, epsilon) {
            uf.union(k, j);
        }
    }
    let labels = uf.labels();
    let m = labels.iter().max().map_or(0, |x| x + 1);
    let mut components: Vec<Component> = (0..m)
        .map(|id| {
            let idx: Vec<usize> = (0..out.len()).filter(|&k| labels[k] == id).collect();
            let mut points = out.select(&idx);
            points.set_component(id as i32);
            Component { id, points }
        })
        .collect();
    if let Some(c) = components
        .iter()
        .find(|c| c.points.len() < MIN_COMPONENT_SAMPLES)
    {
        return Err(Error::InsufficientSampling {
            component: c.id,
            count: c.points.len(),
        });
    }
    components.sort_by_key(|c| c.id);
    Ok(ComponentDecomposition {
        case: Case::NotContained,
        excess: m > sys.rank(),
        components,
        epsilon,
    })
}

/// Whether `Q̂ ∩ span(Δ_I)` lies in `conv(Δ̂)`, decided on `count` samples of
/// the isotropic cone of the principal sub-form `B_I`.
pub fn is_generating(
    sys: &CoxeterSystem,
    subset: &[usize],
    count: usize,
    seed: u64,
) -> Result<bool> {
    if subset.len() < 2 {
        return Err(Error::InvalidSpec(
            "generating subsets need at least two generators".into(),
        ));
    }
    let sub = sys.form().principal(subset)?;
    let cone = IsotropicCone::of_form(&sub, subset, sys.rank(), sys.tolerances().eigen_zero)?;
    let tol = sys.tolerances().barycentric;
    for ray in cone.rays(count, seed) {
        let x = sys.normalize(&ray)?;
        if !in_simplex(sys.normalization(), &x.coords, tol).inside {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::forms::Tolerances;
    use crate::geometry::sample_qhat;

    fn classify(fx: fixtures::Fixture, count: usize) -> Result<ComponentDecomposition> {
        let sys = fx.system(Tolerances::default()).unwrap();
        classify_case(&sys, &sample_qhat(&sys, count, 0).unwrap())
    }

    #[test]
    fn contained_triangle() {
        let d = classify(fixtures::triangle(3, 3, 7), 10_000).unwrap();
        assert_eq!(d.case, Case::Contained);
        assert_eq!(d.m(), 0);
    }

    #[test]
    fn three_arcs_for_uniform_weak_bonds() {
        let d = classify(fixtures::all_bonds(3, -1.1), 10_000).unwrap();
        assert_eq!(d.case, Case::NotContained);
        assert_eq!(d.m(), 3);
        assert!(!d.excess);
        let total: usize = d.components.iter().map(|c| c.points.len()).sum();
        assert_eq!(total, d.outside_cloud().unwrap().len());
    }

    #[test]
    fn single_arc_for_one_infinite_bond() {
        let d = classify(fixtures::one_infinite(-1.5), 10_000).unwrap();
        assert_eq!((d.case, d.m()), (Case::NotContained, 1));
    }

    #[test]
    fn component_count_stable_under_refinement() {
        for fx in fixtures::lorentzian() {
            let a = classify(fx.clone(), 10_000).unwrap();
            let b = classify(fx.clone(), 100_000).unwrap();
            assert_eq!(a.m(), b.m(), "{}", fx.name);
            assert!(a.m() <= fx.spec.rank());
        }
    }

    #[test]
    fn sparse_sampling_is_reported() {
        assert!(matches!(
            classify(fixtures::all_bonds(3, -1.1), 12),
            Err(Error::InsufficientSampling { .. })
        ));
    }

    #[test]
    fn generating_subsets() {
        let tol = Tolerances::default();
        let sys = fixtures::triangle(3, 3, 7).system(tol).unwrap();
        assert!(is_generating(&sys, &[0, 1], 100, 0).unwrap());
        let sys = fixtures::all_bonds(3, -1.1).system(tol).unwrap();
        assert!(!is_generating(&sys, &[0, 1, 2], 1000, 0).unwrap());
        let sys = fixtures::cycle4_mixed().system(tol).unwrap();
        assert!(is_generating(&sys, &[0, 1], 10, 0).unwrap());
    }

    #[test]
    fn rank2_pair_with_strong_bond() {
        // Both isotropic rays of [[1, -1.5], [-1.5, 1]] have positive coordinates,
        // so they normalize into the edge.
        let sys = fixtures::one_infinite(-1.5)
            .system(Tolerances::default())
            .unwrap();
        assert!(is_generating(&sys, &[0, 1], 10, 0).unwrap());
    }
}
