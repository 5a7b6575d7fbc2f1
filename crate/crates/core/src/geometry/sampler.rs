//! Quasi-uniform sampling of the isotropic ellipsoid `Q̂`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, CoxeterSystem, NormalizedPoint};

/// Shape of the isotropic cone of a form, in ambient coordinates.
#[derive(Clone, Debug)]
pub enum IsotropicCone {
    /// Positive definite: only the zero vector is isotropic.
    Empty,
    /// Positive semi-definite with a one-dimensional radical spanned by `ray`.
    Ray { ray: Vec<f64> },
    /// Signature `(k, 1)`: `x = center + sum c_i axes[i]` with `|c| = 1`.
    Ellipsoid {
        center: Vec<f64>,
        axes: Vec<Vec<f64>>,
        /// Unit eigenvectors for the positive eigenvalues, paired with `lambdas`.
        directions: Vec<Vec<f64>>,
        lambdas: Vec<f64>,
        lambda_neg: f64,
    },
}

impl IsotropicCone {
    /// Cone of `form`, embedded into `ambient` coordinates through `support`
    /// (the generator indices of a principal sub-form, or all of them).
    pub fn of_form(
        form: &BilinearForm,
        support: &[usize],
        ambient: usize,
        zero_tol: f64,
    ) -> Result<Self> {
        let sig = form.signature(zero_tol);
        let lift = |col: usize| -> Vec<f64> {
            let mut v = vec![0.0; ambient];
            for (a, &s) in support.iter().enumerate() {
                v[s] = form.eigenvectors()[(a, col)];
            }
            v
        };
        match (sig.negative, sig.zero) {
            (0, 0) => Ok(IsotropicCone::Empty),
            (0, 1) => {
                let col = (0..form.rank())
                    .find(|&k| form.eigenvalues()[k].abs() <= zero_tol)
                    .expect("zero eigenvalue");
                let mut ray = lift(col);
                if ray.iter().sum::<f64>() < 0.0 {
                    ray.iter_mut().for_each(|x| *x = -*x);
                }
                Ok(IsotropicCone::Ray { ray })
            }
            (1, 0) => {
                let l = form.eigenvalues();
                let mut center = lift(0);
                if center.iter().sum::<f64>() < 0.0 {
                    center.iter_mut().for_each(|x| *x = -*x);
                }
                let directions: Vec<Vec<f64>> = (1..form.rank()).map(lift).collect();
                let lambdas: Vec<f64> = l[1..].to_vec();
                let axes = directions
                    .iter()
                    .zip(&lambdas)
                    .map(|(u, &li)| {
                        let a = (-l[0] / li).sqrt();
                        u.iter().map(|x| a * x).collect()
                    })
                    .collect();
                Ok(IsotropicCone::Ellipsoid {
                    center,
                    axes,
                    directions,
                    lambdas,
                    lambda_neg: l[0],
                })
            }
            _ => Err(Error::UnsupportedSignature(sig)),
        }
    }

    /// Dimension of the sphere parameterizing the cone's rays (`None` when empty).
    pub fn sphere_dim(&self) -> Option<usize> {
        match self {
            IsotropicCone::Empty => None,
            IsotropicCone::Ray { .. } => Some(0),
            IsotropicCone::Ellipsoid { axes, .. } => Some(axes.len()),
        }
    }

    /// Isotropic vectors (not normalized), `count` of them for ellipsoids of
    /// dimension at least 2; the finite cases return every ray once.
    pub fn rays(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        match self {
            IsotropicCone::Empty => Vec::new(),
            IsotropicCone::Ray { ray } => vec![ray.clone()],
            IsotropicCone::Ellipsoid { center, axes, .. } => {
                sphere_directions(axes.len(), count, seed)
                    .into_iter()
                    .map(|c| {
                        let mut x = center.clone();
                        for (ci, a) in c.iter().zip(axes) {
                            for (xj, aj) in x.iter_mut().zip(a) {
                                *xj += ci * aj;
                            }
                        }
                        x
                    })
                    .collect()
            }
        }
    }

    /// Radial projection of `x` onto the cone inside the span of the center and axes.
    pub fn project(&self, x: &[f64]) -> Option<Vec<f64>> {
        match self {
            IsotropicCone::Empty => None,
            IsotropicCone::Ray { ray } => Some(ray.clone()),
            IsotropicCone::Ellipsoid {
                center,
                directions,
                lambdas,
                lambda_neg,
                ..
            } => {
                let dot = |u: &[f64]| u.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
                let t = dot(center);
                let c: Vec<f64> = directions.iter().map(|u| dot(u)).collect();
                let energy: f64 = c.iter().zip(lambdas).map(|(ci, l)| l * ci * ci).sum();
                if !(energy > 0.0) || t == 0.0 {
                    return None;
                }
                let s = (-lambda_neg * t * t / energy).sqrt();
                let mut y: Vec<f64> = center.iter().map(|v| t * v).collect();
                for (ci, u) in c.iter().zip(directions) {
                    for (yj, uj) in y.iter_mut().zip(u) {
                        *yj += s * ci * uj;
                    }
                }
                Some(y)
            }
        }
    }
}

/// `count` unit vectors in `R^d`, quasi-uniform on the sphere; `d = 1` gives `{+1, -1}`.
pub fn sphere_directions(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match d {
        0 => vec![Vec::new()],
        1 => vec![vec![1.0], vec![-1.0]],
        2 => {
            let shift: f64 = rng.random();
            (0..count)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64 + shift) / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            let shift: f64 = rng.random();
            let phase: f64 = rng.random::<f64>() * 2.0 * PI;
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + shift) / count as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let t = golden * k as f64 + phase;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
        _ => {
            let pairs = d.div_ceil(2);
            let primes = first_primes(2 * pairs);
            let shifts: Vec<f64> = (0..2 * pairs).map(|_| rng.random()).collect();
            (0..count)
                .map(|k| {
                    let u: Vec<f64> = primes
                        .iter()
                        .zip(&shifts)
                        .map(|(&p, s)| (radical_inverse(k as u64 + 1, p) + s).fract())
                        .collect();
                    let mut g = Vec::with_capacity(2 * pairs);
                    for j in 0..pairs {
                        let r = (-2.0 * (1.0 - u[2 * j]).ln()).sqrt();
                        let t = 2.0 * PI * u[2 * j + 1];
                        g.push(r * t.cos());
                        g.push(r * t.sin());
                    }
                    g.truncate(d);
                    let norm = g
                        .iter()
                        .map(|x| x * x)
                        .sum::<f64>()
                        .sqrt()
                        .max(f64::MIN_POSITIVE);
                    g.iter().map(|x| x / norm).collect()
                })
                .collect()
        }
    }
}

fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut r = 0.0;
    while k > 0 {
        r += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    r
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut ps = Vec::with_capacity(count);
    let mut c = 2u64;
    while ps.len() < count {
        if ps
            .iter()
            .take_while(|&&p| p * p <= c)
            .all(|&p| !c.is_multiple_of(p))
        {
            ps.push(c);
        }
        c += 1;
    }
    ps
}

/// Sampler of `Q̂` for a full system.
#[derive(Clone, Debug)]
pub struct QhatSampler<'a> {
    sys: &'a CoxeterSystem,
    cone: IsotropicCone,
}

impl<'a> QhatSampler<'a> {
    /// Fails with `UnsupportedSignature` for positive definite forms (empty `Q̂`).
    pub fn new(sys: &'a CoxeterSystem) -> Result<Self> {
        let support: Vec<usize> = (0..sys.rank()).collect();
        let cone = IsotropicCone::of_form(
            sys.form(),
            &support,
            sys.rank(),
            sys.tolerances().eigen_zero,
        )?;
        if let IsotropicCone::Empty = cone {
            return Err(Error::UnsupportedSignature(sys.signature()));
        }
        Ok(Self { sys, cone })
    }

    pub fn cone(&self) -> &IsotropicCone {
        &self.cone
    }

    /// `count` points of `Q̂` (all of them when `Q̂` is finite).
    pub fn sample(&self, count: usize, seed: u64) -> Result<PointCloud> {
        let mut cloud = PointCloud::new(self.sys.rank());
        for r in self.cone.rays(count, seed) {
            let p = self.sys.normalize(&r)?;
            cloud.push_point(&p, 0, -1);
        }
        Ok(cloud)
    }

    /// Radial projection of a slice point onto `Q̂`.
    pub fn project(&self, x: &[f64]) -> Result<NormalizedPoint> {
        let y = self
            .cone
            .project(x)
            .ok_or_else(|| Error::NotApplicable("point has no radial projection onto Q̂".into()))?;
        self.sys.normalize(&y)
    }

    /// Inserts projected midpoints between consecutive points.
    pub fn refine(&self, polyline: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(2 * polyline.len());
        for w in polyline.windows(2) {
            out.push(w[0].clone());
            let mid: Vec<f64> = w[0].iter().zip(&w[1]).map(|(a, b)| 0.5 * (a + b)).collect();
            out.push(self.project(&mid)?.coords);
        }
        if let Some(last) = polyline.last() {
            out.push(last.clone());
        }
        Ok(out)
    }
}

/// `count` points of `Q̂` for `sys`; convenience wrapper over [`QhatSampler`].
pub fn sample_qhat(sys: &CoxeterSystem, count: usize, seed: u64) -> Result<PointCloud> {
    QhatSampler::new(sys)?.sample(count, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::forms::Tolerances;
    use crate::metric::{chain_length, chordal_d};

    #[test]
    fn rank2_two_points_closed_form() {
        // B12 = -c: on |x|_1 = 1 the isotropic points are proportional to (1, c +- sqrt(c^2 - 1)).
        let sys = fixtures::rank2_infinite(-1.5)
            .system(Tolerances::default())
            .unwrap();
        let cloud = sample_qhat(&sys, 100, 0).unwrap();
        assert_eq!(cloud.len(), 2);
        let c: f64 = 1.5;
        let mut ratios: Vec<f64> = (0..2)
            .map(|k| cloud.point(k)[1] / cloud.point(k)[0])
            .collect();
        ratios.sort_by(f64::total_cmp);
        assert!((ratios[0] - (c - (c * c - 1.0).sqrt())).abs() < 1e-12);
        assert!((ratios[1] - (c + (c * c - 1.0).sqrt())).abs() < 1e-12);
    }

    #[test]
    fn affine_rank2_is_midpoint() {
        let sys = fixtures::rank2_infinite(-1.0)
            .system(Tolerances::default())
            .unwrap();
        let cloud = sample_qhat(&sys, 10, 0).unwrap();
        assert_eq!(cloud.len(), 1);
        assert!((cloud.point(0)[0] - 0.5).abs() < 1e-12 && (cloud.point(0)[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn finite_type_refused() {
        let sys = fixtures::rank2_order(5)
            .system(Tolerances::default())
            .unwrap();
        assert!(matches!(
            sample_qhat(&sys, 10, 0),
            Err(Error::UnsupportedSignature(_))
        ));
    }

    #[test]
    fn samples_are_on_qhat() {
        for fx in [
            fixtures::triangle(3, 3, 7),
            fixtures::all_bonds(3, -1.1),
            fixtures::chain535(),
            fixtures::rank5_chain(),
        ] {
            let sys = fx.system(Tolerances::default()).unwrap();
            let cloud = sample_qhat(&sys, 2000, 7).unwrap();
            assert_eq!(cloud.len(), 2000);
            for k in 0..cloud.len() {
                assert!(
                    cloud.qvalue(k).abs() <= 1e-10,
                    "{} q = {}",
                    fx.name,
                    cloud.qvalue(k)
                );
                assert!((sys.norm1(cloud.point(k)) - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        assert_eq!(
            sample_qhat(&sys, 50, 3).unwrap(),
            sample_qhat(&sys, 50, 3).unwrap()
        );
        assert_ne!(
            sample_qhat(&sys, 50, 3).unwrap(),
            sample_qhat(&sys, 50, 4).unwrap()
        );
    }

    #[test]
    fn halton_directions_are_unit() {
        for d in [4, 5, 7] {
            for v in sphere_directions(d, 100, 1) {
                assert_eq!(v.len(), d);
                assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn refinement_never_shortens_chains() {
        let sys = fixtures::triangle(3, 3, 7)
            .system(Tolerances::default())
            .unwrap();
        let s = QhatSampler::new(&sys).unwrap();
        let pts = s.sample(12, 11).unwrap();
        for start in 0..6 {
            let mut line = vec![pts.point(start).to_vec(), pts.point(start + 3).to_vec()];
            let mut prev = chain_length(sys.form(), &line);
            assert!((prev - chordal_d(sys.form(), &line[0], &line[1])).abs() < 1e-15);
            for _ in 0..3 {
                line = s.refine(&line).unwrap();
                let next = chain_length(sys.form(), &line);
                assert!(next >= prev - 1e-12);
                prev = next;
            }
        }
    }
}
