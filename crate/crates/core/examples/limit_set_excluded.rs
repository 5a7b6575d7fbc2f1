//! When part of the isotropic set falls outside the simplex, it splits into
//! components whose orbits are exactly what the limit set misses.
//!
//! cargo run --release --example limit_set_excluded

use limit_roots::dynamics::excluded_orbit;
use limit_roots::fixtures;
use limit_roots::geometry::{classify_case, sample_qhat};
use limit_roots::metric::{nearest_distances, ChordalEmbedding, ChordalIndex};
use limit_roots::roots::{enumerate_roots, limit_estimate, normalized_roots};
use limit_roots::Tolerances;

fn main() {
    let sys = fixtures::all_bonds(3, -1.1)
        .system(Tolerances::default())
        .unwrap();
    let (form, nd) = (sys.form(), sys.normalization());
    let samples = sample_qhat(&sys, 10_000, 0).unwrap();
    let dec = classify_case(&sys, &samples).unwrap();
    println!(
        "{:?}: {} components (epsilon {:.2e})",
        dec.case,
        dec.m(),
        dec.epsilon
    );
    for c in dec.summary(None, None).components {
        println!(
            "  component {}: {} samples around {:.3?}",
            c.id, c.count, c.centroid
        );
    }

    let excluded = excluded_orbit(&sys, &dec.thinned(10), 8, 10_000_000).unwrap();
    let inv = enumerate_roots(form, 16, 1e-8).unwrap();
    let roots = normalized_roots(form, &inv, nd, 1e-12).unwrap();
    let est = limit_estimate(&roots, 11, 1e-2).unwrap();

    let emb = ChordalEmbedding::new(form, nd);
    let mut union = est.cloud.clone();
    union.extend(&excluded);
    let cover = nearest_distances(&ChordalIndex::new(emb.clone(), &union), &samples)
        .into_iter()
        .fold(0.0, f64::max);
    let gap = nearest_distances(&ChordalIndex::new(emb, &excluded), &est.cloud);
    let median = {
        let mut g = gap.clone();
        g.sort_by(f64::total_cmp);
        g[g.len() / 2]
    };
    println!(
        "\n{} excluded points, {} limit points",
        excluded.len(),
        est.cloud.len()
    );
    println!("every sample within {cover:.2e} of roots or excluded orbit");
    // Limit points accumulate on the boundary of the excluded region.
    println!("root-to-excluded distance: median {median:.2e}");
}
