//! When the isotropic set lies inside the simplex, deep normalized roots fill
//! all of it.
//!
//! cargo run --release --example limit_set_contained

use limit_roots::fixtures;
use limit_roots::geometry::{classify_case, sample_qhat, Case};
use limit_roots::metric::hausdorff;
use limit_roots::roots::{enumerate_roots, limit_estimate, normalized_roots};
use limit_roots::Tolerances;

fn main() {
    let sys = fixtures::triangle(3, 3, 7)
        .system(Tolerances::default())
        .unwrap();
    let samples = sample_qhat(&sys, 10_000, 0).unwrap();
    let dec = classify_case(&sys, &samples).unwrap();
    assert_eq!(dec.case, Case::Contained);

    for depth in [8, 12, 16, 20] {
        let inv = enumerate_roots(sys.form(), depth, 1e-8).unwrap();
        let cloud = normalized_roots(sys.form(), &inv, sys.normalization(), 1e-12).unwrap();
        let est = limit_estimate(&cloud, depth - 5, 1e-2).unwrap();
        let h = hausdorff(sys.form(), sys.normalization(), &est.cloud, &samples).unwrap();
        println!(
            "depth {depth:>2}: {:>6} points, roots->Q {:.2e}, Q->roots {:.2e}",
            est.cloud.len(),
            h.a_to_b,
            h.b_to_a
        );
    }
}
