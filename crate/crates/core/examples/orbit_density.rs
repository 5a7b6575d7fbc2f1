//! The orbit of any single limit point is dense in the limit set.
//!
//! cargo run --release --example orbit_density

use limit_roots::dynamics::orbit_sample;
use limit_roots::fixtures;
use limit_roots::geometry::QhatSampler;
use limit_roots::metric::hausdorff;
use limit_roots::roots::{enumerate_roots, limit_estimate, normalized_roots};
use limit_roots::Tolerances;

fn main() {
    let sys = fixtures::one_infinite(-1.5)
        .system(Tolerances::default())
        .unwrap();
    let (form, nd) = (sys.form(), sys.normalization());
    let inv = enumerate_roots(form, 16, 1e-8).unwrap();
    let roots = normalized_roots(form, &inv, nd, 1e-12).unwrap();
    let est = limit_estimate(&roots, 12, 1e-2).unwrap();
    // Project a deep root onto the isotropic set to get an honest limit point.
    let seed = QhatSampler::new(&sys)
        .unwrap()
        .project(est.cloud.point(0))
        .unwrap();
    println!("seed {:.4?} (q = {:.1e})", seed.coords, seed.qvalue);
    for len in [4, 6, 8, 10, 12] {
        let orbit = orbit_sample(&sys, &seed, len, 10_000_000).unwrap();
        let h = hausdorff(form, nd, &orbit, &est.cloud).unwrap();
        println!(
            "words up to {len:>2}: {:>6} points, Hausdorff to limit estimate {:.2e}",
            orbit.len(),
            h.symmetric
        );
    }
}
