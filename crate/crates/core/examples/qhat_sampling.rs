//! Low-discrepancy samples of the normalized isotropic set for ranks 3 to 5,
//! and the CSV layout used by the command-line tool.
//!
//! cargo run --example qhat_sampling

use limit_roots::fixtures;
use limit_roots::geometry::{IsotropicCone, QhatSampler};
use limit_roots::Tolerances;

fn main() {
    for fx in [
        fixtures::triangle(3, 3, 7),
        fixtures::chain535(),
        fixtures::rank5_chain(),
        fixtures::rank2_infinite(-1.0),
    ] {
        let sys = fx.system(Tolerances::default()).unwrap();
        let sampler = QhatSampler::new(&sys).unwrap();
        let shape = match sampler.cone() {
            IsotropicCone::Empty => "empty".to_string(),
            IsotropicCone::Ray { .. } => "single point".to_string(),
            IsotropicCone::Ellipsoid { .. } => {
                format!("{}-sphere", sampler.cone().sphere_dim().unwrap())
            }
        };
        let cloud = sampler.sample(2000, 1).unwrap();
        let max_q = (0..cloud.len())
            .map(|k| cloud.qvalue(k).abs())
            .fold(0.0, f64::max);
        println!(
            "{:<14} {shape:<13} {} samples, max |q| {max_q:.1e}",
            fx.name,
            cloud.len()
        );
    }

    let sys = fixtures::triangle(3, 3, 7)
        .system(Tolerances::default())
        .unwrap();
    let cloud = QhatSampler::new(&sys).unwrap().sample(4, 0).unwrap();
    let mut out = Vec::new();
    cloud
        .write_csv(
            &mut out,
            sys.normalization(),
            &["example".to_string()],
            false,
        )
        .unwrap();
    println!("\n{}", String::from_utf8(out).unwrap());
}
