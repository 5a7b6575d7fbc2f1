//! The visibility constant C' and the expansion factor T for a system whose
//! isotropic set sits inside the simplex.
//!
//! cargo run --release --example expansion_constants

use limit_roots::dynamics::{normalized_action, word_matrix};
use limit_roots::fixtures;
use limit_roots::geometry::{expansion_t, sample_qhat, visibility_constant};
use limit_roots::Tolerances;

fn main() {
    let sys = fixtures::triangle(3, 3, 7)
        .system(Tolerances::default())
        .unwrap();
    let form = sys.form();
    for count in [1_000, 10_000, 100_000] {
        let samples = sample_qhat(&sys, count, 0).unwrap();
        println!(
            "{count:>6} samples: C' = {:.6}",
            visibility_constant(&sys, &samples).unwrap()
        );
    }
    let samples = sample_qhat(&sys, 100_000, 0).unwrap();
    let c = visibility_constant(&sys, &samples).unwrap() * 0.999;
    let t = expansion_t(&sys, c).unwrap();
    println!("T(0.999 C') = {t:.6}");

    // A reflection pushes apart pairs it sees well: |B(s.x, s.y)| > T |B(x, y)|.
    let s = word_matrix(form, &[0]);
    let seen: Vec<usize> = (0..samples.len())
        .filter(|&k| form.pair_simple(0, samples.point(k)) > c)
        .collect();
    let visible: Vec<usize> = (0..samples.len())
        .filter(|&k| form.pair_simple(0, samples.point(k)) >= 0.0)
        .collect();
    let mut worst = f64::INFINITY;
    for (a, b) in seen
        .iter()
        .step_by(97)
        .zip(visible.iter().skip(13).step_by(89))
    {
        let (x, y) = (samples.point(*a), samples.point(*b));
        let sx = normalized_action(&sys, &s, x).unwrap();
        let sy = normalized_action(&sys, &s, y).unwrap();
        worst = worst.min(form.pair(&sx.coords, &sy.coords).abs() / form.pair(x, y).abs());
    }
    println!("smallest expansion ratio over sampled pairs: {worst:.6}");
}
