//! Positive roots by depth, with a reduced word for one of the deepest.
//!
//! cargo run --release --example root_enumeration [depth]

use limit_roots::fixtures;
use limit_roots::roots::{enumerate_roots, normalized_roots};
use limit_roots::Tolerances;

fn main() {
    let depth: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(14);
    let sys = fixtures::triangle(3, 3, 7)
        .system(Tolerances::default())
        .unwrap();
    let inv = enumerate_roots(sys.form(), depth, sys.tolerances().quant).unwrap();
    println!("{} positive roots up to depth {depth}", inv.len());
    let counts: Vec<usize> = (0..=depth).map(|d| inv.count_at_depth(d)).collect();
    println!("per layer: {counts:?}");

    let k = inv.len() - 1;
    let root = inv.root(k);
    println!("\nlast root {:.3?}", root.vector);
    println!("  = s_{:?} applied to alpha_{}", root.word, root.base + 1);

    // Normalized roots flatten onto the isotropic cone as depth grows.
    let cloud = normalized_roots(sys.form(), &inv, sys.normalization(), 1e-12).unwrap();
    for d in (0..=depth).step_by(2) {
        let q = (0..cloud.len())
            .filter(|&i| cloud.depth(i) == d)
            .map(|i| cloud.qvalue(i).abs())
            .fold(0.0, f64::max);
        println!("depth {d:>2}: max |q| = {q:.2e}");
    }
}
