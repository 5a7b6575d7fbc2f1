//! Which subsets of generators already produce the whole limit set, judged by
//! whether the isotropic set of the sub-diagram sits inside its simplex.
//!
//! cargo run --release --example generating_subsets

use limit_roots::fixtures;
use limit_roots::geometry::is_generating;
use limit_roots::Tolerances;

fn main() {
    for fx in [
        fixtures::triangle(3, 3, 7),
        fixtures::all_bonds(3, -1.1),
        fixtures::one_infinite(-1.5),
        fixtures::cycle4_mixed(),
    ] {
        let sys = fx.system(Tolerances::default()).unwrap();
        let n = sys.rank();
        println!("{}:", fx.name);
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if subset.len() < 2 {
                continue;
            }
            match is_generating(&sys, &subset, 4000, 0) {
                Ok(g) => println!("  {subset:?}: {g}"),
                Err(e) => println!("  {subset:?}: {e}"),
            }
        }
    }
}
