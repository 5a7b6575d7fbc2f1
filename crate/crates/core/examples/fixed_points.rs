//! Fixed points of single elements: attracting and repelling eigenvectors of
//! hyperbolic words, fixed circles of reflections, parabolic drift.
//!
//! cargo run --example fixed_points

use limit_roots::dynamics::{iterate_to_limit, qhat_eigen, word_matrix, IterationStatus};
use limit_roots::fixtures;
use limit_roots::geometry::sample_qhat;
use limit_roots::{Error, Tolerances};

fn main() {
    let sys = fixtures::triangle(3, 3, 7)
        .system(Tolerances::default())
        .unwrap();
    let x0 = sample_qhat(&sys, 8, 0).unwrap().normalized(3);
    for word in [vec![0, 1, 2], vec![0, 1, 0, 2], vec![2, 1, 0, 1, 2, 0]] {
        let w = word_matrix(sys.form(), &word);
        let e = qhat_eigen(&sys, &w).unwrap();
        let (l, p) = e.dominant().unwrap();
        let (l2, _) = e.subdominant().unwrap();
        let r = iterate_to_limit(&sys, &w, &x0, 10_000, 1e-10).unwrap();
        println!(
            "{word:?}: lambda {l:.6} lambda' {l2:.6} (product {:.1e}), p = {:.5?}, iterates converge in {} steps",
            l * l2 - 1.0,
            p.coords,
            r.steps
        );
    }

    // s1 s3 has order 7 here: no limit to iterate towards.
    match iterate_to_limit(&sys, &word_matrix(sys.form(), &[0, 2]), &x0, 100, 1e-10) {
        Err(Error::FiniteOrder { order }) => println!("[0, 2]: finite order {order}"),
        other => println!("[0, 2]: unexpected {other:?}"),
    }

    // A reflection in rank 4 fixes a whole circle of the isotropic sphere.
    let sys4 = fixtures::chain535().system(Tolerances::default()).unwrap();
    let e = qhat_eigen(&sys4, &word_matrix(sys4.form(), &[1])).unwrap();
    for locus in &e.loci {
        println!(
            "reflection in rank 4: eigenvalue {:+} eigenspace dim {}, fixed {}-sphere",
            locus.eigenvalue,
            locus.eigenspace_dim,
            locus.sphere_dim.unwrap()
        );
    }

    // Parabolic: a single fixed point, approached only polynomially.
    let sys_p = fixtures::cycle4_mixed()
        .system(Tolerances::default())
        .unwrap();
    let y0 = sample_qhat(&sys_p, 8, 0).unwrap().normalized(2);
    let r = iterate_to_limit(&sys_p, &word_matrix(sys_p.form(), &[0, 1]), &y0, 200, 1e-10).unwrap();
    assert_eq!(r.status, IterationStatus::NoConvergence);
    let g = &r.log_norm_growth;
    println!(
        "parabolic [0, 1]: {:?} after {} steps, log|w^k x|_1 at k=50,100,200: {:.3} {:.3} {:.3}",
        r.status, r.steps, g[49], g[99], g[199]
    );
}
