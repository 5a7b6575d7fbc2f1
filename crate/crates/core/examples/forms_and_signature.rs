//! Gram matrices, signatures and the normalization vector `o` for a few
//! Coxeter diagrams, plus the inputs that get rejected.
//!
//! cargo run --example forms_and_signature

use limit_roots::fixtures;
use limit_roots::{BilinearForm, Bond, CoxeterSpec, CoxeterSystem, Tolerances};

fn main() {
    let specs = [
        fixtures::triangle(3, 3, 7),
        fixtures::triangle(2, 3, 7),
        fixtures::rank2_infinite(-1.0),
        fixtures::rank2_order(5),
        fixtures::chain535(),
        fixtures::signature22(),
    ];
    for fx in &specs {
        let form = BilinearForm::from_spec(&fx.spec).unwrap();
        print!("{:<18} signature {}", fx.name, form.signature(1e-9));
        match CoxeterSystem::from_form(form, Tolerances::default()) {
            Ok(sys) => println!("  {:?}  o = {:.4?}", sys.kind(), sys.normalization().o()),
            Err(e) => println!("  refused: {e}"),
        }
    }

    // A bond weight must be <= -1 and an order at least 2.
    let bad = CoxeterSpec::new(2)
        .unwrap()
        .with_bond(0, 1, Bond::Infinite(-0.9));
    println!("\nB12 = -0.9: {}", bad.unwrap_err());
    let reducible = CoxeterSpec::new(3)
        .unwrap()
        .with_bond(0, 1, Bond::Order(3))
        .unwrap();
    println!(
        "disconnected diagram: {}",
        BilinearForm::from_spec(&reducible).unwrap_err()
    );

    let json = r#"{"rank": 3, "bonds": [{"i": 1, "j": 2, "c": -1.1}, {"i": 2, "j": 3, "m": 4}]}"#;
    let spec = CoxeterSpec::from_json(json).unwrap();
    let form = BilinearForm::from_spec(&spec).unwrap();
    println!(
        "\nfrom JSON: eigenvalues {:.4?}, signature {}",
        form.eigenvalues(),
        form.signature(1e-9)
    );
    println!("round trip: {}", spec.to_json());
}
