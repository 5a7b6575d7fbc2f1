//! Named Coxeter systems used by tests, examples and the acceptance suite.

use crate::error::Result;
use crate::forms::{Bond, CoxeterSpec, CoxeterSystem, Tolerances};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub spec: CoxeterSpec,
}

impl Fixture {
    fn new(name: impl Into<String>, rank: usize, bonds: &[(usize, usize, Bond)]) -> Self {
        let mut spec = CoxeterSpec::new(rank).expect("positive rank");
        for &(i, j, b) in bonds {
            spec.set_bond(i, j, b).expect("valid fixture bond");
        }
        Self {
            name: name.into(),
            spec,
        }
    }

    pub fn system(&self, tol: Tolerances) -> Result<CoxeterSystem> {
        CoxeterSystem::from_spec(&self.spec, tol)
    }
}

fn bond(m: u32) -> Bond {
    Bond::Order(m)
}

/// Rank 3 with orders `p` on {1,2}, `q` on {2,3}, `r` on {1,3}.
pub fn triangle(p: u32, q: u32, r: u32) -> Fixture {
    Fixture::new(
        format!("triangle_{p}{q}{r}"),
        3,
        &[(0, 1, bond(p)), (1, 2, bond(q)), (0, 2, bond(r))],
    )
}

/// Complete graph on `rank` vertices with every bond equal to the infinite weight `c`.
pub fn all_bonds(rank: usize, c: f64) -> Fixture {
    let mut bonds = Vec::new();
    for i in 0..rank {
        for j in (i + 1)..rank {
            bonds.push((i, j, Bond::Infinite(c)));
        }
    }
    Fixture::new(format!("all_bonds_{rank}_{}", -c), rank, &bonds)
}

/// Rank 3 with one infinite bond `c` on {1,2} and order-3 bonds elsewhere.
pub fn one_infinite(c: f64) -> Fixture {
    Fixture::new(
        format!("one_infinite_{}", -c),
        3,
        &[(0, 1, Bond::Infinite(c)), (1, 2, bond(3)), (0, 2, bond(3))],
    )
}

pub fn rank2_infinite(c: f64) -> Fixture {
    Fixture::new(format!("rank2_{}", -c), 2, &[(0, 1, Bond::Infinite(c))])
}

pub fn rank2_order(m: u32) -> Fixture {
    Fixture::new(format!("dihedral_{m}"), 2, &[(0, 1, bond(m))])
}

/// Rank-4 linear chain with orders 5, 3, 5; signature `(3, 1)`.
pub fn chain535() -> Fixture {
    Fixture::new(
        "chain_535",
        4,
        &[(0, 1, bond(5)), (1, 2, bond(3)), (2, 3, bond(5))],
    )
}

/// Rank-4 cycle with weights `-1`, orders 3, 4, 3; signature `(3, 1)`.
pub fn cycle4_mixed() -> Fixture {
    Fixture::new(
        "cycle4_mixed",
        4,
        &[
            (0, 1, Bond::Infinite(-1.0)),
            (1, 2, bond(3)),
            (2, 3, bond(4)),
            (0, 3, bond(3)),
        ],
    )
}

/// Rank-5 linear chain with orders 3, 3, 3, 5; signature `(4, 1)`.
pub fn rank5_chain() -> Fixture {
    Fixture::new(
        "chain_3335",
        5,
        &[
            (0, 1, bond(3)),
            (1, 2, bond(3)),
            (2, 3, bond(3)),
            (3, 4, bond(5)),
        ],
    )
}

/// Rank-4 chain with weights `-2, -1/2, -2`; signature `(2, 2)`.
pub fn signature22() -> Fixture {
    Fixture::new(
        "chain_signature22",
        4,
        &[
            (0, 1, Bond::Infinite(-2.0)),
            (1, 2, bond(3)),
            (2, 3, Bond::Infinite(-2.0)),
        ],
    )
}

/// Rank-3 fixtures with signature `(2, 1)` plus the rank-4 and rank-5 ones.
pub fn lorentzian() -> Vec<Fixture> {
    vec![
        triangle(3, 3, 7),
        triangle(2, 3, 7),
        all_bonds(3, -1.1),
        one_infinite(-1.5),
        chain535(),
        cycle4_mixed(),
        rank5_chain(),
    ]
}
