//! Limit roots of Coxeter groups whose bilinear form is Lorentzian.
//!
//! The crate enumerates positive roots, normalizes them onto the affine slice
//! `|v|_1 = 1`, samples the isotropic ellipsoid `Q̂`, and compares the two as
//! point clouds. Group elements act on `Q̂` projectively; their fixed points,
//! iterates and orbits are in [`dynamics`].
//!
//! ```
//! use limit_roots::{fixtures, roots, Tolerances};
//!
//! let sys = fixtures::triangle(3, 3, 7).system(Tolerances::default()).unwrap();
//! let inv = roots::enumerate_roots(sys.form(), 8, 1e-8).unwrap();
//! assert_eq!(inv.count_at_depth(0), 3);
//! ```

pub mod cli;
pub mod cloud;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod geometry;
pub mod metric;
pub mod quantize;
pub mod roots;

pub use cloud::PointCloud;
pub use error::{Error, Result};
pub use forms::{
    BilinearForm, Bond, CoxeterSpec, CoxeterSystem, Mode, NormalizationData, NormalizedPoint,
    Signature, SystemKind, Tolerances,
};
