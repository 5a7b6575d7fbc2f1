//! Projective action of group elements on `Q̂`.

pub mod eigen;
pub mod element;
pub mod iterate;
pub mod orbit;

pub use eigen::{qhat_eigen, EigenClass, FixedLocus, QhatEigenData};
pub use element::{enumerate_elements, normalized_action, word_matrix, GroupElement};
pub use iterate::{check_infinite_order, iterate_to_limit, IterationOutcome, IterationStatus};
pub use orbit::{excluded_orbit, norm1_distortion_bound, orbit_sample};
