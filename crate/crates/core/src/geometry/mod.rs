//! Static geometry of the slice `|x|_1 = 1`: the ellipsoid `Q̂`, the simplex
//! `conv(Δ̂)`, visibility regions and the components of `Q̂` outside the simplex.

pub mod components;
pub mod sampler;
pub mod simplex;
pub mod visibility;

pub use components::{classify_case, is_generating, Case, Component, ComponentDecomposition};
pub use sampler::{sample_qhat, IsotropicCone, QhatSampler};
pub use simplex::{in_simplex, SimplexMembership};
pub use visibility::{
    expansion_t, in_u_alpha, is_visible, visibility_constant, visibility_report, Visibility,
    VisibilityReport,
};
