//! Bounded complexes, their resolutions, and the derived functors
//! `RH = RHom_R(T, -)` and `LG = - ⊗^L_S T`.

mod complex;
mod functors;
mod resolution;

pub use complex::{
    chain_map_basis, cone, random_chain_map, random_complex, vector_space, ChainMap, Cohomology, Complex, Cone,
};
pub use functors::{
    derived_counit, derived_hom, fully_faithful_check, ker_lg_member, les_check, lg, lg_map, lg_resolved, rh,
    sigma_derived_member, theta_derived_iso, xi_derived_iso, DerivedCounit, FullyFaithfulRow, LesReport, LgComplex,
    RHom,
};
pub use resolution::{
    injective_resolution, injective_resolution_through, perp_resolution, projective_resolution,
    projective_resolution_through, Resolution, RESOLUTION_CAP,
};
