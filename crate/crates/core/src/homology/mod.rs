//! Hom spaces, projective and injective resolutions, Ext, tensor products
//! and Tor.

mod ext;
mod hom;
mod idempotents;
mod projective;
mod tensor;

pub use ext::{ext1, ext1_from, ext_dim, Ext1, Extension};
pub use hom::{
    end_algebra, factor_from, factor_through, hom_from_bimodule, hom_from_bimodule_map, hom_space, Bimodule,
    EndAlgebra, HomModule, HomSpace,
};
pub use idempotents::{block_idempotents, idempotents, Idempotents};
pub use projective::{
    composition_multiplicities, cosyzygy, dual, dual_map, dual_over, injective_dimension_at_most, injective_hull,
    injective_indecomposable, injective_modules, is_injective, is_projective, projective_cover,
    projective_dimension, projective_dimension_at_most, projective_indecomposable, projective_modules,
    simple_module, simple_modules, socle_space, syzygy, top, top_multiplicities, Cosyzygy, FreePart, FreeSum,
    InjectiveHull, ProjectiveCover, Syzygy,
};
pub use tensor::{tensor, tensor_map, tensor_map_right, tor1, tor1_dim_from_presentation, Tensor, Tor1};
