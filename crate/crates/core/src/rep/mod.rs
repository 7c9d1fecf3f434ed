//! Standard modules `Δ_n` and the Hom, Ext and filtration computations built on them.

pub mod ext;
pub mod filtration;
pub mod hom;
pub mod quiver;
pub mod singular;
pub mod standard;
pub mod stirling;

pub use ext::{ext_dim_fa, ext_dim_standard, psi_image_dim, ExtStandard, FaExt};
pub use filtration::{
    check_fa_sgn_projectivity, counting_identity, psi_rank, restriction_identity, FiltrationCheck,
};
pub use hom::{hom_dim_refined, hom_dim_standard, HomSpace};
pub use quiver::{ba_eigensplit, singular_quiver_dims, QuiverCheck};
pub use singular::{classify_singular_pairs, expected_singular_pairs, ExpectedPair, SingularPair};
pub use standard::{standard_dim, StandardModuleSlice};
pub use stirling::{coinduced_injective_dim, stirling2};
