//! Integral lattices, finite quadratic forms and the operations between them.

pub mod discriminant;
pub mod finite_form;
pub mod index;
pub mod isometry;
pub mod isotropic;
#[allow(clippy::module_inception)]
pub mod lattice;
pub mod models;
pub mod overlattice;
pub mod sublattice;

pub use discriminant::{discriminant_form, DiscriminantForm};
pub use finite_form::{
    automorphisms, finite_form_isometric, verify_isometry, Comparison, FiniteForm, IsometryResult,
    Obstruction,
};
pub use index::{index_exponent, IndexFormulaInput};
pub use isometry::{gamma_member, gauss_reduce_binary, is_isometric_small, is_isometry, Isometry};
pub use isotropic::{
    classify_isotropic_plane, classify_isotropic_vector, IsotropicClass, IsotropicKind,
};
pub use lattice::{make_named, parity, signature, Lattice, LatticeName, Parity};
pub use overlattice::{
    enumerate_integral_overlattices, overlattice_from_isotropic, Overlattice, OverlatticeEntry,
};
pub use sublattice::{orthogonal_complement, saturation, sublattice_index, Sublattice};
