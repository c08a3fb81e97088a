//! Exact counting of homomorphisms Γ → G up to conjugation, for Γ a finite
//! subgroup of SU(2) and G a compact simple Lie group, together with the
//! refined (twisted-sector) data used to compare Langlands-dual pairs.

pub mod abelian;
pub mod affine;
pub mod counting;
pub mod cyclo;
pub mod grouprep;
pub mod intmat;
pub mod lattice;
pub mod mckay;

pub use grouprep::{GroupData, GroupSpec};
