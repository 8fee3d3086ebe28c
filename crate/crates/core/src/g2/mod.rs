//! Split G2: the Lie algebra realization, roots, Weyl group and coordinate
//! tuples for the unipotent radicals.

pub mod coords;
pub mod lie;
pub mod roots;
pub mod weyl;

pub use coords::{NCoords, NbarCoords};
pub use lie::LieCoords;
pub use roots::{bilinear_form, character_constants, root_vector, torus, CharLattice, Root};
pub use weyl::{weyl_action, weyl_rep, Letter, WeylWord};
