//! Root data, Weyl groups, characters and lattices.

pub mod cartan;
pub mod character;
pub mod datum;
pub mod lattice;
pub mod polynomial;
pub mod weyl;

pub use cartan::{classify, Series, SimpleType};
pub use character::{
    decompose_into_irreducibles, irreducible_character, weyl_dimension, CharacterCache, WeightGeometry,
};
pub use datum::{bc_system, build_root_datum, parse_datum, standard_datum, RootDatum};
pub use lattice::{lattice_quotient, lattice_quotient_general, FiniteAbelianGroup, Lattice, LatticeQuotient};
pub use polynomial::FourierPolynomial;
pub use weyl::{longest_element, weyl_group, weyl_traverse, WeylElement};
