//! Exact computation in the finite partition semigroups C_n, I*_n, PI*_n,
//! wPI*_n and I_n.
//!
//! Elements are bipartitions of {1..n} ∪ {1'..n'}; the crate implements the
//! natural, ⋆ and ∘ multiplications, the structural theory (Green's
//! relations, congruence lattices, isolated subsemigroups, automorphisms,
//! coset representations) and the exhaustive searches that re-verify the
//! classification theorems at small degree.

pub mod bitset;
pub mod congruence;
pub mod element;
pub mod error;
pub mod generation;
pub mod green;
pub mod isolated;
pub mod morphisms;
pub mod named;
pub mod product;
pub mod random;
pub mod symmetric;
pub mod universe;

pub use element::{block_kind, Bipartition, BlockKind, DomainData, Family};
pub use error::{Error, Result};
pub use product::{circ_mul, natural_mul, natural_order_leq, star_mul, Product};
pub use universe::{
    closure, enumerate_family, family_universe, family_universe_budgeted, EquivRelation,
    GeneratorSet, SemigroupUniverse,
};
