//! Promise-CSP sandwiches over finite relational structures.
//!
//! The crate builds two families of structures `A -> C -> B` where `C` is
//! affine over `Z_p` and therefore solvable by linear algebra, decides
//! `PCSP(A, B)` through `C`, and produces checkable certificates that no
//! sandwiched structure with fewer than `p` elements has a tractable CSP.
//! Alongside that it provides the graph and digraph classification
//! procedures (bipartiteness, smooth parts, cores, unions of directed cycles).
//!
//! Layout:
//! - [`structure`]: signatures, finite structures, function tables, powers.
//! - [`hom`]: homomorphism, core and polymorphism search; obstruction witnesses.
//! - [`affine`]: Gaussian elimination over `Z_p`, affine relations, solvers.
//! - [`constructions`]: the two sandwich families and their witnesses.
//! - [`verify`]: brute-force claim oracles and refutation certificates.
//! - [`digraph`]: graph and digraph procedures.

pub mod affine;
pub mod constructions;
pub mod digraph;
mod error;
pub mod hom;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};

/// Domain element. Elements of a structure of size `k` are `0..k`.
pub type Elem = u32;

/// Tuple-count threshold below which intensional relations are materialized.
pub const DEFAULT_MATERIALIZE_THRESHOLD: u64 = 1_000_000;

/// Largest structure `core_of` accepts by default.
pub const DEFAULT_CORE_LIMIT: usize = 10;

pub use affine::{
    affine_closure, gauss_solve, relation_to_equations, solve_affine_csp, AffineAnswer,
    AffineRelation, AffineStructure, ModMatrix, PcspAnswer, PcspDecider,
};
pub use constructions::{build_thm1, build_thm2, build_thm2_witness, thm1_maps, Thm1Bundle, Thm2Bundle};
pub use digraph::Digraph;
pub use hom::{
    check_sandwich, compose_cyclic, core_of, find_cyclic_polymorphism, find_homomorphism,
    find_majority_polymorphism, is_homomorphism, verify_obstruction_witness, CspInstance,
    Homomorphism, ObstructionWitness, PolymorphismBudget, SearchOutcome, WitnessMode,
    WitnessVerdict,
};
pub use structure::{FiniteStructure, FunctionTable, RelSignature, Relation, TupleSet};
