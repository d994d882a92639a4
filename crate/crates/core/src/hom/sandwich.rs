use super::search::{find_homomorphism, is_structure_homomorphism};
use super::CspInstance;
use crate::error::Result;
use crate::structure::{FiniteStructure, Homomorphism};
use crate::DEFAULT_MATERIALIZE_THRESHOLD;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SandwichSide {
    /// No homomorphism `A -> C`.
    Left,
    /// No homomorphism `C -> B`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sandwich {
    Sandwiched { left: Homomorphism, right: Homomorphism },
    Failure(SandwichSide),
}

/// Looks for homomorphisms `A -> C -> B`. Intensional sources are
/// materialized first.
pub fn check_sandwich(a: &FiniteStructure, c: &FiniteStructure, b: &FiniteStructure) -> Result<Sandwich> {
    a.signature().ensure_same(c.signature())?;
    c.signature().ensure_same(b.signature())?;
    let a_ext = a.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
    let Some(left) = find_homomorphism(&CspInstance::from_structure(&a_ext)?, c)? else {
        return Ok(Sandwich::Failure(SandwichSide::Left));
    };
    let c_ext = c.materialize(DEFAULT_MATERIALIZE_THRESHOLD)?;
    let Some(right) = find_homomorphism(&CspInstance::from_structure(&c_ext)?, b)? else {
        return Ok(Sandwich::Failure(SandwichSide::Right));
    };
    debug_assert!(is_structure_homomorphism(&left, &a_ext, c)?);
    Ok(Sandwich::Sandwiched { left, right })
}
