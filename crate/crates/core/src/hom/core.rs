//! Cores of small extensional structures.

use itertools::Itertools;

use super::search::find_structure_homomorphism;
use crate::error::{Error, Result};
use crate::structure::{FiniteStructure, Homomorphism};
use crate::Elem;

/// A core of some structure `A`, as an induced substructure of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    /// The induced substructure, relabeled to `0..vertices.len()`.
    pub structure: FiniteStructure,
    /// Vertices of `A` the core is induced on, increasing.
    pub vertices: Vec<Elem>,
    /// A homomorphism from `A` onto the core.
    pub retraction: Homomorphism,
}

/// The core of `a` induced on the lexicographically least vertex subset of
/// minimum size that `a` maps into.
pub fn core_of(a: &FiniteStructure, limit: usize) -> Result<Core> {
    let n = a.domain_size();
    if n > limit {
        return Err(Error::Budget(format!(
            "core search on {n} elements exceeds the limit of {limit}"
        )));
    }
    for k in 1..=n {
        for subset in (0..n as Elem).combinations(k) {
            let c = a.induced(&subset)?;
            if let Some(retraction) = find_structure_homomorphism(a, &c)? {
                return Ok(Core {
                    structure: c.with_name(format!("{}_core", a.name()))?,
                    vertices: subset,
                    retraction,
                });
            }
        }
    }
    unreachable!("the identity maps a onto itself")
}

/// Every endomorphism of `a` is a bijection, i.e. `a` does not map into any
/// of its one-vertex-deleted substructures.
pub fn is_core(a: &FiniteStructure) -> Result<bool> {
    let n = a.domain_size();
    if n == 1 {
        return Ok(true);
    }
    for v in 0..n as Elem {
        let rest: Vec<Elem> = (0..n as Elem).filter(|&u| u != v).collect();
        if find_structure_homomorphism(a, &a.induced(&rest)?)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
