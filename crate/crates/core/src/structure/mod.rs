//! Finite relational structures and the encodings shared by every module.

mod ops;
mod relation;
mod table;
pub(crate) mod text;

use std::collections::HashSet;

pub use ops::{max_symmetric_subset, power_structure, MAX_SYMMETRIC_ARITY};
pub use relation::{
    linear_coefficients, linear_table, projection_index, Relation, Thm1Kind, Thm1Relation,
    TupleSet,
};
pub use table::{point_count, point_index, point_of_index, rotate_index, FunctionTable};
pub(crate) use table::{orbit_representatives, write_point};

use crate::error::{invalid, Error, Result};
use crate::Elem;

/// Ordered list of relation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RelSignature {
    symbols: Vec<(String, usize)>,
}

impl RelSignature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, arity) in &symbols {
            if !is_identifier(name) {
                return Err(invalid(format!("`{name}` is not a valid symbol name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(invalid(format!("duplicate symbol `{name}`")));
            }
            if *arity == 0 {
                return Err(invalid(format!("symbol `{name}` has arity 0")));
            }
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(s, _)| s == name)
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.symbols[i].1)
    }

    pub fn ensure_same(&self, other: &RelSignature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                self.describe(),
                other.describe()
            )))
        }
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .symbols
            .iter()
            .map(|(s, a)| format!("{s}/{a}"))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// A finite structure on the domain `0..domain_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    name: String,
    domain_size: usize,
    signature: RelSignature,
    relations: Vec<Relation>,
}

impl FiniteStructure {
    pub fn new(
        name: impl Into<String>,
        domain_size: usize,
        relations: Vec<(String, Relation)>,
    ) -> Result<Self> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(invalid(format!("`{name}` is not a valid structure name")));
        }
        if domain_size == 0 {
            return Err(invalid("domain size must be positive"));
        }
        let signature = RelSignature::new(
            relations
                .iter()
                .map(|(s, r)| (s.clone(), r.arity()))
                .collect(),
        )?;
        for (symbol, rel) in &relations {
            match rel {
                Relation::Extensional(t) => {
                    if let Some(v) = t.max_entry() {
                        if v as usize >= domain_size {
                            return Err(Error::OutOfRange {
                                value: v as u64,
                                size: domain_size as u64,
                            });
                        }
                    }
                }
                Relation::Intensional(r) => {
                    if r.domain_size() != domain_size {
                        return Err(invalid(format!(
                            "relation `{symbol}` ({r}) needs domain {}, structure has {domain_size}",
                            r.domain_size()
                        )));
                    }
                }
            }
        }
        Ok(Self {
            name,
            domain_size,
            signature,
            relations: relations.into_iter().map(|(_, r)| r).collect(),
        })
    }

    /// A structure with one relation.
    pub fn single(
        name: impl Into<String>,
        domain_size: usize,
        symbol: &str,
        relation: Relation,
    ) -> Result<Self> {
        Self::new(name, domain_size, vec![(symbol.to_string(), relation)])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(invalid(format!("`{name}` is not a valid structure name")));
        }
        self.name = name;
        Ok(self)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn signature(&self) -> &RelSignature {
        &self.signature
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, index: usize) -> &Relation {
        &self.relations[index]
    }

    pub fn relation_by_name(&self, name: &str) -> Option<&Relation> {
        self.signature.index_of(name).map(|i| &self.relations[i])
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.signature.symbols[index].0
    }

    pub fn contains(&self, index: usize, tuple: &[Elem]) -> bool {
        self.relations[index].contains(tuple)
    }

    pub fn is_extensional(&self) -> bool {
        self.relations
            .iter()
            .all(|r| matches!(r, Relation::Extensional(_)))
    }

    /// Tuples of relation `index`, or an error if it is intensional.
    pub fn tuples(&self, index: usize) -> Result<&TupleSet> {
        self.relations[index]
            .tuples()
            .ok_or_else(|| Error::NotMaterialized(self.symbol(index).to_string()))
    }

    /// Replaces every intensional relation by its tuple set.
    pub fn materialize(&self, limit: u64) -> Result<FiniteStructure> {
        let relations = self
            .relations
            .iter()
            .map(|r| match r {
                Relation::Extensional(_) => Ok(r.clone()),
                Relation::Intensional(i) => i.enumerate(limit).map(Relation::Extensional),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteStructure {
            relations,
            ..self.clone()
        })
    }

    /// Every relation is invariant under all coordinate permutations.
    pub fn is_symmetric(&self) -> Result<bool> {
        for i in 0..self.relations.len() {
            let t = self.tuples(i)?;
            if max_symmetric_subset(t)?.len() != t.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The substructure induced on `vertices` (strictly increasing), relabeled
    /// to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[Elem]) -> Result<FiniteStructure> {
        if vertices.is_empty() {
            return Err(invalid("induced substructure needs at least one vertex"));
        }
        let mut relabel = vec![None; self.domain_size];
        for (i, &v) in vertices.iter().enumerate() {
            let slot = relabel
                .get_mut(v as usize)
                .ok_or(Error::OutOfRange {
                    value: v as u64,
                    size: self.domain_size as u64,
                })?;
            *slot = Some(i as Elem);
        }
        let relations = (0..self.relations.len())
            .map(|i| {
                let t = self.tuples(i)?;
                let kept = t.iter().filter_map(|tuple| {
                    tuple
                        .iter()
                        .map(|&v| relabel[v as usize])
                        .collect::<Option<Vec<_>>>()
                });
                Ok((self.symbol(i).to_string(), Relation::Extensional(TupleSet::from_tuples(t.arity(), kept)?)))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteStructure::new(self.name.clone(), vertices.len(), relations)
    }

    /// The image of every relation under `map`, on a domain of `target_size`.
    pub fn image(&self, map: &Homomorphism, name: &str) -> Result<FiniteStructure> {
        if map.source_size() != self.domain_size {
            return Err(Error::DimensionMismatch(format!(
                "map on {} elements applied to structure of size {}",
                map.source_size(),
                self.domain_size
            )));
        }
        let relations = (0..self.relations.len())
            .map(|i| {
                let t = self.tuples(i)?;
                let rows = t.iter().map(|tuple| map.apply_tuple(tuple));
                Ok((self.symbol(i).to_string(), Relation::Extensional(TupleSet::from_tuples(t.arity(), rows)?)))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteStructure::new(name, map.target_size(), relations)
    }

    pub fn to_text(&self) -> String {
        text::serialize_structure(self)
    }

    pub fn from_text(s: &str) -> Result<FiniteStructure> {
        text::parse_structure(s)
    }
}

/// A total map between two finite domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source_size: usize,
    target_size: usize,
    map: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(target_size: usize, map: Vec<Elem>) -> Result<Self> {
        if let Some(&v) = map.iter().find(|&&v| v as usize >= target_size) {
            return Err(Error::OutOfRange {
                value: v as u64,
                size: target_size as u64,
            });
        }
        Ok(Self {
            source_size: map.len(),
            target_size,
            map,
        })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            source_size: size,
            target_size: size,
            map: (0..size as Elem).collect(),
        }
    }

    pub fn from_fn(source_size: usize, target_size: usize, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        Self::new(target_size, (0..source_size as Elem).map(f).collect())
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn apply_tuple(&self, t: &[Elem]) -> Vec<Elem> {
        t.iter().map(|&x| self.apply(x)).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target_size != other.source_size {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose map into {} elements with map from {}",
                self.target_size, other.source_size
            )));
        }
        Homomorphism::new(other.target_size, self.map.iter().map(|&x| other.apply(x)).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn to_text(&self) -> String {
        text::serialize_map(self)
    }

    pub fn from_text(s: &str) -> Result<Homomorphism> {
        text::parse_map(s)
    }
}
