use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::CoefficientField;

/// Dense index of a variable inside its [`Ring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    field: CoefficientField,
    names: Vec<String>,
    lookup: BTreeMap<String, VarId>,
}

/// A polynomial ring over a coefficient field with named variables.
///
/// Cheap to clone. Two rings are equal when their fields and variable lists
/// agree.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: CoefficientField, names: &[S]) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        let mut lookup = BTreeMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(Error::InvalidVariableName(n.to_string()));
            }
            if lookup.insert(n.to_string(), VarId(i)).is_some() {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            owned.push(n.to_string());
        }
        Ok(Ring(Arc::new(RingData {
            field,
            names: owned,
            lookup,
        })))
    }

    /// The ring with no variables, i.e. the coefficient field itself.
    pub fn empty(field: CoefficientField) -> Ring {
        Ring(Arc::new(RingData {
            field,
            names: Vec::new(),
            lookup: BTreeMap::new(),
        }))
    }

    pub fn field(&self) -> CoefficientField {
        self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.0.names[v.0]
    }

    pub fn var(&self, name: &str) -> Result<VarId> {
        self.0
            .lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.0.lookup.contains_key(name)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.nvars()).map(VarId)
    }

    /// Same variables, different coefficient field.
    pub fn with_field(&self, field: CoefficientField) -> Ring {
        Ring(Arc::new(RingData {
            field,
            names: self.0.names.clone(),
            lookup: self.0.lookup.clone(),
        }))
    }

    /// This ring with one extra variable appended; the name is made unique
    /// by appending underscores if needed.
    pub fn extended(&self, base_name: &str) -> (Ring, VarId) {
        let mut name = base_name.to_string();
        while self.has_var(&name) {
            name.push('_');
        }
        let mut names = self.0.names.clone();
        names.push(name);
        let ring = Ring::new(self.field(), &names).expect("fresh name");
        let id = VarId(self.nvars());
        (ring, id)
    }

    pub(crate) fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_ids_in_order() {
        let r = Ring::new(CoefficientField::Rationals, &["x", "y"]).unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.var("x").unwrap(), VarId(0));
        assert_eq!(r.var("y").unwrap(), VarId(1));
    }

    #[test]
    fn single_variable_over_f3() {
        let f3 = CoefficientField::prime(3).unwrap();
        let r = Ring::new(f3, &["x_1_2"]).unwrap();
        assert_eq!(r.nvars(), 1);
        assert_eq!(r.field(), f3);
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = Ring::new(CoefficientField::Rationals, &["x", "x"]);
        assert_eq!(r.unwrap_err(), Error::DuplicateVariable("x".into()));
    }

    #[test]
    fn names_follow_grammar() {
        assert!(Ring::new(CoefficientField::Rationals, &["1x"]).is_err());
        assert!(Ring::new(CoefficientField::Rationals, &["x'"]).is_err());
        assert!(Ring::new(CoefficientField::Rationals, &["xp_1_2"]).is_ok());
    }

    #[test]
    fn identity_is_by_value() {
        let a = Ring::new(CoefficientField::Rationals, &["x", "y"]).unwrap();
        let b = Ring::new(CoefficientField::Rationals, &["x", "y"]).unwrap();
        let c = Ring::new(CoefficientField::prime(5).unwrap(), &["x", "y"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
