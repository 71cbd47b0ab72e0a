//! Ideals given by generators, with a lazily computed Gröbner basis.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::groebner::{groebner, GroebnerBasis, GroebnerConfig};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Ring, VarId};

/// Finitely generated ideal. Zero generators are dropped on construction.
///
/// The grevlex Gröbner basis is computed on first use and cached; the cache
/// is write-once and may be filled from several threads.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceBox<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceBox::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(Box::new(b.clone()));
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceBox::new(),
        })
    }

    /// Like [`Ideal::new`], also dropping generators that are scalar
    /// multiples of earlier ones. Keeps the first representative.
    pub fn new_dedup(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut monics: Vec<Polynomial> = Vec::new();
        for g in gens {
            assert!(g.ring() == ring, "generator from another ring");
            if g.is_zero() {
                continue;
            }
            let m = g.monic();
            if !monics.contains(&m) {
                monics.push(m);
                kept.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceBox::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new_dedup(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new_dedup(ring, alloc::vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the given variables.
    pub fn from_vars(ring: &Ring, vars: &[VarId]) -> Ideal {
        Ideal::new_dedup(ring, vars.iter().map(|&v| Polynomial::var(ring, v)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// True when there are no (nonzero) generators.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when some generator is a nonzero constant. A `false` answer
    /// does not rule out the unit ideal; use [`Ideal::is_unit`] for that.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }

    /// The cached reduced grevlex basis.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = groebner(&self.ring, &self.gens, &MonomialOrder::GradedReverseLex, &GroebnerConfig::default())?;
        Ok(self.gb.get_or_init(|| Box::new(b)))
    }

    /// A reduced basis in another order (not cached).
    pub fn groebner_with(&self, order: &MonomialOrder, cfg: &GroebnerConfig) -> Result<GroebnerBasis> {
        groebner(&self.ring, &self.gens, order, cfg)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.has_unit_generator() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.groebner()?.is_unit())
    }

    /// Membership test. A generator (up to a scalar) is recognized without
    /// computing a basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() || self.has_unit_generator() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        if self.gens.iter().any(|g| g.is_scalar_multiple_of(f)) {
            return Ok(true);
        }
        self.groebner()?.contains(f)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// `f` lies in the radical. Small powers of `f` are tried first as a
    /// certificate; otherwise `1 ∈ I + <1 - t f>` decides.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut power = f.clone();
        for _ in 0..4 {
            if self.contains(&power)? {
                return Ok(true);
            }
            power = &power * f;
        }
        let (ext, t) = self.ring.extended("t");
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed_extended(&ext)).collect();
        let tf = &Polynomial::var(&ext, t) * &f.embed_extended(&ext);
        gens.push(&Polynomial::one(&ext) - &tf);
        let b = groebner(&ext, &gens, &MonomialOrder::GradedReverseLex, &GroebnerConfig::default())?;
        Ok(b.is_unit())
    }

    /// `(I : u^∞)`.
    ///
    /// Generators are first divided by `u` as often as possible. If the
    /// result shares no variable with `u`, then `u` is a non-zero-divisor
    /// modulo it and no elimination is needed.
    pub fn saturate(&self, u: &Polynomial) -> Result<Ideal> {
        if u.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if u.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if u.is_constant() || self.gens.is_empty() {
            return Ok(self.clone());
        }
        let stripped: Vec<Polynomial> = self.gens.iter().map(|g| strip_factor(g, u)).collect();
        let stripped = Ideal::new_dedup(&self.ring, stripped);
        if stripped.has_unit_generator() {
            return Ok(Ideal::unit(&self.ring));
        }
        let usupport = u.support();
        let disjoint = stripped
            .gens
            .iter()
            .all(|g| g.support().iter().all(|v| !usupport.contains(v)));
        if disjoint {
            return Ok(stripped);
        }
        let (ext, t) = self.ring.extended("t");
        let mut gens: Vec<Polynomial> = stripped.gens.iter().map(|g| g.embed_extended(&ext)).collect();
        let tu = &Polynomial::var(&ext, t) * &u.embed_extended(&ext);
        gens.push(&Polynomial::one(&ext) - &tu);
        let b = groebner(&ext, &gens, &MonomialOrder::elimination(alloc::vec![t]), &GroebnerConfig::default())?;
        let kept = b.elements().iter().filter_map(|g| g.restrict_prefix(&self.ring)).collect();
        Ideal::new(&self.ring, kept)
    }

    /// Saturates by each polynomial in turn.
    pub fn saturate_all(&self, units: &[Polynomial]) -> Result<Ideal> {
        let mut cur = self.clone();
        for u in units {
            cur = cur.saturate(u)?;
        }
        Ok(cur)
    }

    /// The variables `V` if the reduced grevlex basis is exactly `V`. The
    /// zero ideal gives the empty set; the unit ideal gives `None`.
    pub fn coordinate_subspace(&self) -> Result<Option<Vec<VarId>>> {
        if self.gens.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let b = self.groebner()?;
        let mut vars = Vec::with_capacity(b.len());
        for g in b.elements() {
            match g.as_variable() {
                Some(v) => vars.push(v),
                None => return Ok(None),
            }
        }
        vars.sort_unstable();
        Ok(Some(vars))
    }

    /// Sum of two ideals.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new_dedup(&self.ring, gens))
    }

    /// Applies `f` to each generator.
    pub fn map<F>(&self, ring: &Ring, f: F) -> Result<Ideal>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let gens = self.gens.iter().map(f).collect::<Result<Vec<_>>>()?;
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal::new_dedup(ring, gens))
    }
}

/// Divides `g` by `u` as long as the division is exact.
pub fn strip_factor(g: &Polynomial, u: &Polynomial) -> Polynomial {
    if u.is_constant() {
        return g.clone();
    }
    if let Some(v) = u.as_variable() {
        return g.factor_out(v).map(|(_, h)| h).unwrap_or_else(|_| g.clone());
    }
    let mut cur = g.clone();
    while !cur.is_zero() {
        match cur.try_div(u) {
            Some(q) => cur = q,
            None => break,
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::parse::parse_polynomial;

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn lemma_counterexample_membership() {
        let r = Ring::new(CoefficientField::Rationals, &["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        assert!(ideal(&r, &["x^2 - y^3", "x^2 - z^5"]).contains(&p("y^3 - z^5")).unwrap());
        assert!(!ideal(&r, &["x^2 - y^3*z", "x^2 - z^3"]).contains(&p("y^3 - z^2")).unwrap());
        assert!(ideal(&r, &["x"]).contains(&Polynomial::zero(&r)).unwrap());
    }

    #[test]
    fn equality_radical_and_saturation() {
        let r = Ring::new(CoefficientField::Rationals, &["x", "y", "e"]).unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        assert!(!ideal(&r, &["x"]).equals(&ideal(&r, &["x^2"])).unwrap());
        assert!(ideal(&r, &["x^2"]).radical_contains(&p("x")).unwrap());
        assert!(!ideal(&r, &["x"]).radical_contains(&p("y")).unwrap());
        let sat = ideal(&r, &["e*x"]).saturate(&p("e")).unwrap();
        assert!(sat.equals(&ideal(&r, &["x"])).unwrap());
        let i = ideal(&r, &["x*y", "y^2"]);
        assert!(i.saturate(&Polynomial::one(&r)).unwrap().equals(&i).unwrap());
        let sat = ideal(&r, &["x*y + x", "x*e"]).saturate(&p("y + 1")).unwrap();
        assert!(sat.equals(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn coordinate_subspaces() {
        let r = Ring::new(CoefficientField::Rationals, &["x", "y"]).unwrap();
        assert_eq!(ideal(&r, &["y"]).coordinate_subspace().unwrap(), Some(alloc::vec![VarId(1)]));
        assert_eq!(
            ideal(&r, &["x + y", "y"]).coordinate_subspace().unwrap(),
            Some(alloc::vec![VarId(0), VarId(1)])
        );
        assert_eq!(ideal(&r, &["x^2"]).coordinate_subspace().unwrap(), None);
        assert_eq!(ideal(&r, &["1"]).coordinate_subspace().unwrap(), None);
        assert_eq!(Ideal::zero(&r).coordinate_subspace().unwrap(), Some(Vec::new()));
    }
}
