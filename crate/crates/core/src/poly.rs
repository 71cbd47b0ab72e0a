//! Canonical sparse multivariate polynomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::monomial::Monomial;
use crate::ring::{Ring, VarId};

/// A polynomial in canonical form: terms sorted by decreasing grevlex
/// monomial, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

/// `ord` of a polynomial along a set of variables; `Infinity` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: alloc::vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Scalar::one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Ring, v: VarId) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: alloc::vec![(Monomial::var(ring.nvars(), v, 1), Scalar::one())],
        }
    }

    /// Looks up a variable by name.
    pub fn named_var(ring: &Ring, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::var(ring, ring.var(name)?))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: alloc::vec![(m, c)],
        }
    }

    /// Builds the canonical form of an arbitrary list of terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let field = ring.field();
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(existing) => *existing = field.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already sorted by decreasing grevlex, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> CoefficientField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.constant_value(), Some(c) if c.is_one())
    }

    /// Returns the variable if the polynomial is exactly `1 * v`.
    pub fn as_variable(&self) -> Option<VarId> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() && m.degree() == 1 => {
                m.exponents().iter().position(|&e| e == 1).map(VarId)
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<VarId> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0))
            .map(VarId)
            .collect()
    }

    pub fn degree_in(&self, v: VarId) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { field.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.field();
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.field();
        // Multiplying by a monomial preserves the term order.
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), field.mul(cc, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest `k` with `self` in the `k`-th power of the ideal generated by
    /// `vars`.
    pub fn order_at(&self, vars: &[VarId]) -> Valuation {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(vars))
            .min()
            .map_or(Valuation::Infinity, Valuation::Finite)
    }

    /// Writes `self = v^k * g` with `v` not dividing `g`.
    pub fn factor_out(&self, v: VarId) -> Result<(u32, Polynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self.terms.iter().map(|(m, _)| m.exponent(v)).min().unwrap_or(0);
        if k == 0 {
            return Ok((0, self.clone()));
        }
        // Dividing every term by the same monomial preserves the term order.
        let g = Polynomial::from_sorted_terms(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exponent(v, m.exponent(v) - k), c.clone()))
                .collect(),
        );
        Ok((k as u32, g))
    }

    /// Whether all terms have the same degree in `vars`. The zero polynomial
    /// counts as homogeneous.
    pub fn is_homogeneous(&self, vars: &[VarId]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree_in(vars));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Monic multiple (leading coefficient one); zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scalar_mul(&inv)
            }
        }
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_ring(d)?;
        let (q, r) = self.div_rem_grevlex(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Quotient if `d` divides `self`.
    pub fn try_div(&self, d: &Polynomial) -> Option<Polynomial> {
        self.div_exact(d).ok()
    }

    fn div_rem_grevlex(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let (lm, lc) = d.leading_term().ok_or(Error::DivisionByZero)?.clone();
        let field = self.field();
        let lc_inv = field.inv(&lc)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Scalar)> = Vec::new();
        let mut rest: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = field.mul(&c, &lc_inv);
                rem = &rem - &d.mul_term(&qm, &qc);
                quot.push((qm, qc));
            } else {
                rest.push((m, c));
                rem.terms.remove(0);
            }
        }
        Ok((
            Polynomial::from_sorted_terms(&self.ring, quot),
            Polynomial::from_terms(&self.ring, rest),
        ))
    }

    /// Re-expresses the polynomial in `target`, mapping each occurring
    /// variable by name.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        let mut map: Vec<VarId> = alloc::vec![VarId(usize::MAX); self.ring.nvars()];
        for v in self.support() {
            map[v.0] = target.var(self.ring.name(v))?;
        }
        Ok(self.map_vars(target, |v| map[v.0]))
    }

    /// Relabels variables through an injective map into `target`; only
    /// variables that occur need a valid image.
    pub fn map_vars<F: Fn(VarId) -> VarId>(&self, target: &Ring, f: F) -> Polynomial {
        let n = target.nvars();
        let field = target.field();
        let same_field = field == self.field();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut exps = alloc::vec![0u16; n];
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        exps[f(VarId(i)).0] += e;
                    }
                }
                let c = if same_field { c.clone() } else { reduce_into(field, c) };
                (Monomial::from_exponents(exps), c)
            }),
        )
    }

    /// Pads monomials with trailing zero exponents to live in a ring that
    /// extends this one by appended variables.
    pub fn embed_extended(&self, target: &Ring) -> Polynomial {
        debug_assert!(target.nvars() >= self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.resized(target.nvars()), c.clone()))
            .collect();
        // Appending variables with zero exponent preserves grevlex order.
        Polynomial::from_sorted_terms(target, terms)
    }

    /// Inverse of [`Polynomial::embed_extended`]; `None` if a dropped variable occurs.
    pub fn restrict_prefix(&self, target: &Ring) -> Option<Polynomial> {
        let n = target.nvars();
        if self
            .terms
            .iter()
            .any(|(m, _)| m.exponents()[n..].iter().any(|&e| e > 0))
        {
            return None;
        }
        let terms = self.terms.iter().map(|(m, c)| (m.resized(n), c.clone())).collect();
        Some(Polynomial::from_sorted_terms(target, terms))
    }

    /// Sum of the terms' degrees in `vars` equal to `d`.
    pub fn homogeneous_part(&self, vars: &[VarId], d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree_in(vars) == d)
            .cloned()
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// `f` and `g` agree up to a nonzero scalar factor.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        self.ring.same(&other.ring) && self.monic() == other.monic()
    }
}

/// Maps a rational scalar into another field (used when changing coefficient fields).
fn reduce_into(field: CoefficientField, c: &Scalar) -> Scalar {
    let (n, d) = c.to_ratio();
    field.from_ratio(&n, &d).expect("denominator invertible in target field")
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics if the operands live in different rings; see [`Polynomial::checked_add`].
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(CoefficientField::Rationals, names).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"]);
        assert_eq!(&p(&r, "x + y") * &p(&r, "x - y"), p(&r, "x^2 - y^2"));
    }

    #[test]
    fn determinant_of_symmetric_two_by_two() {
        let r = ring(&["x_1_1", "x_1_2", "x_2_2"]);
        let f = &(&p(&r, "x_1_1") * &p(&r, "x_2_2")) - &(&p(&r, "x_1_2") * &p(&r, "x_1_2"));
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f, p(&r, "x_1_1*x_2_2 - x_1_2^2"));
    }

    #[test]
    fn additive_inverse() {
        let r = ring(&["x", "y"]);
        let f = p(&r, "3*x^2*y - 1/2*y + 7");
        assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring(&["x"]);
        let b = ring(&["y"]);
        let r = Polynomial::var(&a, VarId(0)).checked_add(&Polynomial::var(&b, VarId(0)));
        assert_eq!(r.unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn order_at_examples() {
        let r = ring(&["x", "y"]);
        let x = r.var("x").unwrap();
        assert_eq!(p(&r, "x^2*y + x^3").order_at(&[x]), Valuation::Finite(2));
        assert_eq!(Polynomial::zero(&r).order_at(&[x]), Valuation::Infinity);
        let b = ring(&["x_1_1", "x_1_2", "x_2_2"]);
        let all: Vec<VarId> = b.vars().collect();
        assert_eq!(p(&b, "x_1_1*x_2_2 - x_1_2^2").order_at(&all), Valuation::Finite(2));
    }

    #[test]
    fn factor_out_examples() {
        let r = ring(&["xp_1_1", "xp_1_2", "xp_2_2"]);
        let e = r.var("xp_1_1").unwrap();
        let f = p(&r, "xp_1_1^2*xp_2_2 - xp_1_1^2*xp_1_2^2");
        assert_eq!(f.factor_out(e).unwrap(), (2, p(&r, "xp_2_2 - xp_1_2^2")));

        let s = ring(&["x"]);
        let x = VarId(0);
        assert_eq!(p(&s, "x + 1").factor_out(x).unwrap(), (0, p(&s, "x + 1")));
        assert_eq!(p(&s, "x^3").factor_out(x).unwrap(), (3, Polynomial::one(&s)));
        assert_eq!(Polynomial::zero(&s).factor_out(x).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn homogeneity_examples() {
        let b = ring(&["x_1_1", "x_1_2", "x_2_2"]);
        let all: Vec<VarId> = b.vars().collect();
        assert!(p(&b, "x_1_1*x_2_2 - x_1_2^2").is_homogeneous(&all));
        let r = ring(&["x", "y", "z"]);
        let all: Vec<VarId> = r.vars().collect();
        assert!(!p(&r, "x^2 - y^3").is_homogeneous(&all));
        assert!(Polynomial::zero(&r).is_homogeneous(&all));
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y", "z"]);
        let a = p(&r, "x^2 - y^2");
        let d = p(&r, "x - y");
        assert_eq!(a.div_exact(&d).unwrap(), p(&r, "x + y"));
        assert_eq!(p(&r, "x^2 + 1").div_exact(&d).unwrap_err(), Error::NotDivisible);
        let e = p(&r, "1 - x*y");
        let f = &(&e * &e) * &p(&r, "z^3 - x + 2");
        assert_eq!(f.div_exact(&e).unwrap().div_exact(&e).unwrap(), p(&r, "z^3 - x + 2"));
    }

    #[test]
    fn field_change_reduces_coefficients() {
        let r = ring(&["x"]);
        let f5 = r.with_field(CoefficientField::prime(5).unwrap());
        let f = p(&r, "-x + 7/2");
        let g = f.to_ring(&f5).unwrap();
        assert_eq!(g, parse_polynomial(&f5, "4*x + 1").unwrap());
    }
}
