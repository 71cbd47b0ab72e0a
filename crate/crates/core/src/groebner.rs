//! Buchberger's algorithm with sugar selection and Gebauer–Möller pair
//! pruning. Bases are always returned reduced.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::monomial::{CompiledOrder, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

static DEFAULT_MAX_BASIS: AtomicUsize = AtomicUsize::new(20_000);
static DEFAULT_MAX_TERMS: AtomicUsize = AtomicUsize::new(500_000);

/// Caps on a single Gröbner computation. Exceeding one is reported as
/// [`Error::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of polynomials ever added to the basis.
    pub max_basis_size: usize,
    /// Maximum number of terms in any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_basis_size: DEFAULT_MAX_BASIS.load(AtomicOrdering::Relaxed),
            max_terms: DEFAULT_MAX_TERMS.load(AtomicOrdering::Relaxed),
        }
    }
}

impl GroebnerConfig {
    /// Replaces the process-wide defaults used by `GroebnerConfig::default()`.
    pub fn set_defaults(cfg: GroebnerConfig) {
        DEFAULT_MAX_BASIS.store(cfg.max_basis_size, AtomicOrdering::Relaxed);
        DEFAULT_MAX_TERMS.store(cfg.max_terms, AtomicOrdering::Relaxed);
    }
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

/// Terms sorted by decreasing monomial in some compiled order.
#[derive(Clone)]
struct OPoly {
    terms: Vec<(Monomial, Scalar)>,
}

impl OPoly {
    fn from_poly(p: &Polynomial, ord: &CompiledOrder) -> OPoly {
        let mut terms = p.terms().to_vec();
        if !matches!(ord, CompiledOrder::Grevlex) {
            terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        }
        OPoly { terms }
    }

    fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monic(&mut self, field: CoefficientField) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = field.inv(c).expect("nonzero leading coefficient");
                for t in &mut self.terms {
                    t.1 = field.mul(&t.1, &inv);
                }
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_mul(&self, c: &Scalar, m: &Monomial, g: &OPoly, ord: &CompiledOrder, field: CoefficientField) -> OPoly {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Monomial> = b.first().map(|t| t.0.mul(m));
        while i < a.len() {
            let Some(mb) = bj.as_ref() else { break };
            match ord.cmp(&a[i].0, mb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), field.neg(&field.mul(c, &b[j].1))));
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        while let Some(mb) = bj {
            out.push((mb, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
            bj = b.get(j).map(|t| t.0.mul(m));
        }
        OPoly { terms: out }
    }
}

struct Engine<'a> {
    ord: CompiledOrder,
    field: CoefficientField,
    cfg: &'a GroebnerConfig,
    polys: Vec<OPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

impl Engine<'_> {
    fn check_size(&self, p: &OPoly) -> Result<()> {
        if p.terms.len() > self.cfg.max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate polynomial with {} terms exceeds the cap of {}",
                p.terms.len(),
                self.cfg.max_terms
            )));
        }
        Ok(())
    }

    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        (0..self.polys.len()).find(|&k| self.active[k] && self.polys[k].lm().divides(m))
    }

    /// Reduces until the leading term is irreducible.
    fn top_reduce(&self, mut p: OPoly) -> Result<OPoly> {
        while !p.is_zero() {
            let (m, c) = p.terms[0].clone();
            let Some(k) = self.find_divisor(&m) else { break };
            let g = &self.polys[k];
            let q = g.lm().quotient_of(&m);
            p = p.sub_mul(&c, &q, g, &self.ord, self.field);
            self.check_size(&p)?;
        }
        Ok(p)
    }

    fn full_reduce(&self, p: OPoly, skip: Option<usize>) -> Result<OPoly> {
        let mut p = p;
        let mut rest: Vec<(Monomial, Scalar)> = Vec::new();
        loop {
            let hit = p.terms.iter().enumerate().find_map(|(pos, (m, _))| {
                (0..self.polys.len())
                    .find(|&k| Some(k) != skip && self.active[k] && self.polys[k].lm().divides(m))
                    .map(|k| (pos, k))
            });
            let Some((pos, k)) = hit else {
                rest.append(&mut p.terms);
                break;
            };
            rest.extend(p.terms.drain(..pos));
            let (m, c) = p.terms[0].clone();
            let g = &self.polys[k];
            let q = g.lm().quotient_of(&m);
            p = p.sub_mul(&c, &q, g, &self.ord, self.field);
            self.check_size(&p)?;
        }
        Ok(OPoly { terms: rest })
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> OPoly {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let mf = f.lm().quotient_of(lcm);
        let mg = g.lm().quotient_of(lcm);
        // Both are monic, so S = mf*f - mg*g.
        let one = Scalar::one();
        let scaled = OPoly { terms: Vec::new() }.sub_mul(&self.field.neg(&one), &mf, f, &self.ord, self.field);
        scaled.sub_mul(&one, &mg, g, &self.ord, self.field)
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.polys[i].lm(), self.polys[j].lm());
        let lcm = a.lcm(b);
        let d = lcm.degree();
        let sugar = (self.sugar[i] + d - a.degree()).max(self.sugar[j] + d - b.degree());
        Pair { i, j, lcm, sugar }
    }

    /// Inserts `h` and updates the pair list with the Gebauer–Möller criteria.
    fn insert(&mut self, h: OPoly, sugar: u32, pairs: &mut Vec<Pair>) -> Result<()> {
        if self.polys.len() >= self.cfg.max_basis_size {
            return Err(Error::ResourceLimit(format!(
                "basis size exceeds the cap of {}",
                self.cfg.max_basis_size
            )));
        }
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let hlm = self.polys[hi].lm().clone();

        let cands: Vec<Pair> = (0..hi).filter(|&k| self.active[k]).map(|k| self.pair(k, hi)).collect();
        let coprime: Vec<bool> = cands.iter().map(|p| self.polys[p.i].lm().coprime(&hlm)).collect();
        // Chain criterion among the new pairs.
        let mut keep = alloc::vec![true; cands.len()];
        for a in 0..cands.len() {
            if coprime[a] {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let la = &cands[a].lcm;
                let lb = &cands[b].lcm;
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Pairs sharing an lcm with a coprime pair are redundant as well.
        for a in 0..cands.len() {
            if keep[a] && !coprime[a] && (0..cands.len()).any(|b| coprime[b] && cands[b].lcm == cands[a].lcm) {
                keep[a] = false;
            }
        }
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && self.polys[p.i].lm().lcm(&hlm) != p.lcm
                && self.polys[p.j].lm().lcm(&hlm) != p.lcm)
        });
        for (a, p) in cands.into_iter().enumerate() {
            if keep[a] && !coprime[a] {
                pairs.push(p);
            }
        }
        for k in 0..hi {
            if self.active[k] && hlm.divides(self.polys[k].lm()) {
                self.active[k] = false;
            }
        }
        Ok(())
    }
}

fn select(pairs: &[Pair], ord: &CompiledOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let better = match a.sugar.cmp(&b.sugar) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => ord.cmp(&a.lcm, &b.lcm) == Ordering::Less,
        };
        if better {
            best = k;
        }
    }
    best
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder, cfg: &GroebnerConfig) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let ord = order.compile(ring.nvars());
    let field = ring.field();
    let mut eng = Engine {
        ord,
        field,
        cfg,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
    };
    let mut inputs: Vec<(u32, OPoly)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.total_degree().unwrap_or(0), OPoly::from_poly(g, &eng.ord)))
        .collect();
    inputs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| eng.ord.cmp(a.1.lm(), b.1.lm())));
    let mut inputs = inputs.into_iter().peekable();
    let mut pairs: Vec<Pair> = Vec::new();
    loop {
        let take_input = match (inputs.peek(), pairs.is_empty()) {
            (None, true) => break,
            (Some(_), true) => true,
            (None, false) => false,
            (Some((s, _)), false) => *s <= pairs[select(&pairs, &eng.ord)].sugar,
        };
        let (sugar, p) = if take_input {
            inputs.next().expect("peeked")
        } else {
            let k = select(&pairs, &eng.ord);
            let pr = pairs.swap_remove(k);
            (pr.sugar, eng.spoly(pr.i, pr.j, &pr.lcm))
        };
        let mut h = eng.top_reduce(p)?;
        if h.is_zero() {
            continue;
        }
        h.monic(field);
        if h.lm().is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                order: order.clone(),
                elements: alloc::vec![Polynomial::one(ring)],
            });
        }
        eng.insert(h, sugar, &mut pairs)?;
    }
    // Inter-reduce the minimal basis.
    let idx: Vec<usize> = (0..eng.polys.len()).filter(|&k| eng.active[k]).collect();
    let mut reduced = Vec::with_capacity(idx.len());
    for &k in &idx {
        let p = eng.polys[k].clone();
        let mut r = eng.full_reduce_tail(p, k)?;
        r.monic(field);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| eng.ord.cmp(a.lm(), b.lm()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements: reduced.iter().map(|p| p.to_poly(ring)).collect(),
    })
}

impl Engine<'_> {
    /// Keeps the leading term of basis element `k` and reduces its tail by the others.
    fn full_reduce_tail(&self, p: OPoly, k: usize) -> Result<OPoly> {
        let mut terms = p.terms;
        let head = terms.remove(0);
        let tail = self.full_reduce(OPoly { terms }, Some(k))?;
        let mut out = Vec::with_capacity(tail.terms.len() + 1);
        out.push(head);
        out.extend(tail.terms);
        Ok(OPoly { terms: out })
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    fn engine<'a>(&self, cfg: &'a GroebnerConfig) -> Engine<'a> {
        let ord = self.order.compile(self.ring.nvars());
        let polys: Vec<OPoly> = self.elements.iter().map(|p| OPoly::from_poly(p, &ord)).collect();
        let n = polys.len();
        Engine {
            ord,
            field: self.ring.field(),
            cfg,
            polys,
            sugar: alloc::vec![0; n],
            active: alloc::vec![true; n],
        }
    }

    /// Leading monomial of `f` in this basis' order.
    pub fn leading_monomial(&self, f: &Polynomial) -> Option<Monomial> {
        let ord = self.order.compile(self.ring.nvars());
        f.terms().iter().map(|t| &t.0).max_by(|a, b| ord.cmp(a, b)).cloned()
    }

    /// The fully reduced remainder of `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let cfg = GroebnerConfig::default();
        let eng = self.engine(&cfg);
        let r = eng.full_reduce(OPoly::from_poly(f, &eng.ord), None)?;
        Ok(r.to_poly(&self.ring))
    }

    /// Membership of `f` in the ideal, by top reduction.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if self.is_unit() {
            return Ok(true);
        }
        let cfg = GroebnerConfig::default();
        let eng = self.engine(&cfg);
        Ok(eng.top_reduce(OPoly::from_poly(f, &eng.ord))?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::VarId;

    fn setup(names: &[&str]) -> Ring {
        Ring::new(CoefficientField::Rationals, names).unwrap()
    }

    fn gb(r: &Ring, gens: &[&str], order: MonomialOrder) -> Vec<Polynomial> {
        let gens: Vec<_> = gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect();
        groebner(r, &gens, &order, &GroebnerConfig::default()).unwrap().elements().to_vec()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = setup(&["x", "y"]);
        let b = gb(&r, &["x^2", "x*y"], MonomialOrder::GradedReverseLex);
        let want: Vec<_> = ["x*y", "x^2"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert_eq!(b, want);
    }

    #[test]
    fn linear_elimination_in_lex() {
        let r = setup(&["x", "y", "z"]);
        let b = gb(&r, &["x - y", "y - z"], MonomialOrder::Lex);
        let want: Vec<_> = ["y - z", "x - z"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert_eq!(b, want);
    }

    #[test]
    fn zero_ideal_and_unit_ideal() {
        let r = setup(&["x"]);
        assert!(gb(&r, &["0"], MonomialOrder::GradedReverseLex).is_empty());
        let b = gb(&r, &["x", "x + 1"], MonomialOrder::GradedReverseLex);
        assert_eq!(b, alloc::vec![Polynomial::one(&r)]);
    }

    #[test]
    fn cyclic_three() {
        let r = setup(&["a", "b", "c"]);
        let gens = ["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"];
        let b = gb(&r, &gens, MonomialOrder::GradedReverseLex);
        let basis = groebner(
            &r,
            &b,
            &MonomialOrder::GradedReverseLex,
            &GroebnerConfig::default(),
        )
        .unwrap();
        for g in gens {
            assert!(basis.contains(&parse_polynomial(&r, g).unwrap()).unwrap());
        }
        assert!(!basis.contains(&parse_polynomial(&r, "a").unwrap()).unwrap());
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn elimination_order_drops_the_front_block() {
        let r = setup(&["t", "x", "y"]);
        let b = gb(&r, &["x - t^2", "y - t^3"], MonomialOrder::elimination(alloc::vec![VarId(0)]));
        let implicit = parse_polynomial(&r, "x^3 - y^2").unwrap();
        assert!(b.iter().any(|g| g.is_scalar_multiple_of(&implicit)));
    }

    #[test]
    fn caps_are_enforced() {
        let r = setup(&["x", "y", "z"]);
        let gens: Vec<_> = ["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        let cfg = GroebnerConfig { max_basis_size: 2, max_terms: 1000 };
        let e = groebner(&r, &gens, &MonomialOrder::GradedReverseLex, &cfg).unwrap_err();
        assert!(matches!(e, Error::ResourceLimit(_)));
    }
}
