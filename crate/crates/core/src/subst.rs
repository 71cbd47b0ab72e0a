//! Ring homomorphisms given by images of variables.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Ring, VarId};

/// The ring map sending each variable of `source` to a polynomial of `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Substitution> {
        if images.len() != source.nvars() || images.iter().any(|p| p.ring() != target) {
            return Err(Error::RingMismatch);
        }
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Sends every variable to the variable with the same name in `target`.
    pub fn by_name(source: &Ring, target: &Ring) -> Result<Substitution> {
        let images = source
            .names()
            .iter()
            .map(|n| Polynomial::named_var(target, n))
            .collect::<Result<_>>()?;
        Substitution::new(source, target, images)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn image(&self, v: VarId) -> &Polynomial {
        &self.images[v.0]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Replaces the image of one variable.
    pub fn with_image(mut self, v: VarId, p: Polynomial) -> Result<Substitution> {
        if p.ring() != &self.target {
            return Err(Error::RingMismatch);
        }
        self.images[v.0] = p;
        Ok(self)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.source {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = alloc::vec![Vec::new(); self.source.nvars()];
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in f.terms() {
            let mut t = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(&self.target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &self.images[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        if other.source != self.target {
            return Err(Error::RingMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|p| other.apply(p))
            .collect::<Result<_>>()?;
        Substitution::new(&self.source, &other.target, images)
    }
}

/// A substitution whose images share a common denominator, used for
/// coordinate changes that are only invertible after localizing at units.
///
/// Variable `v` is sent to `numerators[v] / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalSubstitution {
    numerators: Substitution,
    denominator: Polynomial,
}

impl FractionalSubstitution {
    pub fn new(numerators: Substitution, denominator: Polynomial) -> Result<Self> {
        if denominator.ring() != numerators.target() {
            return Err(Error::RingMismatch);
        }
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FractionalSubstitution {
            numerators,
            denominator,
        })
    }

    pub fn polynomial(s: Substitution) -> Self {
        let one = Polynomial::one(s.target());
        FractionalSubstitution {
            numerators: s,
            denominator: one,
        }
    }

    pub fn numerators(&self) -> &Substitution {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn source(&self) -> &Ring {
        self.numerators.source()
    }

    pub fn target(&self) -> &Ring {
        self.numerators.target()
    }

    /// Image of `f` written as `numerator / denominator^k`; returns `(numerator, k)`.
    pub fn apply(&self, f: &Polynomial) -> Result<(Polynomial, u32)> {
        if f.ring() != self.source() {
            return Err(Error::RingMismatch);
        }
        let target = self.target();
        let k = f.total_degree().unwrap_or(0);
        if self.denominator.is_one() {
            return Ok((self.numerators.apply(f)?, 0));
        }
        let mut den_pows = alloc::vec![Polynomial::one(target)];
        for i in 1..=k as usize {
            let next = &den_pows[i - 1] * &self.denominator;
            den_pows.push(next);
        }
        let mut acc = Polynomial::zero(target);
        for (m, c) in f.terms() {
            let single = Polynomial::term(f.ring(), m.clone(), c.clone());
            let img = self.numerators.apply(&single)?;
            let pad = (k - m.degree()) as usize;
            acc = &acc + &(&img * &den_pows[pad]);
        }
        Ok((acc, k))
    }

    /// `other ∘ self`. The composite's denominator is the image of this
    /// denominator times a power of `other`'s.
    pub fn then(&self, other: &FractionalSubstitution) -> Result<FractionalSubstitution> {
        if other.source() != self.target() {
            return Err(Error::RingMismatch);
        }
        let (den_num, den_k) = other.apply(&self.denominator)?;
        let mut parts = Vec::with_capacity(self.numerators.images().len());
        for img in self.numerators.images() {
            parts.push(other.apply(img)?);
        }
        // x = N/D with N -> n/e^a, D -> d/e^b, so x = n e^b / (d e^a).
        let max_a = parts.iter().map(|(_, a)| *a).max().unwrap_or(0);
        let extra = max_a.saturating_sub(den_k);
        let denominator = &den_num * &other.denominator.pow(extra);
        let images = parts
            .into_iter()
            .map(|(n, a)| &n * &other.denominator.pow(den_k + extra - a))
            .collect();
        let numerators = Substitution::new(self.source(), other.target(), images)?;
        FractionalSubstitution::new(numerators, denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::parse::parse_polynomial;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(CoefficientField::Rationals, names).unwrap()
    }

    #[test]
    fn renaming_substitution() {
        let src = ring(&["x_1_2"]);
        let dst = ring(&["xp_1_2"]);
        let s = Substitution::new(&src, &dst, alloc::vec![parse_polynomial(&dst, "xp_1_2").unwrap()]).unwrap();
        let f = parse_polynomial(&src, "x_1_2^2").unwrap();
        assert_eq!(s.apply(&f).unwrap(), parse_polynomial(&dst, "xp_1_2^2").unwrap());
    }

    #[test]
    fn chart_substitution_on_determinant() {
        let src = ring(&["x_1_1", "x_1_2", "x_2_2"]);
        let dst = ring(&["xp_1_1", "xp_1_2", "xp_2_2"]);
        let imgs = ["xp_1_1", "xp_1_1*xp_1_2", "xp_1_1*xp_2_2"]
            .iter()
            .map(|s| parse_polynomial(&dst, s).unwrap())
            .collect();
        let s = Substitution::new(&src, &dst, imgs).unwrap();
        let f = parse_polynomial(&src, "x_1_1*x_2_2 - x_1_2^2").unwrap();
        let expected = parse_polynomial(&dst, "xp_1_1^2*xp_2_2 - xp_1_1^2*xp_1_2^2").unwrap();
        assert_eq!(s.apply(&f).unwrap(), expected);
        let g = parse_polynomial(&src, "x_2_2").unwrap();
        assert_eq!(s.apply(&g).unwrap(), parse_polynomial(&dst, "xp_1_1*xp_2_2").unwrap());
    }

    #[test]
    fn fractional_composition_clears_denominators() {
        let r = ring(&["a", "b"]);
        let x = |s: &str| parse_polynomial(&r, s).unwrap();
        // a -> a/(1-b), b -> b/(1-b).
        let s1 = FractionalSubstitution::new(
            Substitution::new(&r, &r, alloc::vec![x("a"), x("b")]).unwrap(),
            x("1 - b"),
        )
        .unwrap();
        let (n, k) = s1.apply(&x("a^2 + a*b")).unwrap();
        assert_eq!(k, 2);
        assert_eq!(n, x("a^2 + a*b"));
        let twice = s1.then(&s1).unwrap();
        // Applying the map twice sends a to a/(1-2b).
        let (n2, k2) = twice.apply(&x("a")).unwrap();
        let lhs = &n2 * &x("1 - 2*b");
        let rhs = &x("a") * &twice.denominator().pow(k2);
        assert_eq!(lhs, rhs);
    }
}
