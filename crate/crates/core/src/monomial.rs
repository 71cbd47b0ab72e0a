use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::ring::VarId;

/// Dense exponent vector with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Monomial {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, v: VarId, e: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[v.0] = e;
        m.degree = e as u32;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, v: VarId) -> u16 {
        self.exps[v.0]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Sum of the exponents of the given variables.
    pub fn degree_in(&self, vars: &[VarId]) -> u32 {
        vars.iter().map(|v| self.exps[v.0] as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Returns the monomial with variable `v` removed (exponent set to zero).
    pub fn without(&self, v: VarId) -> Monomial {
        let mut exps = self.exps.clone();
        exps[v.0] = 0;
        Monomial::from_exponents(exps)
    }

    pub(crate) fn with_exponent(&self, v: VarId, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps[v.0] = e;
        Monomial::from_exponents(exps)
    }

    /// Exponent vector padded with zeros (or truncated) to `n` variables.
    pub(crate) fn resized(&self, n: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(n, 0);
        Monomial::from_exponents(exps)
    }
}

fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Graded reverse lexicographic order; the crate-wide canonical term order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.exps, &other.exps, self.degree, other.degree)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orders available to the Gröbner engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GradedReverseLex,
    Lex,
    /// Product of graded reverse lexicographic orders: monomials are compared
    /// on the first block, then the next, and finally on the variables not
    /// listed in any block. Any leading block is eliminated.
    EliminationBlock(Vec<Vec<VarId>>),
}

impl MonomialOrder {
    /// Elimination order for `front`, grevlex inside each block.
    pub fn elimination(front: Vec<VarId>) -> MonomialOrder {
        MonomialOrder::EliminationBlock(vec![front])
    }

    pub(crate) fn compile(&self, nvars: usize) -> CompiledOrder {
        match self {
            MonomialOrder::GradedReverseLex => CompiledOrder::Grevlex,
            MonomialOrder::Lex => CompiledOrder::Lex,
            MonomialOrder::EliminationBlock(blocks) => {
                let mut members: Vec<Vec<usize>> = Vec::new();
                let mut used = vec![false; nvars];
                for b in blocks {
                    let mut idx: Vec<usize> = b.iter().map(|v| v.0).filter(|&i| i < nvars && !used[i]).collect();
                    idx.sort_unstable();
                    idx.dedup();
                    for &i in &idx {
                        used[i] = true;
                    }
                    members.push(idx);
                }
                let rest: Vec<usize> = (0..nvars).filter(|&i| !used[i]).collect();
                members.push(rest);
                members.retain(|m| !m.is_empty());
                CompiledOrder::Blocks(members)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum CompiledOrder {
    Grevlex,
    Lex,
    Blocks(Vec<Vec<usize>>),
}

impl CompiledOrder {
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            CompiledOrder::Grevlex => a.cmp(b),
            CompiledOrder::Lex => a.exps.cmp(&b.exps),
            CompiledOrder::Blocks(blocks) => {
                for block in blocks {
                    let da: u32 = block.iter().map(|&i| a.exps[i] as u32).sum();
                    let db: u32 = block.iter().map(|&i| b.exps[i] as u32).sum();
                    match da.cmp(&db) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    for &i in block.iter().rev() {
                        if a.exps[i] != b.exps[i] {
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z, x*z vs y^2: grevlex prefers y^2 (smaller power of last var).
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn lex_and_block() {
        let lex = MonomialOrder::Lex.compile(3);
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let elim = MonomialOrder::elimination(vec![VarId(2)]).compile(3);
        assert_eq!(elim.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert_eq!(elim.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn division_helpers() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 1, 1])));
    }
}
