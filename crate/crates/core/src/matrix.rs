//! Generic symmetric and skew-symmetric matrices, determinants, minors and
//! pfaffians.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Symmetric,
    SkewSymmetric,
    General,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Symmetric => "symmetric",
            MatrixKind::SkewSymmetric => "skew",
            MatrixKind::General => "general",
        }
    }
}

/// A square matrix of polynomials tagged with its symmetry type.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericMatrix {
    ring: Ring,
    kind: MatrixKind,
    entries: Vec<Vec<Polynomial>>,
}

/// Name of the matrix variable at 1-based labels `(i, j)`, e.g. `x_1_2`.
pub fn entry_name(letter: &str, i: usize, j: usize) -> String {
    format!("{letter}_{i}_{j}")
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        out.push(c.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        c[i] += 1;
        for j in i + 1..r {
            c[j] = c[j - 1] + 1;
        }
    }
}

impl GenericMatrix {
    /// Wraps a grid of polynomials, checking shape and the declared symmetry.
    pub fn new(ring: &Ring, kind: MatrixKind, entries: Vec<Vec<Polynomial>>) -> Result<GenericMatrix> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::BadShape);
        }
        if entries.iter().flatten().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        if kind == MatrixKind::SkewSymmetric && ring.field().characteristic() == 2 {
            return Err(Error::CharTwoForbidden);
        }
        for i in 0..n {
            for j in i..n {
                let ok = match kind {
                    MatrixKind::General => true,
                    MatrixKind::Symmetric => entries[i][j] == entries[j][i],
                    MatrixKind::SkewSymmetric => entries[i][j] == -&entries[j][i],
                };
                if !ok {
                    return Err(Error::SymmetryViolation);
                }
            }
        }
        Ok(GenericMatrix {
            ring: ring.clone(),
            kind,
            entries,
        })
    }

    /// The generic matrix of the given kind whose entries are the variables
    /// `letter_a_b` of `ring`, with `labels[i]` the label of row `i`.
    pub fn from_variables(ring: &Ring, kind: MatrixKind, letter: &str, labels: &[usize]) -> Result<GenericMatrix> {
        let n = labels.len();
        let mut entries = alloc::vec![alloc::vec![Polynomial::zero(ring); n]; n];
        for i in 0..n {
            for j in i..n {
                let (a, b) = (labels[i], labels[j]);
                match kind {
                    MatrixKind::SkewSymmetric => {
                        if i != j {
                            let x = Polynomial::named_var(ring, &entry_name(letter, a, b))?;
                            entries[j][i] = -&x;
                            entries[i][j] = x;
                        }
                    }
                    MatrixKind::Symmetric => {
                        let x = Polynomial::named_var(ring, &entry_name(letter, a, b))?;
                        entries[j][i] = x.clone();
                        entries[i][j] = x;
                    }
                    MatrixKind::General => {
                        entries[i][j] = Polynomial::named_var(ring, &entry_name(letter, a, b))?;
                        if i != j {
                            entries[j][i] = Polynomial::named_var(ring, &entry_name(letter, b, a))?;
                        }
                    }
                }
            }
        }
        GenericMatrix::new(ring, kind, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Entries in the polynomial text format, row by row.
    pub fn entries_text(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| format!("{p}")).collect())
            .collect()
    }

    /// `M_{I,J}` with 0-based index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<GenericMatrix> {
        let n = self.size();
        if rows.len() != cols.len() || rows.iter().chain(cols).any(|&i| i >= n) || has_repeats(rows) || has_repeats(cols) {
            return Err(Error::BadIndex);
        }
        let entries = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        Ok(GenericMatrix {
            ring: self.ring.clone(),
            kind: MatrixKind::General,
            entries,
        })
    }

    /// `M_{I,I}`, which keeps the symmetry type.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<GenericMatrix> {
        let mut sub = self.submatrix(idx, idx)?;
        sub.kind = self.kind;
        Ok(sub)
    }

    /// Determinant by Laplace expansion over column subsets.
    pub fn determinant(&self) -> Polynomial {
        det_cofactor(&self.ring, &self.entries)
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn determinant_bareiss(&self) -> Polynomial {
        det_bareiss(&self.ring, &self.entries)
    }

    /// Pfaffian, expanded along the first row with `pf [[0, x], [-x, 0]] = x`.
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if self.kind != MatrixKind::SkewSymmetric {
            return Err(Error::NotSkew);
        }
        let n = self.size();
        if n % 2 == 1 {
            return Err(Error::OddSize);
        }
        assert!(n < 64, "pfaffian size");
        let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut memo = BTreeMap::new();
        Ok(self.pf_rec(full, &mut memo))
    }

    fn pf_rec(&self, set: u64, memo: &mut BTreeMap<u64, Polynomial>) -> Polynomial {
        if set == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&set) {
            return p.clone();
        }
        let first = set.trailing_zeros() as usize;
        let rest = set & !(1 << first);
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_positive = true;
        let mut bits = rest;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = &self.entries[first][k];
            if !a.is_zero() {
                let sub = self.pf_rec(rest & !(1 << k), memo);
                let t = a * &sub;
                acc = if sign_positive { &acc + &t } else { &acc - &t };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(set, acc.clone());
        acc
    }

    /// The `r`-minors `det M_{I,J}`, lexicographic in `(I, J)`.
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial>> {
        let m = self.size();
        if r == 0 || r > m {
            return Err(Error::BadRank { r, m });
        }
        let subsets = combinations(m, r);
        let mut out = Vec::with_capacity(subsets.len() * subsets.len());
        for rows in &subsets {
            for cols in &subsets {
                out.push(det_cofactor(&self.ring, &select(&self.entries, rows, cols)));
            }
        }
        Ok(out)
    }

    /// The ideal of `r`-minors, with zero minors and scalar multiples of
    /// earlier minors dropped.
    pub fn minors_ideal(&self, r: usize) -> Result<Ideal> {
        Ok(Ideal::new_dedup(&self.ring, self.minors(r)?))
    }

    /// The ideal of principal `r`-minors.
    pub fn principal_minors_ideal(&self, r: usize) -> Result<Ideal> {
        let m = self.size();
        if r == 0 || r > m {
            return Err(Error::BadRank { r, m });
        }
        let gens = combinations(m, r)
            .iter()
            .map(|s| det_cofactor(&self.ring, &select(&self.entries, s, s)))
            .collect();
        Ok(Ideal::new_dedup(&self.ring, gens))
    }

    /// The ideal of pfaffians of principal `2s x 2s` submatrices. For
    /// `s = 0` this is the unit ideal.
    pub fn pfaffian_ideal(&self, s: usize) -> Result<Ideal> {
        if self.kind != MatrixKind::SkewSymmetric {
            return Err(Error::NotSkew);
        }
        let m = self.size();
        if 2 * s > m {
            return Err(Error::BadRank { r: 2 * s, m });
        }
        let mut gens = Vec::new();
        for idx in combinations(m, 2 * s) {
            gens.push(self.principal_submatrix(&idx)?.pfaffian()?);
        }
        Ok(Ideal::new_dedup(&self.ring, gens))
    }

    /// Applies `f` to every entry, keeping the kind.
    pub fn map_entries<F>(&self, ring: &Ring, f: F) -> Result<GenericMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GenericMatrix::new(ring, self.kind, entries)
    }
}

fn has_repeats(idx: &[usize]) -> bool {
    idx.iter().enumerate().any(|(a, i)| idx[..a].contains(i))
}

fn select(entries: &[Vec<Polynomial>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| entries[i][j].clone()).collect())
        .collect()
}

/// Laplace expansion: `dp[S]` is the signed sum over assignments of the
/// first `|S|` rows to the columns in `S`.
pub fn det_cofactor(ring: &Ring, a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    assert!(n <= 20, "cofactor determinant size");
    let mut dp: Vec<Option<Polynomial>> = alloc::vec![None; 1 << n];
    dp[0] = Some(Polynomial::one(ring));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || a[row][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let t = &a[row][j] * &cur;
            let next = mask | (1 << j);
            let slot = dp[next].take().unwrap_or_else(|| Polynomial::zero(ring));
            dp[next] = Some(if above % 2 == 0 { &slot + &t } else { &slot - &t });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| Polynomial::zero(ring))
}

/// Bareiss elimination with row pivoting; each division is exact.
pub fn det_bareiss(ring: &Ring, a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut m: Vec<Vec<Polynomial>> = a.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Polynomial::zero(ring);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            m[i][k] = Polynomial::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The generic skew-symmetric `m x m` matrix in variables `x_i_j`, `i < j`.
pub fn generic_skew(m: usize, field: CoefficientField) -> Result<GenericMatrix> {
    if field.characteristic() == 2 {
        return Err(Error::CharTwoForbidden);
    }
    let mut names = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            names.push(entry_name("x", i, j));
        }
    }
    let ring = if names.is_empty() { Ring::empty(field) } else { Ring::new(field, &names)? };
    let labels: Vec<usize> = (1..=m).collect();
    GenericMatrix::from_variables(&ring, MatrixKind::SkewSymmetric, "x", &labels)
}

/// The generic symmetric `m x m` matrix in variables `x_i_j`, `i <= j`.
pub fn generic_sym(m: usize, field: CoefficientField) -> GenericMatrix {
    let mut names = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            names.push(entry_name("x", i, j));
        }
    }
    let ring = if names.is_empty() { Ring::empty(field) } else { Ring::new(field, &names).expect("fresh names") };
    let labels: Vec<usize> = (1..=m).collect();
    GenericMatrix::from_variables(&ring, MatrixKind::Symmetric, "x", &labels).expect("generic symmetric matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), alloc::vec![
            alloc::vec![0, 1],
            alloc::vec![0, 2],
            alloc::vec![0, 3],
            alloc::vec![1, 2],
            alloc::vec![1, 3],
            alloc::vec![2, 3]
        ]);
        assert_eq!(combinations(3, 0), alloc::vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn small_determinants() {
        let a2 = generic_skew(2, CoefficientField::Rationals).unwrap();
        let r = a2.ring().clone();
        assert_eq!(a2.determinant(), parse_polynomial(&r, "x_1_2^2").unwrap());
        assert_eq!(a2.pfaffian().unwrap(), parse_polynomial(&r, "x_1_2").unwrap());
        let b2 = generic_sym(2, CoefficientField::Rationals);
        let r = b2.ring().clone();
        assert_eq!(b2.determinant(), parse_polynomial(&r, "x_1_1*x_2_2 - x_1_2^2").unwrap());
        assert_eq!(b2.determinant_bareiss(), b2.determinant());
    }

    #[test]
    fn skew_needs_odd_characteristic() {
        let f2 = CoefficientField::prime(2).unwrap();
        assert_eq!(generic_skew(3, f2).unwrap_err(), Error::CharTwoForbidden);
        let a1 = generic_skew(1, CoefficientField::Rationals).unwrap();
        assert!(a1.entry(0, 0).is_zero());
    }
}
