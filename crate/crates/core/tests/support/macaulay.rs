//! Ideal membership by linear algebra on Macaulay matrices. For homogeneous
//! generators and a homogeneous `f` of degree `d`, `f ∈ I` iff `f` lies in
//! the span of the degree-`d` multiples of the generators.

use std::collections::BTreeMap;

use detsing_core::{CoefficientField, Monomial, Polynomial, Scalar};

pub fn monomials_of_degree(nv: usize, d: u16) -> Vec<Vec<u16>> {
    if nv == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|a| {
            monomials_of_degree(nv - 1, d - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// Row-reduces `rows` and tests whether `target` is in their span.
pub fn in_span(field: CoefficientField, rows: Vec<BTreeMap<Monomial, Scalar>>, target: &BTreeMap<Monomial, Scalar>) -> bool {
    let mut basis: Vec<(Monomial, BTreeMap<Monomial, Scalar>)> = Vec::new();
    let reduce = |mut v: BTreeMap<Monomial, Scalar>, basis: &[(Monomial, BTreeMap<Monomial, Scalar>)]| {
        for (pivot, row) in basis {
            if let Some(c) = v.get(pivot).cloned() {
                for (m, a) in row {
                    let e = v.entry(m.clone()).or_insert_with(Scalar::zero);
                    *e = field.sub(e, &field.mul(&c, a));
                }
                v.retain(|_, a| !a.is_zero());
            }
        }
        v
    };
    for r in rows {
        let v = reduce(r, &basis);
        if let Some((pivot, lead)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let inv = field.inv(&lead).unwrap();
            let v: BTreeMap<_, _> = v.into_iter().map(|(m, a)| (m, field.mul(&a, &inv))).collect();
            // Keep earlier rows reduced against the new pivot.
            for (_, row) in basis.iter_mut() {
                if let Some(c) = row.get(&pivot).cloned() {
                    for (m, a) in &v {
                        let e = row.entry(m.clone()).or_insert_with(Scalar::zero);
                        *e = field.sub(e, &field.mul(&c, a));
                    }
                    row.retain(|_, a| !a.is_zero());
                }
            }
            basis.push((pivot, v));
        }
    }
    reduce(target.clone(), &basis).is_empty()
}

pub fn to_map(f: &Polynomial) -> BTreeMap<Monomial, Scalar> {
    f.terms().iter().cloned().collect()
}

pub fn macaulay_member(gens: &[Polynomial], f: &Polynomial) -> bool {
    let field = f.field();
    let nv = f.ring().nvars();
    let Some(d) = f.total_degree() else { return true };
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.total_degree().unwrap();
        if gd > d {
            continue;
        }
        for e in monomials_of_degree(nv, (d - gd) as u16) {
            rows.push(to_map(&g.mul_term(&Monomial::from_exponents(e), &Scalar::one())));
        }
    }
    in_span(field, rows, &to_map(f))
}
