//! Gröbner membership against the Macaulay-matrix oracle.

mod support;

use detsing_core::*;
use proptest::prelude::*;
use support::macaulay::macaulay_member;

type Raw = Vec<((u16, u16), i64)>;

fn homogeneous(r: &Ring, d: u16, raw: &Raw) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(
        r,
        raw.iter().map(|&((a, b), c)| {
            let a = a % (d + 1);
            let b = b % (d + 1 - a);
            (Monomial::from_exponents(vec![a, b, d - a - b]), f.from_i64(c))
        }),
    )
}

fn raw() -> impl Strategy<Value = Raw> {
    prop::collection::vec(((0u16..7, 0u16..7), -5i64..6), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn membership_matches_macaulay(
        p in prop_oneof![Just(0u64), Just(7), Just(101)],
        degs in prop::collection::vec(1u16..=3, 2..=3),
        gens_raw in prop::collection::vec(raw(), 3),
        mult_raw in prop::collection::vec(raw(), 3),
        noise in raw(),
        d in 3u16..=6,
        force in any::<bool>(),
    ) {
        let field = if p == 0 { CoefficientField::Rationals } else { CoefficientField::PrimeField(p) };
        let r = Ring::new(field, &["x", "y", "z"]).unwrap();
        let gens: Vec<Polynomial> = degs.iter().zip(&gens_raw).map(|(&k, g)| homogeneous(&r, k, g)).collect();
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let mut f = Polynomial::zero(&r);
        if force {
            for (g, h) in gens.iter().zip(&mult_raw) {
                if let Some(k) = g.total_degree() {
                    if k as u16 <= d {
                        f = &f + &(&homogeneous(&r, d - k as u16, h) * g);
                    }
                }
            }
        } else {
            f = homogeneous(&r, d, &noise);
        }
        let live: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb_says = ideal.contains(&f).unwrap();
        prop_assert_eq!(gb_says, macaulay_member(&live, &f));
        if force {
            prop_assert!(gb_says);
        }
        let basis = ideal.groebner().unwrap();
        for g in &live {
            prop_assert!(basis.normal_form(g).unwrap().is_zero());
        }
        let again = groebner(&r, &live, &MonomialOrder::GradedReverseLex, &GroebnerConfig::default()).unwrap();
        prop_assert_eq!(again.elements(), basis.elements());
    }
}

#[test]
fn macaulay_oracle_sanity() {
    let r = Ring::new(CoefficientField::Rationals, &["x", "y", "z"]).unwrap();
    let g = vec![parse_polynomial(&r, "x^2 - y*z").unwrap(), parse_polynomial(&r, "x*y").unwrap()];
    assert!(macaulay_member(&g, &parse_polynomial(&r, "x^3*y - x*y^2*z").unwrap()));
    assert!(!macaulay_member(&g, &parse_polynomial(&r, "y^3 + z^3").unwrap()));
    assert!(macaulay_member(&g, &parse_polynomial(&r, "y^2*z").unwrap()));
}
