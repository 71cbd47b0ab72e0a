use detsing_core::{CoefficientField, Monomial, Polynomial, Ring, Substitution, Valuation, VarId};
use proptest::prelude::*;

const NV: usize = 3;

fn ring(field: CoefficientField) -> Ring {
    Ring::new(field, &["x", "y", "z"]).unwrap()
}

type RawPoly = Vec<([u16; NV], i64)>;

fn raw_poly() -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(([0u16..4, 0u16..4, 0u16..4], -9i64..10), 0..6)
}

fn build(r: &Ring, raw: &RawPoly) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(r, raw.iter().map(|(e, c)| (Monomial::from_exponents(e.to_vec()), f.from_i64(*c))))
}

fn field_strategy() -> impl Strategy<Value = CoefficientField> {
    prop_oneof![
        Just(CoefficientField::Rationals),
        Just(CoefficientField::PrimeField(3)),
        Just(CoefficientField::PrimeField(7)),
        Just(CoefficientField::PrimeField(101)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn ring_axioms(field in field_strategy(), a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let r = ring(field);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        let zero = Polynomial::zero(&r);
        let one = Polynomial::one(&r);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), zero);
        prop_assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn order_is_additive(a in raw_poly(), b in raw_poly(), k in 1usize..=NV) {
        let r = ring(CoefficientField::Rationals);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let vars: Vec<VarId> = (0..k).map(VarId).collect();
        let lhs = (&a * &b).order_at(&vars);
        prop_assert_eq!(lhs, a.order_at(&vars) + b.order_at(&vars));
        if a.is_zero() {
            prop_assert_eq!(a.order_at(&vars), Valuation::Infinity);
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(field in field_strategy(), a in raw_poly(), b in raw_poly(),
                                      imgs in prop::collection::vec(raw_poly(), NV)) {
        let r = ring(field);
        let target = Ring::new(field, &["u", "v", "w"]).unwrap();
        // Keep images small so products stay cheap.
        let images: Vec<Polynomial> = imgs.iter().map(|i| build(&target, &i.iter().take(3).cloned().collect())).collect();
        let s = Substitution::new(&r, &target, images).unwrap();
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assert_eq!(s.apply(&(&a + &b)).unwrap(), &s.apply(&a).unwrap() + &s.apply(&b).unwrap());
        prop_assert_eq!(s.apply(&(&a * &b)).unwrap(), &s.apply(&a).unwrap() * &s.apply(&b).unwrap());
        prop_assert!(s.apply(&Polynomial::one(&r)).unwrap().is_one());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in raw_poly(), b in raw_poly()) {
        let r = ring(CoefficientField::Rationals);
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }
}
