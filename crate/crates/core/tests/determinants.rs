use detsing_core::matrix::{det_bareiss, det_cofactor};
use detsing_core::verify::{check_fact, Fact};
use detsing_core::*;
use proptest::prelude::*;

fn generic_general(m: usize, field: CoefficientField) -> GenericMatrix {
    let names: Vec<String> = (1..=m).flat_map(|i| (1..=m).map(move |j| format!("x_{i}_{j}"))).collect();
    let r = Ring::new(field, &names).unwrap();
    let entries = (0..m)
        .map(|i| (0..m).map(|j| Polynomial::var(&r, VarId(i * m + j))).collect())
        .collect();
    GenericMatrix::new(&r, MatrixKind::General, entries).unwrap()
}

const FIELDS: [CoefficientField; 3] =
    [CoefficientField::Rationals, CoefficientField::PrimeField(5), CoefficientField::PrimeField(101)];

#[test]
fn cofactor_and_bareiss_agree_on_generic_matrices() {
    for field in FIELDS {
        for m in 1..=6 {
            let s = generic_sym(m, field);
            assert_eq!(s.determinant(), s.determinant_bareiss(), "sym {m}");
            let a = generic_skew(m, field).unwrap();
            assert_eq!(a.determinant(), a.determinant_bareiss(), "skew {m}");
        }
        for m in 1..=5 {
            let g = generic_general(m, field);
            assert_eq!(g.determinant(), g.determinant_bareiss(), "general {m}");
        }
    }
}

#[test]
fn small_determinants_by_hand() {
    let q = CoefficientField::Rationals;
    let a2 = generic_skew(2, q).unwrap();
    assert_eq!(a2.determinant(), parse_polynomial(a2.ring(), "x_1_2^2").unwrap());
    let b2 = generic_sym(2, q);
    assert_eq!(b2.determinant(), parse_polynomial(b2.ring(), "x_1_1*x_2_2 - x_1_2^2").unwrap());
    let a4 = generic_skew(4, q).unwrap();
    let pf = a4.pfaffian().unwrap();
    assert_eq!(pf, parse_polynomial(a4.ring(), "x_1_2*x_3_4 - x_1_3*x_2_4 + x_1_4*x_2_3").unwrap());
}

#[test]
fn skew_facts_over_every_field() {
    for field in [
        CoefficientField::Rationals,
        CoefficientField::PrimeField(3),
        CoefficientField::PrimeField(5),
        CoefficientField::PrimeField(7),
        CoefficientField::PrimeField(101),
    ] {
        for m in [3, 5, 7] {
            assert!(check_fact(Fact::F1, m, 1, field).unwrap().pass, "F1 m={m}");
        }
        for m in [2, 4, 6] {
            assert!(check_fact(Fact::F3, m, 1, field).unwrap().pass, "F3 m={m}");
        }
        assert!(check_fact(Fact::F2, 4, 2, field).unwrap().pass);
    }
    assert!(matches!(check_fact(Fact::F1, 4, 1, CoefficientField::Rationals), Err(Error::BadParameters(_))));
}

#[test]
fn laplace_inclusion() {
    let q = CoefficientField::Rationals;
    let mut matrices: Vec<GenericMatrix> = Vec::new();
    for m in 1..=5 {
        matrices.push(generic_sym(m, q));
        matrices.push(generic_skew(m, q).unwrap());
        matrices.push(generic_general(m, q));
    }
    for a in &matrices {
        for r in 2..=a.size() {
            let big = a.minors_ideal(r).unwrap();
            let small = a.minors_ideal(r - 1).unwrap();
            assert!(big.is_subset_of(&small).unwrap(), "{:?} size {} r {r}", a.kind(), a.size());
        }
    }
}

#[test]
fn pfaffian_squares_to_determinant_of_principal_blocks() {
    let a = generic_skew(6, CoefficientField::Rationals).unwrap();
    for idx in [vec![0, 1, 2, 3], vec![1, 2, 4, 5], vec![0, 5]] {
        let p = a.principal_submatrix(&idx).unwrap();
        assert_eq!(p.determinant(), p.pfaffian().unwrap().pow(2));
    }
}

fn small_poly() -> impl Strategy<Value = Vec<(u16, u16, i64)>> {
    prop::collection::vec((0u16..3, 0u16..3, -4i64..5), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn cofactor_and_bareiss_agree_on_random_matrices(
        n in 1usize..=5,
        raw in prop::collection::vec(small_poly(), 25),
    ) {
        let r = Ring::new(CoefficientField::Rationals, &["s", "t"]).unwrap();
        let f = r.field();
        let entries: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| {
                Polynomial::from_terms(&r, raw[i * 5 + j].iter().map(|&(a, b, c)| {
                    (Monomial::from_exponents(vec![a, b]), f.from_i64(c))
                }))
            }).collect())
            .collect();
        prop_assert_eq!(det_cofactor(&r, &entries), det_bareiss(&r, &entries));
    }
}
