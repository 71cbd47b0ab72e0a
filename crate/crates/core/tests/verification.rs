use detsing_core::resolution::{reduce_chart, root_node};
use detsing_core::verify::*;
use detsing_core::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn all_pass(rep: &ResolutionReport, level: VerifyLevel) {
    for id in 0..rep.nodes.len() {
        for v in verify_node(rep, id, level).unwrap() {
            assert!(v.pass, "{v:?}");
        }
    }
    for leaf in check_embedded_resolution(rep).unwrap() {
        assert!(leaf.pass(), "{leaf:?}");
    }
}

#[test]
fn small_ideal_helpers() {
    let r = Ring::new(Q, &["x", "y", "e"]).unwrap();
    let xy = Ideal::new(&r, vec![p(&r, "x + y"), p(&r, "y")]).unwrap();
    assert_eq!(coordinate_subspace(&xy).unwrap(), Some(vec![VarId(0), VarId(1)]));
    let sq = Ideal::new(&r, vec![p(&r, "x^2")]).unwrap();
    assert_eq!(coordinate_subspace(&sq).unwrap(), None);
    let ex = Ideal::new(&r, vec![p(&r, "e*x")]).unwrap();
    let sat = saturate(&ex, &p(&r, "e")).unwrap();
    assert!(ideal_equal(&sat, &Ideal::new(&r, vec![p(&r, "x")]).unwrap()).unwrap());
    assert!(ideal_equal(&saturate(&ex, &Polynomial::one(&r)).unwrap(), &ex).unwrap());
    assert!(radical_member(&p(&r, "x"), &sq).unwrap());
    assert!(!ideal_contains(&sq, &p(&r, "x")).unwrap());
}

#[test]
fn leaf_divisor_in_skew_four() {
    let rep = resolve_skew(4, 2, Q, false).unwrap();
    let leaves = check_embedded_resolution(&rep).unwrap();
    assert_eq!(leaves.len(), 1);
    assert!(leaves[0].pass());
    assert_eq!(leaves[0].coordinates, vec!["y_3_4".to_string()]);
    assert_eq!(leaves[0].exceptional, vec!["xp_1_2".to_string()]);
}

#[test]
fn small_trees_verify_fully() {
    for all in [false, true] {
        all_pass(&resolve_sym(2, 2, Q, all).unwrap(), VerifyLevel::Full);
        all_pass(&resolve_sym(3, 3, Q, all).unwrap(), VerifyLevel::Full);
        all_pass(&resolve_sym(3, 2, Q, all).unwrap(), VerifyLevel::Full);
        all_pass(&resolve_skew(4, 2, Q, all).unwrap(), VerifyLevel::Full);
        all_pass(&resolve_skew(5, 2, Q, all).unwrap(), VerifyLevel::Full);
    }
    assert_eq!(resolve_skew(4, 2, Q, true).unwrap().stats.leaves, 6);
}

#[test]
fn larger_trees_verify_fully() {
    all_pass(&resolve_sym(4, 4, Q, false).unwrap(), VerifyLevel::Full);
    all_pass(&resolve_sym(4, 3, Q, false).unwrap(), VerifyLevel::Full);
    all_pass(&resolve_skew(6, 3, Q, false).unwrap(), VerifyLevel::Full);
    all_pass(&resolve_sym(4, 4, CoefficientField::PrimeField(5), true).unwrap(), VerifyLevel::Identities);
}

#[test]
fn reduction_identities_in_representative_charts() {
    for m in 4..=6 {
        for s in 1..=m {
            assert!(reduction_identity(SingularityKind::Skew, m, s, (0, 1), Q).unwrap().pass);
        }
    }
    for m in 3..=5 {
        for s in 1..=m {
            for pos in [(0, 0), (0, 1)] {
                assert!(reduction_identity(SingularityKind::Symmetric, m, s, pos, Q).unwrap().pass);
            }
        }
    }
}

#[test]
fn reduction_identities_in_every_chart_of_small_matrices() {
    for pos in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        for s in 1..=4 {
            assert!(reduction_identity(SingularityKind::Skew, 4, s, pos, Q).unwrap().pass);
        }
    }
    for i in 0..4 {
        for j in i..4 {
            for s in 1..=4 {
                let v = reduction_identity(SingularityKind::Symmetric, 4, s, (i, j), Q).unwrap();
                assert!(v.pass, "{v:?}");
            }
        }
    }
}

#[test]
fn wrong_identities_are_rejected() {
    let b4 = generic_sym(4, Q);
    let root = root_node(b4);
    let child = reduce_chart(&root, (0, 0), 1).unwrap();
    let j = transport(&child, &root.matrix.minors_ideal(3).unwrap()).unwrap();
    // I_3 goes to I_2 of the smaller matrix, not to I_1 or I_3.
    assert!(saturated_equal(&j, &[], &child.matrix.minors_ideal(2).unwrap()).unwrap().0);
    let (ok, witness) = saturated_equal(&j, &[], &child.matrix.minors_ideal(1).unwrap()).unwrap();
    assert!(!ok && witness.is_some());
    assert!(!saturated_equal(&j, &[], &child.matrix.minors_ideal(3).unwrap()).unwrap().0);

    let rep = resolve_sym(2, 2, Q, false).unwrap();
    let wrong = Ideal::new(&rep.nodes[1].ring, vec![p(&rep.nodes[1].ring, "y_2_2^2")]).unwrap();
    assert_eq!(coordinate_subspace(&wrong).unwrap(), None);
}

#[test]
fn facts_and_their_errors() {
    assert!(check_fact(Fact::Eq2l, 4, 2, Q).unwrap().pass);
    assert!(check_fact(Fact::F2, 5, 2, Q).unwrap().pass);
    assert!(check_fact(Fact::F2, 4, 3, Q).is_err());
}
