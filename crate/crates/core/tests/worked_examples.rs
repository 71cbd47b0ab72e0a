use detsing_core::resolution::{node_chart, root_node};
use detsing_core::verify::lemma_counterexample;
use detsing_core::*;

const Q: CoefficientField = CoefficientField::Rationals;

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

#[test]
fn origin_chart_of_cusp_pair() {
    let r = Ring::new(Q, &["x", "y", "z"]).unwrap();
    let c = Center::new(&r, &[VarId(0), VarId(1), VarId(2)]).unwrap();
    let chart = make_chart(&c, VarId(2)).unwrap();
    let (k, st) = strict_transform_poly(&p(&r, "x^2 - y^3"), &chart).unwrap();
    assert_eq!(k, 2);
    assert_eq!(st, p(chart.target(), "xp^2 - yp^3*zp"));
    assert_eq!(lemma_counterexample(Q).unwrap(), (true, false));
}

#[test]
fn single_variable_center_is_a_renaming() {
    let r = Ring::new(Q, &["x_1_2", "x_1_3"]).unwrap();
    let chart = make_chart(&Center::new(&r, &[VarId(0)]).unwrap(), VarId(0)).unwrap();
    assert_eq!(chart.target().names(), &["xp_1_2".to_string(), "x_1_3".to_string()]);
    assert_eq!(total_transform(&p(&r, "x_1_2*x_1_3"), &chart).unwrap(), p(chart.target(), "xp_1_2*x_1_3"));
}

#[test]
fn symmetric_two_by_two_resolves_in_one_step() {
    let b2 = generic_sym(2, Q);
    assert_eq!(b2.determinant(), p(b2.ring(), "x_1_1*x_2_2 - x_1_2^2"));
    for all in [false, true] {
        let rep = resolve_sym(2, 2, Q, all).unwrap();
        assert_eq!(rep.stats.blowups, 1);
        assert_eq!(rep.stats.max_depth, 1);
        assert_eq!(rep.stats.leaves, if all { 3 } else { 2 });
        for leaf in verify::check_embedded_resolution(&rep).unwrap() {
            assert!(leaf.pass(), "{leaf:?}");
        }
    }
}

#[test]
fn symmetric_three_by_three_diagonal_chart() {
    let b3 = generic_sym(3, Q);
    let root = root_node(b3.clone());
    let chart = node_chart(&root, (0, 0)).unwrap();
    let t = chart.target();
    let y22 = p(t, "xp_2_2 - xp_1_2^2");
    let y23 = p(t, "xp_2_3 - xp_1_2*xp_1_3");
    let y33 = p(t, "xp_3_3 - xp_1_3^2");
    let (_, st) = strict_transform_poly(&b3.determinant(), &chart).unwrap();
    assert_eq!(st, &(&y22 * &y33) - &y23.pow(2));

    let st_minors = strict_transform_ideal(&b3.minors_ideal(2).unwrap(), &chart).unwrap();
    let ys = Ideal::new(t, vec![y22, y23, y33]).unwrap();
    assert!(st_minors.equals(&ys).unwrap());
}

#[test]
fn symmetric_three_by_three_off_diagonal_chart_is_empty() {
    let b3 = generic_sym(3, Q);
    let root = root_node(b3.clone());
    let chart = node_chart(&root, (1, 2)).unwrap();
    let t = chart.target();
    let st = strict_transform_ideal(&b3.minors_ideal(2).unwrap(), &chart).unwrap();
    let sat = st.saturate(&p(t, "xp_2_2*xp_3_3 - 1")).unwrap();
    assert!(sat.is_unit().unwrap());
    assert!(!st.is_unit().unwrap());
}

#[test]
fn skew_four_by_four_chart() {
    let a4 = generic_skew(4, Q).unwrap();
    let r = a4.ring().clone();
    assert_eq!(a4.determinant(), a4.pfaffian().unwrap().pow(2));
    let root = root_node(a4.clone());
    let chart = node_chart(&root, (0, 1)).unwrap();
    let t = chart.target();
    let y34 = p(t, "xp_3_4 + xp_1_4*xp_2_3 - xp_1_3*xp_2_4");
    let (k, st) = strict_transform_poly(&a4.determinant(), &chart).unwrap();
    assert_eq!(k, 4);
    assert_eq!(st, y34.pow(2));

    let minor = a4.submatrix(&[0, 1, 2], &[0, 1, 3]).unwrap().determinant();
    let (_, st_minor) = strict_transform_poly(&minor, &chart).unwrap();
    assert!(st_minor == y34 || st_minor == -&y34);

    let pf = a4.pfaffian().unwrap();
    let mut nonzero = 0;
    for m in a4.minors(3).unwrap() {
        if m.is_zero() {
            continue;
        }
        nonzero += 1;
        let ok = r.vars().any(|v| {
            let f = &Polynomial::var(&r, v) * &pf;
            m == f || m == -&f
        });
        assert!(ok, "{m}");
    }
    assert!(nonzero > 0);
}

/// On the overlap of the `T_i` and `T_j` charts, `t_i'' = 1/t_j'`,
/// `t_j'' = t_i' t_j'` and `t_k'' = t_k'/t_j'`; total transforms agree once
/// the powers of `t_j'` are cleared.
#[test]
fn charts_glue_on_overlaps() {
    let b3 = generic_sym(3, Q);
    let r = b3.ring().clone();
    let center = Center::new(&r, &r.vars().collect::<Vec<_>>()).unwrap();
    let fs = [b3.determinant(), p(&r, "x_1_2^2 - x_1_1*x_2_3 + 3*x_3_3"), p(&r, "x_1_3*x_2_2")];
    for i in r.vars() {
        for j in r.vars() {
            if i == j {
                continue;
            }
            let ci = make_chart(&center, i).unwrap();
            let cj = make_chart(&center, j).unwrap();
            let ti = ci.target().clone();
            let tj_var = Polynomial::var(&ti, j);
            let images = r
                .vars()
                .map(|v| {
                    let x = Polynomial::var(&ti, v);
                    if v == i {
                        Polynomial::one(&ti)
                    } else if v == j {
                        &Polynomial::var(&ti, i) * &tj_var.pow(2)
                    } else {
                        x
                    }
                })
                .collect();
            let glue = FractionalSubstitution::new(Substitution::new(cj.target(), &ti, images).unwrap(), tj_var.clone())
                .unwrap();
            for f in &fs {
                let (num, k) = glue.apply(&total_transform(f, &cj).unwrap()).unwrap();
                let lhs = &total_transform(f, &ci).unwrap() * &tj_var.pow(k);
                assert_eq!(num, lhs, "charts {i:?} {j:?}");
            }
        }
    }
}

#[test]
fn parameter_errors() {
    assert!(matches!(resolve_skew(3, 2, Q, false), Err(Error::BadParameters(_))));
    assert!(matches!(resolve_sym(3, 4, Q, false), Err(Error::BadParameters(_))));
    assert!(generic_skew(3, CoefficientField::PrimeField(2)).is_err());
}
