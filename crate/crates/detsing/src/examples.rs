//! Worked examples replayed against stored goldens.
//!
//! Each example produces named values. Polynomials are compared after
//! parsing the golden text in the ring of the computed value, so goldens
//! written over ℚ also serve prime fields.

use detsing_core::resolution::{node_chart, reduce_chart, root_node};
use detsing_core::verify::{check_embedded_resolution, lemma_counterexample, reduction_identity};
use detsing_core::{
    generic_skew, generic_sym, make_chart, parse_polynomial, resolve_skew, resolve_sym, strict_transform_ideal,
    strict_transform_poly, Center, CoefficientField, Error, Ideal, Polynomial, ResolutionReport, Result, Ring,
    SingularityKind, VarId,
};
use serde::{Deserialize, Serialize};

pub const DEFAULT_GOLDENS: &str = include_str!("../goldens/examples.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Poly(String),
    Polys(Vec<String>),
    Bool(bool),
    Int(i64),
    Names(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    /// Ring of polynomial values; empty otherwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ring: Vec<String>,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goldens {
    pub format: String,
    pub entries: Vec<Entry>,
}

struct Sink {
    entries: Vec<Entry>,
}

impl Sink {
    fn poly(&mut self, name: &str, f: &Polynomial) {
        self.entries.push(Entry {
            name: name.into(),
            ring: f.ring().names().to_vec(),
            value: Value::Poly(f.to_string()),
        });
    }

    fn polys(&mut self, name: &str, ring: &Ring, fs: &[Polynomial]) {
        self.entries.push(Entry {
            name: name.into(),
            ring: ring.names().to_vec(),
            value: Value::Polys(fs.iter().map(|f| f.to_string()).collect()),
        });
    }

    fn bool(&mut self, name: &str, b: bool) {
        self.entries.push(Entry {
            name: name.into(),
            ring: Vec::new(),
            value: Value::Bool(b),
        });
    }

    fn int(&mut self, name: &str, n: usize) {
        self.entries.push(Entry {
            name: name.into(),
            ring: Vec::new(),
            value: Value::Int(n as i64),
        });
    }

    fn names(&mut self, name: &str, v: Vec<String>) {
        self.entries.push(Entry {
            name: name.into(),
            ring: Vec::new(),
            value: Value::Names(v),
        });
    }

    fn tree(&mut self, prefix: &str, rep: &ResolutionReport) -> Result<()> {
        self.int(&format!("{prefix}.blowups"), rep.stats.blowups);
        self.int(&format!("{prefix}.max_depth"), rep.stats.max_depth);
        self.int(&format!("{prefix}.leaves"), rep.stats.leaves);
        let leaves = check_embedded_resolution(rep)?;
        self.bool(&format!("{prefix}.leaves_regular_transversal"), leaves.iter().all(|l| l.pass()));
        Ok(())
    }
}

fn p(r: &Ring, s: &str) -> Result<Polynomial> {
    parse_polynomial(r, s)
}

fn sym_examples(f: CoefficientField, out: &mut Sink) -> Result<()> {
    // m = 2
    let b2 = generic_sym(2, f);
    out.poly("m2.sym.det", &b2.determinant());
    out.tree("m2.sym.tree", &resolve_sym(2, 2, f, true)?)?;

    // m = 3, X_{1,1}-chart
    let b3 = generic_sym(3, f);
    let root = root_node(b3.clone());
    let chart = node_chart(&root, (0, 0))?;
    let child = reduce_chart(&root, (0, 0), 1)?;
    let fwd = &child.coordinates.as_ref().expect("chart node").forward;
    let ys: Vec<Polynomial> = ["y_2_2", "y_2_3", "y_3_3"]
        .iter()
        .map(|n| child.ring.var(n).map(|v| fwd.image(v).clone()))
        .collect::<Result<_>>()?;
    out.polys("m3.sym.x11.y", chart.target(), &ys);
    let (_, st) = strict_transform_poly(&b3.determinant(), &chart)?;
    out.poly("m3.sym.x11.strict_det", &st);
    let st2 = strict_transform_ideal(&b3.minors_ideal(2)?, &chart)?;
    out.bool("m3.sym.x11.strict_minors_equal_y", st2.equals(&Ideal::new(chart.target(), ys)?)?);

    // m = 3, X_{2,3}-chart
    let chart = node_chart(&root, (1, 2))?;
    let st2 = strict_transform_ideal(&b3.minors_ideal(2)?, &chart)?;
    let u = p(chart.target(), "xp_2_2*xp_3_3 - 1")?;
    out.bool("m3.sym.x23.saturated_unit", st2.saturate(&u)?.is_unit()?);
    out.tree("m3.sym.tree", &resolve_sym(3, 3, f, false)?)?;

    // Chart computations at m = 4.
    let b4 = generic_sym(4, f);
    let root = root_node(b4);
    let diag = reduce_chart(&root, (0, 0), 1)?;
    let fwd = &diag.coordinates.as_ref().expect("chart node").forward;
    out.poly("m4.sym.x11.y_2_3", fwd.image(diag.ring.var("y_2_3")?));
    let off = reduce_chart(&root, (0, 1), 1)?;
    let cc = off.coordinates.as_ref().expect("chart node");
    out.poly("m4.sym.x12.epsilon", cc.inverse.denominator());
    let ys: Vec<Polynomial> = ["y_3_3", "y_3_4", "y_4_4"]
        .iter()
        .map(|n| off.ring.var(n).map(|v| cc.forward.image(v).clone()))
        .collect::<Result<_>>()?;
    out.polys("m4.sym.x12.y", cc.forward.target(), &ys);
    for s in 1..=4 {
        for (tag, pos) in [("x11", (0, 0)), ("x12", (0, 1))] {
            let v = reduction_identity(SingularityKind::Symmetric, 4, s, pos, f)?;
            out.bool(&format!("m4.sym.{tag}.reduction_identity_{s}"), v.pass);
        }
    }
    out.tree("m4.sym.tree", &resolve_sym(4, 4, f, false)?)?;
    Ok(())
}

fn skew_examples(f: CoefficientField, out: &mut Sink) -> Result<()> {
    let a2 = generic_skew(2, f)?;
    out.poly("m2.skew.det", &a2.determinant());
    out.tree("m2.skew.tree", &resolve_skew(2, 1, f, false)?)?;

    let a3 = generic_skew(3, f)?;
    out.poly("m3.skew.det", &a3.determinant());
    out.tree("m3.skew.tree", &resolve_skew(3, 1, f, false)?)?;

    // m = 4, X_{1,2}-chart
    let a4 = generic_skew(4, f)?;
    let root = root_node(a4.clone());
    let chart = node_chart(&root, (0, 1))?;
    let child = reduce_chart(&root, (0, 1), 1)?;
    let y34 = child.coordinates.as_ref().expect("chart node").forward.image(child.ring.var("y_3_4")?).clone();
    out.poly("m4.skew.x12.y_3_4", &y34);
    let (k, st) = strict_transform_poly(&a4.determinant(), &chart)?;
    out.int("m4.skew.x12.det_order", k as usize);
    out.poly("m4.skew.x12.strict_det", &st);
    let minor = a4.submatrix(&[0, 1, 2], &[0, 1, 3])?.determinant();
    let (_, st_minor) = strict_transform_poly(&minor, &chart)?;
    out.poly("m4.skew.x12.strict_minor_123_124", &st_minor);
    let pf = a4.pfaffian()?;
    out.poly("m4.skew.pfaffian", &pf);
    let r = a4.ring();
    let mut factors_ok = true;
    for m in a4.minors(3)? {
        if m.is_zero() {
            continue;
        }
        factors_ok &= r.vars().any(|v| {
            let g = &Polynomial::var(r, v) * &pf;
            m == g || m == -&g
        });
    }
    out.bool("m4.skew.three_minors_are_entry_times_pfaffian", factors_ok);
    let rep = resolve_skew(4, 2, f, false)?;
    out.tree("m4.skew.tree", &rep)?;
    let leaves = check_embedded_resolution(&rep)?;
    out.names("m4.skew.tree.leaf_coordinates", leaves[0].coordinates.clone());
    out.names("m4.skew.tree.leaf_exceptional", leaves[0].exceptional.clone());
    out.tree("m4.skew.all_charts", &resolve_skew(4, 2, f, true)?)?;

    // Chart computations at m = 5 and m = 6.
    let a5 = generic_skew(5, f)?;
    let root = root_node(a5);
    let child = reduce_chart(&root, (0, 1), 1)?;
    let fwd = &child.coordinates.as_ref().expect("chart node").forward;
    let ys: Vec<Polynomial> = ["y_3_4", "y_3_5", "y_4_5"]
        .iter()
        .map(|n| child.ring.var(n).map(|v| fwd.image(v).clone()))
        .collect::<Result<_>>()?;
    out.polys("m5.skew.x12.y", fwd.target(), &ys);
    for s in 1..=5 {
        let v = reduction_identity(SingularityKind::Skew, 5, s, (0, 1), f)?;
        out.bool(&format!("m5.skew.x12.reduction_identity_{s}"), v.pass);
    }
    out.tree("m6.skew.tree", &resolve_skew(6, 3, f, false)?)?;
    Ok(())
}

fn lemma_examples(f: CoefficientField, out: &mut Sink) -> Result<()> {
    let r = Ring::new(f, &["x", "y", "z"])?;
    let chart = make_chart(&Center::new(&r, &[VarId(0), VarId(1), VarId(2)])?, VarId(2))?;
    for (name, text) in [("g1", "x^2 - y^3"), ("g2", "x^2 - z^5"), ("h", "y^3 - z^5")] {
        let (_, st) = strict_transform_poly(&p(&r, text)?, &chart)?;
        out.poly(&format!("lemma.{name}_strict"), &st);
    }
    let (before, after) = lemma_counterexample(f)?;
    out.bool("lemma.h_in_ideal", before);
    out.bool("lemma.h_strict_in_strict_ideal", after);
    Ok(())
}

/// Runs the examples for `kind` (both when `None`) over `field`.
pub fn run_examples(field: CoefficientField, kind: Option<SingularityKind>) -> Result<Vec<Entry>> {
    if field.characteristic() == 2 && kind != Some(SingularityKind::Symmetric) {
        return Err(Error::CharTwoForbidden);
    }
    let mut out = Sink { entries: Vec::new() };
    if kind != Some(SingularityKind::Skew) {
        sym_examples(field, &mut out)?;
    }
    if kind != Some(SingularityKind::Symmetric) {
        skew_examples(field, &mut out)?;
    }
    if kind.is_none() {
        lemma_examples(field, &mut out)?;
    }
    Ok(out.entries)
}

fn same_poly(field: CoefficientField, ring: &[String], want: &str, got: &str) -> bool {
    let Ok(r) = Ring::new(field, ring) else {
        return want == got;
    };
    match (parse_polynomial(&r, want), parse_polynomial(&r, got)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn same(field: CoefficientField, golden: &Entry, got: &Entry) -> bool {
    match (&golden.value, &got.value) {
        (Value::Poly(a), Value::Poly(b)) => golden.ring == got.ring && same_poly(field, &got.ring, a, b),
        (Value::Polys(a), Value::Polys(b)) => {
            golden.ring == got.ring
                && a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| same_poly(field, &got.ring, x, y))
        }
        (a, b) => a == b,
    }
}

/// Lines describing every mismatch between computed entries and goldens
/// restricted to the computed names.
pub fn compare(field: CoefficientField, goldens: &Goldens, got: &[Entry]) -> Vec<String> {
    let mut diff = Vec::new();
    for e in got {
        match goldens.entries.iter().find(|g| g.name == e.name) {
            None => diff.push(format!("+ {}: {:?} (no golden)", e.name, e.value)),
            Some(g) if !same(field, g, e) => {
                diff.push(format!("- {}: {:?}", g.name, g.value));
                diff.push(format!("+ {}: {:?}", e.name, e.value));
            }
            Some(_) => {}
        }
    }
    diff
}

pub fn parse_goldens(text: &str) -> std::result::Result<Goldens, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn goldens_from(entries: Vec<Entry>) -> Goldens {
    Goldens {
        format: "detsing-goldens/1".into(),
        entries,
    }
}
