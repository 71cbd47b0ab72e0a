//! Machine checks for chart trees and the facts they rely on.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::blowup::{strict_transform_ideal, strict_transform_poly};
use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::groebner::{groebner as groebner_basis, GroebnerBasis, GroebnerConfig};
use crate::ideal::{strip_factor, Ideal};
use crate::matrix::{generic_skew, generic_sym, MatrixKind};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::resolution::{
    center_of, reduce_chart, replay, root_node, target_ideal, ChartNode, ResolutionReport, SingularityKind,
};
use crate::ring::{Ring, VarId};

/// Outcome of one check. `witness` explains a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub inputs: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn new(check: &str, inputs: String, pass: bool, witness: Option<String>) -> Verdict {
        Verdict {
            check: check.to_string(),
            inputs,
            pass,
            witness: if pass { None } else { witness },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    None,
    Identities,
    Full,
}

impl VerifyLevel {
    pub fn parse(s: &str) -> Result<VerifyLevel> {
        match s {
            "none" => Ok(VerifyLevel::None),
            "identities" => Ok(VerifyLevel::Identities),
            "full" => Ok(VerifyLevel::Full),
            other => Err(Error::BadParameters(format!("unknown verification level `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerifyLevel::None => "none",
            VerifyLevel::Identities => "identities",
            VerifyLevel::Full => "full",
        }
    }
}

pub fn groebner(i: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis(i.ring(), i.generators(), order, &GroebnerConfig::default())
}

pub fn ideal_contains(i: &Ideal, f: &Polynomial) -> Result<bool> {
    i.contains(f)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn radical_member(f: &Polynomial, i: &Ideal) -> Result<bool> {
    i.radical_contains(f)
}

pub fn saturate(i: &Ideal, u: &Polynomial) -> Result<Ideal> {
    i.saturate(u)
}

pub fn coordinate_subspace(i: &Ideal) -> Result<Option<Vec<VarId>>> {
    i.coordinate_subspace()
}

/// Strict transform of `parent_ideal` along `child`'s chart, written in the
/// child's coordinates with the chart's unit denominators cleared.
pub fn transport(child: &ChartNode, parent_ideal: &Ideal) -> Result<Ideal> {
    let chart = child.chart.as_ref().ok_or(Error::BadParameters("the root has no chart".into()))?;
    let cc = child.coordinates.as_ref().expect("charts carry coordinates");
    let st = strict_transform_ideal(parent_ideal, chart)?;
    let den = cc.inverse.denominator();
    let gens = st
        .generators()
        .iter()
        .map(|g| {
            let (num, _) = cc.inverse.apply(g)?;
            Ok(strip_factor(&num, den))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new_dedup(&child.ring, gens))
}

/// Decides `(J : u^∞) = E` for the product `u` of `units`.
///
/// When no generator of `E` involves a variable of a unit, `E` is already
/// saturated, so the left inclusion reduces to `J ⊆ E` after dividing out
/// unit factors, and the right one to membership in the divided `J`. A
/// failure of the latter falls back to a full saturation.
pub fn saturated_equal(j: &Ideal, units: &[Polynomial], e: &Ideal) -> Result<(bool, Option<String>)> {
    let unit_vars: Vec<VarId> = units.iter().flat_map(|u| u.support()).collect();
    let e_saturated = e.generators().iter().all(|g| g.support().iter().all(|v| !unit_vars.contains(v)));
    if !e_saturated {
        let a = j.saturate_all(units)?;
        let b = e.saturate_all(units)?;
        return Ok(match first_outside(&a, &b)? {
            Some(w) => (false, Some(w)),
            None => match first_outside(&b, &a)? {
                Some(w) => (false, Some(w)),
                None => (true, None),
            },
        });
    }
    let stripped: Vec<Polynomial> = j
        .generators()
        .iter()
        .map(|g| units.iter().fold(g.clone(), |acc, u| strip_factor(&acc, u)))
        .collect();
    let js = Ideal::new_dedup(j.ring(), stripped);
    if let Some(w) = first_outside(&js, e)? {
        return Ok((false, Some(w)));
    }
    if first_outside(e, &js)?.is_none() {
        return Ok((true, None));
    }
    let sat = js.saturate_all(units)?;
    Ok(match first_outside(e, &sat)? {
        Some(w) => (false, Some(w)),
        None => (true, None),
    })
}

/// A generator of `a` outside `b`, with its normal form, if any.
fn first_outside(a: &Ideal, b: &Ideal) -> Result<Option<String>> {
    for g in a.generators() {
        if !b.contains(g)? {
            let nf = b.groebner()?.normal_form(g)?;
            return Ok(Some(format!("{g} has normal form {nf}")));
        }
    }
    Ok(None)
}

fn node_inputs(report: &ResolutionReport, node: &ChartNode) -> String {
    format!(
        "{} m={} {}={} node={} depth={} size={}",
        report.input.kind.as_str(),
        report.input.m,
        if report.input.kind == SingularityKind::Skew { "l" } else { "r" },
        report.input.rank,
        node.id,
        node.depth,
        node.size()
    )
}

/// Size drop of a chart: 2 for skew and off-diagonal charts, 1 otherwise.
fn expected_drop(kind: MatrixKind, pos: (usize, usize)) -> usize {
    if kind == MatrixKind::SkewSymmetric || pos.0 != pos.1 {
        2
    } else {
        1
    }
}

/// `I_s(parent)` transported into the child equals `I_{s-δ}(child)` after
/// inverting the chart's units, `δ` being the size drop.
pub fn minor_identity(parent: &ChartNode, child: &ChartNode, s: usize) -> Result<(bool, Option<String>)> {
    let pi = parent.matrix.minors_ideal(s)?;
    let drop = parent.size() - child.size();
    let expected = if s <= drop {
        Ideal::unit(&child.ring)
    } else {
        child.matrix.minors_ideal(s - drop)?
    };
    let j = transport(child, &pi)?;
    saturated_equal(&j, &chart_units(child), &expected)
}

/// Principal `2s`-pfaffians of a skew parent go to principal
/// `2(s-1)`-pfaffians of the child.
pub fn pfaffian_identity(parent: &ChartNode, child: &ChartNode, s: usize) -> Result<(bool, Option<String>)> {
    let pi = parent.matrix.pfaffian_ideal(s)?;
    let expected = if s == 0 {
        Ideal::unit(&child.ring)
    } else {
        child.matrix.pfaffian_ideal(s - 1)?
    };
    let j = transport(child, &pi)?;
    saturated_equal(&j, &chart_units(child), &expected)
}

fn chart_units(child: &ChartNode) -> Vec<Polynomial> {
    let den = child.coordinates.as_ref().expect("chart node").inverse.denominator();
    if den.is_constant() {
        Vec::new()
    } else {
        alloc::vec![den.clone()]
    }
}

/// Checks that hold for a single chart node.
pub fn verify_node(report: &ResolutionReport, id: usize, level: VerifyLevel) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    if level == VerifyLevel::None {
        return Ok(out);
    }
    let node = &report.nodes[id];
    let inputs = node_inputs(report, node);
    let Some(parent) = report.parent_of(node) else {
        if report.input.kind == SingularityKind::Skew {
            let (pass, witness) = reduced_structure(report)?;
            out.push(Verdict::new("reduced_structure", inputs, pass, witness));
        }
        return Ok(out);
    };
    let pos = node.position.expect("chart node");
    let chart = node.chart.as_ref().expect("chart node");
    let cc = node.coordinates.as_ref().expect("chart node");

    let drop = expected_drop(parent.kind(), pos);
    out.push(Verdict::new(
        "size_bookkeeping",
        inputs.clone(),
        parent.size() == node.size() + drop,
        Some(format!("parent size {} child size {}", parent.size(), node.size())),
    ));

    let center = center_of(parent)?;
    let st_center = strict_transform_ideal(&center.ideal(), chart)?;
    out.push(Verdict::new(
        "center_strict_transform_empty",
        inputs.clone(),
        st_center.is_unit()?,
        Some(format!("{st_center:?}")),
    ));

    // Coordinate change: inverse after forward is the identity.
    let mut coord_ok = true;
    let mut coord_witness = None;
    for v in node.ring.vars() {
        let (num, k) = cc.inverse.apply(cc.forward.image(v))?;
        let want = &Polynomial::var(&node.ring, v) * &cc.inverse.denominator().pow(k);
        if num != want {
            coord_ok = false;
            coord_witness = Some(format!("{} is not recovered", node.ring.name(v)));
            break;
        }
    }
    out.push(Verdict::new("coordinate_change", inputs.clone(), coord_ok, coord_witness));

    // The recorded row and column operations produce the block form.
    let p = node.chart_matrix.as_ref().expect("chart node");
    let reduced = replay(&node.transcript, p);
    let fb = p.len() - node.size();
    let mut block_ok = (fb..p.len()).all(|a| (0..fb).all(|b| reduced[a][b].is_zero()));
    for a in fb..p.len() {
        for b in fb..p.len() {
            let y = node.matrix.entry(a - fb, b - fb);
            let want = cc.forward.apply(y)?;
            block_ok &= reduced[a][b] == want;
        }
    }
    out.push(Verdict::new("transcript_block_form", inputs.clone(), block_ok, Some("block mismatch".into())));

    // Determinant of the parent matrix goes to the child's determinant.
    let det = parent.matrix.determinant();
    let child_det = node.matrix.determinant();
    let (pass, witness) = if det.is_zero() {
        (child_det.is_zero(), Some(format!("child determinant {child_det}")))
    } else {
        let (_, st) = strict_transform_poly(&det, chart)?;
        let (num, _) = cc.inverse.apply(&st)?;
        let stripped = strip_factor(&num, cc.inverse.denominator());
        (
            stripped.is_scalar_multiple_of(&child_det),
            Some(format!("transported determinant {stripped}")),
        )
    };
    out.push(Verdict::new("determinant_identity", inputs.clone(), pass, witness));

    for s in 1..=parent.size() {
        let (pass, witness) = minor_identity(parent, node, s)?;
        out.push(Verdict::new(&format!("minor_identity[{s}]"), inputs.clone(), pass, witness));
    }
    if report.input.kind == SingularityKind::Skew {
        let s = report.input.rank - parent.shift / 2;
        let (pass, witness) = pfaffian_identity(parent, node, s)?;
        out.push(Verdict::new("target_identity", inputs.clone(), pass, witness));
    } else {
        let pt = target_ideal(&report.input, parent)?;
        let ct = target_ideal(&report.input, node)?;
        let j = transport(node, &pt)?;
        let (pass, witness) = saturated_equal(&j, &chart_units(node), &ct)?;
        out.push(Verdict::new("target_identity", inputs.clone(), pass, witness));
    }

    if level == VerifyLevel::Full {
        let (pass, witness) = end_to_end(report, node)?;
        out.push(Verdict::new("end_to_end", inputs, pass, witness));
    }
    Ok(out)
}

/// The ideal the resolution starts from: `I_r(B_m)`, or for skew runs the
/// principal `2ℓ`-pfaffians, which cut out the reduced locus of the
/// `2ℓ`-minors.
pub fn root_ideal(report: &ResolutionReport) -> Result<Ideal> {
    target_ideal(&report.input, report.root())
}

/// For skew runs: the `2ℓ`-minors and the principal `2ℓ`-pfaffians have
/// the same radical.
fn reduced_structure(report: &ResolutionReport) -> Result<(bool, Option<String>)> {
    let root = report.root();
    let l = report.input.rank;
    let minors = root.matrix.minors_ideal(2 * l)?;
    let pf = root.matrix.pfaffian_ideal(l)?;
    mutual_radical(&minors, &pf)
}

fn mutual_radical(a: &Ideal, b: &Ideal) -> Result<(bool, Option<String>)> {
    for g in a.generators() {
        if !b.radical_contains(g)? {
            return Ok((false, Some(format!("{g} is not in the radical of the second ideal"))));
        }
    }
    for g in b.generators() {
        if !a.radical_contains(g)? {
            return Ok((false, Some(format!("{g} is not in the radical of the first ideal"))));
        }
    }
    Ok((true, None))
}

/// The root ideal pulled back along the composed chart maps, with the
/// exceptional variables and units divided out, equals the node's target.
pub fn end_to_end(report: &ResolutionReport, node: &ChartNode) -> Result<(bool, Option<String>)> {
    if node.parent.is_none() {
        return Ok((true, None));
    }
    let root = root_ideal(report)?;
    let mut divisors: Vec<Polynomial> = node.exceptional.iter().map(|&v| Polynomial::var(&node.ring, v)).collect();
    divisors.extend(node.units.iter().cloned());
    let gens = root
        .generators()
        .iter()
        .map(|g| {
            let (num, _) = node.composed.apply(g)?;
            Ok(divisors.iter().fold(num, |acc, d| strip_factor(&acc, d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let j = Ideal::new_dedup(&node.ring, gens);
    let target = target_ideal(&report.input, node)?;
    saturated_equal(&j, &divisors, &target)
}

/// Conditions (a) and (c) of an embedded resolution at one leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafVerdict {
    pub node: usize,
    /// The strict transform is a coordinate subspace (or empty).
    pub regular: bool,
    /// Its coordinates avoid the exceptional variables, which are distinct.
    pub transversal: bool,
    /// The strict transform is empty in this chart.
    pub empty: bool,
    /// Variable names cutting out the strict transform.
    pub coordinates: Vec<String>,
    pub exceptional: Vec<String>,
    pub witness: Option<String>,
}

impl LeafVerdict {
    pub fn pass(&self) -> bool {
        self.regular && self.transversal
    }
}

/// The strict transform of the root ideal at `node`, in node coordinates,
/// with its units inverted. It is obtained from the parent's target by one
/// strict transform, once the parent's target identity holds.
pub fn leaf_strict_transform(report: &ResolutionReport, node: &ChartNode) -> Result<(Ideal, Option<String>)> {
    let target = target_ideal(&report.input, node)?;
    let Some(parent) = report.parent_of(node) else {
        return Ok((target, None));
    };
    let pt = target_ideal(&report.input, parent)?;
    let j = transport(node, &pt)?;
    let (pass, witness) = saturated_equal(&j, &chart_units(node), &target)?;
    if pass {
        Ok((target, None))
    } else {
        Ok((j.saturate_all(&chart_units(node))?, witness))
    }
}

pub fn check_leaf(report: &ResolutionReport, node: &ChartNode) -> Result<LeafVerdict> {
    let (ideal, witness) = leaf_strict_transform(report, node)?;
    let exceptional: Vec<String> = node.exceptional.iter().map(|&v| node.ring.name(v).to_string()).collect();
    let mut distinct = node.exceptional.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let exc_distinct = distinct.len() == node.exceptional.len();
    if ideal.is_unit()? {
        return Ok(LeafVerdict {
            node: node.id,
            regular: true,
            transversal: exc_distinct,
            empty: true,
            coordinates: Vec::new(),
            exceptional,
            witness,
        });
    }
    match ideal.coordinate_subspace()? {
        Some(vars) => {
            let disjoint = vars.iter().all(|v| !node.exceptional.contains(v));
            Ok(LeafVerdict {
                node: node.id,
                regular: true,
                transversal: disjoint && exc_distinct,
                empty: false,
                coordinates: vars.iter().map(|&v| node.ring.name(v).to_string()).collect(),
                exceptional,
                witness,
            })
        }
        None => Ok(LeafVerdict {
            node: node.id,
            regular: false,
            transversal: false,
            empty: false,
            coordinates: Vec::new(),
            exceptional,
            witness: witness.or_else(|| Some(format!("not a coordinate subspace: {:?}", ideal.groebner().map(|b| b.elements().to_vec())))),
        }),
    }
}

/// Conditions (a) and (c) at every leaf. Condition (b) holds because every
/// center lies in the singular locus; it is not computed.
pub fn check_embedded_resolution(report: &ResolutionReport) -> Result<Vec<LeafVerdict>> {
    report.leaves().map(|leaf| check_leaf(report, leaf)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fact {
    /// Odd skew determinants vanish.
    F1,
    /// `√I_{2ℓ}(A_m) = √I_{2ℓ-1}(A_m)`.
    F2,
    /// `det = pf²`.
    F3,
    /// The reduced loci of the `2ℓ`-minors, the `(2ℓ-1)`-minors and the
    /// principal `2ℓ`-pfaffians agree.
    Eq2l,
}

impl Fact {
    pub fn parse(s: &str) -> Result<Fact> {
        match s {
            "F1" => Ok(Fact::F1),
            "F2" => Ok(Fact::F2),
            "F3" => Ok(Fact::F3),
            "Eq2l" => Ok(Fact::Eq2l),
            other => Err(Error::BadParameters(format!("unknown fact `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Fact::F1 => "F1",
            Fact::F2 => "F2",
            Fact::F3 => "F3",
            Fact::Eq2l => "Eq2l",
        }
    }
}

/// Checks a fact about the generic skew matrix of size `m`; `l` is used by
/// the radical statements.
pub fn check_fact(fact: Fact, m: usize, l: usize, field: CoefficientField) -> Result<Verdict> {
    let a = generic_skew(m, field)?;
    let inputs = format!("m={m} l={l} field={}", field.tag());
    let (pass, witness) = match fact {
        Fact::F1 => {
            if m % 2 == 0 {
                return Err(Error::BadParameters("F1 concerns odd sizes".into()));
            }
            let d = a.determinant();
            let b = a.determinant_bareiss();
            (d.is_zero() && b.is_zero(), Some(format!("det = {d}")))
        }
        Fact::F3 => {
            let pf = a.pfaffian()?;
            let diff = &a.determinant() - &pf.pow(2);
            (diff.is_zero(), Some(format!("det - pf^2 = {diff}")))
        }
        Fact::F2 | Fact::Eq2l => {
            if l == 0 || 2 * l > m {
                return Err(Error::BadParameters(format!("need 1 <= l and 2l <= m, got m = {m}, l = {l}")));
            }
            let even = a.minors_ideal(2 * l)?;
            let odd = a.minors_ideal(2 * l - 1)?;
            let (mut pass, mut witness) = mutual_radical(&even, &odd)?;
            if pass && fact == Fact::Eq2l {
                (pass, witness) = mutual_radical(&even, &a.pfaffian_ideal(l)?)?;
            }
            (pass, witness)
        }
    };
    Ok(Verdict::new(fact.as_str(), inputs, pass, witness))
}

/// The reduction identity in one chart of the first blow-up of the generic
/// matrix: `I_s(M)` transported equals the smaller minor ideal.
pub fn reduction_identity(kind: SingularityKind, m: usize, s: usize, pos: (usize, usize), field: CoefficientField) -> Result<Verdict> {
    let matrix = match kind {
        SingularityKind::Skew => generic_skew(m, field)?,
        SingularityKind::Symmetric => generic_sym(m, field),
    };
    let root = root_node(matrix);
    let child = reduce_chart(&root, pos, 1)?;
    let (pass, witness) = minor_identity(&root, &child, s)?;
    Ok(Verdict::new(
        "reduction_identity",
        format!("{} m={m} s={s} chart=({},{}) field={}", kind.as_str(), pos.0 + 1, pos.1 + 1, field.tag()),
        pass,
        witness,
    ))
}

/// The strict transforms `g1' = x'^2 - y'^3 z'`, `g2' = x'^2 - z'^3` of
/// `x^2 - y^3`, `x^2 - z^5` in the `z`-chart of the origin blow-up, and
/// `h' = y'^3 - z'^2` for `h = g2 - g1`. Reports `(h ∈ <g1, g2>, h' ∈ <g1', g2'>)`.
pub fn lemma_counterexample(field: CoefficientField) -> Result<(bool, bool)> {
    use crate::blowup::{make_chart, Center};
    let r = Ring::new(field, &["x", "y", "z"])?;
    let g1 = parse_polynomial(&r, "x^2 - y^3")?;
    let g2 = parse_polynomial(&r, "x^2 - z^5")?;
    let h = &g2 - &g1;
    let i = Ideal::new(&r, alloc::vec![g1.clone(), g2.clone()])?;
    let chart = make_chart(&Center::new(&r, &[VarId(0), VarId(1), VarId(2)])?, VarId(2))?;
    let st = |f: &Polynomial| strict_transform_poly(f, &chart).map(|(_, p)| p);
    let ip = Ideal::new(chart.target(), alloc::vec![st(&g1)?, st(&g2)?])?;
    Ok((i.contains(&h)?, ip.contains(&st(&h)?)?))
}
