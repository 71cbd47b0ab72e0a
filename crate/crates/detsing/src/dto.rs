//! JSON shapes of reports and verdicts.

use detsing_core::resolution::{ChartNode, MatrixOp};
use detsing_core::verify::{LeafVerdict, Verdict};
use detsing_core::{ChartMap, GenericMatrix, Ideal, Polynomial, ResolutionReport, Ring, SingularityKind};
use serde::{Deserialize, Serialize};
use serde_json::Map;

pub const REPORT_FORMAT: &str = "detsing-resolution/1";
pub const VERDICTS_FORMAT: &str = "detsing-verdicts/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDto {
    pub check: String,
    pub inputs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl From<&Verdict> for VerdictDto {
    fn from(v: &Verdict) -> Self {
        VerdictDto {
            check: v.check.clone(),
            inputs: v.inputs.clone(),
            pass: v.pass,
            witness: v.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub kind: String,
    pub m: usize,
    pub ring: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl From<&GenericMatrix> for MatrixDto {
    fn from(a: &GenericMatrix) -> Self {
        MatrixDto {
            kind: a.kind().as_str().to_string(),
            m: a.size(),
            ring: a.ring().names().to_vec(),
            entries: a.entries_text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDto {
    pub center_vars: Vec<String>,
    pub chart_var: String,
    pub substitution: Map<String, serde_json::Value>,
    pub exceptional_var: String,
}

impl From<&ChartMap> for ChartDto {
    fn from(c: &ChartMap) -> Self {
        let src = c.source();
        ChartDto {
            center_vars: c.center().vars().iter().map(|&v| src.name(v).to_string()).collect(),
            chart_var: src.name(c.chart_var()).to_string(),
            substitution: c.substitution_text().into_iter().map(|(k, v)| (k, v.into())).collect(),
            exceptional_var: c.target().name(c.exceptional_var()).to_string(),
        }
    }
}

/// How the chart's coordinates sit inside the neighbouring chart of the
/// same blow-up with chart variable `chart_var`: each variable of that
/// chart as a rational function of this one's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDto {
    pub chart_var: String,
    pub images: Map<String, serde_json::Value>,
}

fn gluing(c: &ChartMap) -> Vec<GluingDto> {
    let src = c.source();
    let tgt = c.target();
    let i = c.chart_var();
    let center = c.center().vars();
    center
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| {
            let tj = tgt.name(j);
            let images = src
                .vars()
                .map(|v| {
                    let img = if v == i {
                        format!("1/{tj}")
                    } else if v == j {
                        format!("{}*{tj}", tgt.name(i))
                    } else if center.contains(&v) {
                        format!("{}/{tj}", tgt.name(v))
                    } else {
                        tgt.name(v).to_string()
                    };
                    (tgt.name(v).to_string(), img.into())
                })
                .collect();
            GluingDto {
                chart_var: src.name(j).to_string(),
                images,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseDto {
    pub numerators: Map<String, serde_json::Value>,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionDto {
    /// New matrix variables in the chart coordinates.
    pub forward: Map<String, serde_json::Value>,
    /// Chart coordinates in the node's variables.
    pub inverse: InverseDto,
}

fn var_map(ring: &Ring, images: &[Polynomial]) -> Map<String, serde_json::Value> {
    ring.vars()
        .zip(images)
        .map(|(v, p)| (ring.name(v).to_string(), p.to_string().into()))
        .collect()
}

fn op_text(op: &MatrixOp) -> String {
    match op {
        MatrixOp::AddRow { target, source, factor } => format!("R{} += ({factor})*R{}", target + 1, source + 1),
        MatrixOp::AddCol { target, source, factor } => format!("C{} += ({factor})*C{}", target + 1, source + 1),
        MatrixOp::ScaleRow { row, factor } => format!("R{} *= ({factor})", row + 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDto {
    pub id: usize,
    pub parent: Option<usize>,
    /// Chart position as original 1-based row and column labels.
    pub position: Option<[usize; 2]>,
    pub depth: usize,
    pub stage: usize,
    pub shift: usize,
    pub terminal: bool,
    pub children: Vec<usize>,
    pub ring: Vec<String>,
    pub chart: Option<ChartDto>,
    pub gluing: Vec<GluingDto>,
    pub substitution: Option<SubstitutionDto>,
    pub transcript: Vec<String>,
    pub units: Vec<String>,
    /// Where the chart's statements do not apply: the zero loci of the units.
    pub excluded_locus: Vec<String>,
    pub exceptional: Vec<String>,
    pub matrix: MatrixDto,
    pub target: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub groebner: Option<Vec<String>>,
    pub verdicts: Vec<VerdictDto>,
}

pub fn node_dto(
    report: &ResolutionReport,
    node: &ChartNode,
    target: &Ideal,
    groebner: Option<Vec<String>>,
    verdicts: &[Verdict],
) -> NodeDto {
    let position = node.position.map(|(a, b)| {
        let labels = &report.parent_of(node).expect("chart nodes have parents").labels;
        [labels[a], labels[b]]
    });
    let substitution = node.coordinates.as_ref().map(|cc| SubstitutionDto {
        forward: var_map(&node.ring, cc.forward.images()),
        inverse: InverseDto {
            numerators: var_map(cc.inverse.source(), cc.inverse.numerators().images()),
            denominator: cc.inverse.denominator().to_string(),
        },
    });
    let units: Vec<String> = node.units.iter().map(|u| u.to_string()).collect();
    NodeDto {
        id: node.id,
        parent: node.parent,
        position,
        depth: node.depth,
        stage: node.final_stage(),
        shift: node.shift,
        terminal: node.terminal,
        children: node.children.clone(),
        ring: node.ring.names().to_vec(),
        chart: node.chart.as_ref().map(ChartDto::from),
        gluing: node.chart.as_ref().map(gluing).unwrap_or_default(),
        substitution,
        transcript: node.transcript.iter().map(op_text).collect(),
        excluded_locus: units.iter().map(|u| format!("{u} = 0")).collect(),
        units,
        exceptional: node.exceptional.iter().map(|&v| node.ring.name(v).to_string()).collect(),
        matrix: MatrixDto::from(&node.matrix),
        target: target.generators().iter().map(|g| g.to_string()).collect(),
        groebner,
        verdicts: verdicts.iter().map(VerdictDto::from).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafDto {
    pub node: usize,
    pub regular: bool,
    pub transversal: bool,
    pub empty: bool,
    pub coordinates: Vec<String>,
    pub exceptional: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl From<&LeafVerdict> for LeafDto {
    fn from(l: &LeafVerdict) -> Self {
        LeafDto {
            node: l.node,
            regular: l.regular,
            transversal: l.transversal,
            empty: l.empty,
            coordinates: l.coordinates.clone(),
            exceptional: l.exceptional.clone(),
            witness: l.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDto {
    pub kind: String,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<usize>,
    pub field: String,
    pub all_charts: bool,
    pub verify: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDto {
    pub nodes: usize,
    pub leaves: usize,
    pub blowups: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDto {
    pub format: String,
    pub input: InputDto,
    pub stats: StatsDto,
    pub nodes: Vec<NodeDto>,
    pub leaves: Vec<LeafDto>,
    /// Condition (b) of an embedded resolution is recorded, not computed.
    pub isomorphism_off_singular_locus: String,
    pub pass: bool,
}

pub fn input_dto(report: &ResolutionReport, verify: &str) -> InputDto {
    let i = &report.input;
    let (r, l) = match i.kind {
        SingularityKind::Symmetric => (Some(i.rank), None),
        SingularityKind::Skew => (None, Some(i.rank)),
    };
    InputDto {
        kind: i.kind.as_str().to_string(),
        m: i.m,
        r,
        l,
        field: i.field.tag(),
        all_charts: i.all_charts,
        verify: verify.to_string(),
    }
}

pub fn stats_dto(report: &ResolutionReport) -> StatsDto {
    let s = &report.stats;
    StatsDto {
        nodes: s.nodes,
        leaves: s.leaves,
        blowups: s.blowups,
        max_depth: s.max_depth,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsDto {
    pub format: String,
    pub verdicts: Vec<VerdictDto>,
    pub pass: bool,
}
