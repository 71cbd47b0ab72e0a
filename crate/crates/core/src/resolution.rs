//! Chart trees for the blow-up sequences resolving generic skew-symmetric
//! and symmetric determinantal singularities.
//!
//! Every blow-up center is the set of all current matrix variables. In a
//! chart, row and column operations turn the transformed matrix into a
//! block matrix whose lower-right block is a smaller generic matrix in
//! fresh variables; the node records that change of coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::blowup::{make_chart, Center, ChartMap};
use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::ideal::Ideal;
use crate::matrix::{entry_name, generic_skew, generic_sym, GenericMatrix, MatrixKind};
use crate::poly::Polynomial;
use crate::ring::{Ring, VarId};
use crate::subst::{FractionalSubstitution, Substitution};

const LETTERS: [&str; 8] = ["x", "y", "z", "w", "v", "u", "s", "q"];

fn depth_letter(depth: usize) -> String {
    match LETTERS.get(depth) {
        Some(l) => String::from(*l),
        None => format!("y{depth}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    Symmetric,
    Skew,
}

impl SingularityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularityKind::Symmetric => "sym",
            SingularityKind::Skew => "skew",
        }
    }
}

/// One elementary operation of a chart's elimination transcript. Indices
/// refer to the permuted matrix with the chart position moved to `(0, 1)`
/// (or `(0, 0)` for diagonal charts).
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixOp {
    /// `row[target] += factor * row[source]`
    AddRow { target: usize, source: usize, factor: Polynomial },
    /// `col[target] += factor * col[source]`
    AddCol { target: usize, source: usize, factor: Polynomial },
    /// `row[row] *= factor`
    ScaleRow { row: usize, factor: Polynomial },
}

/// Replays a transcript on a matrix of polynomials.
pub fn replay(ops: &[MatrixOp], m: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let mut a = m.to_vec();
    let n = a.len();
    for op in ops {
        match op {
            MatrixOp::AddRow { target, source, factor } => {
                for j in 0..n {
                    let t = factor * &a[*source][j];
                    a[*target][j] = &a[*target][j] + &t;
                }
            }
            MatrixOp::AddCol { target, source, factor } => {
                for row in a.iter_mut() {
                    let t = factor * &row[*source];
                    row[*target] = &row[*target] + &t;
                }
            }
            MatrixOp::ScaleRow { row, factor } => {
                for j in 0..n {
                    a[*row][j] = factor * &a[*row][j];
                }
            }
        }
    }
    a
}

/// The change of coordinates from a chart ring to a node ring.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateChange {
    /// Node variables as polynomials in the chart coordinates.
    pub forward: Substitution,
    /// Chart variables in node coordinates, with a common unit denominator.
    pub inverse: FractionalSubstitution,
}

/// One chart of one blow-up, or the root.
#[derive(Debug, Clone)]
pub struct ChartNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Chart position in the parent's matrix, 0-based, `i <= j`.
    pub position: Option<(usize, usize)>,
    pub chart: Option<ChartMap>,
    pub coordinates: Option<CoordinateChange>,
    /// The chart matrix `P`: the permuted transform with the exceptional
    /// factor removed, in chart coordinates.
    pub chart_matrix: Option<Vec<Vec<Polynomial>>>,
    pub transcript: Vec<MatrixOp>,
    pub ring: Ring,
    /// Generic matrix in the node's fresh variables.
    pub matrix: GenericMatrix,
    /// Original 1-based labels of the matrix rows.
    pub labels: Vec<usize>,
    pub letter: String,
    /// From the root ring into this node's ring.
    pub composed: FractionalSubstitution,
    pub exceptional: Vec<VarId>,
    pub units: Vec<Polynomial>,
    /// Number of blow-ups performed above this node.
    pub depth: usize,
    /// Position in the blow-up sequence when this node was created.
    pub stage: usize,
    /// Blow-ups of the sequence that are isomorphisms in this chart because
    /// their center's strict transform is empty here.
    pub pass_through: usize,
    /// Drop in rank index since the root.
    pub shift: usize,
    pub children: Vec<usize>,
    pub terminal: bool,
}

impl ChartNode {
    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    /// The stage after the pass-through blow-ups.
    pub fn final_stage(&self) -> usize {
        self.stage + self.pass_through
    }

    pub fn kind(&self) -> MatrixKind {
        self.matrix.kind()
    }

    pub fn matrix_vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.matrix.entries().iter().flatten().flat_map(|p| p.support()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn root(matrix: GenericMatrix) -> ChartNode {
        let ring = matrix.ring().clone();
        let labels: Vec<usize> = (1..=matrix.size()).collect();
        let id = Substitution::by_name(&ring, &ring).expect("identity");
        ChartNode {
            id: 0,
            parent: None,
            position: None,
            chart: None,
            coordinates: None,
            chart_matrix: None,
            transcript: Vec::new(),
            ring,
            matrix,
            labels,
            letter: String::from("x"),
            composed: FractionalSubstitution::polynomial(id),
            exceptional: Vec::new(),
            units: Vec::new(),
            depth: 0,
            stage: 0,
            pass_through: 0,
            shift: 0,
            children: Vec::new(),
            terminal: false,
        }
    }
}

/// The blow-up of all matrix variables of `node`, in the chart of the
/// variable at `pos`.
pub fn node_chart(node: &ChartNode, pos: (usize, usize)) -> Result<ChartMap> {
    let n = node.size();
    let (i, j) = pos;
    if i > j || j >= n {
        return Err(Error::BadPosition(i, j));
    }
    let v = node.matrix.entry(i, j).as_variable().ok_or(Error::BadPosition(i, j))?;
    let center = Center::new(&node.ring, &node.matrix_vars())?;
    make_chart(&center, v)
}

/// The permutation moving the chart position to the front.
fn chart_permutation(n: usize, pos: (usize, usize)) -> Vec<usize> {
    let (i, j) = pos;
    let mut sigma = alloc::vec![i];
    if j != i {
        sigma.push(j);
    }
    sigma.extend((0..n).filter(|&k| k != i && k != j));
    sigma
}

/// `P[a][b]`: the entry at `(σa, σb)` after the chart substitution with the
/// exceptional variable divided out once.
fn chart_matrix(node: &ChartNode, chart: &ChartMap, sigma: &[usize]) -> Result<Vec<Vec<Polynomial>>> {
    let t = chart.exceptional_var();
    let target = chart.target();
    sigma
        .iter()
        .map(|&a| {
            sigma
                .iter()
                .map(|&b| {
                    let e = node.matrix.entry(a, b);
                    if e.is_zero() {
                        return Ok(Polynomial::zero(target));
                    }
                    let img = chart.substitution().apply(e)?;
                    let (k, q) = img.factor_out(t)?;
                    debug_assert_eq!(k, 1);
                    Ok(q)
                })
                .collect()
        })
        .collect()
}

struct Reduction {
    /// Block entries `(a, b)` (permuted, `a <= b`) with their new values.
    block: Vec<((usize, usize), Polynomial)>,
    /// Inverse images of the block variables, before dividing by `denominator`.
    inverse: Vec<((usize, usize), Polynomial)>,
    denominator: Option<Polynomial>,
    transcript: Vec<MatrixOp>,
    first_block: usize,
    kind: MatrixKind,
}

fn skew_reduction(p: &[Vec<Polynomial>], node_ring: &Ring, lift: &dyn Fn(&Polynomial) -> Polynomial, ys: &dyn Fn(usize, usize) -> Polynomial) -> Reduction {
    let n = p.len();
    let mut block = Vec::new();
    let mut inverse = Vec::new();
    for a in 2..n {
        for b in a + 1..n {
            let z = &(&p[a][b] - &(&p[1][b] * &p[0][a])) + &(&p[0][b] * &p[1][a]);
            block.push(((a, b), z));
            let back = &(&ys(a, b) + &(&lift(&p[1][b]) * &lift(&p[0][a]))) - &(&lift(&p[0][b]) * &lift(&p[1][a]));
            inverse.push(((a, b), back));
        }
    }
    let _ = node_ring;
    let mut transcript = Vec::new();
    for i in 2..n {
        transcript.push(MatrixOp::AddRow { target: i, source: 0, factor: p[1][i].clone() });
        transcript.push(MatrixOp::AddRow { target: i, source: 1, factor: -&p[0][i] });
    }
    for j in 2..n {
        transcript.push(MatrixOp::AddCol { target: j, source: 0, factor: p[1][j].clone() });
        transcript.push(MatrixOp::AddCol { target: j, source: 1, factor: -&p[0][j] });
    }
    Reduction {
        block,
        inverse,
        denominator: None,
        transcript,
        first_block: 2,
        kind: MatrixKind::SkewSymmetric,
    }
}

fn sym_diag_reduction(p: &[Vec<Polynomial>], lift: &dyn Fn(&Polynomial) -> Polynomial, ys: &dyn Fn(usize, usize) -> Polynomial) -> Reduction {
    let n = p.len();
    let mut block = Vec::new();
    let mut inverse = Vec::new();
    for a in 1..n {
        for b in a..n {
            block.push(((a, b), &p[a][b] - &(&p[0][a] * &p[0][b])));
            inverse.push(((a, b), &ys(a, b) + &(&lift(&p[0][a]) * &lift(&p[0][b]))));
        }
    }
    let mut transcript = Vec::new();
    for i in 1..n {
        transcript.push(MatrixOp::AddRow { target: i, source: 0, factor: -&p[0][i] });
    }
    for j in 1..n {
        transcript.push(MatrixOp::AddCol { target: j, source: 0, factor: -&p[0][j] });
    }
    Reduction {
        block,
        inverse,
        denominator: None,
        transcript,
        first_block: 1,
        kind: MatrixKind::Symmetric,
    }
}

fn sym_offdiag_reduction(p: &[Vec<Polynomial>], lift: &dyn Fn(&Polynomial) -> Polynomial, ys: &dyn Fn(usize, usize) -> Polynomial) -> Reduction {
    let n = p.len();
    let ring = p[0][0].ring().clone();
    let eps = &Polynomial::one(&ring) - &(&p[0][0] * &p[1][1]);
    let eps_l = lift(&eps);
    let mut block = Vec::new();
    let mut inverse = Vec::new();
    for a in 2..n {
        for b in a..n {
            let left = &p[0][a] - &(&p[0][0] * &p[1][a]);
            let right = &p[1][b] - &(&p[1][1] * &p[0][b]);
            let z = &(&eps * &(&p[a][b] - &(&p[1][a] * &p[0][b]))) - &(&left * &right);
            block.push(((a, b), z));
            let left_l = lift(&left);
            let right_l = lift(&right);
            let back = &(&ys(a, b) + &(&left_l * &right_l)) + &(&eps_l * &(&lift(&p[1][a]) * &lift(&p[0][b])));
            inverse.push(((a, b), back));
        }
    }
    let mut transcript = Vec::new();
    for j in 1..n {
        transcript.push(MatrixOp::AddRow { target: j, source: 0, factor: -&p[j][1] });
    }
    for j in (0..n).filter(|&j| j != 1) {
        transcript.push(MatrixOp::AddCol { target: j, source: 1, factor: -&p[0][j] });
    }
    for i in 2..n {
        transcript.push(MatrixOp::ScaleRow { row: i, factor: eps.clone() });
    }
    for i in 2..n {
        let f = &p[i][0] - &(&p[i][1] * &p[0][0]);
        transcript.push(MatrixOp::AddRow { target: i, source: 1, factor: -&f });
    }
    Reduction {
        block,
        inverse,
        denominator: Some(eps_l),
        transcript,
        first_block: 2,
        kind: MatrixKind::Symmetric,
    }
}

/// Builds the child node for the chart at `pos` of `parent`'s blow-up.
pub fn reduce_chart(parent: &ChartNode, pos: (usize, usize), id: usize) -> Result<ChartNode> {
    let n = parent.size();
    let kind = parent.kind();
    let (i, j) = pos;
    if i > j || j >= n {
        return Err(Error::BadPosition(i, j));
    }
    match kind {
        MatrixKind::SkewSymmetric if i == j => return Err(Error::BadPosition(i, j)),
        MatrixKind::SkewSymmetric if n < 3 => return Err(Error::SizeTooSmall(n)),
        MatrixKind::Symmetric if n < 2 => return Err(Error::SizeTooSmall(n)),
        MatrixKind::General => return Err(Error::BadParameters(String::from("general matrices have no chart reduction"))),
        _ => {}
    }
    let chart = node_chart(parent, pos)?;
    let chart_ring = chart.target().clone();
    let sigma = chart_permutation(n, pos);
    let p = chart_matrix(parent, &chart, &sigma)?;
    let first_block = if kind == MatrixKind::Symmetric && i == j { 1 } else { 2 };

    // Block variables of the chart ring and the fresh names replacing them.
    let depth = parent.depth + 1;
    let letter = depth_letter(depth);
    let labels: Vec<usize> = sigma[first_block..].iter().map(|&k| parent.labels[k]).collect();
    let mut block_vars: Vec<(usize, usize, VarId)> = Vec::new();
    for a in first_block..n {
        for b in a..n {
            if kind == MatrixKind::SkewSymmetric && a == b {
                continue;
            }
            let v = p[a][b].as_variable().expect("block entries are variables");
            block_vars.push((a, b, v));
        }
    }
    let is_block = |v: VarId| block_vars.iter().any(|&(_, _, w)| w == v);
    let mut names: Vec<String> = chart_ring.vars().filter(|&v| !is_block(v)).map(|v| String::from(chart_ring.name(v))).collect();
    let lab = |a: usize| labels[a - first_block];
    for &(a, b, _) in &block_vars {
        let name = entry_name(&letter, lab(a), lab(b));
        if names.contains(&name) {
            return Err(Error::DuplicateVariable(name));
        }
        names.push(name);
    }
    let node_ring = Ring::new(chart_ring.field(), &names)?;
    let lift = |f: &Polynomial| f.to_ring(&node_ring).expect("non-block entries keep their names");
    let ys = |a: usize, b: usize| Polynomial::named_var(&node_ring, &entry_name(&letter, lab(a), lab(b))).expect("fresh variable");

    let red = match (kind, i == j) {
        (MatrixKind::SkewSymmetric, _) => skew_reduction(&p, &node_ring, &lift, &ys),
        (_, true) => sym_diag_reduction(&p, &lift, &ys),
        (_, false) => sym_offdiag_reduction(&p, &lift, &ys),
    };
    debug_assert_eq!(red.first_block, first_block);

    // Forward map: node variables in chart coordinates.
    let forward_images = node_ring
        .vars()
        .map(|v| {
            let name = node_ring.name(v);
            if chart_ring.has_var(name) {
                Polynomial::named_var(&chart_ring, name)
            } else {
                let &((_, _), ref z) = red
                    .block
                    .iter()
                    .find(|((a, b), _)| entry_name(&letter, lab(*a), lab(*b)) == name)
                    .expect("block variable");
                Ok(z.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = Substitution::new(&node_ring, &chart_ring, forward_images)?;

    // Inverse map: chart variables in node coordinates over a common denominator.
    let den = red.denominator.clone().unwrap_or_else(|| Polynomial::one(&node_ring));
    let inverse_images = chart_ring
        .vars()
        .map(|v| match block_vars.iter().find(|&&(_, _, w)| w == v) {
            Some(&(a, b, _)) => Ok(red.inverse.iter().find(|(ab, _)| *ab == (a, b)).expect("inverse entry").1.clone()),
            None => Ok(&Polynomial::named_var(&node_ring, chart_ring.name(v))? * &den),
        })
        .collect::<Result<Vec<_>>>()?;
    let inverse = FractionalSubstitution::new(Substitution::new(&chart_ring, &node_ring, inverse_images)?, den.clone())?;

    let matrix = GenericMatrix::from_variables(&node_ring, red.kind, &letter, &labels)?;
    let step = FractionalSubstitution::polynomial(chart.substitution().clone()).then(&inverse)?;
    let composed = parent.composed.then(&step)?;

    let mut exceptional: Vec<VarId> = parent
        .exceptional
        .iter()
        .map(|&v| node_ring.var(parent.ring.name(v)))
        .collect::<Result<_>>()?;
    exceptional.push(node_ring.var(chart_ring.name(chart.exceptional_var()))?);
    let mut units: Vec<Polynomial> = parent.units.iter().map(|u| u.to_ring(&node_ring)).collect::<Result<_>>()?;
    if let Some(d) = red.denominator {
        units.push(d);
    }
    let shift = parent.shift + (n - matrix.size());
    Ok(ChartNode {
        id,
        parent: Some(parent.id),
        position: Some(pos),
        chart: Some(chart),
        coordinates: Some(CoordinateChange { forward, inverse }),
        chart_matrix: Some(p),
        transcript: red.transcript,
        ring: node_ring,
        matrix,
        labels,
        letter,
        composed,
        exceptional,
        units,
        depth,
        stage: parent.final_stage() + 1,
        pass_through: 0,
        shift,
        children: Vec::new(),
        terminal: false,
    })
}

/// Skew chart `X_{k,l}`, `k < l`: the child matrix is skew of size `m - 2`.
pub fn reduce_skew_chart(node: &ChartNode, pos: (usize, usize)) -> Result<ChartNode> {
    if node.kind() != MatrixKind::SkewSymmetric {
        return Err(Error::NotSkew);
    }
    reduce_chart(node, pos, node.id + 1)
}

/// Symmetric diagonal chart `X_{k,k}`: the child matrix has size `m - 1`.
pub fn reduce_sym_diag_chart(node: &ChartNode, k: usize) -> Result<ChartNode> {
    if node.kind() != MatrixKind::Symmetric {
        return Err(Error::SymmetryViolation);
    }
    reduce_chart(node, (k, k), node.id + 1)
}

/// Symmetric off-diagonal chart `X_{k,l}`, `k < l`: the child matrix has
/// size `m - 2` and `1 - x'_kk x'_ll` is recorded as a unit.
pub fn reduce_sym_offdiag_chart(node: &ChartNode, pos: (usize, usize)) -> Result<ChartNode> {
    if node.kind() != MatrixKind::Symmetric {
        return Err(Error::SymmetryViolation);
    }
    if pos.0 >= pos.1 {
        return Err(Error::BadPosition(pos.0, pos.1));
    }
    reduce_chart(node, pos, node.id + 1)
}

/// Parameters of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionInput {
    pub kind: SingularityKind,
    pub m: usize,
    /// `r` for symmetric runs, `ℓ` for skew runs.
    pub rank: usize,
    pub field: CoefficientField,
    pub all_charts: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub leaves: usize,
    pub blowups: usize,
    pub max_depth: usize,
}

/// The chart tree of one run.
#[derive(Debug, Clone)]
pub struct ResolutionReport {
    pub input: ResolutionInput,
    pub nodes: Vec<ChartNode>,
    pub stats: TreeStats,
}

impl ResolutionReport {
    pub fn root(&self) -> &ChartNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &ChartNode> {
        self.nodes.iter().filter(|n| n.terminal)
    }

    pub fn parent_of(&self, node: &ChartNode) -> Option<&ChartNode> {
        node.parent.map(|p| &self.nodes[p])
    }

    /// The ideal whose strict transform each node tracks, in node
    /// coordinates: `I_{r-k}(M)` for symmetric runs and the ideal of
    /// principal `2(ℓ-α)`-pfaffians for skew runs.
    pub fn target_ideal(&self, node: &ChartNode) -> Result<Ideal> {
        target_ideal(&self.input, node)
    }
}

pub fn target_ideal(input: &ResolutionInput, node: &ChartNode) -> Result<Ideal> {
    match input.kind {
        SingularityKind::Symmetric => {
            if input.rank <= node.shift {
                Ok(Ideal::unit(&node.ring))
            } else {
                node.matrix.minors_ideal(input.rank - node.shift)
            }
        }
        SingularityKind::Skew => {
            let s = input.rank.saturating_sub(node.shift / 2);
            node.matrix.pfaffian_ideal(s)
        }
    }
}

/// The center each non-terminal node blows up: all its matrix variables.
pub fn center_of(node: &ChartNode) -> Result<Center> {
    Center::new(&node.ring, &node.matrix_vars())
}

fn chart_positions(node: &ChartNode, all: bool) -> Vec<(usize, usize)> {
    let n = node.size();
    let skew = node.kind() == MatrixKind::SkewSymmetric;
    if all {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !(skew && i == j) {
                    out.push((i, j));
                }
            }
        }
        out
    } else if skew {
        alloc::vec![(0, 1)]
    } else if n >= 2 {
        alloc::vec![(0, 0), (0, 1)]
    } else {
        alloc::vec![(0, 0)]
    }
}

/// Decides whether `node` is blown up further, advancing through stages
/// whose center has empty strict transform in this chart.
fn settle(input: &ResolutionInput, node: &mut ChartNode) -> bool {
    match input.kind {
        SingularityKind::Skew => node.final_stage() + 1 < input.rank,
        SingularityKind::Symmetric => loop {
            let alpha = node.final_stage();
            if alpha + 1 >= input.rank {
                return false;
            }
            if alpha + 1 <= node.shift {
                node.pass_through += 1;
                continue;
            }
            debug_assert_eq!(alpha + 1 - node.shift, 1);
            return true;
        },
    }
}

fn build(input: ResolutionInput, root: GenericMatrix) -> Result<ResolutionReport> {
    let mut nodes = alloc::vec![ChartNode::root(root)];
    let mut k = 0;
    while k < nodes.len() {
        let mut node = nodes[k].clone();
        let expand = settle(&input, &mut node);
        if expand {
            for pos in chart_positions(&node, input.all_charts) {
                let id = nodes.len();
                let child = reduce_chart(&node, pos, id)?;
                node.children.push(id);
                nodes.push(child);
            }
        } else {
            node.terminal = true;
        }
        nodes[k] = node;
        k += 1;
    }
    let stats = TreeStats {
        nodes: nodes.len(),
        leaves: nodes.iter().filter(|n| n.terminal).count(),
        blowups: nodes.iter().filter(|n| !n.terminal).count(),
        max_depth: nodes.iter().map(|n| n.depth).max().unwrap_or(0),
    };
    Ok(ResolutionReport { input, nodes, stats })
}

/// Tree for the resolution of the locus where the `2ℓ`-minors of the
/// generic skew `m x m` matrix vanish (with its reduced structure).
pub fn resolve_skew(m: usize, l: usize, field: CoefficientField, all_charts: bool) -> Result<ResolutionReport> {
    if l == 0 || 2 * l > m {
        return Err(Error::BadParameters(format!("skew runs need 1 <= l and 2l <= m, got m = {m}, l = {l}")));
    }
    let a = generic_skew(m, field)?;
    build(
        ResolutionInput {
            kind: SingularityKind::Skew,
            m,
            rank: l,
            field,
            all_charts,
        },
        a,
    )
}

/// Tree for the resolution of the locus where the `r`-minors of the generic
/// symmetric `m x m` matrix vanish.
pub fn resolve_sym(m: usize, r: usize, field: CoefficientField, all_charts: bool) -> Result<ResolutionReport> {
    if r == 0 || r > m {
        return Err(Error::BadParameters(format!("symmetric runs need 1 <= r <= m, got m = {m}, r = {r}")));
    }
    let b = generic_sym(m, field);
    build(
        ResolutionInput {
            kind: SingularityKind::Symmetric,
            m,
            rank: r,
            field,
            all_charts,
        },
        b,
    )
}

/// The root node of a generic matrix, for driving single chart reductions.
pub fn root_node(matrix: GenericMatrix) -> ChartNode {
    ChartNode::root(matrix)
}
