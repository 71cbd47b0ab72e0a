//! The three subcommands, independent of argument parsing.

use detsing_core::verify::{
    check_fact, check_leaf, lemma_counterexample, reduction_identity, verify_node, Fact, LeafVerdict, Verdict,
    VerifyLevel,
};
use detsing_core::{
    resolve_skew, resolve_sym, CoefficientField, Error, Ideal, ResolutionReport, Result, SingularityKind,
};
use rayon::prelude::*;

use crate::dto::{
    input_dto, node_dto, stats_dto, LeafDto, ResolutionDto, VerdictDto, VerdictsDto, REPORT_FORMAT, VERDICTS_FORMAT,
};

pub const DEFAULT_PRIMES: [u64; 4] = [3, 5, 7, 101];

/// `Q`, `Fp:<p>`, or `Fp` for the default primes.
pub fn parse_fields(spec: &str) -> Result<Vec<CoefficientField>> {
    if spec.trim() == "Fp" {
        return DEFAULT_PRIMES.iter().map(|&p| CoefficientField::prime(p)).collect();
    }
    Ok(vec![CoefficientField::from_tag(spec)?])
}

#[derive(Debug, Clone)]
pub struct ResolveConfig {
    pub kind: SingularityKind,
    pub m: usize,
    pub rank: usize,
    pub field: CoefficientField,
    pub all_charts: bool,
    pub level: VerifyLevel,
}

pub fn build_report(cfg: &ResolveConfig) -> Result<ResolutionReport> {
    match cfg.kind {
        SingularityKind::Skew => {
            if cfg.field.characteristic() == 2 {
                return Err(Error::CharTwoForbidden);
            }
            resolve_skew(cfg.m, cfg.rank, cfg.field, cfg.all_charts)
        }
        SingularityKind::Symmetric => resolve_sym(cfg.m, cfg.rank, cfg.field, cfg.all_charts),
    }
}

/// Builds the tree and runs the requested checks, node by node in parallel.
pub fn resolve(cfg: &ResolveConfig) -> Result<ResolutionDto> {
    let report = build_report(cfg)?;
    let level = cfg.level;
    let per_node: Vec<(Vec<Verdict>, Ideal, Option<Vec<String>>)> = report
        .nodes
        .par_iter()
        .map(|node| {
            let verdicts = verify_node(&report, node.id, level)?;
            let target = report.target_ideal(node)?;
            let gb = if level == VerifyLevel::Full {
                Some(target.groebner()?.elements().iter().map(|g| g.to_string()).collect())
            } else {
                None
            };
            Ok((verdicts, target, gb))
        })
        .collect::<Result<_>>()?;
    let leaves: Vec<LeafVerdict> = if level == VerifyLevel::None {
        Vec::new()
    } else {
        let leaf_nodes: Vec<_> = report.leaves().collect();
        leaf_nodes.par_iter().map(|n| check_leaf(&report, n)).collect::<Result<_>>()?
    };
    let pass = per_node.iter().all(|(v, _, _)| v.iter().all(|v| v.pass)) && leaves.iter().all(|l| l.pass());
    let nodes = report
        .nodes
        .iter()
        .zip(per_node)
        .map(|(node, (verdicts, target, gb))| node_dto(&report, node, &target, gb, &verdicts))
        .collect();
    Ok(ResolutionDto {
        format: REPORT_FORMAT.into(),
        input: input_dto(&report, level.as_str()),
        stats: stats_dto(&report),
        nodes,
        leaves: leaves.iter().map(LeafDto::from).collect(),
        isomorphism_off_singular_locus: "recorded: every center lies in the singular locus of the current strict transform"
            .into(),
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentitySelector {
    /// Skew matrices, off-diagonal chart.
    ToShowAm,
    /// Symmetric matrices, diagonal chart.
    ToShowBmDiagonal,
    /// Symmetric matrices, off-diagonal chart.
    ToShowBmOffDiagonal,
}

impl IdentitySelector {
    pub fn parse(s: &str) -> Result<IdentitySelector> {
        match s {
            "to-show-Am" => Ok(IdentitySelector::ToShowAm),
            "to-show-Bm-diag" => Ok(IdentitySelector::ToShowBmDiagonal),
            "to-show-Bm-offdiag" => Ok(IdentitySelector::ToShowBmOffDiagonal),
            other => Err(Error::BadParameters(format!("unknown identity `{other}`"))),
        }
    }

    fn kind(self) -> SingularityKind {
        match self {
            IdentitySelector::ToShowAm => SingularityKind::Skew,
            _ => SingularityKind::Symmetric,
        }
    }

    fn default_chart(self) -> (usize, usize) {
        match self {
            IdentitySelector::ToShowBmDiagonal => (0, 0),
            _ => (0, 1),
        }
    }
}

#[derive(Debug, Clone)]
pub enum VerifyRequest {
    Fact { fact: Fact, m: usize, l: Option<usize> },
    Lemma,
    Identity { which: IdentitySelector, m: usize, r: Option<usize>, chart: Option<(usize, usize)> },
}

fn one_field(req: &VerifyRequest, field: CoefficientField) -> Result<Vec<Verdict>> {
    match *req {
        VerifyRequest::Fact { fact, m, l } => {
            if field.characteristic() == 2 {
                return Err(Error::CharTwoForbidden);
            }
            Ok(vec![check_fact(fact, m, l.unwrap_or(m / 2), field)?])
        }
        VerifyRequest::Lemma => {
            let (before, after) = lemma_counterexample(field)?;
            Ok(vec![Verdict {
                check: "lemma_counterexample".into(),
                inputs: format!("field={}", field.tag()),
                pass: before && !after,
                witness: Some(format!("h in ideal: {before}; strict h in strict ideal: {after}")).filter(|_| !(before && !after)),
            }])
        }
        VerifyRequest::Identity { which, m, r, chart } => {
            let kind = which.kind();
            if kind == SingularityKind::Skew && field.characteristic() == 2 {
                return Err(Error::CharTwoForbidden);
            }
            let pos = chart.unwrap_or(which.default_chart());
            if pos.0 >= m || pos.1 >= m || (pos.0 == pos.1) != (which == IdentitySelector::ToShowBmDiagonal) {
                return Err(Error::BadParameters(format!("chart ({}, {}) does not fit this identity", pos.0 + 1, pos.1 + 1)));
            }
            let ranks: Vec<usize> = match r {
                Some(r) if r == 0 || r > m => {
                    return Err(Error::BadParameters(format!("need 1 <= r <= m, got r = {r}")));
                }
                Some(r) => vec![r],
                None => (1..=m).collect(),
            };
            ranks.into_iter().map(|s| reduction_identity(kind, m, s, pos, field)).collect()
        }
    }
}

pub fn verify(req: &VerifyRequest, fields: &[CoefficientField]) -> Result<VerdictsDto> {
    let mut verdicts = Vec::new();
    for &f in fields {
        verdicts.extend(one_field(req, f)?);
    }
    Ok(VerdictsDto {
        format: VERDICTS_FORMAT.into(),
        pass: verdicts.iter().all(|v| v.pass),
        verdicts: verdicts.iter().map(VerdictDto::from).collect(),
    })
}
