//! Markdown rendering of a resolution report.

use std::fmt::Write;

use crate::dto::{NodeDto, ResolutionDto};

fn matrix_table(out: &mut String, entries: &[Vec<String>]) {
    if entries.is_empty() {
        out.push_str("(empty matrix)\n\n");
        return;
    }
    let n = entries.len();
    out.push('|');
    for j in 1..=n {
        let _ = write!(out, " {j} |");
    }
    out.push_str("\n|");
    out.push_str(&"---|".repeat(n));
    out.push('\n');
    for row in entries {
        out.push('|');
        for e in row {
            let _ = write!(out, " `{e}` |");
        }
        out.push('\n');
    }
    out.push('\n');
}

fn node(out: &mut String, n: &NodeDto) {
    let title = match n.position {
        Some([a, b]) => format!("Node {} (X_{{{a},{b}}}-chart of node {})", n.id, n.parent.unwrap_or(0)),
        None => format!("Node {} (root)", n.id),
    };
    let _ = writeln!(out, "{} {title}\n", "#".repeat((n.depth + 2).min(6)));
    let _ = writeln!(
        out,
        "- depth {}, stage {}, matrix size {}{}",
        n.depth,
        n.stage,
        n.matrix.m,
        if n.terminal { ", leaf" } else { "" }
    );
    if !n.exceptional.is_empty() {
        let _ = writeln!(out, "- exceptional: {}", n.exceptional.join(", "));
    }
    if !n.units.is_empty() {
        let _ = writeln!(out, "- units: {}", n.units.iter().map(|u| format!("`{u}`")).collect::<Vec<_>>().join(", "));
    }
    if let Some(s) = &n.substitution {
        out.push_str("- new coordinates:\n");
        for (k, v) in &s.forward {
            if let Some(v) = v.as_str() {
                if v != k {
                    let _ = writeln!(out, "  - `{k} = {v}`");
                }
            }
        }
    }
    let failed: Vec<_> = n.verdicts.iter().filter(|v| !v.pass).collect();
    if !n.verdicts.is_empty() {
        let _ = writeln!(out, "- checks: {} run, {} failed", n.verdicts.len(), failed.len());
        for v in failed {
            let _ = writeln!(out, "  - {}: {}", v.check, v.witness.as_deref().unwrap_or(""));
        }
    }
    out.push('\n');
    matrix_table(out, &n.matrix.entries);
}

pub fn render(r: &ResolutionDto) -> String {
    let mut out = String::new();
    let rank = match (r.input.r, r.input.l) {
        (Some(x), _) => format!("r = {x}"),
        (_, Some(x)) => format!("l = {x}"),
        _ => String::new(),
    };
    let _ = writeln!(out, "# Resolution: {} m = {}, {rank}, field {}\n", r.input.kind, r.input.m, r.input.field);
    let _ = writeln!(
        out,
        "{} nodes, {} leaves, {} blow-ups, depth {}. Verification: {} ({}).\n",
        r.stats.nodes,
        r.stats.leaves,
        r.stats.blowups,
        r.stats.max_depth,
        r.input.verify,
        if r.pass { "pass" } else { "FAIL" }
    );
    for n in &r.nodes {
        node(&mut out, n);
    }
    if !r.leaves.is_empty() {
        out.push_str("## Leaves\n\n| node | regular | transversal | strict transform |\n|---|---|---|---|\n");
        for l in &r.leaves {
            let st = if l.empty { "empty".to_string() } else { l.coordinates.join(", ") };
            let _ = writeln!(out, "| {} | {} | {} | {st} |", l.node, l.regular, l.transversal);
        }
    }
    out
}
