//! Markdown rendering of reports.

use std::fmt::Write;

use nlb_core::analysis::Report;
use nlb_core::strategies::StrategyId;
use nlb_core::Bits;

pub const GAMES: [&str; 6] = [
    "chsh",
    "magic-square",
    "mermin",
    "multi-mermin:<n>",
    "dj:<n>",
    "bmaj:<n>",
];

pub fn list_md() -> String {
    let mut out = String::from("## Games\n\n");
    for g in GAMES {
        let _ = writeln!(out, "- `{g}`");
    }
    out.push_str("\n## Strategies\n\n| id | description |\n|---|---|\n");
    for (id, about) in StrategyId::REGISTRY {
        let _ = writeln!(out, "| `{id}` | {about} |");
    }
    out
}

fn joined(outcome: &[Bits]) -> String {
    outcome.iter().map(Bits::to_string).collect::<Vec<_>>().join(" ")
}

pub fn report_md(r: &Report) -> String {
    let mut out = String::new();
    let _ = write!(out, "# {} `{}`", r.mode, r.game);
    if let Some(s) = &r.strategy {
        let _ = write!(out, " with `{s}`");
    }
    out.push_str("\n\n| field | value |\n|---|---|\n");
    let mut row = |k: &str, v: String| {
        let _ = writeln!(out, "| {k} | {v} |");
    };
    if let Some(v) = r.value {
        row("value", v.to_string());
    }
    if let Some(v) = r.pass {
        row("pass", v.to_string());
    }
    if let Some(v) = &r.policy {
        row("policy", v.clone());
    }
    if let Some(v) = r.checked {
        row("checked", v.to_string());
    }
    if let Some(v) = r.resources {
        row("nlb", v.nlb.to_string());
        row("comm", v.comm.to_string());
    }
    if let Some(v) = r.strategies {
        row("strategies", v.to_string());
    }
    if let Some(v) = r.uniform {
        row("uniform", v.to_string());
    }
    if let Some(v) = r.denominator {
        row("denominator", v.to_string());
    }
    if let Some(s) = &r.search {
        row("budget", s.budget.to_string());
        row("pairings", s.pairings.to_string());
        row("space", s.space.to_string());
        row("perfect", s.perfect.to_string());
    }
    row("runtime_ms", r.runtime_ms.to_string());

    if let Some(c) = &r.counterexample {
        let _ = write!(
            out,
            "\n## Counterexample\n\n- input: `{}`\n- outcome: `{}`\n- seed: `{}`\n",
            c.input,
            joined(&c.outcome),
            serde_json::to_string(&c.seed).unwrap_or_default()
        );
    }
    if let Some(best) = &r.best {
        out.push_str("\n## Best deterministic strategy\n\n");
        if r.game == "magic-square" {
            out.push_str(&square_md(best));
        } else {
            out.push_str("| party | input | answer |\n|---|---|---|\n");
            for (p, table) in best.iter().enumerate() {
                for (x, y) in table {
                    let _ = writeln!(out, "| {p} | {x} | `{y}` |");
                }
            }
        }
    }
    if let Some(dist) = &r.distribution {
        out.push_str("\n## Distribution\n\n| input | outcome | p |\n|---|---|---|\n");
        for d in dist {
            for o in &d.outcomes {
                let _ = writeln!(out, "| `{}` | `{}` | {} |", d.input, joined(&o.outcome), o.p);
            }
        }
    }
    if let Some(w) = r.search.as_ref().and_then(|s| s.witness.as_ref()) {
        out.push_str("\n## Witness\n\nBox input by `x`; answer by `x` or, for the paired parties, by `2x + z`.\n\n");
        out.push_str("| party | box input | answer |\n|---|---|---|\n");
        for (p, rule) in w.parties.iter().enumerate() {
            let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
            let nlb = rule.nlb_input.map(|i| bits(&i)).unwrap_or_else(|| "-".to_owned());
            let _ = writeln!(out, "| {p} | {nlb} | {} |", bits(&rule.output));
        }
    }
    if let Some(n) = &r.note {
        let _ = write!(out, "\n{n}\n");
    }
    out
}

/// Alice's answers fill rows, Bob's fill columns. Cells are 1-based.
fn square_md(best: &[Vec<(u64, Bits)>]) -> String {
    let mut cells = [[[' '; 2]; 3]; 3];
    for (party, table) in best.iter().enumerate().take(2) {
        for (x, y) in table {
            for k in 0..3 {
                let (i, j) = if party == 0 { (*x as usize, k) } else { (k, *x as usize) };
                cells[i][j][party] = if y.get(k) { '1' } else { '0' };
            }
        }
    }
    let mut out = String::new();
    for (party, name) in ["Alice", "Bob"].iter().enumerate() {
        let _ = write!(out, "{name}\n\n|   | 1 | 2 | 3 |\n|---|---|---|---|\n");
        for (i, line) in cells.iter().enumerate() {
            let _ = write!(out, "| {} |", i + 1);
            for c in line {
                let _ = write!(out, " {} |", c[party]);
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
