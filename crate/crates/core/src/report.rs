//! Text and JSON rendering of command results. JSON keys come out sorted,
//! indices 1-based, rationals as `"p/q"` strings.

use serde_json::{json, Value};

use crate::fairness::{FairnessVerdict, Notion};
use crate::harness::{Counterexample, MonotonicityReport, ScanProperty};
use crate::io::{allocation_to_value, sequence_to_value};
use crate::model::{Allocation, PickingSequence};
use crate::mwnw::WelfareScore;
use crate::rational::{format_rational, Rational};
use crate::repro::CaseOutcome;

#[derive(Debug, Clone)]
pub enum Report {
    Sequence {
        method: String,
        sequence: PickingSequence,
    },
    Allocation {
        rule: String,
        allocation: Allocation,
        utilities: Vec<Rational>,
    },
    Fairness {
        notion: Notion,
        verdict: FairnessVerdict,
    },
    Welfare {
        allocation: Allocation,
        score: WelfareScore,
    },
    Monotonicity {
        rule: String,
        report: MonotonicityReport,
    },
    Consistency {
        kind: String,
        rule: Option<String>,
        holds: bool,
    },
    Scan {
        rule: String,
        property: ScanProperty,
        seed: u64,
        trials: usize,
        hit: Option<Box<Counterexample>>,
    },
    Repro(Vec<CaseOutcome>),
    CaseList(Vec<(String, String)>),
}

fn rationals(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn bundles_text(allocation: &Allocation) -> String {
    allocation
        .bundles()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let items: Vec<String> = b.iter().map(|g| (g + 1).to_string()).collect();
            format!("agent {}: {{{}}}", i + 1, items.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

impl Report {
    /// `false` when the result records a violation; drives the exit status.
    pub fn passed(&self) -> bool {
        match self {
            Report::Fairness { verdict, .. } => verdict.holds,
            Report::Monotonicity { report, .. } => !report.violated,
            Report::Consistency { holds, .. } => *holds,
            Report::Scan { hit, .. } => hit.is_none(),
            Report::Repro(outcomes) => outcomes.iter().all(|o| o.passed),
            _ => true,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Report::Sequence { method, sequence } => {
                json!({ "method": method, "turns": sequence_to_value(sequence)["turns"] })
            }
            Report::Allocation { rule, allocation, utilities } => json!({
                "rule": rule,
                "bundles": allocation_to_value(allocation)["bundles"],
                "utilities": rationals(utilities),
            }),
            Report::Fairness { notion, verdict } => {
                let mut value = verdict.to_json();
                value["notion"] = json!(notion.name());
                value
            }
            Report::Welfare { allocation, score } => json!({
                "bundles": allocation_to_value(allocation)["bundles"],
                "score": score.to_json(),
            }),
            Report::Monotonicity { rule, report } => {
                let mut value = report.to_json();
                value["rule"] = json!(rule);
                value
            }
            Report::Consistency { kind, rule, holds } => json!({
                "kind": kind,
                "rule": rule,
                "holds": holds,
            }),
            Report::Scan { rule, property, seed, trials, hit } => json!({
                "rule": rule,
                "property": property.name(),
                "seed": seed,
                "trials": trials,
                "found": hit.is_some(),
                "counterexample": hit.as_ref().map(|c| c.to_json()),
            }),
            Report::Repro(outcomes) => json!({
                "passed": self.passed(),
                "cases": outcomes.iter().map(CaseOutcome::to_json).collect::<Vec<_>>(),
            }),
            Report::CaseList(cases) => json!({
                "cases": cases.iter().map(|(id, summary)| json!({"id": id, "summary": summary})).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Report::Sequence { sequence, .. } => sequence.to_string(),
            Report::Allocation { rule, allocation, utilities } => {
                let mut out = format!("{rule}\n{}", bundles_text(allocation));
                out.push_str(&format!("\nutilities: {}", rationals(utilities).join(" ")));
                out
            }
            Report::Fairness { notion, verdict } => match &verdict.witness {
                None => format!("{notion}: holds"),
                Some(w) => format!("{notion}: violated\n{w}"),
            },
            Report::Welfare { allocation, score } => format!(
                "{}\nutilities: {}\nsupport: {}\nproduct: {}",
                bundles_text(allocation),
                rationals(score.utilities()).join(" "),
                score.support().iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "),
                format_rational(score.product()),
            ),
            Report::Monotonicity { rule, report } => {
                let mut out = format!("{rule}, {} monotonicity: ", report.property);
                out.push_str(if report.violated { "violated" } else { "holds" });
                for c in &report.changes {
                    let mark = if report.violators.contains(&c.agent) { "  <- violation" } else { "" };
                    out.push_str(&format!(
                        "\nagent {}: {} -> {}{mark}",
                        c.agent + 1,
                        format_rational(&c.before),
                        format_rational(&c.after)
                    ));
                }
                out
            }
            Report::Consistency { kind, rule, holds } => format!(
                "{kind} consistency{}: {}",
                rule.as_ref().map(|r| format!(" of {r}")).unwrap_or_default(),
                if *holds { "holds" } else { "violated" }
            ),
            Report::Scan { rule, property, seed, trials, hit } => match hit {
                None => format!("{rule}, {property}: no violation in {trials} trials (seed {seed})"),
                Some(c) => format!(
                    "{rule}, {property}: violation at trial {} (seed {seed})\n{}",
                    c.trial,
                    serde_json::to_string_pretty(&c.to_json()).expect("JSON values serialize")
                ),
            },
            Report::Repro(outcomes) => outcomes.iter().map(CaseOutcome::to_text).collect::<Vec<_>>().join(""),
            Report::CaseList(cases) => cases
                .iter()
                .map(|(id, summary)| format!("{id:<30} {summary}"))
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }
}

/// Renders `report` as compact JSON or as text, always newline-terminated.
pub fn emit_report(report: &Report, as_json: bool) -> String {
    let mut out = if as_json {
        serde_json::to_string(&report.to_json()).expect("JSON values serialize")
    } else {
        report.to_text()
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}
