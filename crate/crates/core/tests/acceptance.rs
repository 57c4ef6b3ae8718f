//! Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//! Every comparison is exact; no numeric tolerance applies anywhere.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fairseq::executor::execute;
use fairseq::fairness::{check_allocation, check_sequence, divisor_wwef1_condition, prefix_indicator_instance, Notion};
use fairseq::harness::{
    check_population_consistency_pair, check_weight_consistency_pair, random_instance, scan, MonotonicityKind,
    ScanConfig, ScanProperty,
};
use fairseq::methods::{DivisorFunction, Rule, RuleConfig};
use fairseq::model::{Instance, PickingSequence};
use fairseq::mwnw::{score, solve, SolveOptions};
use fairseq::rational::{int, ratio, Rational};
use fairseq::repro::{run_all, run_case, webster_wprop1_counterexample};

/// Seed for every randomized criterion.
const SEED: u64 = 1;
const COUNTEREXAMPLE_BUDGET: Duration = Duration::from_secs(5);
const TABLE_BUDGET: Duration = Duration::from_secs(120);

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, detail: impl Into<String>) {
        self.pass &= ok;
        let detail = detail.into();
        self.details.push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn traditional() -> Vec<(Rule, &'static str)> {
    DivisorFunction::traditional()
        .into_iter()
        .map(|f| {
            let name = match f {
                DivisorFunction::Adams => "adams",
                DivisorFunction::Jefferson => "jefferson",
                DivisorFunction::Webster => "webster",
                DivisorFunction::Hill => "hill",
                _ => "dean",
            };
            (Rule::Divisor(f), name)
        })
        .collect()
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| ratio(rng.random_range(1..=20), rng.random_range(1..=6))).collect()
}

fn random_profile(rng: &mut ChaCha8Rng, weights: &[Rational], m: usize) -> Instance {
    let rows = weights
        .iter()
        .map(|_| (0..m).map(|_| int(rng.random_range(0..=10))).collect())
        .collect();
    Instance::new(weights.to_vec(), rows, m).unwrap()
}

fn counterexamples() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let outcomes = run_all().expect("catalog runs");
    let elapsed = start.elapsed();
    for o in outcomes.iter().filter(|o| o.id != "table1-matrix") {
        let utility = o.checks.first().map(|c| format!("{}: {}", c.label, c.actual)).unwrap_or_default();
        out.require(o.passed, format!("{} ({utility})", o.id));
    }
    out.require(outcomes.iter().all(|o| o.passed), "repro --all passes");
    out.require(elapsed < COUNTEREXAMPLE_BUDGET, format!("runtime {elapsed:.2?} < {COUNTEREXAMPLE_BUDGET:?}"));
    out
}

fn table_matrix() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let table = run_case("table1-matrix").expect("table runs");
    let elapsed = start.elapsed();
    for c in &table.checks {
        out.require(c.ok, format!("{}: expected {}, {}", c.label, c.expected, c.actual));
    }
    out.require(table.checks.len() == 42, format!("{} of 42 cells certified", table.checks.iter().filter(|c| c.ok).count()));
    out.require(elapsed < TABLE_BUDGET, format!("runtime {elapsed:.2?} < {TABLE_BUDGET:?}"));
    out
}

fn characterization() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut failures, mut passes, mut discrepancies) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.random_range(1..=5);
        let m = rng.random_range(0..=12);
        let weights = random_weights(&mut rng, n);
        let seq = PickingSequence::new((0..m).map(|_| rng.random_range(0..n)).collect());
        for notion in Notion::ALL {
            let verdict = check_sequence(notion, &seq, &weights).unwrap();
            if let Some(w) = verdict.witness {
                failures += 1;
                let k = w.prefix.expect("sequence witnesses carry a prefix");
                let inst = prefix_indicator_instance(&weights, m, k).unwrap();
                if check_allocation(notion, &inst, &execute(&inst, &seq).unwrap()).unwrap().holds {
                    discrepancies += 1;
                }
            } else {
                passes += 1;
                for _ in 0..20 {
                    let inst = random_profile(&mut rng, &weights, m);
                    if !check_allocation(notion, &inst, &execute(&inst, &seq).unwrap()).unwrap().holds {
                        discrepancies += 1;
                    }
                }
            }
        }
    }
    out.require(failures > 0 && passes > 0, format!("{failures} sequence failures, {passes} passes over 1000 sequences x 3 notions"));
    out.require(discrepancies == 0, format!("{discrepancies} discrepancies"));
    out
}

fn divisor_positives() -> Outcome {
    let mut out = Outcome::new();
    let config = RuleConfig::default();
    for (rule, name) in traditional() {
        for (kind, n) in [(MonotonicityKind::Resource, 3), (MonotonicityKind::Population, 3), (MonotonicityKind::Weight, 2)] {
            let cfg = ScanConfig {
                seed: SEED,
                trials: 500,
                min_n: if kind == MonotonicityKind::Weight { 2 } else { 1 },
                max_n: n,
                max_m: 8,
                ..ScanConfig::default()
            };
            let hit = scan(&rule, ScanProperty::Monotonicity(kind), &cfg, &config).unwrap();
            out.require(hit.is_none(), format!("{name} {kind}: {}", hit.map_or("no violation in 500 trials".into(), |c| format!("violation at trial {}", c.trial))));
        }
    }
    out
}

fn fairness_positives() -> Outcome {
    let mut out = Outcome::new();
    let config = RuleConfig::default();
    let mut cases: Vec<(Rule, String, Notion)> = Vec::new();
    for (rule, name) in traditional() {
        cases.push((rule, name.to_string(), Notion::Wwef1));
    }
    cases.push((Rule::Quota, "quota".into(), Notion::Wwef1));
    cases.push((Rule::Divisor(DivisorFunction::Adams), "adams".into(), Notion::Wef1));
    cases.push((Rule::Divisor(DivisorFunction::Jefferson), "jefferson".into(), Notion::Wprop1));
    cases.push((Rule::Quota, "quota".into(), Notion::Wprop1));
    for (rule, name, notion) in cases {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut bad = 0;
        for _ in 0..1000 {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(0..=20);
            let weights = random_weights(&mut rng, n);
            let seq = rule.sequence(&weights, m, &config).unwrap().unwrap();
            if !check_sequence(notion, &seq, &weights).unwrap().holds {
                bad += 1;
            }
        }
        out.require(bad == 0, format!("{name} {notion}: {bad} failures over 1000 weight vectors"));
    }
    for f in DivisorFunction::traditional() {
        let holds = divisor_wwef1_condition(&f, 10_000).unwrap().holds;
        out.require(holds, format!("{} WWEF1 condition for t <= 10^4", f.name()));
    }
    let mut grid_failures = Vec::new();
    for p in -3..=3 {
        for w in [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)] {
            let f = DivisorFunction::power_mean(int(p), w).unwrap();
            if !divisor_wwef1_condition(&f, 10_000).unwrap().holds {
                grid_failures.push(f.name());
            }
        }
    }
    out.require(grid_failures.is_empty(), format!("power-mean grid p in [-3,3], 5 values of w: failures {grid_failures:?}"));
    out
}

fn uniqueness_negatives() -> Outcome {
    let mut out = Outcome::new();
    let config = RuleConfig::default();
    let cfg = ScanConfig {
        seed: SEED,
        trials: 5000,
        min_n: 1,
        max_n: 3,
        max_m: 8,
        ..ScanConfig::default()
    };
    for (notion, skip) in [(Notion::Wef1, "adams"), (Notion::Wprop1, "jefferson")] {
        for (rule, name) in traditional().into_iter().filter(|(_, name)| *name != skip) {
            let hit = scan(&rule, ScanProperty::Fairness(notion), &cfg, &config).unwrap();
            let detail = match &hit {
                Some(c) => format!("{name} {notion}: violation at trial {} (seed {SEED}, n <= 3, m <= 8)", c.trial),
                None => format!("{name} {notion}: no violation in 5000 trials (seed {SEED}, n <= 3, m <= 8)"),
            };
            out.require(hit.is_some(), detail);
        }
    }
    let stored = webster_wprop1_counterexample().unwrap();
    out.details.push(format!("note webster wprop1 with four agents: {}", stored.actual));
    out
}

fn mwnw_weight_monotonicity() -> Outcome {
    let mut out = Outcome::new();
    let cfg = ScanConfig {
        seed: SEED,
        trials: 1000,
        max_n: 3,
        max_m: 7,
        ..ScanConfig::default()
    };
    let hit = scan(&Rule::Mwnw, ScanProperty::Monotonicity(MonotonicityKind::Weight), &cfg, &RuleConfig::default()).unwrap();
    out.require(hit.is_none(), format!("{} over 1000 trials (n <= 3, m <= 7)", hit.map_or("no violation".into(), |c| format!("violation at trial {}", c.trial))));
    out
}

fn consistency_oracles() -> Outcome {
    let mut out = Outcome::new();
    let (mut checked, mut disagreements) = (0usize, 0usize);
    for n in 1..=3 {
        for m in 0..=6 {
            let same = common::all_sequences(n, m);
            let extended = common::all_sequences(n + 1, m);
            for pi in &same {
                let pi_seq = PickingSequence::new(pi.clone());
                for agent in 0..n {
                    let images = common::closure_images(pi, agent, true);
                    for other in &same {
                        checked += 1;
                        let fast = check_weight_consistency_pair(&pi_seq, &PickingSequence::new(other.clone()), agent);
                        disagreements += usize::from(fast != images.contains(other));
                    }
                }
                let images = common::closure_images(pi, n, false);
                for other in &extended {
                    checked += 1;
                    let fast = check_population_consistency_pair(&pi_seq, &PickingSequence::new(other.clone()), n);
                    disagreements += usize::from(fast != images.contains(other));
                }
            }
        }
    }
    out.require(disagreements == 0, format!("{disagreements} disagreements over {checked} sequence pairs"));
    out
}

fn mwnw_optimality() -> Outcome {
    let mut out = Outcome::new();
    let config = RuleConfig::default();
    let cfg = ScanConfig {
        seed: SEED,
        max_n: 3,
        max_m: 7,
        ..ScanConfig::default()
    };
    let mut rivals: Vec<Rule> = traditional().into_iter().map(|(r, _)| r).collect();
    rivals.extend([Rule::Quota, Rule::RoundRobin, Rule::EnvyCycle, Rule::AdjustedWinner]);
    let (mut worse, mut mismatched) = (0, 0);
    for trial in 0..200 {
        let inst = random_instance(&mut cfg.trial_rng(trial), &Rule::Mwnw, &cfg).unwrap();
        let best = solve(&inst, &SolveOptions::default()).unwrap();
        let unpruned = solve(&inst, &SolveOptions { prune: false, ..SolveOptions::default() }).unwrap();
        mismatched += usize::from(best != unpruned);
        let best_score = score(&inst, &best).unwrap();
        for rule in rivals.iter().filter(|r| **r != Rule::AdjustedWinner || inst.n() == 2) {
            let alloc = rule.apply(&inst, &config).unwrap();
            worse += usize::from(score(&inst, &alloc).unwrap() > best_score);
        }
    }
    out.require(worse == 0, format!("{worse} rival allocations beat the solver over 200 instances"));
    out.require(mismatched == 0, format!("{mismatched} pruned/unpruned mismatches"));
    out
}

fn determinism() -> Outcome {
    let mut out = Outcome::new();
    let dir = std::env::temp_dir().join(format!("fairseq-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inst = dir.join("instance.json");
    std::fs::write(
        &inst,
        r#"{"agents":[{"weight":"9/18"},{"weight":"5/18"},{"weight":"4/18"}],"items":5,
            "utilities":[[10,9,8,7,0],[7,10,8,9,0],[0,7,10,8,9]]}"#,
    )
    .unwrap();
    let inst = inst.to_string_lossy().into_owned();
    let commands: Vec<Vec<&str>> = vec![
        vec!["sequence", "--method", "webster", "--weights", "33/10,6/5,1", "--turns", "12"],
        vec!["allocate", "--method", "quota", "--instance", &inst],
        vec!["fairness", "--notion", "wef1", "--sequence", "[1,2,2,2,2]", "--weights", "1,2"],
        vec!["mwnw", "--instance", &inst],
        vec!["mono", "--property", "weight", "--rule", "quota", "--instance", &inst, "--perturb", r#"{"agent":1,"weight":"11/18"}"#],
        vec!["consistency", "--kind", "resource", "--rule", "hill", "--weights", "3,2,1", "--turns", "10"],
        vec!["scan", "--rule", "dean", "--property", "wprop1", "--seed", "5", "--trials", "1000"],
        vec!["scan", "--rule", "mwnw", "--property", "weight", "--seed", "5", "--trials", "200", "--max-m", "6"],
        vec!["repro", "--all"],
    ];
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_fairseq"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    for args in commands {
        let mut base = args.clone();
        base.push("--json");
        let first = run(&base);
        let second = run(&base);
        let mut parallel = base.clone();
        parallel.extend(["--workers", "4"]);
        let third = run(&parallel);
        let same = first.stdout == second.stdout && first.stdout == third.stdout && first.status == third.status;
        out.require(same && !first.stdout.is_empty(), format!("{} ({} bytes)", args[..2].join(" "), first.stdout.len()));
    }
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("counterexample exactness", counterexamples),
        ("summary table matrix", table_matrix),
        ("sequence characterization soundness and completeness", characterization),
        ("divisor monotonicity positives", divisor_positives),
        ("fairness positives", fairness_positives),
        ("uniqueness negatives", uniqueness_negatives),
        ("MWNW weight-monotonicity", mwnw_weight_monotonicity),
        ("consistency decision procedures vs closure oracle", consistency_oracles),
        ("MWNW solver optimality", mwnw_optimality),
        ("CLI determinism", determinism),
    ];
    let mut all = true;
    for (number, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        all &= outcome.pass;
        println!(
            "{} criterion {}: {name} [{:.2?}]",
            if outcome.pass { "PASS" } else { "FAIL" },
            number + 1,
            start.elapsed()
        );
        for d in &outcome.details {
            println!("    {d}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
