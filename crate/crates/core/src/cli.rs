//! Command-line front end. Every value argument accepts an inline literal, a
//! path to a file, or `@path`. Exit status: 0 pass, 1 violation, 2 usage error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::fairness::{check_allocation, check_sequence, Notion};
use crate::harness::{
    check_population_consistency, check_population_consistency_pair, check_resource_consistency,
    check_weight_consistency, check_weight_consistency_pair, compare, scan, MonotonicityKind, Perturbation,
    ScanConfig, ScanProperty,
};
use crate::io::{parse_allocation, parse_instance, parse_rational_list, parse_sequence};
use crate::methods::{parse_custom_table, DivisorFunction, Exactness, Rule, RuleConfig};
use crate::model::PickingSequence;
use crate::mwnw::{solve_with_score, SolveOptions, DEFAULT_BUDGET_BITS};
use crate::rational::{parse_rational, Rational};
use crate::report::{emit_report, Report};
use crate::repro;

/// Overrides the precision of the floating-point divisor fallback.
pub const PRECISION_ENV: &str = "FAIRSEQ_PRECISION_BITS";

#[derive(Debug, Parser)]
#[command(name = "fairseq", version, about = "Weighted fair division via picking sequences")]
pub struct Cli {
    /// Emit exact JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for scans and the Nash welfare search.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Search budget for the Nash welfare solver, in bits (m * log2 n).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_BITS)]
    budget: u32,
    /// Allow divisor functions without an exact rational form (non-integer power means).
    #[arg(long, global = true)]
    allow_float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Picking sequence of a divisor or quota method.
    Sequence {
        #[arg(long)]
        method: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        turns: usize,
    },
    /// Allocation produced by a rule on an instance.
    Allocate {
        #[arg(long)]
        method: String,
        #[arg(long)]
        instance: String,
    },
    /// Checks WEF1, WWEF1 or WPROP1 for an allocation or a picking sequence.
    Fairness(FairnessArgs),
    /// Maximum weighted Nash welfare allocation.
    Mwnw {
        #[arg(long)]
        instance: String,
        /// Disable branch-and-bound pruning.
        #[arg(long)]
        no_prune: bool,
    },
    /// Compares a rule's outcome before and after a perturbation.
    Mono {
        #[arg(long)]
        property: String,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        instance: String,
        /// `{"utilities":[..]}`, `{"weight":w,"utilities":[..]}` or `{"agent":i,"weight":w}`.
        #[arg(long)]
        perturb: String,
    },
    /// Resource, population or weight consistency of a sequence rule or a sequence pair.
    Consistency(ConsistencyArgs),
    /// Seeded random search for a counterexample.
    Scan(ScanArgs),
    /// Known counterexamples and the summary table.
    Repro {
        #[arg(long, conflicts_with_all = ["case", "all"])]
        list: bool,
        #[arg(long, conflicts_with = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Args)]
struct FairnessArgs {
    #[arg(long)]
    notion: String,
    #[arg(long, requires = "allocation", conflicts_with = "sequence")]
    instance: Option<String>,
    #[arg(long, requires = "instance")]
    allocation: Option<String>,
    #[arg(long, requires = "weights")]
    sequence: Option<String>,
    #[arg(long, requires = "sequence")]
    weights: Option<String>,
}

#[derive(Debug, Args)]
struct ConsistencyArgs {
    /// resource, population or weight.
    #[arg(long)]
    kind: String,
    #[arg(long, conflicts_with_all = ["before", "after"])]
    rule: Option<String>,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    turns: Option<usize>,
    /// Agent whose weight is raised, or the added agent in pair mode (1-based).
    #[arg(long)]
    agent: Option<usize>,
    #[arg(long)]
    new_weight: Option<String>,
    #[arg(long, requires = "after")]
    before: Option<String>,
    #[arg(long, requires = "before")]
    after: Option<String>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    rule: String,
    /// wef1, wwef1, wprop1, resource, population or weight.
    #[arg(long)]
    property: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    min_m: usize,
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    #[arg(long, default_value_t = 10)]
    max_utility: u32,
    #[arg(long, default_value_t = 10)]
    max_weight: u32,
}

/// Reads `@path` or an existing path as a file; anything else is the literal itself.
fn load(arg: &str) -> Result<String> {
    let path = arg.strip_prefix('@').unwrap_or(arg);
    if arg.starts_with('@') || Path::new(path).is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::arg(format!("cannot read `{path}`: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_rule(text: &str) -> Result<Rule> {
    match text.split_once(':') {
        Some((head, body)) if head.trim().eq_ignore_ascii_case("custom") => {
            Ok(Rule::Divisor(DivisorFunction::Custom(parse_custom_table(&load(body)?)?)))
        }
        _ => Rule::parse(text),
    }
}

fn parse_weights(text: &str) -> Result<Vec<Rational>> {
    let weights = parse_rational_list(&load(text)?)?;
    if weights.is_empty() {
        return Err(Error::arg("at least one weight is required"));
    }
    Ok(weights)
}

fn one_based(agent: usize, what: &str) -> Result<usize> {
    agent
        .checked_sub(1)
        .ok_or_else(|| Error::arg(format!("{what} is 1-based; got 0")))
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::arg(format!("missing --{flag}")))
}

fn rule_config(cli: &Cli) -> Result<RuleConfig> {
    let exactness = if cli.allow_float {
        let bits = match std::env::var(PRECISION_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("{PRECISION_ENV} must be a positive integer, got `{v}`")))?,
            Err(_) => Exactness::default().precision_bits,
        };
        Exactness::allow_float(bits)
    } else {
        Exactness::default()
    };
    Ok(RuleConfig {
        exactness,
        mwnw: SolveOptions {
            budget_bits: cli.budget,
            prune: true,
            workers: cli.workers.max(1),
        },
    })
}

fn sequence_family(rule: Rule, config: RuleConfig) -> Result<impl Fn(&[Rational], usize) -> Result<PickingSequence>> {
    if !rule.is_sequence_rule() {
        return Err(Error::arg(format!("`{}` is not a picking-sequence rule", rule.name())));
    }
    Ok(move |w: &[Rational], m: usize| {
        rule.sequence(w, m, &config)?
            .ok_or_else(|| Error::arg(format!("`{}` produced no sequence", rule.name())))
    })
}

fn consistency(args: &ConsistencyArgs, config: &RuleConfig) -> Result<Report> {
    let kind: MonotonicityKind = args.kind.parse()?;
    if let (Some(before), Some(after)) = (&args.before, &args.after) {
        let pi = parse_sequence(&load(before)?)?;
        let pi2 = parse_sequence(&load(after)?)?;
        let agent = one_based(required(args.agent, "agent")?, "--agent")?;
        let holds = match kind {
            MonotonicityKind::Population => check_population_consistency_pair(&pi, &pi2, agent),
            MonotonicityKind::Weight => check_weight_consistency_pair(&pi, &pi2, agent),
            MonotonicityKind::Resource => {
                return Err(Error::arg("resource consistency compares a family, not a pair; use --rule"))
            }
        };
        return Ok(Report::Consistency {
            kind: kind.name().into(),
            rule: None,
            holds,
        });
    }
    let rule = parse_rule(&required(args.rule.clone(), "rule")?)?;
    let name = rule.name();
    let weights = parse_weights(&required(args.weights.clone(), "weights")?)?;
    let m = required(args.turns, "turns")?;
    let family = sequence_family(rule, *config)?;
    let holds = match kind {
        MonotonicityKind::Resource => check_resource_consistency(family, &weights, m)?,
        MonotonicityKind::Population => {
            let w = parse_rational(&required(args.new_weight.clone(), "new-weight")?)?;
            check_population_consistency(family, &weights, &w, m)?
        }
        MonotonicityKind::Weight => {
            let agent = one_based(required(args.agent, "agent")?, "--agent")?;
            let w = parse_rational(&required(args.new_weight.clone(), "new-weight")?)?;
            check_weight_consistency(family, &weights, agent, &w, m)?
        }
    };
    Ok(Report::Consistency {
        kind: kind.name().into(),
        rule: Some(name),
        holds,
    })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let config = rule_config(cli)?;
    match &cli.command {
        Command::Sequence { method, weights, turns } => {
            let rule = parse_rule(method)?;
            let weights = parse_weights(weights)?;
            let sequence = rule
                .sequence(&weights, *turns, &config)?
                .ok_or_else(|| Error::arg(format!("`{}` is not a picking-sequence method", rule.name())))?;
            Ok(Report::Sequence {
                method: rule.name(),
                sequence,
            })
        }
        Command::Allocate { method, instance } => {
            let rule = parse_rule(method)?;
            let instance = parse_instance(&load(instance)?)?;
            let allocation = rule.apply(&instance, &config)?;
            let utilities = allocation.utilities(&instance)?;
            Ok(Report::Allocation {
                rule: rule.name(),
                allocation,
                utilities,
            })
        }
        Command::Fairness(args) => {
            let notion: Notion = args.notion.parse()?;
            let verdict = match (&args.instance, &args.allocation, &args.sequence, &args.weights) {
                (Some(inst), Some(alloc), _, _) => {
                    let instance = parse_instance(&load(inst)?)?;
                    let allocation = parse_allocation(&load(alloc)?, instance.m())?;
                    check_allocation(notion, &instance, &allocation)?
                }
                (_, _, Some(seq), Some(weights)) => {
                    let sequence = parse_sequence(&load(seq)?)?;
                    check_sequence(notion, &sequence, &parse_weights(weights)?)?
                }
                _ => return Err(Error::arg("give --instance with --allocation, or --sequence with --weights")),
            };
            Ok(Report::Fairness { notion, verdict })
        }
        Command::Mwnw { instance, no_prune } => {
            let instance = parse_instance(&load(instance)?)?;
            let options = SolveOptions {
                prune: !no_prune,
                ..config.mwnw
            };
            let (allocation, score) = solve_with_score(&instance, &options)?;
            Ok(Report::Welfare { allocation, score })
        }
        Command::Mono {
            property,
            rule,
            instance,
            perturb,
        } => {
            let kind: MonotonicityKind = property.parse()?;
            let rule = parse_rule(rule)?;
            let base = parse_instance(&load(instance)?)?;
            let doc: serde_json::Value = serde_json::from_str(&load(perturb)?)
                .map_err(|e| Error::parse("perturbation", e.to_string()))?;
            let perturbation = Perturbation::from_json(kind, &doc)?;
            let report = compare(&rule, &base, &perturbation, &config)?;
            Ok(Report::Monotonicity {
                rule: rule.name(),
                report,
            })
        }
        Command::Consistency(args) => consistency(args, &config),
        Command::Scan(args) => {
            let rule = parse_rule(&args.rule)?;
            let property: ScanProperty = args.property.parse()?;
            let scan_config = ScanConfig {
                seed: args.seed,
                trials: args.trials,
                min_n: args.min_n,
                max_n: args.max_n,
                min_m: args.min_m,
                max_m: args.max_m,
                max_utility: args.max_utility,
                max_weight: args.max_weight,
                workers: cli.workers.max(1),
            };
            let hit = scan(&rule, property, &scan_config, &config)?;
            Ok(Report::Scan {
                rule: rule.name(),
                property,
                seed: args.seed,
                trials: args.trials,
                hit: hit.map(Box::new),
            })
        }
        Command::Repro { list, case, all } => {
            if *list {
                Ok(Report::CaseList(
                    repro::catalog()
                        .into_iter()
                        .map(|c| (c.id.to_string(), c.summary.to_string()))
                        .collect(),
                ))
            } else if let Some(id) = case {
                Ok(Report::Repro(vec![repro::run_case(id)?]))
            } else if *all {
                Ok(Report::Repro(repro::run_all()?))
            } else {
                Err(Error::arg("repro needs --list, --case <id> or --all"))
            }
        }
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let _ = out.write_all(emit_report(&report, cli.json).as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
