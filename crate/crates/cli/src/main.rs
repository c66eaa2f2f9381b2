//! Command-line entry point for the listplane workbench.
//!
//! Exit codes follow one contract across all subcommands: 0 for a passing
//! verdict, 1 for a negative verdict (inconclusive, counterexample found,
//! negative final charge, hypothesis violated), 2 for any error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use listplane::catalog;
use listplane::cn::{derive_caps, expand, Configuration, ReducibilityStatus};
use listplane::discharge::{Charge, RunReport, Simulator, Transfer};
use listplane::graph::HypothesisVerdict;
use listplane::io;
use listplane::oracle::{
    cross_check, f_choosable_exhaustive, f_choosable_sampled, ChoosableVerdict, CrossCheckMode,
    SampledVerdict, SizeVector,
};

#[derive(Parser)]
#[command(name = "listplane", version, about = "List-coloring proof workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print only verdict lines.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check configuration reducibility by coefficient extraction.
    Reduce(ReduceArgs),
    /// Run the brute-force choosability oracle on a configuration.
    Oracle(OracleArgs),
    /// Execute the discharging procedure on a plane graph.
    Discharge(DischargeArgs),
    /// Validate the 4-cycle distance hypothesis on a graph.
    Validate(ValidateArgs),
    /// Inspect or check the shipped configuration catalog.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct ReduceArgs {
    /// Configuration file path.
    config_path: Option<String>,
    /// Use a shipped catalog entry instead of a file.
    #[arg(long, conflicts_with = "config_path")]
    catalog: Option<String>,
    /// Flip the orientation of the edge at this index in the default
    /// (lexicographic, low-to-high) orientation. Repeatable.
    #[arg(long = "flip", value_name = "INDEX")]
    flips: Vec<usize>,
    /// Print every witness instead of the first 10.
    #[arg(long)]
    all_witnesses: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Configuration file path.
    config_path: Option<String>,
    /// Use a shipped catalog entry instead of a file.
    #[arg(long, conflicts_with = "config_path")]
    catalog: Option<String>,
    /// Exhaustive search over all list assignments.
    #[arg(long, conflicts_with_all = ["trials", "seed"])]
    exhaustive: bool,
    /// Lift the exhaustive-search size budget.
    #[arg(long, requires = "exhaustive")]
    override_budget: bool,
    /// Number of sampled trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Seed for the sampled search.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct DischargeArgs {
    /// Plane-graph file path.
    planegraph_path: String,
    /// Stop after this stage (0 = initial charges, 1 = R1-R5, 2 = full).
    #[arg(long, default_value_t = 2)]
    stage: u8,
}

#[derive(Args)]
struct ValidateArgs {
    /// Graph file path.
    graph_path: String,
    /// Required minimum distance between 4-cycles.
    #[arg(long, default_value_t = 5)]
    distance: usize,
}

#[derive(Args)]
struct CatalogArgs {
    /// List the shipped entries.
    #[arg(long, conflicts_with = "check_all")]
    list: bool,
    /// Run reducibility plus a seeded cross-check over every entry.
    #[arg(long)]
    check_all: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reduce(args) => cmd_reduce(&cli, args),
        Command::Oracle(args) => cmd_oracle(&cli, args),
        Command::Discharge(args) => cmd_discharge(&cli, args),
        Command::Validate(args) => cmd_validate(&cli, args),
        Command::Catalog(args) => cmd_catalog(&cli, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn load_configuration(
    path: &Option<String>,
    catalog_name: &Option<String>,
) -> Result<Configuration, String> {
    match (path, catalog_name) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {}", p, e))?;
            io::parse_configuration(&text).map_err(|e| format!("{}: {}", p, e))
        }
        (None, Some(name)) => catalog::find(name)
            .map(|entry| entry.configuration)
            .ok_or_else(|| format!("no catalog entry named {:?}", name)),
        (None, None) => Err("pass a configuration file or --catalog <name>".into()),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    }
}

fn exponent_list(exponents: &[usize]) -> String {
    let inner: Vec<String> = exponents.iter().map(|e| e.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Exact rational as `p/q`, denominator always explicit.
fn charge_str(c: Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn charge_display(c: Charge) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

const WITNESS_PRINT_CAP: usize = 10;

fn cmd_reduce(cli: &Cli, args: &ReduceArgs) -> Result<u8, String> {
    let config = load_configuration(&args.config_path, &args.catalog)?;
    let caps = derive_caps(&config).map_err(|e| e.to_string())?;
    let mut edges = config.default_orientation();
    for &i in &args.flips {
        if i >= edges.len() {
            return Err(format!(
                "--flip {}: configuration has {} edges",
                i,
                edges.len()
            ));
        }
        edges[i] = (edges[i].1, edges[i].0);
    }
    let table = expand(&edges, &caps).map_err(|e| e.to_string())?;
    let witnesses: Vec<&Vec<usize>> = table.keys().collect();
    let reducible = !witnesses.is_empty();
    let status = if reducible { "reducible" } else { "inconclusive" };
    if cli.format == Format::Json {
        let value = json!({
            "name": config.name,
            "caps": caps.0,
            "status": status,
            "count": witnesses.len(),
            "witnesses": witnesses,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let mut out = String::new();
        if !cli.quiet {
            writeln!(out, "name: {}", config.name).unwrap();
            writeln!(out, "caps: {}", exponent_list(&caps.0)).unwrap();
        }
        writeln!(out, "status: {}", status).unwrap();
        writeln!(out, "witness count: {}", witnesses.len()).unwrap();
        let shown = if args.all_witnesses {
            witnesses.len()
        } else {
            witnesses.len().min(WITNESS_PRINT_CAP)
        };
        for w in &witnesses[..shown] {
            writeln!(out, "valid expansion: {}", exponent_list(w)).unwrap();
        }
        if shown < witnesses.len() {
            writeln!(
                out,
                "({} more witnesses suppressed; use --all-witnesses)",
                witnesses.len() - shown
            )
            .unwrap();
        }
        print!("{}", out);
    }
    Ok(if reducible { 0 } else { 1 })
}

fn cmd_oracle(cli: &Cli, args: &OracleArgs) -> Result<u8, String> {
    let config = load_configuration(&args.config_path, &args.catalog)?;
    let caps = derive_caps(&config).map_err(|e| e.to_string())?;
    let sizes = SizeVector(caps.0.iter().map(|c| c + 1).collect());
    let (mode_line, counterexample) = if args.exhaustive {
        let verdict = f_choosable_exhaustive(&config.internal, &sizes, args.override_budget)
            .map_err(|e| e.to_string())?;
        let cx = match verdict {
            ChoosableVerdict::Choosable => None,
            ChoosableVerdict::NotChoosable(cx) => Some(cx),
        };
        ("exhaustive".to_string(), cx)
    } else {
        let trials = args
            .trials
            .ok_or("pass --exhaustive or --trials <N>".to_string())?;
        let verdict = f_choosable_sampled(&config.internal, &sizes, trials, args.seed)
            .map_err(|e| e.to_string())?;
        let cx = match verdict {
            SampledVerdict::NoCounterexampleFound => None,
            SampledVerdict::NotChoosable { assignment, .. } => Some(assignment),
        };
        (format!("sampled trials={} seed={}", trials, args.seed), cx)
    };
    let verdict_line = match (&counterexample, args.exhaustive) {
        (None, true) => "choosable",
        (None, false) => "no counterexample found",
        (Some(_), _) => "not choosable",
    };
    if cli.format == Format::Json {
        let cx_json: Option<Vec<Vec<u32>>> = counterexample
            .as_ref()
            .map(|cx| cx.0.iter().map(|s| s.iter().copied().collect()).collect());
        let value = json!({
            "name": config.name,
            "sizes": sizes.0,
            "mode": mode_line,
            "verdict": verdict_line,
            "counterexample": cx_json,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let mut out = String::new();
        if !cli.quiet {
            writeln!(out, "name: {}", config.name).unwrap();
            writeln!(out, "sizes: {}", exponent_list(&sizes.0)).unwrap();
            writeln!(out, "mode: {}", mode_line).unwrap();
        }
        writeln!(out, "verdict: {}", verdict_line).unwrap();
        if let Some(cx) = &counterexample {
            out.push_str(&cx.render());
        }
        print!("{}", out);
    }
    Ok(if counterexample.is_some() { 1 } else { 0 })
}

fn hypothesis_line(verdict: &HypothesisVerdict, distance: usize) -> String {
    match verdict {
        HypothesisVerdict::Satisfied => format!("hypothesis (distance {}): satisfied", distance),
        HypothesisVerdict::Violated {
            first,
            second,
            distance: d,
        } => format!(
            "hypothesis (distance {}): violated by {:?} and {:?} at distance {}",
            distance, first.vertices, second.vertices, d
        ),
    }
}

fn ledger_lines(out: &mut String, transfers: &[Transfer]) {
    for t in transfers {
        writeln!(
            out,
            "  {} {} -> {}: {}",
            t.rule.label(),
            t.from,
            t.to,
            charge_display(t.amount)
        )
        .unwrap();
    }
}

fn report_text(report: &RunReport, stage: u8, quiet: bool) -> String {
    let mut out = String::new();
    let n = report.ch0.vertex_charge.len();
    let faces = report.face_degrees.len();
    writeln!(
        out,
        "vertices: {} faces: {}",
        n, faces
    )
    .unwrap();
    out.push_str(&hypothesis_line(&report.hypothesis, 5));
    out.push('\n');
    let stages: Vec<(&str, &listplane::discharge::ChargeState)> = match stage {
        0 => vec![("ch0", &report.ch0)],
        1 => vec![("ch0", &report.ch0), ("ch1", &report.ch1)],
        _ => vec![
            ("ch0", &report.ch0),
            ("ch1", &report.ch1),
            ("ch2", &report.ch2),
        ],
    };
    let totals: Vec<String> = stages
        .iter()
        .map(|(label, s)| format!("{}={}", label, charge_display(s.total())))
        .collect();
    writeln!(out, "stage totals: {}", totals.join(" ")).unwrap();
    if !quiet {
        writeln!(out, "vertex charges:").unwrap();
        for v in 0..n {
            let cells: Vec<String> = stages
                .iter()
                .map(|(label, s)| format!("{}={}", label, charge_display(s.vertex_charge[v])))
                .collect();
            writeln!(out, "  v{}: {}", v, cells.join(" ")).unwrap();
        }
        writeln!(out, "face charges:").unwrap();
        for f in 0..faces {
            let cells: Vec<String> = stages
                .iter()
                .map(|(label, s)| format!("{}={}", label, charge_display(s.face_charge[f])))
                .collect();
            writeln!(
                out,
                "  f{} (degree {}): {}",
                f, report.face_degrees[f], cells.join(" ")
            )
            .unwrap();
        }
        if stage >= 1 {
            writeln!(out, "round 1 ledger ({} transfers):", report.round1_ledger.len()).unwrap();
            ledger_lines(&mut out, &report.round1_ledger.transfers);
        }
        if stage >= 2 {
            writeln!(out, "round 2 ledger ({} transfers):", report.round2_ledger.len()).unwrap();
            ledger_lines(&mut out, &report.round2_ledger.transfers);
            let mut classes = Vec::new();
            for (v, c) in report.classification.iter().enumerate() {
                let mut tags = Vec::new();
                if c.rich {
                    tags.push("rich");
                }
                if c.poor {
                    tags.push("poor");
                }
                if c.good4 {
                    tags.push("good-4");
                }
                if c.bad4 {
                    tags.push("bad-4");
                }
                if !tags.is_empty() {
                    classes.push(format!("v{}: {}", v, tags.join(" ")));
                }
            }
            writeln!(out, "classification:").unwrap();
            for line in classes {
                writeln!(out, "  {}", line).unwrap();
            }
        }
        if report.fact1_violations.is_empty() {
            writeln!(out, "fact-1 violations: none").unwrap();
        } else {
            let list: Vec<String> = report
                .fact1_violations
                .iter()
                .map(|v| format!("v{}", v))
                .collect();
            writeln!(out, "fact-1 violations: {}", list.join(" ")).unwrap();
        }
        for d in &report.diagnostics {
            writeln!(out, "diagnostic: {}", d).unwrap();
        }
    }
    let final_label = stages.last().unwrap().0;
    if report.negative_ch2.is_empty() {
        writeln!(out, "negative {}: none", final_label).unwrap();
    } else {
        let list: Vec<String> = report.negative_ch2.iter().map(|e| e.to_string()).collect();
        writeln!(out, "negative {}: {}", final_label, list.join(" ")).unwrap();
    }
    out
}

fn charges_json(state: &listplane::discharge::ChargeState) -> Value {
    json!({
        "stage": state.stage,
        "vertices": state.vertex_charge.iter().map(|&c| charge_str(c)).collect::<Vec<_>>(),
        "faces": state.face_charge.iter().map(|&c| charge_str(c)).collect::<Vec<_>>(),
        "total": charge_str(state.total()),
    })
}

fn ledger_json(transfers: &[Transfer]) -> Value {
    Value::Array(
        transfers
            .iter()
            .map(|t| {
                json!({
                    "rule": t.rule.label(),
                    "from": t.from.to_string(),
                    "to": t.to.to_string(),
                    "amount": charge_str(t.amount),
                })
            })
            .collect(),
    )
}

fn cmd_discharge(cli: &Cli, args: &DischargeArgs) -> Result<u8, String> {
    let text = std::fs::read_to_string(&args.planegraph_path)
        .map_err(|e| format!("{}: {}", args.planegraph_path, e))?;
    let pg = io::parse_plane_graph(&text).map_err(|e| format!("{}: {}", args.planegraph_path, e))?;
    let sim = Simulator::new(pg);
    let report = sim.report().map_err(|e| e.to_string())?;
    let final_state = match args.stage {
        0 => &report.ch0,
        1 => &report.ch1,
        _ => &report.ch2,
    };
    let zero = Charge::from_integer(0);
    let has_negative = final_state
        .vertex_charge
        .iter()
        .chain(final_state.face_charge.iter())
        .any(|c| *c < zero);
    if cli.format == Format::Json {
        let value = json!({
            "vertices": report.ch0.vertex_charge.len(),
            "faces": report.face_degrees,
            "hypothesis_satisfied": report.hypothesis.is_satisfied(),
            "ch0": charges_json(&report.ch0),
            "ch1": charges_json(&report.ch1),
            "ch2": charges_json(&report.ch2),
            "round1_ledger": ledger_json(&report.round1_ledger.transfers),
            "round2_ledger": ledger_json(&report.round2_ledger.transfers),
            "fact1_violations": report.fact1_violations,
            "negative_final": report.negative_ch2.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "diagnostics": report.diagnostics,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        print!("{}", report_text(&report, args.stage, cli.quiet));
    }
    Ok(if has_negative { 1 } else { 0 })
}

fn cmd_validate(cli: &Cli, args: &ValidateArgs) -> Result<u8, String> {
    let text = std::fs::read_to_string(&args.graph_path)
        .map_err(|e| format!("{}: {}", args.graph_path, e))?;
    let g = io::parse_graph(&text).map_err(|e| format!("{}: {}", args.graph_path, e))?;
    let cycles = g.enumerate_4cycles();
    let verdict = g.validate_hypothesis(args.distance);
    if cli.format == Format::Json {
        let value = json!({
            "four_cycles": cycles.len(),
            "min_pairwise_distance": g.min_pairwise_4cycle_distance(),
            "distance": args.distance,
            "satisfied": verdict.is_satisfied(),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        if !cli.quiet {
            println!("4-cycles: {}", cycles.len());
            match g.min_pairwise_4cycle_distance() {
                Some(d) => println!("minimum pairwise distance: {}", d),
                None => println!("minimum pairwise distance: n/a (fewer than two 4-cycles)"),
            }
        }
        println!("{}", hypothesis_line(&verdict, args.distance));
    }
    Ok(if verdict.is_satisfied() { 0 } else { 1 })
}

fn cmd_catalog(cli: &Cli, args: &CatalogArgs) -> Result<u8, String> {
    let entries = catalog::entries();
    if args.check_all {
        let mut all_ok = true;
        let mut lines = Vec::new();
        let mut results = Vec::new();
        for entry in &entries {
            let report = cross_check(
                &entry.configuration,
                CrossCheckMode::Sampled {
                    trials: 100_000,
                    seed: 42,
                },
            )
            .map_err(|e| format!("{}: {}", entry.name, e))?;
            let reducible = report.cn_status == ReducibilityStatus::Reducible;
            let ok = reducible && report.passed() && report.counterexample.is_none();
            all_ok &= ok;
            let status = if reducible { "reducible" } else { "inconclusive" };
            let check = if report.counterexample.is_none() {
                "cross-check passed"
            } else {
                "cross-check found a counterexample"
            };
            lines.push(format!("{}: {}, {}", entry.name, status, check));
            results.push(json!({
                "name": entry.name,
                "status": status,
                "cross_check_passed": report.counterexample.is_none(),
            }));
        }
        if cli.format == Format::Json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "entries": results, "all_ok": all_ok }))
                    .unwrap()
            );
        } else {
            for line in lines {
                println!("{}", line);
            }
        }
        Ok(if all_ok { 0 } else { 1 })
    } else {
        // --list is the default action
        if cli.format == Format::Json {
            let names: Vec<_> = entries.iter().map(|e| e.name).collect();
            println!("{}", serde_json::to_string_pretty(&json!({ "entries": names })).unwrap());
        } else {
            for entry in &entries {
                if cli.quiet {
                    println!("{}", entry.name);
                } else {
                    println!("{} - {}", entry.name, entry.provenance);
                }
            }
        }
        Ok(0)
    }
}
