use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use linres::betti::{betti_tables, hilbert_consistent};
use linres::criterion::{find_bad_configuration, has_linear_resolution_criterion, socle_monomials};
use linres::dual_graph::is_linearly_presented;
use linres::harness::{reisner_demo, run_sweep, Mode, SweepOptions, ValidationConfig};
use linres::io::parse_ideal;
use linres::quotients::{
    colon_trace, find_linear_quotient_order, has_linear_quotients_in_order,
    prefix_linear_presentation_check, tree_order,
};
use linres::render::{lattice_layout, render_dual_graph, Format};
use linres::{BettiTable, Characteristic, MonomialIdeal, ResolutionVerdict};

#[derive(Parser)]
#[command(
    name = "linres",
    version,
    about = "Linear resolutions of equigenerated monomial ideals"
)]
struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide linear resolution combinatorially, with a witness on failure.
    Check(PredicateArgs),
    /// Multigraded Betti numbers from upper Koszul complexes.
    Betti(BettiArgs),
    /// Tree ordering of the generators and its colon ideals.
    Order(OrderArgs),
    /// Socle monomials of S/I and the resulting bad configuration, if any.
    Socle(OracleArgs),
    /// Oracle regularity of the powers of an ideal.
    Power(PowerArgs),
    /// Draw the degree-d lattice with the generators highlighted.
    Render(RenderArgs),
    /// Cross-check every ideal of one degree.
    Sweep(SweepArgs),
    /// Regularity of the projective-plane Stanley-Reisner ideal.
    Reisner(CharArgs),
}

#[derive(Args)]
struct IdealArgs {
    /// Generators, comma or newline separated, or a file containing them.
    #[arg(long)]
    ideal: String,

    /// Number of variables; the names x, y, z are available up to 3.
    #[arg(long, default_value_t = 3)]
    vars: usize,
}

#[derive(Args)]
struct CharArgs {
    /// Field characteristic: 0 or a prime. Repeatable.
    #[arg(long = "char", value_parser = parse_char)]
    chars: Vec<Characteristic>,
}

#[derive(Args)]
struct PredicateArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    /// Exit with status 1 when the verdict is negative.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    #[command(flatten)]
    chars: CharArgs,

    /// Report Betti numbers of S/I instead of I.
    #[arg(long)]
    quotient: bool,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    /// Also run the exact search for an order with linear quotients.
    #[arg(long)]
    search: bool,

    /// Exit with status 1 unless the tree order gives linear quotients.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    #[command(flatten)]
    chars: CharArgs,
}

#[derive(Args)]
struct PowerArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    #[command(flatten)]
    chars: CharArgs,

    /// Largest power to compute.
    #[arg(long, default_value_t = 2)]
    powers: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Svg,
    Json,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    ideal: IdealArgs,

    #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
    format: RenderFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepMode {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    degree: u32,

    #[arg(long, value_enum, default_value_t = SweepMode::Exhaustive)]
    mode: SweepMode,

    /// Number of sampled ideals.
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Largest power checked for ideals with a linear resolution.
    #[arg(long, default_value_t = 2)]
    powers: u32,

    #[command(flatten)]
    chars: CharArgs,

    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Run the exact order search and canonical-order checks even above degree 4.
    #[arg(long)]
    full_checks: bool,

    /// Permit exhaustive sweeps above degree 4.
    #[arg(long)]
    allow_large: bool,

    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

fn parse_char(s: &str) -> Result<Characteristic, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    Characteristic::new(p).map_err(|e| e.to_string())
}

/// Failures the user can fix; they exit with status 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(result: anyhow::Result<T>) -> anyhow::Result<T> {
    result.map_err(|e| UsageError(e).into())
}

impl IdealArgs {
    fn load(&self) -> anyhow::Result<MonomialIdeal> {
        usage(self.load_inner())
    }

    fn load_inner(&self) -> anyhow::Result<MonomialIdeal> {
        let path = Path::new(&self.ideal);
        let text = if path.is_file() {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        } else {
            self.ideal.clone()
        };
        let parsed = parse_ideal(&text, self.vars)?;
        for warning in parsed.warnings() {
            eprintln!("warning: {warning}");
        }
        Ok(parsed.ideal)
    }

    fn load_equigenerated(&self) -> anyhow::Result<(MonomialIdeal, u32)> {
        let ideal = self.load()?;
        let d = usage(ideal.require_equigenerated().map_err(Into::into))?;
        Ok((ideal, d))
    }

    fn load_three_vars(&self) -> anyhow::Result<(MonomialIdeal, u32)> {
        if self.vars != 3 {
            return usage(Err(anyhow::anyhow!("this command needs --vars 3")));
        }
        self.load_equigenerated()
    }
}

impl CharArgs {
    fn or_default(&self, default: &[u32]) -> Vec<Characteristic> {
        if self.chars.is_empty() {
            default
                .iter()
                .map(|&p| Characteristic::new(p).unwrap())
                .collect()
        } else {
            self.chars.clone()
        }
    }
}

/// What a command produced: machine output, a human summary, and whether
/// its verdict (if it has one) should fail the process.
struct Outcome {
    json: Value,
    summary: String,
    failed: bool,
}

impl Outcome {
    fn new(json: impl Serialize, summary: String) -> anyhow::Result<Self> {
        Ok(Outcome {
            json: serde_json::to_value(json)?,
            summary,
            failed: false,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if let Command::Render(args) = &cli.command {
        return render(args);
    }
    let outcome = match &cli.command {
        Command::Check(args) => check(args)?,
        Command::Betti(args) => betti(args)?,
        Command::Order(args) => order(args)?,
        Command::Socle(args) => socle(args)?,
        Command::Power(args) => power(args)?,
        Command::Sweep(args) => sweep(args)?,
        Command::Reisner(args) => reisner(args)?,
        Command::Render(_) => unreachable!(),
    };
    if cli.pretty {
        print!("{}", outcome.summary);
    } else {
        println!("{}", serde_json::to_string(&outcome.json)?);
    }
    Ok(if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn check(args: &PredicateArgs) -> anyhow::Result<Outcome> {
    let (ideal, d) = args.ideal.load_three_vars()?;
    let verdict = has_linear_resolution_criterion(&ideal)?;
    let linearly_presented = !matches!(verdict, ResolutionVerdict::Disconnected(_));
    let summary = match &verdict {
        ResolutionVerdict::Linear => format!("{ideal}\nlinear resolution: yes (degree {d})\n"),
        ResolutionVerdict::Disconnected(pair) => format!(
            "{ideal}\nlinear resolution: no\nnot linearly presented: G({}, {}) is disconnected\n",
            pair.first, pair.second
        ),
        ResolutionVerdict::BadConfiguration(w) => format!(
            "{ideal}\nlinear resolution: no\nbad configuration induced by {} (hits {}, {}, {})\n",
            w.inducer, w.hit_x, w.hit_y, w.hit_z
        ),
    };
    let mut outcome = Outcome::new(
        json!({
            "ideal": ideal,
            "degree": d,
            "linear_resolution": verdict.is_linear(),
            "linearly_presented": linearly_presented,
            "witness": verdict,
        }),
        summary,
    )?;
    outcome.failed = args.strict && !verdict.is_linear();
    Ok(outcome)
}

fn graded_summary(table: &BettiTable) -> String {
    let mut out = format!("characteristic {}:\n", table.characteristic());
    for ((i, j), rank) in table.graded() {
        out.push_str(&format!("  beta_{i},{j} = {rank}\n"));
    }
    match table.regularity() {
        Some(reg) => out.push_str(&format!("  regularity {reg}\n")),
        None => out.push_str("  empty table\n"),
    }
    out
}

fn betti(args: &BettiArgs) -> anyhow::Result<Outcome> {
    let ideal = args.ideal.load()?;
    let chars = args.chars.or_default(&[0]);
    let tables = betti_tables(&ideal, &chars)?;
    let mut summary = format!("{ideal}\n");
    let mut reports = Vec::new();
    for table in &tables {
        let hilbert = hilbert_consistent(&ideal, table);
        let shown = if args.quotient {
            table.to_quotient()
        } else {
            table.clone()
        };
        summary.push_str(&graded_summary(&shown));
        let mut value = serde_json::to_value(&shown)?;
        value["hilbert_consistent"] = json!(hilbert);
        reports.push(value);
    }
    Outcome::new(json!({ "ideal": ideal, "tables": reports }), summary)
}

fn order(args: &OrderArgs) -> anyhow::Result<Outcome> {
    let (ideal, _) = args.ideal.load_three_vars()?;
    if let Some(pair) = is_linearly_presented(&ideal)?.witness() {
        return usage(Err(anyhow::anyhow!(
            "no tree ordering: the ideal is not linearly presented (G({}, {}) is disconnected)",
            pair.first,
            pair.second
        )));
    }
    let tree = tree_order(&ideal)?;
    let trace = colon_trace(&ideal, tree.order())?;
    let verdict = has_linear_quotients_in_order(&ideal, tree.order())?;
    let prefix_failure = prefix_linear_presentation_check(&ideal, tree.order())?;
    let search = if args.search {
        Some(find_linear_quotient_order(&ideal)?.map(|order| {
            order
                .iter()
                .map(|&i| ideal.generators()[i].clone())
                .collect::<Vec<_>>()
        }))
    } else {
        None
    };

    let mut summary = String::from("tree order:\n");
    for step in &trace {
        let colon: Vec<String> = step.colon.iter().map(ToString::to_string).collect();
        summary.push_str(&format!(
            "  {:<10} colon ({}){}\n",
            step.generator.to_string(),
            colon.join(", "),
            if step.linear { "" } else { "  <- not linear" }
        ));
    }
    summary.push_str(&format!(
        "linear quotients: {}\n",
        if verdict.is_linear() { "yes" } else { "no" }
    ));
    let mut value = json!({
        "ideal": ideal,
        "tree_order": tree,
        "levels": tree.levels(),
        "colon_trace": trace,
        "linear_quotients": verdict.is_linear(),
        "first_prefix_not_linearly_presented": prefix_failure,
    });
    if let Some(found) = &search {
        value["search"] = json!(found);
        summary.push_str(&format!(
            "exact search: {}\n",
            if found.is_some() {
                "order found"
            } else {
                "no order exists"
            }
        ));
    }
    let mut outcome = Outcome::new(value, summary)?;
    outcome.failed = args.strict && !verdict.is_linear();
    Ok(outcome)
}

fn socle(args: &OracleArgs) -> anyhow::Result<Outcome> {
    let (ideal, d) = args.ideal.load_three_vars()?;
    let socle = socle_monomials(&ideal)?;
    let degrees: Vec<u32> = {
        let mut v: Vec<u32> = socle.iter().map(|m| m.degree()).collect();
        v.sort();
        v
    };
    let bad = find_bad_configuration(&ideal)?;
    let chars = args.chars.or_default(&[0]);
    let tables = betti_tables(&ideal, &chars)?;
    let back_twists: Vec<Value> = chars
        .iter()
        .zip(&tables)
        .map(|(c, t)| {
            let q = t.to_quotient();
            let mut shifts = Vec::new();
            for ((i, j), rank) in q.graded() {
                if i == 3 {
                    shifts.extend(std::iter::repeat_n(j - 3, rank as usize));
                }
            }
            json!({ "characteristic": c, "socle_degrees": shifts })
        })
        .collect();
    let names: Vec<String> = socle.iter().map(ToString::to_string).collect();
    let summary = format!(
        "socle monomials: {}\nbad configuration: {}\n",
        if names.is_empty() {
            "none".into()
        } else {
            names.join(", ")
        },
        bad.as_ref()
            .map_or("none".into(), |w| w.inducer.to_string())
    );
    Outcome::new(
        json!({
            "ideal": ideal,
            "degree": d,
            "socle": socle,
            "socle_degrees": degrees,
            "bad_configuration": bad,
            "back_twists": back_twists,
        }),
        summary,
    )
}

fn power(args: &PowerArgs) -> anyhow::Result<Outcome> {
    let (ideal, d) = args.ideal.load_equigenerated()?;
    if args.powers == 0 {
        return usage(Err(anyhow::anyhow!("--powers must be at least 1")));
    }
    let chars = args.chars.or_default(&[0]);
    let mut rows = Vec::new();
    let mut summary = String::new();
    for k in 1..=args.powers {
        let p = ideal.power(k)?;
        let tables = betti_tables(&p, &chars)?;
        let regs: Vec<Value> = chars
            .iter()
            .zip(&tables)
            .map(|(c, t)| {
                let reg = t.regularity();
                summary.push_str(&format!(
                    "I^{k}: {} generators, char {c}: regularity {}\n",
                    p.num_generators(),
                    reg.map_or("-".into(), |r| r.to_string())
                ));
                json!({
                    "characteristic": c,
                    "regularity": reg,
                    "linear_resolution": reg == Some((k * d) as i64),
                })
            })
            .collect();
        rows.push(json!({ "k": k, "num_generators": p.num_generators(), "oracle": regs }));
    }
    Outcome::new(json!({ "ideal": ideal, "powers": rows }), summary)
}

fn render(args: &RenderArgs) -> anyhow::Result<ExitCode> {
    let (ideal, _) = args.ideal.load_three_vars()?;
    let text = match args.format {
        RenderFormat::Dot => render_dual_graph(&ideal, Format::Dot)?,
        RenderFormat::Svg => render_dual_graph(&ideal, Format::Svg)?,
        RenderFormat::Json => serde_json::to_string(&lattice_layout(&ideal)?)? + "\n",
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: &SweepArgs) -> anyhow::Result<Outcome> {
    let mode = match args.mode {
        SweepMode::Exhaustive => Mode::Exhaustive,
        SweepMode::Sample => Mode::Sample {
            count: args.samples,
            seed: args.seed,
        },
    };
    let mut config = ValidationConfig::for_degree(args.degree);
    config.powers_up_to = args.powers;
    if !args.chars.chars.is_empty() {
        config.characteristics = args.chars.chars.clone();
    }
    if args.full_checks {
        config.search_orders = true;
        config.canonical_order_checks = true;
    }
    let options = SweepOptions {
        threads: args.threads,
        record_timing: args.timing,
        allow_large: args.allow_large,
    };
    if args.threads == Some(0) {
        bail!(UsageError(anyhow::anyhow!("--threads must be positive")));
    }
    let report = usage(run_sweep(args.degree, mode, &config, &options).map_err(Into::into))?;
    let mut summary = format!(
        "degree {}: {} ideals, {} linearly presented, {} with linear resolution, {} with linear quotients, {} bad configurations\n",
        report.degree,
        report.population,
        report.counts.linearly_presented,
        report.counts.linear_resolution,
        report.counts.linear_quotients_found,
        report.counts.bad_configurations,
    );
    for (name, tally) in &report.checks {
        summary.push_str(&format!(
            "  {name}: {} checked, {} failed\n",
            tally.evaluated, tally.failed
        ));
    }
    summary.push_str(&format!("mismatches: {}\n", report.mismatches.len()));
    for m in &report.mismatches {
        summary.push_str(&format!(
            "  ({}) {:?} {:?}\n",
            m.ideal, m.failed_checks, m.errors
        ));
    }
    let mut outcome = Outcome::new(&report, summary)?;
    outcome.failed = !report.is_clean();
    Ok(outcome)
}

fn reisner(args: &CharArgs) -> anyhow::Result<Outcome> {
    let chars = args.or_default(&[0, 2, 3]);
    let report = reisner_demo(&chars)?;
    let mut summary = format!("{}\n", report.ideal);
    for r in &report.results {
        summary.push_str(&format!(
            "char {}: regularity {}{}\n",
            r.characteristic,
            r.regularity,
            if r.linear_resolution {
                " (linear resolution)"
            } else {
                ""
            }
        ));
    }
    Outcome::new(&report, summary)
}
