//! `gridlock`: LO- and SG-polynomials of graphs from the command line.
//!
//! Exit status: 0 on success, 1 for other errors, 2 for unparsable input or
//! usage, 3 when `verify` finds disagreeing methods, 4 when a budget is
//! exhausted.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use gridlock::oracles::{self, Budgets};
use gridlock::{families, gen, io, Engine, EngineConfig, Error, Family, Graph, IntPolynomial};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(
    name = "gridlock",
    version,
    about = "Count locally-optimal colorings and strict gridlocks of graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the LO-polynomial.
    Lo(PolyArgs),
    /// Print the SG-polynomial (strict gridlocks).
    Sg(PolyArgs),
    /// Print the number of locally-optimal k-colorings.
    Eval(EvalArgs),
    /// Compute the LO-polynomial several ways and compare them.
    Verify(VerifyArgs),
    /// Print a named graph as JSON.
    Family(FamilyArgs),
    /// List the locally-optimal partitions.
    Partitions(PartitionArgs),
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// Graph file, JSON or edge list.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named graph: complete, path, cycle, star, triangle_chain,
    /// clique_cycle, clique_matching, or random (seeded connected graph).
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Size parameter for `--family`.
    #[arg(long, requires = "family")]
    param: Option<u32>,
    /// Seed for `--family random`.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest k^|V| the brute-force oracle may enumerate.
    #[arg(long, default_value_t = oracles::DEFAULT_COLORING_BUDGET)]
    budget_colorings: u128,
    /// Largest number of set partitions the partition oracle may visit.
    #[arg(long, default_value_t = oracles::DEFAULT_PARTITION_BUDGET)]
    budget_partitions: u128,
    /// Cache engine results by normalized term.
    #[arg(long)]
    memo: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
    /// Print the value at this k instead of the polynomial.
    #[arg(long)]
    eval_at: Option<u32>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
    /// Number of colors.
    #[arg(long = "k", visible_alias = "eval-at")]
    k: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    /// Compare values at k = 0..=max-k.
    #[arg(long, default_value_t = 3)]
    max_k: u32,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    name: String,
    param: Option<u32>,
    /// Seed for the `random` family.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Engine,
    Partitions,
    BruteforceInterp,
}

/// Raised by `verify`; mapped to its own exit status.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Json(_)) => 2,
        Some(Error::BudgetExceeded { .. }) => 4,
        _ => 1,
    }
}

fn load(input: &Input) -> anyhow::Result<Graph> {
    if let Some(path) = &input.source.input {
        return io::read_graph(path).with_context(|| format!("reading {}", path.display()));
    }
    let name = input
        .source
        .family
        .as_deref()
        .expect("clap requires a source");
    family_graph(name, input.param, input.seed)
}

fn family_graph(name: &str, param: Option<u32>, seed: u64) -> anyhow::Result<Graph> {
    if name == "random" {
        let Some(n) = param else {
            bail!(Error::FamilyParameter("random needs a vertex count".into()));
        };
        return Ok(gen::random_connected(n, 0.4, seed));
    }
    Ok(families::build(Family::parse(name, param)?)?)
}

fn budgets(c: &Common) -> Budgets {
    Budgets {
        colorings: c.budget_colorings,
        partitions: c.budget_partitions,
        workers: c.workers,
    }
}

fn engine(c: &Common) -> Engine {
    Engine::new(EngineConfig {
        memo: c.memo,
        workers: c.workers,
        ..Default::default()
    })
}

fn lo_with(oracle: Oracle, g: &Graph, c: &Common) -> anyhow::Result<IntPolynomial> {
    Ok(match oracle {
        Oracle::Engine => engine(c).lo_polynomial(g)?,
        Oracle::Partitions => oracles::lo_polynomial_via_partitions(g, &budgets(c))?,
        Oracle::BruteforceInterp => oracles::lo_polynomial_via_interpolation(g, &budgets(c))?,
    })
}

/// Exact LO count at `k`: by the chosen oracle's polynomial, or with no
/// choice by direct enumeration when `k^|V|` fits the budget and by the
/// engine otherwise.
fn lo_value(g: &Graph, k: u32, oracle: Option<Oracle>, c: &Common) -> anyhow::Result<BigInt> {
    match oracle {
        Some(o) => Ok(lo_with(o, g, c)?.evaluate(k)),
        None => match oracles::brute_force_lo_count(g, k, &budgets(c)) {
            Ok(n) => Ok(BigInt::from(n)),
            Err(Error::BudgetExceeded { .. }) => Ok(engine(c).lo_polynomial(g)?.evaluate(k)),
            Err(e) => Err(e.into()),
        },
    }
}

fn sg_value(g: &Graph, lo: BigInt, k: u32) -> BigInt {
    if g.is_empty() {
        BigInt::from(0)
    } else if g.min_voting_degree().unwrap_or(0) >= 1 {
        lo - k
    } else {
        lo
    }
}

fn print_poly(p: &IntPolynomial, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", p.to_json()),
    }
}

fn print_value(k: u32, value: &BigInt, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", json!({"k": k, "value": value.to_string()})),
    }
}

fn cmd_poly(args: &PolyArgs, sg: bool) -> anyhow::Result<()> {
    let g = load(&args.input)?;
    let c = &args.common;
    if let Some(k) = args.eval_at {
        let lo = lo_value(&g, k, args.oracle, c)?;
        let value = if sg { sg_value(&g, lo, k) } else { lo };
        print_value(k, &value, c.format);
        return Ok(());
    }
    let lo = lo_with(args.oracle.unwrap_or(Oracle::Engine), &g, c)?;
    let p = if sg {
        gridlock::sg_from_lo(&g, &lo)
    } else {
        lo
    };
    print_poly(&p, c.format);
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> anyhow::Result<()> {
    let g = load(&args.input)?;
    let value = lo_value(&g, args.k, args.oracle, &args.common)?;
    print_value(args.k, &value, args.common.format);
    Ok(())
}

/// Values per method at each sampled k, with a verdict.
#[derive(Debug, Default)]
struct Report {
    polynomials: BTreeMap<&'static str, IntPolynomial>,
    skipped: BTreeMap<&'static str, String>,
    samples: Vec<(u32, BTreeMap<&'static str, BigInt>)>,
}

impl Report {
    fn disagreements(&self) -> Vec<u32> {
        let mut bad = Vec::new();
        let mut polys = self.polynomials.values();
        if let Some(first) = polys.next() {
            if polys.any(|p| p != first) {
                bad.push(u32::MAX);
            }
        }
        for (k, values) in &self.samples {
            let mut it = values.values();
            if let Some(first) = it.next() {
                if it.any(|x| x != first) {
                    bad.push(*k);
                }
            }
        }
        bad
    }

    fn method_count(&self) -> usize {
        self.polynomials.len()
            + usize::from(
                self.samples
                    .iter()
                    .any(|(_, v)| v.contains_key("brute-force")),
            )
    }

    fn to_json(&self) -> Value {
        json!({
            "polynomials": self.polynomials.iter().map(|(m, p)| (m.to_string(), p.to_json())).collect::<serde_json::Map<_, _>>(),
            "skipped": self.skipped,
            "samples": self.samples.iter().map(|(k, vals)| {
                let mut it = vals.values();
                let agree = it.next().is_none_or(|f| it.all(|x| x == f));
                json!({
                    "k": k,
                    "values": vals.iter().map(|(m, v)| (m.to_string(), Value::from(v.to_string()))).collect::<serde_json::Map<_, _>>(),
                    "agree": agree,
                })
            }).collect::<Vec<_>>(),
            "agree": self.disagreements().is_empty(),
        })
    }

    fn print_text(&self) {
        for (m, p) in &self.polynomials {
            println!("{m}: {p}");
        }
        for (m, why) in &self.skipped {
            println!("{m}: skipped ({why})");
        }
        for (k, vals) in &self.samples {
            let cells: Vec<String> = vals.iter().map(|(m, v)| format!("{m} {v}")).collect();
            let mut it = vals.values();
            let agree = it.next().is_none_or(|f| it.all(|x| x == f));
            println!(
                "k={k}: {}: {}",
                cells.join(", "),
                if agree { "agree" } else { "DISAGREE" }
            );
        }
    }

    /// `Ok` when at least two methods ran and all of them agree.
    fn verdict(&self) -> anyhow::Result<()> {
        let bad = self.disagreements();
        if !bad.is_empty() {
            let at: Vec<String> = bad
                .iter()
                .map(|&k| {
                    if k == u32::MAX {
                        "polynomials".to_string()
                    } else {
                        format!("k={k}")
                    }
                })
                .collect();
            return Err(Mismatch(format!("methods disagree at {}", at.join(", "))).into());
        }
        if self.method_count() < 2 {
            bail!("fewer than two methods fit the budgets; nothing was cross-checked");
        }
        Ok(())
    }
}

fn keep_or_skip<T>(
    skipped: &mut BTreeMap<&'static str, String>,
    name: &'static str,
    r: gridlock::Result<T>,
) -> anyhow::Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e @ (Error::BudgetExceeded { .. } | Error::Precondition(_))) => {
            skipped.insert(name, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn build_report(g: &Graph, c: &Common, max_k: u32) -> anyhow::Result<Report> {
    let b = budgets(c);
    let mut r = Report::default();
    let attempts = [
        ("engine", engine(c).lo_polynomial(g)),
        ("partitions", oracles::lo_polynomial_via_partitions(g, &b)),
        (
            "bruteforce-interp",
            oracles::lo_polynomial_via_interpolation(g, &b),
        ),
    ];
    for (name, res) in attempts {
        if let Some(p) = keep_or_skip(&mut r.skipped, name, res)? {
            r.polynomials.insert(name, p);
        }
    }
    for k in 0..=max_k {
        let mut values: BTreeMap<&'static str, BigInt> = r
            .polynomials
            .iter()
            .map(|(m, p)| (*m, p.evaluate(k)))
            .collect();
        let mut skipped = BTreeMap::new();
        if let Some(n) = keep_or_skip(
            &mut skipped,
            "brute-force",
            oracles::brute_force_lo_count(g, k, &b),
        )? {
            values.insert("brute-force", BigInt::from(n));
        }
        for (m, why) in skipped {
            r.skipped.entry(m).or_insert(format!("{why} (from k={k})"));
        }
        r.samples.push((k, values));
    }
    Ok(r)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<()> {
    let g = load(&args.input)?;
    let report = build_report(&g, &args.common, args.max_k)?;
    match args.common.format {
        Format::Text => report.print_text(),
        Format::Json => println!("{}", report.to_json()),
    }
    report.verdict()
}

fn cmd_family(args: &FamilyArgs) -> anyhow::Result<()> {
    let g = family_graph(&args.name, args.param, args.seed)?;
    println!("{}", io::to_json(&g));
    Ok(())
}

fn cmd_partitions(args: &PartitionArgs) -> anyhow::Result<()> {
    let g = load(&args.input)?;
    let parts = oracles::enumerate_lo_partitions(&g, &budgets(&args.common))?;
    match args.common.format {
        Format::Text => {
            for p in &parts {
                let blocks: Vec<String> = p
                    .blocks
                    .iter()
                    .map(|b| {
                        format!(
                            "{{{}}}",
                            b.iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        )
                    })
                    .collect();
                println!("{}", blocks.join(" "));
            }
            println!("total: {}", parts.len());
        }
        Format::Json => {
            let doc: Vec<Vec<Vec<u32>>> = parts
                .iter()
                .map(|p| {
                    p.blocks
                        .iter()
                        .map(|b| b.iter().map(|v| v.0).collect())
                        .collect()
                })
                .collect();
            println!("{}", json!({ "partitions": doc, "total": parts.len() }));
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.cmd {
        Cmd::Lo(a) => cmd_poly(a, false),
        Cmd::Sg(a) => cmd_poly(a, true),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Family(a) => cmd_family(a),
        Cmd::Partitions(a) => cmd_partitions(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(values: &[(u32, &[(&'static str, i64)])]) -> Report {
        Report {
            samples: values
                .iter()
                .map(|(k, vs)| (*k, vs.iter().map(|&(m, v)| (m, BigInt::from(v))).collect()))
                .collect(),
            ..Default::default()
        }
    }

    #[test]
    fn mismatches_exit_with_three() {
        let mut r = report(&[(2, &[("engine", 4), ("brute-force", 5)])]);
        r.polynomials.insert("engine", IntPolynomial::k());
        let err = r.verdict().unwrap_err();
        assert_eq!(exit_code(&err), 3);
        assert!(err.to_string().contains("k=2"));
    }

    #[test]
    fn disagreeing_polynomials_are_mismatches() {
        let mut r = report(&[]);
        r.polynomials.insert("engine", IntPolynomial::k());
        r.polynomials
            .insert("partitions", IntPolynomial::monomial(2));
        assert_eq!(exit_code(&r.verdict().unwrap_err()), 3);
    }

    #[test]
    fn a_single_method_is_not_a_verification() {
        let mut r = report(&[(1, &[("engine", 1)])]);
        r.polynomials.insert("engine", IntPolynomial::k());
        assert_eq!(exit_code(&r.verdict().unwrap_err()), 1);
    }

    #[test]
    fn error_codes() {
        let budget = anyhow::Error::from(Error::BudgetExceeded {
            what: "coloring",
            needed: "9".into(),
            budget: 1,
        });
        assert_eq!(exit_code(&budget), 4);
        let parse = anyhow::Error::from(Error::Parse {
            line: 1,
            msg: "x".into(),
        });
        assert_eq!(exit_code(&parse), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
