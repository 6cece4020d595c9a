use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pbf_core::analysis::{analyze, AnalysisReport};
use pbf_core::calculus::{apply_sequence, OpSequence};
use pbf_core::decomposition::decompose;
use pbf_core::games::{
    extremal_outcomes, marginal_contribution, order_irrelevant, parse_coalition, sequential_outcome, worth, AskOrder,
};
use pbf_core::io::{parse_table_json, parse_table_text};
use pbf_core::permutability::{
    has_p_permutable_derivatives, has_p_permutable_derivatives_exhaustive, max_permutability_degree,
    PermutabilityCounterexample,
};
use pbf_core::polyform::MultilinearPolynomial;
use pbf_core::reconstruction::{profile_of, reconstruct, DerivativeProfile, ReconstructionResult};
use pbf_core::sweep::{claims, run_sweep, SweepConfig, SweepResult};
use pbf_core::symmetric::{detect_symmetric, SymmetricSequence};
use pbf_core::{local_monotonicity_degree, FunctionTable};

#[derive(Parser)]
#[command(
    name = "pbf",
    version,
    about = "Analyze pseudo-Boolean functions with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Truth table file: arity, then 2^n values ("-" reads stdin)
    #[arg(long, value_name = "FILE")]
    table: Option<PathBuf>,
    /// Truth table as JSON: {"arity": n, "values": [...]}
    #[arg(long, value_name = "FILE")]
    table_json: Option<PathBuf>,
    /// Multilinear expression, e.g. "x1 - x1*x2 + x2*x3"
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    expr: Option<String>,
    /// Symmetric function given by its values on weights 0..n, e.g. "0,1,1,0"
    #[arg(long, value_name = "SEQ", allow_hyphen_values = true)]
    seq: Option<String>,
}

#[derive(Args, Clone)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Arity for --expr when larger than the highest variable used
    #[arg(long, requires = "expr")]
    arity: Option<usize>,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: degrees, witnesses, symmetry, decomposition
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Apply a derivative sequence such as "v2 ^1" (rightmost first)
    Derive {
        #[command(flatten)]
        input: Input,
        /// Operators: dK (difference), ^K (meet), vK (join)
        #[arg(long, allow_hyphen_values = true)]
        ops: String,
        #[command(flatten)]
        out: Output,
    },
    /// List the p-ary sections
    Sections {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Permutability of lattice derivatives
    Permute {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "max", required_unless_present = "max")]
        p: Option<usize>,
        /// Largest p with p-permutable derivatives
        #[arg(long)]
        max: bool,
        /// Enumerate every ordering instead of comparing extremal ones
        #[arg(long, requires = "p")]
        exhaustive: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Rebuild a function from its meet and join derivatives
    Reconstruct {
        /// Profile JSON: {"arity": n, "meet": [[...], ...], "join": [[...], ...]}
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Derivative profile of a function, as accepted by `reconstruct`
    Profile {
        #[command(flatten)]
        input: Input,
    },
    /// Sequence calculus for symmetric functions
    Symmetric {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Cooperative game reading
    Game {
        #[command(subcommand)]
        command: GameCommand,
    },
    /// Pseudo-polynomial decomposition of a monotone function
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Check the structural theorems on exhaustive and random populations
    Sweep {
        /// Claim identifier; repeat for several, omit for all
        #[arg(long = "claim")]
        claims: Vec<String>,
        /// Exhaustive Boolean population of exactly this arity
        #[arg(long, conflicts_with = "max_arity")]
        arity: Option<usize>,
        /// Exhaustive Boolean population of arities 1..=N
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the claim registry and exit
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum GameCommand {
    /// f(C)
    Worth {
        #[command(flatten)]
        input: Input,
        /// Players in the coalition, e.g. "1,3"
        #[arg(long, default_value = "")]
        coalition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Marginal contribution of a player to C
    Contrib {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        player: usize,
        /// Players in the coalition, e.g. "1,3"
        #[arg(long, default_value = "")]
        coalition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Outcome when players are asked in the given order, e.g. "1:mal,2:ben"
    Outcome {
        #[command(flatten)]
        input: Input,
        /// Player roles such as "1:mal,2:ben", first asked first
        #[arg(long)]
        order: String,
        /// Players in the coalition, e.g. "1,3"
        #[arg(long, default_value = "")]
        coalition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Least and greatest outcome over all ask orders for the given roles
    Extremes {
        #[command(flatten)]
        input: Input,
        /// Player roles such as "1:mal,2:ben", first asked first
        #[arg(long)]
        order: String,
        /// Players in the coalition, e.g. "1,3"
        #[arg(long, default_value = "")]
        coalition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Whether ask order ever matters for the given players
    Audit {
        #[command(flatten)]
        input: Input,
        /// Players to audit, e.g. "1,2,3"
        #[arg(long)]
        players: String,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    /// Bad input or arguments: exit code 2.
    Usage(String),
    /// A claim failed in a sweep: exit code 1.
    Counterexample,
}

impl From<pbf_core::Error> for Failure {
    fn from(e: pbf_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<(String, FunctionTable), Failure> {
    let s = &input.source;
    if let Some(path) = &s.table {
        Ok((path.display().to_string(), parse_table_text(&read_file(path)?)?))
    } else if let Some(path) = &s.table_json {
        Ok((path.display().to_string(), parse_table_json(&read_file(path)?)?))
    } else if let Some(expr) = &s.expr {
        let poly = match input.arity {
            Some(n) => MultilinearPolynomial::parse_with_arity(expr, n)?,
            None => MultilinearPolynomial::parse(expr)?,
        };
        Ok((expr.clone(), poly.to_table()))
    } else if let Some(seq) = &s.seq {
        let seq: SymmetricSequence = seq.parse()?;
        Ok((format!("sequence {seq}"), seq.to_function()))
    } else {
        Err(Failure::Usage("no input given".into()))
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn show_counterexample(c: &PermutabilityCounterexample) {
    println!(
        "  {} = {} but {} = {} at {}",
        c.first, c.first_value, c.second, c.second_value, c.point
    );
}

fn print_report(r: &AnalysisReport) {
    println!("source: {}", r.source);
    println!("arity: {}", r.arity);
    println!("table: {}", r.table);
    println!("polynomial: {}", r.polynomial);
    println!("boolean: {}", yes_no(r.boolean));
    let ess: Vec<String> = r.essential_variables.iter().map(|i| format!("x{i}")).collect();
    println!(
        "essential variables: {}",
        if ess.is_empty() { "none".into() } else { ess.join(" ") }
    );
    println!("monotone: {}", yes_no(r.monotone));
    println!("local monotonicity degree: {}", r.local_monotonicity.degree);
    if let Some(w) = &r.local_monotonicity.witness {
        println!(
            "  d{} changes sign: {} at {}, {} at {} (distance {})",
            w.k,
            w.delta_x,
            w.x,
            w.delta_y,
            w.y,
            w.distance()
        );
    }
    match &r.permutability {
        Some(p) => {
            println!("permutability degree: {}", p.max_p);
            if let Some(c) = &p.counterexample {
                show_counterexample(c);
            }
        }
        None => println!("permutability degree: not computed (arity too large)"),
    }
    match &r.symmetric {
        Some(s) => println!("symmetric: {s}"),
        None => println!("symmetric: no"),
    }
    println!("forbidden binary sections: {}", r.forbidden_sections.len());
    for s in r.forbidden_sections.iter().take(8) {
        println!("  x{}, x{} at {}: {:?}", s.j, s.k, s.base, s.kind);
    }
    if r.forbidden_sections.len() > 8 {
        println!("  ...");
    }
    if let Some(d) = &r.decomposition {
        let o: Vec<String> = d.orientations.iter().map(|o| format!("{o:?}").to_lowercase()).collect();
        println!(
            "decomposition: min {}, max {}, orientations {}",
            d.min,
            d.max,
            o.join(" ")
        );
    }
}

fn cmd_analyze(input: &Input, out: Output) -> Outcome {
    let (source, f) = load(input)?;
    let report = analyze(source, &f);
    if out.json {
        print_json(&report)
    } else {
        print_report(&report);
        Ok(())
    }
}

fn cmd_derive(input: &Input, ops: &str, out: Output) -> Outcome {
    let (_, f) = load(input)?;
    let seq: OpSequence = ops.parse()?;
    let g = apply_sequence(&f, &seq)?;
    if out.json {
        return print_json(&g);
    }
    println!("{seq}: {g}");
    println!("polynomial: {}", MultilinearPolynomial::from_table(&g));
    Ok(())
}

fn cmd_sections(input: &Input, p: usize, out: Output) -> Outcome {
    let (_, f) = load(input)?;
    let sections: Vec<_> = f.sections_of_arity(p)?.collect();
    if out.json {
        #[derive(Serialize)]
        struct Row {
            subset: Vec<usize>,
            base: String,
            table: FunctionTable,
        }
        let rows: Vec<Row> = sections
            .into_iter()
            .map(|s| Row {
                subset: s.subset.indices(),
                base: s.base.to_string(),
                table: s.table,
            })
            .collect();
        return print_json(&rows);
    }
    for s in sections {
        println!("{} {} {}", s.subset, s.base, s.table);
    }
    Ok(())
}

fn cmd_permute(input: &Input, p: Option<usize>, exhaustive: bool, out: Output) -> Outcome {
    let (_, f) = load(input)?;
    match p {
        Some(p) => {
            let check = if exhaustive {
                has_p_permutable_derivatives_exhaustive(&f, p)?
            } else {
                has_p_permutable_derivatives(&f, p)?
            };
            if out.json {
                return print_json(&check);
            }
            println!("{p}-permutable: {}", yes_no(check.holds));
            if let Some(c) = &check.counterexample {
                show_counterexample(c);
            }
        }
        None => {
            let report = max_permutability_degree(&f)?;
            if out.json {
                return print_json(&report);
            }
            println!("permutability degree: {}", report.max_p);
            if let Some(c) = &report.counterexample {
                show_counterexample(c);
            }
        }
    }
    Ok(())
}

fn cmd_reconstruct(path: &PathBuf, out: Output) -> Outcome {
    let text = read_file(path)?;
    let profile: DerivativeProfile =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid profile: {e}")))?;
    let result = reconstruct(&profile);
    if out.json {
        return print_json(&result);
    }
    match &result {
        ReconstructionResult::Unique { table } => println!("unique: {table}"),
        ReconstructionResult::ParityPair { u, v, .. } => {
            println!("parity pair: {u} on even weight and {v} on odd weight, or the swap");
            for g in result.candidates() {
                println!("  {g}");
            }
        }
        ReconstructionResult::Inconsistent { witness } => println!(
            "inconsistent: {:?} on the x{} edge at {}",
            witness.kind, witness.k, witness.point
        ),
    }
    Ok(())
}

fn cmd_profile(input: &Input) -> Outcome {
    let (_, f) = load(input)?;
    print_json(&profile_of(&f)?)
}

fn cmd_symmetric(input: &Input, out: Output) -> Outcome {
    let (_, f) = load(input)?;
    let Some(s) = detect_symmetric(&f) else {
        return Err(Failure::Usage("the function is not symmetric".into()));
    };
    #[derive(Serialize)]
    struct Report {
        sequence: SymmetricSequence,
        degree: usize,
        meet: Option<SymmetricSequence>,
        join: Option<SymmetricSequence>,
        meet_degree: Option<usize>,
        join_degree: Option<usize>,
        permutability_degree: Option<usize>,
    }
    let meet = s.meet().ok();
    let join = s.join().ok();
    let report = Report {
        degree: s.local_monotonicity_degree(),
        meet_degree: meet.as_ref().map(SymmetricSequence::local_monotonicity_degree),
        join_degree: join.as_ref().map(SymmetricSequence::local_monotonicity_degree),
        permutability_degree: max_permutability_degree(&f).ok().map(|r| r.max_p),
        sequence: s,
        meet,
        join,
    };
    if out.json {
        return print_json(&report);
    }
    println!("sequence: {}", report.sequence);
    println!("local monotonicity degree: {}", report.degree);
    if let (Some(m), Some(d)) = (&report.meet, report.meet_degree) {
        println!("meet sequence: {m} (degree {d})");
    }
    if let (Some(j), Some(d)) = (&report.join, report.join_degree) {
        println!("join sequence: {j} (degree {d})");
    }
    match report.permutability_degree {
        Some(p) => println!("permutability degree: {p}"),
        None => println!("permutability degree: not computed"),
    }
    Ok(())
}

fn cmd_game(command: &GameCommand) -> Outcome {
    match command {
        GameCommand::Worth { input, coalition, out } => {
            let (_, f) = load(input)?;
            let c = parse_coalition(f.arity(), coalition)?;
            let v = worth(&f, &c)?;
            if out.json {
                return print_json(&v);
            }
            println!("{v}");
        }
        GameCommand::Contrib {
            input,
            player,
            coalition,
            out,
        } => {
            let (_, f) = load(input)?;
            let c = parse_coalition(f.arity(), coalition)?;
            let v = marginal_contribution(&f, *player, &c)?;
            if out.json {
                return print_json(&v);
            }
            println!("{v}");
        }
        GameCommand::Outcome {
            input,
            order,
            coalition,
            out,
        } => {
            let (_, f) = load(input)?;
            let c = parse_coalition(f.arity(), coalition)?;
            let order: AskOrder = order.parse()?;
            let v = sequential_outcome(&f, &c, &order)?;
            if out.json {
                return print_json(&v);
            }
            println!("{v}");
        }
        GameCommand::Extremes {
            input,
            order,
            coalition,
            out,
        } => {
            let (_, f) = load(input)?;
            let c = parse_coalition(f.arity(), coalition)?;
            let order: AskOrder = order.parse()?;
            let e = extremal_outcomes(&f, &order, &c)?;
            if out.json {
                return print_json(&e);
            }
            println!("least: {}", e.least);
            println!("greatest: {}", e.greatest);
        }
        GameCommand::Audit { input, players, out } => {
            let (_, f) = load(input)?;
            let p = parse_coalition(f.arity(), players)?;
            let irrelevant = order_irrelevant(&f, &p)?;
            if out.json {
                return print_json(&serde_json::json!({ "order_irrelevant": irrelevant }));
            }
            println!("order irrelevant: {}", yes_no(irrelevant));
        }
    }
    Ok(())
}

fn cmd_decompose(input: &Input, out: Output) -> Outcome {
    let (_, f) = load(input)?;
    let d = decompose(&f);
    if out.json {
        return match &d {
            Some(d) => print_json(&d.summary()),
            None => print_json(&serde_json::json!({ "monotone": false })),
        };
    }
    match d {
        None => {
            let w = local_monotonicity_degree(&f).witness;
            println!("not monotone");
            if let Some(w) = w {
                println!("  d{} is {} at {} and {} at {}", w.k, w.delta_x, w.x, w.delta_y, w.y);
            }
        }
        Some(d) => {
            println!("min: {}", d.min());
            println!("max: {}", d.max());
            for (i, o) in d.orientations().iter().enumerate() {
                println!("phi{}: {}", i + 1, format!("{o:?}").to_lowercase());
            }
            let s = d.summary();
            let terms: Vec<String> = s
                .coefficients
                .iter()
                .filter(|(_, c)| *c != d.min())
                .map(|(k, c)| format!("{k}: {c}"))
                .collect();
            println!(
                "coefficients above min: {}",
                if terms.is_empty() {
                    "none".into()
                } else {
                    terms.join(", ")
                }
            );
        }
    }
    Ok(())
}

fn print_sweep(results: &[SweepResult]) {
    for r in results {
        let status = if r.ok() { "PASS" } else { "FAIL" };
        println!("{status} {} {}/{} in {} ms", r.claim, r.passed, r.checked, r.elapsed_ms);
        println!("  population: {}", r.population);
        for n in &r.notes {
            println!("  {n}");
        }
        if let Some(c) = &r.counterexample {
            println!(
                "  counterexample: {} (arity {}): {}",
                c.table,
                c.table.arity(),
                c.message
            );
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    ids: &[String],
    arity: Option<usize>,
    max_arity: usize,
    samples: usize,
    seed: u64,
    list: bool,
    out: Output,
) -> Outcome {
    if list {
        for c in claims() {
            println!("{:<42} {}", c.id, c.statement);
        }
        return Ok(());
    }
    let config = SweepConfig {
        min_arity: arity.unwrap_or(1),
        max_arity: arity.unwrap_or(max_arity),
        samples,
        seed,
    };
    let results = run_sweep(ids, &config)?;
    if out.json {
        print_json(&results)?;
    } else {
        print_sweep(&results);
    }
    if results.iter().all(SweepResult::ok) {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { input, out } => cmd_analyze(input, *out),
        Command::Derive { input, ops, out } => cmd_derive(input, ops, *out),
        Command::Sections { input, p, out } => cmd_sections(input, *p, *out),
        Command::Permute {
            input,
            p,
            max: _,
            exhaustive,
            out,
        } => cmd_permute(input, *p, *exhaustive, *out),
        Command::Reconstruct { profile, out } => cmd_reconstruct(profile, *out),
        Command::Profile { input } => cmd_profile(input),
        Command::Symmetric { input, out } => cmd_symmetric(input, *out),
        Command::Game { command } => cmd_game(command),
        Command::Decompose { input, out } => cmd_decompose(input, *out),
        Command::Sweep {
            claims,
            arity,
            max_arity,
            samples,
            seed,
            list,
            out,
        } => cmd_sweep(claims, *arity, *max_arity, *samples, *seed, *list, *out),
    }
}

fn main() -> ExitCode {
    // die quietly when piped into `head` instead of panicking on EPIPE
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
