mod instance;
mod plot;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use focus_core::corpus::{compare_with_oracle, random_instance, rng, Mismatch};
use focus_core::oracle::CLOSURE_CAP;
use focus_core::solver::{oracle_frontier, pareto_rentals, Among, FocusProp, Network};
use focus_core::springy::{min_cards, SpringyOptions};
use focus_core::{weighted, weighted_springy, Cover, Variant};
use rand_chacha::ChaCha8Rng;

use instance::InstanceFile;

/// Bounds-consistency filtering for FOCUS-family sequence constraints.
#[derive(Parser)]
#[command(name = "focus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter an instance and print the resulting bounds.
    ///
    /// Exit status: 0 feasible, 1 infeasible, 2 unreadable instance.
    Propagate(PropagateArgs),
    /// Compare every filter with the exhaustive closure on random instances.
    ///
    /// Exit status: 0 if no mismatch, 1 otherwise.
    Fuzz(FuzzArgs),
    /// Pareto front of (rentals, rented days) for the days and windows of an
    /// instance file.
    Pareto(ParetoArgs),
    /// Check that a cover witnesses the constraint on an assignment.
    ///
    /// Exit status: 0 valid, 1 violated, 2 unreadable input.
    Check(CheckArgs),
}

#[derive(Args)]
struct PropagateArgs {
    file: PathBuf,
    /// Print the table the filter builds, before filtering.
    #[arg(long)]
    dump_table: bool,
    /// Focus/Springy: prune X only when yc ends up fixed.
    #[arg(long)]
    fixed_yc_guard: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// Largest n the exhaustive closure accepts.
    #[arg(long, default_value_t = CLOSURE_CAP)]
    oracle_cap: usize,
    /// Restrict to one variant (focus, springy, focusw, focuswh).
    #[arg(long)]
    variant: Option<Variant>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ParetoArgs {
    file: PathBuf,
    /// Tolerances to run, one series each.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    h_list: Vec<usize>,
    /// CSV output (`yc,zc,h`); standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scatter plot of the fronts.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also compute each front by enumeration and fail on a difference.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Comma-separated values, one per variable.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    assignment: Vec<i64>,
    /// Comma-separated sequences `i-j` (or `i`); empty for no sequence.
    #[arg(long, default_value = "")]
    cover: String,
}

fn read_instance(path: &Path) -> Result<InstanceFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn propagate(args: PropagateArgs) -> anyhow::Result<ExitCode> {
    let file = match read_instance(&args.file) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let inst = &file.instance;
    let mut out = io::stdout().lock();
    if args.dump_table {
        let p = inst.params();
        let z = inst.zc().map_or(0, |z| z.hi());
        let table = match inst.variant() {
            Variant::Focus | Variant::Springy => Some(min_cards(inst.xs(), p).to_string()),
            Variant::Weighted => {
                weighted::build_dp_w(inst.xs(), p, z).map(|t| weighted::dump_table(&t, inst.xs()))
            }
            Variant::WeightedSpringy => weighted_springy::build_dp_wh(inst.xs(), p, z)
                .map(|t| weighted_springy::dump_table(&t, inst.xs())),
        };
        match table {
            Some(t) => writeln!(out, "{t}")?,
            None => writeln!(out, "no table: zc.hi is below the number of penalizing variables\n")?,
        }
    }
    let mut net = Network::new();
    let xs: Vec<usize> = inst.xs().iter().map(|&d| net.add_var(d)).collect();
    let yc = net.add_var(inst.yc());
    let zc = inst.zc().map(|z| net.add_var(z));
    let opts = SpringyOptions {
        fixed_yc_guard: args.fixed_yc_guard,
    };
    net.post(FocusProp::new(xs.clone(), yc, zc, *inst.params()).with_springy_options(opts));
    for a in &file.amongs {
        net.post(Among::new(xs.clone(), *a, inst.k()));
    }
    if net.fixpoint().is_err() {
        writeln!(out, "infeasible")?;
        return Ok(ExitCode::from(1));
    }
    writeln!(out, "feasible")?;
    for (i, &v) in xs.iter().enumerate() {
        writeln!(out, "x{i}: {}", net.domain(v))?;
    }
    writeln!(out, "yc: {}", net.domain(yc))?;
    if let Some(z) = zc {
        writeln!(out, "zc: {}", net.domain(z))?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Trial `t` draws from its own stream so results do not depend on how
/// trials are split between threads.
fn trial_rng(seed: u64, t: usize) -> ChaCha8Rng {
    let mut r = rng(seed);
    r.set_stream(t as u64);
    r
}

fn fuzz(args: FuzzArgs) -> anyhow::Result<ExitCode> {
    if args.n_max > args.oracle_cap {
        bail!("--n-max {} exceeds --oracle-cap {}", args.n_max, args.oracle_cap);
    }
    if args.n_max == 0 {
        bail!("--n-max must be at least 1");
    }
    let variants: Vec<Variant> = match args.variant {
        Some(v) => vec![v],
        None => Variant::ALL.to_vec(),
    };
    let threads = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, args.trials.max(1));
    let run = |w: usize| -> anyhow::Result<(usize, Option<(usize, Mismatch)>)> {
        let mut mismatches = 0;
        let mut first = None;
        for t in (w..args.trials).step_by(threads) {
            let v = variants[t % variants.len()];
            let inst = random_instance(&mut trial_rng(args.seed, t), v, args.n_max);
            if let Some(m) = compare_with_oracle(&inst, args.oracle_cap)? {
                mismatches += 1;
                first.get_or_insert((t, m));
            }
        }
        Ok((mismatches, first))
    };
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads).map(|w| s.spawn(move || run(w))).collect();
        handles.into_iter().map(|h| h.join().expect("fuzz worker panicked")).collect()
    });
    let mut total = 0;
    let mut first: Option<(usize, Mismatch)> = None;
    for r in results {
        let (count, m) = r?;
        total += count;
        if let Some((t, m)) = m {
            if first.as_ref().is_none_or(|(ft, _)| t < *ft) {
                first = Some((t, m));
            }
        }
    }
    let mut out = io::stdout().lock();
    writeln!(out, "# {} trials, {total} mismatches", args.trials)?;
    let Some((t, m)) = first else {
        return Ok(ExitCode::SUCCESS);
    };
    writeln!(out, "# first mismatch: trial {t} (seed {})", args.seed)?;
    writeln!(out, "# closure: {}", describe(&m.expected))?;
    writeln!(out, "# filter:  {}", describe(&m.found))?;
    let file = InstanceFile {
        instance: m.instance,
        amongs: Vec::new(),
    };
    write!(out, "{file}")?;
    Ok(ExitCode::from(1))
}

fn describe(r: &Result<focus_core::FocusInstance, focus_core::Infeasible>) -> String {
    match r {
        Ok(i) => i.to_string(),
        Err(e) => e.to_string(),
    }
}

fn pareto(args: ParetoArgs) -> anyhow::Result<ExitCode> {
    let file = match read_instance(&args.file) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let mut series = Vec::new();
    let mut failed = false;
    for &h in &args.h_list {
        let rentals = file.rentals(h);
        rentals
            .params()
            .validate(rentals.n())
            .with_context(|| format!("h = {h}"))?;
        let front = match pareto_rentals(&rentals) {
            Ok((front, stats)) => {
                eprintln!("h={h}: {} points, {} nodes", front.len(), stats.nodes);
                front
            }
            Err(e) => {
                eprintln!("h={h}: {e}");
                Vec::new()
            }
        };
        if args.verify {
            let expected = oracle_frontier(&rentals).unwrap_or_default();
            if expected != front {
                eprintln!("h={h}: enumeration gives {expected:?}");
                failed = true;
            }
        }
        series.push((h, front));
    }
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| p.display().to_string())?),
        None => Box::new(io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    csv.write_record(["yc", "zc", "h"])?;
    for (h, front) in &series {
        for &(y, z) in front {
            csv.serialize((y, z, h))?;
        }
    }
    csv.flush()?;
    if let Some(p) = &args.svg {
        fs::write(p, plot::scatter(&series)).with_context(|| p.display().to_string())?;
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn parse_cover(text: &str) -> Result<Cover, String> {
    let mut seqs = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = part.split_once('-').unwrap_or((part, part));
        let idx = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad sequence `{part}`"));
        seqs.push((idx(a)?, idx(b)?));
    }
    Cover::new(seqs).map_err(|e| e.to_string())
}

fn check(args: CheckArgs) -> anyhow::Result<ExitCode> {
    let file = match read_instance(&args.file) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let cover = match parse_cover(&args.cover) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let inst = &file.instance;
    match focus_core::check_cover(inst, &args.assignment, &cover) {
        Ok(()) => {
            println!("valid");
            Ok(ExitCode::SUCCESS)
        }
        Err(v) => {
            match v.condition(inst.variant()) {
                Some(c) => println!("violates condition {c}: {v}"),
                None => println!("malformed: {v}"),
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Propagate(a) => propagate(a),
        Command::Fuzz(a) => fuzz(a),
        Command::Pareto(a) => pareto(a),
        Command::Check(a) => check(a),
    };
    res.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
