//! Command-line surface: run property checkers, lattice operations, spectral
//! decompositions and the spin-factor reconstruction; emit JSON reports.
//!
//! Exit codes: 0 = pass, 1 = fail, 2 = inconclusive, 3 = usage/parse error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use jordankit::checks::SUITE_NAMES;
use jordankit::{
    certify_projection, compatible, join, meet, reconstruct_spin, run_named, spectral_decompose,
    verify_jordan, Algebra, AlgebraSpec, Element, Projection, Tolerances, Verdict,
};

use report::{LatticeOutcome, Report, ReportPayload, SpectralOutcome};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "jordankit", version, about = "Order-unit algebra and quantum-logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Algebra spec: inline JSON like {"kind":"matrix","ring":"C","m":3} or a file path
    #[arg(long)]
    algebra: String,
    /// Master seed for all sampling
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Trial budget per check
    #[arg(long, default_value_t = 500)]
    trials: u32,
    /// Tolerance overrides as name=value (repeatable)
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render a human-readable view on stdout instead of compact JSON
    #[arg(long)]
    pretty: bool,
    /// Omit the timestamp so identical runs emit byte-identical reports
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named checker or the full hypothesis suite
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// One of: spectrality, strong-states, gbit, covering, equivalence,
        /// irreducible, weak-symmetry, all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Spectral decomposition of a serialized element
    Spectral {
        #[command(flatten)]
        common: CommonArgs,
        /// Element JSON ({"algebra":…,"coords":[…]}) inline or as a file path
        #[arg(long)]
        element: String,
    },
    /// Lattice operations on serialized projections
    Lattice {
        #[command(flatten)]
        common: CommonArgs,
        /// One of: meet, join, compat, dim
        #[arg(long)]
        op: String,
        /// First projection (element JSON, inline or file path)
        #[arg(long)]
        p: String,
        /// Second projection (unused for dim)
        #[arg(long)]
        q: Option<String>,
    },
    /// Run the capacity-2 spin-factor reconstruction pipeline
    Reconstruct {
        #[command(flatten)]
        common: CommonArgs,
        /// Monte-Carlo samples for the invariant inner product
        #[arg(long, default_value_t = 10_000)]
        samples: u32,
    },
}

fn read_inline_or_file(value: &str) -> Result<String> {
    if value.trim_start().starts_with('{') {
        Ok(value.to_string())
    } else {
        std::fs::read_to_string(value).with_context(|| format!("reading {value}"))
    }
}

fn parse_algebra(value: &str) -> Result<Algebra> {
    let text = read_inline_or_file(value)?;
    let spec: AlgebraSpec = serde_json::from_str(&text).context("parsing algebra spec")?;
    Algebra::from_spec(&spec).map_err(|e| anyhow!(e.to_string()))
}

fn parse_element(value: &str, algebra: &Algebra) -> Result<Element> {
    let text = read_inline_or_file(value)?;
    let element: Element = serde_json::from_str(&text).context("parsing element")?;
    if element.algebra() != algebra {
        bail!("element belongs to {} but the run targets {}", element.algebra(), algebra);
    }
    Ok(element)
}

fn parse_tolerances(overrides: &[String]) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for entry in overrides {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| anyhow!("tolerance override `{entry}` is not NAME=VALUE"))?;
        let value: f64 = value.parse().with_context(|| format!("parsing value in `{entry}`"))?;
        tol.set_by_name(name.trim(), value).map_err(|e| anyhow!(e))?;
    }
    Ok(tol)
}

fn emit(report: &Report, common: &CommonArgs) -> Result<()> {
    let json = serde_json::to_string(report).context("serializing report")?;
    if let Some(path) = &common.out {
        std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    if common.pretty {
        println!("{}", report.render_pretty());
    } else {
        println!("{json}");
    }
    Ok(())
}

fn verdict_exit(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    let mut code = EXIT_PASS;
    for v in verdicts {
        match v {
            Verdict::Fail => return EXIT_FAIL,
            Verdict::Inconclusive => code = EXIT_INCONCLUSIVE,
            Verdict::Pass => {}
        }
    }
    code
}

fn cmd_check(common: &CommonArgs, suite: &str) -> Result<u8> {
    let algebra = parse_algebra(&common.algebra)?;
    let tol = parse_tolerances(&common.tol)?;
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        bail!("unknown suite `{suite}`; expected one of {:?} or `all`", SUITE_NAMES);
    };
    let reports: Vec<_> = names
        .iter()
        .map(|name| run_named(name, &algebra, common.trials, common.seed, &tol))
        .collect::<Result<Vec<_>, String>>()
        .map_err(|e| anyhow!(e))?;
    let exit = verdict_exit(reports.iter().map(|r| r.verdict));
    let report = Report::new("check", &algebra, common, &tol, ReportPayload::Checks(reports));
    emit(&report, common)?;
    Ok(exit)
}

fn cmd_spectral(common: &CommonArgs, element: &str) -> Result<u8> {
    let algebra = parse_algebra(&common.algebra)?;
    let tol = parse_tolerances(&common.tol)?;
    let a = parse_element(element, &algebra)?;
    let dec = spectral_decompose(&a, &tol);
    let residual = dec.reconstruct(&algebra).sub(&a).coord_inf_norm();
    let outcome = SpectralOutcome {
        element: a,
        eigenvalues: dec.eigenvalues(),
        atoms: dec.groups.iter().flat_map(|g| g.atoms.iter().cloned()).collect(),
        atom_counts: dec.groups.iter().map(|g| g.atoms.len()).collect(),
        reconstruction_residual: residual,
    };
    let report =
        Report::new("spectral", &algebra, common, &tol, ReportPayload::Spectral(Box::new(outcome)));
    emit(&report, common)?;
    Ok(EXIT_PASS)
}

fn cmd_lattice(common: &CommonArgs, op: &str, p: &str, q: Option<&str>) -> Result<u8> {
    let algebra = parse_algebra(&common.algebra)?;
    let tol = parse_tolerances(&common.tol)?;
    let certify = |value: &str| -> Result<Projection> {
        let element = parse_element(value, &algebra)?;
        certify_projection(&element, &tol).map_err(|e| anyhow!(e.to_string()))
    };
    let p = certify(p)?;
    let need_q = |q: Option<&str>| -> Result<Projection> {
        certify(q.ok_or_else(|| anyhow!("--q is required for `{op}`"))?)
    };
    let outcome = match op {
        "meet" => {
            let q = need_q(q)?;
            let x = meet(&p, &q, &tol);
            LatticeOutcome::element(op, x.element().clone(), x.rank())
        }
        "join" => {
            let q = need_q(q)?;
            let x = join(&p, &q, &tol);
            LatticeOutcome::element(op, x.element().clone(), x.rank())
        }
        "compat" => {
            let q = need_q(q)?;
            LatticeOutcome::flag(op, compatible(&p, &q, &tol))
        }
        "dim" => LatticeOutcome::count(op, p.rank()),
        other => bail!("unknown lattice op `{other}`; expected meet|join|compat|dim"),
    };
    let report = Report::new("lattice", &algebra, common, &tol, ReportPayload::Lattice(outcome));
    emit(&report, common)?;
    Ok(EXIT_PASS)
}

fn cmd_reconstruct(common: &CommonArgs, samples: u32) -> Result<u8> {
    let algebra = parse_algebra(&common.algebra)?;
    let tol = parse_tolerances(&common.tol)?;
    if algebra.capacity() != 2 {
        bail!("reconstruction needs information capacity 2, {algebra} has {}", algebra.capacity());
    }
    let rec = reconstruct_spin(&algebra, None, samples, common.seed, &tol)
        .map_err(|e| anyhow!(e.to_string()))?;
    // re-verify the emitted table so the verdict reflects serialized data
    let jordan = verify_jordan(&algebra, &rec.construction.table, common.trials.max(32), common.seed, &tol);
    let exit = verdict_exit([jordan.verdict]);
    let payload = ReportPayload::Reconstruct {
        s_o: rec.construction.s_o,
        invariance_residual: rec.invariant.residual,
        atom_norm_spread: rec.invariant.atom_norm_spread,
        samples: rec.invariant.n_samples,
        jordan,
        construction: Box::new(rec.construction),
    };
    let report = Report::new("reconstruct", &algebra, common, &tol, payload);
    emit(&report, common)?;
    Ok(exit)
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Check { common, suite } => cmd_check(common, suite),
        Command::Spectral { common, element } => cmd_spectral(common, element),
        Command::Lattice { common, op, p, q } => cmd_lattice(common, op, p, q.as_deref()),
        Command::Reconstruct { common, samples } => cmd_reconstruct(common, *samples),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
