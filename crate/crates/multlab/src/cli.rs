//! Config-driven command-line front end. Exit codes: 0 ok, 1 configuration,
//! 2 domain, 3 internal resource errors. Identical (config, command) pairs
//! produce byte-identical outputs.

use clap::{Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::audit::{constants_sheet, construct_aux, run_audit};
use crate::bipoly::f_tilde;
use crate::config::{load_certificate, parse_rational, RunConfig, SystemDef};
use crate::error::{Error, Result};
use crate::projgeo::transference_check;
use crate::stabledyn::{stability_report, verify_stable_ord_bound, LinearMahlerSystem};

#[derive(Debug, Parser)]
#[command(
    name = "multlab",
    version,
    about = "exact-arithmetic laboratory for multiplicity estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Run configuration file (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override the configured precision.
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    /// Override the configured global seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the configured output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Solve a configured system and write its coefficient table
    Solve { system: String },
    /// Run a configured audit grid: CSV plus a fitted-constants summary
    Audit { name: String },
    /// T-stability verdict for a configured ideal under a linear Mahler system
    Stability { system: String, ideal: String },
    /// Print the sheet of theoretical constants
    Constants {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value = "1")]
        nu0: String,
        #[arg(long, default_value = "0")]
        nu1: String,
        #[arg(long, default_value = "2")]
        lambda: String,
    },
    /// Certified vanishing order of a polynomial along a system's solution
    Ord { poly: String, system: String },
    /// Construct an auxiliary polynomial of bidegree (a, b)
    Aux { system: String, a: usize, b: usize },
    /// Check a transference certificate file
    Transfer { certificate: PathBuf },
}

struct Ctx {
    cfg: RunConfig,
    prec: usize,
    seed: u64,
    out: PathBuf,
}

fn context(cli: &Cli) -> Result<Ctx> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config FILE is required for this command".into()))?;
    let cfg = RunConfig::load(path)?;
    let prec = cli.prec.unwrap_or(cfg.prec);
    if prec == 0 {
        return Err(Error::ParamDomain("prec must be positive".into()));
    }
    let seed = cli.seed.unwrap_or(cfg.seed);
    let out = cli.out.clone().unwrap_or_else(|| cfg.out.clone());
    Ok(Ctx {
        cfg,
        prec,
        seed,
        out,
    })
}

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path)
}

fn header(kind: &str, target: &str, seed: u64, prec: usize) -> String {
    format!("# multlab {kind} {target}\n# seed {seed}\n# prec {prec}\n")
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Solve { system } => {
            let ctx = context(cli)?;
            let def = ctx.cfg.system(system)?;
            let f = def.solve(ctx.prec)?;
            let mut body = header("solve", system, ctx.seed, ctx.prec);
            let _ = writeln!(body, "# columns: k, then the coefficient of z^k in each solution component (n = {})", f.len());
            for k in 0..ctx.prec {
                let row: Vec<String> = f.iter().map(|s| s.coeff(k).to_string()).collect();
                let _ = writeln!(body, "{k} {}", row.join(" "));
            }
            let path = write_artifact(&ctx.out, &format!("{system}.solve.txt"), &body)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Cmd::Audit { name } => {
            let ctx = context(cli)?;
            let def = ctx.cfg.audit(name)?.clone();
            let prec = cli.prec.or(def.prec).unwrap_or(ctx.prec);
            if prec == 0 {
                return Err(Error::ParamDomain("prec must be positive".into()));
            }
            let sys = ctx.cfg.system(&def.system)?;
            let f = sys.solve(prec)?;
            let point = f_tilde(&f);
            let grid = run_audit(&point, (0, def.m_max), (0, def.n_max), prec)?;
            let mut csv = header("audit", name, ctx.seed, prec)
                .lines()
                .map(|l| format!("{l}\n"))
                .collect::<String>();
            csv.push_str(&grid.csv());
            let path = write_artifact(&ctx.out, &format!("{name}.csv"), &csv)?;
            println!("wrote {}", path.display());
            println!("cells: {}", grid.cells.len());
            println!("inconclusive cells: {}", grid.inconclusive);
            println!("invariant violations: {}", grid.violations);
            match &grid.k_hat_zorin {
                Some(k) => println!("fitted K (zorin shape): {k}"),
                None => println!("fitted K (zorin shape): n/a"),
            }
            match &grid.k_hat_nesterenko {
                Some(k) => println!("fitted K (nesterenko shape): {k}"),
                None => println!("fitted K (nesterenko shape): n/a"),
            }
            for (m, s) in &grid.slopes {
                println!("slope log E / log(N+1) at M = {m}: {s:.6}");
            }
            Ok(())
        }
        Cmd::Stability { system, ideal } => {
            let ctx = context(cli)?;
            let def = ctx.cfg.system(system)?;
            let SystemDef::Mahler { sys, .. } = def else {
                return Err(Error::ParamDomain(format!(
                    "system `{system}` is not a Mahler system"
                )));
            };
            let lin = LinearMahlerSystem::from_mahler(sys)?;
            let w = ctx.cfg.ideal(ideal)?;
            let f = def.solve(ctx.prec)?;
            let point = f_tilde(&f);
            let verdict = verify_stable_ord_bound(w, &lin, &point)?;
            let report = stability_report(&lin, &[(ideal.clone(), verdict)])?;
            print!(
                "{}{report}",
                header("stability", &format!("{system} {ideal}"), ctx.seed, ctx.prec)
            );
            Ok(())
        }
        Cmd::Constants {
            n,
            mu,
            nu0,
            nu1,
            lambda,
        } => {
            let sheet = constants_sheet(
                *n,
                &parse_rational(mu)?,
                &parse_rational(nu0)?,
                &parse_rational(nu1)?,
                &parse_rational(lambda)?,
                None,
                None,
                None,
                None,
            )?;
            print!("{sheet}");
            Ok(())
        }
        Cmd::Ord { poly, system } => {
            let ctx = context(cli)?;
            let def = ctx.cfg.system(system)?;
            let p = crate::parser::parse_zform(poly, def.n(), ctx.cfg.field)?;
            let f = def.solve(ctx.prec)?;
            let point = f_tilde(&f);
            let ord = p.ord_at(&point)?;
            println!("ord_z of {p} along {system}: {ord}");
            Ok(())
        }
        Cmd::Aux { system, a, b } => {
            let ctx = context(cli)?;
            let def = ctx.cfg.system(system)?;
            let f = def.solve(ctx.prec)?;
            let point = f_tilde(&f);
            let q = construct_aux(&point, *a, *b, ctx.prec)?;
            let certified = crate::audit::coeff_space_dim(def.n(), *a, *b) - 1;
            let ord = q.ord_at(&point)?;
            println!("{}", header("aux", &format!("{system} {a} {b}"), ctx.seed, ctx.prec).trim_end());
            println!("Q = {q}");
            println!("certified ord >= {certified}");
            println!("measured ord: {ord}");
            Ok(())
        }
        Cmd::Transfer { certificate } => {
            let text = std::fs::read_to_string(certificate)?;
            let (cert, f) = load_certificate(&text)?;
            let report = transference_check(&cert, &f)?;
            for line in &report.lines {
                println!("{line}");
            }
            println!(
                "verdict: {}",
                if report.passed() { "PASS" } else { "FAIL" }
            );
            Ok(())
        }
    }
}
