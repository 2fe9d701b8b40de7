use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use goppa_fold::harness::{
    fold_instance, keysize, parse_group, run_sweep, single_report, verify_instance, FieldParams, GenParams, Grid,
    HarnessError, InstanceFile, Kind, ReportFile, ViewParams,
};

#[derive(Parser)]
#[command(name = "goppa-fold", version, about = "Fold symmetric alternant and Goppa codes and check the result")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a symmetric instance file.
    Gen {
        /// p:m[:c0,c1,...,cm]
        #[arg(long)]
        field: String,
        /// q:m (defaults to the prime subfield)
        #[arg(long)]
        view: Option<String>,
        /// qc:a,b or qm:α0,α1,... (element indices)
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "alternant")]
        kind: KindArg,
        /// t for alternant codes, deg Q for Goppa codes
        #[arg(long)]
        degree: usize,
        /// multiplier / Goppa exponent, α = a^d
        #[arg(long, default_value_t = 0)]
        d: u64,
        /// number of orbits or cosets in the support
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        /// distinct multiplier values on distinct cosets
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fold an instance along its group; writes a report and the folded instance.
    Fold {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        folded: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Check an instance; exit status 0 iff the fold matches.
    Verify {
        instance: PathBuf,
        /// compare against this folded instance instead of the prediction
        #[arg(long)]
        claimed: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Run a grid of generated instances in parallel.
    Sweep {
        /// grid file (TOML); the built-in desk grid when absent
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// fraction of instances whose prediction is corrupted
        #[arg(long)]
        corrupt: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Key-size arithmetic for a code with a symmetry group.
    Keysize {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        group_order: u64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum KindArg {
    Alternant,
    Goppa,
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| HarnessError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &ReportFile, out: &Option<PathBuf>, csv: &Option<PathBuf>) -> Result<(), HarnessError> {
    write_out(out, &report.to_json()?)?;
    if let Some(c) = csv {
        write_out(&Some(c.clone()), &report.to_csv())?;
    }
    let s = &report.summary;
    eprintln!(
        "{} instances: {} passed, {} failed, {} errors; corrupted {} (flagged {})",
        s.total, s.passed, s.failed, s.errors, s.injected, s.injected_flagged
    );
    Ok(())
}

fn status(report: &ReportFile) -> ExitCode {
    if report.summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.cmd {
        Cmd::Gen { field, view, group, kind, degree, d, blocks, strict, seed, out } => {
            let field = FieldParams::parse(&field)?;
            let view = match view {
                Some(v) => ViewParams::parse(&v)?,
                None => ViewParams::prime_subfield(&field),
            };
            let kind = match kind {
                KindArg::Alternant => Kind::Alternant,
                KindArg::Goppa => Kind::Goppa,
            };
            let params = GenParams { field, view, group: parse_group(&group)?, kind, degree, d, blocks, strict, seed };
            let inst = goppa_fold::harness::generate(&params)?;
            write_out(&out, &inst.to_toml()?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fold { instance, out, folded, csv, timing } => {
            let inst = InstanceFile::load(&instance)?;
            let result = fold_instance(&inst);
            let report = single_report(&inst, &result.as_ref().map(|r| r.0.clone()).map_err(clone_err), timing)?;
            if let (Ok((_, f)), Some(path)) = (&result, &folded) {
                f.save(path)?;
            }
            emit_report(&report, &out, &csv)?;
            Ok(status(&report))
        }
        Cmd::Verify { instance, claimed, out, timing } => {
            let inst = InstanceFile::load(&instance)?;
            let claimed = claimed.map(|p| InstanceFile::load(&p)).transpose()?;
            let result = verify_instance(&inst, claimed.as_ref());
            let report = single_report(&inst, &result, timing)?;
            if out.is_some() {
                emit_report(&report, &out, &None)?;
            } else {
                let e = &report.entries[0];
                match &e.error {
                    Some(err) => println!("error: {err}"),
                    None => println!("verdict: {}  [{}, {}] -> [{}, {}]", e.verdict, e.n, e.k, e.n_folded, e.k_folded),
                }
            }
            Ok(status(&report))
        }
        Cmd::Sweep { grid, jobs, seed, corrupt, out, csv, timing } => {
            let mut grid = match grid {
                Some(p) => Grid::load(&p)?,
                None => Grid::desk(),
            };
            if let Some(s) = seed {
                grid.seed = s;
            }
            if let Some(c) = corrupt {
                grid.corruption = c;
            }
            let report = run_sweep(&grid, jobs, timing)?;
            emit_report(&report, &out, &csv)?;
            Ok(status(&report))
        }
        Cmd::Keysize { n, k, q, group_order } => {
            for line in keysize(n, k, q, group_order)?.lines() {
                println!("{line}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn clone_err(e: &HarnessError) -> HarnessError {
    HarnessError::Params(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("goppa-fold: {e}");
            ExitCode::from(2)
        }
    }
}
