use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use disentangle::harmonics::wigner_d_matrix;
use disentangle::{wigner_d, ylm, HalfInt, Method};
use disentangle_cli::format::g17;
use disentangle_cli::grid::{write_csv, GridSpec};
use disentangle_cli::verify::{self, Table, VerifyOptions};
use disentangle_cli::{bench, CliError};

/// Rotation matrices and spherical harmonics from disentangled SU(2) exponentials.
#[derive(Parser)]
#[command(name = "disentangle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `re im` of Y_l^m(θ, φ).
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value = "middle")]
        method: Method,
    },
    /// Write Y_l^m on an ntheta × nphi grid as CSV.
    Grid {
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        ntheta: usize,
        #[arg(long)]
        nphi: usize,
        #[arg(long, default_value = "middle")]
        method: Method,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded identity checks and print a report table.
    Verify {
        #[arg(long, default_value_t = 5)]
        lmax: u32,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Print one Wigner-d element, or the whole matrix when --mp and --m are omitted.
    WignerD {
        #[arg(long)]
        l: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        mp: Option<HalfInt>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<HalfInt>,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Time ylm for every method and degree up to lmax, as CSV.
    Bench {
        #[arg(long, default_value_t = 10)]
        lmax: u32,
        #[arg(long, default_value_t = 100)]
        reps: usize,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Eval {
            l,
            m,
            theta,
            phi,
            method,
        } => {
            let y = ylm(l, m, theta, phi, method)?;
            writeln!(out, "{:?} {:?}", y.re + 0.0, y.im + 0.0)?;
        }
        Command::Grid {
            l,
            m,
            ntheta,
            nphi,
            method,
            out: path,
        } => {
            let rows = GridSpec {
                l,
                m,
                ntheta,
                nphi,
                method,
            }
            .rows()?;
            match path {
                Some(path) => write_csv(BufWriter::new(File::create(path)?), &rows)?,
                None => write_csv(&mut out, &rows)?,
            }
        }
        Command::Verify {
            lmax,
            samples,
            seed,
            tolerance,
        } => {
            let reports = verify::run(&VerifyOptions {
                lmax,
                samples,
                seed,
                tolerance,
            })?;
            write!(out, "{}", Table(&reports))?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed, reports.len()));
            }
        }
        Command::WignerD { l, mp, m, theta } => match (mp, m) {
            (Some(mp), Some(m)) => writeln!(out, "{}", g17(wigner_d(l, mp, m, theta)?))?,
            (None, None) => {
                let d = wigner_d_matrix(l, theta)?;
                for r in 0..d.dim() {
                    let row: Vec<String> = (0..d.dim()).map(|c| g17(d[(r, c)].re)).collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
            _ => return Err(CliError::Usage("give both --mp and --m, or neither".into())),
        },
        Command::Bench { lmax, reps } => {
            writeln!(out, "method,l,median_ns")?;
            for row in bench::run(lmax, reps)? {
                writeln!(out, "{},{},{}", row.method, row.l, row.median_ns)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
