//! Command-line front end: exponentiate generator files, verify the
//! symplectic condition, build squeeze matrices, emit squeezed trajectories
//! as CSV and run the fuzz comparison.
//!
//! Exit codes are fixed: 0 success, 1 I/O or parse failure, 2 domain
//! violation, 3 tolerance failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sp4::{
    circular_trajectory, exp_series, exp_sp4, factor_two_check, fuzz_expmap, squeeze_matrix,
    symplectic_residual, transform_trajectory, ExpOracleConfig, Generator, Mat2, Mat4,
    SqueezeParams, Trajectory,
};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sp4",
    version,
    about = "Closed-form Sp(4,R) exponential map, squeeze matrices and trajectory data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Spectral closed form.
    Closed,
    /// Scaling-and-squaring series exponential.
    Series,
    /// Both routes plus their entrywise deviation.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Exponentiate a generator file into a symplectic matrix (JSON on stdout).
    Exp {
        /// JSON file with 2x2 row-major blocks "a", "b", "c".
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Deviation bound for --method both.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Symmetrize the "a" and "c" blocks instead of rejecting asymmetry.
        #[arg(long)]
        lenient: bool,
    },
    /// Check a 4x4 matrix file against the symplectic condition.
    Verify {
        /// JSON file with a 4x4 row-major matrix.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print the squeeze matrix M_s(r, phi) (JSON on stdout).
    Squeeze {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        l1: f64,
        #[arg(long, default_value_t = 1.0)]
        l2: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Also print the residual of the factor-two comparison against the
        /// squeezed-vacuum correlation matrix (at unit scales).
        #[arg(long)]
        compare_v2: bool,
        /// Residual bound for --compare-v2.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Write a circular trajectory and its squeezed image as CSV.
    Trajectory {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        l1: f64,
        #[arg(long, default_value_t = 1.0)]
        l2: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        q1: f64,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        q2: f64,
        #[arg(long)]
        p2: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        t1: f64,
        #[arg(long, default_value_t = 256)]
        steps: usize,
        /// Output CSV path; the untransformed circle goes to "<out>.orig.csv".
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare closed-form and series exponentials over seeded random draws.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u32,
        #[arg(long, default_value_t = 3.0)]
        norm_cap: f64,
    },
}

enum CliError {
    /// I/O or parse failure (exit 1).
    Input(String),
    /// Domain violation (exit 2).
    Domain(String),
    /// Tolerance failure (exit 3).
    Tolerance(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Tolerance(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Domain(m) | CliError::Tolerance(m) => m,
        }
    }
}

/// On-disk generator layout: three 2x2 row-major blocks.
#[derive(Deserialize)]
struct GeneratorFile {
    a: [[f64; 2]; 2],
    b: [[f64; 2]; 2],
    c: [[f64; 2]; 2],
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exp {
            input,
            method,
            tol,
            lenient,
        } => cmd_exp(&input, method, tol, lenient),
        Command::Verify { input, tol } => cmd_verify(&input, tol),
        Command::Squeeze {
            r,
            phi,
            l1,
            l2,
            hbar,
            compare_v2,
            tol,
        } => cmd_squeeze(r, phi, l1, l2, hbar, compare_v2, tol),
        Command::Trajectory {
            r,
            phi,
            l1,
            l2,
            hbar,
            q1,
            p1,
            q2,
            p2,
            t0,
            t1,
            steps,
            out,
        } => cmd_trajectory(
            r,
            phi,
            l1,
            l2,
            hbar,
            (q1, q2),
            (p1, p2),
            t0,
            t1,
            steps,
            &out,
        ),
        Command::Fuzz {
            seed,
            count,
            norm_cap,
        } => cmd_fuzz(seed, count, norm_cap),
    }
}

fn cmd_exp(input: &Path, method: Method, tol: f64, lenient: bool) -> Result<(), CliError> {
    let generator = read_generator(input, lenient)?;
    match method {
        Method::Closed => println!("{}", mat4_json(&exp_sp4(&generator))),
        Method::Series => {
            let m = exp_series(&generator.lie_matrix(), &ExpOracleConfig::default())
                .map_err(|e| CliError::Domain(e.to_string()))?;
            println!("{}", mat4_json(&m));
        }
        Method::Both => {
            let closed = exp_sp4(&generator);
            let series = exp_series(&generator.lie_matrix(), &ExpOracleConfig::default())
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let deviation = closed.max_abs_diff(&series);
            println!(
                "{{\"closed\": {},\n\"series\": {},\n\"max_abs_diff\": {:e}}}",
                mat4_json(&closed),
                mat4_json(&series),
                deviation
            );
            if deviation > tol {
                return Err(CliError::Tolerance(format!(
                    "closed/series deviation {deviation:e} exceeds tolerance {tol:e}"
                )));
            }
        }
    }
    Ok(())
}

fn cmd_verify(input: &Path, tol: f64) -> Result<(), CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
    let rows: [[f64; 4]; 4] = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed matrix JSON: {e}")))?;
    let residual = symplectic_residual(&Mat4(rows));
    println!("residual = {residual:e}");
    println!("tol = {tol:e}");
    if residual <= tol {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!(
            "symplectic residual {residual:e} exceeds tolerance {tol:e}"
        )))
    }
}

fn cmd_squeeze(
    r: f64,
    phi: f64,
    l1: f64,
    l2: f64,
    hbar: f64,
    compare_v2: bool,
    tol: f64,
) -> Result<(), CliError> {
    let params =
        SqueezeParams::new(r, phi, l1, l2, hbar).map_err(|e| CliError::Domain(e.to_string()))?;
    println!("{}", mat4_json(&squeeze_matrix(&params)));
    if compare_v2 {
        let residual = factor_two_check(r / 2.0);
        println!("factor_two_residual = {residual:e}");
        if residual > tol {
            return Err(CliError::Tolerance(format!(
                "factor-two residual {residual:e} exceeds tolerance {tol:e}"
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_trajectory(
    r: f64,
    phi: f64,
    l1: f64,
    l2: f64,
    hbar: f64,
    q: (f64, f64),
    p: (f64, f64),
    t0: f64,
    t1: f64,
    steps: usize,
    out: &Path,
) -> Result<(), CliError> {
    let params =
        SqueezeParams::new(r, phi, l1, l2, hbar).map_err(|e| CliError::Domain(e.to_string()))?;
    if steps < 2 {
        return Err(CliError::Domain(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    if t0.is_nan() || t1.is_nan() || t1 <= t0 {
        return Err(CliError::Domain(format!(
            "time range must be increasing, got [{t0}, {t1}]"
        )));
    }
    let circle = circular_trajectory(q, p, t0, t1, steps);
    let squeezed = transform_trajectory(&circle, &squeeze_matrix(&params));

    let orig_path = PathBuf::from(format!("{}.orig.csv", out.display()));
    write_csv(out, &squeezed)?;
    write_csv(&orig_path, &circle)?;
    Ok(())
}

fn cmd_fuzz(seed: u64, count: u32, norm_cap: f64) -> Result<(), CliError> {
    if count < 1 {
        return Err(CliError::Domain("count must be at least 1".into()));
    }
    if !(norm_cap.is_finite() && norm_cap >= 0.0) {
        return Err(CliError::Domain(format!(
            "norm cap must be finite and non-negative, got {norm_cap}"
        )));
    }
    let report = fuzz_expmap(seed, count, norm_cap);
    println!("{report}");
    if report.max_dev <= 1e-9 {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!(
            "max deviation {:e} exceeds 1e-9",
            report.max_dev
        )))
    }
}

fn read_generator(input: &Path, lenient: bool) -> Result<Generator, CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
    let file: GeneratorFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed generator JSON: {e}")))?;
    let (a, b, c) = (Mat2(file.a), Mat2(file.b), Mat2(file.c));
    if lenient {
        Ok(Generator::new_lenient(a, b, c))
    } else {
        Generator::new(a, b, c).map_err(|e| CliError::Domain(e.to_string()))
    }
}

/// 4x4 matrix as JSON, one row per line. Entries use the shortest
/// representation that parses back to the same f64.
fn mat4_json(m: &Mat4) -> String {
    let mut out = String::from("[");
    for (i, row) in m.0.iter().enumerate() {
        if i > 0 {
            out.push_str(",\n ");
        }
        out.push('[');
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{x}");
        }
        out.push(']');
    }
    out.push(']');
    out
}

fn write_csv(path: &Path, traj: &Trajectory) -> Result<(), CliError> {
    let mut text = String::from("t,q1,p1,q2,p2\n");
    for s in &traj.samples {
        let _ = writeln!(
            text,
            "{:.14},{:.14},{:.14},{:.14},{:.14}",
            s.t, s.q1, s.p1, s.q2, s.p2
        );
    }
    fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
