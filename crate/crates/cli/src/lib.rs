//! Command-line front end: `forge`, `verify`, `sweep` and `plane`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 retries exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cremona_algebra::certificate::{self, Verdict};
use cremona_algebra::error::{PlaneError, SpaceError};
use cremona_algebra::field::is_prime;
use cremona_algebra::plane::forge_plane;
use cremona_algebra::{BidegreeCertificate, PlaneCertificate, PrimeField, DEFAULT_PRIME};
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Environment variable that overrides the default prime.
pub const PRIME_ENV: &str = "CREMONA_PRIME";
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_RETRIES: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "cremona",
    version,
    about = "Forge and verify Cremona transformations of P^3 with prescribed bidegree"
)]
pub struct Cli {
    /// Prime field modulus.
    #[arg(long, global = true, env = PRIME_ENV, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Whole-pipeline attempts before giving up.
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and certify a map of bidegree (d, e).
    Forge {
        #[arg(short)]
        d: u32,
        #[arg(short)]
        e: u32,
        #[command(flatten)]
        common: Common,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate without sampling.
    Verify { file: PathBuf },
    /// Forge and verify every e in a range for one d.
    Sweep {
        #[arg(short)]
        d: u32,
        #[arg(long)]
        e_min: Option<u32>,
        #[arg(long)]
        e_max: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for the certificates.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Build and certify a plane de Jonquières map of degree r.
    Plane {
        #[arg(short)]
        r: u32,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Verified,
    VerificationFailed(String),
    Exhausted(String),
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub e: u32,
    pub status: RowStatus,
    pub case: String,
    pub attempts: usize,
    pub millis: u128,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub d: u32,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Verified)
    }

    pub fn render(&self) -> String {
        let header = ["d", "e", "status", "case", "attempts", "ms"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                let status = match &r.status {
                    RowStatus::Verified => "verified",
                    RowStatus::VerificationFailed(_) => "rejected",
                    RowStatus::Exhausted(_) => "exhausted",
                };
                [
                    self.d.to_string(),
                    r.e.to_string(),
                    status.to_string(),
                    r.case.clone(),
                    r.attempts.to_string(),
                    r.millis.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: &[String]| {
            row.iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(&header.map(String::from));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

fn field_from(prime: u64) -> Result<PrimeField, String> {
    if !is_prime(prime) {
        return Err(format!("--prime {prime} is not prime"));
    }
    PrimeField::new(prime).map_err(|e| e.to_string())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to standard output: {e}")),
    }
}

fn space_exit(e: &SpaceError) -> i32 {
    match e {
        SpaceError::OutOfRange { .. } | SpaceError::InvalidRecipe(_) => EXIT_INVALID,
        _ => EXIT_EXHAUSTED,
    }
}

/// Forges one certificate and renders its canonical JSON.
pub fn forge_certificate(
    field: PrimeField,
    d: u32,
    e: u32,
    seed: u64,
    retries: usize,
) -> Result<(BidegreeCertificate, String), SpaceError> {
    let outcome = cremona_algebra::forge(field, d, e, seed, retries)?;
    let cert = BidegreeCertificate::from_outcome(&outcome);
    let text = cert.to_json();
    Ok((cert, text))
}

pub fn cmd_forge(field: PrimeField, d: u32, e: u32, common: &Common, output: Option<&Path>) -> i32 {
    match forge_certificate(field, d, e, common.seed, common.retries) {
        Ok((cert, text)) => {
            if let Err(msg) = write_output(output, &text) {
                eprintln!("error: {msg}");
                return EXIT_INVALID;
            }
            eprintln!(
                "forged ({d},{e}) with case {} in {} attempt(s); residual {}",
                cert.recipe.case, cert.attempts, cert.space_report.residual
            );
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            space_exit(&err)
        }
    }
}

pub fn cmd_verify(file: &Path) -> i32 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return EXIT_INVALID;
        }
    };
    let verdict = certificate::parse_certificate(&text).and_then(|c| certificate::verify(&c));
    match verdict {
        Ok(Verdict::Verified) => {
            eprintln!("verified");
            EXIT_OK
        }
        Ok(Verdict::Rejected(why)) => {
            eprintln!("rejected: {why}");
            EXIT_VERIFY_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

/// Runs every `e` of the range as an independent task; the row order is
/// the `e` order whatever the scheduling.
pub fn sweep(
    field: PrimeField,
    d: u32,
    range: (u32, u32),
    common: &Common,
    jobs: usize,
) -> SweepSummary {
    let run_one = |e: u32| -> SweepRow {
        let start = Instant::now();
        let result = forge_certificate(field, d, e, common.seed, common.retries);
        let (status, case, attempts, certificate) = match result {
            Ok((cert, text)) => {
                let case = format!(
                    "{}{}",
                    cert.recipe.case,
                    match cert.recipe.ell {
                        Some(ell) => format!("{{ell={ell},m={}}}", cert.recipe.m),
                        None => format!("{{m={}}}", cert.recipe.m),
                    }
                );
                let status = match certificate::parse_certificate(&text)
                    .and_then(|c| certificate::verify(&c))
                {
                    Ok(Verdict::Verified) => RowStatus::Verified,
                    Ok(Verdict::Rejected(why)) => RowStatus::VerificationFailed(why),
                    Err(e) => RowStatus::VerificationFailed(e.to_string()),
                };
                (status, case, cert.attempts, Some(text))
            }
            Err(err) => (
                RowStatus::Exhausted(err.to_string()),
                "-".into(),
                common.retries,
                None,
            ),
        };
        SweepRow {
            e,
            status,
            case,
            attempts,
            millis: start.elapsed().as_millis(),
            certificate,
        }
    };
    let es: Vec<u32> = (range.0..=range.1).collect();
    let rows = if jobs <= 1 {
        es.into_iter().map(run_one).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| es.into_par_iter().map(run_one).collect()),
            Err(_) => es.into_iter().map(run_one).collect(),
        }
    };
    SweepSummary { d, rows }
}

pub fn cmd_sweep(
    field: PrimeField,
    d: u32,
    e_min: Option<u32>,
    e_max: Option<u32>,
    jobs: usize,
    out: Option<&Path>,
    common: &Common,
) -> i32 {
    if d < 2 {
        eprintln!("error: d = {d}, need d >= 2");
        return EXIT_INVALID;
    }
    let (lo, hi) = (e_min.unwrap_or(d), e_max.unwrap_or(d * d));
    if lo > hi || lo < d || hi > d * d {
        eprintln!(
            "error: range [{lo}, {hi}] is empty or leaves [{d}, {}]; Cremona maps of bidegree (d,e) exist for \
             √d ≤ e ≤ d² (sqrt(d) <= e <= d^2) and this construction covers d <= e <= d^2",
            d * d
        );
        return EXIT_INVALID;
    }
    if let Some(dir) = out {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return EXIT_INVALID;
        }
    }
    let summary = sweep(field, d, (lo, hi), common, jobs);
    if let Some(dir) = out {
        for row in &summary.rows {
            if let Some(text) = &row.certificate {
                let path = dir.join(format!("d{d}_e{}.json", row.e));
                if let Err(e) = fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
        }
    }
    print!("{}", summary.render());
    if summary.all_verified() {
        return EXIT_OK;
    }
    let mut code = EXIT_EXHAUSTED;
    for row in &summary.rows {
        match &row.status {
            RowStatus::Verified => {}
            RowStatus::VerificationFailed(why) => {
                code = EXIT_VERIFY_FAILED;
                eprintln!("failed ({d},{}): {why}", row.e);
            }
            RowStatus::Exhausted(why) => eprintln!("failed ({d},{}): {why}", row.e),
        }
    }
    code
}

pub fn cmd_plane(field: PrimeField, r: u32, common: &Common, output: Option<&Path>) -> i32 {
    match forge_plane(field, r, common.seed, common.retries) {
        Ok(outcome) => {
            let cert = PlaneCertificate::from_outcome(&outcome);
            if let Err(msg) = write_output(output, &cert.to_json()) {
                eprintln!("error: {msg}");
                return EXIT_INVALID;
            }
            for w in &cert.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!(
                "plane map of degree {r} verified in {} attempt(s); residual {}",
                cert.attempts, cert.plane_report.residual
            );
            EXIT_OK
        }
        Err(err @ PlaneError::InvalidConfiguration(_)) => {
            eprintln!("error: {err}");
            EXIT_INVALID
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_EXHAUSTED
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let field = match field_from(cli.prime) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INVALID;
        }
    };
    match &cli.command {
        Command::Forge {
            d,
            e,
            common,
            output,
        } => cmd_forge(field, *d, *e, common, output.as_deref()),
        Command::Verify { file } => cmd_verify(file),
        Command::Sweep {
            d,
            e_min,
            e_max,
            jobs,
            out,
            common,
        } => cmd_sweep(field, *d, *e_min, *e_max, *jobs, out.as_deref(), common),
        Command::Plane { r, common, output } => cmd_plane(field, *r, common, output.as_deref()),
    }
}
