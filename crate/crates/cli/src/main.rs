use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delzant::report::{self, PolynomialsDocument, Validation, VerifyReport};
use delzant::{CountReport, DelzantPolytope, Error, Execution, HRep};
use serde::Serialize;

/// Overrides the enumeration guard (maximum bounding-box cells).
const GUARD_VAR: &str = "DELZANT_ENUM_GUARD";

#[derive(Parser)]
#[command(name = "delzant", version, about = "Exact lattice-point counting polynomials for Delzant polytopes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Report integrality, simplicity and the Delzant condition.
    Check { file: PathBuf },
    /// Print the Ehrhart, interior and boundary polynomials.
    Polynomials { file: PathBuf },
    /// Count lattice points of the k-th dilate by enumeration.
    Count {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// List the lattice points themselves.
        #[arg(long)]
        weights: bool,
        /// Restrict the listed points to the boundary.
        #[arg(long, requires = "weights")]
        boundary_only: bool,
    },
    /// Run every identity check and compare against enumeration for k = 1..=kmax.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
    },
}

/// Failure carrying its process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotIntegral | Error::NotSimple | Error::NotDelzant => 3,
            Error::Unbounded | Error::Empty => 4,
            Error::Invariant(_)
            | Error::Singular
            | Error::ChamberRetriesExhausted(_)
            | Error::TruncationTooSmall { .. } => 5,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn guard() -> Result<u128, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| input_error(format!("{GUARD_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(delzant::DEFAULT_GUARD),
    }
}

fn load(path: &Path) -> Result<HRep, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    Ok(delzant::parse_hrep(&text)?)
}

fn structured<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckDocument {
    digest: String,
    dimension: usize,
    facets: usize,
    #[serde(flatten)]
    validation: Validation,
}

fn check(h: &HRep, format: Format) -> (String, u8) {
    let doc = CheckDocument {
        digest: h.digest(),
        dimension: h.dim(),
        facets: h.facet_count(),
        validation: Validation::of(h),
    };
    let code = if doc.validation.delzant { 0 } else { 3 };
    let out = match format {
        Format::Structured => structured(&doc),
        Format::Text => format!(
            "digest: {}\ndimension: {}\nfacets: {}\nintegral: {}\nsimple: {}\nDelzant: {}\n",
            doc.digest,
            doc.dimension,
            doc.facets,
            doc.validation.integral,
            doc.validation.simple,
            doc.validation.delzant
        ),
    };
    (out, code)
}

fn polynomials(h: &HRep, format: Format) -> Result<String, Failure> {
    DelzantPolytope::new(h.clone())?;
    let doc = PolynomialsDocument::from(&delzant::counting_polynomials(h)?);
    Ok(match format {
        Format::Structured => structured(&doc),
        Format::Text => format!(
            "digest: {}\nehrhart: {}\ninterior: {}\nboundary: {}\n",
            doc.digest, doc.ehrhart.text, doc.interior.text, doc.boundary.text
        ),
    })
}

fn count(h: &HRep, k: u64, weights: bool, boundary_only: bool, format: Format) -> Result<String, Failure> {
    DelzantPolytope::new(h.clone())?;
    let guard = guard()?;
    let mut report: CountReport = delzant::count_lattice_points(h, k, false, guard)?;
    if weights {
        report.weights = Some(delzant::quantization_weights(h, k, boundary_only, guard)?);
    }
    Ok(match format {
        Format::Structured => structured(&report),
        Format::Text => {
            let mut s = format!(
                "k: {}\ntotal: {}\nboundary: {}\ninterior: {}\n",
                report.k, report.total, report.boundary, report.interior
            );
            if let Some(points) = &report.weights {
                let scope = if boundary_only { "boundary" } else { "all" };
                let _ = writeln!(s, "points ({scope}): {}", points.len());
                for p in points {
                    let coords: Vec<String> = p.iter().map(i64::to_string).collect();
                    let _ = writeln!(s, "  ({})", coords.join(", "));
                }
            }
            s
        }
    })
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digest: {}", r.digest);
    let _ = writeln!(s, "dimension: {}\nfacets: {}", r.dimension, r.facets);
    let v = &r.validation;
    let _ = writeln!(s, "integral: {}\nsimple: {}\nDelzant: {}", v.integral, v.simple, v.delzant);
    let p = &r.polynomials;
    let _ = writeln!(s, "ehrhart: {}\ninterior: {}\nboundary: {}", p.ehrhart.text, p.interior.text, p.boundary.text);
    let _ = writeln!(s, "{:>4} {:>10} {:>10} {:>10}  result", "k", "total", "boundary", "interior");
    for row in &r.oracle {
        let _ = writeln!(
            s,
            "{:>4} {:>10} {:>10} {:>10}  {}",
            row.k,
            row.total,
            row.boundary,
            row.interior,
            if row.pass { "ok" } else { "MISMATCH" }
        );
    }
    for c in &r.checks {
        let _ = writeln!(s, "[{}] {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    let _ = writeln!(s, "verdict: {}", if r.pass { "pass" } else { "FAIL" });
    s
}

fn verify(h: &HRep, kmax: u64, format: Format) -> Result<(String, u8), Failure> {
    let r = report::verify_polytope(h, kmax, guard()?, Execution::available())?;
    let out = match format {
        Format::Structured => structured(&r),
        Format::Text => verify_text(&r),
    };
    Ok((out, if r.pass { 0 } else { 5 }))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Check { file } => Ok(check(&load(&file)?, format)),
        Command::Polynomials { file } => Ok((polynomials(&load(&file)?, format)?, 0)),
        Command::Count {
            file,
            k,
            weights,
            boundary_only,
        } => Ok((count(&load(&file)?, k, weights, boundary_only, format)?, 0)),
        Command::Verify { file, kmax } => verify(&load(&file)?, kmax, format),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
