//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error,
//! 3 precision exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::pi::{pi_digits_with, PiMethod};
use crate::report::{approx_report, export_bfile, paper_tables, table_json, table_text};
use crate::sequences::{
    alpha_direct, build_table, cross_check_reference, verify_coprimality, verify_recurrence,
    verify_theorem3, TableMode, VerificationReport,
};
use crate::{bfile, radicals, Limits, DEFAULT_MAX_K, DEFAULT_PRECISION_CEILING};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "radical-pi",
    version,
    about = "Certified nested radicals, pi enclosures and the sequence floor(2^(k+1)/pi)"
)]
struct Cli {
    /// Largest working precision, in bits, any computation may escalate to.
    #[arg(long, global = true, value_name = "BITS", default_value_t = DEFAULT_PRECISION_CEILING)]
    precision_ceiling: u64,

    /// Largest index k accepted.
    #[arg(long, global = true, value_name = "K", default_value_t = DEFAULT_MAX_K)]
    k_limit: u64,

    /// Print only results and summaries.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enclosure of the nested radical c_k.
    #[command(name = "c-k")]
    CK {
        k: u64,
        /// Decimal places shown (bounds are rounded outward).
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Certified leading decimal digits of pi.
    Pi {
        #[arg(long)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Radical)]
        method: MethodArg,
    },
    /// alpha_k = floor(2^(k+1)/pi).
    Alpha { k: u64 },
    /// alpha_k, gamma_k and beta_k for k = 1..=K.
    Table {
        #[arg(long, value_name = "K")]
        max_k: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Recur)]
        mode: ModeArg,
        #[arg(long, conflicts_with = "bfile")]
        json: bool,
        /// Write alpha_k as a b-file instead of printing.
        #[arg(long, value_name = "PATH")]
        bfile: Option<PathBuf>,
    },
    /// Check the inequality, recurrence and coprimality properties up to K.
    Verify {
        #[arg(long, value_name = "K")]
        max_k: u64,
        /// Reference b-file to compare alpha_k against.
        #[arg(long, value_name = "PATH")]
        reference: Option<PathBuf>,
    },
    /// The approximation 2^(k+1)/alpha_k and its correct digits.
    Approx { k: u64 },
    /// Sequence listings and the k = 70..77 approximation blocks.
    PaperTables,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Radical,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Direct,
    Recur,
}

impl From<ModeArg> for TableMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Direct => TableMode::DirectEveryK,
            ModeArg::Recur => TableMode::RecurrenceWithSpotChecks,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => EXIT_PRECISION_EXHAUSTED,
        Error::IndexOutOfRange { .. } | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_VERIFICATION_FAILED,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits {
        precision_ceiling: cli.precision_ceiling,
        max_k: cli.k_limit,
    };
    match &cli.command {
        Command::CK { k, digits } => {
            // enough bits for the requested decimals plus slack
            let p = (*digits as u64 * 333).div_ceil(100) + 16;
            limits.check_precision(|| format!("c_{k} to {digits} digits"), p)?;
            if *k > limits.max_k {
                return Err(Error::IndexOutOfRange { k: *k, max: limits.max_k });
            }
            let c = radicals::compute_c(*k, p)?;
            let (lo, hi) = c.to_decimal_bounds(*digits);
            writeln!(out, "c_{k} in [{lo}, {hi}]").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Pi { digits, method } => {
            let text = match method {
                MethodArg::Radical => pi_digits_with(*digits, PiMethod::RadicalLimit, &limits)?,
                MethodArg::Oracle => pi_digits_with(*digits, PiMethod::ArctanSeriesOracle, &limits)?,
                MethodArg::Both => {
                    let radical = pi_digits_with(*digits, PiMethod::RadicalLimit, &limits)?;
                    let oracle = pi_digits_with(*digits, PiMethod::ArctanSeriesOracle, &limits)?;
                    if radical != oracle {
                        writeln!(out, "radical {radical}\noracle  {oracle}").map_err(io)?;
                        return Ok(EXIT_VERIFICATION_FAILED);
                    }
                    radical
                }
            };
            writeln!(out, "{text}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Alpha { k } => {
            let entry = alpha_direct(*k, &limits)?;
            writeln!(out, "{}", entry.alpha).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Table {
            max_k,
            mode,
            json,
            bfile,
        } => {
            let table = build_table(*max_k, (*mode).into(), &limits)?;
            if let Some(path) = bfile {
                export_bfile(&table, path)?;
                if !cli.quiet {
                    writeln!(out, "wrote {} entries to {}", table.len(), path.display()).map_err(io)?;
                }
            } else if *json {
                writeln!(out, "{}", table_json(&table)).map_err(io)?;
            } else {
                write!(out, "{}", table_text(&table)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { max_k, reference } => {
            let direct = build_table(*max_k, TableMode::DirectEveryK, &limits)?;
            let recur = build_table(*max_k, TableMode::RecurrenceWithSpotChecks, &limits)?;
            let mut reports = vec![
                verify_theorem3(&direct),
                verify_recurrence(&direct),
                verify_coprimality(&direct),
                modes_agree(&direct, &recur),
            ];
            if let Some(path) = reference {
                let rows = bfile::read_bfile(path)?;
                reports.push(cross_check_reference(&direct, &rows));
            }
            if !cli.quiet {
                for r in &reports {
                    write!(out, "{}", r.render()).map_err(io)?;
                }
            }
            for r in &reports {
                writeln!(out, "{}", r.summary()).map_err(io)?;
            }
            let passed = reports.iter().all(VerificationReport::passed);
            writeln!(out, "{}", if passed { "all checks passed" } else { "verification failed" })
                .map_err(io)?;
            Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
        }
        Command::Approx { k } => {
            let r = approx_report(*k, &limits)?;
            let (lo, hi) = r.ratio_minus_pi_bound.to_decimal_bounds(r.correct_decimal_digits + 8);
            writeln!(out, "k = {}", r.k).map_err(io)?;
            writeln!(out, "gamma_k = {}", r.gamma).map_err(io)?;
            writeln!(out, "alpha_k = {}", r.alpha).map_err(io)?;
            writeln!(out, "ratio = 2^{}/{}", r.k + 1, r.alpha).map_err(io)?;
            writeln!(out, "decimal = {} {}...", r.correct_prefix(), r.continuation()).map_err(io)?;
            writeln!(out, "correct digits = {}", r.correct_decimal_digits).map_err(io)?;
            if !cli.quiet {
                writeln!(out, "ratio - pi in [{lo}, {hi}]").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::PaperTables => {
            write!(out, "{}", paper_tables(&limits)?).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Both table modes must produce the same α and γ.
fn modes_agree(direct: &crate::SequenceTable, recur: &crate::SequenceTable) -> VerificationReport {
    let records = direct
        .entries()
        .iter()
        .zip(recur.entries())
        .map(|(d, r)| {
            let passed = d.alpha == r.alpha && d.gamma == r.gamma;
            crate::sequences::CheckRecord {
                k: d.k,
                check: "direct_equals_recurrence".to_string(),
                passed,
                diagnostics: if passed {
                    String::new()
                } else {
                    format!("direct=({}, {}) recurrence=({}, {})", d.alpha, d.gamma, r.alpha, r.gamma)
                },
            }
        })
        .collect();
    VerificationReport {
        suite: "determinism".to_string(),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("radical-pi").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn alpha_seven() {
        let (code, out, _) = run_args(&["alpha", "7"]);
        assert_eq!(code, 0);
        assert_eq!(out, "81\n");
    }

    #[test]
    fn pi_digits_all_methods() {
        for method in ["radical", "oracle", "both"] {
            let (code, out, _) = run_args(&["pi", "--digits", "23", "--method", method]);
            assert_eq!(code, 0);
            assert_eq!(out, "3.1415926535897932384626\n");
        }
    }

    #[test]
    fn c_k_prints_bounds() {
        let (code, out, _) = run_args(&["c-k", "2", "--digits", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out, "c_2 in [1.8477590650, 1.8477590651]\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_args(&["alpha"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["alpha", "0"]).0, 2);
        assert_eq!(run_args(&["table", "--max-k", "3", "--json", "--bfile", "x"]).0, 2);
        assert_eq!(run_args(&["--k-limit", "5", "alpha", "6"]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("paper-tables"));
    }

    #[test]
    fn exhausted_precision_exits_three() {
        let (code, _, err) = run_args(&["--precision-ceiling", "32", "alpha", "70"]);
        assert_eq!(code, 3);
        assert!(err.contains("precision exhausted"));
        assert_eq!(run_args(&["--precision-ceiling", "40", "pi", "--digits", "30"]).0, 3);
    }

    #[test]
    fn verify_small_range() {
        let (code, out, _) = run_args(&["--quiet", "verify", "--max-k", "20"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("all checks passed\n"));
        assert!(out.contains("theorem3: 40 checks, 0 failed"));
    }

    #[test]
    fn verify_with_bad_reference_fails() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ref.txt");
        std::fs::write(&path, "1 1\n2 3\n").unwrap();
        let (code, out, _) = run_args(&["verify", "--max-k", "5", "--reference", path.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(out.contains("reference 2 reference_match FAIL"));
    }

    #[test]
    fn table_text_and_bfile() {
        let (code, out, _) = run_args(&["table", "--max-k", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 1 1 odd\n2 2 1 even\n3 5 3 odd\n");

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.txt");
        let (code, _, _) = run_args(&["--quiet", "table", "--max-k", "3", "--bfile", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "1 1\n2 2\n3 5\n");
    }

    #[test]
    fn approx_output() {
        let (code, out, _) = run_args(&["approx", "70"]);
        assert_eq!(code, 0);
        assert!(out.contains("decimal = 3.141592653589793238462 80398052"));
        assert!(out.contains("correct digits = 22"));
    }
}
