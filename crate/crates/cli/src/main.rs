use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use weilcid_cli::{
    analyze, check_table, emit_analysis, emit_matrix, emit_survey, matrix_report, parse_fix,
    survey, OutputFormat, SurveyConfig, BUNDLED_TABLES, CACHE_DIR_ENV, DOCUMENT_NOTE,
};
use weilcid_core::error::Error as CoreError;
use weilcid_core::exact::set_default_factor_seed;
use weilcid_core::monogeneity::{gsp_order, irred_count};

/// Survey non-monogenic division fields of abelian varieties over F_q via
/// exact Frobenius-matrix arithmetic.
#[derive(Parser)]
#[command(name = "weilcid", version, about)]
struct Cli {
    /// Seed offset for the factorization search path (results are exact
    /// regardless).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep all irreducible Weil polynomials for (p, g) and report every
    /// n < n-max for which p is a common index divisor.
    Survey {
        /// Characteristic prime.
        #[arg(long)]
        p: u64,
        /// Field exponent: the surveys run over q = p^m.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Dimension g (the polynomials have degree 2g).
        #[arg(long)]
        dim: usize,
        /// Exclusive upper bound on the modulus n.
        #[arg(long)]
        n_max: u64,
        /// Pin coefficients, e.g. "a5=0,a4=0".
        #[arg(long, default_value = "")]
        fix: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Line-delimited JSON cache for resumable sweeps
        /// (default: $WEILCID_CACHE_DIR/cache.jsonl when that variable is set).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Worker threads (default: one per CPU). Output is identical
        /// regardless.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Analyze one polynomial: Weil screening, p-rank, disc(Z[pi,v]),
    /// applicability, and per-n splitting reports.
    Analyze {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        dim: usize,
        /// Free coefficients a_(2g-1),...,a_g, comma-separated, e.g. "-2,2,-2".
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Moduli to report on, comma-separated, e.g. "2,5,10".
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Print |GSp_2g(Z/nZ)|.
    GspOrder {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: u64,
    },
    /// Print the number of monic irreducible polynomials of the given degree
    /// over F_p.
    IrredCount {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        p: u64,
    },
    /// Print the basis of Z[pi,v] and the matrices of pi and v, optionally
    /// reduced mod n.
    Matrix {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Also print the Frobenius matrix reduced modulo this n.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Re-run the bundled expected tables and diff the results.
    Tables {
        /// Comma-separated table ids to run (default: all), e.g.
        /// "table1,table6".
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn parse_u64_list(s: &str, what: &str) -> anyhow::Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u64>()
                .map_err(|e| anyhow::anyhow!("bad {what} entry '{p}': {e}"))
        })
        .collect()
}

fn parse_i64_list(s: &str, what: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<i64>()
                .map_err(|e| anyhow::anyhow!("bad {what} entry '{p}': {e}"))
        })
        .collect()
}

fn default_cache() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(|dir| PathBuf::from(dir).join("cache.jsonl"))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    set_default_factor_seed(cli.seed);
    match cli.cmd {
        Cmd::Survey {
            p,
            m,
            dim,
            n_max,
            fix,
            format,
            cache,
            workers,
        } => {
            let cfg = SurveyConfig {
                p,
                m,
                g: dim,
                n_max,
                fix: parse_fix(&fix)?,
                cache_path: cache.or_else(default_cache),
                workers,
            };
            let rows = survey(&cfg)?;
            print!("{}", emit_survey(&cfg, &rows, format));
            if format == OutputFormat::Json {
                eprintln!("note: {DOCUMENT_NOTE}");
            }
        }
        Cmd::Analyze {
            p,
            m,
            dim,
            coeffs,
            n,
            format,
        } => {
            let coeffs = parse_i64_list(&coeffs, "coeffs")?;
            let ns = parse_u64_list(&n, "n")?;
            let report = analyze(p, m, dim, &coeffs, &ns)?;
            print!("{}", emit_analysis(&report, format));
        }
        Cmd::GspOrder { dim, n } => {
            println!("{}", gsp_order(dim, n)?);
        }
        Cmd::IrredCount { degree, p } => {
            println!("{}", irred_count(degree, p)?);
        }
        Cmd::Matrix {
            p,
            m,
            dim,
            coeffs,
            modulus,
            format,
        } => {
            let coeffs = parse_i64_list(&coeffs, "coeffs")?;
            let report = matrix_report(p, m, dim, &coeffs, modulus)?;
            print!("{}", emit_matrix(&report, format));
        }
        Cmd::Tables {
            only,
            cache,
            workers,
        } => {
            let wanted: Option<Vec<String>> = only.map(|s| {
                s.split(',')
                    .map(|t| t.trim().to_string())
                    .filter(|t| !t.is_empty())
                    .collect()
            });
            if let Some(ids) = &wanted {
                for id in ids {
                    if !BUNDLED_TABLES.iter().any(|t| t.id == id) {
                        anyhow::bail!(
                            "unknown table id '{id}' (available: {})",
                            BUNDLED_TABLES
                                .iter()
                                .map(|t| t.id)
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                    }
                }
            }
            let cache = cache.or_else(default_cache);
            let mut failures = 0usize;
            for table in BUNDLED_TABLES {
                if let Some(ids) = &wanted {
                    if !ids.iter().any(|id| id == table.id) {
                        continue;
                    }
                }
                let outcome = check_table(table, cache.as_deref(), workers)?;
                println!(
                    "{}: {} — {}",
                    outcome.id,
                    if outcome.pass { "PASS" } else { "FAIL" },
                    outcome.detail
                );
                if !outcome.pass {
                    failures += 1;
                }
            }
            if failures > 0 {
                anyhow::bail!("{failures} table(s) differ from the bundled expectations");
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err:#}");
            let internal = err
                .chain()
                .any(|c| matches!(c.downcast_ref::<CoreError>(), Some(CoreError::Internal(_))));
            std::process::exit(if internal { 2 } else { 1 });
        }
    }
}
