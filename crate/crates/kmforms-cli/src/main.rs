//! Command-line surface: build the coefficient tables, run the named
//! verification checks, and serialize everything as exact integers.
//!
//! Exit codes: 0 success, 1 identity violation (with a witness), 2 usage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kmforms::checks;
use kmforms::error::Error;
use kmforms::io::{self, TableExport};
use kmforms::jacobi::{
    classical_qseries, jacobi_eisenstein, psi_half_form, theta11, weak_jacobi, PsiKind,
    QSeriesKind, Theta11Form, WeakKind,
};
use kmforms::lattice::{
    extract_simple_multiplicities, lattice_data, weyl_enumerate, Example,
};
use kmforms::lift::{arithmetic_lift, LiftSpec};
use kmforms::series::extract_product_exponents;
use kmforms::superalgebra::normalized_product_series;
use kmforms::theta::delta5;

#[derive(Parser)]
#[command(name = "kmforms", version, about = "Exact Siegel/Jacobi form tables and Kac-Moody denominator identities")]
struct Cli {
    /// Cache directory (defaults to $KMFORMS_CACHE, then the platform cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum JacobiKind {
    E4,
    E6,
    Delta12,
    Theta11,
    E41,
    E61,
    Phi121,
    Phi01,
    Phi02,
    Psi5Half,
    Psi2Half,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Delta_5 coefficient table as the ten-theta product.
    Delta5 {
        /// Trace bound n + m.
        #[arg(long, default_value_t = 12)]
        trace: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a named Jacobi form or q-series.
    Jacobi {
        #[arg(value_enum)]
        kind: JacobiKind,
        /// q-order (stored-exponent bound for the psi forms).
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the arithmetic lift table of example 1 or 2.
    Lift {
        example: u8,
        #[arg(long, default_value_t = 16)]
        trace: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extract the Borcherds-product exponents of an example's form.
    ProductExtract {
        example: u8,
        /// Bound on the product grading lambda.
        #[arg(long, default_value_t = 12)]
        lambda: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate Weyl-group elements up to a word length.
    Weyl {
        example: u8,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Extract the simple multiplicities m(a) and the ray tau-sequences.
    Multiplicities {
        example: u8,
        #[arg(long, default_value_t = 16)]
        trace: i64,
    },
    /// Run a named verification check (or `all`).
    Verify {
        check: String,
        /// Depth parameter for checks that take one.
        #[arg(long)]
        order: Option<i64>,
        /// Audit a table loaded from a JSON file instead of a computed one
        /// (symmetry check only).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run the superalgebra combinatorics checks end to end.
    SuperalgebraCheck {
        /// Bound on the correction-sum grading.
        #[arg(long, default_value_t = 24)]
        bound: i64,
    },
}

fn emit(export: &TableExport, format: Format, output: &Option<PathBuf>) -> Result<(), Error> {
    let text = match format {
        Format::Json => export.to_json(),
        Format::Csv => export.to_csv(),
    };
    match output {
        Some(path) => io::write_text(path, &text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cache_dir(cli_dir: &Option<PathBuf>) -> PathBuf {
    cli_dir.clone().unwrap_or_else(io::cache_dir)
}

/// Fetch-or-build a Siegel table through the cache.
fn cached_table<F>(
    dir: &std::path::Path,
    use_cache: bool,
    form: &str,
    unit: &str,
    weights: &[i64],
    bound: i64,
    build: F,
) -> Result<TableExport, Error>
where
    F: FnOnce() -> Result<TableExport, Error>,
{
    if use_cache {
        if let Some(hit) = io::cache_fetch(dir, form, unit, weights, bound) {
            return Ok(hit);
        }
    }
    let export = build()?;
    if use_cache {
        let _ = io::cache_store(dir, &export);
    }
    Ok(export)
}

fn example_of(v: u8) -> Result<Example, Error> {
    Example::from_index(v)
}

fn lift_table(example: Example, trace: i64) -> Result<kmforms::theta::SiegelCoefficientTable, Error> {
    let depth = (trace / 2) * (trace - trace / 2);
    match example {
        Example::One => {
            let psi = psi_half_form(PsiKind::Psi5Half, depth.max(1))?;
            arithmetic_lift(&psi.series, &LiftSpec::example1(), trace, "lift1")
        }
        Example::Two => {
            let psi = psi_half_form(PsiKind::Psi2Half, depth.max(1))?;
            arithmetic_lift(&psi.series, &LiftSpec::example2(), trace, "f2")
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let dir = cache_dir(&cli.cache_dir);
    let use_cache = !cli.no_cache;
    match cli.command {
        Command::Delta5 { trace, format, output } => {
            let export = cached_table(&dir, use_cache, "delta5", "1,1,1", &[1, 0, 1], trace, || {
                Ok(io::export_table(&delta5(trace)?, "trace"))
            })?;
            emit(&export, format, &output)?;
            Ok(0)
        }
        Command::Jacobi { kind, order, format, output } => {
            let export = match kind {
                JacobiKind::E4 => io::export_series(&classical_qseries(QSeriesKind::E4, order)?, "e4", "trace"),
                JacobiKind::E6 => io::export_series(&classical_qseries(QSeriesKind::E6, order)?, "e6", "trace"),
                JacobiKind::Delta12 => {
                    io::export_series(&classical_qseries(QSeriesKind::Delta12, order)?, "delta12", "trace")
                }
                JacobiKind::Theta11 => {
                    io::export_series(&theta11(order, Theta11Form::Sum)?.series, "theta11", "trace")
                }
                JacobiKind::E41 => io::export_series(&jacobi_eisenstein(4, order)?.series, "e4_1", "trace"),
                JacobiKind::E61 => io::export_series(&jacobi_eisenstein(6, order)?.series, "e6_1", "trace"),
                JacobiKind::Phi121 => {
                    io::export_series(&weak_jacobi(WeakKind::Phi12_1, order)?.series, "phi_12_1", "trace")
                }
                JacobiKind::Phi01 => {
                    io::export_series(&weak_jacobi(WeakKind::Phi0_1, order)?.series, "phi_0_1", "trace")
                }
                JacobiKind::Phi02 => {
                    io::export_series(&weak_jacobi(WeakKind::Phi0_2, order)?.series, "phi_0_2", "trace")
                }
                JacobiKind::Psi5Half => {
                    io::export_series(&psi_half_form(PsiKind::Psi5Half, order)?.series, "psi_5_half", "trace")
                }
                JacobiKind::Psi2Half => {
                    io::export_series(&psi_half_form(PsiKind::Psi2Half, order)?.series, "psi_2_half", "trace")
                }
            };
            emit(&export, format, &output)?;
            Ok(0)
        }
        Command::Lift { example, trace, format, output } => {
            let ex = example_of(example)?;
            let (form, unit, weights) = match ex {
                Example::One => ("lift1", "1,1,1", [1i64, 0, 1]),
                Example::Two => ("f2", "1/2,1,1/2", [1i64, 0, 1]),
            };
            let export = cached_table(&dir, use_cache, form, unit, &weights, trace, || {
                Ok(io::export_table(&lift_table(ex, trace)?, "trace"))
            })?;
            emit(&export, format, &output)?;
            Ok(0)
        }
        Command::ProductExtract { example, lambda, format, output } => {
            let ex = example_of(example)?;
            // Lift tables are already normalized (example 1 lifts g = f/64).
            let table = match ex {
                Example::One => lift_table(ex, 2 * lambda + 2)?,
                Example::Two => {
                    let trace =
                        ((2.0 * lambda as f64 + 3.0) * 2.0 / (4.0 - 2f64.sqrt())).ceil() as i64;
                    lift_table(ex, trace)?
                }
            };
            let s = normalized_product_series(&table, 1, ex, lambda)?;
            let exponents = extract_product_exponents(&s)?;
            let mut series = kmforms::series::GradedSeries::zero(3, *s.units(), s.grading());
            for (e, m) in &exponents {
                series.add_term(*e, kmforms::series::big(*m))?;
            }
            let export = io::export_series(
                &series,
                &format!("product-exponents-{}", ex.index()),
                "lambda",
            );
            emit(&export, format, &output)?;
            Ok(0)
        }
        Command::Weyl { example, max_len } => {
            let ex = example_of(example)?;
            let (lattice, fd) = lattice_data(ex);
            let els = weyl_enumerate(&lattice, &fd, max_len)?;
            let mut by_len = std::collections::BTreeMap::new();
            for el in &els {
                *by_len.entry(el.word.len()).or_insert(0usize) += 1;
            }
            println!("example {} Weyl elements with word length <= {max_len}: {}", ex.index(), els.len());
            for (len, count) in by_len {
                println!("  length {len}: {count}");
            }
            Ok(0)
        }
        Command::Multiplicities { example, trace } => {
            let ex = example_of(example)?;
            // The lift tables are already normalized: example 1 lifts
            // g = f/64, so both examples extract with normalizer 1.
            let table = lift_table(ex, trace)?;
            let normalizer = 1;
            let mult = extract_simple_multiplicities(&table, normalizer, ex)?;
            let entries: Vec<serde_json::Value> = mult
                .entries
                .iter()
                .map(|(a, m)| {
                    serde_json::json!([a[0], a[1], a[2], m.to_string()])
                })
                .collect();
            let rays: Vec<serde_json::Value> = mult
                .rays
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "generator": r.generator,
                        "tau": r.tau.iter().map(|(k, t)| serde_json::json!([k, t])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "example": ex.index(),
                "normalizer": normalizer,
                "m": entries,
                "rays": rays,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(0)
        }
        Command::Verify { check, order, input } => {
            if let Some(path) = input {
                if check != "symmetry" && check != "a6" {
                    return Err(Error::Config(
                        "--input is only supported for the symmetry check".into(),
                    ));
                }
                let table = io::load_json(&path)?.to_siegel_table()?;
                let report = kmforms::theta::symmetry_audit(&table, Example::One)?;
                print!("{}", report.render());
                return Ok(if report.passed { 0 } else { 1 });
            }
            if check == "all" {
                let mut all_passed = true;
                for (id, _) in checks::CHECK_IDS {
                    let report = checks::run_check(id, order)?;
                    print!("{}", report.render());
                    all_passed &= report.passed;
                }
                return Ok(if all_passed { 0 } else { 1 });
            }
            let report = checks::run_check(&check, order)?;
            print!("{}", report.render());
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::SuperalgebraCheck { bound } => {
            let a10 = checks::run_check("a10", None)?;
            print!("{}", a10.render());
            let mut ok = a10.passed;
            for id in ["a5", "a9"] {
                let report = checks::run_check(id, Some(bound))?;
                print!("{}", report.render());
                ok &= report.passed;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Error::Config(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
