use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use zclass_core::catalog::{default_catalog, parse_catalog, run_catalog, CatalogError, RunOptions};
use zclass_core::cayley::write_cayley_table;
use zclass_core::isoclinism::{are_isoclinic, verify_witness, IsoclinismWitness, DEFAULT_QUOTIENT_CAP};
use zclass_core::report::{analyze, check, CheckOptions, ReportRecord, DEFAULT_VERIFY_QUOTIENT_CAP};
use zclass_core::spec::{parse_spec, BuildError, BuildOptions, SpecError};
use zclass_core::theorems::{Theorem, Verdict};
use zclass_core::{GroupTable, Validation, DEFAULT_ORDER_CAP};

#[derive(Parser)]
#[command(name = "zclass", version, about = "z-class analysis and theorem sweeps over small p-groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Largest group order any construction may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    /// Check associativity on every triple, whatever the order.
    #[arg(long, global = true)]
    exhaustive_validate: bool,
    /// Seed for sampled associativity checks on large tables.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest |G/Z(G)| an isoclinism search may handle.
    #[arg(long, global = true)]
    quotient_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural summary of one group as JSON.
    Analyze { spec: String },
    /// Print the z-classes of one group as JSON.
    Classes { spec: String },
    /// Check one statement (or all of them) against one group.
    Verify {
        spec: String,
        /// Statement name, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Run every statement over a catalog file or the built-in catalog.
    Catalog {
        path: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Search for an isoclinism between two groups.
    Isoclinic {
        left: String,
        right: String,
        /// Also write the witness to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Re-check a saved isoclinism witness.
    CheckWitness { left: String, right: String, witness: PathBuf },
    /// Write the Cayley table of a group.
    WriteTable {
        spec: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{error}\n  {text}\n  {caret:>width$}", caret = "^", width = error.position() + 1)]
    Spec { text: String, error: SpecError },
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("{spec}: {error}")]
    Build { spec: String, error: BuildError },
    #[error("{0}")]
    Computation(String),
    #[error("{path}: {error}")]
    Io { path: String, error: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec { .. } | CliError::Catalog(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Build { .. } | CliError::Computation(_) => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |error| CliError::Io {
        path: path.display().to_string(),
        error,
    }
}

impl GlobalArgs {
    fn build_options(&self) -> BuildOptions {
        let mut validation = Validation {
            exhaustive: self.exhaustive_validate,
            ..Validation::default()
        };
        if let Some(seed) = self.seed {
            validation.seed = seed;
        }
        BuildOptions {
            cap: self.cap,
            validation,
        }
    }

    fn check_options(&self) -> CheckOptions {
        CheckOptions {
            cap: self.cap,
            quotient_cap: self.quotient_cap.unwrap_or(DEFAULT_VERIFY_QUOTIENT_CAP),
        }
    }

    fn build(&self, text: &str) -> Result<GroupTable, CliError> {
        let spec = parse_spec(text).map_err(|error| CliError::Spec {
            text: text.to_string(),
            error,
        })?;
        spec.build(&self.build_options()).map_err(|error| CliError::Build {
            spec: spec.to_string(),
            error,
        })
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn csv_report(records: &[ReportRecord]) -> Result<String, CliError> {
    fn cell<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map(T::to_string).unwrap_or_default()
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = [
        "group", "order", "p", "k", "ctv", "zclasses", "bound", "attains", "cond1", "cond2", "theorem",
        "verdict", "witness",
    ];
    let to_err = |e: csv::Error| CliError::Computation(e.to_string());
    writer.write_record(header).map_err(to_err)?;
    for r in records {
        let ctv = r.ctv.as_ref().map(|c| {
            let parts: Vec<String> = c.iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        });
        writer
            .write_record([
                r.group.clone(),
                cell(&r.order),
                cell(&r.p),
                cell(&r.k),
                ctv.unwrap_or_default(),
                cell(&r.zclasses),
                cell(&r.bound),
                cell(&r.attains),
                cell(&r.cond1),
                cell(&r.cond2),
                r.theorem.clone(),
                r.verdict.clone(),
                r.witness.clone().unwrap_or_default(),
            ])
            .map_err(to_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Computation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let global = &cli.global;
    match &cli.command {
        Command::Analyze { spec } => {
            let g = global.build(spec)?;
            println!("{}", serde_json::to_string(&analyze(&g)).expect("analysis serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes { spec } => {
            let g = global.build(spec)?;
            let partition = zclass_core::z_class_partition(&g);
            let classes: Vec<_> = partition
                .classes()
                .iter()
                .map(|c| {
                    json!({
                        "representative": c.representative.0,
                        "size": c.members.len(),
                        "members": c.members.iter().map(|x| x.0).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", json!({ "group": g.label(), "zclasses": classes.len(), "classes": classes }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { spec, theorem } => {
            let theorems = if theorem == "all" {
                Theorem::ALL.to_vec()
            } else {
                vec![Theorem::from_name(theorem).ok_or_else(|| {
                    let names: Vec<&str> = Theorem::ALL.iter().map(|t| t.name()).collect();
                    CliError::Usage(format!("unknown theorem `{theorem}`; expected one of: all, {}", names.join(", ")))
                })?]
            };
            let g = global.build(spec)?;
            let mut refuted = false;
            for t in theorems {
                let report = check(&g, t, &global.check_options());
                refuted |= report.verdict == Verdict::Refuted;
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            }
            Ok(if refuted { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Catalog { path, output, format } => {
            let entries = match path {
                Some(path) => parse_catalog(&fs::read_to_string(path).map_err(io_err(path))?)?,
                None => default_catalog(),
            };
            let options = RunOptions {
                build: global.build_options(),
                check: global.check_options(),
            };
            let run = run_catalog(&entries, &options);
            let text = match format {
                Format::Json => run
                    .records
                    .iter()
                    .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
                    .collect(),
                Format::Csv => csv_report(&run.records)?,
            };
            emit(output.as_deref(), &text)?;
            let s = &run.summary;
            eprintln!(
                "groups={} confirmed={} vacuous={} refuted={} mismatches={} errors={}",
                s.groups, s.confirmed, s.vacuous, s.refuted, s.mismatches, s.errors
            );
            Ok(if s.refuted > 0 || s.mismatches > 0 {
                ExitCode::from(1)
            } else if s.errors > 0 {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Isoclinic { left, right, witness_out } => {
            let (g1, g2) = (global.build(left)?, global.build(right)?);
            let cap = global.quotient_cap.unwrap_or(DEFAULT_QUOTIENT_CAP);
            let witness = are_isoclinic(&g1, &g2, cap).map_err(|e| CliError::Computation(e.to_string()))?;
            if let (Some(path), Some(w)) = (witness_out, &witness) {
                fs::write(path, w.to_json() + "\n").map_err(io_err(path))?;
            }
            println!(
                "{}",
                json!({
                    "left": g1.label(),
                    "right": g2.label(),
                    "isoclinic": witness.is_some(),
                    "witness": witness,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckWitness { left, right, witness } => {
            let (g1, g2) = (global.build(left)?, global.build(right)?);
            let text = fs::read_to_string(witness).map_err(io_err(witness))?;
            let w = IsoclinismWitness::from_json(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", witness.display())))?;
            match verify_witness(&g1, &g2, &w) {
                Ok(()) => {
                    println!("{}", json!({ "valid": true }));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{}", json!({ "valid": false, "reason": e.to_string() }));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::WriteTable { spec, output } => {
            let g = global.build(spec)?;
            emit(output.as_deref(), &write_cayley_table(&g))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
