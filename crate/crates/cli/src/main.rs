use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use crystal_dual::crystal::{Character, CrystalGroup};
use crystal_dual::datum::{load_group, read_datum};
use crystal_dual::group90::{is_group90, preset};
use crystal_dual::mackey::{dual_over_orbit, Rep};
use crystal_dual::report::{irreps_document, limit_document, orbit_document, pretty};
use crystal_dual::topology::{decompose_limit, dual_labels, CharacterPath, LimitOptions};
use crystal_dual::verify::verify_group90;
use crystal_dual::{Error, Result};

const SEED_VAR: &str = "CRYSTAL_DUAL_SEED";

#[derive(Parser)]
#[command(name = "crystal-dual", version, about = "Unitary duals of crystallographic groups and limits of irreducibles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit and stabilizer of a character.
    Orbit {
        /// Group datum file, or @g90 for the bundled datum.
        group: String,
        /// Character such as "1,-1,t:1/5" or "(i,i,1)".
        character: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Every irreducible representation over the orbit of a character.
    Irreps {
        group: String,
        character: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Entrywise limit of a generic sequence and its decomposition into irreducibles.
    Limit {
        group: String,
        /// Named path for the group-90 datum.
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        preset: Option<String>,
        /// Path such as "(1/4-1/4*t, 1/2, 0)"; the target is t = 1.
        #[arg(long)]
        path: Option<String>,
        /// 1-based branch over the first sample.
        #[arg(long, default_value_t = 1)]
        branch: usize,
        /// Number of samples t_k = 1 - 2^-k.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also compute the block-diagonalizing unitary.
        #[arg(long)]
        with_unitary: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the group-90 regression suite; exits 1 when a criterion fails.
    #[command(name = "verify-group90")]
    VerifyGroup90 {
        #[arg(default_value = "@g90")]
        group: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Input(format!("{SEED_VAR} must be an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn group(path: &str) -> Result<Arc<CrystalGroup>> {
    load_group(path).map(Arc::new)
}

/// A closed stdout (for example a pipe into `head`) ends output silently.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(doc: &serde_json::Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(doc).expect("JSON values serialize")));
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Orbit { group: file, character, format } => {
            let g = group(&file)?;
            let chi: Character = character.parse()?;
            let doc = orbit_document(&g, &chi, seed(None)?)?;
            match format {
                Format::Json => emit(&doc),
                Format::Pretty => out(&pretty(&g, &doc, &[])),
            }
        }
        Command::Irreps { group: file, character, seed: s, format } => {
            let g = group(&file)?;
            let s = seed(s)?;
            let chi: Character = character.parse()?;
            let dual = dual_over_orbit(&g, &chi, s)?;
            let doc = irreps_document(&g, &dual, s)?;
            match format {
                Format::Json => emit(&doc),
                Format::Pretty => {
                    let labels = dual_labels(&g, &dual)?;
                    let reps: Vec<(String, &dyn Rep)> =
                        labels.iter().map(|(i, l)| (l.clone(), &dual.reps[*i] as &dyn Rep)).collect();
                    out(&pretty(&g, &doc, &reps));
                }
            }
        }
        Command::Limit { group: file, preset: name, path, branch, samples, seed: s, with_unitary, format } => {
            let g = group(&file)?;
            let s = seed(s)?;
            let mut path: CharacterPath = match (&name, &path) {
                (Some(n), _) => {
                    if !is_group90(&g) {
                        return Err(Error::Input("presets need the group-90 datum".into()));
                    }
                    preset(n)?.path()
                }
                (None, Some(p)) => p.parse()?,
                (None, None) => return Err(Error::Input("give --preset or --path".into())),
            };
            if let Some(k) = samples {
                path = path.with_samples(k);
            }
            let run = decompose_limit(&g, &path, branch, LimitOptions { seed: s, with_unitary })?;
            let limit = run.limit.limit.as_ref();
            let doc = limit_document(&g, &run.report, limit, s)?;
            match format {
                Format::Json => emit(&doc),
                Format::Pretty => {
                    out(&pretty(&g, &doc, &[(format!("L({})", run.report.branch), limit as &dyn Rep)]))
                }
            }
        }
        Command::VerifyGroup90 { group: file, seed: s } => {
            let datum = read_datum(&file)?;
            let report = verify_group90(&datum, seed(s)?);
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            for d in &report.discrepancies {
                eprintln!("table discrepancy: {d}");
            }
            emit(&report.to_json());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
