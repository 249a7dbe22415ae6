//! `cubical`: generate, check, translate and normalize finite cubical structures.
//!
//! Exit codes: 0 pass, 1 violations found, 2 usage error, 3 parse or
//! structure error, 4 lookup error.

mod document;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubical_core::classical::{check_classical_axioms, check_classical_np};
use cubical_core::equivalence::{check_eta, check_mu, fc, fs};
use cubical_core::inverses::{check_inverse_lemmas, check_np, ri_inverse, synthesize_inverse_dim0};
use cubical_core::laws::{check_all, check_category_axioms, check_connection_axioms, check_cubical_axioms, check_derived_lemmas};
use cubical_core::models::{base_category, cube_nerve, terminal};
use cubical_core::normalizer::normalize_with;
use cubical_core::{classical, laws, BaseKind, CheckReport, CubicalError, RuleSet, StructuralWord};

use document::{Loaded, StructureDocument};
use render::Names;

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_STRUCTURE: u8 = 3;
const EXIT_LOOKUP: u8 = 4;

#[derive(Parser)]
#[command(name = "cubical", version, about = "Finite cubical n-categories with connections and inverses")]
struct Cli {
    /// Worker threads for parallel checks (output does not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a model structure as a document.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        /// Base category as `kind:m`, e.g. `pair_groupoid:2` (nerve only).
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        connections: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an axiom suite; exit 0 iff no violations.
    Check {
        file: PathBuf,
        /// category | cubical | connections | derived | inverse | np:<p> | classical | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Translate between the single-set and classical presentations.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Presentation,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that translating there and back returns the input.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find the r_i-inverse of a cell.
    Invert {
        file: PathBuf,
        #[arg(long)]
        direction: usize,
        #[arg(long)]
        cell: String,
        /// Build the inverse by induction on dimension instead of searching.
        #[arg(long)]
        constructive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Normalize a word of faces (d), degeneracies (e) and connections (g).
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value = "default")]
        rules: Rules,
    },
    /// Print every fixed-point set S^I with its size and the inclusions between them.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Nerve,
    Terminal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Presentation {
    Classical,
    SingleSet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    Default,
    Empty,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn lookup(message: impl Into<String>) -> Self {
        Failure { code: EXIT_LOOKUP, message: message.into() }
    }
}

impl From<CubicalError> for Failure {
    fn from(e: CubicalError) -> Self {
        let code = match e {
            CubicalError::UnknownCell(_) => EXIT_LOOKUP,
            _ => EXIT_STRUCTURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_doc(path: &Path) -> Result<StructureDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_STRUCTURE, message: format!("{}: {e}", path.display()) })?;
    StructureDocument::parse(&text).map_err(|e| Failure { code: EXIT_STRUCTURE, message: format!("{}: {e}", path.display()) })
}

fn write_out(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: EXIT_STRUCTURE, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_exit(r: &CheckReport) -> u8 {
    if r.passed() {
        0
    } else {
        EXIT_VIOLATIONS
    }
}

fn emit_report(r: &CheckReport, names: &Names, as_json: bool) -> u8 {
    if as_json {
        println!("{}", render::report_json(r, names));
    } else {
        print!("{}", render::report_text(r, names));
    }
    report_exit(r)
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Gen { model, base, dim, connections, output } => {
            let (s, meta) = match model {
                Model::Nerve => {
                    let base = base.ok_or_else(|| Failure::usage("--base is required for the nerve model"))?;
                    let (kind, m) = base
                        .split_once(':')
                        .ok_or_else(|| Failure::usage(format!("--base {base:?} is not of the form kind:m")))?;
                    let kind: BaseKind = kind.parse().map_err(|e: CubicalError| Failure::usage(e.to_string()))?;
                    let m: usize = m.parse().map_err(|_| Failure::usage(format!("--base size {m:?} is not a number")))?;
                    let s = cube_nerve(&base_category(kind, m)?, dim, connections)?;
                    (s, json!({"model": "nerve", "base": format!("{kind}:{m}"), "dim": dim, "connections": connections}))
                }
                Model::Terminal => {
                    if base.is_some() {
                        return Err(Failure::usage("--base applies only to the nerve model"));
                    }
                    (terminal(dim, connections), json!({"model": "terminal", "dim": dim, "connections": connections}))
                }
            };
            write_out(output.as_deref(), &StructureDocument::from_single(&s, meta)?.to_json())?;
            Ok(0)
        }
        Command::Check { file, suite, json } => {
            let doc = read_doc(&file)?;
            match doc.load()? {
                Loaded::Single(s) => {
                    let r = match suite.as_str() {
                        "category" => check_category_axioms(&s),
                        "cubical" => check_cubical_axioms(&s),
                        "connections" => check_connection_axioms(&s)?,
                        "derived" => check_derived_lemmas(&s),
                        "inverse" => check_inverse_lemmas(&s)?,
                        "all" => check_all(&s),
                        other => match other.strip_prefix("np:") {
                            Some(p) => check_np(&s, parse_p(p)?),
                            None => return Err(Failure::usage(format!("unknown suite {other:?}"))),
                        },
                    };
                    Ok(emit_report(&r, &Names::Single(&s), json))
                }
                Loaded::Classical(c) => {
                    let r = match suite.as_str() {
                        "classical" | "all" => check_classical_axioms(&c),
                        other => match other.strip_prefix("np:") {
                            Some(p) => check_classical_np(&c, parse_p(p)?),
                            None => {
                                return Err(Failure::usage(format!(
                                    "suite {other:?} does not apply to classical documents (use classical, all or np:<p>)"
                                )))
                            }
                        },
                    };
                    Ok(emit_report(&r, &Names::Classical(&c), json))
                }
            }
        }
        Command::Translate { file, to, output } => {
            let doc = read_doc(&file)?;
            let text = match (doc.load()?, to) {
                (Loaded::Single(s), Presentation::Classical) => {
                    let s = laws::validate(s).map_err(|(s, r)| invalid_input(&r, &Names::Single(&s)))?;
                    let (c, _) = fc(&s)?;
                    StructureDocument::from_classical(&c, json!({"translated_from": "single-set", "source": doc.meta}))?
                }
                (Loaded::Classical(c), Presentation::SingleSet) => {
                    let c = classical::validate(c).map_err(|(c, r)| invalid_input(&r, &Names::Classical(&c)))?;
                    let s = fs(&c)?;
                    StructureDocument::from_single(&s, json!({"translated_from": "classical", "source": doc.meta}))?
                }
                _ => return Err(Failure::usage("document is already in the requested presentation")),
            };
            write_out(output.as_deref(), &text.to_json())?;
            Ok(0)
        }
        Command::Roundtrip { file, json } => {
            let doc = read_doc(&file)?;
            match doc.load()? {
                Loaded::Single(s) => Ok(emit_report(&check_mu(&s), &Names::Single(&s), json)),
                Loaded::Classical(c) => Ok(emit_report(&check_eta(&c), &Names::Classical(&c), json)),
            }
        }
        Command::Invert { file, direction, cell, constructive, json } => {
            let doc = read_doc(&file)?;
            let Loaded::Single(s) = doc.load()? else {
                return Err(Failure::usage("invert expects a single-set document"));
            };
            let x = s.cell_by_name(&cell).ok_or_else(|| Failure::lookup(format!("unknown cell {cell:?}")))?;
            let cert = if constructive {
                match synthesize_inverse_dim0(&s, direction, x) {
                    Ok(c) => Some(c),
                    Err(CubicalError::NotNp(msg)) => {
                        eprintln!("{msg}");
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                ri_inverse(&s, direction, x)?
            };
            match cert {
                None if json => println!("null"),
                None => println!("none"),
                Some(c) if json => println!("{}", render::certificate_json(&c, &s)),
                Some(c) => print!("{}", render::certificate_text(&c, &s)),
            }
            Ok(0)
        }
        Command::Normalize { word, level, rules } => {
            let w: StructuralWord = word.parse()?;
            let rules = match rules {
                Rules::Default => RuleSet::default_rules(),
                Rules::Empty => RuleSet::empty(),
            };
            println!("{}", normalize_with(&rules, &w, level)?);
            Ok(0)
        }
        Command::Lattice { file, json } => {
            let doc = read_doc(&file)?;
            let Loaded::Single(s) = doc.load()? else {
                return Err(Failure::usage("lattice expects a single-set document"));
            };
            let lattice = render::Lattice::new(&s);
            if json {
                println!("{}", lattice.to_json());
            } else {
                print!("{}", lattice.to_text());
            }
            Ok(0)
        }
    }
}

fn parse_p(p: &str) -> Result<usize, Failure> {
    p.parse().map_err(|_| Failure::usage(format!("np:<p> needs a number, got {p:?}")))
}

fn invalid_input(r: &CheckReport, names: &Names) -> Failure {
    eprint!("{}", render::report_text(r, names));
    Failure { code: EXIT_VIOLATIONS, message: "input fails its axiom suite; nothing was translated".into() }
}
