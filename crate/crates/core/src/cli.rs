//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse error, 2 unsupported word, 3 numerical
//! verification failure, 4 invalid flags.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::curves::{
    circle_windings, numeric_windings, zeta_curve, WindingVector, MIN_SAMPLES_PER_ARC,
};
use crate::error::Error;
use crate::ktheory::kgroups;
use crate::operators::{generator_spectrum, MIN_GENERATOR_DIM};
use crate::verify::{self, Fault, VerifyConfig};
use crate::word::{
    classify, is_isomorphic, pair_structure, parse_word, BoundaryWord, ClassicalType, IsoMode,
    QuantumInvariant, SurfaceClass, SurfaceKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_FLAGS: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: i32, stderr: String) -> Self {
        Self {
            exit_code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsurface",
    version,
    about = "Quantum surfaces from boundary words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the surface of a boundary word
    Classify {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// K-groups with generators and relations (JSON)
    Kgroups {
        word: String,
        /// Accepted for uniformity; output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Spectrum of the truncated normal-form generator
    Spectrum {
        word: String,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Where to write the spectrum CSV
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
        /// Corrupt one Bergman weight to exercise the failure path
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare two words up to quantum (default) or classical isomorphism
    Iso {
        word1: String,
        word2: String,
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        json: bool,
    },
    /// Windings of the boundary curve around each earring circle and zero
    Windings {
        word: String,
        /// Samples per arc
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::MixedSyntax { .. } => EXIT_PARSE,
        Error::NotPaired { .. } | Error::UnsupportedWord(_) => EXIT_UNSUPPORTED,
        Error::InvalidArgument(_) | Error::InvalidInvariant { .. } => EXIT_FLAGS,
        Error::NearZero { .. }
        | Error::NonIntegral { .. }
        | Error::NotContraction { .. }
        | Error::Shape { .. }
        | Error::IndexRange { .. }
        | Error::NoConvergence { .. } => EXIT_NUMERIC,
    }
}

fn from_error(err: Error) -> CommandResult {
    CommandResult::fail(exit_code_for(&err), format!("error: {err}\n"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

/// `args[0]` is the program name.
pub fn run(args: &[String]) -> CommandResult {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    CommandResult::ok(e.to_string())
                }
                _ => CommandResult::fail(EXIT_FLAGS, e.to_string()),
            };
        }
    };
    let result = match cli.command {
        Command::Classify { word, json } => cmd_classify(&word, json),
        Command::Kgroups { word, .. } => cmd_kgroups(&word),
        Command::Spectrum {
            word,
            dim,
            out,
            json,
        } => cmd_spectrum(&word, dim, out, json),
        Command::Verify {
            dim,
            tol,
            json,
            inject_fault,
        } => return cmd_verify(dim, tol, json, inject_fault),
        Command::Iso {
            word1,
            word2,
            classical,
            json,
        } => cmd_iso(&word1, &word2, classical, json),
        Command::Windings {
            word,
            samples,
            json,
        } => cmd_windings(&word, samples, json),
    };
    result.unwrap_or_else(from_error)
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    #[serde(flatten)]
    kind: &'a SurfaceKind,
    word: String,
    n_pairs: usize,
    euler_characteristic: i64,
    vertex_classes: usize,
    invariant: Option<QuantumInvariant>,
}

fn plural(n: usize, word: &str, words: &str) -> String {
    format!("{n} {}", if n == 1 { word } else { words })
}

fn describe(cls: &SurfaceClass) -> String {
    let inv = cls
        .quantum_invariant()
        .map(|q| format!(", invariant {q}"))
        .unwrap_or_default();
    format!(
        "{cls}{inv}, χ={}, {}",
        cls.euler_characteristic,
        plural(cls.vertex_classes, "vertex class", "vertex classes")
    )
}

pub fn cmd_classify(word: &str, json: bool) -> Result<CommandResult, Error> {
    let w = parse_word(word)?;
    let cls = classify(&w)?;
    let stdout = if json {
        to_json(&ClassifyOutput {
            kind: &cls.kind,
            word: w.render(),
            n_pairs: cls.n_pairs,
            euler_characteristic: cls.euler_characteristic,
            vertex_classes: cls.vertex_classes,
            invariant: cls.quantum_invariant().ok(),
        })
    } else {
        format!("{}\n", describe(&cls))
    };
    if let SurfaceKind::Unsupported { reason, .. } = &cls.kind {
        return Ok(CommandResult {
            exit_code: EXIT_UNSUPPORTED,
            stdout,
            stderr: format!("error: unsupported word: {reason}\n"),
        });
    }
    Ok(CommandResult::ok(stdout))
}

pub fn cmd_kgroups(word: &str) -> Result<CommandResult, Error> {
    let cls = classify(&parse_word(word)?)?;
    let mut out = kgroups(&cls)?.to_json();
    out.push('\n');
    Ok(CommandResult::ok(out))
}

#[derive(Serialize)]
struct SpectrumOutput {
    invariant: QuantumInvariant,
    dim: usize,
    blocks: usize,
    max_deviation: f64,
    max_symbol_deviation: f64,
    out: Option<String>,
}

pub fn cmd_spectrum(
    word: &str,
    dim: usize,
    out: Option<PathBuf>,
    json: bool,
) -> Result<CommandResult, Error> {
    if dim < MIN_GENERATOR_DIM {
        return Err(Error::InvalidArgument(format!(
            "--dim must be at least {MIN_GENERATOR_DIM}"
        )));
    }
    let cls = classify(&parse_word(word)?)?;
    let inv = cls.quantum_invariant()?;
    if inv.is_sphere() {
        return Err(Error::UnsupportedWord(
            "the sphere has no earring generator".into(),
        ));
    }
    let report = generator_spectrum(inv.n, inv.k, dim)?;
    if let Some(path) = &out {
        std::fs::write(path, report.to_csv())
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let stdout = if json {
        to_json(&SpectrumOutput {
            invariant: inv,
            dim,
            blocks: report.blocks.len(),
            max_deviation: report.max_deviation,
            max_symbol_deviation: report.max_symbol_deviation,
            out: out.as_ref().map(|p| p.display().to_string()),
        })
    } else {
        let mut s = format!(
            "max_deviation {:.16e}\nmax_symbol_deviation {:.16e}\n",
            report.max_deviation, report.max_symbol_deviation
        );
        if let Some(path) = &out {
            let _ = writeln!(s, "wrote {}", path.display());
        }
        s
    };
    Ok(CommandResult::ok(stdout))
}

pub fn cmd_verify(dim: usize, tol: f64, json: bool, inject_fault: bool) -> CommandResult {
    let mut config = match VerifyConfig::new(dim, tol) {
        Ok(c) => c,
        Err(e) => return from_error(e),
    };
    if inject_fault {
        config.fault = Fault::BergmanWeight;
    }
    let report = verify::run(&config);
    let stdout = if json {
        to_json(&report)
    } else {
        report.table()
    };
    if report.all_passed() {
        CommandResult::ok(stdout)
    } else {
        CommandResult {
            exit_code: EXIT_NUMERIC,
            stdout,
            stderr: "error: verification failed\n".into(),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum IsoKey {
    Quantum(QuantumInvariant),
    Classical(ClassicalType),
}

impl std::fmt::Display for IsoKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoKey::Quantum(q) => write!(f, "{q}"),
            IsoKey::Classical(ClassicalType::Sphere) => write!(f, "sphere"),
            IsoKey::Classical(ClassicalType::Orientable(g)) => write!(f, "orientable genus {g}"),
            IsoKey::Classical(ClassicalType::NonOrientable(n)) => {
                write!(f, "non-orientable Euler genus {n}")
            }
        }
    }
}

#[derive(Serialize)]
struct IsoOutput {
    mode: &'static str,
    isomorphic: bool,
    left: IsoKey,
    right: IsoKey,
}

fn iso_key(w: &BoundaryWord, mode: IsoMode) -> Result<IsoKey, Error> {
    let cls = classify(w)?;
    Ok(match mode {
        IsoMode::Quantum => IsoKey::Quantum(cls.quantum_invariant()?),
        IsoMode::Classical => IsoKey::Classical(cls.classical_type()?),
    })
}

pub fn cmd_iso(a: &str, b: &str, classical: bool, json: bool) -> Result<CommandResult, Error> {
    let (wa, wb) = (parse_word(a)?, parse_word(b)?);
    let (mode, name) = if classical {
        (IsoMode::Classical, "classical")
    } else {
        (IsoMode::Quantum, "quantum")
    };
    let output = IsoOutput {
        mode: name,
        isomorphic: is_isomorphic(&wa, &wb, mode)?,
        left: iso_key(&wa, mode)?,
        right: iso_key(&wb, mode)?,
    };
    let stdout = if json {
        to_json(&output)
    } else {
        format!(
            "{} ({name}): {} vs {}\n",
            if output.isomorphic {
                "isomorphic"
            } else {
                "not isomorphic"
            },
            output.left,
            output.right
        )
    };
    Ok(CommandResult::ok(stdout))
}

#[derive(Serialize)]
struct WindingsOutput {
    samples_per_arc: usize,
    combinatorial: WindingVector,
    numeric: WindingVector,
}

pub fn cmd_windings(word: &str, samples: usize, json: bool) -> Result<CommandResult, Error> {
    if samples < MIN_SAMPLES_PER_ARC {
        return Err(Error::InvalidArgument(format!(
            "--samples must be at least {MIN_SAMPLES_PER_ARC}"
        )));
    }
    let ps = pair_structure(&parse_word(word)?)?;
    let combinatorial = circle_windings(&ps)?;
    let numeric = numeric_windings(&zeta_curve(&ps, samples)?, ps.n)?;
    let agree = numeric == combinatorial;
    let stdout = if json {
        to_json(&WindingsOutput {
            samples_per_arc: samples,
            combinatorial,
            numeric: numeric.clone(),
        })
    } else {
        let mut s = String::new();
        for (j, w) in numeric.per_circle.iter().enumerate() {
            let _ = writeln!(s, "circle {}: {w}", j + 1);
        }
        let _ = writeln!(s, "around 0: {}", numeric.around_zero);
        s
    };
    if !agree {
        return Ok(CommandResult {
            exit_code: EXIT_NUMERIC,
            stdout,
            stderr: "error: numeric windings disagree with the word\n".into(),
        });
    }
    Ok(CommandResult::ok(stdout))
}
