//! Batch front-end for `ritt-core`: argument parsing, report files, run manifests and SVG.
//!
//! Every verb writes `<verb>.json` (and for tabular verbs `<verb>.csv`) plus
//! `<verb>.manifest.json` into the output directory. Exit status is 0 on success, 2 when the
//! mathematics says no, and 1 for usage or I/O problems.

pub mod commands;
pub mod manifest;
pub mod parse;
pub mod render;
pub mod verify;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use ritt_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

#[derive(Clone, Debug, Parser)]
#[command(name = "ritt", version, about = "Numerical workbench for Ritt_E operators")]
pub struct CommandSpec {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory receiving reports and the run manifest.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// JSON with optional sections `classify`, `quad`, `polygon`, `search`, `unity`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Verb {
    /// Certify Ritt_E, estimate the resolvent constant, the type and the power bounds.
    Classify {
        matrix: PathBuf,
        #[arg(long = "E", default_value = "auto", allow_hyphen_values = true)]
        e: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        /// Exit with status 2 unless the operator is Ritt_E.
        #[arg(long)]
        require_ritt: bool,
    },
    /// φ(T) by the contour integral over the boundary of E_s.
    Calculus {
        matrix: PathBuf,
        /// Polynomial JSON file, or the JSON inline: `[[re, im], …]`, ascending degree.
        #[arg(long)]
        phi: String,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: String,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build the polygons Δ₀ ⊂ Δ around the spectrum.
    Polygon {
        matrix: PathBuf,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: String,
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long, default_value_t = FRAC_PI_3)]
        theta_prime: f64,
    },
    /// Lower estimate of the R-bound of a family of matrices.
    Rbound {
        family: PathBuf,
        #[arg(long)]
        p: f64,
        /// Longest selection searched; Rademacher averages are exact up to this length.
        #[arg(long)]
        exact_upto: Option<usize>,
        /// Random restarts per selection length.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Check the truncated multi-point decomposition of unity.
    Unity {
        #[arg(long, default_value = "default")]
        family: String,
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: String,
        #[arg(long)]
        r: f64,
        /// Points of the disc grid for the pointwise checks.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 0.95)]
        grid_radius: f64,
    },
    /// Positive contractively regular ensemble with its calculus constants and semigroups.
    LpExperiment {
        #[arg(value_name = "CONFIG")]
        experiment: PathBuf,
    },
    /// Seeded residual suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// SVG of a geometry file.
    Render {
        geometry: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Classify { .. } => "classify",
            Verb::Calculus { .. } => "calculus",
            Verb::Polygon { .. } => "polygon",
            Verb::Rbound { .. } => "rbound",
            Verb::Unity { .. } => "unity",
            Verb::LpExperiment { .. } => "lp-experiment",
            Verb::Verify { .. } => "verify",
            Verb::Render { .. } => "render",
        }
    }
}

/// Status for an error: 2 when a hypothesis or conclusion failed, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotRittE(_)
        | Error::NotH0(_)
        | Error::NotContractive(_)
        | Error::TransferViolation(_)
        | Error::DivergentSequences(_)
        | Error::UnrealizableE(_)
        | Error::FloorFailure { .. }
        | Error::FamilyInvalid(_) => EXIT_FALSIFIED,
        _ => EXIT_USAGE,
    }
}

/// Runs one command, reporting failures on standard error.
pub fn run(cmd: &CommandSpec) -> i32 {
    match commands::execute(cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("ritt {}: {err}", cmd.verb.name());
            exit_code(&err)
        }
    }
}

/// Parses arguments and runs; usage errors print the usage text and give status 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CommandSpec::try_parse_from(args) {
        Ok(cmd) => run(&cmd),
        Err(err) => {
            let _ = err.print();
            if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let c = CommandSpec::try_parse_from(["ritt", "classify", "m.json", "--E", "1", "--p", "2"]).unwrap();
        assert!(matches!(c.verb, Verb::Classify { ref e, p, nmax: 200, .. } if e == "1" && p == 2.0));
        assert_eq!(c.seed, 0);
        let c = CommandSpec::try_parse_from(["ritt", "verify", "--suite", "seifert", "--seed", "7"]).unwrap();
        assert_eq!(c.seed, 7);
        let c = CommandSpec::try_parse_from(["ritt", "polygon", "m.json", "--E", "-1,0", "--theta-prime", "1.2"]).unwrap();
        assert!(matches!(c.verb, Verb::Polygon { ref e, theta_prime, .. } if e == "-1,0" && theta_prime == 1.2));
        let c = CommandSpec::try_parse_from(["ritt", "unity", "--M", "8", "--E", "roots:2", "--r", "0.6"]).unwrap();
        assert!(matches!(c.verb, Verb::Unity { m: 8, ref family, .. } if family == "default"));
        let c = CommandSpec::try_parse_from(["ritt", "render", "g.json", "-o", "out.svg"]).unwrap();
        assert_eq!(c.verb.name(), "render");
        let c = CommandSpec::try_parse_from(["ritt", "lp-experiment", "c.json"]).unwrap();
        assert!(c.config.is_none());
        assert!(matches!(c.verb, Verb::LpExperiment { ref experiment } if experiment.to_str() == Some("c.json")));
    }

    #[test]
    fn unknown_verb_is_a_usage_error() {
        assert_eq!(main_with_args(["ritt", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with_args(["ritt"]), EXIT_USAGE);
    }

    #[test]
    fn falsification_codes() {
        assert_eq!(exit_code(&Error::NotRittE("x".into())), EXIT_FALSIFIED);
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::EmptyScene), EXIT_USAGE);
    }
}
