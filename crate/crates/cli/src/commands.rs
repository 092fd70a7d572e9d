//! One function per verb. Each reads its inputs, calls the owning module and writes artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use ritt_core::calculus::{fc_contour, FCResult, Holomorphic};
use ritt_core::classify::{classify, power_certificate_with, ClassifyConfig, PowerCertificate, RittReport, SamplerConfig};
use ritt_core::domains::{build_polygon, PolygonConfig, PolygonConstruction};
use ritt_core::io::{self, format_f64};
use ritt_core::linalg::{mat_poly, spectrum};
use ritt_core::lp::{ensemble_positive_ritt, regular_experiment, EnsembleConfig, RegularExperimentConfig};
use ritt_core::quad::QuadConfig;
use ritt_core::rbound::{rbound_lower, SearchConfig, MAX_EXACT};
use ritt_core::unity::{default_family, disc_grid, verify_unity_with, UnityConfig};
use ritt_core::{ComplexMatrix, Error, PeripheralSet, Result};

use crate::manifest::{hash_file, RunManifest, Stopwatch};
use crate::parse::{parse_e, parse_phi};
use crate::render::{render, Scene, StolzSpec};
use crate::verify::run_suite;
use crate::{CommandSpec, Verb, EXIT_FALSIFIED, EXIT_OK};

/// Module settings a `--config` file may replace, one whole section at a time.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToolConfig {
    pub classify: ClassifyConfig,
    pub quad: QuadConfig,
    pub polygon: PolygonConfig,
    pub search: SearchConfig,
    pub unity: UnityConfig,
}

/// Positional config of `lp-experiment`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LpExperimentConfig {
    pub ensemble: EnsembleConfig,
    pub experiment: RegularExperimentConfig,
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    e: &'a PeripheralSet,
    p: f64,
    report: RittReport,
    power: Option<PowerCertificate>,
    power_error: Option<String>,
}

#[derive(Serialize)]
struct CalculusOutput<'a> {
    e: &'a PeripheralSet,
    s: f64,
    phi: &'a ritt_core::Polynomial,
    result: FCResult,
    /// `φ(T)` by Horner's rule, for comparison.
    polynomial_value: ComplexMatrix,
}

#[derive(Serialize)]
struct PolygonOutput<'a> {
    e: &'a PeripheralSet,
    construction: PolygonConstruction,
}

/// Files written by one run.
struct Sink {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Sink {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn text(&mut self, path: PathBuf, text: &str) -> Result<()> {
        fs::write(&path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.text(self.dir.join(name), &io::to_json(value)?)
    }

    fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
        self.text(self.dir.join(name), &io::to_csv(header, rows))
    }
}

fn load_config(path: Option<&Path>) -> Result<ToolConfig> {
    match path {
        Some(p) => io::read_json(p),
        None => Ok(ToolConfig::default()),
    }
}

fn bool_f(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Runs the verb and writes its artifacts; returns the exit status.
pub fn execute(cmd: &CommandSpec) -> Result<i32> {
    let mut clock = Stopwatch::start();
    let tool = load_config(cmd.config.as_deref())?;
    let mut sink = Sink::new(&cmd.out_dir)?;
    let mut inputs: Vec<PathBuf> = cmd.config.iter().cloned().collect();
    let seed = cmd.seed;
    let name = cmd.verb.name();

    let (config, code) = match &cmd.verb {
        Verb::Classify { matrix, e, p, nmax, require_ritt } => {
            inputs.push(matrix.clone());
            let t = clock.stage("read", || io::read_matrix(matrix))?;
            let e = parse_e(e)?.resolve(Some(&t))?;
            let mut cfg = tool.classify.clone();
            cfg.sampler = SamplerConfig { p: *p, seed, ..cfg.sampler };
            let report = clock.stage("classify", || classify(&t, &e, &cfg))?;
            let (power, power_error) = if report.oracle_verdict {
                match clock.stage("power", || power_certificate_with(&t, &e, *p, *nmax, &cfg.sampler)) {
                    Ok(c) => (Some(c), None),
                    Err(err) => (None, Some(err.to_string())),
                }
            } else {
                (None, None)
            };
            let falsified = (*require_ritt && !report.is_ritt) || power.as_ref().is_some_and(|c| !c.bound_holds);
            sink.json("classify.json", &ClassifyOutput { e: &e, p: *p, report, power, power_error })?;
            let config = json!({ "matrix": matrix, "E": e, "p": p, "nmax": nmax, "require_ritt": require_ritt, "classify": cfg });
            (config, if falsified { EXIT_FALSIFIED } else { EXIT_OK })
        }
        Verb::Calculus { matrix, phi, e, s, tol } => {
            inputs.push(matrix.clone());
            if Path::new(phi).is_file() {
                inputs.push(PathBuf::from(phi));
            }
            let t = clock.stage("read", || io::read_matrix(matrix))?;
            let e = parse_e(e)?.resolve(Some(&t))?;
            let poly = parse_phi(phi)?;
            let quad = QuadConfig { target_tol: tol.unwrap_or(tool.quad.target_tol), ..tool.quad };
            let result = clock.stage("contour", || fc_contour(&Holomorphic::Poly(poly.clone()), &t, &e, *s, &quad))?;
            let polynomial_value = mat_poly(&poly, &t);
            sink.json("calculus.json", &CalculusOutput { e: &e, s: *s, phi: &poly, result, polynomial_value })?;
            (json!({ "matrix": matrix, "phi": poly, "E": e, "s": s, "quad": quad }), EXIT_OK)
        }
        Verb::Polygon { matrix, e, theta, theta_prime } => {
            inputs.push(matrix.clone());
            let t = clock.stage("read", || io::read_matrix(matrix))?;
            let e = parse_e(e)?.resolve(Some(&t))?;
            let cfg = PolygonConfig { seed, ..tool.polygon.clone() };
            let construction = clock.stage("construct", || build_polygon(&t, &e, *theta, *theta_prime, &cfg))?;
            let spec = spectrum(&t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
            let scene = Scene {
                stolz: vec![StolzSpec { e: e.points().to_vec(), r: construction.meta.s_inner }],
                polygons: vec![construction.delta0.vertices().to_vec(), construction.delta.vertices().to_vec()],
                spectrum: spec.values(),
                e: e.points().to_vec(),
                ..Scene::default()
            };
            sink.json("polygon.scene.json", &scene)?;
            sink.json("polygon.json", &PolygonOutput { e: &e, construction })?;
            (json!({ "matrix": matrix, "E": e, "theta": theta, "theta_prime": theta_prime, "polygon": cfg }), EXIT_OK)
        }
        Verb::Rbound { family, p, exact_upto, trials } => {
            inputs.push(family.clone());
            let fam = clock.stage("read", || io::read_family(family))?;
            if exact_upto.is_some_and(|n| n > MAX_EXACT) {
                return Err(Error::TooManyExact(exact_upto.unwrap_or(0)));
            }
            let cfg = SearchConfig {
                n_max: exact_upto.unwrap_or(tool.search.n_max),
                restarts: trials.unwrap_or(tool.search.restarts),
                seed,
                ..tool.search.clone()
            };
            let est = clock.stage("search", || rbound_lower(&fam, *p, &cfg))?;
            sink.json("rbound.json", &est)?;
            (json!({ "family": family, "p": p, "search": cfg }), EXIT_OK)
        }
        Verb::Unity { family, m, e, r, grid, grid_radius } => {
            if family != "default" {
                return Err(Error::InvalidInput(format!("unknown family {family:?}; only \"default\" is built in")));
            }
            let e = parse_e(e)?.resolve(None)?;
            let fam = clock.stage("family", || default_family(*m))?;
            let z = disc_grid(*grid, *grid_radius);
            let rep = clock.stage("verify", || verify_unity_with(&fam, &e, *r, &z, *m, &tool.unity))?;
            let rows: Vec<Vec<f64>> = rep
                .integrals
                .iter()
                .map(|b| {
                    let mut row: Vec<f64> = b.iota.iter().map(|&n| n as f64).collect();
                    row.push(b.value);
                    row
                })
                .collect();
            let mut header: Vec<String> = (1..=e.len()).map(|k| format!("n{k}")).collect();
            header.push("integral".into());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            sink.csv("unity.csv", &header, &rows)?;
            sink.json("unity.json", &rep)?;
            (json!({ "family": fam, "E": e, "r": r, "grid": grid, "grid_radius": grid_radius, "unity": tool.unity }), EXIT_OK)
        }
        Verb::LpExperiment { experiment } => {
            inputs.push(experiment.clone());
            let mut cfg: LpExperimentConfig = io::read_json(experiment)?;
            cfg.ensemble.seed = seed;
            cfg.experiment.seed = seed;
            let samples = clock.stage("ensemble", || ensemble_positive_ritt(&cfg.ensemble))?;
            let rep = clock.stage("experiment", || regular_experiment(&samples, &cfg.experiment))?;
            let rows: Vec<Vec<f64>> = rep
                .records
                .iter()
                .map(|r| vec![r.index as f64, r.seed as f64, r.r_star, r.semigroup_max, bool_f(r.semigroup_ok), bool_f(r.polygon.is_some())])
                .collect();
            sink.csv("lp-experiment.csv", &["index", "seed", "r_star", "semigroup_max", "semigroup_ok", "polygon_built"], &rows)?;
            let ok = rep.all_finite && rep.all_semigroups_ok;
            sink.json("lp-experiment.json", &rep)?;
            (json!(cfg), if ok { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Verb::Verify { suite } => {
            let rep = clock.stage(suite, || run_suite(suite, seed))?;
            let rows: Vec<Vec<f64>> = rep.rows.iter().map(|r| vec![r.case as f64, r.residual, r.tolerance, bool_f(r.pass)]).collect();
            sink.csv("verify.csv", &["case", "residual", "tolerance", "pass"], &rows)?;
            sink.json("verify.json", &rep)?;
            eprintln!("{} cases, max residual {}", rep.cases, format_f64(rep.max_residual));
            (json!({ "suite": suite }), if rep.all_pass { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Verb::Render { geometry, output } => {
            inputs.push(geometry.clone());
            let scene: Scene = io::read_json(geometry)?;
            let svg = clock.stage("render", || render(&scene))?;
            sink.text(output.clone(), &svg)?;
            (json!({ "geometry": geometry, "output": output }), EXIT_OK)
        }
    };

    let manifest = RunManifest {
        tool: "ritt".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        verb: name.into(),
        config,
        inputs: inputs.iter().map(|p| hash_file(p)).collect::<Result<_>>()?,
        seed,
        outputs: sink.written.clone(),
        exit_code: code,
        started_unix: clock.started_unix(),
        timings: clock.into_timings(),
    };
    sink.json(&format!("{name}.manifest.json"), &manifest)?;
    Ok(code)
}
