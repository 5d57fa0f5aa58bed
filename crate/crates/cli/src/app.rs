//! Subcommands and their reports.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use reinhardt_core::maps::{build_type_one, build_type_two, ProperPair};
use reinhardt_core::verify::{verify_map, ExistenceVerdict, VerificationReport};
use reinhardt_core::{bounding_unimodular, existence_oracle, fiber_count, Complex, ReinhardtDomain, VerifyConfig};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{
    parse_domain_file, parse_map_file, serialize_domain, serialize_map, FormatError, Type1ParamsFile,
    Type2ParamsFile,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } => EXIT_USAGE,
            CliError::Format { .. } | CliError::Invalid(_) => EXIT_DATA,
            CliError::Write { .. } => EXIT_INTERNAL,
        }
    }
}

/// Proper holomorphic maps between Reinhardt domains in C².
#[derive(Debug, Parser)]
#[command(name = "reinhardt", version)]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Type1,
    Type2,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print d, s, s*, t and Brody hyperbolicity.
    Invariants { domain: PathBuf },
    /// Find a unimodular matrix sending the log region into a bounded-above region.
    Bound { domain: PathBuf },
    /// Write the domain with every attachable axis attached.
    Envelope {
        domain: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the hyperbolic part of the domain.
    HypPart {
        domain: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a map of one of the two families with its source and target.
    BuildMap {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Evaluate a map at one point.
    #[command(allow_negative_numbers = true)]
    Eval {
        map: PathBuf,
        z_re: f64,
        z_im: f64,
        w_re: f64,
        w_im: f64,
    },
    /// Sample-based properness checks of a map between two domains.
    Verify {
        map: PathBuf,
        src: PathBuf,
        dst: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        sequences: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value = "0x5EED", value_parser = parse_seed)]
        seed: u64,
    },
    /// Decide whether a proper map between two domains exists.
    Exists { src: PathBuf, dst: PathBuf },
    /// Count the preimages of a point under an elementary map.
    FiberCount {
        map: PathBuf,
        #[arg(long, num_args = 4, value_names = ["Z_RE", "Z_IM", "W_RE", "W_IM"], allow_negative_numbers = true)]
        point: Vec<f64>,
    },
}

/// Report text and exit code of a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn format_err(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.to_owned(),
        source,
    }
}

pub fn load_domain(path: &Path) -> Result<ReinhardtDomain, CliError> {
    parse_domain_file(&read(path)?).map_err(format_err(path))
}

pub fn load_map(path: &Path) -> Result<reinhardt_core::MapSpec<f64>, CliError> {
    parse_map_file(&read(path)?).map_err(format_err(path))
}

fn render(json: bool, text: String, doc: Value) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn complex_doc(c: Complex<f64>) -> Value {
    json!([c.re, c.im])
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "containment": {
            "samples": r.containment.samples,
            "violations": r.containment.violations,
            "worst_margin": r.containment.worst_margin,
        },
        "escape": { "sequences": r.escape.sequences, "failures": r.escape.failures },
        "axis": { "samples": r.axis.samples, "failures": r.axis.failures },
        "invariants": {
            "source": r.invariant_src.to_string(),
            "target": r.invariant_dst.to_string(),
        },
        "verdict": if r.passed() { "pass" } else { "fail" },
    })
}

pub fn verdict_json(v: &ExistenceVerdict<f64>) -> Value {
    let mut doc = json!({ "verdict": v.label(), "exit_code": v.exit_code() });
    if let Some(rule) = v.rule() {
        doc["rule"] = json!(rule.id());
        doc["rule_name"] = json!(rule.name());
    }
    match v {
        ExistenceVerdict::Exists { witness, .. } => doc["witness"] = json!(witness.to_string()),
        ExistenceVerdict::Unknown { reason } => doc["reason"] = json!(reason),
        ExistenceVerdict::Nonexistent { .. } => {}
    }
    doc
}

fn write_pair(pair: &ProperPair<f64>, dir: &Path, json: bool) -> Result<Outcome, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_owned(),
        source,
    })?;
    let paths = [dir.join("map.json"), dir.join("source.json"), dir.join("target.json")];
    write(&paths[0], &serialize_map(&pair.map))?;
    write(&paths[1], &serialize_domain(&pair.source))?;
    write(&paths[2], &serialize_domain(&pair.target))?;
    let text = paths.iter().map(|p| format!("wrote {}\n", p.display())).collect();
    let doc = json!({
        "map": paths[0].display().to_string(),
        "source": paths[1].display().to_string(),
        "target": paths[2].display().to_string(),
    });
    Ok(Outcome::ok(render(json, text, doc)))
}

fn emit_domain(d: &ReinhardtDomain, out: Option<&Path>, json: bool) -> Result<Outcome, CliError> {
    let doc = serialize_domain(d);
    match out {
        None => Ok(Outcome::ok(doc)),
        Some(path) => {
            write(path, &doc)?;
            let text = format!("wrote {}\n", path.display());
            Ok(Outcome::ok(render(json, text, json!({ "out": path.display().to_string() }))))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Invariants { domain } => {
            let d = load_domain(domain)?;
            let t = d.invariant_tuple();
            let hyp = d.is_brody_hyperbolic();
            let text = format!("{t}, {}\n", if hyp { "hyperbolic" } else { "non-hyperbolic" });
            let doc = json!({ "d": t.d, "s": t.s, "s_star": t.s_star, "t": t.t, "hyperbolic": hyp });
            Ok(Outcome::ok(render(json, text, doc)))
        }
        Command::Bound { domain } => {
            let d = load_domain(domain)?;
            let ReinhardtDomain::Polyhedral(p) = &d else {
                let text = "NotPointed: exponential horns contain an entire line\n".to_string();
                let doc = json!({ "bounded": false, "reason": "exponential horn" });
                return Ok(Outcome {
                    stdout: render(json, text, doc),
                    code: 1,
                });
            };
            match bounding_unimodular(p.log()) {
                Ok(a) => {
                    let doc = json!({ "bounded": true, "matrix": a.0 });
                    Ok(Outcome::ok(render(json, format!("{a}\n"), doc)))
                }
                Err(e) => {
                    let doc = json!({ "bounded": false, "reason": e.to_string() });
                    Ok(Outcome {
                        stdout: render(json, format!("NotPointed: {e}\n"), doc),
                        code: 1,
                    })
                }
            }
        }
        Command::Envelope { domain, out } => emit_domain(&load_domain(domain)?.envelope(), out.as_deref(), json),
        Command::HypPart { domain, out } => emit_domain(&load_domain(domain)?.hyp_part(), out.as_deref(), json),
        Command::BuildMap {
            family,
            params,
            out_dir,
        } => {
            let text = read(params)?;
            let pair = match family {
                Family::Type1 => {
                    let doc: Type1ParamsFile =
                        serde_json::from_str(&text).map_err(|e| format_err(params)(e.into()))?;
                    let p = doc.to_params().map_err(format_err(params))?;
                    build_type_one(&p)
                }
                Family::Type2 => {
                    let doc: Type2ParamsFile =
                        serde_json::from_str(&text).map_err(|e| format_err(params)(e.into()))?;
                    build_type_two(&doc.to_params())
                }
            }
            .map_err(|e| CliError::Invalid(format!("{}: {e}", params.display())))?;
            write_pair(&pair, out_dir, json)
        }
        Command::Eval {
            map,
            z_re,
            z_im,
            w_re,
            w_im,
        } => {
            let m = load_map(map)?;
            let (f1, f2) = m
                .eval(Complex::new(*z_re, *z_im), Complex::new(*w_re, *w_im))
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let text = format!("{f1} {f2}\n");
            Ok(Outcome::ok(render(json, text, json!({ "f": [complex_doc(f1), complex_doc(f2)] }))))
        }
        Command::Verify {
            map,
            src,
            dst,
            samples,
            sequences,
            tol,
            seed,
        } => {
            let m = load_map(map)?;
            let (s, t) = (load_domain(src)?, load_domain(dst)?);
            let cfg = VerifyConfig {
                samples: *samples,
                sequences: *sequences,
                tol: *tol,
                seed: *seed,
                ..VerifyConfig::default()
            };
            let report = verify_map(&m, &s, &t, &cfg);
            let text = format!("seed: {seed:#x}\n{report}\n");
            let mut doc = report_json(&report);
            doc["seed"] = json!(seed);
            Ok(Outcome {
                stdout: render(json, text, doc),
                code: if report.passed() { 0 } else { 1 },
            })
        }
        Command::Exists { src, dst } => {
            let v = existence_oracle(&load_domain(src)?, &load_domain(dst)?);
            Ok(Outcome {
                stdout: render(json, format!("{v}\n"), verdict_json(&v)),
                code: v.exit_code(),
            })
        }
        Command::FiberCount { map, point } => {
            let m = load_map(map)?;
            let target = [Complex::new(point[0], point[1]), Complex::new(point[2], point[3])];
            let n = fiber_count(&m, target).map_err(|e| CliError::Invalid(e.to_string()))?;
            Ok(Outcome::ok(render(json, format!("{n}\n"), json!({ "count": n }))))
        }
    }
}
