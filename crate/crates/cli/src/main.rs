mod analyze;
mod bench;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use gsdec::listdec::gsa_decode_with;
use gsdec::plan::default_j;
use gsdec::{GsaParams, Mode};
use serde::Serialize;

use crate::analyze::mode_name;
use crate::config::{format_vector, values, CodeConfig, ParamsConfig};

/// Guruswami-Sudan list decoding of GRS codes.
#[derive(Parser)]
#[command(name = "gsdec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decoding radius, degree bounds and system sizes for every mode.
    Analyze {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        params: PathBuf,
        /// Emit JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// List-decode a received vector; exits 1 when the list is empty.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        received: PathBuf,
        /// Overrides the parameter file's mode (`all` or comma-separated).
        #[arg(long)]
        mode: Option<String>,
    },
    /// Seeded simulation: random messages, weight-E errors, decode.
    Bench {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        errors: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        modes: Option<String>,
    },
    /// Encode a message (coefficients, lowest first).
    Gen {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: PathBuf,
    },
    /// Add a seeded error of the given weight to a vector.
    Corrupt {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct ListEntry {
    message: Vec<u32>,
    codeword: Vec<u32>,
    distance: usize,
}

#[derive(Serialize)]
struct TimingsMs {
    prepare: f64,
    build: f64,
    solve: f64,
    factor: f64,
}

#[derive(Serialize)]
struct DecodeDiagnostics {
    unknowns: usize,
    rows: usize,
    cols: usize,
    roots: usize,
    timings_ms: TimingsMs,
}

#[derive(Serialize)]
struct ModeResult {
    #[serde(serialize_with = "mode_name")]
    mode: Mode,
    #[serde(serialize_with = "mode_name")]
    effective_mode: Mode,
    #[serde(rename = "J")]
    j: Vec<usize>,
    list: Vec<ListEntry>,
    diagnostics: DecodeDiagnostics,
}

#[derive(Serialize)]
struct DecodeOutput {
    schema_version: u32,
    received: Vec<u32>,
    eps_max: i64,
    results: Vec<ModeResult>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(code: &Path, params: &Path) -> Result<(gsdec::GrsCode, ParamsConfig, GsaParams)> {
    let code = CodeConfig::load(code)?.build()?;
    let pc = ParamsConfig::load(params)?;
    let params = GsaParams::derive(&code, pc.r, pc.ell)?;
    Ok((code, pc, params))
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze { code, params, json } => {
            let code = CodeConfig::load(&code)?.build()?;
            let pc = ParamsConfig::load(&params)?;
            let a = analyze::analyze(&code, pc.r, pc.ell)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a)?);
            } else {
                print!("{}", analyze::render_text(&a));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode {
            code,
            params,
            received,
            mode,
        } => {
            let (code, pc, params) = load(&code, &params)?;
            let modes = match mode {
                Some(m) => config::parse_modes(&m)?,
                None => pc.modes()?,
            };
            let y = config::load_vector(&received, &code)?;
            let j = pc.j.clone().unwrap_or_else(|| default_j(&code));
            let mut results = Vec::new();
            for m in modes {
                let res = gsa_decode_with(&code, &params, &y, m, &j)?;
                let t = &res.diagnostics.timings;
                results.push(ModeResult {
                    mode: m,
                    effective_mode: res.mode,
                    j: res.j.clone(),
                    list: res
                        .list
                        .iter()
                        .map(|c| ListEntry {
                            message: values(c.message.coeffs()),
                            codeword: values(&c.codeword),
                            distance: c.distance,
                        })
                        .collect(),
                    diagnostics: DecodeDiagnostics {
                        unknowns: res.diagnostics.unknowns,
                        rows: res.diagnostics.rows,
                        cols: res.diagnostics.cols,
                        roots: res.diagnostics.roots,
                        timings_ms: TimingsMs {
                            prepare: ms(t.prepare),
                            build: ms(t.build),
                            solve: ms(t.solve),
                            factor: ms(t.factor),
                        },
                    },
                });
            }
            let found = results.iter().any(|r| !r.list.is_empty());
            let out = DecodeOutput {
                schema_version: 1,
                received: values(&y),
                eps_max: params.eps_max,
                results,
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(if found {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bench {
            code,
            params,
            errors,
            trials,
            seed,
            modes,
        } => {
            let (code, pc, params) = load(&code, &params)?;
            let modes = match modes {
                Some(m) => config::parse_modes(&m)?,
                None => pc.modes()?,
            };
            let b = bench::run(
                &code,
                &params,
                &modes,
                pc.j.as_deref(),
                errors,
                trials,
                seed,
            )?;
            println!("{}", serde_json::to_string_pretty(&b.report)?);
            eprint!("{}", bench::render_times(&b.mean_times));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { code, message } => {
            let code = CodeConfig::load(&code)?.build()?;
            let u = config::load_message(&message, &code)?;
            println!("{}", format_vector(&code.encode(&u)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Corrupt {
            code,
            input,
            weight,
            seed,
        } => {
            let code = CodeConfig::load(&code)?.build()?;
            let v = config::load_vector(&input, &code)?;
            if weight > code.n() {
                bail!("weight {weight} exceeds n = {}", code.n());
            }
            let mut rng = bench::trial_rng(seed, 0);
            println!(
                "{}",
                format_vector(&bench::add_errors(&code, &v, weight, &mut rng))
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
