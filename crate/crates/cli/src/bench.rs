//! Seeded channel simulation over all requested modes.

use std::time::Duration;

use anyhow::Result;
use gsdec::listdec::gsa_decode_with;
use gsdec::plan::default_j;
use gsdec::{Elem, GrsCode, GsaParams, Mode, Poly};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analyze::mode_name;

pub const PRNG: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64(seed), set_stream(trial)";

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_message(code: &GrsCode, rng: &mut ChaCha8Rng) -> Poly {
    let q = code.field().order();
    Poly::new(
        (0..code.k())
            .map(|_| Elem(rng.gen_range(0..q) as u16))
            .collect(),
    )
}

/// Adds uniformly random nonzero values at `weight` distinct positions.
pub fn add_errors(code: &GrsCode, c: &[Elem], weight: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let f = code.field();
    let q = f.order();
    let mut y = c.to_vec();
    for i in sample(rng, c.len(), weight.min(c.len())) {
        y[i] = f.add(y[i], Elem(rng.gen_range(1..q) as u16));
    }
    y
}

#[derive(Debug, Serialize)]
pub struct ModeReport {
    #[serde(serialize_with = "mode_name")]
    pub mode: Mode,
    #[serde(serialize_with = "mode_name")]
    pub effective_mode: Mode,
    pub successes: usize,
    pub success_rate: f64,
    pub rows: usize,
    pub cols: usize,
    pub max_list_size: usize,
    pub max_distance_found: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub prng: &'static str,
    pub seed: u64,
    pub errors: usize,
    pub trials: usize,
    pub eps_max: i64,
    pub modes: Vec<ModeReport>,
    /// Trials in which every mode returned the same list.
    pub lists_identical: usize,
}

struct Outcome {
    success: bool,
    list: Vec<Vec<Elem>>,
    max_distance: Option<usize>,
    rows: usize,
    cols: usize,
    effective: Mode,
    times: [Duration; 4],
}

pub struct Bench {
    pub report: BenchReport,
    /// Mean seconds per phase and mode: prepare, build, solve, factor.
    pub mean_times: Vec<(Mode, [f64; 4])>,
}

pub fn run(
    code: &GrsCode,
    params: &GsaParams,
    modes: &[Mode],
    j: Option<&[usize]>,
    errors: usize,
    trials: usize,
    seed: u64,
) -> Result<Bench> {
    let default = default_j(code);
    let j = j.unwrap_or(&default);
    let outcomes: Vec<Vec<Outcome>> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Vec<Outcome>> {
            let mut rng = trial_rng(seed, t as u64);
            let c = code.encode(&random_message(code, &mut rng))?;
            let y = add_errors(code, &c, errors, &mut rng);
            modes
                .iter()
                .map(|&m| {
                    let res = gsa_decode_with(code, params, &y, m, j)?;
                    let tm = &res.diagnostics.timings;
                    Ok(Outcome {
                        success: res.contains(&c),
                        max_distance: res.list.iter().map(|e| e.distance).max(),
                        list: res.list.into_iter().map(|e| e.codeword).collect(),
                        rows: res.diagnostics.rows,
                        cols: res.diagnostics.cols,
                        effective: res.mode,
                        times: [tm.prepare, tm.build, tm.solve, tm.factor],
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut reports = Vec::new();
    let mut mean_times = Vec::new();
    for (mi, &mode) in modes.iter().enumerate() {
        let per: Vec<&Outcome> = outcomes.iter().map(|o| &o[mi]).collect();
        let successes = per.iter().filter(|o| o.success).count();
        let mut times = [0f64; 4];
        for o in &per {
            for (acc, d) in times.iter_mut().zip(o.times) {
                *acc += d.as_secs_f64();
            }
        }
        times.iter_mut().for_each(|t| *t /= trials.max(1) as f64);
        mean_times.push((mode, times));
        reports.push(ModeReport {
            mode,
            effective_mode: per.first().map_or(mode, |o| o.effective),
            successes,
            success_rate: if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            },
            rows: per.first().map_or(0, |o| o.rows),
            cols: per.first().map_or(0, |o| o.cols),
            max_list_size: per.iter().map(|o| o.list.len()).max().unwrap_or(0),
            max_distance_found: per.iter().filter_map(|o| o.max_distance).max(),
        });
    }
    let lists_identical = outcomes
        .iter()
        .filter(|o| o.windows(2).all(|w| w[0].list == w[1].list))
        .count();
    Ok(Bench {
        report: BenchReport {
            schema_version: 1,
            prng: PRNG,
            seed,
            errors,
            trials,
            eps_max: params.eps_max,
            modes: reports,
            lists_identical,
        },
        mean_times,
    })
}

pub fn render_times(times: &[(Mode, [f64; 4])]) -> String {
    let mut out = format!(
        "{:<12} {:>12} {:>12} {:>12} {:>12}\n",
        "mode", "prepare ms", "build ms", "solve ms", "factor ms"
    );
    for (m, t) in times {
        out += &format!(
            "{:<12} {:>12.3} {:>12.3} {:>12.3} {:>12.3}\n",
            m.name(),
            t[0] * 1e3,
            t[1] * 1e3,
            t[2] * 1e3,
            t[3] * 1e3
        );
    }
    out
}
