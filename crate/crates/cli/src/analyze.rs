//! Parameter analysis: radius, Sierpinski structure, degree bounds and
//! system sizes per mode.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Result;
use gsdec::plan::{mode_applicability, DegreePlan};
use gsdec::{GrsCode, GsaParams, Mode};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CodeSummary {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Serialize)]
pub struct ModeSummary {
    #[serde(serialize_with = "mode_name")]
    pub mode: Mode,
    pub applicable: bool,
    pub f_set: Vec<usize>,
    pub degree_bounds: Vec<i64>,
    pub degree_sum: i64,
    pub unknowns: usize,
    pub rows: usize,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub schema_version: u32,
    pub code: CodeSummary,
    pub r: usize,
    pub ell: usize,
    pub eps0: String,
    pub eps_max: i64,
    pub t0: Option<usize>,
    pub resolvable: Vec<usize>,
    pub g: BTreeMap<usize, usize>,
    pub modes: Vec<ModeSummary>,
}

pub fn mode_name<S: serde::Serializer>(m: &Mode, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(m.name())
}

pub fn analyze(code: &GrsCode, r: usize, ell: usize) -> Result<Analysis> {
    let params = GsaParams::derive(code, r, ell)?;
    let f = code.field();
    let p = f.characteristic();
    let app = mode_applicability(&params, p)?;
    let ctx = app.sierpinski;
    let modes = Mode::ALL
        .iter()
        .zip(&app.modes)
        .map(|(&mode, &(_, applicable, unknowns))| {
            let plan = DegreePlan::new(&params, p, mode)?;
            let skipped = if mode.uses_reencoding() { code.k() } else { 0 };
            Ok(ModeSummary {
                mode,
                applicable,
                degree_sum: plan.degree_sum(),
                f_set: plan.f_set,
                degree_bounds: plan.d_g,
                unknowns,
                rows: params.equations(skipped),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Analysis {
        schema_version: 1,
        code: CodeSummary {
            p,
            m: f.degree(),
            q: f.order(),
            n: code.n(),
            k: code.k(),
        },
        r,
        ell,
        eps0: params.eps0_string(),
        eps_max: params.eps_max,
        t0: ctx.t0,
        resolvable: ctx.resolvable.clone(),
        g: ctx.g.clone(),
        modes,
    })
}

fn set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// The text report: header, per-row degree bounds, per-mode system sizes.
pub fn render_text(a: &Analysis) -> String {
    let mut out = String::new();
    let c = &a.code;
    let _ = writeln!(
        out,
        "code: GRS over F_{} (p = {}, m = {}), n = {}, k = {}",
        c.q, c.p, c.m, c.n, c.k
    );
    let _ = writeln!(out, "parameters: r = {}, ell = {}", a.r, a.ell);
    let _ = writeln!(
        out,
        "decoding radius: eps0 = {}, eps_max = {}",
        a.eps0, a.eps_max
    );
    match a.t0 {
        Some(t0) => {
            let _ = writeln!(out, "maximal zero column: t0 = {t0}");
        }
        None => {
            let _ = writeln!(out, "maximal zero column: none");
        }
    }
    let _ = writeln!(out, "resolvable columns: R0 = {}", set(&a.resolvable));
    let g: Vec<String> = a.g.iter().map(|(nu, g)| format!("g[{nu}] = {g}")).collect();
    let _ = writeln!(
        out,
        "g-map: {}",
        if g.is_empty() {
            "-".into()
        } else {
            g.join(", ")
        }
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "degree bounds (dQ: none, dU: reencoding, dV: sierpinski, dW/U: combined)"
    );
    let _ = writeln!(
        out,
        "{:>4} {:>7} {:>7} {:>7} {:>7}",
        "nu", "dQ", "dU", "dV", "dW/U"
    );
    for nu in 0..=a.ell {
        let _ = write!(out, "{nu:>4}");
        for m in &a.modes {
            let _ = write!(out, " {:>7}", m.degree_bounds[nu]);
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>4}", "sum");
    for m in &a.modes {
        let _ = write!(out, " {:>7}", m.degree_sum);
    }
    out.push('\n');
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<12} {:>10} {:>8}  prefactor rows",
        "mode", "unknowns", "rows"
    );
    for m in &a.modes {
        let rows = if m.applicable {
            set(&m.f_set)
        } else {
            "inapplicable".into()
        };
        let _ = writeln!(
            out,
            "{:<12} {:>10} {:>8}  {}",
            m.mode.name(),
            m.unknowns,
            m.rows,
            rows
        );
    }
    out
}
