//! Decoding parameters and prefactor plans.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grs::GrsCode;
use crate::poly::{locator_product, Poly};
use crate::sierpinski::SierpinskiContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsaParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub ell: usize,
    /// Decoding radius as a reduced fraction.
    pub eps0_num: i64,
    pub eps0_den: i64,
    /// Largest integer strictly below the radius.
    pub eps_max: i64,
    /// `d_nu^Q` for `nu = 0..=ell`.
    pub d_q: Vec<i64>,
}

impl GsaParams {
    pub fn new(n: usize, k: usize, r: usize, ell: usize) -> Result<GsaParams> {
        if r == 0 || r > ell {
            return Err(Error::InvalidParams(format!(
                "need 1 <= r <= ell, got r = {r}, ell = {ell}"
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let (n_, k_, r_, l_) = (n as i64, k as i64, r as i64, ell as i64);
        let num = n_ * r_ * (2 * l_ - r_ + 1) - l_ * (k_ - 1) * (l_ + 1);
        let den = 2 * r_ * (l_ + 1);
        let g = gcd(num.abs(), den);
        let (num, den) = (num / g, den / g);
        let eps_max = -(-num).div_euclid(den) - 1;
        if eps_max < 0 {
            return Err(Error::NoCorrectionCapability { num, den });
        }
        let d_q: Vec<i64> = (0..=l_)
            .map(|nu| r_ * (n_ - eps_max) - nu * (k_ - 1) - 1)
            .collect();
        let params = GsaParams {
            n,
            k,
            r,
            ell,
            eps0_num: num,
            eps0_den: den,
            eps_max,
            d_q,
        };
        if params.full_unknowns() <= params.equations(0) {
            return Err(Error::InvalidParams(format!(
                "{} unknowns do not exceed {} equations",
                params.full_unknowns(),
                params.equations(0)
            )));
        }
        Ok(params)
    }

    pub fn derive(code: &GrsCode, r: usize, ell: usize) -> Result<GsaParams> {
        GsaParams::new(code.n(), code.k(), r, ell)
    }

    /// Number of Hasse constraints per interpolation point.
    pub fn constraints_per_point(&self) -> usize {
        self.r * (self.r + 1) / 2
    }

    /// Equation count when `skipped` points are left out.
    pub fn equations(&self, skipped: usize) -> usize {
        (self.n - skipped) * self.constraints_per_point()
    }

    pub fn full_unknowns(&self) -> usize {
        count(&self.d_q)
    }

    pub fn eps0_string(&self) -> String {
        if self.eps0_den == 1 {
            self.eps0_num.to_string()
        } else {
            format!("{}/{}", self.eps0_num, self.eps0_den)
        }
    }
}

/// `derive_params` under its conventional name.
pub fn derive_params(code: &GrsCode, r: usize, ell: usize) -> Result<GsaParams> {
    GsaParams::derive(code, r, ell)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn count(d: &[i64]) -> usize {
    d.iter().map(|&x| (x + 1).max(0) as usize).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    None,
    Reencoding,
    Sierpinski,
    Combined,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::None,
        Mode::Reencoding,
        Mode::Sierpinski,
        Mode::Combined,
    ];

    pub fn uses_reencoding(self) -> bool {
        matches!(self, Mode::Reencoding | Mode::Combined)
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::None => "none",
            Mode::Reencoding => "reencoding",
            Mode::Sierpinski => "sierpinski",
            Mode::Combined => "combined",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown mode {s:?}")))
    }
}

/// Prefactor rows and quotient degree bounds, without the polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePlan {
    pub mode: Mode,
    pub f_set: Vec<usize>,
    /// `d_nu^G` for every `nu`; equals `d_nu^Q` outside `f_set`.
    pub d_g: Vec<i64>,
}

impl DegreePlan {
    pub fn new(params: &GsaParams, p: u32, mode: Mode) -> Result<DegreePlan> {
        let ctx = SierpinskiContext::new(p, params.r, params.ell)?;
        Ok(Self::with_context(params, &ctx, mode))
    }

    pub(crate) fn with_context(
        params: &GsaParams,
        ctx: &SierpinskiContext,
        mode: Mode,
    ) -> DegreePlan {
        let (n, k, r) = (params.n as i64, params.k as i64, params.r);
        let mut d_g = params.d_q.clone();
        let f_set: Vec<usize> = match mode {
            Mode::None => Vec::new(),
            Mode::Reencoding => (0..r).collect(),
            Mode::Sierpinski => ctx.resolvable.clone(),
            Mode::Combined => (0..r).collect(),
        };
        for &nu in &f_set {
            let reenc = k * (r - nu) as i64;
            let sier = ctx.g.get(&nu).map(|&g| (r - g) as i64);
            d_g[nu] -= match (mode, sier) {
                (Mode::Reencoding, _) | (Mode::Combined, None) => reenc,
                (Mode::Sierpinski, Some(e)) => n * e,
                (Mode::Combined, Some(e)) => reenc + (n - k) * e,
                _ => unreachable!("row {nu} has no prefactor in mode {mode}"),
            };
        }
        DegreePlan { mode, f_set, d_g }
    }

    pub fn unknown_count(&self) -> usize {
        count(&self.d_g)
    }

    /// Table-style sum of the degree bounds.
    pub fn degree_sum(&self) -> i64 {
        self.d_g.iter().sum()
    }
}

/// Number of unknowns of the reduced system for `mode`.
pub fn unknown_count_for(params: &GsaParams, p: u32, mode: Mode) -> Result<usize> {
    Ok(DegreePlan::new(params, p, mode)?.unknown_count())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefactorPlan {
    /// Mode actually in effect.
    pub mode: Mode,
    /// Mode asked for; differs when sierpinski had nothing to offer.
    pub requested: Mode,
    pub j: Vec<usize>,
    pub f_set: Vec<usize>,
    pub factors: BTreeMap<usize, Poly>,
    pub d_g: Vec<i64>,
    pub skip_rows: Vec<usize>,
    pub sierpinski: SierpinskiContext,
}

impl PrefactorPlan {
    pub fn degenerate(&self) -> bool {
        self.mode != self.requested
    }

    pub fn unknown_count(&self) -> usize {
        count(&self.d_g)
    }

    pub fn has_factor(&self, nu: usize) -> bool {
        self.factors.contains_key(&nu)
    }
}

pub fn unknown_count(plan: &PrefactorPlan) -> usize {
    plan.unknown_count()
}

/// The default re-encoding set: the last `k` positions.
pub fn default_j(code: &GrsCode) -> Vec<usize> {
    (code.n() - code.k()..code.n()).collect()
}

pub fn build_plan(
    code: &GrsCode,
    params: &GsaParams,
    mode: Mode,
    j: Option<&[usize]>,
) -> Result<PrefactorPlan> {
    if params.n != code.n() || params.k != code.k() {
        return Err(Error::PlanMismatch(
            "parameters derived for a different code".into(),
        ));
    }
    let f = code.field();
    let ctx = SierpinskiContext::new(f.characteristic(), params.r, params.ell)?;
    let requested = mode;
    let mode = if mode == Mode::Sierpinski && ctx.resolvable.is_empty() {
        Mode::None
    } else {
        mode
    };
    let j: Vec<usize> = if mode.uses_reencoding() {
        let j = j.ok_or(Error::ReencodingSetRequired { k: code.k() })?;
        if j.len() != code.k() {
            return Err(Error::ReencodingSetRequired { k: code.k() });
        }
        let mut sorted = j.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePosition(w[0]));
        }
        if let Some(&i) = sorted.last().filter(|&&i| i >= code.n()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: code.n(),
            });
        }
        sorted
    } else {
        Vec::new()
    };
    let degrees = DegreePlan::with_context(params, &ctx, mode);
    let x = code.abscissas();
    let in_j = {
        let mut v = vec![false; code.n()];
        j.iter().for_each(|&i| v[i] = true);
        v
    };
    let all: Vec<usize> = (0..code.n()).collect();
    let rest: Vec<usize> = all.iter().copied().filter(|&i| !in_j[i]).collect();
    let p_j = locator_product(&j, x, f)?;
    let p_i = locator_product(&all, x, f)?;
    let p_rest = locator_product(&rest, x, f)?;
    let r = params.r;
    let factors = degrees
        .f_set
        .iter()
        .map(|&nu| {
            let sier = ctx.g.get(&nu).map(|&g| r - g);
            let poly = match (mode, sier) {
                (Mode::Sierpinski, Some(e)) => p_i.pow(e, f),
                (Mode::Combined, Some(e)) => p_j.pow(r - nu, f).mul(&p_rest.pow(e, f), f),
                _ => p_j.pow(r - nu, f),
            };
            (nu, poly)
        })
        .collect();
    Ok(PrefactorPlan {
        mode,
        requested,
        skip_rows: j.clone(),
        j,
        f_set: degrees.f_set,
        factors,
        d_g: degrees.d_g,
        sierpinski: ctx,
    })
}

/// Which modes shrink the system for the given parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applicability {
    pub sierpinski: SierpinskiContext,
    /// `(mode, nontrivial, unknowns)` for every mode.
    pub modes: Vec<(Mode, bool, usize)>,
}

pub fn mode_applicability(params: &GsaParams, p: u32) -> Result<Applicability> {
    let ctx = SierpinskiContext::new(p, params.r, params.ell)?;
    let modes = Mode::ALL
        .into_iter()
        .map(|m| {
            let plan = DegreePlan::with_context(params, &ctx, m);
            let nontrivial = match m {
                Mode::None => true,
                Mode::Sierpinski => !ctx.resolvable.is_empty(),
                _ => !plan.f_set.is_empty(),
            };
            (m, nontrivial, plan.unknown_count())
        })
        .collect();
    Ok(Applicability {
        sierpinski: ctx,
        modes,
    })
}
