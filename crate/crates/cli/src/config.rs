//! Configuration and vector file formats.
//!
//! Code and parameter files are TOML. Vectors and messages are
//! whitespace-separated element integers (messages lowest coefficient first).

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use gsdec::{Elem, Field, GrsCode, Mode, Poly};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    /// `m + 1` coefficients over F_p, constant term first.
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    pub locators: Option<Vec<u32>>,
    pub multipliers: Option<Vec<u32>>,
    pub abscissas: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl CodeConfig {
    pub fn load(path: &Path) -> Result<CodeConfig> {
        let text = read(path)?;
        toml::from_str(&text).with_context(|| format!("malformed code file {}", path.display()))
    }

    pub fn build(&self) -> Result<GrsCode> {
        let field = Arc::new(Field::new(self.p, self.m, self.modulus.as_deref())?);
        let elems = |name: &str, v: &Option<Vec<u32>>| -> Result<Option<Vec<Elem>>> {
            let Some(v) = v else { return Ok(None) };
            if v.len() != self.n {
                bail!("{name} has {} entries, expected n = {}", v.len(), self.n);
            }
            Ok(Some(
                v.iter()
                    .map(|&x| field.elem(x))
                    .collect::<gsdec::Result<_>>()?,
            ))
        };
        let locators = match elems("locators", &self.locators)? {
            Some(l) => l,
            None => {
                if self.n as u64 > u64::from(field.order()) - 1 {
                    bail!("n = {} exceeds q - 1 = {}", self.n, field.order() - 1);
                }
                (0..self.n as i64).map(|i| field.alpha_pow(i)).collect()
            }
        };
        let multipliers = elems("multipliers", &self.multipliers)?;
        let abscissas = elems("abscissas", &self.abscissas)?;
        Ok(GrsCode::new(
            field,
            self.k,
            locators,
            multipliers,
            abscissas,
        )?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub r: usize,
    pub ell: usize,
    #[serde(default = "all_modes")]
    pub mode: String,
    #[serde(rename = "J")]
    pub j: Option<Vec<usize>>,
}

fn all_modes() -> String {
    "all".into()
}

impl ParamsConfig {
    pub fn load(path: &Path) -> Result<ParamsConfig> {
        let text = read(path)?;
        toml::from_str(&text)
            .with_context(|| format!("malformed parameter file {}", path.display()))
    }

    pub fn modes(&self) -> Result<Vec<Mode>> {
        parse_modes(&self.mode)
    }
}

/// `all` or a comma-separated list of mode names.
pub fn parse_modes(spec: &str) -> Result<Vec<Mode>> {
    if spec == "all" {
        return Ok(Mode::ALL.to_vec());
    }
    let mut modes = Vec::new();
    for name in spec.split(',') {
        let m: Mode = name.trim().parse()?;
        if !modes.contains(&m) {
            modes.push(m);
        }
    }
    Ok(modes)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn parse_ints(text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .with_context(|| format!("not an element integer: {t:?}"))
        })
        .collect()
}

/// A received or code vector of length `n` over the code's field.
pub fn load_vector(path: &Path, code: &GrsCode) -> Result<Vec<Elem>> {
    let values = parse_ints(&read(path)?)?;
    if values.len() != code.n() {
        bail!(
            "{} holds {} entries, expected n = {}",
            path.display(),
            values.len(),
            code.n()
        );
    }
    Ok(values
        .into_iter()
        .map(|v| code.field().elem(v))
        .collect::<gsdec::Result<_>>()?)
}

pub fn load_message(path: &Path, code: &GrsCode) -> Result<Poly> {
    let values = parse_ints(&read(path)?)?;
    let coeffs: Vec<Elem> = values
        .into_iter()
        .map(|v| code.field().elem(v))
        .collect::<gsdec::Result<_>>()?;
    Ok(Poly::new(coeffs))
}

pub fn format_vector(v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    parts.join(" ")
}

pub fn values(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.value()).collect()
}
