//! Zero structure of the Pascal triangle modulo a prime.
//!
//! Column `t` of the left-aligned triangle holds `C(t, t), C(t+1, t), ...`.
//! A *zero column* `t0 < r` has `C(nu, t0) = 0 mod p` for every
//! `t0 < nu <= ell`; columns whose nonzero entries below the diagonal all sit
//! in rows that are themselves such columns ("resolvable spoilers") give rise
//! to further a-priori known factors of the interpolation polynomial.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// `C(u, v) mod p` via Lucas' theorem, digit by digit in base `p`.
pub fn binom_mod_p(u: u64, v: u64, p: u32) -> u32 {
    let p64 = u64::from(p);
    let (mut u, mut v) = (u, v);
    let mut acc = 1u64;
    while v > 0 || u > 0 {
        let (ud, vd) = (u % p64, v % p64);
        if vd > ud {
            return 0;
        }
        acc = acc * small_binom(ud, vd, p64) % p64;
        u /= p64;
        v /= p64;
    }
    (acc % p64) as u32
}

/// `C(a, b) mod p` for `b <= a < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn check_r_ell(r: usize, ell: usize) -> Result<()> {
    if r == 0 || r > ell {
        return Err(Error::InvalidParams(format!(
            "need 1 <= r <= ell, got r = {r}, ell = {ell}"
        )));
    }
    Ok(())
}

/// The maximal (rightmost) zero column `t0 < r`, if one exists.
pub fn max_zero_column(p: u32, r: usize, ell: usize) -> Result<Option<usize>> {
    check_r_ell(r, ell)?;
    let p = p as usize;
    if ell < p {
        return Ok(None);
    }
    // r <= a p^j - 1 <= ell for some a in [1, p) rules out a zero column
    let mut pj = 1usize;
    while pj <= ell + 1 {
        if (1..p).any(|a| r < a * pj && a * pj - 1 <= ell) {
            return Ok(None);
        }
        pj *= p;
    }
    // t is a zero column iff t + p^s > ell, s = number of trailing (p-1)
    // digits of t; the largest candidate below r for each s >= 1 suffices.
    let mut best = None;
    let mut ps = p;
    while ps <= r {
        let t = (r / ps) * ps - 1;
        if t + p.pow(trailing_max_digits(t, p)) > ell {
            best = best.max(Some(t));
        }
        ps *= p;
    }
    Ok(best)
}

fn trailing_max_digits(mut t: usize, p: usize) -> u32 {
    let mut s = 0;
    while t % p == p - 1 {
        t /= p;
        s += 1;
    }
    s
}

/// Spoilers of column `nu`: rows `t` in `(nu, t0]` with `C(t, nu) != 0 mod p`.
pub fn spoiler_set(p: u32, nu: usize, t0: usize, ell: usize) -> Vec<usize> {
    debug_assert!(nu <= t0 && t0 <= ell);
    (nu + 1..=t0)
        .filter(|&t| binom_mod_p(t as u64, nu as u64, p) != 0)
        .collect()
}

/// Zero columns with resolvable spoilers: every `t < r` whose entries in rows
/// `t0 + 1 ..= ell` all vanish mod `p`. Empty when no zero column exists.
pub fn resolvable_set(p: u32, r: usize, ell: usize) -> Result<Vec<usize>> {
    let Some(t0) = max_zero_column(p, r, ell)? else {
        return Ok(Vec::new());
    };
    Ok((0..r)
        .filter(|&t| (t0 + 1..=ell).all(|row| binom_mod_p(row as u64, t as u64, p) == 0))
        .collect())
}

/// Everything the Sierpinski prefactors need for one `(p, r, ell)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SierpinskiContext {
    pub p: u32,
    pub r: usize,
    pub ell: usize,
    pub t0: Option<usize>,
    /// Sorted zero columns with resolvable spoilers.
    pub resolvable: Vec<usize>,
    /// Greatest spoiler of each resolvable column (or the column itself).
    pub g: BTreeMap<usize, usize>,
}

impl SierpinskiContext {
    pub fn new(p: u32, r: usize, ell: usize) -> Result<Self> {
        let t0 = max_zero_column(p, r, ell)?;
        let resolvable = resolvable_set(p, r, ell)?;
        let g = match t0 {
            Some(t0) => resolvable
                .iter()
                .map(|&nu| {
                    let s = spoiler_set(p, nu, t0, ell);
                    (nu, s.last().copied().unwrap_or(nu))
                })
                .collect(),
            None => BTreeMap::new(),
        };
        Ok(SierpinskiContext {
            p,
            r,
            ell,
            t0,
            resolvable,
            g,
        })
    }

    pub fn is_resolvable(&self, nu: usize) -> bool {
        self.g.contains_key(&nu)
    }

    /// `max(S_nu)` when `nu` has spoilers, else `nu`.
    pub fn g_map(&self, nu: usize) -> Result<usize> {
        self.g.get(&nu).copied().ok_or(Error::NotResolvable(nu))
    }
}
