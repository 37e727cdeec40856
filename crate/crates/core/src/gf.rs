//! Finite fields `F_q`, `q = p^m <= 2^16`, with log/antilog multiplication.
//!
//! Elements are packed integers in `[0, q)`: the base-`p` digits of the value
//! are the coefficients of the residue polynomial modulo the field modulus
//! (least significant digit = constant term). For prime fields the value is
//! simply the residue mod `p`.

use std::fmt;

use crate::error::{Error, Result};

/// A field element in packed base-`p` digit encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        u32::from(self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
enum Adder {
    /// Characteristic 2: addition is XOR of the packed bits.
    Xor,
    /// Prime field: residue addition.
    Prime,
    /// Small extension field: full `q x q` table.
    Table(Vec<u16>),
    /// Digit-wise addition mod `p`.
    Digits,
}

const ADD_TABLE_MAX_Q: u32 = 1024;

/// Default moduli, coefficients from constant term up to the leading 1.
const DEFAULT_MODULI_P2: [&[u32]; 15] = [
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 1, 0, 0, 0, 1],
    &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1],
    &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

const DEFAULT_MODULI_P3: [&[u32]; 7] = [
    &[2, 2, 1],
    &[1, 2, 0, 1],
    &[2, 0, 0, 2, 1],
    &[1, 2, 0, 0, 0, 1],
    &[2, 2, 1, 0, 2, 0, 1],
    &[1, 0, 2, 0, 0, 0, 0, 1],
    &[2, 2, 2, 0, 1, 2, 0, 0, 1],
];

/// Default modulus for `F_{p^m}`, `m >= 2`.
///
/// Ships the Conway polynomials for `p = 2, m <= 16` and `p = 3, m <= 8`; all
/// of them are primitive, so the designated primitive element is `x`.
pub fn default_modulus(p: u32, m: u32) -> Option<&'static [u32]> {
    let idx = (m as usize).checked_sub(2)?;
    match p {
        2 => DEFAULT_MODULI_P2.get(idx).copied(),
        3 => DEFAULT_MODULI_P3.get(idx).copied(),
        _ => None,
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for `F_{p^m}`.
///
/// Immutable after construction; share it behind an `Arc` or a reference.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: Elem,
    /// `exp[i] = alpha^i`, doubled so that `log a + log b` needs no reduction.
    exp: Vec<u16>,
    log: Vec<u16>,
    neg: Vec<u16>,
    adder: Adder,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Builds `F_{p^m}`.
    ///
    /// `modulus` lists the coefficients of a monic irreducible polynomial of
    /// degree `m` from the constant term upwards (so it has `m + 1` entries,
    /// the last being 1). It is ignored for `m = 1`; for `m > 1` it falls back
    /// to [`default_modulus`].
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= 1 << 16)
            .ok_or(Error::FieldTooLarge { p, m })?;

        let modulus: Vec<u32> = if m == 1 {
            Vec::new()
        } else {
            let given = match modulus {
                Some(c) => c,
                None => default_modulus(p, m).ok_or(Error::NoDefaultModulus { p, m })?,
            };
            if given.len() != m as usize + 1
                || given[m as usize] != 1
                || given.iter().any(|&c| c >= p)
            {
                return Err(Error::BadModulus {
                    expected: m,
                    got: given.len(),
                });
            }
            if !is_irreducible(given, p) {
                return Err(Error::ReducibleModulus(p));
            }
            given.to_vec()
        };

        let order = (q - 1) as usize;
        let one = 1u32;
        let candidates: Box<dyn Iterator<Item = u32>> = if m == 1 {
            Box::new(1..q)
        } else {
            Box::new(std::iter::once(p).chain(2..q))
        };
        let mut found = None;
        for g in candidates {
            let mut powers = Vec::with_capacity(order);
            let mut cur = one;
            loop {
                powers.push(cur);
                cur = residue_mul(cur, g, p, m, &modulus);
                if cur == one || powers.len() > order {
                    break;
                }
            }
            if powers.len() == order && cur == one {
                found = Some((g, powers));
                break;
            }
        }
        let (alpha, powers) = found.ok_or(Error::NoPrimitiveElement)?;

        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![0u16; q as usize];
        for (i, &v) in powers.iter().enumerate() {
            exp[i] = v as u16;
            exp[i + order] = v as u16;
            log[v as usize] = i as u16;
        }

        let neg = (0..q).map(|a| digit_neg(a, p, m) as u16).collect();
        let adder = if p == 2 {
            Adder::Xor
        } else if m == 1 {
            Adder::Prime
        } else if q <= ADD_TABLE_MAX_Q {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, m) as u16;
                }
            }
            Adder::Table(t)
        } else {
            Adder::Digits
        };

        Ok(Field {
            p,
            m,
            q,
            modulus,
            alpha: Elem(alpha as u16),
            exp,
            log,
            neg,
            adder,
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The designated primitive element.
    #[inline]
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// Validates a packed integer as an element of this field.
    pub fn elem(&self, value: u32) -> Result<Elem> {
        if value < self.q {
            Ok(Elem(value as u16))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// Every element of the field in increasing packed order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|v| Elem(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.adder {
            Adder::Xor => Elem(a.0 ^ b.0),
            Adder::Prime => {
                let s = u32::from(a.0) + u32::from(b.0);
                Elem(if s >= self.p { s - self.p } else { s } as u16)
            }
            Adder::Table(t) => Elem(t[a.0 as usize * self.q as usize + b.0 as usize]),
            Adder::Digits => Elem(digit_add(a.value(), b.value(), self.p, self.m) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let order = (self.q - 1) as usize;
        let l = self.log[a.0 as usize] as usize;
        Some(Elem(self.exp[(order - l) % order.max(1)]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = u64::from(self.q - 1);
        let l = u64::from(self.log[a.0 as usize]);
        Elem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `alpha^e` for any integer exponent (negative exponents invert).
    pub fn alpha_pow(&self, e: i64) -> Elem {
        let order = i64::from(self.q - 1);
        Elem(self.exp[e.rem_euclid(order) as usize])
    }

    /// Discrete logarithm to base `alpha`; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| u32::from(self.log[a.0 as usize]))
    }

    /// `n mod p` copies of 1.
    #[inline]
    pub fn embed_int(&self, n: u64) -> Elem {
        Elem((n % u64::from(self.p)) as u16)
    }

    /// Checked arithmetic on raw values, rejecting elements outside the field.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem> {
        for x in [a, b] {
            self.elem(x.value())?;
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// `dst[i] += factor * src[i]` over the common prefix.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], factor: Elem, src: &[Elem]) {
        if factor.is_zero() {
            return;
        }
        let lf = self.log[factor.0 as usize] as usize;
        let exp = &self.exp;
        let log = &self.log;
        let scaled = |s: Elem| -> u16 {
            if s.0 == 0 {
                0
            } else {
                exp[lf + log[s.0 as usize] as usize]
            }
        };
        match &self.adder {
            Adder::Xor => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    d.0 ^= scaled(s);
                }
            }
            Adder::Prime => {
                let p = self.p;
                for (d, &s) in dst.iter_mut().zip(src) {
                    let v = u32::from(d.0) + u32::from(scaled(s));
                    d.0 = if v >= p { v - p } else { v } as u16;
                }
            }
            Adder::Table(t) => {
                let q = self.q as usize;
                for (d, &s) in dst.iter_mut().zip(src) {
                    d.0 = t[d.0 as usize * q + scaled(s) as usize];
                }
            }
            Adder::Digits => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, Elem(scaled(s)));
                }
            }
        }
    }
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digit_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn digit_neg(a: u32, p: u32, m: u32) -> u32 {
    let ds: Vec<u32> = digits(a, p, m).into_iter().map(|d| (p - d) % p).collect();
    pack(&ds, p)
}

/// Product of two packed residues modulo the (monic) modulus.
fn residue_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    if m == 1 {
        return ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32;
    }
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_mod_p(&mut prod, modulus, p);
    pack(&prod[..m as usize], p)
}

/// Reduces `a` in place modulo the monic `f` over `F_p`; the remainder occupies
/// the low `deg f` entries.
fn poly_rem_mod_p(a: &mut [u32], f: &[u32], p: u32) {
    let df = f.len() - 1;
    for d in (df..a.len()).rev() {
        let c = a[d];
        if c == 0 {
            continue;
        }
        for (i, &fi) in f.iter().enumerate() {
            let idx = d - df + i;
            a[idx] = (a[idx] + (p - c) * fi) % p;
        }
    }
}

/// Trial division by every monic polynomial of degree `1..=m/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            let mut rem = f.to_vec();
            poly_rem_mod_p(&mut rem, &g, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
