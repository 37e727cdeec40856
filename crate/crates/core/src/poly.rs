//! Dense univariate and bivariate polynomials over `F_q`.
//!
//! Polynomials do not carry their field; every operation that needs
//! arithmetic takes a `&Field`.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::sierpinski::binom_mod_p;

/// `C(u, v)` embedded into the field.
#[inline]
pub(crate) fn binom_in(f: &Field, u: usize, v: usize) -> Elem {
    Elem(binom_mod_p(u as u64, v as u64, f.characteristic()) as u16)
}

/// Univariate polynomial, coefficient `i` belongs to `x^i`. Never stores
/// trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from raw packed values without range checks.
    pub fn from_values(values: &[u16]) -> Poly {
        Poly::new(values.iter().map(|&v| Elem(v)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of leading `x` factors; zero for the zero polynomial.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, &s) in out.iter_mut().zip(&short.coeffs) {
            *o = f.add(*o, s);
        }
        Poly::new(out)
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..], a, &other.coeffs);
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, f: &Field) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        result
    }

    /// Long division, `self = quotient * divisor + remainder`.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[db]).ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            f.axpy(&mut rem[i..=i + db], f.neg(c), &divisor.coeffs);
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Poly, f: &Field) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor, f)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonExactDivision)
        }
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `s`-th Hasse derivative: `sum_mu C(mu, s) P_mu x^(mu - s)`.
    pub fn hasse(&self, s: usize, f: &Field) -> Poly {
        if s == 0 {
            return self.clone();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(s)
                .map(|(mu, &c)| f.mul(binom_in(f, mu, s), c))
                .collect(),
        )
    }
}

/// `prod_{i in S} (x - points[i])`; the empty product is 1.
pub fn locator_product(indices: &[usize], points: &[Elem], f: &Field) -> Result<Poly> {
    for (a, &i) in indices.iter().enumerate() {
        if i >= points.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: points.len(),
            });
        }
        for &j in &indices[..a] {
            if points[i] == points[j] {
                return Err(Error::DuplicateAbscissa(j, i));
            }
        }
    }
    let mut coeffs = vec![Elem::ONE];
    for &i in indices {
        let root = f.neg(points[i]);
        coeffs.push(Elem::ZERO);
        for d in (1..coeffs.len()).rev() {
            coeffs[d] = f.add(coeffs[d - 1], f.mul(coeffs[d], root));
        }
        coeffs[0] = f.mul(coeffs[0], root);
    }
    Ok(Poly::new(coeffs))
}

/// `Q(x, z) = sum_nu Q_nu(x) z^nu`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    rows: Vec<Poly>,
}

impl BivarPoly {
    pub fn new(mut rows: Vec<Poly>) -> BivarPoly {
        while rows.last().is_some_and(Poly::is_zero) {
            rows.pop();
        }
        BivarPoly { rows }
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    /// `Q_nu(x)`, zero beyond the z-degree.
    pub fn row(&self, nu: usize) -> Poly {
        self.rows.get(nu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn z_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn eval(&self, x0: Elem, z0: Elem, f: &Field) -> Elem {
        self.rows.iter().rev().fold(Elem::ZERO, |acc, row| {
            f.add(f.mul(acc, z0), row.eval(x0, f))
        })
    }

    /// The `(s, t)` mixed Hasse derivative evaluated at `(x0, z0)`.
    pub fn hasse_eval(&self, s: usize, t: usize, x0: Elem, z0: Elem, f: &Field) -> Elem {
        let mut acc = Elem::ZERO;
        let mut zpow = Elem::ONE;
        for (nu, row) in self.rows.iter().enumerate().skip(t) {
            let b = binom_in(f, nu, t);
            if !b.is_zero() {
                let inner = row.hasse(s, f).eval(x0, f);
                acc = f.add(acc, f.mul(b, f.mul(zpow, inner)));
            }
            zpow = f.mul(zpow, z0);
        }
        acc
    }

    /// Whether `(x0, z0)` is a zero of multiplicity at least `r`.
    pub fn has_zero_of_multiplicity(&self, r: usize, x0: Elem, z0: Elem, f: &Field) -> bool {
        (0..r).all(|s| (0..r - s).all(|t| self.hasse_eval(s, t, x0, z0, f).is_zero()))
    }

    /// Divides by `z - w(x)`, returning quotient and the remainder `Q(x, w(x))`.
    pub fn div_linear_z(&self, w: &Poly, f: &Field) -> (BivarPoly, Poly) {
        let Some(top) = self.z_degree() else {
            return (BivarPoly::default(), Poly::zero());
        };
        let mut quot = vec![Poly::zero(); top];
        let mut carry = self.rows[top].clone();
        for nu in (0..top).rev() {
            quot[nu] = carry.clone();
            carry = self.rows[nu].add(&carry.mul(w, f), f);
        }
        (BivarPoly::new(quot), carry)
    }

    /// `Q(x, x z + gamma)` with the largest common power of `x` removed.
    pub(crate) fn shift_and_strip(&self, gamma: Elem, f: &Field) -> BivarPoly {
        let l = self.rows.len();
        let mut gpow = vec![Elem::ONE; l];
        for i in 1..l {
            gpow[i] = f.mul(gpow[i - 1], gamma);
        }
        let mut rows = Vec::with_capacity(l);
        for j in 0..l {
            // row j = x^j * sum_{nu >= j} C(nu, j) gamma^(nu - j) Q_nu(x)
            let mut acc: Vec<Elem> = Vec::new();
            for nu in j..l {
                let c = f.mul(binom_in(f, nu, j), gpow[nu - j]);
                let src = self.rows[nu].coeffs();
                if c.is_zero() || src.is_empty() {
                    continue;
                }
                if acc.len() < src.len() {
                    acc.resize(src.len(), Elem::ZERO);
                }
                f.axpy(&mut acc, c, src);
            }
            rows.push(Poly::new(acc).shift(j));
        }
        let strip = rows
            .iter()
            .filter(|r| !r.is_zero())
            .map(Poly::x_valuation)
            .min()
            .unwrap_or(0);
        BivarPoly::new(
            rows.into_iter()
                .map(|r| {
                    Poly::new(
                        r.coeffs
                            .get(strip..)
                            .map(<[Elem]>::to_vec)
                            .unwrap_or_default(),
                    )
                })
                .collect(),
        )
    }

    /// `Q(0, z)` as a polynomial in `z`.
    pub(crate) fn at_x_zero(&self) -> Poly {
        Poly::new(self.rows.iter().map(|r| r.coeff(0)).collect())
    }
}
