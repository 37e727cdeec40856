//! Generalized Reed-Solomon codes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

/// `GRS(F_q; n, k)` with locators `A`, column multipliers `B` and the
/// abscissas `X` used as interpolation x-coordinates.
///
/// Codewords are `(beta_i u(alpha_i))_i` for `deg u < k`. The abscissas
/// default to the inverses of the locators; decoding needs `A = X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: Arc<Field>,
    k: usize,
    locators: Vec<Elem>,
    multipliers: Vec<Elem>,
    abscissas: Vec<Elem>,
}

impl GrsCode {
    pub fn new(
        field: Arc<Field>,
        k: usize,
        locators: Vec<Elem>,
        multipliers: Option<Vec<Elem>>,
        abscissas: Option<Vec<Elem>>,
    ) -> Result<GrsCode> {
        let n = locators.len();
        let q = field.order() as usize;
        if k == 0 || k > n || n > q - 1 {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k <= n <= q - 1, got k = {k}, n = {n}, q = {q}"
            )));
        }
        let multipliers = multipliers.unwrap_or_else(|| vec![Elem::ONE; n]);
        let abscissas = match abscissas {
            Some(x) => x,
            None => locators
                .iter()
                .map(|&a| {
                    field.inv(a).ok_or_else(|| {
                        Error::InvalidCode("zero locator has no inverse abscissa".into())
                    })
                })
                .collect::<Result<_>>()?,
        };
        if multipliers.len() != n || abscissas.len() != n {
            return Err(Error::InvalidCode(
                "locators, multipliers and abscissas must have equal length".into(),
            ));
        }
        for v in locators.iter().chain(&multipliers).chain(&abscissas) {
            field.elem(v.value())?;
        }
        if let Some((i, j)) = first_duplicate(&locators) {
            return Err(Error::InvalidCode(format!("locators {i} and {j} coincide")));
        }
        if let Some((i, j)) = first_duplicate(&abscissas) {
            return Err(Error::InvalidCode(format!(
                "abscissas {i} and {j} coincide"
            )));
        }
        if let Some(i) = multipliers.iter().position(|b| b.is_zero()) {
            return Err(Error::InvalidCode(format!("multiplier {i} is zero")));
        }
        Ok(GrsCode {
            field,
            k,
            locators,
            multipliers,
            abscissas,
        })
    }

    /// Conventional RS code: `A = {alpha^i}`, `B = 1`, `X = {alpha^-i}`.
    pub fn conventional(field: Arc<Field>, n: usize, k: usize) -> Result<GrsCode> {
        let locators = (0..n as i64).map(|i| field.alpha_pow(i)).collect();
        GrsCode::new(field, k, locators, None, None)
    }

    /// Code evaluated at the points `alpha^-i` with `A = X`, all multipliers 1.
    pub fn inverse_powers(field: Arc<Field>, n: usize, k: usize) -> Result<GrsCode> {
        let pts: Vec<Elem> = (0..n as i64).map(|i| field.alpha_pow(-i)).collect();
        GrsCode::new(field, k, pts.clone(), None, Some(pts))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.locators.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn locators(&self) -> &[Elem] {
        &self.locators
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.multipliers
    }

    pub fn abscissas(&self) -> &[Elem] {
        &self.abscissas
    }

    /// Whether encoding and interpolation use the same point set.
    pub fn locators_are_abscissas(&self) -> bool {
        self.locators == self.abscissas
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `c_i = beta_i u(alpha_i)`.
    pub fn encode(&self, u: &Poly) -> Result<Vec<Elem>> {
        if let Some(d) = u.degree().filter(|&d| d >= self.k) {
            return Err(Error::MessageTooLong {
                degree: d,
                k: self.k,
            });
        }
        Ok(self.evaluate(u, &self.locators))
    }

    /// `(beta_i w(points_i))_i` without the degree check.
    pub fn evaluate(&self, w: &Poly, points: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        points
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &b)| f.mul(b, w.eval(a, f)))
            .collect()
    }

    /// The message polynomial of the unique codeword agreeing with `known`
    /// (exactly `k` distinct positions).
    pub fn interpolate_message(&self, known: &[(usize, Elem)]) -> Result<Poly> {
        if known.len() != self.k {
            return Err(Error::WrongKnownCount {
                expected: self.k,
                got: known.len(),
            });
        }
        let n = self.n();
        let mut seen = vec![false; n];
        for &(i, v) in known {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicatePosition(i));
            }
            self.field.elem(v.value())?;
        }
        let f = self.field();
        let xs: Vec<Elem> = known.iter().map(|&(i, _)| self.locators[i]).collect();
        let ys: Vec<Elem> = known
            .iter()
            .map(|&(i, v)| f.div(v, self.multipliers[i]))
            .collect::<Result<_>>()?;
        lagrange(&xs, &ys, f)
    }

    /// Erasures-only decoding from exactly `k` known positions.
    pub fn erasures_only_decode(&self, known: &[(usize, Elem)]) -> Result<Vec<Elem>> {
        let u = self.interpolate_message(known)?;
        self.encode(&u)
    }

    /// Re-encoding projection with respect to `j`, `|j| = k`.
    ///
    /// Returns `(v + c, c)` where `c` is the codeword with `c_i = -v_i` on `j`.
    pub fn reencode_project(&self, j: &[usize], v: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
        self.check_len(v)?;
        let (chat, _) = self.reencoding_codeword(j, v)?;
        let f = self.field();
        let projected = v.iter().zip(&chat).map(|(&a, &b)| f.add(a, b)).collect();
        Ok((projected, chat))
    }

    /// The cancelling codeword of the projection and its message polynomial.
    pub fn reencoding_codeword(&self, j: &[usize], v: &[Elem]) -> Result<(Vec<Elem>, Poly)> {
        self.check_len(v)?;
        if j.len() != self.k {
            return Err(Error::ReencodingSetRequired { k: self.k });
        }
        let f = self.field();
        let known: Vec<(usize, Elem)> = j
            .iter()
            .map(|&i| {
                v.get(i)
                    .map(|&vi| (i, f.neg(vi)))
                    .ok_or(Error::IndexOutOfRange {
                        index: i,
                        len: v.len(),
                    })
            })
            .collect::<Result<_>>()?;
        let u = self.interpolate_message(&known)?;
        Ok((self.encode(&u)?, u))
    }

    /// Membership test: interpolate through the first `k` positions, compare.
    pub fn is_codeword(&self, v: &[Elem]) -> Result<bool> {
        self.check_len(v)?;
        let known: Vec<(usize, Elem)> = v.iter().copied().enumerate().take(self.k).collect();
        Ok(self.erasures_only_decode(&known)? == v)
    }
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

fn first_duplicate(v: &[Elem]) -> Option<(usize, usize)> {
    let mut seen = std::collections::HashMap::with_capacity(v.len());
    for (i, x) in v.iter().enumerate() {
        if let Some(&j) = seen.get(x) {
            return Some((j, i));
        }
        seen.insert(*x, i);
    }
    None
}

/// Lagrange interpolation through distinct `xs`.
fn lagrange(xs: &[Elem], ys: &[Elem], f: &Field) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Elem::ONE;
        for (j, &xj) in xs.iter().enumerate() {
            if j != i {
                basis = basis.mul(&Poly::new(vec![f.neg(xj), Elem::ONE]), f);
                denom = f.mul(denom, f.sub(xi, xj));
            }
        }
        acc = acc.add(&basis.scale(f.div(yi, denom)?, f), f);
    }
    Ok(acc)
}
