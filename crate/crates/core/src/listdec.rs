//! Factorization step and the end-to-end list decoder.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::grs::{hamming_distance, GrsCode};
use crate::interp::{assemble_q, build_reduced_matrix_with, nullspace_vector, Lut};
use crate::plan::{build_plan, default_j, GsaParams, Mode};
use crate::poly::{BivarPoly, Poly};

/// All `w` with `deg w < k` and `(z - w(x)) | Q(x, z)`, in increasing
/// coefficient order.
pub fn z_roots(q: &BivarPoly, k: usize, f: &Field) -> Vec<Poly> {
    if q.is_zero() || k == 0 {
        return Vec::new();
    }
    let mut found: Vec<Vec<Elem>> = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(&strip_x(q), k, f, &mut prefix, &mut found);
    let mut roots: Vec<Poly> = found
        .into_iter()
        .map(Poly::new)
        .filter(|w| q.div_linear_z(w, f).1.is_zero())
        .collect();
    roots.sort_by(|a, b| {
        a.coeffs()
            .iter()
            .map(|e| e.0)
            .cmp(b.coeffs().iter().map(|e| e.0))
    });
    roots.dedup();
    roots
}

fn strip_x(q: &BivarPoly) -> BivarPoly {
    let v = q
        .rows()
        .iter()
        .filter(|r| !r.is_zero())
        .map(Poly::x_valuation)
        .min()
        .unwrap_or(0);
    BivarPoly::new(
        q.rows()
            .iter()
            .map(|r| Poly::new(r.coeffs().get(v..).unwrap_or_default().to_vec()))
            .collect(),
    )
}

fn descend(q: &BivarPoly, k: usize, f: &Field, prefix: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
    let at_zero = q.at_x_zero();
    for gamma in f.elements() {
        if !at_zero.eval(gamma, f).is_zero() {
            continue;
        }
        prefix.push(gamma);
        if prefix.len() == k {
            out.push(prefix.clone());
        } else {
            descend(&q.shift_and_strip(gamma, f), k, f, prefix, out);
        }
        prefix.pop();
    }
}

/// A list entry: message, codeword in original coordinates, distance to the
/// received word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub message: Poly,
    pub codeword: Vec<Elem>,
    pub distance: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Timings {
    /// Projection, plan and lookup table.
    pub prepare: Duration,
    pub build: Duration,
    pub solve: Duration,
    pub factor: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub unknowns: usize,
    pub rows: usize,
    pub cols: usize,
    /// Roots of the interpolation polynomial before distance filtering.
    pub roots: usize,
    pub q_z_degree: Option<usize>,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub list: Vec<Candidate>,
    pub mode: Mode,
    pub requested: Mode,
    pub j: Vec<usize>,
    pub eps_max: i64,
    pub diagnostics: Diagnostics,
}

impl DecodeResult {
    pub fn contains(&self, codeword: &[Elem]) -> bool {
        self.list.iter().any(|c| c.codeword == codeword)
    }

    pub fn codewords(&self) -> Vec<&[Elem]> {
        self.list.iter().map(|c| c.codeword.as_slice()).collect()
    }
}

/// Decodes `y` with the re-encoding set `{n-k, ..., n-1}` where needed.
pub fn gsa_decode(
    code: &GrsCode,
    params: &GsaParams,
    y: &[Elem],
    mode: Mode,
) -> Result<DecodeResult> {
    let j = default_j(code);
    gsa_decode_with(code, params, y, mode, &j)
}

pub fn gsa_decode_with(
    code: &GrsCode,
    params: &GsaParams,
    y: &[Elem],
    mode: Mode,
    j: &[usize],
) -> Result<DecodeResult> {
    if !code.locators_are_abscissas() {
        return Err(Error::LocatorAbscissaMismatch);
    }
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let f = code.field();
    for v in y {
        f.elem(v.value())?;
    }
    let mut timings = Timings::default();

    let t = Instant::now();
    let plan = build_plan(code, params, mode, Some(j))?;
    let (word, shift) = if plan.mode.uses_reencoding() {
        let (chat, u) = code.reencoding_codeword(&plan.j, y)?;
        let word: Vec<Elem> = y.iter().zip(&chat).map(|(&a, &b)| f.add(a, b)).collect();
        (word, Some((chat, u)))
    } else {
        (y.to_vec(), None)
    };
    let lut = Lut::new(code, params, &plan);
    timings.prepare = t.elapsed();

    let t = Instant::now();
    let sys = build_reduced_matrix_with(code, params, &word, &plan, &lut)?;
    timings.build = t.elapsed();

    let t = Instant::now();
    let sol = nullspace_vector(&sys, f)?;
    let q = assemble_q(&sol, &sys, f)?;
    timings.solve = t.elapsed();

    let t = Instant::now();
    let roots = z_roots(&q, code.k(), f);
    let mut list = Vec::new();
    for w in &roots {
        let message = match &shift {
            Some((_, u)) => w.sub(u, f),
            None => w.clone(),
        };
        let codeword = code.encode(&message)?;
        let distance = hamming_distance(y, &codeword)?;
        if distance as i64 <= params.eps_max {
            list.push(Candidate {
                message,
                codeword,
                distance,
            });
        }
    }
    list.sort_by(|a, b| {
        (
            a.distance,
            a.codeword.iter().map(|e| e.0).collect::<Vec<_>>(),
        )
            .cmp(&(
                b.distance,
                b.codeword.iter().map(|e| e.0).collect::<Vec<_>>(),
            ))
    });
    list.dedup();
    timings.factor = t.elapsed();

    Ok(DecodeResult {
        list,
        mode: plan.mode,
        requested: plan.requested,
        j: plan.j.clone(),
        eps_max: params.eps_max,
        diagnostics: Diagnostics {
            unknowns: plan.unknown_count(),
            rows: sys.matrix.rows(),
            cols: sys.matrix.cols(),
            roots: roots.len(),
            q_z_degree: q.z_degree(),
            timings,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::derive_params;
    use std::sync::Arc;

    fn v(values: &[u16]) -> Vec<Elem> {
        values.iter().map(|&x| Elem(x)).collect()
    }

    fn bivar(rows: Vec<Poly>) -> BivarPoly {
        BivarPoly::new(rows)
    }

    #[test]
    fn single_linear_factor() {
        let f = Field::prime(11).unwrap();
        let w = Poly::from_values(&[3, 0, 7]);
        let q = bivar(vec![w.neg(&f), Poly::one()]);
        assert_eq!(z_roots(&q, 3, &f), vec![w.clone()]);
        // a degree bound below deg w hides the root
        assert!(z_roots(&q, 2, &f).is_empty());
    }

    #[test]
    fn product_of_factors_times_x() {
        let f = Field::new(2, 3, None).unwrap();
        let w1 = Poly::from_values(&[1, 5]);
        let w2 = Poly::from_values(&[6, 0, 3]);
        let lin = |w: &Poly| bivar(vec![w.neg(&f), Poly::one()]);
        let (a, b) = (lin(&w1), lin(&w2));
        let mut rows = vec![Poly::zero(); 3];
        for (i, ra) in a.rows().iter().enumerate() {
            for (j, rb) in b.rows().iter().enumerate() {
                rows[i + j] = rows[i + j].add(&ra.mul(rb, &f).shift(1), &f);
            }
        }
        let q = bivar(rows);
        let roots = z_roots(&q, 3, &f);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&w1) && roots.contains(&w2));
    }

    #[test]
    fn no_linear_factor() {
        let f = Field::prime(3).unwrap();
        // z^2 - x
        let q = bivar(vec![Poly::monomial(Elem(2), 1), Poly::zero(), Poly::one()]);
        assert!(z_roots(&q, 1, &f).is_empty());
        for c in f.elements() {
            assert!(!q.div_linear_z(&Poly::constant(c), &f).1.is_zero());
        }
    }

    fn ex1() -> (GrsCode, GsaParams) {
        let code = GrsCode::inverse_powers(Arc::new(Field::prime(11).unwrap()), 10, 5).unwrap();
        let params = derive_params(&code, 2, 3).unwrap();
        (code, params)
    }

    #[test]
    fn example_one_decodes_in_every_mode() {
        let (code, params) = ex1();
        let c = v(&[5, 3, 8, 10, 7, 8, 4, 5, 6, 4]);
        let y = v(&[5, 3, 8, 10, 7, 10, 5, 5, 2, 4]);
        let mut lists = Vec::new();
        for mode in Mode::ALL {
            let res = gsa_decode(&code, &params, &y, mode).unwrap();
            assert!(res.contains(&c), "{mode}");
            let hit = res.list.iter().find(|e| e.codeword == c).unwrap();
            assert_eq!(hit.distance, 3);
            assert_eq!(code.encode(&hit.message).unwrap(), c);
            assert!(res.list.len() <= params.ell);
            lists.push(res.list);
        }
        assert!(lists.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn error_free_word() {
        let (code, params) = ex1();
        let c = v(&[5, 3, 8, 10, 7, 8, 4, 5, 6, 4]);
        let res = gsa_decode(&code, &params, &c, Mode::Reencoding).unwrap();
        assert_eq!(res.list[0].codeword, c);
        assert_eq!(res.list[0].distance, 0);
        assert_eq!(res.diagnostics.cols, 17);
        assert_eq!(res.diagnostics.rows, 15);
    }

    #[test]
    fn decoding_requires_matching_points() {
        let code = GrsCode::conventional(Arc::new(Field::prime(11).unwrap()), 10, 5).unwrap();
        let params = derive_params(&code, 2, 3).unwrap();
        assert_eq!(
            gsa_decode(&code, &params, &[Elem::ZERO; 10], Mode::None).unwrap_err(),
            Error::LocatorAbscissaMismatch
        );
        let (code, params) = ex1();
        assert!(matches!(
            gsa_decode(&code, &params, &[Elem::ZERO; 9], Mode::None),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(gsa_decode(&code, &params, &[Elem(11); 10], Mode::None).is_err());
    }
}
