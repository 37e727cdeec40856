//! Interpolation systems: full and reduced coefficient matrices, the
//! column-exchange reduction, and nullspace extraction.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::grs::GrsCode;
use crate::plan::{build_plan, GsaParams, Mode, PrefactorPlan};
use crate::poly::{binom_in, BivarPoly, Poly};

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let cols = columns.len();
        let mut m = Matrix::zeros(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {c} has the wrong length");
            for (r, &v) in col.iter().enumerate() {
                m.data[r * cols + c] = v;
            }
        }
        m
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c)).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Elem], f: &Field) -> Vec<Elem> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// One row per line, entries as space-separated integers.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColKind {
    Q,
    G,
}

/// Unknown `Q_{nu,mu}` or quotient coefficient `G_{nu,mu}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColLabel {
    pub nu: usize,
    pub mu: usize,
    pub kind: ColKind,
}

/// Hasse constraint `(s, t)` at point `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RowLabel {
    pub s: usize,
    pub t: usize,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpSystem {
    pub matrix: Matrix,
    pub col_labels: Vec<ColLabel>,
    pub row_labels: Vec<RowLabel>,
    pub plan: PrefactorPlan,
}

fn col_labels(plan: &PrefactorPlan) -> Vec<ColLabel> {
    let mut labels = Vec::new();
    for (nu, &d) in plan.d_g.iter().enumerate() {
        let kind = if plan.has_factor(nu) {
            ColKind::G
        } else {
            ColKind::Q
        };
        labels.extend((0..=d).map(|mu| ColLabel {
            nu,
            mu: mu as usize,
            kind,
        }));
    }
    labels
}

fn row_labels(r: usize, points: &[usize]) -> Vec<RowLabel> {
    let mut labels = Vec::with_capacity(points.len() * r * (r + 1) / 2);
    for s in 0..r {
        for t in 0..r - s {
            labels.extend(points.iter().map(|&i| RowLabel { s, t, i }));
        }
    }
    labels
}

/// `LUT[s, i, nu, mu] = sum_D C(mu + D, s) x_i^(mu + D - s) F_{nu, D}` for the
/// prefactor rows of a plan and the points it keeps.
#[derive(Clone, Debug)]
pub struct Lut {
    points: Vec<usize>,
    r: usize,
    /// Per prefactor row: offset into a point's block, and `d_nu^G + 1`.
    layout: Vec<Option<(usize, usize)>>,
    block: usize,
    data: Vec<Elem>,
}

impl Lut {
    pub fn new(code: &GrsCode, params: &GsaParams, plan: &PrefactorPlan) -> Lut {
        let f = code.field();
        let r = params.r;
        let points: Vec<usize> = kept_points(code.n(), &plan.skip_rows);
        let mut layout = vec![None; params.ell + 1];
        let mut block = 0;
        for &nu in plan.factors.keys() {
            let len = (plan.d_g[nu] + 1).max(0) as usize;
            layout[nu] = Some((block, len));
            block += len;
        }
        let max_deg = params.d_q[0].max(0) as usize;
        let data: Vec<Elem> = points
            .par_iter()
            .flat_map_iter(|&i| {
                let x = code.abscissas()[i];
                let mut out = Vec::with_capacity(r * block);
                for s in 0..r {
                    let h = hasse_monomials(f, x, s, max_deg);
                    for (&nu, fac) in &plan.factors {
                        let (_, len) = layout[nu].expect("factor row in layout");
                        let fc = fac.coeffs();
                        for mu in 0..len {
                            let v = fc
                                .iter()
                                .enumerate()
                                .fold(Elem::ZERO, |acc, (d, &c)| f.add(acc, f.mul(c, h[mu + d])));
                            out.push(v);
                        }
                    }
                }
                out
            })
            .collect();
        Lut {
            points,
            r,
            layout,
            block,
            data,
        }
    }

    pub fn get(&self, s: usize, point: usize, nu: usize, mu: usize) -> Option<Elem> {
        let (off, len) = self.layout.get(nu).copied().flatten()?;
        let idx = self.points.binary_search(&point).ok()?;
        (mu < len && s < self.r).then(|| self.data[(idx * self.r + s) * self.block + off + mu])
    }

    fn slice(&self, s: usize, point_idx: usize, nu: usize) -> &[Elem] {
        let (off, len) = self.layout[nu].expect("factor row in layout");
        let start = (point_idx * self.r + s) * self.block + off;
        &self.data[start..start + len]
    }
}

/// `C(m, s) x^(m - s)` for `m = 0..=max_deg` (zero below `s`).
fn hasse_monomials(f: &Field, x: Elem, s: usize, max_deg: usize) -> Vec<Elem> {
    let mut h = vec![Elem::ZERO; max_deg + 1];
    let mut xp = Elem::ONE;
    for (m, slot) in h.iter_mut().enumerate().skip(s) {
        *slot = f.mul(binom_in(f, m, s), xp);
        xp = f.mul(xp, x);
    }
    h
}

fn kept_points(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !skip.contains(i)).collect()
}

fn ordinates(code: &GrsCode, y: &[Elem]) -> Result<Vec<Elem>> {
    if y.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: y.len(),
        });
    }
    let f = code.field();
    y.iter()
        .zip(code.multipliers())
        .map(|(&v, &b)| {
            f.elem(v.value())?;
            f.div(v, b)
        })
        .collect()
}

/// The unreduced system: all points, all `Q_{nu,mu}` unknowns.
pub fn build_full_matrix(code: &GrsCode, params: &GsaParams, y: &[Elem]) -> Result<InterpSystem> {
    let plan = build_plan(code, params, Mode::None, None)?;
    build_reduced_matrix(code, params, y, &plan)
}

/// The reduced system of a plan, built directly from the lookup table.
pub fn build_reduced_matrix(
    code: &GrsCode,
    params: &GsaParams,
    y: &[Elem],
    plan: &PrefactorPlan,
) -> Result<InterpSystem> {
    let lut = Lut::new(code, params, plan);
    build_reduced_matrix_with(code, params, y, plan, &lut)
}

pub fn build_reduced_matrix_with(
    code: &GrsCode,
    params: &GsaParams,
    y: &[Elem],
    plan: &PrefactorPlan,
    lut: &Lut,
) -> Result<InterpSystem> {
    check_plan(params, plan)?;
    let eta = ordinates(code, y)?;
    if let Some(&i) = plan.skip_rows.iter().find(|&&i| !y[i].is_zero()) {
        return Err(Error::NotProjected(i));
    }
    if lut.points != kept_points(code.n(), &plan.skip_rows) {
        return Err(Error::PlanMismatch(
            "lookup table built for another plan".into(),
        ));
    }
    let f = code.field();
    let (r, ell) = (params.r, params.ell);
    let cols_l = col_labels(plan);
    let rows_l = row_labels(r, &lut.points);
    let ncols = cols_l.len();
    let offsets: Vec<usize> = plan
        .d_g
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += (d + 1).max(0) as usize;
            Some(o)
        })
        .collect();
    let max_deg = params.d_q[0].max(0) as usize;
    let mut matrix = Matrix::zeros(rows_l.len(), ncols);
    matrix
        .data
        .par_chunks_mut(ncols.max(1))
        .zip(rows_l.par_iter())
        .for_each(|(row, lab)| {
            let point_idx = lut.points.binary_search(&lab.i).expect("kept point");
            let x = code.abscissas()[lab.i];
            let h = hasse_monomials(f, x, lab.s, max_deg);
            let mut ep = Elem::ONE;
            for nu in lab.t..=ell {
                let c = f.mul(binom_in(f, nu, lab.t), ep);
                ep = f.mul(ep, eta[lab.i]);
                let len = (plan.d_g[nu] + 1).max(0) as usize;
                if c.is_zero() || len == 0 {
                    continue;
                }
                let dst = &mut row[offsets[nu]..offsets[nu] + len];
                if plan.has_factor(nu) {
                    f.axpy(dst, c, lut.slice(lab.s, point_idx, nu));
                } else {
                    f.axpy(dst, c, &h[..len]);
                }
            }
        });
    Ok(InterpSystem {
        matrix,
        col_labels: cols_l,
        row_labels: rows_l,
        plan: plan.clone(),
    })
}

fn check_plan(params: &GsaParams, plan: &PrefactorPlan) -> Result<()> {
    if plan.d_g.len() != params.ell + 1 {
        return Err(Error::PlanMismatch(format!(
            "plan has {} rows, parameters have {}",
            plan.d_g.len(),
            params.ell + 1
        )));
    }
    for (nu, (&dg, &dq)) in plan.d_g.iter().zip(&params.d_q).enumerate() {
        let expected = match plan.factors.get(&nu) {
            Some(fac) => dq - fac.degree().unwrap_or(0) as i64,
            None => dq,
        };
        if dg != expected {
            return Err(Error::PlanMismatch(format!("degree bound of row {nu}")));
        }
    }
    Ok(())
}

/// Exchanges the front column for a new unknown `y = sum beta_i x_i`, given
/// `beta_0` and the nonzero `(i, beta_i)` with `i >= 1`. The new column is
/// appended unless `keep` is false (when `y` is known to be zero).
fn exchange_front(
    cols: &mut VecDeque<Vec<Elem>>,
    beta0: Elem,
    beta: &[(usize, Elem)],
    keep: bool,
    f: &Field,
) -> Result<()> {
    let inv = f.inv(beta0).ok_or(Error::ZeroLeadingCoefficient)?;
    let a0 = cols.pop_front().expect("nonempty column list");
    for &(i, b) in beta {
        let factor = f.neg(f.mul(b, inv));
        f.axpy(&mut cols[i - 1], factor, &a0);
    }
    if keep {
        let mut last = vec![Elem::ZERO; a0.len()];
        f.axpy(&mut last, inv, &a0);
        cols.push_back(last);
    }
    Ok(())
}

/// Replaces unknown `x_0` by `y = sum beta_i x_i`: the columns become
/// `a_i - (beta_i / beta_0) a_0` followed by `a_0 / beta_0`.
pub fn lemma3_exchange(a: &Matrix, beta: &[Elem], f: &Field) -> Result<Matrix> {
    if beta.len() != a.cols() || a.cols() == 0 {
        return Err(Error::LengthMismatch {
            expected: a.cols(),
            got: beta.len(),
        });
    }
    let mut cols: VecDeque<Vec<Elem>> = a.columns().into();
    let sparse: Vec<(usize, Elem)> = beta
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, b)| !b.is_zero())
        .map(|(i, &b)| (i, b))
        .collect();
    exchange_front(&mut cols, beta[0], &sparse, true, f)?;
    Ok(Matrix::from_columns(a.rows(), cols.make_contiguous()))
}

/// Reduces a full system to the unknowns of `plan` by repeated column
/// exchanges, keeping every row.
pub fn reduce_matrix(sys: &InterpSystem, plan: &PrefactorPlan, f: &Field) -> Result<InterpSystem> {
    if sys.plan.mode != Mode::None {
        return Err(Error::PlanMismatch("system is already reduced".into()));
    }
    if sys.plan.d_g.len() != plan.d_g.len() {
        return Err(Error::PlanMismatch("list sizes differ".into()));
    }
    let mut cols: VecDeque<Vec<Elem>> = sys.matrix.columns().into();
    for (nu, &d_q) in sys.plan.d_g.iter().enumerate() {
        let one = Poly::one();
        let fac = plan.factors.get(&nu).unwrap_or(&one);
        let d_g = plan.d_g[nu];
        if d_q - fac.degree().unwrap_or(0) as i64 != d_g {
            return Err(Error::PlanMismatch(format!("degree bound of row {nu}")));
        }
        let f0 = fac.coeff(0);
        let beta0 = f.inv(f0).ok_or(Error::ZeroLeadingCoefficient)?;
        // preparation: Q_{nu,mu} -> G_{nu,mu}
        for mu in 0..=d_g {
            let mu = mu as usize;
            let m = cols.len();
            let beta: Vec<(usize, Elem)> = (1..=mu)
                .map(|i| (m - i, f.neg(f.mul(fac.coeff(i), beta0))))
                .filter(|(_, b)| !b.is_zero())
                .collect();
            exchange_front(&mut cols, beta0, &beta, true, f)?;
        }
        // reduction: Q_{nu,mu} = sum_j G_{nu,j} F_{mu-j} is dropped
        for mu in (d_g + 1).max(0)..=d_q {
            let mu = mu as usize;
            let m = cols.len();
            let beta: Vec<(usize, Elem)> = (0..=d_g.max(-1))
                .filter_map(|j| {
                    let j = j as usize;
                    let b = f.neg(fac.coeff(mu - j));
                    (!b.is_zero()).then_some((m - 1 - d_g as usize + j, b))
                })
                .collect();
            exchange_front(&mut cols, Elem::ONE, &beta, false, f)?;
        }
    }
    Ok(InterpSystem {
        matrix: Matrix::from_columns(sys.matrix.rows(), cols.make_contiguous()),
        col_labels: col_labels(plan),
        row_labels: sys.row_labels.clone(),
        plan: plan.clone(),
    })
}

/// Row echelon form with pivots in the leftmost possible columns.
struct Echelon {
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    cols: usize,
}

fn echelon(m: &Matrix, f: &Field) -> Echelon {
    let cols = m.cols();
    let mut rows: Vec<Vec<Elem>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][c]).expect("nonzero pivot");
        let mut pivot = vec![Elem::ZERO; cols - c];
        f.axpy(&mut pivot, inv, &rows[rank][c..]);
        rows[rank][c..].copy_from_slice(&pivot);
        rows[rank + 1..].par_iter_mut().for_each(|row| {
            let v = row[c];
            if !v.is_zero() {
                f.axpy(&mut row[c..], f.neg(v), &pivot);
            }
        });
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Echelon { rows, pivots, cols }
}

impl Echelon {
    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        self.pivots.iter().for_each(|&c| is_pivot[c] = true);
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// The solution with free column `free` set to one, other free columns zero.
    fn solution(&self, free: usize, f: &Field) -> Vec<Elem> {
        let mut x = vec![Elem::ZERO; self.cols];
        x[free] = Elem::ONE;
        for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
            let acc = row[pc + 1..]
                .iter()
                .zip(&x[pc + 1..])
                .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            x[pc] = f.neg(acc);
        }
        x
    }
}

/// A nonzero nullspace vector: last free column one, other free columns zero.
pub fn nullspace_vector(sys: &InterpSystem, f: &Field) -> Result<Vec<Elem>> {
    matrix_nullspace_vector(&sys.matrix, f)
}

pub fn matrix_nullspace_vector(m: &Matrix, f: &Field) -> Result<Vec<Elem>> {
    let e = echelon(m, f);
    let free = *e.free_columns().last().ok_or(Error::TrivialNullspace)?;
    Ok(e.solution(free, f))
}

/// A nullspace basis, one vector per free column in increasing order.
pub fn nullspace_basis(m: &Matrix, f: &Field) -> Vec<Vec<Elem>> {
    let e = echelon(m, f);
    e.free_columns()
        .into_iter()
        .map(|c| e.solution(c, f))
        .collect()
}

pub fn rank(m: &Matrix, f: &Field) -> usize {
    echelon(m, f).pivots.len()
}

/// Reassembles `Q(x, z)` from a solution, multiplying quotients back by
/// their prefactors.
pub fn assemble_q(sol: &[Elem], sys: &InterpSystem, f: &Field) -> Result<BivarPoly> {
    if sol.len() != sys.col_labels.len() {
        return Err(Error::LengthMismatch {
            expected: sys.col_labels.len(),
            got: sol.len(),
        });
    }
    let mut rest = sol;
    let mut rows = Vec::with_capacity(sys.plan.d_g.len());
    for (nu, &d) in sys.plan.d_g.iter().enumerate() {
        let (head, tail) = rest.split_at((d + 1).max(0) as usize);
        rest = tail;
        let g = Poly::new(head.to_vec());
        rows.push(match sys.plan.factors.get(&nu) {
            Some(fac) => g.mul(fac, f),
            None => g,
        });
    }
    let q = BivarPoly::new(rows);
    if q.is_zero() {
        return Err(Error::ZeroInterpolation);
    }
    Ok(q)
}
