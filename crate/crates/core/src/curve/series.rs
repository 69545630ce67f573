//! Truncated power-series expansions at rational affine points.

use std::collections::HashMap;

use super::function::{CurveFn, Monomial};
use super::{AffinePoint, CabCurve, CurveError};
use crate::algebra::{Field, Gf};

/// Which coordinate shift serves as the local parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    /// `t = x − x0`, used whenever `∂E/∂y(P) ≠ 0`.
    X,
    /// `t = y − y0`.
    Y,
}

fn series_mul(f: &Field, a: &[Gf], b: &[Gf], prec: usize) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; prec];
    for (i, &ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        let len = (prec - i).min(b.len());
        f.axpy(&mut out[i..i + len], ai, &b[..len]);
    }
    out
}

fn series_powers(f: &Field, s: &[Gf], max: usize, prec: usize) -> Vec<Vec<Gf>> {
    let mut one = vec![Gf::ZERO; prec];
    if prec > 0 {
        one[0] = Gf::ONE;
    }
    let mut out = vec![one];
    for k in 1..=max {
        let next = series_mul(f, &out[k - 1], s, prec);
        out.push(next);
    }
    out
}

/// Series of `x` and `y` at a point in its local parameter.
#[derive(Clone, Debug)]
pub struct LocalChart {
    point: AffinePoint,
    uniformizer: Uniformizer,
    x: Vec<Gf>,
    y: Vec<Gf>,
}

impl LocalChart {
    pub fn new(curve: &CabCurve, point: &AffinePoint, prec: usize) -> Result<LocalChart, CurveError> {
        if !curve.contains(point) {
            return Err(CurveError::NotOnCurve);
        }
        let f = curve.field();
        let prec = prec.max(1);
        let (ex, ey) = curve.partials_at(point.x, point.y);
        let mut x = vec![Gf::ZERO; prec];
        let mut y = vec![Gf::ZERO; prec];
        x[0] = point.x;
        y[0] = point.y;
        if curve.is_line() {
            if prec > 1 {
                x[1] = Gf::ONE;
            }
            return Ok(LocalChart {
                point: *point,
                uniformizer: Uniformizer::X,
                x,
                y,
            });
        }
        let uniformizer = if !ey.is_zero() {
            Uniformizer::X
        } else if !ex.is_zero() {
            Uniformizer::Y
        } else {
            return Err(CurveError::Singular {
                x: f.format_elem(point.x),
                y: f.format_elem(point.y),
            });
        };
        let (param, dependent, d) = match uniformizer {
            Uniformizer::X => (&mut x, &mut y, ey),
            Uniformizer::Y => (&mut y, &mut x, ex),
        };
        if prec > 1 {
            param[1] = Gf::ONE;
        }
        let neg_dinv = f.neg(f.inv(d));
        // Hensel lifting with the derivative frozen at P: each pass fixes one more coefficient.
        for _ in 1..prec {
            let r = match uniformizer {
                Uniformizer::X => equation_series(curve, param, dependent, prec),
                Uniformizer::Y => equation_series(curve, dependent, param, prec),
            };
            if r.iter().all(|c| c.is_zero()) {
                break;
            }
            f.axpy(dependent, neg_dinv, &r);
        }
        Ok(LocalChart {
            point: *point,
            uniformizer,
            x,
            y,
        })
    }

    pub fn point(&self) -> &AffinePoint {
        &self.point
    }

    pub fn uniformizer(&self) -> Uniformizer {
        self.uniformizer
    }

    pub fn precision(&self) -> usize {
        self.x.len()
    }

    pub fn x_series(&self) -> &[Gf] {
        &self.x
    }

    pub fn y_series(&self) -> &[Gf] {
        &self.y
    }

    /// First `prec` coefficients of `f` in the local parameter (`prec` ≤ chart precision).
    pub fn expand(&self, curve: &CabCurve, g: &CurveFn, prec: usize) -> Vec<Gf> {
        assert!(prec <= self.precision(), "chart precision too low");
        let f = curve.field();
        let imax = g.terms().map(|((i, _), _)| i).max().unwrap_or(0) as usize;
        let jmax = g.terms().map(|((_, j), _)| j).max().unwrap_or(0) as usize;
        let xp = series_powers(f, &self.x[..prec], imax, prec);
        let yp = series_powers(f, &self.y[..prec], jmax, prec);
        let mut out = vec![Gf::ZERO; prec];
        for ((i, j), c) in g.terms() {
            let s = series_mul(f, &xp[i as usize], &yp[j as usize], prec);
            f.axpy(&mut out, c, &s);
        }
        out
    }
}

/// `E(X, Y)` as a truncated series.
fn equation_series(curve: &CabCurve, x: &[Gf], y: &[Gf], prec: usize) -> Vec<Gf> {
    let f = curve.field();
    let imax = curve.terms().iter().map(|((i, _), _)| *i).max().unwrap_or(0) as usize;
    let xp = series_powers(f, x, imax, prec);
    let yp = series_powers(f, y, curve.a() as usize, prec);
    let mut out = yp[curve.a() as usize].clone();
    for &((i, j), c) in curve.terms() {
        let s = series_mul(f, &xp[i as usize], &yp[j as usize], prec);
        f.axpy(&mut out, f.neg(c), &s);
    }
    out
}

/// `local_expansion(f, P, prec)`: the first `prec` coefficients of `f` at `P`.
pub fn local_expansion(curve: &CabCurve, g: &CurveFn, point: &AffinePoint, prec: usize) -> Result<Vec<Gf>, CurveError> {
    let chart = LocalChart::new(curve, point, prec)?;
    Ok(chart.expand(curve, g, prec))
}

/// Precomputed expansions of every monomial of `L(max_pole·Q∞)` at a fixed list of points.
#[derive(Clone, Debug)]
pub struct ExpansionTable {
    points: Vec<AffinePoint>,
    index: HashMap<AffinePoint, usize>,
    max_pole: i64,
    prec: usize,
    monomials: Vec<Monomial>,
    /// data[point][monomial] is a series of length `prec`
    data: Vec<Vec<Vec<Gf>>>,
}

impl ExpansionTable {
    pub fn new(
        curve: &CabCurve,
        points: &[AffinePoint],
        max_pole: i64,
        prec: usize,
    ) -> Result<ExpansionTable, CurveError> {
        let f = curve.field();
        let monomials = curve.monomial_basis(max_pole);
        let imax = monomials.iter().map(|m| m.0).max().unwrap_or(0) as usize;
        let jmax = monomials.iter().map(|m| m.1).max().unwrap_or(0) as usize;
        let mut data = Vec::with_capacity(points.len());
        for p in points {
            let chart = LocalChart::new(curve, p, prec)?;
            let xp = series_powers(f, chart.x_series(), imax, prec);
            let yp = series_powers(f, chart.y_series(), jmax, prec);
            data.push(
                monomials
                    .iter()
                    .map(|&(i, j)| series_mul(f, &xp[i as usize], &yp[j as usize], prec))
                    .collect(),
            );
        }
        Ok(ExpansionTable {
            index: points.iter().enumerate().map(|(k, p)| (*p, k)).collect(),
            points: points.to_vec(),
            max_pole,
            prec,
            monomials,
            data,
        })
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn point_index(&self, p: &AffinePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn max_pole(&self) -> i64 {
        self.max_pole
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Series of the `mono`-th basis monomial at the `point`-th point.
    pub fn series(&self, point: usize, mono: usize) -> &[Gf] {
        &self.data[point][mono]
    }

    /// Coefficient of `t^r` for the `mono`-th monomial at the `point`-th point.
    #[inline]
    pub fn coeff(&self, point: usize, mono: usize, r: usize) -> Gf {
        self.data[point][mono][r]
    }
}
