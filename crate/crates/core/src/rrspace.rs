//! Divisors `a·Q∞ − Σ m_P·P` and their Riemann–Roch spaces as coefficient subspaces.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Gf, Matrix, Subspace};
use crate::curve::{AffinePoint, CabCurve, CurveError, CurveFn, ExpansionTable, LocalChart};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("ambient degree {ambient} is below the pole bound {needed}")]
    AmbientTooSmall { ambient: i64, needed: i64 },
}

/// `inf·Q∞ − Σ m_P·P` with every stored `m_P > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Divisor {
    inf: i64,
    finite: BTreeMap<AffinePoint, u32>,
}

impl Divisor {
    pub fn at_infinity(inf: i64) -> Divisor {
        Divisor {
            inf,
            finite: BTreeMap::new(),
        }
    }

    pub fn inf_coeff(&self) -> i64 {
        self.inf
    }

    /// Finite part as `(point, m)` pairs, meaning coefficient `−m` at the point.
    pub fn finite(&self) -> impl Iterator<Item = (&AffinePoint, u32)> {
        self.finite.iter().map(|(p, &m)| (p, m))
    }

    pub fn multiplicity(&self, p: &AffinePoint) -> u32 {
        self.finite.get(p).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.finite.values().copied().max().unwrap_or(0)
    }

    pub fn finite_degree(&self) -> i64 {
        self.finite.values().map(|&m| i64::from(m)).sum()
    }

    pub fn degree(&self) -> i64 {
        self.inf - self.finite_degree()
    }

    pub fn has_finite_support(&self) -> bool {
        !self.finite.is_empty()
    }

    /// `self − m·P`.
    pub fn minus_point(&self, p: &AffinePoint, m: u32) -> Divisor {
        let mut d = self.clone();
        if m > 0 {
            *d.finite.entry(*p).or_insert(0) += m;
        }
        d
    }

    /// `self − Σ P` over the given points.
    pub fn minus_points<'a>(&self, points: impl IntoIterator<Item = &'a AffinePoint>) -> Divisor {
        let mut d = self.clone();
        for p in points {
            *d.finite.entry(*p).or_insert(0) += 1;
        }
        d
    }

    /// `self + k·Q∞`.
    pub fn plus_inf(&self, k: i64) -> Divisor {
        let mut d = self.clone();
        d.inf += k;
        d
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Q", self.inf)?;
        for (p, m) in &self.finite {
            write!(f, " - {m}({},{})", p.x.0, p.y.0)?;
        }
        Ok(())
    }
}

/// A Riemann–Roch space in the coordinates of `monomial_basis(ambient_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRSpace {
    pub divisor: Divisor,
    pub ambient_m: i64,
    pub space: Subspace,
}

impl RRSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Basis functions.
    pub fn functions(&self, curve: &CabCurve) -> Vec<CurveFn> {
        let basis = curve.monomial_basis(self.ambient_m);
        self.space
            .basis_vectors()
            .iter()
            .map(|v| CurveFn::from_coords(curve, &basis, v))
            .collect()
    }
}

/// Rows `r = 0..m` of the vanishing conditions at each finite point, over `monomial_basis(inf)`.
fn vanishing_matrix(curve: &CabCurve, table: Option<&ExpansionTable>, divisor: &Divisor) -> Result<Matrix, RrError> {
    let field = curve.field();
    let monomials = curve.monomial_basis(divisor.inf);
    let cols = monomials.len();
    let mut rows = Vec::new();
    for (p, m) in divisor.finite() {
        let m = m as usize;
        let cached = table.and_then(|t| {
            let k = t.point_index(p)?;
            (t.precision() >= m && t.max_pole() >= divisor.inf).then_some((t, k))
        });
        match cached {
            Some((t, k)) => {
                for r in 0..m {
                    rows.push((0..cols).map(|c| t.coeff(k, c, r)).collect::<Vec<Gf>>());
                }
            }
            None => {
                let chart = LocalChart::new(curve, p, m)?;
                let series: Vec<Vec<Gf>> = monomials
                    .iter()
                    .map(|&mono| chart.expand(curve, &CurveFn::monomial(mono, Gf::ONE), m))
                    .collect();
                for r in 0..m {
                    rows.push(series.iter().map(|s| s[r]).collect());
                }
            }
        }
    }
    Ok(Matrix::from_rows(field, cols, &rows).expect("rows have basis length"))
}

/// `L(divisor)` in the coordinates of `monomial_basis(ambient_m)`.
pub fn rr_space(curve: &CabCurve, divisor: &Divisor, ambient_m: i64) -> Result<RRSpace, RrError> {
    rr_space_with(curve, None, divisor, ambient_m)
}

/// As [`rr_space`], reading expansions from `table` where it covers the point and precision.
pub fn rr_space_with(
    curve: &CabCurve,
    table: Option<&ExpansionTable>,
    divisor: &Divisor,
    ambient_m: i64,
) -> Result<RRSpace, RrError> {
    if ambient_m < divisor.inf {
        return Err(RrError::AmbientTooSmall {
            ambient: ambient_m,
            needed: divisor.inf,
        });
    }
    let field = curve.field();
    let ambient = curve.ell_at_infinity(ambient_m);
    let space = if divisor.degree() < 0 {
        Subspace::zero(field, ambient)
    } else {
        let cols = curve.ell_at_infinity(divisor.inf);
        let local = if divisor.has_finite_support() {
            vanishing_matrix(curve, table, divisor)?.kernel()
        } else {
            Subspace::full(field, cols)
        };
        local.embed(ambient)
    };
    Ok(RRSpace {
        divisor: divisor.clone(),
        ambient_m,
        space,
    })
}

/// `ℓ(divisor)`.
pub fn ell(curve: &CabCurve, divisor: &Divisor) -> Result<usize, RrError> {
    ell_with(curve, None, divisor)
}

pub fn ell_with(curve: &CabCurve, table: Option<&ExpansionTable>, divisor: &Divisor) -> Result<usize, RrError> {
    if divisor.degree() < 0 {
        return Ok(0);
    }
    if !divisor.has_finite_support() {
        return Ok(curve.ell_at_infinity(divisor.inf));
    }
    let m = vanishing_matrix(curve, table, divisor)?;
    Ok(m.cols() - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::local_expansion;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn negative_degree_is_zero() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let d = Divisor::at_infinity(2).minus_points(&c.affine_points()[..3]);
        assert_eq!(rr_space(&c, &d, 10).unwrap().dim(), 0);
        assert_eq!(ell(&c, &Divisor::at_infinity(-1)).unwrap(), 0);
    }

    #[test]
    fn riemann_roch_at_infinity() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        assert_eq!(ell(&c, &Divisor::at_infinity(0)).unwrap(), 1);
        for a in 5..20 {
            assert_eq!(
                rr_space(&c, &Divisor::at_infinity(a), 30).unwrap().dim() as i64,
                a - 3 + 1
            );
        }
        assert!(ell(&c, &Divisor::at_infinity(4)).unwrap() <= 3);
    }

    #[test]
    fn one_point_condition() {
        // L(6Q) = <1, x, y, x^2>; one evaluation condition at P cuts it to dimension 3.
        let c = CabCurve::hermitian(3, 1).unwrap();
        let f = c.field();
        for p in c.affine_points() {
            let s = rr_space(&c, &Divisor::at_infinity(6).minus_point(p, 1), 6).unwrap();
            assert_eq!(s.dim(), 3);
            let ev = [Gf::ONE, p.x, p.y, f.mul(p.x, p.x)];
            let cond = Matrix::from_rows(f, 4, &[ev.to_vec()]).unwrap();
            assert_eq!(s.space, cond.kernel());
        }
    }

    #[test]
    fn basis_functions_vanish_to_the_demanded_order() {
        let c = CabCurve::hermitian(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let table = ExpansionTable::new(&c, c.affine_points(), 60, 6).unwrap();
        for _ in 0..10 {
            let mut d = Divisor::at_infinity(rng.gen_range(10..40));
            for p in c.affine_points().choose_multiple(&mut rng, 4) {
                d = d.minus_point(p, rng.gen_range(1..4));
            }
            let with_table = rr_space_with(&c, Some(&table), &d, 60).unwrap();
            let plain = rr_space(&c, &d, 60).unwrap();
            assert_eq!(with_table, plain);
            assert!(plain.dim() as i64 > d.degree() - 6);
            for g in plain.functions(&c) {
                assert!(g.pole_order(&c).unwrap() <= d.inf_coeff());
                for (p, m) in d.finite() {
                    let s = local_expansion(&c, &g, p, m as usize + 1).unwrap();
                    assert!(s[..m as usize].iter().all(|v| v.is_zero()));
                }
            }
        }
    }

    #[test]
    fn monotone_and_one_step_drop() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mut d = Divisor::at_infinity(rng.gen_range(0..25));
            for p in c.affine_points().choose_multiple(&mut rng, 3) {
                d = d.minus_point(p, rng.gen_range(1..3));
            }
            let big = rr_space(&c, &d, 30).unwrap();
            let p = c.affine_points().choose(&mut rng).unwrap();
            let small = rr_space(&c, &d.minus_point(p, 1), 30).unwrap();
            assert!(small.space.is_subspace_of(&big.space).unwrap());
            assert!(small.dim() + 1 >= big.dim() && small.dim() <= big.dim());
        }
    }

    #[test]
    fn bounds_for_subtracting_effective_divisors() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let a = Divisor::at_infinity(rng.gen_range(0..20));
            let nb = rng.gen_range(1..10);
            let pts: Vec<AffinePoint> = c.affine_points().choose_multiple(&mut rng, nb).copied().collect();
            let la = ell(&c, &a).unwrap() as i64;
            let lab = ell(&c, &a.minus_points(&pts)).unwrap() as i64;
            assert!(lab >= la - nb as i64);
            if nb as i64 > 2 * 3 - 2 {
                // ℓ(B) = deg B − g + 1 for the reduced effective divisor B above 2g − 2
                let lb = nb as i64 - 3 + 1;
                assert!(lab <= 0.max(la - lb + 1));
            }
            assert!(lab <= la);
        }
    }

    #[test]
    fn ambient_must_hold_the_divisor() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        assert!(matches!(
            rr_space(&c, &Divisor::at_infinity(10), 9),
            Err(RrError::AmbientTooSmall { .. })
        ));
    }
}
