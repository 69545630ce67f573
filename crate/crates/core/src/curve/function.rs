//! Functions in the coordinate ring, stored in normal form (`y`-degree below `a`).

use std::collections::BTreeMap;

use super::{AffinePoint, CabCurve};
use crate::algebra::Gf;

/// Exponent pair `(i, j)` of `x^i y^j`.
pub type Monomial = (u32, u32);

/// A function on a curve as a normal-form polynomial. Nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurveFn {
    terms: BTreeMap<Monomial, Gf>,
}

impl CurveFn {
    pub fn zero() -> CurveFn {
        CurveFn::default()
    }

    pub fn constant(c: Gf) -> CurveFn {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(m: Monomial, c: Gf) -> CurveFn {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CurveFn { terms }
    }

    /// Builds a function from coordinates over a monomial list (e.g. a basis of `L(M·Q∞)`).
    pub fn from_coords(curve: &CabCurve, basis: &[Monomial], coords: &[Gf]) -> CurveFn {
        assert_eq!(basis.len(), coords.len(), "coordinate length mismatch");
        let f = curve.field();
        let mut terms = BTreeMap::new();
        for (&m, &c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                let e = terms.entry(m).or_insert(Gf::ZERO);
                *e = f.add(*e, c);
            }
        }
        terms.retain(|_, c: &mut Gf| !c.is_zero());
        CurveFn { terms }
    }

    /// Coordinates over `curve.monomial_basis(m)`, or `None` if the pole order exceeds `m`.
    pub fn to_coords(&self, curve: &CabCurve, m: i64) -> Option<Vec<Gf>> {
        let basis = curve.monomial_basis(m);
        let index: std::collections::HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(k, &mono)| (mono, k)).collect();
        let mut out = vec![Gf::ZERO; basis.len()];
        for (mono, &c) in &self.terms {
            out[*index.get(mono)?] = c;
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Gf)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Gf {
        self.terms.get(&m).copied().unwrap_or(Gf::ZERO)
    }

    /// Pole order at `Q∞`; `None` for the zero function.
    pub fn pole_order(&self, curve: &CabCurve) -> Option<i64> {
        self.terms.keys().map(|&m| curve.pole_order(m)).max()
    }

    pub fn add(&self, curve: &CabCurve, other: &CurveFn) -> CurveFn {
        self.axpy(curve, Gf::ONE, other)
    }

    pub fn sub(&self, curve: &CabCurve, other: &CurveFn) -> CurveFn {
        self.axpy(curve, curve.field().neg(Gf::ONE), other)
    }

    /// `self + c·other`.
    pub fn axpy(&self, curve: &CabCurve, c: Gf, other: &CurveFn) -> CurveFn {
        let f = curve.field();
        let mut terms = self.terms.clone();
        for (&m, &v) in &other.terms {
            let e = terms.entry(m).or_insert(Gf::ZERO);
            *e = f.add(*e, f.mul(c, v));
        }
        terms.retain(|_, c| !c.is_zero());
        CurveFn { terms }
    }

    pub fn scale(&self, curve: &CabCurve, c: Gf) -> CurveFn {
        CurveFn::zero().axpy(curve, c, self)
    }

    /// Product reduced to normal form via `y^a = Σ c_ij x^i y^j`.
    pub fn mul(&self, curve: &CabCurve, other: &CurveFn) -> CurveFn {
        if self.is_zero() || other.is_zero() {
            return CurveFn::zero();
        }
        let f = curve.field();
        if curve.is_line() {
            let mut terms = BTreeMap::new();
            for (&(i1, _), &c1) in &self.terms {
                for (&(i2, _), &c2) in &other.terms {
                    let e = terms.entry((i1 + i2, 0)).or_insert(Gf::ZERO);
                    *e = f.add(*e, f.mul(c1, c2));
                }
            }
            terms.retain(|_, c: &mut Gf| !c.is_zero());
            return CurveFn { terms };
        }
        let a = curve.a() as usize;
        let imax1 = self.terms.keys().map(|m| m.0).max().unwrap_or(0) as usize;
        let imax2 = other.terms.keys().map(|m| m.0).max().unwrap_or(0) as usize;
        let shift = curve.y_powers_max_x() as usize;
        let width = imax1 + imax2 + shift + 1;
        // dense[j][i] for the unreduced product, j ≤ 2a − 2
        let mut dense = vec![vec![Gf::ZERO; width]; 2 * a - 1];
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                let cell = &mut dense[(j1 + j2) as usize][(i1 + i2) as usize];
                *cell = f.add(*cell, f.mul(c1, c2));
            }
        }
        for jj in (a..=2 * a - 2).rev() {
            let row = std::mem::take(&mut dense[jj]);
            for (i, &c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &((ti, tj), tc) in curve.y_power_nf(jj as u32) {
                    let cell = &mut dense[tj as usize][i + ti as usize];
                    *cell = f.add(*cell, f.mul(c, tc));
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (j, row) in dense.iter().enumerate().take(a) {
            for (i, &c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), c);
                }
            }
        }
        CurveFn { terms }
    }

    pub fn pow(&self, curve: &CabCurve, e: u32) -> CurveFn {
        let mut acc = CurveFn::constant(Gf::ONE);
        for _ in 0..e {
            acc = acc.mul(curve, self);
        }
        acc
    }

    pub fn evaluate(&self, curve: &CabCurve, p: &AffinePoint) -> Gf {
        let f = curve.field();
        let mut v = Gf::ZERO;
        for (&(i, j), &c) in &self.terms {
            let t = f.mul(f.pow(p.x, u64::from(i)), f.pow(p.y, u64::from(j)));
            v = f.add(v, f.mul(c, t));
        }
        v
    }
}

impl CabCurve {
    /// Largest `x` exponent appearing in the normal forms of `y^a … y^{2a−2}`.
    pub(crate) fn y_powers_max_x(&self) -> u32 {
        if self.is_line() {
            return 0;
        }
        (self.a()..=2 * self.a() - 2)
            .flat_map(|jj| self.y_power_nf(jj).iter().map(|((i, _), _)| *i))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_fn(c: &CabCurve, m: i64, rng: &mut ChaCha8Rng) -> CurveFn {
        let basis = c.monomial_basis(m);
        let coords: Vec<Gf> = basis.iter().map(|_| Gf(rng.gen_range(0..c.field().order()))).collect();
        CurveFn::from_coords(c, &basis, &coords)
    }

    #[test]
    fn hermitian_y_cubed() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let f = c.field();
        let y = CurveFn::monomial((0, 1), Gf::ONE);
        let y2 = CurveFn::monomial((0, 2), Gf::ONE);
        let expected = CurveFn::monomial((4, 0), Gf::ONE).sub(&c, &y);
        assert_eq!(y.mul(&c, &y2), expected);
        for p in c.affine_points() {
            assert_eq!(expected.evaluate(&c, p), f.pow(p.y, 3));
        }
    }

    #[test]
    fn product_is_evaluation_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in [
            CabCurve::hermitian(3, 1).unwrap(),
            CabCurve::hermitian(2, 2).unwrap(),
            CabCurve::line(&crate::algebra::Field::new(11, 1).unwrap()),
        ] {
            let f = c.field();
            for _ in 0..10 {
                let g = random_fn(&c, 20, &mut rng);
                let h = random_fn(&c, 17, &mut rng);
                let k = random_fn(&c, 9, &mut rng);
                let gh = g.mul(&c, &h);
                assert_eq!(gh, h.mul(&c, &g));
                assert_eq!(gh.mul(&c, &k), g.mul(&c, &h.mul(&c, &k)));
                if !g.is_zero() && !h.is_zero() {
                    assert_eq!(
                        gh.pole_order(&c).unwrap(),
                        g.pole_order(&c).unwrap() + h.pole_order(&c).unwrap()
                    );
                }
                for p in c.affine_points() {
                    assert_eq!(gh.evaluate(&c, p), f.mul(g.evaluate(&c, p), h.evaluate(&c, p)));
                }
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let c = CabCurve::hermitian(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_fn(&c, 30, &mut rng);
        let coords = g.to_coords(&c, 30).unwrap();
        assert_eq!(CurveFn::from_coords(&c, &c.monomial_basis(30), &coords), g);
        assert_eq!(g.to_coords(&c, 40).unwrap()[..coords.len()], coords[..]);
        let top = CurveFn::monomial(*c.monomial_basis(30).last().unwrap(), Gf::ONE);
        assert!(top.to_coords(&c, 29).is_none());
    }

    #[test]
    fn identity_and_constants() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_fn(&c, 12, &mut rng);
        assert_eq!(g.mul(&c, &CurveFn::constant(Gf::ONE)), g);
        for p in c.affine_points() {
            assert_eq!(CurveFn::constant(Gf(5)).evaluate(&c, p), Gf(5));
        }
    }
}
