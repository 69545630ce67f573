//! One-point AG codes `C_L(X, P, deg G·Q∞)`, evaluation, duals, star products and Hamming utilities.

use std::collections::HashSet;

use thiserror::Error;

use crate::algebra::{Field, Gf, Matrix, Subspace};
use crate::curve::{AffinePoint, CabCurve, CurveError, CurveFn, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("deg G = {deg_g} must be below the length n = {n}")]
    DegreeTooLarge { deg_g: i64, n: usize },
    #[error("deg G must be nonnegative")]
    NegativeDegree,
    #[error("no evaluation points")]
    NoPoints,
    #[error("duplicate evaluation point")]
    DuplicatePoint,
    #[error("evaluation point is not on the curve")]
    PointNotOnCurve,
    #[error("vector length {found} differs from {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug)]
pub struct AGCode {
    curve: CabCurve,
    points: Vec<AffinePoint>,
    deg_g: i64,
    basis: Vec<Monomial>,
    gen: Matrix,
    space: Subspace,
}

impl AGCode {
    pub fn new(curve: &CabCurve, points: &[AffinePoint], deg_g: i64) -> Result<AGCode, CodeError> {
        if points.is_empty() {
            return Err(CodeError::NoPoints);
        }
        if deg_g < 0 {
            return Err(CodeError::NegativeDegree);
        }
        if deg_g >= points.len() as i64 {
            return Err(CodeError::DegreeTooLarge { deg_g, n: points.len() });
        }
        let mut seen = HashSet::new();
        for p in points {
            if !seen.insert(*p) {
                return Err(CodeError::DuplicatePoint);
            }
            if !curve.contains(p) {
                return Err(CodeError::PointNotOnCurve);
            }
        }
        let basis = curve.monomial_basis(deg_g);
        let rows: Vec<Vec<Gf>> = basis
            .iter()
            .map(|&m| ev(curve, &CurveFn::monomial(m, Gf::ONE), points))
            .collect();
        let gen = Matrix::from_rows(curve.field(), points.len(), &rows).expect("evaluation rows have length n");
        let space = Subspace::row_space(&gen);
        Ok(AGCode {
            curve: curve.clone(),
            points: points.to_vec(),
            deg_g,
            basis,
            gen,
            space,
        })
    }

    /// Code over all rational affine points of the curve.
    pub fn full(curve: &CabCurve, deg_g: i64) -> Result<AGCode, CodeError> {
        Self::new(curve, curve.affine_points(), deg_g)
    }

    pub fn curve(&self) -> &CabCurve {
        &self.curve
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn deg_g(&self) -> i64 {
        self.deg_g
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus()
    }

    /// `d* = n − deg G`.
    pub fn designed_distance(&self) -> i64 {
        self.n() as i64 - self.deg_g
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.gen
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Codeword of the message `msg` (coordinates over the monomial basis of `L(G)`).
    pub fn encode(&self, msg: &[Gf]) -> Result<Vec<Gf>, CodeError> {
        if msg.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                found: msg.len(),
            });
        }
        Ok(self.gen.vec_mul(msg))
    }

    pub fn contains(&self, v: &[Gf]) -> Result<bool, CodeError> {
        self.check_len(v)?;
        Ok(self.space.contains(v).expect("length checked"))
    }

    pub fn dual(&self) -> Subspace {
        self.gen.kernel()
    }

    pub fn check_len(&self, v: &[Gf]) -> Result<(), CodeError> {
        if v.len() == self.n() {
            Ok(())
        } else {
            Err(CodeError::LengthMismatch {
                expected: self.n(),
                found: v.len(),
            })
        }
    }

    /// Code descriptor: the curve lines followed by `degG d` and, unless all points are used,
    /// `points i1 i2 …` as indices into the curve's point list.
    pub fn to_text(&self) -> String {
        let mut s = self.curve.to_text();
        s.push_str(&format!("degG {}\n", self.deg_g));
        if self.points != self.curve.affine_points() {
            let idx: Vec<String> = self
                .points
                .iter()
                .map(|p| {
                    self.curve
                        .affine_points()
                        .iter()
                        .position(|q| q == p)
                        .expect("code points lie on the curve")
                        .to_string()
                })
                .collect();
            s.push_str(&format!("points {}\n", idx.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<AGCode, CodeError> {
        let mut curve_text = String::new();
        let mut deg_g = None;
        let mut indices: Option<Vec<usize>> = None;
        for (n, raw) in text.lines().enumerate() {
            let ln = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            let mut toks = content.split_whitespace();
            match toks.next() {
                Some("degG") => {
                    let v = toks
                        .next()
                        .and_then(|t| t.parse::<i64>().ok())
                        .ok_or(CodeError::Parse {
                            line: ln,
                            msg: "bad degG".into(),
                        })?;
                    deg_g = Some(v);
                    curve_text.push('\n');
                }
                Some("points") => {
                    let v: Result<Vec<usize>, _> = toks.map(str::parse).collect();
                    indices = Some(v.map_err(|_| CodeError::Parse {
                        line: ln,
                        msg: "bad point index".into(),
                    })?);
                    curve_text.push('\n');
                }
                _ => {
                    curve_text.push_str(raw);
                    curve_text.push('\n');
                }
            }
        }
        let curve = CabCurve::parse(&curve_text)?;
        let deg_g = deg_g.ok_or(CodeError::Parse {
            line: 0,
            msg: "missing degG".into(),
        })?;
        let points = match indices {
            None => curve.affine_points().to_vec(),
            Some(idx) => idx
                .iter()
                .map(|&i| {
                    curve.affine_points().get(i).copied().ok_or(CodeError::Parse {
                        line: 0,
                        msg: format!("point index {i} out of range"),
                    })
                })
                .collect::<Result<_, _>>()?,
        };
        AGCode::new(&curve, &points, deg_g)
    }
}

/// `(f(P_1), …, f(P_n))`.
pub fn ev(curve: &CabCurve, f: &CurveFn, points: &[AffinePoint]) -> Vec<Gf> {
    points.iter().map(|p| f.evaluate(curve, p)).collect()
}

/// Componentwise product.
pub fn star(field: &Field, a: &[Gf], b: &[Gf]) -> Vec<Gf> {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect()
}

/// Span of all `u ∗ v` for basis vectors `u` of `U` and `v` of `V`.
pub fn star_product(u: &Subspace, v: &Subspace) -> Result<Subspace, CodeError> {
    if u.ambient_dim() != v.ambient_dim() {
        return Err(CodeError::LengthMismatch {
            expected: u.ambient_dim(),
            found: v.ambient_dim(),
        });
    }
    let field = u.field();
    let mut m = Matrix::zeros(field, 0, u.ambient_dim());
    for a in u.basis_vectors() {
        for b in v.basis_vectors() {
            m.push_row(&star(field, &a, &b));
        }
    }
    Ok(Subspace::row_space(&m))
}

pub fn hamming(a: &[Gf], b: &[Gf]) -> Result<usize, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

pub fn weight(a: &[Gf]) -> usize {
    a.iter().filter(|x| !x.is_zero()).count()
}

pub fn support(a: &[Gf]) -> Vec<usize> {
    a.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Whitespace-separated element list.
pub fn format_vector(field: &Field, v: &[Gf]) -> String {
    v.iter().map(|&x| field.format_elem(x)).collect::<Vec<_>>().join(" ")
}

pub fn parse_vector(field: &Field, text: &str) -> Result<Vec<Gf>, CodeError> {
    text.split_whitespace()
        .map(|t| {
            field.parse_elem(t).map_err(|e| CodeError::Parse {
                line: 0,
                msg: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Gf> {
        (0..n).map(|_| Gf(rng.gen_range(0..f.order()))).collect()
    }

    #[test]
    fn reed_solomon_from_the_line() {
        let f = Field::new(11, 1).unwrap();
        let line = CabCurve::line(&f);
        let code = AGCode::full(&line, 3).unwrap();
        assert_eq!((code.n(), code.k()), (11, 4));
        assert_eq!(code.dual().dim(), 7);
        // generator rows are x^i evaluated at 0..10
        for (i, row) in code.generator_matrix().row_vecs().iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                assert_eq!(v, f.pow(Gf(x as u32), i as u64));
            }
        }
    }

    #[test]
    fn hermitian_parameters() {
        let c9 = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c9, 8).unwrap();
        assert_eq!((code.n(), code.k(), code.designed_distance()), (27, 6, 19));
        let c16 = CabCurve::hermitian(2, 2).unwrap();
        let code = AGCode::full(&c16, 8).unwrap();
        assert_eq!((code.n(), code.k(), code.designed_distance()), (64, 4, 56));
        assert_eq!(code.generator_matrix().rank(), 4);
    }

    #[test]
    fn construction_errors() {
        let f = Field::new(5, 1).unwrap();
        let line = CabCurve::line(&f);
        assert!(matches!(AGCode::full(&line, 5), Err(CodeError::DegreeTooLarge { .. })));
        let p = line.affine_points()[0];
        assert_eq!(AGCode::new(&line, &[p, p], 0).unwrap_err(), CodeError::DuplicatePoint);
        assert_eq!(AGCode::new(&line, &[], 0).unwrap_err(), CodeError::NoPoints);
    }

    #[test]
    fn double_dual_and_membership() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let dual = code.dual();
        assert_eq!(dual.dim() + code.k(), code.n());
        assert_eq!(dual.orthogonal_complement(), *code.space());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let msg = random_vec(c.field(), code.k(), &mut rng);
        let cw = code.encode(&msg).unwrap();
        assert!(code.contains(&cw).unwrap());
        let basis = c.monomial_basis(8);
        assert_eq!(ev(&c, &CurveFn::from_coords(&c, &basis, &msg), code.points()), cw);
        assert_eq!(ev(&c, &CurveFn::constant(Gf::ONE), code.points()), vec![Gf::ONE; 27]);
    }

    #[test]
    fn star_products() {
        let f = Field::new(11, 1).unwrap();
        let line = CabCurve::line(&f);
        let rs = |k: i64| AGCode::full(&line, k - 1).unwrap().space().clone();
        let ones = Subspace::from_vectors(&f, 11, vec![vec![Gf::ONE; 11]]).unwrap();
        assert_eq!(star_product(&rs(3), &ones).unwrap(), rs(3));
        assert_eq!(star_product(&rs(3), &rs(3)).unwrap(), rs(5));
        assert_eq!(star_product(&rs(4), &rs(2)).unwrap(), rs(5));
    }

    #[test]
    fn star_adjunction_identity() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = random_vec(&f, 12, &mut rng);
            let b = random_vec(&f, 12, &mut rng);
            let c = random_vec(&f, 12, &mut rng);
            assert_eq!(f.dot(&star(&f, &a, &b), &c), f.dot(&a, &star(&f, &b, &c)));
        }
    }

    #[test]
    fn hamming_metric() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_vec(&f, 9, &mut rng);
            let b = random_vec(&f, 9, &mut rng);
            let c = random_vec(&f, 9, &mut rng);
            assert_eq!(hamming(&a, &a).unwrap(), 0);
            assert_eq!(weight(&a), support(&a).len());
            assert!(hamming(&a, &c).unwrap() <= hamming(&a, &b).unwrap() + hamming(&b, &c).unwrap());
        }
        assert!(hamming(&[Gf(1)], &[]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let back = AGCode::parse(&code.to_text()).unwrap();
        assert_eq!(back.points(), code.points());
        let sub = AGCode::new(&c, &c.affine_points()[3..20], 5).unwrap();
        let back = AGCode::parse(&sub.to_text()).unwrap();
        assert_eq!(back.points(), sub.points());
        assert_eq!(back.deg_g(), 5);
        let v = vec![Gf(0), Gf(4), Gf(8)];
        assert_eq!(parse_vector(c.field(), &format_vector(c.field(), &v)).unwrap(), v);
    }
}
