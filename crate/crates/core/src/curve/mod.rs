//! `C_{a,b}` plane curves `y^a = Σ c_ij x^i y^j` and the genus-0 line.
//!
//! Every curve has a single place `Q∞` at infinity with `v(x) = −a`, `v(y) = −b`.
//! The line is the degenerate case `a = b = 1` with `y ≡ 0`.

mod function;
mod series;
mod text;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Gf};

pub use function::{CurveFn, Monomial};
pub use series::{local_expansion, ExpansionTable, LocalChart, Uniformizer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("a = {a} and b = {b} are not coprime")]
    NotCoprime { a: u32, b: u32 },
    #[error("monomial x^{i} y^{j} is not allowed on the right-hand side")]
    IllegalMonomial { i: u32, j: u32 },
    #[error("leading term x^b must have a nonzero coefficient")]
    MissingLeadingTerm,
    #[error("curve is singular at the rational point ({x}, {y})")]
    Singular { x: String, y: String },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A rational affine point of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint {
    pub x: Gf,
    pub y: Gf,
}

/// Normal forms of `y^J` for `a ≤ J ≤ 2a − 2`, each as a list of terms with `j < a`.
type YPowers = Vec<Vec<(Monomial, Gf)>>;

#[derive(Clone)]
pub struct CabCurve {
    field: Field,
    a: u32,
    b: u32,
    terms: Vec<(Monomial, Gf)>,
    y_powers: YPowers,
    points: Vec<AffinePoint>,
}

impl fmt::Debug for CabCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CabCurve({}, a={}, b={}, terms={:?})",
            self.name(),
            self.a,
            self.b,
            self.terms
        )
    }
}

impl PartialEq for CabCurve {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.a == other.a && self.b == other.b && self.terms == other.terms
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CabCurve {
    /// Curve `y^a = Σ c_ij x^i y^j`. Zero coefficients are dropped and repeated monomials summed.
    pub fn new(field: &Field, a: u32, b: u32, terms: &[(Monomial, Gf)]) -> Result<CabCurve, CurveError> {
        if a == 0 || b == 0 || gcd(a, b) != 1 {
            return Err(CurveError::NotCoprime { a, b });
        }
        if a == 1 {
            // Only the line is supported in the a = 1 family.
            if b != 1 || terms.iter().any(|(_, c)| !c.is_zero()) {
                return Err(CurveError::IllegalMonomial { i: b, j: 0 });
            }
            return Ok(Self::line(field));
        }
        let mut merged: std::collections::BTreeMap<Monomial, Gf> = Default::default();
        for &((i, j), c) in terms {
            let e = merged.entry((i, j)).or_insert(Gf::ZERO);
            *e = field.add(*e, c);
        }
        merged.retain(|_, c| !c.is_zero());
        for &(i, j) in merged.keys() {
            let leading = (i, j) == (b, 0);
            if j >= a
                || (!leading
                    && u64::from(a) * u64::from(i) + u64::from(b) * u64::from(j) >= u64::from(a) * u64::from(b))
            {
                return Err(CurveError::IllegalMonomial { i, j });
            }
        }
        if !merged.contains_key(&(b, 0)) {
            return Err(CurveError::MissingLeadingTerm);
        }
        let terms: Vec<(Monomial, Gf)> = merged.into_iter().collect();
        let mut curve = CabCurve {
            field: field.clone(),
            a,
            b,
            y_powers: Vec::new(),
            terms,
            points: Vec::new(),
        };
        curve.y_powers = curve.build_y_powers();
        curve.points = curve.scan_points()?;
        Ok(curve)
    }

    /// The projective line: `L(M·Q∞)` is the polynomials in `x` of degree ≤ M.
    pub fn line(field: &Field) -> CabCurve {
        let points = field.elements().map(|x| AffinePoint { x, y: Gf::ZERO }).collect();
        CabCurve {
            field: field.clone(),
            a: 1,
            b: 1,
            terms: Vec::new(),
            y_powers: Vec::new(),
            points,
        }
    }

    /// Hermitian curve `y^{q0} + y = x^{q0+1}` over `F_{q0²}` with `q0 = p^e`.
    pub fn hermitian(p: u32, e: u32) -> Result<CabCurve, CurveError> {
        let field = Field::new(p, 2 * e)?;
        let q0 = p.pow(e);
        let minus_one = field.neg(Gf::ONE);
        CabCurve::new(&field, q0, q0 + 1, &[((q0 + 1, 0), Gf::ONE), ((0, 1), minus_one)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn is_line(&self) -> bool {
        self.a == 1
    }

    /// Right-hand-side terms `c_ij x^i y^j` of the defining equation.
    pub fn terms(&self) -> &[(Monomial, Gf)] {
        &self.terms
    }

    pub fn genus(&self) -> u32 {
        (self.a - 1) * (self.b - 1) / 2
    }

    /// Short human-readable description.
    pub fn name(&self) -> String {
        if self.is_line() {
            return format!("line/F{}", self.field.order());
        }
        let rhs: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|&((i, j), c)| {
                let mut s = String::new();
                if c != Gf::ONE || (i == 0 && j == 0) {
                    s.push_str(&self.field.format_elem(c));
                }
                if i > 0 {
                    s.push_str(&if i == 1 { "x".to_string() } else { format!("x^{i}") });
                }
                if j > 0 {
                    s.push_str(&if j == 1 { "y".to_string() } else { format!("y^{j}") });
                }
                s
            })
            .collect();
        format!("y^{}={}/F{}", self.a, rhs.join("+"), self.field.order())
    }

    pub fn pole_order(&self, (i, j): Monomial) -> i64 {
        i64::from(self.a) * i64::from(i) + i64::from(self.b) * i64::from(j)
    }

    /// Basis `{x^i y^j : j < a, a·i + b·j ≤ M}` of `L(M·Q∞)`, sorted by pole order.
    /// The basis for `M` is a prefix of the basis for any larger `M`.
    pub fn monomial_basis(&self, m: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if m < 0 {
            return out;
        }
        for j in 0..self.a {
            let rest = m - i64::from(self.b) * i64::from(j);
            if rest < 0 {
                break;
            }
            let imax = rest / i64::from(self.a);
            out.extend((0..=imax as u32).map(|i| (i, j)));
        }
        out.sort_by_key(|&mono| self.pole_order(mono));
        out
    }

    /// `ℓ(M·Q∞)`, counted without building the basis.
    pub fn ell_at_infinity(&self, m: i64) -> usize {
        (0..self.a)
            .map(|j| m - i64::from(self.b) * i64::from(j))
            .filter(|&r| r >= 0)
            .map(|r| (r / i64::from(self.a) + 1) as usize)
            .sum()
    }

    /// All rational affine points, ordered by `(x, y)` element index.
    pub fn affine_points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// `E(x0, y0) = y0^a − Σ c_ij x0^i y0^j`.
    pub fn equation_at(&self, x: Gf, y: Gf) -> Gf {
        if self.is_line() {
            return y;
        }
        let f = &self.field;
        let mut v = f.pow(y, u64::from(self.a));
        for &((i, j), c) in &self.terms {
            let t = f.mul(c, f.mul(f.pow(x, u64::from(i)), f.pow(y, u64::from(j))));
            v = f.sub(v, t);
        }
        v
    }

    /// `(∂E/∂x, ∂E/∂y)` at a point.
    pub fn partials_at(&self, x: Gf, y: Gf) -> (Gf, Gf) {
        if self.is_line() {
            return (Gf::ZERO, Gf::ONE);
        }
        let f = &self.field;
        let mut ex = Gf::ZERO;
        let mut ey = f.mul(f.from_int(i64::from(self.a)), f.pow(y, u64::from(self.a - 1)));
        for &((i, j), c) in &self.terms {
            if i > 0 {
                let d = f.mul(
                    f.from_int(i64::from(i)),
                    f.mul(c, f.mul(f.pow(x, u64::from(i - 1)), f.pow(y, u64::from(j)))),
                );
                ex = f.sub(ex, d);
            }
            if j > 0 {
                let d = f.mul(
                    f.from_int(i64::from(j)),
                    f.mul(c, f.mul(f.pow(x, u64::from(i)), f.pow(y, u64::from(j - 1)))),
                );
                ey = f.sub(ey, d);
            }
        }
        (ex, ey)
    }

    pub fn contains(&self, p: &AffinePoint) -> bool {
        self.equation_at(p.x, p.y).is_zero()
    }

    fn scan_points(&self) -> Result<Vec<AffinePoint>, CurveError> {
        let f = &self.field;
        let q = f.order() as usize;
        let a = self.a as usize;
        // ypow[y][j] = y^j
        let ypow: Vec<Vec<Gf>> = f
            .elements()
            .map(|y| {
                let mut row = Vec::with_capacity(a + 1);
                let mut acc = Gf::ONE;
                for _ in 0..=a {
                    row.push(acc);
                    acc = f.mul(acc, y);
                }
                row
            })
            .collect();
        let mut points = Vec::new();
        for x in f.elements() {
            // rhs(y) = Σ_j (Σ_i c_ij x^i) y^j
            let mut cj = vec![Gf::ZERO; a];
            for &((i, j), c) in &self.terms {
                cj[j as usize] = f.add(cj[j as usize], f.mul(c, f.pow(x, u64::from(i))));
            }
            for (yi, yp) in ypow.iter().enumerate().take(q) {
                let mut v = yp[a];
                for (j, &c) in cj.iter().enumerate() {
                    if !c.is_zero() {
                        v = f.sub(v, f.mul(c, yp[j]));
                    }
                }
                if v.is_zero() {
                    let y = Gf(yi as u32);
                    let (ex, ey) = self.partials_at(x, y);
                    if ex.is_zero() && ey.is_zero() {
                        return Err(CurveError::Singular {
                            x: f.format_elem(x),
                            y: f.format_elem(y),
                        });
                    }
                    points.push(AffinePoint { x, y });
                }
            }
        }
        Ok(points)
    }

    fn build_y_powers(&self) -> YPowers {
        let f = &self.field;
        let a = self.a;
        let mut out: YPowers = Vec::new();
        let mut cur: Vec<(Monomial, Gf)> = self.terms.clone();
        out.push(cur.clone());
        for _ in a + 1..=2 * a - 2 {
            // multiply by y, then fold the single y^a term back in
            let mut next: std::collections::BTreeMap<Monomial, Gf> = Default::default();
            for &((i, j), c) in &cur {
                if j + 1 < a {
                    let e = next.entry((i, j + 1)).or_insert(Gf::ZERO);
                    *e = f.add(*e, c);
                } else {
                    for &((ti, tj), tc) in &self.terms {
                        let e = next.entry((i + ti, tj)).or_insert(Gf::ZERO);
                        *e = f.add(*e, f.mul(c, tc));
                    }
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            out.push(cur.clone());
        }
        out
    }

    /// Normal form of `y^jj` for `a ≤ jj ≤ 2a − 2`.
    pub(crate) fn y_power_nf(&self, jj: u32) -> &[(Monomial, Gf)] {
        &self.y_powers[(jj - self.a) as usize]
    }
}
