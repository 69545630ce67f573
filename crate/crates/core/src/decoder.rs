//! Power decoding with divisor adaptation.
//!
//! For `F = deg F·Q∞ − Σ m_P·P` write `E_F(Λ)` for the vector whose `P`-entry is the
//! coefficient of `t^{m_P}` in the expansion of `Λ` at `P`. A function `h ∈ L(F + iG')`
//! lies in `L(F + iG' − D)` exactly when `E_{F+iG'}(h) = 0`, and `E(Λ·f_y^i) = E_F(Λ) ∗ y^i`.
//! Hence
//!
//! `S_i(F) = {Λ ∈ L(F) : E_F(Λ) ∗ y^i ∈ E_{F+iG}(L(F + iG))}`,
//!
//! which is what [`DecodeContext::s_space`] computes. When `deg(F + iG) ≥ n` the sum
//! `L(F+iG) + L(F+iG'−D)` is not direct and the same test gives the non-direct variant.

use thiserror::Error;

use crate::agcode::{ev, star, star_product, weight, AGCode, CodeError};
use crate::algebra::{Gf, Matrix, Subspace};
use crate::curve::{AffinePoint, CurveError, CurveFn, ExpansionTable};
use crate::rrspace::{ell_with, rr_space_with, Divisor, RrError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("ell must be at least 1")]
    EllZero,
    #[error("deg F = {deg_f} is below t + g = {min}")]
    DegFTooSmall { deg_f: i64, min: i64 },
    #[error("deg G' = {deg_g_prime} is below n + 2g - 1 = {min}")]
    DegGPrimeTooSmall { deg_g_prime: i64, min: i64 },
    #[error("t = {t} must be below n = {n}")]
    TooManyErrors { t: usize, n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    RiemannRoch(#[from] RrError),
    #[error("the received word has no lift to L(G')")]
    LiftFailed,
    #[error("k_space needs a divisor supported at infinity only")]
    FiniteSupport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PointPolicy {
    /// First evaluation point, in code order, whose subtraction drops `dim S` by at least 2.
    #[default]
    FirstHit,
    /// The point with the largest drop; ties go to the earliest point.
    MaxDrop,
}

impl std::str::FromStr for PointPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first-hit" | "first_hit" | "first" => Ok(PointPolicy::FirstHit),
            "max-drop" | "max_drop" | "max" => Ok(PointPolicy::MaxDrop),
            other => Err(format!("unknown point policy {other:?}")),
        }
    }
}

impl std::fmt::Display for PointPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointPolicy::FirstHit => "first-hit",
            PointPolicy::MaxDrop => "max-drop",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    pub ell: u32,
    pub t: usize,
    pub deg_f: i64,
    pub deg_g_prime: i64,
    pub max_steps: usize,
    pub policy: PointPolicy,
    /// Record `dim Z_i`, `dim S_1` and the exact-sequence bounds at every step (slow).
    pub instrument: bool,
}

impl DecoderConfig {
    /// Defaults: `deg F = t + 2g`, `deg G' = n + 2g − 1`, `max_steps = g + 1`.
    pub fn new(code: &AGCode, ell: u32, t: usize) -> DecoderConfig {
        let g = i64::from(code.genus());
        DecoderConfig {
            ell,
            t,
            deg_f: t as i64 + 2 * g,
            deg_g_prime: code.n() as i64 + 2 * g - 1,
            max_steps: code.genus() as usize + 1,
            policy: PointPolicy::FirstHit,
            instrument: false,
        }
    }

    pub fn with_policy(mut self, policy: PointPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_instrumentation(mut self, on: bool) -> Self {
        self.instrument = on;
        self
    }

    pub fn validate(&self, code: &AGCode) -> Result<(), DecodeError> {
        let g = i64::from(code.genus());
        let n = code.n() as i64;
        if self.ell == 0 {
            return Err(DecodeError::EllZero);
        }
        if self.t >= code.n() {
            return Err(DecodeError::TooManyErrors { t: self.t, n: code.n() });
        }
        if self.deg_f < self.t as i64 + g {
            return Err(DecodeError::DegFTooSmall {
                deg_f: self.deg_f,
                min: self.t as i64 + g,
            });
        }
        if self.deg_g_prime < n + 2 * g - 1 {
            return Err(DecodeError::DegGPrimeTooSmall {
                deg_g_prime: self.deg_g_prime,
                min: n + 2 * g - 1,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    SZero,
    NoLambda,
    RecoveryInconsistent,
    WeightExceeded,
    NotCodeword,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::SZero => "S_zero",
            FailureReason::NoLambda => "no_Lambda",
            FailureReason::RecoveryInconsistent => "recovery_inconsistent",
            FailureReason::WeightExceeded => "weight_exceeded",
            FailureReason::NotCodeword => "not_codeword",
        }
    }
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success {
        f_e: CurveFn,
        error: Vec<Gf>,
        codeword: Vec<Gf>,
    },
    Failure(FailureReason),
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success { .. })
    }

    pub fn codeword(&self) -> Option<&[Gf]> {
        match self {
            Outcome::Success { codeword, .. } => Some(codeword),
            Outcome::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<FailureReason> {
        match self {
            Outcome::Success { .. } => None,
            Outcome::Failure(r) => Some(*r),
        }
    }
}

/// Per-step structural measurements, filled only with instrumentation on.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StepInstruments {
    /// `dim S_1(F_j)`.
    pub dim_s1: usize,
    /// `ℓ(G + F_j − D + D_e)`, the upper slack in the exact-sequence bound.
    pub ell_upper: usize,
    /// `dim Z_i` for `i = 1..=ℓ`, computed from the complement in `L(F_j + iG')`.
    pub z_dims: Vec<usize>,
    /// `deg(F_j + iG)` for `i = 1..=ℓ`.
    pub deg_f_ig: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub j: usize,
    pub divisor: Divisor,
    pub dim_s: usize,
    /// Index (in code order) of the point subtracted to form `F_{j+1}`.
    pub chosen: Option<usize>,
    /// `dim S(F_j) − dim S(F_{j+1})` for the chosen point.
    pub drop: Option<usize>,
    /// `ℓ(F_j − D_e)`, when the true error is known.
    pub ell_f_de: Option<usize>,
    /// `Δ_j = dim S(F_j) − ℓ(F_j − D_e)`.
    pub delta: Option<i64>,
    pub instruments: Option<StepInstruments>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DecodeTrace {
    pub steps: Vec<StepRecord>,
    /// Whether every chosen point lies in the error support (known error only).
    pub pts_in_de: Option<bool>,
}

impl DecodeTrace {
    pub fn delta0(&self) -> Option<i64> {
        self.steps.first().and_then(|s| s.delta)
    }

    /// `Δ_j − Δ_{j+1}` over consecutive steps.
    pub fn delta_gaps(&self) -> Vec<i64> {
        self.steps
            .windows(2)
            .filter_map(|w| Some(w[0].delta? - w[1].delta?))
            .collect()
    }

    pub fn steps_used(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

/// Everything about a (code, configuration) pair that does not depend on the received word.
pub struct DecodeContext {
    code: AGCode,
    config: DecoderConfig,
    table: ExpansionTable,
    /// evaluations of the monomial basis of `L(G')`, one row per monomial
    lift_matrix: Matrix,
    /// rows span the dual code
    parity: Matrix,
}

impl DecodeContext {
    pub fn new(code: &AGCode, config: DecoderConfig) -> Result<DecodeContext, DecodeError> {
        config.validate(code)?;
        let curve = code.curve();
        let max_pole = config.deg_f + i64::from(config.ell) * config.deg_g_prime;
        let table = ExpansionTable::new(curve, code.points(), max_pole, config.max_steps + 2)?;
        let rows: Vec<Vec<Gf>> = curve
            .monomial_basis(config.deg_g_prime)
            .iter()
            .map(|&m| ev(curve, &CurveFn::monomial(m, Gf::ONE), code.points()))
            .collect();
        let lift_matrix = Matrix::from_rows(curve.field(), code.n(), &rows).expect("rows have length n");
        let parity = code.dual().basis().clone();
        Ok(DecodeContext {
            code: code.clone(),
            config,
            table,
            lift_matrix,
            parity,
        })
    }

    pub fn code(&self) -> &AGCode {
        &self.code
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    pub fn table(&self) -> &ExpansionTable {
        &self.table
    }

    /// `F_0 = deg F·Q∞`.
    pub fn initial_divisor(&self) -> Divisor {
        Divisor::at_infinity(self.config.deg_f)
    }

    /// `f_y ∈ L(G')` with `ev(f_y) = y`, free variables set to zero.
    pub fn lift_received(&self, y: &[Gf]) -> Result<CurveFn, DecodeError> {
        self.code.check_len(y)?;
        let coords = self.lift_matrix.transpose().solve(y).ok_or(DecodeError::LiftFailed)?;
        let curve = self.code.curve();
        Ok(CurveFn::from_coords(
            curve,
            &curve.monomial_basis(self.config.deg_g_prime),
            &coords,
        ))
    }

    /// `E_F` applied to each row of `coords` (coordinates over `monomial_basis(F.inf)`).
    fn e_map(&self, divisor: &Divisor, coords: &Matrix) -> Matrix {
        let field = self.code.field();
        let n = self.code.n();
        let cols = coords.cols();
        let mut out = Matrix::zeros(field, coords.rows(), n);
        let precise = (divisor.max_multiplicity() as usize) < self.table.precision()
            && divisor.inf_coeff() <= self.table.max_pole();
        if precise {
            // emat[c][k] = coefficient of t^{m_k} of monomial c at point k
            let mut emat = Matrix::zeros(field, cols, n);
            for (k, p) in self.code.points().iter().enumerate() {
                let m = divisor.multiplicity(p) as usize;
                for c in 0..cols {
                    emat[(c, k)] = self.table.coeff(k, c, m);
                }
            }
            return coords.mul(&emat).expect("shapes agree");
        }
        let curve = self.code.curve();
        let basis = curve.monomial_basis(divisor.inf_coeff());
        for r in 0..coords.rows() {
            let fun = CurveFn::from_coords(curve, &basis, coords.row(r));
            for (k, p) in self.code.points().iter().enumerate() {
                let m = divisor.multiplicity(p) as usize;
                let s = crate::curve::local_expansion(curve, &fun, p, m + 1).expect("code points are smooth");
                out[(r, k)] = s[m];
            }
        }
        out
    }

    fn rr(&self, divisor: &Divisor) -> Result<Subspace, DecodeError> {
        Ok(rr_space_with(self.code.curve(), Some(&self.table), divisor, divisor.inf_coeff())?.space)
    }

    /// `⋂_{i ∈ is} S_i(F)` as a subspace of coordinates over `monomial_basis(F.inf)`.
    pub fn s_spaces(&self, divisor: &Divisor, y: &[Gf], is: &[u32]) -> Result<Subspace, DecodeError> {
        let field = self.code.field();
        let lf = self.rr(divisor)?;
        if lf.dim() == 0 || is.is_empty() {
            return Ok(lf);
        }
        let ef = self.e_map(divisor, lf.basis());
        let mut cond_cols: Vec<Vec<Gf>> = Vec::new();
        for &i in is {
            let big = divisor.plus_inf(i64::from(i) * self.code.deg_g());
            let w = Subspace::row_space(&self.e_map(&big, self.rr(&big)?.basis()));
            let checks = w.orthogonal_complement();
            if checks.dim() == 0 {
                continue;
            }
            let yi: Vec<Gf> = y.iter().map(|&v| field.pow(v, u64::from(i))).collect();
            let shifted: Vec<Vec<Gf>> = ef.row_vecs().iter().map(|row| star(field, row, &yi)).collect();
            for h in checks.basis_vectors() {
                cond_cols.push(shifted.iter().map(|row| field.dot(row, &h)).collect());
            }
        }
        if cond_cols.is_empty() {
            return Ok(lf);
        }
        // coefficient vectors c over the basis of L(F) with Σ c_k cond[k][·] = 0
        let cond_t = Matrix::from_rows(field, lf.dim(), &cond_cols).expect("one entry per basis vector");
        let coeffs = cond_t.kernel();
        let rows: Vec<Vec<Gf>> = coeffs.basis_vectors().iter().map(|c| lf.combine(c)).collect();
        Ok(Subspace::from_vectors(field, lf.ambient_dim(), rows).expect("combinations have ambient length"))
    }

    /// `S_i(F)`.
    pub fn s_space(&self, divisor: &Divisor, y: &[Gf], i: u32) -> Result<Subspace, DecodeError> {
        self.s_spaces(divisor, y, &[i])
    }

    /// `S(F) = ⋂_{i=1}^{ℓ} S_i(F)`.
    pub fn s_intersection(&self, divisor: &Divisor, y: &[Gf]) -> Result<Subspace, DecodeError> {
        let is: Vec<u32> = (1..=self.config.ell).collect();
        self.s_spaces(divisor, y, &is)
    }

    /// Looks for a point `P` with `dim S(F − P) ≤ dim S(F) − 2`.
    /// Returns the point index and `S(F − P)`.
    pub fn adapt_step(
        &self,
        divisor: &Divisor,
        y: &[Gf],
        dim_s: usize,
    ) -> Result<Option<(usize, Subspace)>, DecodeError> {
        let mut best: Option<(usize, Subspace)> = None;
        for (k, p) in self.code.points().iter().enumerate() {
            let s = self.s_intersection(&divisor.minus_point(p, 1), y)?;
            if s.dim() + 2 > dim_s {
                continue;
            }
            match self.config.policy {
                PointPolicy::FirstHit => return Ok(Some((k, s))),
                PointPolicy::MaxDrop => {
                    if best.as_ref().is_none_or(|(_, b)| s.dim() < b.dim()) {
                        best = Some((k, s));
                    }
                }
            }
        }
        Ok(best)
    }

    /// Recovers `f_e` from a locator `Λ ∈ S(F)` (coordinates over `monomial_basis(F.inf)`).
    ///
    /// Splits `Λ·f_y = u1 + u2` with `u1 ∈ L(F + G)` and `u2 ∈ L(F + G' − D)`, then solves `Λ·g = u2`
    /// for `g ∈ L(G')`.
    pub fn recover(&self, lambda: &[Gf], divisor: &Divisor, f_y: &CurveFn, y: &[Gf]) -> Result<CurveFn, FailureReason> {
        let curve = self.code.curve();
        let field = self.code.field();
        let lam_m = Matrix::from_rows(field, lambda.len(), &[lambda.to_vec()]).expect("one row");
        let target = star(field, self.e_map(divisor, &lam_m).row(0), y);
        let fg = divisor.plus_inf(self.code.deg_g());
        let u1_space = self.rr(&fg).map_err(|_| FailureReason::NoLambda)?;
        let e_u1 = self.e_map(&fg, u1_space.basis());
        let a = e_u1.transpose().solve(&target).ok_or(FailureReason::NoLambda)?;
        let u1 = CurveFn::from_coords(curve, &curve.monomial_basis(fg.inf_coeff()), &u1_space.combine(&a));
        let lam = CurveFn::from_coords(curve, &curve.monomial_basis(divisor.inf_coeff()), lambda);
        let u2 = lam.mul(curve, f_y).sub(curve, &u1);

        let amb = divisor.inf_coeff() + self.config.deg_g_prime;
        let g_basis = curve.monomial_basis(self.config.deg_g_prime);
        let cols: Vec<Vec<Gf>> = g_basis
            .iter()
            .map(|&m| {
                lam.mul(curve, &CurveFn::monomial(m, Gf::ONE))
                    .to_coords(curve, amb)
                    .expect("pole order within L(F + G')")
            })
            .collect();
        let rhs = u2.to_coords(curve, amb).ok_or(FailureReason::RecoveryInconsistent)?;
        let m = Matrix::from_rows(field, rhs.len(), &cols)
            .expect("uniform length")
            .transpose();
        let g = m.solve(&rhs).ok_or(FailureReason::RecoveryInconsistent)?;
        Ok(CurveFn::from_coords(curve, &g_basis, &g))
    }

    fn is_codeword(&self, c: &[Gf]) -> bool {
        self.parity.mul_vec(c).iter().all(|v| v.is_zero())
    }

    fn instruments(
        &self,
        divisor: &Divisor,
        y: &[Gf],
        support: Option<&[usize]>,
    ) -> Result<StepInstruments, DecodeError> {
        let curve = self.code.curve();
        let points = self.code.points();
        let dim_s1 = self.s_space(divisor, y, 1)?.dim();
        // G + F − D + D_e: subtract one more at every non-error point
        let mut upper = divisor.plus_inf(self.code.deg_g());
        for (k, p) in points.iter().enumerate() {
            if support.is_none_or(|s| !s.contains(&k)) {
                upper = upper.minus_point(p, 1);
            }
        }
        let ell_upper = ell_with(curve, Some(&self.table), &upper)?;
        let mut z_dims = Vec::new();
        let mut deg_f_ig = Vec::new();
        for i in 1..=i64::from(self.config.ell) {
            let amb = divisor.inf_coeff() + i * self.config.deg_g_prime;
            let u1 = rr_space_with(curve, Some(&self.table), &divisor.plus_inf(i * self.code.deg_g()), amb)?.space;
            let u2 = rr_space_with(
                curve,
                Some(&self.table),
                &divisor.plus_inf(i * self.config.deg_g_prime).minus_points(points),
                amb,
            )?
            .space;
            let total = rr_space_with(
                curve,
                Some(&self.table),
                &divisor.plus_inf(i * self.config.deg_g_prime),
                amb,
            )?;
            let sum = u1.sum(&u2).expect("common ambient");
            z_dims.push(total.dim() - sum.dim());
            deg_f_ig.push(divisor.degree() + i * self.code.deg_g());
        }
        Ok(StepInstruments {
            dim_s1,
            ell_upper,
            z_dims,
            deg_f_ig,
        })
    }

    fn record(
        &self,
        j: usize,
        divisor: &Divisor,
        dim_s: usize,
        y: &[Gf],
        support: Option<&[usize]>,
    ) -> Result<StepRecord, DecodeError> {
        let ell_f_de = match support {
            Some(s) => {
                let d = divisor.minus_points(s.iter().map(|&k| &self.code.points()[k]));
                Some(ell_with(self.code.curve(), Some(&self.table), &d)?)
            }
            None => None,
        };
        let instruments = if self.config.instrument {
            Some(self.instruments(divisor, y, support)?)
        } else {
            None
        };
        Ok(StepRecord {
            j,
            divisor: divisor.clone(),
            dim_s,
            chosen: None,
            drop: None,
            ell_f_de,
            delta: ell_f_de.map(|l| dim_s as i64 - l as i64),
            instruments,
        })
    }

    /// Runs the decoder on `y`. With `true_error` supplied the trace carries `Δ_j` and the
    /// `pts ⊆ D_e` flag.
    pub fn decode(&self, y: &[Gf], true_error: Option<&[Gf]>) -> Result<(Outcome, DecodeTrace), DecodeError> {
        self.code.check_len(y)?;
        if let Some(e) = true_error {
            self.code.check_len(e)?;
        }
        let support: Option<Vec<usize>> = true_error.map(crate::agcode::support);
        let support = support.as_deref();
        let mut trace = DecodeTrace::default();
        let mut divisor = self.initial_divisor();
        let mut s = self.s_intersection(&divisor, y)?;
        trace.steps.push(self.record(0, &divisor, s.dim(), y, support)?);
        let mut chosen_all = Vec::new();
        let mut j = 0;
        loop {
            if s.dim() == 0 {
                trace.pts_in_de = support.map(|sup| chosen_all.iter().all(|k| sup.contains(k)));
                return Ok((Outcome::Failure(FailureReason::SZero), trace));
            }
            if j == self.config.max_steps {
                break;
            }
            let Some((k, next)) = self.adapt_step(&divisor, y, s.dim())? else {
                break;
            };
            let last = trace.steps.last_mut().expect("at least one step");
            last.chosen = Some(k);
            last.drop = Some(s.dim() - next.dim());
            chosen_all.push(k);
            divisor = divisor.minus_point(&self.code.points()[k], 1);
            s = next;
            j += 1;
            trace.steps.push(self.record(j, &divisor, s.dim(), y, support)?);
        }
        trace.pts_in_de = support.map(|sup| chosen_all.iter().all(|k| sup.contains(k)));

        let lambda = s.basis().row(0).to_vec();
        let f_y = self.lift_received(y)?;
        let f_e = match self.recover(&lambda, &divisor, &f_y, y) {
            Ok(f) => f,
            Err(reason) => return Ok((Outcome::Failure(reason), trace)),
        };
        let curve = self.code.curve();
        let field = self.code.field();
        let error = ev(curve, &f_e, self.code.points());
        if weight(&error) > self.config.t {
            return Ok((Outcome::Failure(FailureReason::WeightExceeded), trace));
        }
        let codeword: Vec<Gf> = y.iter().zip(&error).map(|(&a, &b)| field.sub(a, b)).collect();
        if !self.is_codeword(&codeword) {
            return Ok((Outcome::Failure(FailureReason::NotCodeword), trace));
        }
        Ok((Outcome::Success { f_e, error, codeword }, trace))
    }
}

/// `K_y^(i) = {a ∈ ev(L(F)) : a ∗ y^i ∈ ev(L(F + G)) ∗ C^{i−1}}`, computed in the code domain only.
pub fn k_space(code: &AGCode, divisor: &Divisor, y: &[Gf], i: u32) -> Result<Subspace, DecodeError> {
    if divisor.has_finite_support() {
        return Err(DecodeError::FiniteSupport);
    }
    code.check_len(y)?;
    let curve = code.curve();
    let field = code.field();
    let n = code.n();
    let eval_space = |m: i64| -> Subspace {
        let rows: Vec<Vec<Gf>> = curve
            .monomial_basis(m)
            .iter()
            .map(|&mono| ev(curve, &CurveFn::monomial(mono, Gf::ONE), code.points()))
            .collect();
        Subspace::from_vectors(field, n, rows).expect("rows have length n")
    };
    let a = eval_space(divisor.inf_coeff());
    let mut t = eval_space(divisor.inf_coeff() + code.deg_g());
    for _ in 1..i {
        t = star_product(&t, code.space())?;
    }
    let checks = t.orthogonal_complement();
    if checks.dim() == 0 || a.dim() == 0 {
        return Ok(a);
    }
    let yi: Vec<Gf> = y.iter().map(|&v| field.pow(v, u64::from(i))).collect();
    let cond_cols: Vec<Vec<Gf>> = checks
        .basis_vectors()
        .iter()
        .map(|h| {
            a.basis_vectors()
                .iter()
                .map(|row| field.dot(&star(field, row, &yi), h))
                .collect()
        })
        .collect();
    let cond_t = Matrix::from_rows(field, a.dim(), &cond_cols).expect("one entry per basis vector");
    let rows: Vec<Vec<Gf>> = cond_t.kernel().basis_vectors().iter().map(|c| a.combine(c)).collect();
    Ok(Subspace::from_vectors(field, n, rows).expect("rows have length n"))
}

/// Image under evaluation of a coefficient subspace over `monomial_basis(m)`.
pub fn evaluate_space(code: &AGCode, space: &Subspace, m: i64) -> Subspace {
    let curve = code.curve();
    let basis = curve.monomial_basis(m);
    let rows: Vec<Vec<Gf>> = space
        .basis_vectors()
        .iter()
        .map(|v| ev(curve, &CurveFn::from_coords(curve, &basis, v), code.points()))
        .collect();
    Subspace::from_vectors(code.field(), code.n(), rows).expect("rows have length n")
}

/// `Δ = dim S(F) − ℓ(F − D_e)` for a divisor and known error.
pub fn delta_trace(ctx: &DecodeContext, divisor: &Divisor, y: &[Gf], true_error: &[Gf]) -> Result<i64, DecodeError> {
    let s = ctx.s_intersection(divisor, y)?;
    let pts: Vec<&AffinePoint> = crate::agcode::support(true_error)
        .into_iter()
        .map(|k| &ctx.code().points()[k])
        .collect();
    let l = ell_with(ctx.code().curve(), Some(ctx.table()), &divisor.minus_points(pts))?;
    Ok(s.dim() as i64 - l as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CabCurve;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(code: &AGCode, t: usize, rng: &mut ChaCha8Rng) -> (Vec<Gf>, Vec<Gf>, Vec<Gf>) {
        let q = code.field().order();
        let msg: Vec<Gf> = (0..code.k()).map(|_| Gf(rng.gen_range(0..q))).collect();
        let c = code.encode(&msg).unwrap();
        let mut e = vec![Gf::ZERO; code.n()];
        for k in sample(rng, code.n(), t).iter() {
            e[k] = Gf(rng.gen_range(1..q));
        }
        let y: Vec<Gf> = c.iter().zip(&e).map(|(&a, &b)| code.field().add(a, b)).collect();
        (c, e, y)
    }

    #[test]
    fn lift_reproduces_received_word() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 1, 5)).unwrap();
        assert!(ctx.lift_received(&[Gf::ZERO; 27]).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let y: Vec<Gf> = (0..27).map(|_| Gf(rng.gen_range(0..9))).collect();
            let f = ctx.lift_received(&y).unwrap();
            assert_eq!(ev(&c, &f, code.points()), y);
            assert!(f.pole_order(&c).unwrap_or(0) < 27 + 6);
        }
    }

    #[test]
    fn error_free_word_gives_full_space() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 2, 4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (_, _, y) = random_instance(&code, 0, &mut rng);
        let f = ctx.initial_divisor();
        let full = ctx.rr(&f).unwrap();
        for i in 1..=2 {
            assert_eq!(ctx.s_space(&f, &y, i).unwrap(), full);
        }
    }

    #[test]
    fn unique_decoding_on_hermitian_f9() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in [0, 3, 7, 9] {
            let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 1, t)).unwrap();
            for _ in 0..5 {
                let (cw, e, y) = random_instance(&code, t, &mut rng);
                let (out, trace) = ctx.decode(&y, Some(&e)).unwrap();
                assert_eq!(out.codeword(), Some(cw.as_slice()), "t={t} {trace:?}");
                for w in trace.steps.windows(2) {
                    assert!(w[1].dim_s + 2 <= w[0].dim_s);
                }
            }
        }
    }

    #[test]
    fn known_locator_recovers_the_error() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let t = 7;
        let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 1, t)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let (_, e, y) = random_instance(&code, t, &mut rng);
            let f = ctx.initial_divisor();
            let pts: Vec<&AffinePoint> = crate::agcode::support(&e)
                .into_iter()
                .map(|k| &code.points()[k])
                .collect();
            let locators = ctx.rr(&f.minus_points(pts)).unwrap();
            assert!(locators.dim() > 0);
            let lambda = locators.basis().row(0).to_vec();
            let f_y = ctx.lift_received(&y).unwrap();
            let f_e = ctx.recover(&lambda, &f, &f_y, &y).unwrap();
            assert_eq!(ev(&c, &f_e, code.points()), e);
        }
    }

    #[test]
    fn config_validation() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let mut cfg = DecoderConfig::new(&code, 0, 3);
        assert_eq!(cfg.validate(&code), Err(DecodeError::EllZero));
        cfg.ell = 1;
        cfg.deg_f = 4;
        assert!(matches!(cfg.validate(&code), Err(DecodeError::DegFTooSmall { .. })));
        let mut cfg = DecoderConfig::new(&code, 1, 3);
        cfg.deg_g_prime = 10;
        assert!(matches!(
            cfg.validate(&code),
            Err(DecodeError::DegGPrimeTooSmall { .. })
        ));
    }
}
