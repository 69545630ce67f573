//! Brute-force references: nearest codewords, S-spaces from the definition, worst-case inputs.

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::agcode::{hamming, weight, AGCode, CodeError};
use crate::algebra::{Gf, Matrix, Subspace};
use crate::curve::CurveFn;
use crate::decoder::{DecodeContext, DecodeError};
use crate::rrspace::{rr_space, Divisor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration of {needed} messages exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("no codeword of weight {weight} found within the budget")]
    NoPair { weight: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_enumeration: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_enumeration: 1_000_000,
        }
    }
}

impl OracleBudget {
    fn check(&self, code: &AGCode) -> Result<u64, OracleError> {
        let needed = u128::from(code.field().order()).pow(code.k() as u32);
        if needed > u128::from(self.max_enumeration) {
            return Err(OracleError::BudgetExceeded {
                needed,
                budget: self.max_enumeration,
            });
        }
        Ok(needed as u64)
    }
}

/// Calls `visit` on every codeword, in message order (first message symbol varying slowest).
fn for_each_codeword(code: &AGCode, budget: &OracleBudget, mut visit: impl FnMut(&[Gf])) -> Result<(), OracleError> {
    let total = budget.check(code)?;
    let field = code.field();
    let q = field.order();
    let k = code.k();
    let gen = code.generator_matrix();
    let mut msg = vec![0u32; k];
    let mut word = vec![Gf::ZERO; code.n()];
    for _ in 0..total {
        visit(&word);
        // odometer increment, updating the codeword by the changed row
        for pos in (0..k).rev() {
            let old = Gf(msg[pos]);
            msg[pos] = (msg[pos] + 1) % q;
            let delta = field.sub(Gf(msg[pos]), old);
            field.axpy(&mut word, delta, gen.row(pos));
            if msg[pos] != 0 {
                break;
            }
        }
    }
    Ok(())
}

/// All codewords within `radius` of `y`, sorted by distance then lexicographically.
pub fn nearest_codewords(
    code: &AGCode,
    y: &[Gf],
    radius: usize,
    budget: &OracleBudget,
) -> Result<Vec<(Vec<Gf>, usize)>, OracleError> {
    code.check_len(y)?;
    let mut out = Vec::new();
    for_each_codeword(code, budget, |c| {
        let d = c.iter().zip(y).filter(|(a, b)| a != b).count();
        if d <= radius {
            out.push((c.to_vec(), d));
        }
    })?;
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Exact minimum distance by enumeration.
pub fn min_distance_exhaustive(code: &AGCode, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut best = code.n();
    for_each_codeword(code, budget, |c| {
        let w = weight(c);
        if w > 0 && w < best {
            best = w;
        }
    })?;
    Ok(best)
}

/// `S_i(F)` straight from the definition: `Λ·f_y^i ∈ L(F + iG) + L(F + iG' − D)`,
/// with products formed on the curve and membership tested against the stacked bases.
pub fn s_space_reference(ctx: &DecodeContext, divisor: &Divisor, y: &[Gf], i: u32) -> Result<Subspace, OracleError> {
    let code = ctx.code();
    let curve = code.curve();
    let field = code.field();
    let cfg = ctx.config();
    let lf = rr_space(curve, divisor, divisor.inf_coeff()).map_err(DecodeError::from)?;
    if lf.dim() == 0 {
        return Ok(lf.space);
    }
    let amb = divisor.inf_coeff() + i64::from(i) * cfg.deg_g_prime;
    let u1 = rr_space(curve, &divisor.plus_inf(i64::from(i) * code.deg_g()), amb).map_err(DecodeError::from)?;
    let u2 = rr_space(
        curve,
        &divisor
            .plus_inf(i64::from(i) * cfg.deg_g_prime)
            .minus_points(code.points()),
        amb,
    )
    .map_err(DecodeError::from)?;
    let mut stacked = u1.space.basis_vectors();
    stacked.extend(u2.space.basis_vectors());
    let target = Subspace::from_vectors(field, curve.ell_at_infinity(amb), stacked).expect("common ambient");

    let f_y = ctx.lift_received(y)?;
    let power = f_y.pow(curve, i);
    let residues: Vec<Vec<Gf>> = lf
        .functions(curve)
        .iter()
        .map(|b| {
            let prod: CurveFn = b.mul(curve, &power);
            let coords = prod.to_coords(curve, amb).expect("product lies in L(F + iG')");
            target.reduce(&coords)
        })
        .collect();
    let m = Matrix::from_rows(field, target.ambient_dim(), &residues).expect("uniform length");
    let coeffs = m.transpose().kernel();
    let rows: Vec<Vec<Gf>> = coeffs.basis_vectors().iter().map(|c| lf.space.combine(c)).collect();
    Ok(Subspace::from_vectors(field, lf.space.ambient_dim(), rows).expect("combinations have ambient length"))
}

/// `(y, c1, c2)` with `y` equidistant from `c1` and `c2`.
pub type WorstCase = (Vec<Gf>, Vec<Gf>, Vec<Gf>);

/// A received word at distance exactly `t` from two distinct codewords.
///
/// Searches random messages for a codeword `d` of weight `2t`, then moves a random codeword `c1`
/// toward `c2 = c1 + d` on `t` of the positions of `supp(d)`.
pub fn worst_case<R: Rng + ?Sized>(
    code: &AGCode,
    t: usize,
    rng: &mut R,
    budget: &OracleBudget,
) -> Result<WorstCase, OracleError> {
    let field = code.field();
    let q = field.order();
    let target = 2 * t;
    if t == 0 || target > code.n() {
        return Err(OracleError::NoPair { weight: target });
    }
    let random_word = |rng: &mut R| -> Result<Vec<Gf>, OracleError> {
        let msg: Vec<Gf> = (0..code.k()).map(|_| Gf(rng.gen_range(0..q))).collect();
        Ok(code.encode(&msg)?)
    };
    let mut diff = None;
    for _ in 0..budget.max_enumeration {
        let d = random_word(rng)?;
        if weight(&d) == target {
            diff = Some(d);
            break;
        }
    }
    let d = diff.ok_or(OracleError::NoPair { weight: target })?;
    let c1 = random_word(rng)?;
    let c2: Vec<Gf> = c1.iter().zip(&d).map(|(&a, &b)| field.add(a, b)).collect();
    let supp = crate::agcode::support(&d);
    let mut y = c1.clone();
    for k in sample(rng, supp.len(), t).iter() {
        y[supp[k]] = c2[supp[k]];
    }
    debug_assert_eq!(hamming(&y, &c1).ok(), Some(t));
    debug_assert_eq!(hamming(&y, &c2).ok(), Some(t));
    Ok((y, c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CabCurve;
    use crate::decoder::DecoderConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rs(p: u32, e: u32, n: usize, k: usize) -> AGCode {
        let line = CabCurve::line(&crate::algebra::Field::new(p, e).unwrap());
        AGCode::new(&line, &line.affine_points()[..n], k as i64 - 1).unwrap()
    }

    #[test]
    fn reed_solomon_is_mds() {
        let code = rs(3, 2, 8, 3);
        assert_eq!(code.k(), 3);
        assert_eq!(min_distance_exhaustive(&code, &OracleBudget::default()).unwrap(), 6);
        let rep = rs(7, 1, 7, 1);
        assert_eq!(min_distance_exhaustive(&rep, &OracleBudget::default()).unwrap(), 7);
    }

    #[test]
    fn codeword_is_its_own_nearest() {
        let code = rs(3, 2, 8, 3);
        let c = code.encode(&[Gf(1), Gf(5), Gf(7)]).unwrap();
        let found = nearest_codewords(&code, &c, 0, &OracleBudget::default()).unwrap();
        assert_eq!(found, vec![(c.clone(), 0)]);
        let found = nearest_codewords(&code, &c, 2, &OracleBudget::default()).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let tiny = OracleBudget { max_enumeration: 1000 };
        assert!(matches!(
            min_distance_exhaustive(&code, &tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn hermitian_f9_distance_at_least_designed() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        assert!(min_distance_exhaustive(&code, &OracleBudget::default()).unwrap() >= 19);
    }

    #[test]
    fn worst_case_is_equidistant() {
        let code = rs(11, 1, 10, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = 4;
        let (y, c1, c2) = worst_case(&code, t, &mut rng, &OracleBudget::default()).unwrap();
        assert_ne!(c1, c2);
        assert_eq!(hamming(&y, &c1).unwrap(), t);
        assert_eq!(hamming(&y, &c2).unwrap(), t);
        let found = nearest_codewords(&code, &y, t, &OracleBudget::default()).unwrap();
        assert!(found.contains(&(c1, t)) && found.contains(&(c2, t)));
    }

    #[test]
    fn reference_matches_main_path_when_error_free() {
        let c = CabCurve::hermitian(3, 1).unwrap();
        let code = AGCode::full(&c, 8).unwrap();
        let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 2, 4)).unwrap();
        let y = code.encode(&[Gf(1), Gf(2), Gf(3), Gf(4), Gf(5), Gf(6)]).unwrap();
        let f = ctx.initial_divisor();
        for i in 1..=2 {
            let s = s_space_reference(&ctx, &f, &y, i).unwrap();
            assert_eq!(s.dim(), c.ell_at_infinity(f.inf_coeff()));
            assert_eq!(s, ctx.s_space(&f, &y, i).unwrap());
        }
    }
}
