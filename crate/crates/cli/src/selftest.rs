//! Small-scale invariant checks across all modules.

use agdec::agcode::{star_product, AGCode};
use agdec::algebra::{Field, Gf};
use agdec::curve::CabCurve;
use agdec::decoder::{DecodeContext, DecoderConfig};
use agdec::oracle::{min_distance_exhaustive, nearest_codewords, s_space_reference, OracleBudget};
use agdec::radius::{half_designed, power_radius, sudan_radius, SudanVariant};
use agdec::rrspace::{ell, Divisor};
use rand::Rng;

use crate::experiment::{trial_rng, uniform_channel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Builds the test field from the reducible modulus `x^2 + 1` over `F_5`.
    Modulus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: Result<(), String>) -> CheckResult {
    CheckResult {
        name,
        passed: result.is_ok(),
        detail: result.err().unwrap_or_default(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field_axioms(fault: Fault) -> Result<(), String> {
    let fields = match fault {
        Fault::None => vec![
            Field::new(5, 2).map_err(|e| e.to_string())?,
            Field::new(2, 4).map_err(|e| e.to_string())?,
        ],
        Fault::Modulus => vec![Field::with_modulus_unchecked(5, vec![1, 0, 1])],
    };
    for f in fields {
        for a in f.elements() {
            if !a.is_zero() {
                let inv = f
                    .try_inv(a)
                    .ok_or_else(|| format!("F_{}: {} has no inverse", f.order(), f.format_elem(a)))?;
                ensure(f.mul(a, inv) == Gf::ONE, || format!("F_{}: bad inverse", f.order()))?;
            }
            for b in f.elements() {
                ensure(f.mul(a, b) == f.mul(b, a), || "multiplication not commutative".into())?;
                ensure(!(f.mul(a, b).is_zero() && !a.is_zero() && !b.is_zero()), || {
                    format!(
                        "F_{}: zero divisors {} * {}",
                        f.order(),
                        f.format_elem(a),
                        f.format_elem(b)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn riemann_roch() -> Result<(), String> {
    for c in [CabCurve::hermitian(3, 1), CabCurve::hermitian(2, 2)] {
        let c = c.map_err(|e| e.to_string())?;
        let g = i64::from(c.genus());
        for a in 2 * g - 1..=4 * g {
            let l = ell(&c, &Divisor::at_infinity(a)).map_err(|e| e.to_string())? as i64;
            ensure(l == a - g + 1, || format!("{}: l({a}Q) = {l}", c.name()))?;
        }
    }
    Ok(())
}

fn radii() -> Result<(), String> {
    let row = |dg| {
        (
            half_designed(200, dg),
            sudan_radius(200, 10, dg, 2, SudanVariant::Improved),
            power_radius(200, dg, 2),
        )
    };
    ensure(row(19) == (90, 107, 113), || format!("row 1: {:?}", row(19)))?;
    ensure(row(46) == (76, 80, 86), || format!("row 2: {:?}", row(46)))
}

fn star_products() -> Result<(), String> {
    let c = CabCurve::hermitian(3, 1).map_err(|e| e.to_string())?;
    let code = |d| AGCode::full(&c, d).map_err(|e| e.to_string());
    let prod = star_product(code(6)?.space(), code(7)?.space()).map_err(|e| e.to_string())?;
    ensure(&prod == code(13)?.space(), || "C(6G) * C(7G) != C(13G)".into())
}

fn s_space_oracle(seed: u64) -> Result<(), String> {
    let c = CabCurve::hermitian(3, 1).map_err(|e| e.to_string())?;
    let code = AGCode::full(&c, 6).map_err(|e| e.to_string())?;
    let mut rng = trial_rng(seed, 0);
    for _ in 0..4 {
        let t = rng.gen_range(1..10);
        let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 2, t)).map_err(|e| e.to_string())?;
        let (cw, e) = uniform_channel(&code, t, &mut rng);
        let y: Vec<Gf> = cw.iter().zip(&e).map(|(&a, &b)| code.field().add(a, b)).collect();
        let f = ctx
            .initial_divisor()
            .minus_point(&code.points()[rng.gen_range(0..code.n())], 1);
        for i in 1..=2 {
            let main = ctx.s_space(&f, &y, i).map_err(|e| e.to_string())?;
            let reference = s_space_reference(&ctx, &f, &y, i).map_err(|e| e.to_string())?;
            ensure(main == reference, || {
                format!("S_{i} differs from the reference at t = {t}")
            })?;
        }
    }
    Ok(())
}

fn unique_decoding(seed: u64) -> Result<(), String> {
    let c = CabCurve::hermitian(3, 1).map_err(|e| e.to_string())?;
    let code = AGCode::full(&c, 8).map_err(|e| e.to_string())?;
    let t = 9;
    let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 1, t)).map_err(|e| e.to_string())?;
    for trial in 0..10 {
        let mut rng = trial_rng(seed, trial);
        let (cw, e) = uniform_channel(&code, t, &mut rng);
        let y: Vec<Gf> = cw.iter().zip(&e).map(|(&a, &b)| code.field().add(a, b)).collect();
        let (out, _) = ctx.decode(&y, Some(&e)).map_err(|e| e.to_string())?;
        ensure(out.codeword() == Some(cw.as_slice()), || {
            format!("trial {trial}: {:?}", out.failure())
        })?;
    }
    Ok(())
}

fn reed_solomon_oracle(seed: u64) -> Result<(), String> {
    let f = Field::new(11, 1).map_err(|e| e.to_string())?;
    let line = CabCurve::line(&f);
    let code = AGCode::new(&line, &line.affine_points()[..10], 3).map_err(|e| e.to_string())?;
    let budget = OracleBudget::default();
    let d = min_distance_exhaustive(&code, &budget).map_err(|e| e.to_string())?;
    ensure(d == 7, || format!("RS [10,4] distance {d}"))?;
    let t = (d - 1) / 2;
    let ctx = DecodeContext::new(&code, DecoderConfig::new(&code, 1, t)).map_err(|e| e.to_string())?;
    for trial in 0..10 {
        let mut rng = trial_rng(seed, trial);
        let (cw, e) = uniform_channel(&code, t, &mut rng);
        let y: Vec<Gf> = cw.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
        let near = nearest_codewords(&code, &y, t, &budget).map_err(|e| e.to_string())?;
        let (out, _) = ctx.decode(&y, None).map_err(|e| e.to_string())?;
        ensure(near.len() == 1 && out.codeword() == Some(near[0].0.as_slice()), || {
            format!("trial {trial}: decoder and enumeration disagree")
        })?;
    }
    Ok(())
}

pub fn run(seed: u64, fault: Fault) -> Vec<CheckResult> {
    vec![
        check("field axioms", field_axioms(fault)),
        check("Riemann-Roch at infinity", riemann_roch()),
        check("radius table rows", radii()),
        check("star product of one-point codes", star_products()),
        check("S-space against reference", s_space_oracle(seed)),
        check("unique decoding on Hermitian F_9", unique_decoding(seed)),
        check("Reed-Solomon against enumeration", reed_solomon_oracle(seed)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_for_several_seeds() {
        for seed in [0, 1, 12345] {
            let r = run(seed, Fault::None);
            assert!(r.iter().all(|c| c.passed), "{r:?}");
        }
    }

    #[test]
    fn detects_a_reducible_modulus() {
        let r = run(0, Fault::Modulus);
        assert!(!r[0].passed);
    }
}
