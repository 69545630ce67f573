//! Seeded multi-trial decoding experiments.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use agdec::agcode::AGCode;
use agdec::algebra::Gf;
use agdec::decoder::{DecodeContext, DecoderConfig};
use agdec::oracle::{worst_case, OracleBudget};
use agdec::radius::{half_designed, power_radius, sudan_radius, SudanVariant};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, ErrorModel, ExperimentConfig};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Code(#[from] agdec::agcode::CodeError),
    #[error(transparent)]
    Decode(#[from] agdec::decoder::DecodeError),
    #[error("trial {trial}: {source}")]
    Channel {
        trial: usize,
        #[source]
        source: agdec::oracle::OracleError,
    },
    #[error("the curve has {available} points, fewer than the {requested} requested")]
    TooFewPoints { requested: usize, available: usize },
}

/// Parameters shared by every trial; the leading output columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParams {
    pub ell: u32,
    pub q: u32,
    pub curve: String,
    pub g: u32,
    pub n: usize,
    #[serde(rename = "degG")]
    pub deg_g: i64,
    pub half_designed: i64,
    pub sudan: i64,
    pub power_radius: i64,
    pub t: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub success: bool,
    pub failure: Option<String>,
    pub delta0: Option<i64>,
    pub delta_gaps: Vec<i64>,
    pub pts_in_de: Option<bool>,
    pub steps_used: usize,
    /// Not emitted, so that outputs depend only on the configuration.
    #[serde(skip)]
    pub wall_time_ms: f64,
}

/// Equality ignores the wall time.
impl PartialEq for TrialRecord {
    fn eq(&self, o: &Self) -> bool {
        (
            self.trial,
            self.success,
            &self.failure,
            self.delta0,
            &self.delta_gaps,
            self.pts_in_de,
            self.steps_used,
        ) == (
            o.trial,
            o.success,
            &o.failure,
            o.delta0,
            &o.delta_gaps,
            o.pts_in_de,
            o.steps_used,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub success_rate: f64,
    pub mean_delta0: Option<f64>,
    pub modal_gap: Option<i64>,
    pub pts_in_de_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub params: RunParams,
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
}

/// Builds the code of an experiment configuration.
pub fn build_code(cfg: &ExperimentConfig, base: Option<&Path>) -> Result<AGCode, ExperimentError> {
    let curve = cfg.curve.load(base)?;
    let all = curve.affine_points();
    let points = match cfg.points {
        Some(k) if k > all.len() => {
            return Err(ExperimentError::TooFewPoints {
                requested: k,
                available: all.len(),
            })
        }
        Some(k) => &all[..k],
        None => all,
    };
    Ok(AGCode::new(&curve, points, cfg.deg_g)?)
}

pub fn run_params(code: &AGCode, ell: u32, t: usize) -> RunParams {
    let n = code.n() as i64;
    let g = i64::from(code.genus());
    RunParams {
        ell,
        q: code.field().order(),
        curve: code.curve().name(),
        g: code.genus(),
        n: code.n(),
        deg_g: code.deg_g(),
        half_designed: half_designed(n, code.deg_g()),
        sudan: sudan_radius(n, g, code.deg_g(), i64::from(ell), SudanVariant::Improved),
        power_radius: power_radius(n, code.deg_g(), i64::from(ell)),
        t,
    }
}

/// The RNG of one trial: ChaCha8 keyed by the seed, with the trial index as stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A transmitted codeword and an error of weight `t`: uniform support, uniform nonzero values.
pub fn uniform_channel<R: Rng>(code: &AGCode, t: usize, rng: &mut R) -> (Vec<Gf>, Vec<Gf>) {
    let q = code.field().order();
    let msg: Vec<Gf> = (0..code.k()).map(|_| Gf(rng.gen_range(0..q))).collect();
    let c = code.encode(&msg).expect("message has length k");
    let mut e = vec![Gf::ZERO; code.n()];
    for k in sample(rng, code.n(), t).iter() {
        e[k] = Gf(rng.gen_range(1..q));
    }
    (c, e)
}

fn run_trial(ctx: &DecodeContext, model: ErrorModel, seed: u64, trial: usize) -> Result<TrialRecord, ExperimentError> {
    let code = ctx.code();
    let field = code.field();
    let t = ctx.config().t;
    let mut rng = trial_rng(seed, trial);
    let (y, sent, other) = match model {
        ErrorModel::Uniform => {
            let (c, e) = uniform_channel(code, t, &mut rng);
            let y: Vec<Gf> = c.iter().zip(&e).map(|(&a, &b)| field.add(a, b)).collect();
            (y, c, None)
        }
        ErrorModel::WorstCase => {
            let (y, c1, c2) = worst_case(code, t, &mut rng, &OracleBudget::default())
                .map_err(|source| ExperimentError::Channel { trial, source })?;
            (y, c1, Some(c2))
        }
    };
    let e: Vec<Gf> = y.iter().zip(&sent).map(|(&a, &b)| field.sub(a, b)).collect();
    let start = Instant::now();
    let (outcome, trace) = ctx.decode(&y, Some(&e))?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let success = match outcome.codeword() {
        Some(c) => c == sent.as_slice() || other.as_deref() == Some(c),
        None => false,
    };
    let failure = match (&outcome.failure(), success) {
        (Some(r), _) => Some(r.to_string()),
        (None, false) => Some("wrong_codeword".to_string()),
        (None, true) => None,
    };
    Ok(TrialRecord {
        trial,
        success,
        failure,
        delta0: trace.delta0(),
        delta_gaps: trace.delta_gaps(),
        pts_in_de: trace.pts_in_de,
        steps_used: trace.steps_used(),
        wall_time_ms,
    })
}

pub fn summarize(records: &[TrialRecord]) -> Summary {
    let n = records.len().max(1) as f64;
    let deltas: Vec<i64> = records.iter().filter_map(|r| r.delta0).collect();
    let mut gap_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for g in records.iter().flat_map(|r| &r.delta_gaps) {
        *gap_counts.entry(*g).or_default() += 1;
    }
    // ties go to the smaller gap
    let modal_gap = gap_counts
        .iter()
        .fold(None, |best: Option<(i64, usize)>, (&g, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((g, c)),
        });
    Summary {
        trials: records.len(),
        success_rate: records.iter().filter(|r| r.success).count() as f64 / n,
        mean_delta0: (!deltas.is_empty()).then(|| deltas.iter().sum::<i64>() as f64 / deltas.len() as f64),
        modal_gap: modal_gap.map(|(g, _)| g),
        pts_in_de_rate: records.iter().filter(|r| r.pts_in_de == Some(true)).count() as f64 / n,
    }
}

/// Runs every trial (in parallel) and returns the records in trial order.
pub fn run_experiment(cfg: &ExperimentConfig, base: Option<&Path>) -> Result<ExperimentReport, ExperimentError> {
    let code = build_code(cfg, base)?;
    let t = cfg.t.resolve(code.n(), code.deg_g(), cfg.ell)?;
    let dcfg = DecoderConfig::new(&code, cfg.ell, t).with_policy(cfg.point_policy);
    let ctx = DecodeContext::new(&code, dcfg)?;
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&ctx, cfg.error_model, cfg.seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport {
        params: run_params(&code, cfg.ell, t),
        summary: summarize(&records),
        records,
    })
}
