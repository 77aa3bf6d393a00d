//! Monte-Carlo decoding experiments over the burst channel.
//!
//! CSV schema: `trial,n,k,ell,e,outcome,wall_time_ns`. `wall_time_ns` is 0
//! unless timing is requested, so runs with the same seed are byte-identical.

use crate::channel::{random_vector, trial_rng, wilson, ChannelConfig, Start};
use crate::pipeline::{CodeParams, Decision, DecodeOpts, Decoder, Mode, Setup};
use anyhow::ensure;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    /// Wrong codeword reported with status ok.
    Miscorrect,
    Detected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub e: usize,
    pub outcome: Outcome,
    pub wall_time_ns: u64,
}

#[derive(Debug, Clone)]
pub struct McConfig {
    pub params: CodeParams,
    pub opts: DecodeOpts,
    pub ell: usize,
    pub trials: u64,
    pub seed: u64,
    pub record_time: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub e: usize,
    pub radius: usize,
    pub trials: u64,
    pub ok: u64,
    pub miscorrect: u64,
    pub detected: u64,
    pub recovery_rate: f64,
    pub recovery_ci95: (f64, f64),
    pub miscorrection_rate: f64,
    pub miscorrection_ci95: (f64, f64),
    pub miscorrection_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
}

impl McReport {
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        let bound = s.miscorrection_bound.map_or("n/a".to_string(), |b| format!("{b:.3e}"));
        format!(
            "{:?} n={} k={} ell={} e={} radius={}: {} trials, ok {} ({:.4}, 95% CI [{:.4}, {:.4}]), miscorrect {} ({:.2e}, CI [{:.2e}, {:.2e}], bound {bound}), detected {}",
            s.mode, s.n, s.k, s.ell, s.e, s.radius, s.trials, s.ok, s.recovery_rate, s.recovery_ci95.0,
            s.recovery_ci95.1, s.miscorrect, s.miscorrection_rate, s.miscorrection_ci95.0, s.miscorrection_ci95.1,
            s.detected
        )
    }
}

fn classify(decision: &Decision, sent: &[burstfft::Elem]) -> Outcome {
    match decision {
        Decision::List(l) if l.iter().any(|c| c == sent) => Outcome::Ok,
        Decision::List(l) if l.is_empty() => Outcome::Detected,
        Decision::List(_) => Outcome::Miscorrect,
        Decision::Single { ok: false, .. } => Outcome::Detected,
        Decision::Single { codeword, .. } if codeword == sent => Outcome::Ok,
        Decision::Single { .. } => Outcome::Miscorrect,
    }
}

pub fn run_mc(cfg: &McConfig) -> anyhow::Result<McReport> {
    let setup = Setup::build(&cfg.params)?;
    let decoder = Decoder::new(&setup, cfg.opts)?;
    let (n, k) = (setup.n(), setup.dim());
    ensure!(cfg.ell <= decoder.radius(), "burst length {} exceeds the decoder radius {}", cfg.ell, decoder.radius());
    let channel = ChannelConfig { burst_length: cfg.ell, start: Start::Random, seed: cfg.seed };
    let f = &*setup.field;
    let trial = |i: usize| -> anyhow::Result<TrialRecord> {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let msg = random_vector(f, k, &mut rng);
        let sent = setup.encode(&msg)?;
        let mut received = sent.clone();
        channel.sample(f, n, &mut rng)?.apply(f, &mut received);
        let t0 = Instant::now();
        let decision = decoder.decode(&received)?;
        let ns = t0.elapsed().as_nanos() as u64;
        Ok(TrialRecord {
            trial: i as u64,
            n,
            k,
            ell: cfg.ell,
            e: cfg.opts.e,
            outcome: classify(&decision, &sent),
            wall_time_ns: if cfg.record_time { ns } else { 0 },
        })
    };
    let records = burstfft::par::map_range(cfg.trials as usize, cfg.opts.parallel, trial)
        .into_iter()
        .collect::<anyhow::Result<Vec<_>>>()?;
    let count = |o| records.iter().filter(|r| r.outcome == o).count() as u64;
    let (ok, miscorrect, detected) = (count(Outcome::Ok), count(Outcome::Miscorrect), count(Outcome::Detected));
    let t = cfg.trials.max(1) as f64;
    let summary = Summary {
        mode: cfg.opts.mode,
        n,
        k,
        ell: cfg.ell,
        e: cfg.opts.e,
        radius: decoder.radius(),
        trials: cfg.trials,
        ok,
        miscorrect,
        detected,
        recovery_rate: ok as f64 / t,
        recovery_ci95: wilson(ok, cfg.trials, 1.96),
        miscorrection_rate: miscorrect as f64 / t,
        miscorrection_ci95: wilson(miscorrect, cfg.trials, 1.96),
        miscorrection_bound: decoder.miscorrection_bound(),
    };
    Ok(McReport { summary, records })
}
