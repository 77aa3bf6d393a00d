//! Scaling benchmarks over GF(2^16).
//!
//! Transform modes use the additive sets W of dimension log2 n. The decoding
//! modes need a cyclic row set, so they use cosets γ·T + GF(256) with the
//! order-17 factor on top: n = 256·t for t in {17, 51, 85, 255}, folded so
//! that every row lives on 17 points. CSV schema: `n,mode,median_ns,normalized`
//! where `normalized` is median_ns / (n·log2 n).

use crate::channel::{random_vector, trial_rng, ChannelConfig, Start};
use crate::pipeline::{CodeParams, DecodeOpts, Decoder, Mode, Setup};
use anyhow::ensure;
use burstfft::affine::AffineGroupParams;
use burstfft::gfft::GfftPlan;
use burstfft::{Field, FieldParams};
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

pub const BENCH_FIELD: &str = "2^16:0x1002b";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BenchMode {
    Forward,
    Inverse,
    List,
    Unique,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub mode: BenchMode,
    pub median_ns: u64,
    pub normalized: f64,
}

/// Coset group strings for the decoding family, smallest first.
pub fn decoding_family() -> Vec<(usize, String)> {
    [(17, "17"), (51, "3.17"), (85, "5.17"), (255, "3.5.17")]
        .iter()
        .map(|&(t, fac)| (256 * t, format!("t={t},tfac={fac},wdim=1,wbasis=0x1,ell=256,gamma=0x2")))
        .collect()
}

/// RS parameters of the decoding family at length n: fold at the top level,
/// k = 4·m_s.
pub fn decoding_params(group: &str) -> anyhow::Result<CodeParams> {
    let field: FieldParams = BENCH_FIELD.parse()?;
    let group = AffineGroupParams::parse_for(group, 2)?;
    let depth = 8 + group.t_factors.len();
    let m_s = (256 * group.t() / 17) as usize;
    Ok(CodeParams::Rs { field, group, k: 4 * m_s, fold_level: depth - 1 })
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn time<F: FnMut() -> anyhow::Result<()>>(reps: usize, mut f: F) -> anyhow::Result<u64> {
    f()?;
    let mut ts = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t0 = Instant::now();
        f()?;
        ts.push(t0.elapsed().as_nanos() as u64);
    }
    Ok(median(ts))
}

fn row(n: usize, mode: BenchMode, median_ns: u64) -> BenchRow {
    BenchRow { n, mode, median_ns, normalized: median_ns as f64 / (n as f64 * (n as f64).log2()) }
}

/// Median-of-`reps` timings with warm plans, for n between 2^min_log and
/// 2^max_log (decoding modes: ⌊log2 n⌋ in that range).
pub fn run_bench(
    mode: BenchMode,
    min_log: u32,
    max_log: u32,
    reps: usize,
    parallel: bool,
) -> anyhow::Result<Vec<BenchRow>> {
    ensure!(max_log <= 16, "GF(2^16) supports n up to 2^16");
    ensure!(reps > 0, "need at least one repetition");
    let mut out = Vec::new();
    match mode {
        BenchMode::Forward | BenchMode::Inverse => {
            let field = Arc::new(Field::new(BENCH_FIELD.parse()?)?);
            for lg in min_log..=max_log {
                let desc = AffineGroupParams::additive((0..lg).map(|i| 1 << i).collect(), 0);
                let plan = GfftPlan::new(field.clone(), &desc)?;
                let n = plan.len();
                let x = random_vector(&field, n, &mut trial_rng(lg as u64, 0));
                let t = time(reps, || {
                    let y = if mode == BenchMode::Forward { plan.forward(&x)? } else { plan.inverse(&x)? };
                    std::hint::black_box(y);
                    Ok(())
                })?;
                out.push(row(n, mode, t));
            }
        }
        BenchMode::List | BenchMode::Unique => {
            for (n, group) in decoding_family() {
                let lg = n.ilog2();
                if lg < min_log || lg > max_log {
                    continue;
                }
                let setup = Setup::build(&decoding_params(&group)?)?;
                let dmode = if mode == BenchMode::List { Mode::List } else { Mode::Unique };
                let decoder = Decoder::new(&setup, DecodeOpts { mode: dmode, e: 2, strict: false, parallel })?;
                let mut rng = trial_rng(n as u64, 0);
                let f = &*setup.field;
                let sent = setup.encode(&random_vector(f, setup.dim(), &mut rng))?;
                let mut received = sent.clone();
                let ch = ChannelConfig { burst_length: decoder.radius(), start: Start::Random, seed: 0 };
                ch.sample(f, n, &mut rng)?.apply(f, &mut received);
                let t = time(reps, || {
                    let d = decoder.decode(&received)?;
                    ensure!(d.ok(), "benchmark word failed to decode at n = {n}");
                    std::hint::black_box(d);
                    Ok(())
                })?;
                out.push(row(n, mode, t));
            }
        }
    }
    Ok(out)
}

pub fn to_csv(rows: &[BenchRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
