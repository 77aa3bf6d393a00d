//! Subcommand bodies, independent of argument parsing.

use crate::channel::{random_vector, trial_rng, ChannelConfig};
use crate::io::WordFile;
use crate::pipeline::{CodeParams, Decision, DecodeOpts, Decoder, Setup};
use anyhow::ensure;

fn check_field(params: &CodeParams, file: &WordFile) -> anyhow::Result<()> {
    let want = params.field_params();
    ensure!(file.field == want, "input is over {}, expected {want}", file.field);
    Ok(())
}

/// Encodes the message in `message`, or a random one drawn from `seed`.
pub fn cmd_encode(params: &CodeParams, message: Option<&WordFile>, seed: u64) -> anyhow::Result<WordFile> {
    let setup = Setup::build(params)?;
    let msg = match message {
        Some(m) => {
            check_field(params, m)?;
            let w = m.one()?;
            ensure!(w.len() == setup.dim(), "message has {} symbols, the code dimension is {}", w.len(), setup.dim());
            w.to_vec()
        }
        None => random_vector(&setup.field, setup.dim(), &mut trial_rng(seed, 0)),
    };
    Ok(WordFile::single(params.field_params(), setup.encode(&msg)?))
}

/// Adds one channel burst to every vector of the file.
pub fn cmd_corrupt(input: &WordFile, channel: &ChannelConfig) -> anyhow::Result<WordFile> {
    let f = burstfft::Field::new(input.field)?;
    let mut out = WordFile::new(input.field, input.n);
    for (i, w) in input.words.iter().enumerate() {
        let mut rng = trial_rng(channel.seed, i as u64);
        let b = channel.sample(&f, input.n, &mut rng)?;
        let mut r = w.clone();
        b.apply(&f, &mut r);
        out.words.push(r);
        out.notes.push(("burst".into(), format!("start={} len={}", b.start, b.len())));
    }
    Ok(out)
}

/// Decodes the single received vector. List mode writes one vector per list
/// entry; the other modes write the codeword and a status line. The flag is
/// false on detected failure (or an empty list).
pub fn cmd_decode(params: &CodeParams, opts: DecodeOpts, input: &WordFile) -> anyhow::Result<(WordFile, bool)> {
    check_field(params, input)?;
    let setup = Setup::build(params)?;
    ensure!(input.n == setup.n(), "input length {} does not match the code length {}", input.n, setup.n());
    let decoder = Decoder::new(&setup, opts)?;
    let decision = decoder.decode(input.one()?)?;
    let ok = decision.ok();
    let mut out = WordFile::new(params.field_params(), setup.n());
    match decision {
        Decision::List(list) => {
            out.notes.push(("list".into(), list.len().to_string()));
            out.words = list;
        }
        Decision::Single { codeword, ok } => {
            out.words.push(codeword);
            out.notes.push(("status".into(), if ok { "ok" } else { "detected" }.into()));
        }
    }
    out.notes.push(("radius".into(), decoder.radius().to_string()));
    Ok((out, ok))
}
