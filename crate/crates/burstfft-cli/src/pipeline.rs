//! Code construction and decoder selection shared by all subcommands.

use anyhow::{bail, Context};
use burstfft::affine::AffineGroupParams;
use burstfft::decode::{ListDecodeConfig, ListDecoder, UniqueDecodeConfig, UniqueDecoder};
use burstfft::gfft::GfftPlan;
use burstfft::hermitian::{FoldedAg, HermitianCode, HermitianCurve};
use burstfft::irs::{Folded, FoldedRs};
use burstfft::rs::{DecodeStatus, RsCode};
use burstfft::{Elem, Field, FieldParams};
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeParams {
    Rs { field: FieldParams, group: AffineGroupParams, k: usize, fold_level: usize },
    Ag { field: FieldParams, kappa: usize, base: AffineGroupParams, lambda: usize, fold_level: usize },
}

impl CodeParams {
    pub fn field_params(&self) -> FieldParams {
        match self {
            CodeParams::Rs { field, .. } | CodeParams::Ag { field, .. } => *field,
        }
    }
}

/// A constructed code together with its fold.
#[derive(Clone)]
pub struct Setup {
    pub field: Arc<Field>,
    pub folded: Arc<dyn Folded>,
    /// The plain RS code, for RS parameters.
    pub rs: Option<RsCode>,
}

impl Setup {
    pub fn build(params: &CodeParams) -> anyhow::Result<Self> {
        let field = Arc::new(Field::new(params.field_params())?);
        match params {
            CodeParams::Rs { group, k, fold_level, .. } => {
                let plan = Arc::new(GfftPlan::new(field.clone(), group).context("building the evaluation plan")?);
                let code = RsCode::new(plan, *k, false)?;
                let folded = FoldedRs::new(code.clone(), *fold_level)?;
                Ok(Setup { field, folded: Arc::new(folded), rs: Some(code) })
            }
            CodeParams::Ag { kappa, base, lambda, fold_level, .. } => {
                let curve = Arc::new(HermitianCurve::new(field.clone(), *kappa)?);
                let code = Arc::new(HermitianCode::new(curve, base, *lambda)?);
                let folded = FoldedAg::new(code, *fold_level)?;
                Ok(Setup { field, folded: Arc::new(folded), rs: None })
            }
        }
    }

    pub fn n(&self) -> usize {
        self.folded.n()
    }

    pub fn dim(&self) -> usize {
        self.folded.dim()
    }

    pub fn encode(&self, message: &[Elem]) -> anyhow::Result<Vec<Elem>> {
        Ok(self.folded.encode(message)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// All codewords within the burst radius.
    List,
    /// Folded row-wise syndrome decoding with a cross-check.
    Unique,
    /// Syndrome decoding of the unfolded cyclic code.
    Wu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeOpts {
    pub mode: Mode,
    pub e: usize,
    pub strict: bool,
    pub parallel: bool,
}

pub enum Decoder {
    List(ListDecoder<Arc<dyn Folded>>),
    Unique(UniqueDecoder<Arc<dyn Folded>>),
    Wu { code: RsCode, e: usize },
}

/// What a decoder returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    List(Vec<Vec<Elem>>),
    Single { codeword: Vec<Elem>, ok: bool },
}

impl Decision {
    pub fn ok(&self) -> bool {
        match self {
            Decision::List(l) => !l.is_empty(),
            Decision::Single { ok, .. } => *ok,
        }
    }
}

impl Decoder {
    pub fn new(setup: &Setup, opts: DecodeOpts) -> anyhow::Result<Self> {
        let folded = setup.folded.clone();
        Ok(match opts.mode {
            Mode::List => {
                Decoder::List(ListDecoder::new(folded, ListDecodeConfig { radius: None, parallel: opts.parallel })?)
            }
            Mode::Unique => Decoder::Unique(UniqueDecoder::new(
                folded,
                UniqueDecodeConfig { e: opts.e, radius: None, strict: opts.strict, parallel: opts.parallel },
            )?),
            Mode::Wu => {
                let Some(code) = setup.rs.clone() else { bail!("wu mode needs a Reed-Solomon code") };
                if !code.is_cyclic() {
                    bail!("wu mode needs a cyclic code (single multiplicative factor, no additive part)");
                }
                if code.n() - code.k() <= opts.e {
                    bail!("e = {} leaves no burst radius", opts.e);
                }
                Decoder::Wu { code, e: opts.e }
            }
        })
    }

    /// Largest burst length the decoder is configured for.
    pub fn radius(&self) -> usize {
        match self {
            Decoder::List(d) => d.radius(),
            Decoder::Unique(d) => d.radius(),
            Decoder::Wu { code, e } => code.n() - code.k() - e - 1,
        }
    }

    /// Upper bound on the per-trial miscorrection probability, when known.
    pub fn miscorrection_bound(&self) -> Option<f64> {
        match self {
            Decoder::List(_) => None,
            Decoder::Unique(d) => Some(d.radii().miscorrection_bound),
            Decoder::Wu { code, e } => Some((code.field().order() as f64).powi(-(*e as i32))),
        }
    }

    pub fn decode(&self, received: &[Elem]) -> anyhow::Result<Decision> {
        Ok(match self {
            Decoder::List(d) => Decision::List(d.decode(received)?),
            Decoder::Unique(d) => {
                let o = d.decode(received)?;
                Decision::Single { ok: o.status == DecodeStatus::Ok, codeword: o.codeword }
            }
            Decoder::Wu { code, e } => {
                let o = code.wu_decode(received, *e)?;
                Decision::Single { ok: o.status == DecodeStatus::Ok, codeword: o.codeword }
            }
        })
    }
}
