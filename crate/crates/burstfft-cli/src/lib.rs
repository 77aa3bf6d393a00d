//! Pipelines behind the `burstfft-cli` binary: word files, the burst
//! channel, Monte-Carlo runs, scaling benchmarks and a Lagrange reference
//! decoder for differential testing.

pub mod bench;
pub mod channel;
pub mod cmd;
pub mod io;
pub mod mc;
pub mod oracle;
pub mod pipeline;

pub use cmd::{cmd_corrupt, cmd_decode, cmd_encode};
pub use mc::{run_mc as cmd_mc, McConfig, McReport, Outcome, TrialRecord};
pub use oracle::oracle_decode;
pub use pipeline::{CodeParams, DecodeOpts, Decoder, Mode, Setup};
