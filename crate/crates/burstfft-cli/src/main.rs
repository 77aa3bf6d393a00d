use anyhow::{bail, Context};
use burstfft::affine::AffineGroupParams;
use burstfft::FieldParams;
use burstfft_cli::bench::{self, BenchMode};
use burstfft_cli::channel::{ChannelConfig, Start};
use burstfft_cli::io::WordFile;
use burstfft_cli::{cmd_corrupt, cmd_decode, cmd_encode, cmd_mc, CodeParams, DecodeOpts, McConfig, Mode};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "burstfft", version, about = "Burst-error decoding of Reed-Solomon and Hermitian codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode a message (or a random one) with an RS code.
    Encode(EncodeArgs),
    /// Add a burst to every vector of a word file.
    Corrupt(CorruptArgs),
    /// Decode a received RS word.
    Decode(DecodeArgs),
    /// Monte-Carlo decoding experiment.
    Mc(McArgs),
    /// Median-of-N scaling benchmark.
    Bench(BenchArgs),
    /// Encode with a one-point Hermitian code.
    AgEncode(EncodeArgs),
    /// Decode a received Hermitian word.
    AgDecode(DecodeArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// Field as p^d:0xMODULUS, e.g. 2^8:0x11d.
    #[arg(long)]
    field: String,
    /// Evaluation group t=..,wdim=..,gamma=0x.. (Hermitian: the base point set).
    #[arg(long)]
    group: Option<String>,
    /// RS dimension.
    #[arg(long)]
    k: Option<usize>,
    /// Hermitian curve parameter (q = kappa^2).
    #[arg(long)]
    kappa: Option<usize>,
    /// Hermitian pole order bound.
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long = "fold-level", default_value_t = 0)]
    fold_level: usize,
}

impl CodeArgs {
    fn params(&self, hermitian: bool) -> anyhow::Result<CodeParams> {
        let field: FieldParams = self.field.parse()?;
        let fold_level = self.fold_level;
        if hermitian {
            let kappa = self.kappa.context("--kappa is required")?;
            let lambda = self.lambda.context("--lambda is required")?;
            let base = match &self.group {
                Some(g) => AffineGroupParams::parse_for(g, field.p)?,
                None => AffineGroupParams::additive((0..field.d).map(|i| field.p.pow(i)).collect(), 0),
            };
            Ok(CodeParams::Ag { field, kappa, base, lambda, fold_level })
        } else {
            let k = self.k.context("--k is required")?;
            let group = AffineGroupParams::parse_for(self.group.as_deref().context("--group is required")?, field.p)?;
            Ok(CodeParams::Rs { field, group, k, fold_level })
        }
    }
}

#[derive(Args)]
struct IoArgs {
    /// Input word file (stdin when omitted).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl IoArgs {
    fn read(&self) -> anyhow::Result<WordFile> {
        let text = match &self.input {
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        WordFile::parse(&text)
    }

    fn read_opt(&self) -> anyhow::Result<Option<WordFile>> {
        self.input.as_ref().map(|_| self.read()).transpose()
    }

    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => Ok(std::io::stdout().write_all(text.as_bytes())?),
        }
    }
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    io: IoArgs,
    /// Seed for the random message used when --in is omitted.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CorruptArgs {
    #[arg(long = "burst-len")]
    burst_len: usize,
    /// Fixed burst start (uniform over non-wrapping starts when omitted).
    #[arg(long)]
    start: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct DecoderArgs {
    #[arg(long, value_enum, default_value_t = Mode::Unique)]
    mode: Mode,
    /// Safety margin of the syndrome decoder.
    #[arg(long, default_value_t = 2)]
    e: usize,
    /// Fail on any failed row instead of cross-checking.
    #[arg(long)]
    strict: bool,
}

impl DecoderArgs {
    fn opts(&self) -> DecodeOpts {
        DecodeOpts { mode: self.mode, e: self.e, strict: self.strict, parallel: true }
    }
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    dec: DecoderArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    dec: DecoderArgs,
    #[arg(long = "burst-len")]
    burst_len: usize,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Record per-trial wall time (makes the output non-reproducible).
    #[arg(long = "record-time")]
    record_time: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchMode::Unique)]
    mode: BenchMode,
    #[arg(long = "min-log-n", default_value_t = 12)]
    min_log_n: u32,
    #[arg(long = "max-log-n", default_value_t = 16)]
    max_log_n: u32,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_out(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    IoArgs { input: None, out: out.clone() }.write(text)
}

/// Ok(false) means a detected decoding failure.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Encode(a) => encode(a, false),
        Cmd::AgEncode(a) => encode(a, true),
        Cmd::Decode(a) => decode(a, false),
        Cmd::AgDecode(a) => decode(a, true),
        Cmd::Corrupt(a) => {
            let input = a.io.read()?;
            let start = a.start.map_or(Start::Random, Start::Fixed);
            let ch = ChannelConfig { burst_length: a.burst_len, start, seed: a.seed };
            a.io.write(&cmd_corrupt(&input, &ch)?.render())?;
            Ok(true)
        }
        Cmd::Mc(a) => {
            let params = a.code.params(a.code.kappa.is_some())?;
            let cfg = McConfig {
                params,
                opts: a.dec.opts(),
                ell: a.burst_len,
                trials: a.trials,
                seed: a.seed,
                record_time: a.record_time,
            };
            let report = cmd_mc(&cfg)?;
            let text = match a.format {
                Format::Csv => report.to_csv()?,
                Format::Json => report.to_json()? + "\n",
            };
            write_out(&a.out, &text)?;
            eprintln!("{}", report.summary_line());
            Ok(true)
        }
        Cmd::Bench(a) => {
            if a.min_log_n > a.max_log_n {
                bail!("--min-log-n exceeds --max-log-n");
            }
            let rows = bench::run_bench(a.mode, a.min_log_n, a.max_log_n, a.reps, true)?;
            let text = match a.format {
                Format::Csv => bench::to_csv(&rows)?,
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            write_out(&a.out, &text)?;
            Ok(true)
        }
    }
}

fn encode(a: EncodeArgs, hermitian: bool) -> anyhow::Result<bool> {
    let params = a.code.params(hermitian)?;
    let msg = a.io.read_opt()?;
    a.io.write(&cmd_encode(&params, msg.as_ref(), a.seed)?.render())?;
    Ok(true)
}

fn decode(a: DecodeArgs, hermitian: bool) -> anyhow::Result<bool> {
    let params = a.code.params(hermitian)?;
    let (out, ok) = cmd_decode(&params, a.dec.opts(), &a.io.read()?)?;
    a.io.write(&out.render())?;
    if !ok {
        eprintln!("decoding failure detected");
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
