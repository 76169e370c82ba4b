use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qveto_core::election::{ProtocolKind, DEFAULT_SHOTS};
use qveto_core::noise::{ChannelKind, Placement};

#[derive(Debug, Parser)]
#[command(
    name = "qveto",
    version,
    about = "Simulate quantum anonymous veto elections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one election and report every round.
    Run(RunArgs),
    /// Recompute the reference outcome tables noiselessly.
    Tables(TablesArgs),
    /// Fidelity and success probability over a range of noise strengths.
    Sweep(SweepArgs),
    /// Show a calibration file and the noise model derived from it.
    DeviceInfo(DeviceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    /// Human-readable summary.
    Text,
    /// One JSON object per result row.
    Json,
    /// Comma-separated rows with a header.
    Csv,
    /// Full nested JSON report, including transcripts.
    Report,
}

/// Output format of the table and device reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    A,
    BGhz,
    BCluster,
}

impl From<ProtocolArg> for ProtocolKind {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::A => ProtocolKind::A,
            ProtocolArg::BGhz => ProtocolKind::BGhz,
            ProtocolArg::BCluster => ProtocolKind::BCluster,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepProtocol {
    A,
    BGhz,
    BCluster,
    All,
}

impl SweepProtocol {
    pub fn kinds(self) -> Vec<ProtocolKind> {
        match self {
            SweepProtocol::A => vec![ProtocolKind::A],
            SweepProtocol::BGhz => vec![ProtocolKind::BGhz],
            SweepProtocol::BCluster => vec![ProtocolKind::BCluster],
            SweepProtocol::All => ProtocolKind::ALL.to_vec(),
        }
    }
}

/// `kind=K,strength=S,placement=hop|gate`; a bare word is taken as the kind.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    pub kind: ChannelKind,
    pub strength: Option<f64>,
    pub placement: Placement,
}

impl FromStr for NoiseSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut kind = None;
        let mut strength = None;
        let mut placement = Placement::Hop;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').unwrap_or(("kind", part));
            match key.trim() {
                "kind" => kind = Some(value.parse::<ChannelKind>().map_err(|e| e.to_string())?),
                "strength" => {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| format!("strength {value:?} is not a number"))?;
                    if !(0.0..=1.0).contains(&v) {
                        return Err(format!("strength {v} outside [0, 1]"));
                    }
                    strength = Some(v);
                }
                "placement" => {
                    placement = value
                        .parse()
                        .map_err(|e: qveto_core::Error| e.to_string())?
                }
                other => return Err(format!("unknown noise key {other:?}")),
            }
        }
        let kind = kind.ok_or("noise spec needs a kind")?;
        if kind == ChannelKind::Custom {
            return Err("custom channels cannot be given on the command line".into());
        }
        Ok(NoiseSpec {
            kind,
            strength,
            placement,
        })
    }
}

/// `min:max:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, step] = parts[..] else {
            return Err(format!("expected min:max:step, got {s:?}"));
        };
        let num = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("{v:?} is not a number"))
        };
        let range = Range {
            min: num(min)?,
            max: num(max)?,
            step: num(step)?,
        };
        qveto_core::election::strength_grid(range.min, range.max, range.step)
            .map_err(|e| e.to_string())?;
        Ok(range)
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Shots sampled per round.
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub protocol: ProtocolArg,
    /// One character per voter, voter 1 first; 1 = veto.
    #[arg(long)]
    pub votes: String,
    /// Independent runs with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeats: u32,
    /// kind=K,strength=S,placement=hop|gate (repeatable).
    #[arg(long)]
    pub noise: Vec<NoiseSpec>,
    /// Device calibration file (TOML).
    #[arg(long)]
    pub calibration: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Only this table (3 = Bell pair, 4 = cluster, 5 = GHZ).
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
    pub which: Option<u8>,
    /// Exit with status 1 if any row deviates from the expectation.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value_t = DocFormat::Text)]
    pub out: DocFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepProtocol::All)]
    pub protocol: SweepProtocol,
    #[arg(long, default_value = "0000")]
    pub votes: String,
    /// Channel kinds to sweep, as kind or kind=K,placement=P (repeatable).
    #[arg(long, required = true)]
    pub noise: Vec<NoiseSpec>,
    #[arg(long, default_value = "0:0.5:0.05")]
    pub strengths: Range,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    #[arg(long)]
    pub calibration: PathBuf,
    #[arg(long, value_enum, default_value_t = DocFormat::Text)]
    pub out: DocFormat,
}
