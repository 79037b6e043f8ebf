//! Command-line surface. Every value flag is optional so the `--config` file
//! and defaults can fill it in.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use semiphoton::evolution::Stencil;
use semiphoton::plane_wave::{Branch, SpinIndex};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "semiphoton", version, about = "Verification suites and model calculator for the bispinor/EM-field correspondence")]
pub struct Cli {
    /// Seed of the single generator behind every random suite
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output format on stdout: json, csv or table
    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// Directory for report files (overridden by SEMIPHOTON_OUT)
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,

    /// JSON file whose keys mirror the long flag names
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Override one pass/fail threshold, e.g. `--threshold norm_drift=1e-9`
    #[arg(long = "threshold", global = true, value_name = "NAME=VALUE")]
    pub thresholds: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every identity suite; exit 0 iff all pass
    Verify(VerifyArgs),
    /// Solve the free plane-wave system for one momentum and family
    Planewave(PlaneWaveArgs),
    /// Integrate the 1-D lattice system and emit a diagnostics time series
    Evolve(EvolveArgs),
    /// Self-consistent nonlinear plane wave, damped iteration and Lagrangians
    Nonlinear(NonlinearArgs),
    /// Torus-model constants: geometry, charge, mass, spin, moment, coupling
    Torus(TorusArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random samples per suite
    #[arg(long)]
    pub samples: Option<usize>,

    /// Test hook: corrupt the matrix set before running
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PlaneWaveArgs {
    #[arg(long)]
    pub px: Option<f64>,
    #[arg(long)]
    pub py: Option<f64>,
    #[arg(long)]
    pub pz: Option<f64>,
    /// Energy branch: + or -
    #[arg(long)]
    pub branch: Option<BranchArg>,
    /// Spin family: 1 or 2
    #[arg(long)]
    pub index: Option<IndexArg>,
    /// Global phase φ of B = b·e^{iφ}
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Also substitute p = (0, mc, 0), ε = ±mc² and compare with the tabulated pattern
    #[arg(long)]
    pub specialize: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvolveArgs {
    /// Lattice points
    #[arg(long)]
    pub n: Option<usize>,
    /// Lattice spacing; the period is n·dy (default period 2π)
    #[arg(long)]
    pub dy: Option<f64>,
    /// Time step (default 0.5·dy/c)
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Initial data: eigenstate, fourier (right-moving mode) or superposition
    #[arg(long)]
    pub init: Option<Init>,
    /// Lattice wavenumber index of the initial mode
    #[arg(long)]
    pub mode: Option<i64>,
    #[arg(long)]
    pub branch: Option<BranchArg>,
    #[arg(long)]
    pub index: Option<IndexArg>,
    /// Spatial derivative: central4 or spectral
    #[arg(long)]
    pub stencil: Option<StencilArg>,
    /// Emit one CSV row every this many steps
    #[arg(long)]
    pub sample_every: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct NonlinearArgs {
    #[arg(long)]
    pub px: Option<f64>,
    #[arg(long)]
    pub py: Option<f64>,
    #[arg(long)]
    pub pz: Option<f64>,
    #[arg(long)]
    pub index: Option<IndexArg>,
    #[arg(long)]
    pub mass: Option<f64>,
    /// Relative perturbation of the iteration's starting spinor
    #[arg(long)]
    pub perturb: Option<f64>,
    #[arg(long)]
    pub damping: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TorusArgs {
    /// natural (ħ = c = m_e = 1) or cgs (CODATA 2018, Gaussian)
    #[arg(long)]
    pub units: Option<Units>,
    /// Simpson nodes for the charge and mass quadratures
    #[arg(long)]
    pub quad_nodes: Option<usize>,
}

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => [$($word:literal),+]),+ $(,)? }) => {
        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s.to_ascii_lowercase().as_str() {
                    $($($word)|+ => Ok(Self::$variant),)+
                    _ => Err(format!(
                        "invalid value `{s}` (expected one of: {})",
                        [$($($word),+),+].join(", ")
                    )),
                }
            }
        }
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$variant => [$($word),+][0],)+ })
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// β replaced by the identity
    BetaIdentity,
    /// α_y doubled
    AlphaYScaled,
}
keyword_enum!(Fault { BetaIdentity => ["beta-identity"], AlphaYScaled => ["alpha-y-scaled"] });

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    Eigenstate,
    Fourier,
    Superposition,
}
keyword_enum!(Init {
    Eigenstate => ["eigenstate"],
    Fourier => ["fourier"],
    Superposition => ["superposition"],
});

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Natural,
    Cgs,
}
keyword_enum!(Units { Natural => ["natural"], Cgs => ["cgs", "gaussian"] });

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchArg(pub Branch);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BranchWord {
    Positive,
    Negative,
}
keyword_enum!(BranchWord { Positive => ["+", "plus", "positive"], Negative => ["-", "minus", "negative"] });

impl FromStr for BranchArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(Self(match s.parse::<BranchWord>()? {
            BranchWord::Positive => Branch::Positive,
            BranchWord::Negative => Branch::Negative,
        }))
    }
}

impl fmt::Display for BranchArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            Branch::Positive => "+",
            Branch::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexArg(pub SpinIndex);

impl FromStr for IndexArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "1" => Ok(Self(SpinIndex::One)),
            "2" => Ok(Self(SpinIndex::Two)),
            _ => Err(format!("invalid value `{s}` (expected 1 or 2)")),
        }
    }
}

impl fmt::Display for IndexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            SpinIndex::One => "1",
            SpinIndex::Two => "2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StencilArg(pub Stencil);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StencilWord {
    Central4,
    Spectral,
}
keyword_enum!(StencilWord { Central4 => ["central4", "central"], Spectral => ["spectral", "fft"] });

impl FromStr for StencilArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(Self(match s.parse::<StencilWord>()? {
            StencilWord::Central4 => Stencil::Central4,
            StencilWord::Spectral => Stencil::Spectral,
        }))
    }
}

impl fmt::Display for StencilArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            Stencil::Central4 => "central4",
            Stencil::Spectral => "spectral",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords_round_trip() {
        for s in ["+", "-"] {
            assert_eq!(s.parse::<BranchArg>().unwrap().to_string(), s);
        }
        assert_eq!("Minus".parse::<BranchArg>().unwrap().0, Branch::Negative);
        assert_eq!("2".parse::<IndexArg>().unwrap().0, SpinIndex::Two);
        assert!("3".parse::<IndexArg>().is_err());
        assert_eq!("fft".parse::<StencilArg>().unwrap().to_string(), "spectral");
        assert_eq!("gaussian".parse::<Units>().unwrap(), Units::Cgs);
        assert!("x".parse::<Init>().unwrap_err().contains("eigenstate, fourier, superposition"));
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
