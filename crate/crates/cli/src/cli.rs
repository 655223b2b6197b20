//! Command-line arguments.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::doc::Format;
use crate::error::CliError;
use crate::job::{Command, DemoMode, JobSpec, Special, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "fplift", version, about = "Rectify small subsets of F_p into number-field towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Lift A ⊂ F_p to a tower preserving every (k,t)-bounded relation.
    Rectify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// Degree bound (defaults to k).
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
        /// Elimination order as a 1-based permutation.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Run past the norm bound; verification decides.
        #[arg(long)]
        force: bool,
        /// Refuse unless the logarithmic size condition holds.
        #[arg(long)]
        require_guarantee: bool,
    },
    /// Re-verify a rectify, chain or adversarial document.
    Verify { document: PathBuf },
    /// Integer points preserving 2k-bounded linear relations.
    LiftLinear {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
    /// Resultant of f and g with respect to one variable.
    Resultant {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// Subresultant sequence of f and g.
    Subres {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1)]
        var: usize,
    },
    /// A (k,k)-constructibility chain ending at the target.
    Chain {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, value_enum)]
        special: Option<Special>,
    },
    /// Residues of a short (k-1,k-1)-chain for p.
    Adversarial {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Transfer demos and sweeps.
    Demo {
        #[arg(long, value_enum)]
        mode: DemoMode,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
        /// Polynomial for poly-image and sparse-square.
        #[arg(long)]
        f: Option<String>,
        /// Size parameter for the lattice.
        #[arg(long)]
        n: Option<u64>,
        /// Points as x:y, comma separated.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
        /// Lines a:b:c (a*y + b*x + c = 0), comma separated.
        #[arg(long, value_delimiter = ',')]
        lines: Vec<String>,
        /// Number of sweep runs.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        force: bool,
    },
}

fn coords(s: &str, n: usize) -> Result<Vec<u64>, CliError> {
    let v: Vec<u64> = s
        .split(':')
        .map(|c| c.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{s:?} is not a list of {n} integers separated by ':'")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{s:?} needs {n} coordinates")));
    }
    Ok(v)
}

impl Cli {
    pub fn into_spec(self) -> Result<JobSpec, CliError> {
        let mut spec = match self.command {
            Sub::Rectify { p, k, t, set, order, force, require_guarantee } => {
                let mut s = JobSpec::new(Command::Rectify);
                (s.p, s.k, s.t, s.set, s.order, s.force, s.require_guarantee) = (Some(p), Some(k), t, set, order, force, require_guarantee);
                s
            }
            Sub::Verify { document } => {
                let mut s = JobSpec::new(Command::Verify);
                s.input = Some(document);
                s
            }
            Sub::LiftLinear { p, k, set } => {
                let mut s = JobSpec::new(Command::LiftLinear);
                (s.p, s.k, s.set) = (Some(p), Some(k), set);
                s
            }
            Sub::Resultant { f, g, var } => {
                let mut s = JobSpec::new(Command::Resultant);
                (s.polys, s.var) = (vec![f, g], var);
                s
            }
            Sub::Subres { f, g, var } => {
                let mut s = JobSpec::new(Command::Subres);
                (s.polys, s.var) = (vec![f, g], var);
                s
            }
            Sub::Chain { target, k, special } => {
                let mut s = JobSpec::new(Command::Chain);
                (s.target, s.k, s.special) = (Some(target), Some(k), special);
                s
            }
            Sub::Adversarial { p, k } => {
                let mut s = JobSpec::new(Command::Adversarial);
                (s.p, s.k) = (Some(p), Some(k));
                s
            }
            Sub::Demo { mode, p, set, f, n, points, lines, count, force } => {
                let mut s = JobSpec::new(Command::Demo);
                (s.mode, s.p, s.set, s.n, s.count, s.force) = (Some(mode), p, set, n, count, force);
                s.polys = f.into_iter().collect();
                s.points = points.iter().map(|x| coords(x, 2).map(|v| (v[0], v[1]))).collect::<Result<_, _>>()?;
                s.lines = lines.iter().map(|x| coords(x, 3).map(|v| (v[0], v[1], v[2]))).collect::<Result<_, _>>()?;
                s
            }
        };
        spec.seed = self.seed;
        spec.out = self.out;
        spec.format = self.format;
        Ok(spec)
    }
}
