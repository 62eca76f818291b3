use biram::bigraph::Bigraph;
use biram::classify::{classify, default_tol};
use biram::complexes::hecke_a1;
use biram::dynamics::{
    nbrw_tv_profile, pseudorandom_pairs, srw_cutoff_time, srw_cutoff_time_left, srw_tv_profile,
    zeta_report, WalkProfile,
};
use biram::io;
use biram::jobs::{self, ActionKind, InstanceSpec, JobError};
use biram::lattice::LatticeKind;
use biram::spectral::{spectrum_report, SpectrumOptions};
use biram::Budgets;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Ramanujan bigraphs from arithmetic lattices: construction, spectra,
/// classification and walk experiments.
///
/// Exit codes: 0 ok, 1 io, 2 configuration, 3 budget, 4 invariant guard.
#[derive(Parser)]
#[command(name = "biram", version)]
struct Cli {
    /// worker threads for eigensolves and grid searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Cayley or Schreier bigraph and emit it as JSON
    Construct {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Adjacency and non-backtracking spectra with exact excessiveness
    Spectrum {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Ramanujan verdict, biexpander constant, Satake labels, density exponent
    Classify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        /// interval tolerance (default 1e-8·√Kk)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Exact NBRW or SRW total-variation profile at even times
    Walk {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_enum, default_value_t = WalkKind::Nbrw)]
        kind: WalkKind,
        /// start edge (nbrw) or left vertex (srw)
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// last even time
        #[arg(long, default_value_t = 16)]
        t_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25")]
        eps: Vec<f64>,
    },
    /// Closed non-backtracking walk counts, prime counts and PNT residuals
    Zeta {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
    },
    /// Clash counting and expander mixing on seeded random (S,T) pairs
    Clash {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// biexpander constant for the clash bound (default: measured)
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Hecke A₁ spectrum of the split-prime Cayley complex
    Complex {
        /// split prime (p ≡ 1 mod 3)
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        /// samples per reference polyline in the CSV
        #[arg(long, default_value_t = 720)]
        samples: usize,
    },
    /// construct → spectrum → classify as one JSON document
    Pipeline {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkKind {
    Nbrw,
    Srw,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Eisenstein,
    Gauss,
    Mumford,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchreierArg {
    ProjectivePlane,
    Isotropic,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum, required_unless_present = "input")]
    lattice: Option<LatticeArg>,
    /// inert prime defining the generators
    #[arg(long, required_unless_present = "input")]
    p: Option<u32>,
    /// reduction prime
    #[arg(long, required_unless_present = "input")]
    q: Option<u32>,
    /// Schreier bigraph for this action instead of the Cayley bigraph
    #[arg(long, value_enum)]
    schreier: Option<SchreierArg>,
    /// load a bigraph JSON written by `construct` instead of building one
    #[arg(long, conflicts_with_all = ["lattice", "p", "q", "schreier"])]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    /// largest |L| for the dense Gram eigensolve
    #[arg(long, default_value_t = Budgets::default().gram)]
    budget_gram: usize,
    /// largest 2N (or group order) for dense non-symmetric eigensolves
    #[arg(long, default_value_t = Budgets::default().direct_b)]
    budget_direct_b: usize,
    #[arg(long, default_value_t = Budgets::default().closure)]
    budget_closure: usize,
    /// largest walk length for exhaustive counting
    #[arg(long, default_value_t = Budgets::default().nm_brute)]
    budget_nm: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            gram: self.budget_gram,
            direct_b: self.budget_direct_b,
            closure: self.budget_closure,
            nm_brute: self.budget_nm,
        }
    }
}

#[derive(Args)]
struct OutArgs {
    /// JSON output path (default: stdout)
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// CSV output path
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl InstanceArgs {
    fn spec(&self) -> Result<Option<InstanceSpec>, JobError> {
        if self.input.is_some() {
            return Ok(None);
        }
        let lattice = match self.lattice.expect("required by clap") {
            LatticeArg::Eisenstein => LatticeKind::Eisenstein,
            LatticeArg::Gauss => LatticeKind::Gauss,
            LatticeArg::Mumford => LatticeKind::Mumford,
        };
        let action = match self.schreier {
            None => ActionKind::Regular,
            Some(SchreierArg::ProjectivePlane) => ActionKind::ProjectivePlane,
            Some(SchreierArg::Isotropic) => ActionKind::Isotropic,
        };
        let inst = InstanceSpec::new(lattice, self.p.expect("required"), self.q.expect("required"), action);
        inst.validate()?;
        Ok(Some(inst))
    }

    fn build(&self, budgets: &Budgets) -> Result<Bigraph, JobError> {
        match self.spec()? {
            Some(inst) => jobs::construct(&inst, budgets),
            None => {
                let path = self.input.as_ref().expect("checked above");
                Ok(io::import_bigraph(&io::read_file(path)?)?)
            }
        }
    }
}

fn emit_json<T: Serialize>(out: &OutArgs, kind: &str, data: &T) -> Result<(), JobError> {
    let text = io::to_json(kind, data)?;
    match &out.out {
        Some(path) => io::write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_csv(out: &OutArgs, text: impl FnOnce() -> String) -> Result<(), JobError> {
    if let Some(path) = &out.csv {
        io::write_file(path, &text())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct WalkOutput {
    profile: WalkProfile,
    /// SRW only: predicted cutoff with log N and with log |L|
    predicted_cutoff: Option<(f64, f64)>,
}

fn run(cli: Cli) -> Result<(), JobError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(JobError::config("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| JobError::config(e.to_string()))?;
    }
    match cli.command {
        Command::Construct { inst, budgets, out } => {
            let g = inst.build(&budgets.budgets())?;
            emit_csv(&out, || io::edges_csv(&g))?;
            let text = io::export_bigraph(&g)?;
            match &out.out {
                Some(path) => io::write_file(path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Spectrum { inst, budgets, out } => {
            let b = budgets.budgets();
            let g = inst.build(&b)?;
            let r = spectrum_report(&g, &SpectrumOptions { budgets: b, exact: true })?;
            emit_csv(&out, || io::eigenvalues_csv(&r.b_spectrum))?;
            emit_json(&out, "spectrum", &r)?;
        }
        Command::Classify { inst, budgets, out, tol } => {
            let b = budgets.budgets();
            let g = inst.build(&b)?;
            let r = spectrum_report(&g, &SpectrumOptions { budgets: b, exact: true })?;
            let v = classify(&r, tol.unwrap_or_else(|| default_tol(&r)));
            emit_json(&out, "verdict", &v)?;
        }
        Command::Walk { inst, budgets, out, kind, start, t_max, eps } => {
            if t_max % 2 == 1 {
                return Err(JobError::config("--t-max must be even"));
            }
            let g = inst.build(&budgets.budgets())?;
            let (profile, predicted_cutoff) = match kind {
                WalkKind::Nbrw => (nbrw_tv_profile(&g, start, t_max, &eps)?, None),
                WalkKind::Srw => (
                    srw_tv_profile(&g, start, t_max, &eps)?,
                    Some((srw_cutoff_time(&g), srw_cutoff_time_left(&g))),
                ),
            };
            emit_csv(&out, || io::walk_csv(&profile))?;
            emit_json(&out, "walk", &WalkOutput { profile, predicted_cutoff })?;
        }
        Command::Zeta { inst, budgets, out, m_max } => {
            let b = budgets.budgets();
            let g = inst.build(&b)?;
            let r = spectrum_report(&g, &SpectrumOptions { budgets: b, exact: true })?;
            let z = zeta_report(&g, &r, m_max, b.nm_brute)?;
            emit_json(&out, "zeta", &z)?;
        }
        Command::Clash { inst, budgets, out, pairs, seed, eps } => {
            let b = budgets.budgets();
            let g = inst.build(&b)?;
            let r = spectrum_report(&g, &SpectrumOptions { budgets: b, exact: true })?;
            let v = classify(&r, default_tol(&r));
            let eps = eps.or(v.biexpander_eps).ok_or_else(|| {
                JobError::config("graph is not a biexpander; pass --eps to set the clash constant")
            })?;
            let lambda2 = r.lambdas.get(1).copied().unwrap_or(0.0);
            let rep = pseudorandom_pairs(&g, eps, lambda2, pairs, seed);
            emit_json(&out, "pairs", &rep)?;
        }
        Command::Complex { p, q, budgets, out, samples } => {
            let b = budgets.budgets();
            let c = hecke_a1(p, q, b.direct_b, b.closure)?;
            emit_csv(&out, || io::complex_csv(&c, samples))?;
            emit_json(&out, "complex", &c)?;
        }
        Command::Pipeline { inst, budgets, out, tol } => {
            let b = budgets.budgets();
            let g = inst.build(&b)?;
            let rep = jobs::analyze(&g, &SpectrumOptions { budgets: b, exact: true }, tol)?;
            emit_json(&out, "pipeline", &rep)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
