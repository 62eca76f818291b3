//! Job layer shared by the CLI, the FFI and the acceptance harness: instance
//! construction from lattice data, the construct → spectrum → classify chain and
//! the mapping from errors to exit classes.

use crate::bigraph::{schreier_from_system, Bigraph, BigraphError};
use crate::classify::{classify, default_tol, ClassifyError, RamanujanVerdict};
use crate::complexes::ComplexError;
use crate::dynamics::DynamicsError;
use crate::groups::{close_group, reduce_generators, GroupAction, GroupError};
use crate::io::IoError;
use crate::lattice::{generator_system, LatticeError, LatticeKind, LatticeSpec, Mode};
use crate::rings::RingError;
use crate::spectral::{spectrum_report, SpectralError, SpectrumOptions, SpectrumReport};
use crate::Budgets;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exit statuses: 0 ok, 1 io, 2 config, 3 budget, 4 invariant guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorClass {
    Io,
    Config,
    Budget,
    Invariant,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Io => 1,
            ErrorClass::Config => 2,
            ErrorClass::Budget => 3,
            ErrorClass::Invariant => 4,
        }
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct JobError {
    pub class: ErrorClass,
    pub message: String,
}

impl JobError {
    pub fn config(message: impl Into<String>) -> JobError {
        JobError { class: ErrorClass::Config, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> JobError {
        JobError { class: ErrorClass::Invariant, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.class.exit_code()
    }
}

fn job(class: ErrorClass, e: impl fmt::Display) -> JobError {
    JobError { class, message: e.to_string() }
}

impl From<RingError> for JobError {
    fn from(e: RingError) -> Self {
        job(ErrorClass::Config, e)
    }
}

impl From<LatticeError> for JobError {
    fn from(e: LatticeError) -> Self {
        let class = match e {
            LatticeError::InvalidPrime { .. } | LatticeError::Ring(_) => ErrorClass::Config,
            _ => ErrorClass::Invariant,
        };
        job(class, e)
    }
}

impl From<GroupError> for JobError {
    fn from(e: GroupError) -> Self {
        let class = match e {
            GroupError::Oversize { .. } => ErrorClass::Budget,
            _ => ErrorClass::Config,
        };
        job(class, e)
    }
}

impl From<BigraphError> for JobError {
    fn from(e: BigraphError) -> Self {
        let class = match e {
            BigraphError::BadParams(_) | BigraphError::Weighted => ErrorClass::Config,
            _ => ErrorClass::Invariant,
        };
        job(class, e)
    }
}

impl From<SpectralError> for JobError {
    fn from(e: SpectralError) -> Self {
        let class = match e {
            SpectralError::BudgetExceeded { .. } => ErrorClass::Budget,
            _ => ErrorClass::Invariant,
        };
        job(class, e)
    }
}

impl From<DynamicsError> for JobError {
    fn from(e: DynamicsError) -> Self {
        let class = match &e {
            DynamicsError::BudgetExceeded { .. } => ErrorClass::Budget,
            DynamicsError::BadStart { .. } | DynamicsError::ShapeMismatch { .. } => ErrorClass::Config,
            DynamicsError::Bigraph(b) => JobError::from(b.clone()).class,
            _ => ErrorClass::Invariant,
        };
        job(class, e)
    }
}

impl From<ComplexError> for JobError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::BudgetExceeded { .. } => job(ErrorClass::Budget, e),
            ComplexError::Lattice(l) => l.into(),
            ComplexError::Group(g) => g.into(),
            ComplexError::Linalg(_) => job(ErrorClass::Invariant, e),
        }
    }
}

impl From<ClassifyError> for JobError {
    fn from(e: ClassifyError) -> Self {
        job(ErrorClass::Config, e)
    }
}

impl From<IoError> for JobError {
    fn from(e: IoError) -> Self {
        let class = match e {
            IoError::Io { .. } => ErrorClass::Io,
            _ => ErrorClass::Config,
        };
        job(class, e)
    }
}

/// Right G-set for the construction. `Regular` gives the Cayley bigraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionKind {
    Regular,
    ProjectivePlane,
    Isotropic,
}

impl FromStr for ActionKind {
    type Err = JobError;
    fn from_str(s: &str) -> Result<Self, JobError> {
        match s {
            "regular" | "cayley" => Ok(ActionKind::Regular),
            "projective-plane" => Ok(ActionKind::ProjectivePlane),
            "isotropic" => Ok(ActionKind::Isotropic),
            _ => Err(JobError::config(format!(
                "unknown action {s:?}; expected regular, projective-plane or isotropic"
            ))),
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionKind::Regular => "regular",
            ActionKind::ProjectivePlane => "projective-plane",
            ActionKind::Isotropic => "isotropic",
        })
    }
}

impl FromStr for crate::lattice::LatticeKind {
    type Err = JobError;
    fn from_str(s: &str) -> Result<Self, JobError> {
        match s.to_ascii_lowercase().as_str() {
            "eisenstein" => Ok(LatticeKind::Eisenstein),
            "gauss" | "gaussian" => Ok(LatticeKind::Gauss),
            "mumford" => Ok(LatticeKind::Mumford),
            _ => Err(JobError::config(format!(
                "unknown lattice {s:?}; expected eisenstein, gauss or mumford"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub lattice: LatticeKind,
    pub p: u32,
    pub q: u32,
    pub action: ActionKind,
}

impl InstanceSpec {
    pub fn new(lattice: LatticeKind, p: u32, q: u32, action: ActionKind) -> InstanceSpec {
        InstanceSpec { lattice, p, q, action }
    }

    /// Admissibility of p (inert, not excluded) and q (prime, ≠ p, not excluded),
    /// checked before any enumeration.
    pub fn validate(&self) -> Result<(), JobError> {
        let spec = LatticeSpec::new(self.lattice);
        spec.admit(self.p, Mode::InertBigraph).map_err(|e| {
            JobError::config(format!("{e}; p must be an inert prime outside {:?}", spec.excluded_primes))
        })?;
        if !crate::rings::is_prime(self.q as u64) {
            return Err(JobError::config(format!("q = {} is not prime", self.q)));
        }
        if self.q == self.p || spec.excluded_primes.contains(&self.q) {
            return Err(JobError::config(format!(
                "q = {} must differ from p and avoid {:?}",
                self.q, spec.excluded_primes
            )));
        }
        Ok(())
    }
}

/// Validate, enumerate S_p, reduce mod q and build the Cayley or Schreier bigraph.
pub fn construct(inst: &InstanceSpec, budgets: &Budgets) -> Result<Bigraph, JobError> {
    inst.validate()?;
    let spec = LatticeSpec::new(inst.lattice);
    let gens = generator_system(inst.lattice, inst.p, Mode::InertBigraph)?;
    let rg = reduce_generators(&spec, &gens, inst.q)?;
    let action = match inst.action {
        ActionKind::Regular => GroupAction::regular(&close_group(&rg, budgets.closure)?),
        ActionKind::ProjectivePlane => GroupAction::projective_plane(&rg),
        ActionKind::Isotropic => GroupAction::isotropic(&spec, &rg)?,
    };
    let mut g = schreier_from_system(&action, &gens)?;
    g.labels.insert("lattice".into(), format!("{:?}", inst.lattice).to_lowercase());
    g.labels.insert("p".into(), inst.p.to_string());
    g.labels.insert("q".into(), inst.q.to_string());
    g.labels.insert("injective".into(), rg.injective.to_string());
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigraphSummary {
    pub n_left: usize,
    pub n_right: usize,
    pub left_degree: usize,
    pub right_degree: usize,
    pub weighted: bool,
    pub labels: std::collections::BTreeMap<String, String>,
}

impl BigraphSummary {
    pub fn of(g: &Bigraph) -> BigraphSummary {
        BigraphSummary {
            n_left: g.n_left,
            n_right: g.n_right,
            left_degree: g.big_k + 1,
            right_degree: g.small_k + 1,
            weighted: g.is_weighted(),
            labels: g.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub bigraph: BigraphSummary,
    pub spectrum: SpectrumReport,
    pub verdict: RamanujanVerdict,
    /// "fully Ramanujan", "adj-Ramanujan", "weakly Ramanujan" or "not Ramanujan"
    pub summary: String,
}

pub fn verdict_label(v: &RamanujanVerdict) -> &'static str {
    if v.fully {
        "fully Ramanujan"
    } else if v.adj {
        "adj-Ramanujan"
    } else if v.weakly {
        "weakly Ramanujan"
    } else {
        "not Ramanujan"
    }
}

/// Spectrum and verdict of a built bigraph; `tol = None` uses the default.
pub fn analyze(g: &Bigraph, opts: &SpectrumOptions, tol: Option<f64>) -> Result<PipelineReport, JobError> {
    let spectrum = spectrum_report(g, opts)?;
    let verdict = classify(&spectrum, tol.unwrap_or_else(|| default_tol(&spectrum)));
    Ok(PipelineReport {
        bigraph: BigraphSummary::of(g),
        summary: verdict_label(&verdict).into(),
        spectrum,
        verdict,
    })
}

pub fn pipeline(
    inst: &InstanceSpec,
    opts: &SpectrumOptions,
    tol: Option<f64>,
) -> Result<(Bigraph, PipelineReport), JobError> {
    let g = construct(inst, &opts.budgets)?;
    let r = analyze(&g, opts, tol)?;
    Ok((g, r))
}
