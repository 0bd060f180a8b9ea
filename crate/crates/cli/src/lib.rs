//! Orchestration of the verification pipeline: subcommands, evidence
//! collection and reports with exit statuses.

pub mod commands;
pub mod pipeline;
pub mod report;

use std::path::PathBuf;

use k3bm_core::data::DataDir;
use k3bm_core::fourfold::FourfoldError;
use k3bm_core::groebner::{GroebnerError, GroebnerLimits};
use k3bm_core::interp::InterpError;
use k3bm_core::k3::K3Error;
use k3bm_core::localsolve::LocalError;
use k3bm_core::poly::PolyParseError;

pub use report::{Format, Record, Report, Status};

#[derive(Debug, Clone)]
pub struct Caps {
    pub max_basis: Option<usize>,
    pub max_degree: Option<u32>,
    pub max_reductions: Option<usize>,
    /// Cap on enumerated tuples in scans and point counts.
    pub budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_basis: None,
            max_degree: None,
            max_reductions: None,
            budget: 1 << 32,
        }
    }
}

impl Caps {
    pub fn limits(&self) -> GroebnerLimits {
        GroebnerLimits {
            max_basis: self.max_basis,
            max_degree: self.max_degree,
            max_reductions: self.max_reductions,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub data: PathBuf,
    pub caps: Caps,
    pub workers: Option<usize>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(data: PathBuf, caps: Caps, workers: Option<usize>, format: Format) -> anyhow::Result<Self> {
        if caps.max_basis == Some(0) || caps.max_degree == Some(0) || caps.max_reductions == Some(0) || caps.budget == 0
        {
            anyhow::bail!(Input("resource caps must be positive".into()));
        }
        if workers == Some(0) {
            anyhow::bail!(Input("worker count must be positive".into()));
        }
        Ok(RunConfig {
            data,
            caps,
            workers,
            format,
        })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            data: DataDir::default_path(),
            caps: Caps::default(),
            workers: None,
            format: Format::Text,
        }
    }
}

/// Shared state of one run.
pub struct Ctx {
    pub data: DataDir,
    pub limits: GroebnerLimits,
    pub budget: u64,
}

impl Ctx {
    pub fn open(cfg: &RunConfig) -> anyhow::Result<Self> {
        Ok(Ctx {
            data: DataDir::open(&cfg.data)?,
            limits: cfg.caps.limits(),
            budget: cfg.caps.budget,
        })
    }
}

/// A malformed argument or input file.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Input(pub String);

fn is_exhausted(e: &anyhow::Error) -> bool {
    let g = |g: &GroebnerError| matches!(g, GroebnerError::ResourcesExhausted { .. });
    let k = |k: &K3Error| match k {
        K3Error::Groebner(x) => g(x),
        K3Error::Budget { .. } => true,
        _ => false,
    };
    let l = |l: &LocalError| match l {
        LocalError::Budget { .. } => true,
        LocalError::K3(x) => k(x),
        _ => false,
    };
    e.chain().any(|c| {
        c.downcast_ref::<GroebnerError>().is_some_and(g)
            || c.downcast_ref::<K3Error>().is_some_and(k)
            || c.downcast_ref::<LocalError>().is_some_and(l)
            || c.downcast_ref::<InterpError>().is_some_and(|i| match i {
                InterpError::Resources { .. } => true,
                InterpError::Groebner(x) => g(x),
                _ => false,
            })
            || c.downcast_ref::<FourfoldError>().is_some_and(|f| match f {
                FourfoldError::Groebner(x) => g(x),
                FourfoldError::Local(x) => l(x),
                _ => false,
            })
    })
}

fn is_input(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<Input>()
            || c.is::<k3bm_core::data::DataError>()
            || c.is::<PolyParseError>()
            || c.is::<std::io::Error>()
            || c.is::<serde_json::Error>()
            || matches!(c.downcast_ref::<K3Error>(), Some(K3Error::Degenerate(_) | K3Error::Precondition(_)))
            || matches!(c.downcast_ref::<LocalError>(), Some(LocalError::Precondition(_)))
            || matches!(c.downcast_ref::<FourfoldError>(), Some(FourfoldError::Precondition(_)))
            || matches!(
                c.downcast_ref::<InterpError>(),
                Some(InterpError::Precondition(_) | InterpError::BadSample { .. })
            )
    })
}

/// Status for an error: resource exhaustion, malformed input, or else a
/// verification mismatch.
pub fn classify(e: &anyhow::Error) -> Status {
    if is_exhausted(e) {
        Status::Exhausted
    } else if is_input(e) {
        Status::InputError
    } else {
        Status::Fail
    }
}

pub fn error_record(check_id: &str, anchor: &str, e: &anyhow::Error) -> Record {
    Record::new(check_id, anchor, classify(e), format!("{e:#}"))
}

/// Runs `f`, turning an error into a single record of the report.
pub fn guarded(command: &str, anchor: &str, f: impl FnOnce() -> anyhow::Result<Report>) -> Report {
    f().unwrap_or_else(|e| {
        let mut r = Report::new(command);
        r.push(error_record(command, anchor, &e));
        r
    })
}

/// Installs the global worker pool; ignored when one is already installed.
pub fn set_workers(n: Option<usize>) {
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
