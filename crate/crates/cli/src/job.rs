//! A validated job: base field, named covers and sheaves, and tasks.

use std::fmt;

use ramislope_core::extensions::CoverSpec;
use ramislope_core::nearby::SheafSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraitDecl {
    pub p: u32,
    /// Order of the coefficient field, chosen automatically when absent.
    pub q: Option<u64>,
    pub precision: Option<i64>,
    pub max_precision: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDecl {
    pub name: String,
    pub spec: CoverSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafDecl {
    pub name: String,
    pub cover: String,
    pub spec: SheafSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Filtration { cover: String },
    Slopes { sheaf: String },
    Nearby { cover: String, sheaf: String },
    Certificate { base_cover: String, sheaf: String },
    Sweep {
        p: u32,
        /// Admissible breaks, in increasing order.
        ms: Vec<u64>,
        /// Breaks of the range divisible by `p`.
        skipped: Vec<u64>,
        sheaf: Option<String>,
    },
    Tameness { sheaf: String, covers: Vec<String> },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Filtration { .. } => "filtration",
            Task::Slopes { .. } => "slopes",
            Task::Nearby { .. } => "nearby",
            Task::Certificate { .. } => "certificate",
            Task::Sweep { .. } => "sweep",
            Task::Tameness { .. } => "tameness",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Filtration { cover } => write!(f, "task filtration cover={cover}"),
            Task::Slopes { sheaf } => write!(f, "task slopes sheaf={sheaf}"),
            Task::Nearby { cover, sheaf } => write!(f, "task nearby cover={cover} sheaf={sheaf}"),
            Task::Certificate { base_cover, sheaf } => {
                write!(f, "task certificate base_cover={base_cover} sheaf={sheaf}")
            }
            Task::Sweep { p, ms, skipped, sheaf } => {
                let lo = ms.iter().chain(skipped).min().copied().unwrap_or(0);
                let hi = ms.iter().chain(skipped).max().copied().unwrap_or(0);
                write!(f, "task sweep p={p} m={lo}..{hi}")?;
                if let Some(s) = sheaf {
                    write!(f, " sheaf={s}")?;
                }
                Ok(())
            }
            Task::Tameness { sheaf, covers } => {
                write!(f, "task tameness sheaf={sheaf} covers={}", covers.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub base: TraitDecl,
    /// Field order actually used: the declared one, or the smallest power
    /// of `p` holding every root of unity the job needs.
    pub q: u64,
    pub covers: Vec<CoverDecl>,
    pub sheaves: Vec<SheafDecl>,
    pub tasks: Vec<Task>,
}

impl Job {
    pub fn cover(&self, name: &str) -> Option<&CoverSpec> {
        self.covers.iter().find(|c| c.name == name).map(|c| &c.spec)
    }

    pub fn sheaf(&self, name: &str) -> Option<&SheafDecl> {
        self.sheaves.iter().find(|s| s.name == name)
    }
}
