//! Three-phase recovery and its variants.

mod amplify;
mod expand;
mod iterate;
mod solve;

pub use amplify::amplify;
pub use expand::{
    dense_recover_from_seed, extract_core, extract_core_with, kucera_topk, recover_from_seed,
};
pub use iterate::{
    check_sample_closure, iterate_once, iterate_once_variant, iterate_with, run_phase1,
    survivors_for_sample, IterationOutcome, Phase1Output, ThresholdRule,
};
pub use solve::{solve, solve_seeded, Algorithm, SolveConfig};

use crate::error::Error;
use crate::graph::VertexSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Basic,
    Variant,
    Dense,
    Kucera,
    Seeded,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Basic => "basic",
            Mode::Variant => "variant",
            Mode::Dense => "dense",
            Mode::Kucera => "kucera",
            Mode::Seeded => "seeded",
        }
    }
}

/// Where a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Schedule,
    Phase1,
    Phase2,
    Phase3,
    Amplify,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Schedule => "schedule",
            Phase::Phase1 => "phase1",
            Phase::Phase2 => "phase2",
            Phase::Phase3 => "phase3",
            Phase::Amplify => "amplify",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub phase: Phase,
    pub error: Error,
}

/// Sizes seen at one level of phase one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// `ñ_i`.
    pub n: usize,
    /// `k̃_i`, only when the planted set was supplied.
    pub k: Option<usize>,
    /// `|S_i|`; absent on the last level.
    pub sample: Option<usize>,
    /// `|S̃_i|` in variant mode.
    pub refined: Option<usize>,
}

impl TraceEntry {
    pub(crate) fn level(n: usize, k: Option<usize>) -> Self {
        TraceEntry {
            n,
            k,
            sample: None,
            refined: None,
        }
    }
}

/// Wall time per phase in milliseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub phase1_ms: f64,
    pub phase2_ms: f64,
    pub phase3_ms: f64,
    pub total_ms: f64,
}

impl Timings {
    pub(crate) fn add(&mut self, other: &Timings) {
        self.phase1_ms += other.phase1_ms;
        self.phase2_ms += other.phase2_ms;
        self.phase3_ms += other.phase3_ms;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryResult {
    pub mode: Mode,
    /// `K*` in original ids; empty when the run failed before phase three.
    pub candidate: VertexSet,
    /// `K̃` in original ids.
    pub core: Option<VertexSet>,
    pub trace: Vec<TraceEntry>,
    /// Planned iterations, when a schedule was built.
    pub t: Option<usize>,
    /// `k_t` used in phase two.
    pub k_t: Option<usize>,
    pub timings: Timings,
    /// `candidate == planted`, only when the planted set was supplied.
    pub success: Option<bool>,
    pub failure: Option<Failure>,
    /// Trials used by amplification.
    pub trials: Option<usize>,
}

impl RecoveryResult {
    pub(crate) fn new(mode: Mode, n: usize) -> Self {
        RecoveryResult {
            mode,
            candidate: VertexSet::empty(n),
            core: None,
            trace: Vec::new(),
            t: None,
            k_t: None,
            timings: Timings::default(),
            success: None,
            failure: None,
            trials: None,
        }
    }

    pub(crate) fn judge(&mut self, planted: Option<&VertexSet>) {
        self.success = planted.map(|p| self.failure.is_none() && self.candidate == *p);
    }

    pub(crate) fn fail(mut self, phase: Phase, error: Error) -> Self {
        self.failure = Some(Failure { phase, error });
        self
    }

    /// True when nothing failed and, if known, the candidate is the planted set.
    pub fn succeeded(&self) -> bool {
        self.failure.is_none() && self.success.unwrap_or(true)
    }

    /// The same result with timings cleared, for comparing runs.
    pub fn without_timings(mut self) -> Self {
        self.timings = Timings::default();
        self
    }
}
