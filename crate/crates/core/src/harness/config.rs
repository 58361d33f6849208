use crate::analytics::{DenseParams, SchedulePolicy};
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentMode {
    Basic,
    Variant,
    Dense,
    Kucera,
    /// Phase three from a random subset of the planted set.
    Seeded,
    /// Basic solve inside common neighbourhoods of random vertices.
    Amplify,
}

impl ExperimentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentMode::Basic => "basic",
            ExperimentMode::Variant => "variant",
            ExperimentMode::Dense => "dense",
            ExperimentMode::Kucera => "kucera",
            ExperimentMode::Seeded => "seeded",
            ExperimentMode::Amplify => "amplify",
        }
    }

    pub(crate) fn is_tunable(self) -> bool {
        !matches!(self, ExperimentMode::Kucera | ExperimentMode::Seeded)
    }
}

/// Cartesian grid of instances. Exactly one of `c` and `k` is non-empty;
/// with `c`, the clique size is `round(c·√n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<usize>,
    #[serde(default = "default_p")]
    pub p: Vec<f64>,
    #[serde(default = "default_q")]
    pub q: Vec<f64>,
}

fn default_p() -> Vec<f64> {
    vec![0.5]
}

fn default_q() -> Vec<f64> {
    vec![1.0]
}

impl Grid {
    pub fn with_c(n: Vec<usize>, c: Vec<f64>) -> Self {
        Grid {
            n,
            c,
            k: vec![],
            p: default_p(),
            q: default_q(),
        }
    }

    pub fn with_k(n: Vec<usize>, k: Vec<usize>) -> Self {
        Grid {
            n,
            c: vec![],
            k,
            p: default_p(),
            q: default_q(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum ParamsSource {
    Explicit {
        alpha: f64,
        beta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eta: Option<f64>,
    },
    /// Tune per cell by minimising the predicted failure at that size.
    Auto,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplifySettings {
    pub r: usize,
    pub max_trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: ExperimentMode,
    pub grid: Grid,
    #[serde(default = "auto")]
    pub params: ParamsSource,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Seed size for `seeded`; defaults to `⌈log₂ n⌉ + 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplify: Option<AmplifySettings>,
    #[serde(default)]
    pub policy: SchedulePolicy,
    /// Write wall times. Off, the timing columns stay empty and output
    /// files are reproducible byte for byte.
    #[serde(default = "yes")]
    pub timings: bool,
}

fn auto() -> ParamsSource {
    ParamsSource::Auto
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

/// One point of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub k: usize,
    pub c: f64,
    pub p: f64,
    pub q: f64,
}

impl Cell {
    pub fn dense(&self) -> DenseParams {
        DenseParams {
            p: self.p,
            q: self.q,
        }
    }
}

impl ExperimentConfig {
    pub fn new(mode: ExperimentMode, grid: Grid, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            mode,
            grid,
            params: ParamsSource::Auto,
            trials,
            master_seed,
            workers: 1,
            output: None,
            format: OutputFormat::Csv,
            seed_size: None,
            amplify: None,
            policy: SchedulePolicy::default(),
            timings: true,
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: ExperimentConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.workers == 0 {
            return invalid("workers must be at least 1");
        }
        let g = &self.grid;
        if g.n.is_empty() || g.p.is_empty() || g.q.is_empty() {
            return invalid("grid has an empty axis");
        }
        if g.c.is_empty() == g.k.is_empty() {
            return invalid("grid needs exactly one of c and k");
        }
        if self.mode == ExperimentMode::Amplify {
            match self.amplify {
                Some(a) if a.r >= 1 && a.max_trials >= 1 => {}
                _ => return invalid("amplify mode needs r >= 1 and max_trials >= 1"),
            }
        }
        if self.mode == ExperimentMode::Variant {
            if let ParamsSource::Explicit { eta: None, .. } = self.params {
                return invalid("variant mode needs eta");
            }
        }
        for cell in self.cells()? {
            if cell.n < 2 || cell.k == 0 || cell.k > cell.n {
                return invalid(format!(
                    "cell {} has n = {}, k = {}",
                    cell.index, cell.n, cell.k
                ));
            }
            if !(cell.p >= 0.0 && cell.p < cell.q && cell.q <= 1.0) {
                return invalid(format!("cell {} needs 0 <= p < q <= 1", cell.index));
            }
            if self.mode == ExperimentMode::Dense {
                cell.dense().validate()?;
            }
        }
        Ok(())
    }

    /// Cells in canonical order: `n`, then size, then `p`, then `q`.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let g = &self.grid;
        let mut cells = Vec::new();
        for &n in &g.n {
            let root = (n as f64).sqrt();
            let sizes: Vec<(usize, f64)> = if g.k.is_empty() {
                g.c.iter()
                    .map(|&c| {
                        if !(c.is_finite() && c > 0.0) {
                            return invalid(format!("c = {c} must be positive"));
                        }
                        Ok(((c * root + 0.5).floor() as usize, c))
                    })
                    .collect::<Result<_>>()?
            } else {
                g.k.iter().map(|&k| (k, k as f64 / root)).collect()
            };
            for &(k, c) in &sizes {
                for &p in &g.p {
                    for &q in &g.q {
                        cells.push(Cell {
                            index: cells.len(),
                            n,
                            k,
                            c,
                            p,
                            q,
                        });
                    }
                }
            }
        }
        Ok(cells)
    }
}
