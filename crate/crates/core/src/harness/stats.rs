use super::run::TrialRecord;
use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials` at quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: usize,
    pub n: usize,
    pub k: usize,
    pub c: f64,
    pub p: f64,
    pub q: f64,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

/// Per-cell success counts, from rows alone.
pub fn summarize(records: &[TrialRecord]) -> Vec<CellSummary> {
    let mut out: Vec<CellSummary> = Vec::new();
    for r in records {
        let pos = match out.iter().position(|s| s.cell == r.cell) {
            Some(i) => i,
            None => {
                out.push(CellSummary {
                    cell: r.cell,
                    n: r.n,
                    k: r.k,
                    c: r.c,
                    p: r.p,
                    q: r.q,
                    trials: 0,
                    successes: 0,
                    rate: 0.0,
                    wilson_lo: 0.0,
                    wilson_hi: 1.0,
                });
                out.len() - 1
            }
        };
        out[pos].trials += 1;
        out[pos].successes += usize::from(r.success);
    }
    for s in &mut out {
        s.rate = s.successes as f64 / s.trials as f64;
        (s.wilson_lo, s.wilson_hi) = wilson_interval(s.successes, s.trials, Z95);
    }
    out.sort_by_key(|s| s.cell);
    out
}
