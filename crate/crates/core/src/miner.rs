//! Random search for graphs with small quantum threshold.
//!
//! Trial `t` under seed `s` draws its graph from a ChaCha8 stream keyed by
//! `(s, t)`, so results do not depend on thread count or scheduling.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{kappa_q_with, Certificate, ExactLimits};

pub const DEFAULT_RATIO: (u64, u64) = (811, 1000);

/// Parses `a/b` or a bare integer.
pub fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let bad = || Error::Parse { line: 0, message: format!("`{text}` is not a ratio `a/b`") };
    let (a, b) = text.split_once('/').unwrap_or((text, "1"));
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if b == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(a, b))
}

/// Each edge present independently with probability `edge_prob`, drawn from
/// ChaCha8 seeded with `seed` on stream `trial`.
pub fn random_graph(n: usize, edge_prob: Ratio<u64>, seed: u64, trial: u64) -> Result<Graph> {
    let (num, den) = (*edge_prob.numer(), *edge_prob.denom());
    if num > den || den > u32::MAX as u64 {
        return Err(Error::ParameterOutOfRange {
            value: num as usize,
            reason: format!("edge probability {num}/{den} must lie in [0, 1] with a 32-bit denominator"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num as u32, den as u32) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningRecord {
    pub graph: String,
    pub n: usize,
    pub kappa_q: usize,
    /// `kappa_q / n` in lowest terms, written `a/b`.
    pub ratio: String,
    pub evidence: Certificate,
    pub seed: u64,
    pub trial: u64,
}

#[derive(Debug, Clone)]
pub struct MiningConfig {
    pub n: usize,
    pub ratio: Ratio<u64>,
    pub trials: u64,
    pub seed: u64,
    pub edge_prob: Ratio<u64>,
    pub limits: ExactLimits,
}

impl MiningConfig {
    pub fn new(n: usize, trials: u64, seed: u64) -> MiningConfig {
        MiningConfig {
            n,
            ratio: Ratio::new(DEFAULT_RATIO.0, DEFAULT_RATIO.1),
            trials,
            seed,
            edge_prob: Ratio::new(1, 2),
            limits: ExactLimits::default(),
        }
    }

    /// `⌊ratio · n⌋`.
    pub fn target(&self) -> usize {
        (self.ratio * Ratio::from_integer(self.n as u64)).floor().to_integer() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiningSummary {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Configured target ratio.
    pub ratio: String,
    pub target: usize,
    /// Trial count per observed `κ_Q` value.
    pub histogram: BTreeMap<usize, u64>,
    /// Smallest `κ_Q` seen; ties go to the lowest trial.
    pub best: Option<MiningRecord>,
    pub hits: u64,
    pub hit_fraction: f64,
}

#[derive(Debug, Clone)]
pub struct MiningRun {
    /// Records with `κ_Q <= target`, ordered by trial.
    pub hits: Vec<MiningRecord>,
    pub summary: MiningSummary,
}

fn ratio_text(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn mine(cfg: &MiningConfig) -> Result<MiningRun> {
    if cfg.trials == 0 {
        return Err(Error::ParameterOutOfRange { value: 0, reason: "at least one trial is required".into() });
    }
    cfg.limits.check(&Graph::empty(cfg.n)?)?;
    let records: Vec<MiningRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let g = random_graph(cfg.n, cfg.edge_prob, cfg.seed, trial)?;
            let q = kappa_q_with(&g, cfg.limits)?;
            Ok(MiningRecord {
                graph: g.to_text(),
                n: cfg.n,
                kappa_q: q.value,
                ratio: ratio_text(&Ratio::new(q.value as u64, cfg.n as u64)),
                evidence: q.evidence,
                seed: cfg.seed,
                trial,
            })
        })
        .collect::<Result<_>>()?;
    let target = cfg.target();
    let mut histogram = BTreeMap::new();
    for r in &records {
        *histogram.entry(r.kappa_q).or_insert(0u64) += 1;
    }
    let best = records.iter().min_by_key(|r| (r.kappa_q, r.trial)).cloned();
    let hits: Vec<MiningRecord> = records.into_iter().filter(|r| r.kappa_q <= target).collect();
    let hit_count = hits.len() as u64;
    let summary = MiningSummary {
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        ratio: ratio_text(&cfg.ratio),
        target,
        histogram,
        best,
        hits: hit_count,
        hit_fraction: hit_count as f64 / cfg.trials as f64,
    };
    Ok(MiningRun { hits, summary })
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line<'a> {
    Header { n: usize, trials: u64, seed: u64, ratio: String, edge_prob: String, target: usize },
    Record(&'a MiningRecord),
    Summary(&'a MiningSummary),
}

/// JSON Lines: a header, one `record` per hit, then the summary.
pub fn write_jsonl<W: Write>(cfg: &MiningConfig, run: &MiningRun, mut out: W) -> std::io::Result<()> {
    let header = Line::Header {
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        ratio: ratio_text(&cfg.ratio),
        edge_prob: format!("{}/{}", cfg.edge_prob.numer(), cfg.edge_prob.denom()),
        target: cfg.target(),
    };
    let lines = std::iter::once(header)
        .chain(run.hits.iter().map(Line::Record))
        .chain(std::iter::once(Line::Summary(&run.summary)));
    for line in lines {
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
