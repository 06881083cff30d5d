//! Cross-validation of the reductions on small instances.
//!
//! For every source instance the source question is decided with an exact
//! solver and the target question with a size-bounded one, independently. A
//! disagreement is shrunk (vertex deletions first, then edge deletions, in
//! index order, repeated until nothing more can go) and reported.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{
    kappa, kappa_at_least_bounded, kappa_prime, kappa_prime_at_most, kappa_q, kappa_q_at_least_bounded, subsets_up_to,
};

use super::gadgets::{
    reduce_kq_to_oddset_with, reduce_nonwod_to_bipartite, reduce_nonwod_to_kq, reduce_oddset_to_wod,
    reduce_wod_to_nonwod, KqOddsetWiring,
};
use super::oddset::{solve_oddset, OddsetInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    OddsetToWod,
    WodToNonwod,
    NonwodToBipartite,
    NonwodToKq,
    KqToOddset,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 5] = [
        ReductionKind::OddsetToWod,
        ReductionKind::WodToNonwod,
        ReductionKind::NonwodToBipartite,
        ReductionKind::NonwodToKq,
        ReductionKind::KqToOddset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::OddsetToWod => "oddset-to-wod",
            ReductionKind::WodToNonwod => "wod-to-nonwod",
            ReductionKind::NonwodToBipartite => "nonwod-to-bipartite",
            ReductionKind::NonwodToKq => "nonwod-to-kq",
            ReductionKind::KqToOddset => "kq-to-oddset",
        }
    }

    /// Whether the source parameter satisfies the builder's precondition.
    pub fn admits(self, k: usize) -> bool {
        !(self == ReductionKind::NonwodToBipartite && k == 0)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnknownReduction(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceInstance {
    Graph { graph: Graph, k: usize },
    Oddset(OddsetInstance),
}

impl SourceInstance {
    pub fn k(&self) -> usize {
        match self {
            SourceInstance::Graph { k, .. } => *k,
            SourceInstance::Oddset(inst) => inst.k,
        }
    }

    /// Graph text format; Oddset instances carry their `# R:` line.
    pub fn to_text(&self) -> String {
        match self {
            SourceInstance::Graph { graph, .. } => graph.to_text(),
            SourceInstance::Oddset(inst) => inst.to_text(),
        }
    }

    fn order(&self) -> usize {
        match self {
            SourceInstance::Graph { graph, .. } => graph.order(),
            SourceInstance::Oddset(inst) => inst.graph.order(),
        }
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            SourceInstance::Graph { graph, .. } => graph.edges(),
            SourceInstance::Oddset(inst) => inst.graph.edges(),
        }
    }

    fn without_vertex(&self, v: usize) -> Option<SourceInstance> {
        match self {
            SourceInstance::Graph { graph, k } => {
                graph.remove_vertex(v).ok().map(|(g, _)| SourceInstance::Graph { graph: g, k: *k })
            }
            SourceInstance::Oddset(inst) => inst.remove_vertex(v).ok().map(SourceInstance::Oddset),
        }
    }

    fn without_edge(&self, u: usize, v: usize) -> SourceInstance {
        match self {
            SourceInstance::Graph { graph, k } => SourceInstance::Graph { graph: graph.remove_edge(u, v), k: *k },
            SourceInstance::Oddset(inst) => SourceInstance::Oddset(inst.remove_edge(u, v)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HarnessConfig {
    /// Maximum number of candidate subsets a target-side search may visit.
    pub budget: u128,
    pub kq_wiring: KqOddsetWiring,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { budget: 1_000_000_000, kq_wiring: KqOddsetWiring::Paired }
    }
}

fn over_budget(cost: u128, budget: u128) -> Result<()> {
    if cost > budget {
        Err(Error::TooLarge { size: cost, limit: budget })
    } else {
        Ok(())
    }
}

fn largest_odd_at_most(t: usize) -> usize {
    if t % 2 == 1 {
        t
    } else {
        t.saturating_sub(1)
    }
}

fn wrong_source(kind: ReductionKind) -> Error {
    Error::ParameterOutOfRange { value: 0, reason: format!("{kind} expects a different source instance") }
}

impl ReductionKind {
    /// Decides the source question exactly.
    pub fn source_positive(self, src: &SourceInstance) -> Result<bool> {
        match (self, src) {
            (ReductionKind::OddsetToWod, SourceInstance::Oddset(inst)) => Ok(solve_oddset(inst)?.is_some()),
            (ReductionKind::WodToNonwod, SourceInstance::Graph { graph, k }) => {
                Ok(kappa(graph)?.value + k >= graph.order())
            }
            (ReductionKind::NonwodToBipartite | ReductionKind::NonwodToKq, SourceInstance::Graph { graph, k }) => {
                Ok(kappa_prime(graph)?.value <= *k)
            }
            (ReductionKind::KqToOddset, SourceInstance::Graph { graph, k }) => {
                Ok(kappa_q(graph)?.value + k >= graph.order())
            }
            _ => Err(wrong_source(self)),
        }
    }

    /// Builds the gadget and decides the target question with a size-bounded solver.
    pub fn target_positive(self, src: &SourceInstance, cfg: &HarnessConfig) -> Result<bool> {
        match (self, src) {
            (ReductionKind::OddsetToWod, SourceInstance::Oddset(inst)) => {
                let out = reduce_oddset_to_wod(inst)?;
                over_budget(subsets_up_to(out.graph.order(), out.parameter), cfg.budget)?;
                Ok(kappa_at_least_bounded(&out.graph, out.threshold).is_some())
            }
            (ReductionKind::WodToNonwod, SourceInstance::Graph { graph, k }) => {
                let out = reduce_wod_to_nonwod(graph, *k)?;
                over_budget(subsets_up_to(out.graph.order(), largest_odd_at_most(out.threshold)), cfg.budget)?;
                Ok(kappa_prime_at_most(&out.graph, out.threshold).is_some())
            }
            (ReductionKind::NonwodToBipartite, SourceInstance::Graph { graph, k }) => {
                let out = reduce_nonwod_to_bipartite(graph, *k)?;
                over_budget(subsets_up_to(out.graph.order(), largest_odd_at_most(out.threshold)), cfg.budget)?;
                Ok(kappa_prime_at_most(&out.graph, out.threshold).is_some())
            }
            (ReductionKind::NonwodToKq, SourceInstance::Graph { graph, k }) => {
                let out = reduce_nonwod_to_kq(graph, *k)?;
                let slack = out.graph.order() - out.threshold;
                over_budget(subsets_up_to(out.graph.order(), slack).saturating_mul(2), cfg.budget)?;
                Ok(kappa_q_at_least_bounded(&out.graph, out.threshold).is_some())
            }
            (ReductionKind::KqToOddset, SourceInstance::Graph { graph, k }) => {
                let out = reduce_kq_to_oddset_with(graph, *k, cfg.kq_wiring)?;
                let inst = out.to_oddset()?;
                over_budget(subsets_up_to(inst.side_r.len(), inst.k), cfg.budget)?;
                Ok(solve_oddset(&inst)?.is_some())
            }
            _ => Err(wrong_source(self)),
        }
    }

    fn verdicts(self, src: &SourceInstance, cfg: &HarnessConfig) -> Result<(bool, bool)> {
        Ok((self.source_positive(src)?, self.target_positive(src, cfg)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceVerdict {
    pub index: usize,
    pub source_verdict: bool,
    pub target_verdict: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub index: usize,
    pub graph: String,
    pub k: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    /// Minimized source instance in the graph text format.
    pub graph: String,
    pub k: usize,
    pub source_verdict: bool,
    pub target_verdict: bool,
    /// The instance as originally supplied.
    pub original: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub reduction: String,
    pub total: usize,
    pub agreed: usize,
    pub skipped: Vec<Skipped>,
    pub counterexamples: Vec<Counterexample>,
    pub verdicts: Vec<InstanceVerdict>,
}

impl EquivalenceReport {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Outcome {
    Decided(bool, bool),
    Skipped(String),
}

/// Runs both sides of `kind` on every instance. The report is ordered by
/// instance index regardless of how work was scheduled.
pub fn verify_reduction(kind: ReductionKind, instances: &[SourceInstance], cfg: &HarnessConfig) -> EquivalenceReport {
    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|src| match kind.verdicts(src, cfg) {
            Ok((s, t)) => Outcome::Decided(s, t),
            Err(e) => Outcome::Skipped(e.to_string()),
        })
        .collect();
    let mut report = EquivalenceReport {
        reduction: kind.name().to_string(),
        total: instances.len(),
        agreed: 0,
        skipped: Vec::new(),
        counterexamples: Vec::new(),
        verdicts: Vec::new(),
    };
    for (index, (src, outcome)) in instances.iter().zip(outcomes).enumerate() {
        match outcome {
            Outcome::Skipped(reason) => {
                report.skipped.push(Skipped { index, graph: src.to_text(), k: src.k(), reason });
            }
            Outcome::Decided(s, t) => {
                report.verdicts.push(InstanceVerdict { index, source_verdict: s, target_verdict: t, agree: s == t });
                if s == t {
                    report.agreed += 1;
                } else {
                    let small = minimize(kind, src, cfg);
                    let (s2, t2) = kind.verdicts(&small, cfg).unwrap_or((s, t));
                    report.counterexamples.push(Counterexample {
                        index,
                        graph: small.to_text(),
                        k: small.k(),
                        source_verdict: s2,
                        target_verdict: t2,
                        original: src.to_text(),
                    });
                }
            }
        }
    }
    report
}

fn disagrees(kind: ReductionKind, src: &SourceInstance, cfg: &HarnessConfig) -> bool {
    matches!(kind.verdicts(src, cfg), Ok((s, t)) if s != t)
}

/// Greedy shrinking of a disagreeing instance.
pub fn minimize(kind: ReductionKind, src: &SourceInstance, cfg: &HarnessConfig) -> SourceInstance {
    let mut current = src.clone();
    'shrink: loop {
        if current.order() > 1 {
            for v in 0..current.order() {
                if let Some(candidate) = current.without_vertex(v) {
                    if disagrees(kind, &candidate, cfg) {
                        current = candidate;
                        continue 'shrink;
                    }
                }
            }
        }
        for (u, v) in current.edges() {
            let candidate = current.without_edge(u, v);
            if disagrees(kind, &candidate, cfg) {
                current = candidate;
                continue 'shrink;
            }
        }
        return current;
    }
}

/// Instance suite: every labeled graph on `1..=max_n` vertices (every
/// bipartite split and cross-edge set for Oddset sources), plus `random`
/// seeded graphs on 5 or 6 vertices, each paired with every admissible
/// `k <= max_k`.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub max_k: usize,
    pub random: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_n: 4, max_k: 2, random: 200, seed: 0 }
    }
}

pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edge_list(n, &edges).expect("valid")
    })
}

/// Every Oddset graph with `R = 0..r`, `B = r..r+b`.
fn all_bipartite(r: usize, b: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|u| (r..r + b).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edge_list(r + b, &edges).expect("valid")
    })
}

pub fn enumerate_suite(kind: ReductionKind, cfg: &SuiteConfig) -> Vec<SourceInstance> {
    let ks: Vec<usize> = (0..=cfg.max_k).filter(|&k| kind.admits(k)).collect();
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if kind == ReductionKind::OddsetToWod {
        for n in 1..=cfg.max_n {
            for r in 0..=n {
                for g in all_bipartite(r, n - r) {
                    for &k in &ks {
                        let r_side: Vec<usize> = (0..r).collect();
                        out.push(SourceInstance::Oddset(OddsetInstance::from_sides(g.clone(), &r_side, k).unwrap()));
                    }
                }
            }
        }
        for _ in 0..cfg.random {
            let n = rng.gen_range(5..=6);
            let r = rng.gen_range(1..n);
            let edges: Vec<_> =
                (0..r).flat_map(|u| (r..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let r_side: Vec<usize> = (0..r).collect();
            for &k in &ks {
                out.push(SourceInstance::Oddset(OddsetInstance::from_sides(g.clone(), &r_side, k).unwrap()));
            }
        }
        return out;
    }
    for n in 1..=cfg.max_n {
        for g in all_graphs(n) {
            for &k in &ks {
                out.push(SourceInstance::Graph { graph: g.clone(), k });
            }
        }
    }
    for _ in 0..cfg.random {
        let n = rng.gen_range(5..=6);
        let edges: Vec<_> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>();
        let g = Graph::from_edge_list(n, &edges).unwrap();
        for &k in &ks {
            out.push(SourceInstance::Graph { graph: g.clone(), k });
        }
    }
    out
}
