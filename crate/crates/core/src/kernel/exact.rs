//! Exact κ, κ' and κ_Q by branch-and-bound over vertex subsets.
//!
//! Vertices are decided in order of descending degree. Each node carries the
//! chosen set and the running parity vector (XOR of chosen rows), both as a
//! single word, so the hard cap is 64 vertices. The search may fan out over a
//! fixed-length decision prefix; workers share only the incumbent value, and
//! pruning is strict, so the merged (value, lex-smallest witness) answer does
//! not depend on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bitset::mask_lex_less;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::certificate::{Certificate, NonWodCertificate, WodCertificate};

pub const DEFAULT_MAX_ORDER: usize = 30;
pub const HARD_MAX_ORDER: usize = 64;

const PARALLEL_FROM: usize = 18;
const PREFIX_DEPTH: usize = 10;

/// Size guard for the exponential solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_order: usize,
    /// Lifts `max_order` up to [`HARD_MAX_ORDER`].
    pub force: bool,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_order: DEFAULT_MAX_ORDER, force: false }
    }
}

impl ExactLimits {
    pub fn forced() -> Self {
        ExactLimits { force: true, ..Self::default() }
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let limit = if self.force { HARD_MAX_ORDER } else { self.max_order.min(HARD_MAX_ORDER) };
        if g.order() > limit {
            return Err(Error::TooLarge { size: g.order() as u128, limit: limit as u128 });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// maximize |Odd(C)|
    Kappa,
    /// minimize |C ∪ Odd(C)| over odd |C|
    KappaPrime,
}

#[derive(Clone, Copy, Debug)]
struct Best {
    value: usize,
    witness: u64,
    found: bool,
}

impl Best {
    const NONE: Best = Best { value: 0, witness: 0, found: false };

    fn offer(&mut self, goal: Goal, value: usize, witness: u64) {
        let better = !self.found
            || match goal {
                Goal::Kappa => value > self.value,
                Goal::KappaPrime => value < self.value,
            }
            || (value == self.value && mask_lex_less(witness, self.witness));
        if better {
            *self = Best { value, witness, found: true };
        }
    }
}

struct Search<'a> {
    goal: Goal,
    rows: Vec<u64>,
    order: Vec<usize>,
    /// `reach[d]`: neighbours of the vertices `order[d..]`; parity outside it is final.
    reach: Vec<u64>,
    /// `undecided[d]`: the vertices `order[d..]`.
    undecided: Vec<u64>,
    all: u64,
    incumbent: &'a AtomicUsize,
}

/// Lexicographically smallest set containing `chosen` whose other members
/// come from `free`.
fn lex_floor(chosen: u64, free: u64) -> u64 {
    if chosen == 0 {
        return 0;
    }
    let top = 63 - chosen.leading_zeros();
    chosen | (free & ((1u64 << top) - 1))
}

impl Search<'_> {
    fn dfs(&self, depth: usize, chosen: u64, parity: u64, best: &mut Best) {
        let open = self.reach[depth];
        // a tie with the best so far only matters if it could be lexicographically smaller
        let tie_hopeless = || best.found && !mask_lex_less(lex_floor(chosen, self.undecided[depth]), best.witness);
        match self.goal {
            Goal::Kappa => {
                let upper = ((parity | open) & !chosen & self.all).count_ones() as usize;
                if upper < self.incumbent.load(Ordering::Relaxed) || (upper <= best.value && tie_hopeless()) {
                    return;
                }
            }
            Goal::KappaPrime => {
                let settled_odd = (parity & !chosen & !open).count_ones() as usize;
                let lower = chosen.count_ones() as usize + settled_odd;
                if lower > self.incumbent.load(Ordering::Relaxed) || (lower >= best.value && tie_hopeless()) {
                    return;
                }
            }
        }
        if depth == self.order.len() {
            self.leaf(chosen, parity, best);
            return;
        }
        let v = self.order[depth];
        let with = (chosen | 1 << v, parity ^ self.rows[v]);
        match self.goal {
            Goal::Kappa => {
                self.dfs(depth + 1, with.0, with.1, best);
                self.dfs(depth + 1, chosen, parity, best);
            }
            Goal::KappaPrime => {
                self.dfs(depth + 1, chosen, parity, best);
                self.dfs(depth + 1, with.0, with.1, best);
            }
        }
    }

    fn leaf(&self, chosen: u64, parity: u64, best: &mut Best) {
        match self.goal {
            Goal::Kappa => {
                let value = (parity & !chosen).count_ones() as usize;
                best.offer(self.goal, value, chosen);
                self.incumbent.fetch_max(value, Ordering::Relaxed);
            }
            Goal::KappaPrime => {
                if chosen.count_ones() % 2 == 1 {
                    let value = (chosen | parity).count_ones() as usize;
                    best.offer(self.goal, value, chosen);
                    self.incumbent.fetch_min(value, Ordering::Relaxed);
                }
            }
        }
    }
}

fn run(g: &Graph, goal: Goal) -> Best {
    let n = g.order();
    let rows: Vec<u64> = (0..n).map(|v| g.row_mask(v)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut reach = vec![0u64; n + 1];
    let mut undecided = vec![0u64; n + 1];
    for d in (0..n).rev() {
        let v = order[d];
        reach[d] = reach[d + 1] | rows[v];
        undecided[d] = undecided[d + 1] | 1 << v;
    }
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    // any single vertex realizes these, so they are safe starting incumbents
    let seed = match goal {
        Goal::Kappa => g.max_degree(),
        Goal::KappaPrime => (0..n).map(|v| g.degree(v) + 1).min().unwrap_or(1),
    };
    let incumbent = AtomicUsize::new(seed);
    let search = Search { goal, rows, order, reach, undecided, all, incumbent: &incumbent };

    if n < PARALLEL_FROM {
        let mut best = Best::NONE;
        search.dfs(0, 0, 0, &mut best);
        return best;
    }
    let depth = PREFIX_DEPTH.min(n);
    let results: Vec<Best> = (0u64..1 << depth)
        .into_par_iter()
        .map(|prefix| {
            let (mut chosen, mut parity) = (0u64, 0u64);
            for d in 0..depth {
                if prefix >> d & 1 == 1 {
                    let v = search.order[d];
                    chosen |= 1 << v;
                    parity ^= search.rows[v];
                }
            }
            let mut best = Best::NONE;
            search.dfs(depth, chosen, parity, &mut best);
            best
        })
        .collect();
    let mut best = Best::NONE;
    for b in results.into_iter().filter(|b| b.found) {
        best.offer(goal, b.value, b.witness);
    }
    best
}

/// `κ(G) = max_C |Odd(C)|`, with the lexicographically smallest maximizer.
pub fn kappa(g: &Graph) -> Result<WodCertificate> {
    kappa_with(g, ExactLimits::default())
}

pub fn kappa_with(g: &Graph, limits: ExactLimits) -> Result<WodCertificate> {
    limits.check(g)?;
    let best = run(g, Goal::Kappa);
    debug_assert!(best.found);
    Ok(WodCertificate::from_mask(g, best.witness))
}

/// `κ'(G) = min_{|C| odd} |C ∪ Odd(C)|`, with the lexicographically smallest minimizer.
pub fn kappa_prime(g: &Graph) -> Result<NonWodCertificate> {
    kappa_prime_with(g, ExactLimits::default())
}

pub fn kappa_prime_with(g: &Graph, limits: ExactLimits) -> Result<NonWodCertificate> {
    limits.check(g)?;
    let best = run(g, Goal::KappaPrime);
    debug_assert!(best.found);
    Ok(NonWodCertificate::from_mask(g, best.witness))
}

/// `κ_Q(G) = max(κ(G), n − κ'(G))` with the certificate of the winning side
/// (the WOD side on ties).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumThreshold {
    pub value: usize,
    pub evidence: Certificate,
}

pub fn kappa_q(g: &Graph) -> Result<QuantumThreshold> {
    kappa_q_with(g, ExactLimits::default())
}

pub fn kappa_q_with(g: &Graph, limits: ExactLimits) -> Result<QuantumThreshold> {
    let k = kappa_with(g, limits)?;
    let kp = kappa_prime_with(g, limits)?;
    let n = g.order();
    Ok(if k.value >= n - kp.value {
        QuantumThreshold { value: k.value, evidence: k.into() }
    } else {
        QuantumThreshold { value: n - kp.value, evidence: kp.into() }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Definition-level oracle: every subset, per-vertex neighbour counting.
    fn oracle(g: &Graph) -> (usize, Vec<usize>, usize, Vec<usize>) {
        let n = g.order();
        let mut kbest: Option<(usize, Vec<usize>)> = None;
        let mut pbest: Option<(usize, Vec<usize>)> = None;
        for mask in 0u32..1 << n {
            let c: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let odd = (0..n)
                .filter(|v| !c.contains(v))
                .filter(|&v| c.iter().filter(|&&u| g.has_edge(u, v)).count() % 2 == 1)
                .count();
            if kbest.as_ref().is_none_or(|(b, w)| odd > *b || (odd == *b && c < *w)) {
                kbest = Some((odd, c.clone()));
            }
            if c.len() % 2 == 1 {
                let cl = odd + c.len();
                if pbest.as_ref().is_none_or(|(b, w)| cl < *b || (cl == *b && c < *w)) {
                    pbest = Some((cl, c));
                }
            }
        }
        let (k, kw) = kbest.unwrap();
        let (p, pw) = pbest.unwrap();
        (k, kw, p, pw)
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&Graph::complete(4).unwrap()).unwrap().value, 3);
        assert_eq!(kappa(&Graph::empty(3).unwrap()).unwrap().value, 0);
        assert_eq!(kappa(&Graph::cycle(4).unwrap()).unwrap().value, 2);
        let star = kappa(&Graph::star(3).unwrap()).unwrap();
        assert_eq!((star.value, star.witness.clone()), (3, vec![0]));
        // lex-smallest maximizer of K4 is the single vertex 0
        assert_eq!(kappa(&Graph::complete(4).unwrap()).unwrap().witness, vec![0]);
    }

    #[test]
    fn kappa_prime_examples() {
        let star = kappa_prime(&Graph::star(3).unwrap()).unwrap();
        assert_eq!((star.value, star.witness.clone(), star.closure.clone()), (2, vec![1], vec![0, 1]));
        assert_eq!(kappa_prime(&Graph::empty(1).unwrap()).unwrap().value, 1);
        assert_eq!(kappa_prime(&Graph::complete(3).unwrap()).unwrap().value, 3);
        assert_eq!(kappa_prime(&Graph::cycle(4).unwrap()).unwrap().value, 3);
    }

    #[test]
    fn kappa_q_examples() {
        let c4 = kappa_q(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(c4.value, 2);
        assert!(matches!(c4.evidence, Certificate::Wod(_)));
        assert_eq!(kappa_q(&Graph::complete(4).unwrap()).unwrap().value, 3);
        let e5 = kappa_q(&Graph::empty(5).unwrap()).unwrap();
        assert_eq!(e5.value, 4);
        assert!(matches!(e5.evidence, Certificate::NonWod(_)));
        // odd order: κ_Q = ⌊n/2⌋ is attained
        assert_eq!(kappa_q(&Graph::cycle(5).unwrap()).unwrap().value, 2);
        assert_eq!(kappa_q(&Graph::empty(1).unwrap()).unwrap().value, 0);
    }

    #[test]
    fn matches_oracle_on_all_graphs_up_to_five() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::from_edge_list(n, &edges).unwrap();
                let (k, kw, p, pw) = oracle(&g);
                let kc = kappa(&g).unwrap();
                let pc = kappa_prime(&g).unwrap();
                assert_eq!((kc.value, kc.witness), (k, kw), "{g:?}");
                assert_eq!((pc.value, pc.witness), (p, pw), "{g:?}");
            }
        }
    }

    #[test]
    fn parallel_path_matches_serial_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let n = 18;
            let edges: Vec<_> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.3)).collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let (k, kw, p, pw) = oracle(&g);
            let kc = kappa(&g).unwrap();
            let pc = kappa_prime(&g).unwrap();
            assert_eq!((kc.value, kc.witness), (k, kw));
            assert_eq!((pc.value, pc.witness), (p, pw));
        }
    }

    #[test]
    fn guard() {
        let g = Graph::empty(31).unwrap();
        assert!(matches!(kappa(&g), Err(Error::TooLarge { .. })));
        assert_eq!(kappa_with(&g, ExactLimits::forced()).unwrap().value, 0);
        let big = Graph::empty(65).unwrap();
        assert!(kappa_with(&big, ExactLimits::forced()).is_err());
    }

    #[test]
    fn full_word_order() {
        let g = Graph::star(63).unwrap();
        assert_eq!(kappa_with(&g, ExactLimits::forced()).unwrap().value, 63);
        assert_eq!(kappa_prime_with(&g, ExactLimits::forced()).unwrap().value, 2);
    }
}
