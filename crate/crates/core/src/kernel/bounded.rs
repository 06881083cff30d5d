//! Size-bounded searches for large graphs.
//!
//! A certificate for `κ'(G) <= t` has `|C| <= t`, and one for `κ(G) >= n − s`
//! has `|C| <= s`, so these enumerate only small witnesses. Subsets are
//! visited depth-first in increasing index order, which is lexicographic
//! order on sorted member sequences; the first hit is the lex-smallest one.

use crate::bitset::VertexSet;
use crate::graph::Graph;

use super::certificate::{Certificate, NonWodCertificate, WodCertificate};

/// `Σ_{i <= k} C(n, i)`, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(term);
        term = term.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Depth-first walk over subsets of `candidates` of size `<= max_size`.
///
/// `visit` sees each subset (ascending) with the XOR of its members' rows and
/// returns `true` to stop.
pub(crate) struct SubsetWalk<'a> {
    g: &'a Graph,
    candidates: &'a [usize],
    max_size: usize,
    stack: Vec<Vec<u64>>,
    chosen: Vec<usize>,
}

impl<'a> SubsetWalk<'a> {
    pub(crate) fn new(g: &'a Graph, candidates: &'a [usize], max_size: usize) -> Self {
        let max_size = max_size.min(candidates.len());
        SubsetWalk {
            g,
            candidates,
            max_size,
            stack: vec![vec![0u64; g.words()]; max_size + 1],
            chosen: Vec::with_capacity(max_size),
        }
    }

    pub(crate) fn run(mut self, visit: &mut impl FnMut(&[usize], &[u64]) -> bool) -> Option<Vec<usize>> {
        if self.descend(0, visit) {
            Some(self.chosen)
        } else {
            None
        }
    }

    fn descend(&mut self, from: usize, visit: &mut impl FnMut(&[usize], &[u64]) -> bool) -> bool {
        let depth = self.chosen.len();
        if visit(&self.chosen, &self.stack[depth]) {
            return true;
        }
        if depth == self.max_size {
            return false;
        }
        for i in from..self.candidates.len() {
            let v = self.candidates[i];
            let (lo, hi) = self.stack.split_at_mut(depth + 1);
            for ((dst, src), row) in hi[0].iter_mut().zip(&lo[depth]).zip(self.g.neighbors(v).words()) {
                *dst = src ^ row;
            }
            self.chosen.push(v);
            if self.descend(i + 1, visit) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn bit(words: &[u64], v: usize) -> bool {
    words[v / 64] >> (v % 64) & 1 == 1
}

/// `|Odd(C)|` from the parity vector of `C`.
fn odd_count(parity: &[u64], chosen: &[usize]) -> usize {
    popcount(parity) - chosen.iter().filter(|&&v| bit(parity, v)).count()
}

fn to_set(g: &Graph, members: Vec<usize>) -> VertexSet {
    VertexSet::from_indices(g.order(), members).expect("members within order")
}

/// A non-WOD certificate of value `<= t` if `κ'(G) <= t`, else `None`.
/// No minimality promise.
pub fn kappa_prime_at_most(g: &Graph, t: usize) -> Option<NonWodCertificate> {
    let n = g.order();
    if t == 0 {
        return None;
    }
    if t >= n {
        return NonWodCertificate::from_witness(g, &to_set(g, vec![0])).ok();
    }
    let all: Vec<usize> = (0..n).collect();
    let largest_odd = if t % 2 == 1 { t } else { t - 1 };
    let hit = SubsetWalk::new(g, &all, largest_odd)
        .run(&mut |chosen, parity| chosen.len() % 2 == 1 && odd_count(parity, chosen) + chosen.len() <= t)?;
    NonWodCertificate::from_witness(g, &to_set(g, hit)).ok()
}

/// A WOD certificate of value `>= target` if `κ(G) >= target`, else `None`.
/// Cost grows with `n − target`.
pub fn kappa_at_least_bounded(g: &Graph, target: usize) -> Option<WodCertificate> {
    let n = g.order();
    if target == 0 {
        return WodCertificate::from_witness(g, &VertexSet::new(n)).ok();
    }
    if target >= n {
        return None;
    }
    let all: Vec<usize> = (0..n).collect();
    let hit = SubsetWalk::new(g, &all, n - target).run(&mut |chosen, parity| odd_count(parity, chosen) >= target)?;
    WodCertificate::from_witness(g, &to_set(g, hit)).ok()
}

/// Decides `κ_Q(G) >= target` through the two size-bounded searches.
pub fn kappa_q_at_least_bounded(g: &Graph, target: usize) -> Option<Certificate> {
    let n = g.order();
    if let Some(c) = kappa_at_least_bounded(g, target) {
        return Some(c.into());
    }
    if target > n {
        return None;
    }
    kappa_prime_at_most(g, n - target).map(Certificate::from)
}
