//! The five gadget constructions. Conventions checked by the equivalence harness:
//!
//! * Oddset → WOD: vertex classes `A`, `D`, `F = {f_i}` and the apex `c`.
//! * non-WOD → bipartite non-WOD: copy indices range over `i ∈ {1, 2}`.
//! * κ_Q → Oddset: the sides are `B = A_{1,4} ∪ A_{1,5} ∪ A_{2,4} ∪ A_{2,5} ∪ {c}`
//!   and `R` = every other gadget vertex; `d_i` is adjacent to all of
//!   `A_{i,4} ∪ A_{i,5}`; the complement side uses unordered non-adjacent
//!   pairs `u ≠ v`. The matchings pair `A_{i,1}` with `A_{i,4}` and `A_{i,3}`
//!   with `A_{i,5}` ([`KqOddsetWiring::Paired`]). Wiring both `A_{i,1}` and
//!   `A_{i,3}` to both `A_{i,4}` and `A_{i,5}` ([`KqOddsetWiring::Crossed`])
//!   forces `a_{i,2,u} ∉ R'` for every `u` and breaks the forward direction;
//!   it is kept only so the harness can demonstrate the failure.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::even_set;

use super::oddset::OddsetInstance;

/// A constructed target instance.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub graph: Graph,
    /// The target problem's parameter `k'`.
    pub parameter: usize,
    /// The explicit size bound of the target question.
    pub threshold: usize,
    /// `labels[v]` names the gadget role of vertex `v`.
    pub labels: Vec<String>,
    pub bipartition: Option<(VertexSet, VertexSet)>,
}

impl ReductionOutput {
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn at(&self, label: &str) -> usize {
        self.vertex(label).unwrap_or_else(|| panic!("no gadget vertex `{label}`"))
    }

    pub fn label_map(&self) -> BTreeMap<String, usize> {
        self.labels.iter().enumerate().map(|(v, l)| (l.clone(), v)).collect()
    }

    /// Reads the output as an Oddset instance with `R` the first side.
    pub fn to_oddset(&self) -> Result<OddsetInstance> {
        let (r, _) = self.bipartition.as_ref().ok_or(Error::NotBipartite)?;
        OddsetInstance::new(self.graph.clone(), r.clone(), self.parameter)
    }
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn add(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn finish(
        self,
        parameter: usize,
        threshold: usize,
        sides: Option<(Vec<usize>, Vec<usize>)>,
    ) -> Result<ReductionOutput> {
        let graph = Graph::from_edge_list(self.labels.len(), &self.edges)?;
        let bipartition = match sides {
            Some((left, right)) => {
                let left = VertexSet::from_indices(graph.order(), left)?;
                let right = VertexSet::from_indices(graph.order(), right)?;
                assert!(left.is_disjoint(&right) && left.union(&right).len() == graph.order());
                for (u, v) in graph.edges() {
                    assert_ne!(left.contains(u), left.contains(v), "gadget edge ({u}, {v}) within one side");
                }
                Some((left, right))
            }
            None => None,
        };
        Ok(ReductionOutput { graph, parameter, threshold, labels: self.labels, bipartition })
    }
}

/// Oddset `(G, R, B, k)` → "is `κ(G') >= n' − k'`?" with `k' = k + 1`.
///
/// `a_u` per `u ∈ R`, `k+2` twins `d_{u,i}` per `u ∈ B`, pendant vertices
/// `f_i` (`i ∈ 1..=k+2`), and a hub `c` adjacent to every `a_u` and `f_i`;
/// `a_u ~ d_{v,i}` whenever `uv ∈ E`.
pub fn reduce_oddset_to_wod(inst: &OddsetInstance) -> Result<ReductionOutput> {
    inst.validate()?;
    let k = inst.k;
    let mut b = Builder::default();
    let mut a_of = BTreeMap::new();
    for u in inst.side_r.iter() {
        a_of.insert(u, b.add(format!("a_{u}")));
    }
    let mut d_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in inst.side_b.iter() {
        d_of.insert(u, (1..=k + 2).map(|i| b.add(format!("d_{{{u},{i}}}"))).collect());
    }
    let f: Vec<usize> = (1..=k + 2).map(|i| b.add(format!("f_{i}"))).collect();
    let c = b.add("c".into());
    for &fi in &f {
        b.edge(c, fi);
    }
    for &a in a_of.values() {
        b.edge(c, a);
    }
    for (u, v) in inst.graph.edges() {
        let (r, bl) = if inst.side_r.contains(u) { (u, v) } else { (v, u) };
        for &d in &d_of[&bl] {
            b.edge(a_of[&r], d);
        }
    }
    let n = b.labels.len();
    let left: Vec<usize> = a_of.values().copied().chain(f.iter().copied()).collect();
    let right: Vec<usize> = d_of.values().flatten().copied().chain([c]).collect();
    b.finish(k + 1, n - (k + 1), Some((left, right)))
}

/// Maps an Oddset solution `R'` to `{a_u : u ∈ R'} ∪ {c}` in the gadget.
pub fn oddset_to_wod_witness(out: &ReductionOutput, r_prime: &VertexSet) -> VertexSet {
    let mut w = VertexSet::new(out.graph.order());
    for u in r_prime.iter() {
        w.insert(out.at(&format!("a_{u}")));
    }
    w.insert(out.at("c"));
    w
}

/// "is `κ(G) >= n − k`?" → "is `κ'(G') <= k + 2`?".
///
/// Keeps `G` on `0..n`, adds `k+3` apexes `a_i` adjacent to all of `V`, and `c`
/// adjacent to every apex.
pub fn reduce_wod_to_nonwod(g: &Graph, k: usize) -> Result<ReductionOutput> {
    let n = g.order();
    let mut b = Builder::default();
    for u in 0..n {
        b.add(format!("v_{u}"));
    }
    b.edges.extend(g.edges());
    let apexes: Vec<usize> = (1..=k + 3).map(|i| b.add(format!("a_{i}"))).collect();
    let c = b.add("c".into());
    for &a in &apexes {
        for u in 0..n {
            b.edge(u, a);
        }
        b.edge(a, c);
    }
    b.finish(k + 2, k + 2, None)
}

/// `C` with `|Odd(C)| >= n − k` ↦ an odd `C'` with `|C' ∪ Odd(C')| <= k + 2`.
pub fn wod_to_nonwod_witness(out: &ReductionOutput, c: &VertexSet) -> VertexSet {
    let mut w = VertexSet::from_indices(out.graph.order(), c.iter()).expect("source vertices keep their index");
    w.insert(out.at("a_1"));
    if c.len() % 2 == 1 {
        w.insert(out.at("c"));
    }
    w
}

/// "is `κ'(G) <= k`?" → the same question with `k' = 2k` on a bipartite graph.
///
/// Layers: `a_u`, `b_{1,u}`, `b_{2,u}`, `d_{i,u,j}`, `f_{i,u,j,l}`, `h_p` with
/// `i ∈ {1,2}` and `j, l, p ∈ 1..=2k+1`. Sides: `A ∪ D ∪ H` and `B₁ ∪ B₂ ∪ F`.
pub fn reduce_nonwod_to_bipartite(g: &Graph, k: usize) -> Result<ReductionOutput> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange { value: 0, reason: "gadget needs k >= 1".into() });
    }
    let n = g.order();
    let m = 2 * k + 1;
    let mut b = Builder::default();
    let a: Vec<usize> = (0..n).map(|u| b.add(format!("a_{u}"))).collect();
    let bb: Vec<Vec<usize>> = (1..=2).map(|i| (0..n).map(|u| b.add(format!("b_{{{i},{u}}}"))).collect()).collect();
    let mut d = vec![vec![Vec::new(); n]; 2];
    for i in 1..=2 {
        for u in 0..n {
            d[i - 1][u] = (1..=m).map(|j| b.add(format!("d_{{{i},{u},{j}}}"))).collect();
        }
    }
    let mut f_all = Vec::new();
    for i in 1..=2 {
        for u in 0..n {
            for j in 1..=m {
                for l in 1..=m {
                    let f = b.add(format!("f_{{{i},{u},{j},{l}}}"));
                    b.edge(d[i - 1][u][j - 1], f);
                    f_all.push(f);
                }
            }
        }
    }
    let h: Vec<usize> = (1..=m).map(|p| b.add(format!("h_{p}"))).collect();
    for (u, v) in g.edges() {
        for side in &bb {
            b.edge(a[u], side[v]);
            b.edge(a[v], side[u]);
        }
    }
    for u in 0..n {
        b.edge(a[u], bb[1][u]);
        for i in 0..2 {
            for &dv in &d[i][u] {
                b.edge(bb[i][u], dv);
            }
        }
    }
    for &f in &f_all {
        for &hp in &h {
            b.edge(f, hp);
        }
    }
    let left: Vec<usize> = a.iter().chain(d.iter().flatten().flatten()).chain(&h).copied().collect();
    let right: Vec<usize> = bb.iter().flatten().chain(&f_all).copied().collect();
    b.finish(2 * k, 2 * k, Some((left, right)))
}

/// `C ↦ {a_u : u ∈ C}`; the closure size doubles exactly.
pub fn nonwod_to_bipartite_witness(out: &ReductionOutput, c: &VertexSet) -> VertexSet {
    let mut w = VertexSet::new(out.graph.order());
    for u in c.iter() {
        w.insert(out.at(&format!("a_{u}")));
    }
    w
}

/// "is `κ'(G) <= k`?" → "is `κ_Q(G^{k+1}) >= (k+1)n − k`?" on `k+1` disjoint copies.
pub fn reduce_nonwod_to_kq(g: &Graph, k: usize) -> Result<ReductionOutput> {
    let n = g.order();
    let graph = g.disjoint_copies(k + 1)?;
    let labels = (0..=k).flat_map(|copy| (0..n).map(move |u| format!("v_{{{copy},{u}}}"))).collect();
    Ok(ReductionOutput { graph, parameter: k, threshold: (k + 1) * n - k, labels, bipartition: None })
}

/// How the matchings from `A_{i,1}`, `A_{i,3}` into `A_{i,4}`, `A_{i,5}` are wired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KqOddsetWiring {
    /// `A_{i,1} – A_{i,4}` and `A_{i,3} – A_{i,5}`.
    #[default]
    Paired,
    /// All four combinations; does not preserve positivity.
    Crossed,
}

/// "is `κ_Q(G) >= n − k`?" → Oddset with `k' = 2k + 1`.
pub fn reduce_kq_to_oddset(g: &Graph, k: usize) -> Result<ReductionOutput> {
    reduce_kq_to_oddset_with(g, k, KqOddsetWiring::Paired)
}

pub fn reduce_kq_to_oddset_with(g: &Graph, k: usize, wiring: KqOddsetWiring) -> Result<ReductionOutput> {
    let n = g.order();
    let mut b = Builder::default();
    // a[i][j][u] for i in 0..2 (copy of G, copy of Ḡ), j in 0..5
    let mut a = vec![vec![Vec::new(); 5]; 2];
    for i in 0..2 {
        for j in 0..5 {
            a[i][j] = (0..n).map(|u| b.add(format!("a_{{{},{},{u}}}", i + 1, j + 1))).collect();
        }
    }
    let d = [b.add("d_1".into()), b.add("d_2".into())];
    let c = b.add("c".into());
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            // i = 0 follows E(G); i = 1 follows the non-edges
            let side = if g.has_edge(u, v) { 0 } else { 1 };
            for j in [3, 4] {
                b.edge(a[side][1][u], a[side][j][v]);
            }
        }
    }
    for i in 0..2 {
        for u in 0..n {
            match wiring {
                KqOddsetWiring::Paired => {
                    b.edge(a[i][0][u], a[i][3][u]);
                    b.edge(a[i][2][u], a[i][4][u]);
                }
                KqOddsetWiring::Crossed => {
                    for j in [0, 2] {
                        for l in [3, 4] {
                            b.edge(a[i][j][u], a[i][l][u]);
                        }
                    }
                }
            }
            for j in [3, 4] {
                b.edge(d[i], a[i][j][u]);
            }
            b.edge(a[i][1][u], a[i][4][u]);
        }
        b.edge(d[i], c);
    }
    let r_side: Vec<usize> = (0..2)
        .flat_map(|i| [0, 1, 2].into_iter().flat_map(move |j| (0..n).map(move |u| (i, j, u))))
        .map(|(i, j, u)| a[i][j][u])
        .chain(d)
        .collect();
    let b_side: Vec<usize> = (0..2)
        .flat_map(|i| [3, 4].into_iter().flat_map(move |j| (0..n).map(move |u| (i, j, u))))
        .map(|(i, j, u)| a[i][j][u])
        .chain([c])
        .collect();
    b.finish(2 * k + 1, 2 * k + 1, Some((r_side, b_side)))
}

/// Which copy a κ_Q witness lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSide {
    /// `|Odd_G(C)| >= n − k`
    Graph,
    /// `|Odd_Ḡ(C)| >= n − k`
    Complement,
}

/// Forward witness for the paired wiring: from `C` with `|Odd_H(C)| >= n − k`
/// (`H = G` or `Ḡ`) build `R'` with `|R'| = 2|C ∪ Even_H(C)| + 1`.
///
/// `R'` takes `a_{i,2,u}` for `u ∈ C`, the apex of the other copy, and in copy
/// `i` fixes every `A_{i,4}`, `A_{i,5}` parity through the matchings: both
/// `a_{i,1,u}` and `a_{i,3,u}` for `u ∈ Even_H(C)`, and exactly one of them
/// for `u ∈ C`.
pub fn kq_to_oddset_witness(g: &Graph, out: &ReductionOutput, c: &VertexSet, side: ThresholdSide) -> Result<VertexSet> {
    let (h, i, other) = match side {
        ThresholdSide::Graph => (g.clone(), 1, 2),
        ThresholdSide::Complement => (g.complement(), 2, 1),
    };
    let even = even_set(&h, c)?;
    let mut w = VertexSet::new(out.graph.order());
    w.insert(out.at(&format!("d_{other}")));
    for u in c.iter() {
        w.insert(out.at(&format!("a_{{{i},2,{u}}}")));
        let inner = h.neighbors(u).intersection_len(c);
        // a_{i,4,u} sees |N(u) ∩ C| from A_{i,2}; a_{i,5,u} sees one more
        let j = if inner % 2 == 0 { 1 } else { 3 };
        w.insert(out.at(&format!("a_{{{i},{j},{u}}}")));
    }
    for u in even.iter() {
        w.insert(out.at(&format!("a_{{{i},1,{u}}}")));
        w.insert(out.at(&format!("a_{{{i},3,{u}}}")));
    }
    Ok(w)
}
