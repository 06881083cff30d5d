use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{parse_annotated, Graph};
use crate::kernel::{subsets_up_to, SubsetWalk};

/// Bipartite instance `(R ∪ B, E)` with budget `k`: is there `R' ⊆ R`,
/// `|R'| <= k`, giving every vertex of `B` an odd number of neighbours in `R'`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddsetInstance {
    pub graph: Graph,
    pub side_r: VertexSet,
    pub side_b: VertexSet,
    pub k: usize,
}

pub const ODDSET_ENUMERATION_LIMIT: u128 = 100_000_000;

impl OddsetInstance {
    /// `B` is everything outside `side_r`.
    pub fn new(graph: Graph, side_r: VertexSet, k: usize) -> Result<OddsetInstance> {
        let side_r = VertexSet::from_indices(graph.order(), side_r.iter())?;
        let side_b = side_r.complement();
        let inst = OddsetInstance { graph, side_r, side_b, k };
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_sides(graph: Graph, r: &[usize], k: usize) -> Result<OddsetInstance> {
        let side_r = VertexSet::from_indices(graph.order(), r.iter().copied())?;
        OddsetInstance::new(graph, side_r, k)
    }

    /// Checks that the sides partition `V` and every edge crosses.
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.order();
        if self.side_r.universe() != n || self.side_b.universe() != n {
            return Err(Error::NotBipartite);
        }
        if !self.side_r.is_disjoint(&self.side_b) || self.side_r.union(&self.side_b).len() != n {
            return Err(Error::NotBipartite);
        }
        if self.graph.bipartition().is_none() {
            return Err(Error::NotBipartite);
        }
        for (u, v) in self.graph.edges() {
            if self.side_r.contains(u) == self.side_r.contains(v) {
                return Err(Error::EdgeWithinSide(u, v));
            }
        }
        Ok(())
    }

    /// Graph text format followed by a `# R: ...` line.
    pub fn to_text(&self) -> String {
        let r: Vec<String> = self.side_r.iter().map(|v| v.to_string()).collect();
        format!("{}# R: {}\n", self.graph.to_text(), r.join(" "))
    }

    pub fn from_text(text: &str, k: usize) -> Result<OddsetInstance> {
        let parsed = parse_annotated(text)?;
        let r_line =
            parsed.annotation("R").ok_or(Error::Parse { line: 0, message: "missing `# R:` side annotation".into() })?;
        let r = r_line
            .split_whitespace()
            .map(|f| f.parse::<usize>().map_err(|_| Error::Parse { line: 0, message: format!("bad R member `{f}`") }))
            .collect::<Result<Vec<_>>>()?;
        OddsetInstance::from_sides(parsed.graph, &r, k)
    }

    pub fn remove_vertex(&self, v: usize) -> Result<OddsetInstance> {
        let (graph, map) = self.graph.remove_vertex(v)?;
        let r: Vec<usize> = (0..map.len()).filter(|&i| self.side_r.contains(map[i])).collect();
        OddsetInstance::from_sides(graph, &r, self.k)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> OddsetInstance {
        OddsetInstance { graph: self.graph.remove_edge(u, v), ..self.clone() }
    }
}

/// Smallest, then lexicographically smallest, `R' ⊆ R` with `|R'| <= k` and
/// `B ⊆ Odd(R')`. Refuses when more than 10⁸ candidate subsets exist.
pub fn solve_oddset(inst: &OddsetInstance) -> Result<Option<VertexSet>> {
    inst.validate()?;
    let r: Vec<usize> = inst.side_r.to_vec();
    let cost = subsets_up_to(r.len(), inst.k);
    if cost > ODDSET_ENUMERATION_LIMIT {
        return Err(Error::TooLarge { size: cost, limit: ODDSET_ENUMERATION_LIMIT });
    }
    let b = inst.side_b.words();
    for size in 0..=inst.k.min(r.len()) {
        let hit = SubsetWalk::new(&inst.graph, &r, size)
            .run(&mut |chosen, parity| chosen.len() == size && b.iter().zip(parity).all(|(bw, pw)| bw & !pw == 0));
        if let Some(members) = hit {
            return VertexSet::from_indices(inst.graph.order(), members).map(Some);
        }
    }
    Ok(None)
}
