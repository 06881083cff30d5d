use std::borrow::Cow;

use crate::bitset::VertexSet;
use crate::error::Result;
use crate::graph::Graph;

/// Re-homes `set` onto the graph's universe, rejecting members `>= order`.
pub(crate) fn fit<'a>(g: &Graph, set: &'a VertexSet) -> Result<Cow<'a, VertexSet>> {
    if set.universe() == g.order() {
        return Ok(Cow::Borrowed(set));
    }
    VertexSet::from_indices(g.order(), set.iter()).map(Cow::Owned)
}

/// XOR of the neighbourhood rows of `members`: bit `v` is the parity of `|N(v) ∩ members|`.
pub(crate) fn parity_vector(g: &Graph, members: &VertexSet) -> VertexSet {
    let mut acc = VertexSet::new(g.order());
    for u in members.iter() {
        acc.xor_assign(g.neighbors(u));
    }
    acc
}

/// `Odd(C) = {v ∉ C : |N(v) ∩ C| odd}`.
pub fn odd_neighborhood(g: &Graph, c: &VertexSet) -> Result<VertexSet> {
    let c = fit(g, c)?;
    Ok(parity_vector(g, &c).difference(&c))
}

/// `Even(A) = V ∖ (A ∪ Odd(A))`.
pub fn even_set(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    let a = fit(g, a)?;
    let odd = odd_neighborhood(g, &a)?;
    Ok(a.union(&odd).complement())
}

/// Per-vertex definition, kept as a cross-check of the row-XOR path.
pub fn odd_neighborhood_by_rows(g: &Graph, c: &VertexSet) -> Result<VertexSet> {
    let c = fit(g, c)?;
    let mut out = VertexSet::new(g.order());
    for v in (0..g.order()).filter(|&v| !c.contains(v)) {
        if g.neighbors(v).intersection_parity(&c) {
            out.insert(v);
        }
    }
    Ok(out)
}
