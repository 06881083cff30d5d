//! WOD-ness as a GF(2) feasibility problem.
//!
//! `B` is WOD iff the system `Σ_{u ∈ N(v) ∖ B} x_u = 1` for every `v ∈ B` has a
//! solution; a solution is the indicator vector of a witness `C ⊆ V ∖ B`.

use crate::bitset::{words_for, VertexSet, WORD_BITS};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::odd::{fit, odd_neighborhood};

/// Augmented parity system. Column `j < variables.len()` stands for vertex
/// `variables[j]`; the right-hand side is kept separately.
#[derive(Debug, Clone)]
pub struct Gf2System {
    variables: Vec<usize>,
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
}

impl Gf2System {
    /// One constraint per `v ∈ B`, one variable per vertex outside `B`.
    pub fn for_wod(g: &Graph, b: &VertexSet) -> Result<Gf2System> {
        let b = fit(g, b)?;
        let variables: Vec<usize> = b.complement().to_vec();
        let mut column = vec![usize::MAX; g.order()];
        for (j, &u) in variables.iter().enumerate() {
            column[u] = j;
        }
        let width = words_for(variables.len());
        let rows = b
            .iter()
            .map(|v| {
                let mut row = vec![0u64; width];
                for u in g.neighbors(v).iter().filter(|&u| !b.contains(u)) {
                    let j = column[u];
                    row[j / WORD_BITS] |= 1 << (j % WORD_BITS);
                }
                row
            })
            .collect::<Vec<_>>();
        let rhs = vec![true; rows.len()];
        Ok(Gf2System { variables, rows, rhs })
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.len()
    }

    /// Gauss-Jordan elimination, pivoting on the lowest available column.
    /// Free variables are set to zero. Returns the chosen variables' vertices.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.variables.len() {
            let (w, bit) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            rhs.swap(rank, p);
            let (pivot_row, pivot_rhs) = (rows[rank].clone(), rhs[rank]);
            for r in 0..rows.len() {
                if r != rank && rows[r][w] & bit != 0 {
                    for (a, b) in rows[r].iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                    rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rhs[rank..].iter().any(|&b| b) {
            return None;
        }
        let mut chosen: Vec<usize> =
            pivots.iter().zip(&rhs).filter(|(_, &b)| b).map(|(&col, _)| self.variables[col]).collect();
        chosen.sort_unstable();
        Some(chosen)
    }
}

/// Decides whether `B` is weakly odd dominated; on success also returns the
/// canonical witness `C ⊆ V ∖ B` with `B ⊆ Odd(C)`.
pub fn is_wod(g: &Graph, b: &VertexSet) -> Result<(bool, Option<VertexSet>)> {
    let system = Gf2System::for_wod(g, b)?;
    match system.solve() {
        Some(members) => {
            let witness = VertexSet::from_indices(g.order(), members)?;
            debug_assert!(fit(g, b)?.is_subset(&odd_neighborhood(g, &witness)?));
            Ok((true, Some(witness)))
        }
        None => Ok((false, None)),
    }
}

pub const BRUTEFORCE_FREE_LIMIT: usize = 25;

/// Enumerates every `C ⊆ V ∖ B`. Refuses when `|V ∖ B| > 25`.
pub fn is_wod_bruteforce(g: &Graph, b: &VertexSet) -> Result<bool> {
    let b = fit(g, b)?;
    let free: Vec<usize> = b.complement().to_vec();
    if free.len() > BRUTEFORCE_FREE_LIMIT {
        return Err(Error::TooLarge { size: free.len() as u128, limit: BRUTEFORCE_FREE_LIMIT as u128 });
    }
    for mask in 0u64..(1u64 << free.len()) {
        let c = VertexSet::from_indices(
            g.order(),
            free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v),
        )?;
        if b.is_subset(&odd_neighborhood(g, &c)?) {
            return Ok(true);
        }
    }
    Ok(false)
}
