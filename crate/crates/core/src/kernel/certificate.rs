use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::Result;
use crate::graph::Graph;

use super::odd::odd_neighborhood;

/// Witness `C` together with `Odd(C)`: proves `κ(G) >= value`.
///
/// Vertex lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WodCertificate {
    pub witness: Vec<usize>,
    pub dominated: Vec<usize>,
    pub value: usize,
}

/// Odd-size witness `C` with the non-WOD set `C ∪ Odd(C)`: proves `κ'(G) <= value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonWodCertificate {
    pub witness: Vec<usize>,
    pub closure: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "wod")]
    Wod(WodCertificate),
    #[serde(rename = "nonwod")]
    NonWod(NonWodCertificate),
}

impl WodCertificate {
    pub fn from_witness(g: &Graph, witness: &VertexSet) -> Result<WodCertificate> {
        let dominated = odd_neighborhood(g, witness)?;
        Ok(WodCertificate { witness: witness.to_vec(), value: dominated.len(), dominated: dominated.to_vec() })
    }

    pub(crate) fn from_mask(g: &Graph, mask: u64) -> WodCertificate {
        WodCertificate::from_witness(g, &mask_set(g, mask)).expect("mask within order")
    }

    /// Rewrites vertex indices through `map` (new index -> old index).
    pub fn remap(&self, map: &[usize]) -> WodCertificate {
        WodCertificate {
            witness: remap_sorted(&self.witness, map),
            dominated: remap_sorted(&self.dominated, map),
            value: self.value,
        }
    }
}

impl NonWodCertificate {
    pub fn from_witness(g: &Graph, witness: &VertexSet) -> Result<NonWodCertificate> {
        let closure = odd_neighborhood(g, witness)?.union(witness);
        Ok(NonWodCertificate { witness: witness.to_vec(), value: closure.len(), closure: closure.to_vec() })
    }

    pub(crate) fn from_mask(g: &Graph, mask: u64) -> NonWodCertificate {
        NonWodCertificate::from_witness(g, &mask_set(g, mask)).expect("mask within order")
    }
}

impl Certificate {
    pub fn value(&self) -> usize {
        match self {
            Certificate::Wod(c) => c.value,
            Certificate::NonWod(c) => c.value,
        }
    }

    pub fn witness(&self) -> &[usize] {
        match self {
            Certificate::Wod(c) => &c.witness,
            Certificate::NonWod(c) => &c.witness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Certificate> {
        serde_json::from_str(text)
    }
}

impl From<WodCertificate> for Certificate {
    fn from(c: WodCertificate) -> Self {
        Certificate::Wod(c)
    }
}

impl From<NonWodCertificate> for Certificate {
    fn from(c: NonWodCertificate) -> Self {
        Certificate::NonWod(c)
    }
}

fn mask_set(g: &Graph, mask: u64) -> VertexSet {
    VertexSet::from_words(g.order(), vec![mask])
}

fn remap_sorted(xs: &[usize], map: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|&v| map[v]).collect();
    out.sort_unstable();
    out
}

fn as_set(g: &Graph, xs: &[usize]) -> Option<VertexSet> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    VertexSet::from_indices(g.order(), xs.iter().copied()).ok()
}

/// Recomputes `Odd(witness)` and every derived field; true iff all agree with `g`.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> bool {
    match cert {
        Certificate::Wod(c) => {
            let (Some(w), Some(d)) = (as_set(g, &c.witness), as_set(g, &c.dominated)) else {
                return false;
            };
            let Ok(odd) = odd_neighborhood(g, &w) else { return false };
            odd == d && d.is_disjoint(&w) && c.value == d.len()
        }
        Certificate::NonWod(c) => {
            let (Some(w), Some(cl)) = (as_set(g, &c.witness), as_set(g, &c.closure)) else {
                return false;
            };
            let Ok(odd) = odd_neighborhood(g, &w) else { return false };
            w.len() % 2 == 1 && odd.union(&w) == cl && c.value == cl.len()
        }
    }
}
