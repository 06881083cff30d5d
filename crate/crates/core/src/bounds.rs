//! Greedy WOD construction and the parameterized deciders.
//!
//! Each decider first tries a closed-form bound and only falls back to the
//! exact kernel on instances whose order is bounded by a function of `k`:
//!
//! | question            | bound shortcut                          | exact fallback on |
//! |---------------------|-----------------------------------------|-------------------|
//! | `κ(G) >= k`         | `k <= √n'/2` (`n'` = non-isolated)      | `n' < 4k²`        |
//! | `κ'(G) <= n − k`    | no universal vertex and `k <= √n/4`     | `n < 16k²`        |
//! | `κ_Q(G) >= k`       | `k <= n/2`                              | `n < 2k`          |
//!
//! With a universal vertex, `κ'(G) + κ(Ḡ) = n`, so the second question is
//! answered on the complement.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{
    kappa_prime_with, kappa_q_with, kappa_with, odd_neighborhood, Certificate, ExactLimits, NonWodCertificate,
    WodCertificate,
};

/// Outcome of the greedy loop, with `|Odd(A)|` recorded after every step.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    /// The final greedy set `A`.
    pub chosen: VertexSet,
    /// `trace[i]` is `|Odd(A)|` after `i` additions; `trace[0] = 0`.
    pub trace: Vec<usize>,
    /// The better of the greedy set and the max-degree singleton.
    pub certificate: WodCertificate,
}

/// Grows `A` from the empty set: while some `v ∈ Even(A)` has more neighbours
/// in `Even(A)` than in `Odd(A)`, add the one maximizing the difference
/// (lowest index on ties). Each addition raises `|Odd(A)|` by exactly that
/// difference. The result is compared against `Odd({v})` for the first
/// max-degree vertex `v`; ties keep the greedy set.
pub fn greedy_run(g: &Graph) -> GreedyRun {
    let n = g.order();
    let mut chosen = VertexSet::new(n);
    let mut parity = VertexSet::new(n);
    let mut trace = vec![0];
    loop {
        let odd = parity.difference(&chosen);
        let even = chosen.union(&parity).complement();
        let mut pick: Option<(usize, usize)> = None;
        for v in even.iter() {
            let row = g.neighbors(v);
            let (e, o) = (row.intersection_len(&even), row.intersection_len(&odd));
            if e > o && pick.is_none_or(|(gain, _)| e - o > gain) {
                pick = Some((e - o, v));
            }
        }
        let Some((gain, v)) = pick else { break };
        chosen.insert(v);
        parity.xor_assign(g.neighbors(v));
        let size = parity.difference(&chosen).len();
        debug_assert_eq!(size, trace.last().unwrap() + gain);
        trace.push(size);
    }
    let greedy = WodCertificate::from_witness(g, &chosen).expect("in range");
    let hub = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let single =
        WodCertificate::from_witness(g, &VertexSet::from_indices(n, [hub]).expect("in range")).expect("in range");
    let certificate = if single.value > greedy.value { single } else { greedy };
    GreedyRun { chosen, trace, certificate }
}

pub fn greedy_wod(g: &Graph) -> WodCertificate {
    greedy_run(g).certificate
}

/// Which rule produced a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Parameter edge case (`k = 0`, `k >= n`, nothing to dominate).
    Trivial,
    /// Closed-form lower/upper bound.
    Bound,
    /// Exact kernel on a parameter-bounded instance.
    Exact,
    /// Answered on the complement graph.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision<C> {
    pub answer: bool,
    /// Present whenever the branch taken yields one and the answer is yes.
    pub certificate: Option<C>,
    pub branch: Branch,
}

impl<C> Decision<C> {
    fn yes(certificate: Option<C>, branch: Branch) -> Self {
        Decision { answer: true, certificate, branch }
    }

    fn no(branch: Branch) -> Self {
        Decision { answer: false, certificate: None, branch }
    }
}

fn exact_limits() -> ExactLimits {
    ExactLimits::forced()
}

/// Is `κ(G) >= k`?
pub fn decide_kappa_at_least(g: &Graph, k: usize) -> Result<Decision<WodCertificate>> {
    if k == 0 {
        let empty = WodCertificate::from_witness(g, &VertexSet::new(g.order()))?;
        return Ok(Decision::yes(Some(empty), Branch::Trivial));
    }
    let (core, map) = match g.strip_isolated() {
        Ok(stripped) => stripped,
        Err(Error::AllIsolated) => return Ok(Decision::no(Branch::Trivial)),
        Err(e) => return Err(e),
    };
    let n = core.order();
    if 4 * k * k <= n {
        let cert = greedy_wod(&core).remap(&map);
        debug_assert!(cert.value >= k);
        return Ok(Decision::yes(Some(cert), Branch::Bound));
    }
    let best = kappa_with(&core, exact_limits())?;
    if best.value >= k {
        Ok(Decision::yes(Some(best.remap(&map)), Branch::Exact))
    } else {
        Ok(Decision::no(Branch::Exact))
    }
}

/// Turns a WOD witness `D` of `Ḡ` into a non-WOD certificate of `G`.
///
/// For odd `|D|`, `D ∪ Odd_G(D) = V ∖ Odd_Ḡ(D)`. An even `D` is first made odd
/// by toggling `universal`, which is isolated in `Ḡ` and so leaves `Odd_Ḡ(D)`
/// unchanged.
pub fn complement_witness_to_nonwod(
    g: &Graph,
    complement_witness: &[usize],
    universal: usize,
) -> Result<NonWodCertificate> {
    let mut d = VertexSet::from_indices(g.order(), complement_witness.iter().copied())?;
    if d.len() % 2 == 0 {
        d.toggle(universal);
    }
    NonWodCertificate::from_witness(g, &d)
}

/// Is `κ'(G) <= n − k`? Requires `k <= n`.
pub fn decide_kappa_prime_at_most(g: &Graph, k: usize) -> Result<Decision<NonWodCertificate>> {
    let n = g.order();
    if k > n {
        return Err(Error::ParameterOutOfRange { value: k, reason: format!("k must be at most n = {n}") });
    }
    if k == 0 {
        let single = NonWodCertificate::from_witness(g, &VertexSet::from_indices(n, [0])?)?;
        return Ok(Decision::yes(Some(single), Branch::Trivial));
    }
    let complement = g.complement();
    if let Some(universal) = g.universal_vertices().iter().next() {
        let sub = decide_kappa_at_least(&complement, k)?;
        return Ok(match sub.certificate {
            Some(wod) if sub.answer => {
                let cert = complement_witness_to_nonwod(g, &wod.witness, universal)?;
                debug_assert!(cert.value <= n - k);
                Decision::yes(Some(cert), Branch::Complement)
            }
            _ => Decision::no(Branch::Complement),
        });
    }
    if 16 * k * k <= n {
        // Ḡ has no isolated vertex, so greedy gives |Odd_Ḡ(C)| >= √n/2; an odd
        // subset keeping at least √n/4 >= k of that is a witness in G.
        let c = greedy_wod(&complement);
        let mut d = VertexSet::from_indices(n, c.witness.iter().copied())?;
        if d.len() % 2 == 0 {
            let v = c.witness[0];
            if complement.degree(v) >= k {
                d = VertexSet::from_indices(n, [v])?;
            } else {
                d.remove(v);
            }
        }
        debug_assert!(odd_neighborhood(&complement, &d)?.len() >= k);
        let cert = NonWodCertificate::from_witness(g, &d)?;
        debug_assert!(cert.value <= n - k);
        return Ok(Decision::yes(Some(cert), Branch::Bound));
    }
    let best = kappa_prime_with(g, exact_limits())?;
    Ok(if best.value <= n - k { Decision::yes(Some(best), Branch::Exact) } else { Decision::no(Branch::Exact) })
}

/// Is `κ_Q(G) >= k`? The bound branch (`κ_Q >= n/2`) carries no certificate.
pub fn decide_kappa_q_at_least(g: &Graph, k: usize) -> Result<Decision<Certificate>> {
    let n = g.order();
    if 2 * k <= n {
        return Ok(Decision::yes(None, Branch::Bound));
    }
    if k >= n {
        // κ < n and κ' >= 1
        return Ok(Decision::no(Branch::Trivial));
    }
    let q = kappa_q_with(g, exact_limits())?;
    Ok(if q.value >= k { Decision::yes(Some(q.evidence), Branch::Exact) } else { Decision::no(Branch::Exact) })
}
