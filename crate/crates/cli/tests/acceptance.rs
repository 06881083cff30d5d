//! Acceptance gate. Each criterion runs at its stated scale and tolerance and
//! prints one PASS/FAIL line. The process fails on any outcome other than
//! the recorded one: a listed expected failure that starts passing also counts.
//!
//! Ground truth comes from the oracles below, which work on a plain boolean
//! adjacency matrix and enumerate subsets directly.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use wod_core::bounds::{
    decide_kappa_at_least, decide_kappa_prime_at_most, decide_kappa_q_at_least, greedy_run, Branch,
};
use wod_core::kernel::{is_wod, is_wod_bruteforce, kappa, kappa_prime, kappa_q, verify_certificate, Certificate};
use wod_core::reductions::{
    all_graphs, enumerate_suite, verify_reduction, HarnessConfig, KqOddsetWiring, ReductionKind, SuiteConfig,
};
use wod_core::{Graph, VertexSet};

mod oracle {
    pub type Adj = Vec<Vec<bool>>;

    pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adj {
        let mut a = vec![vec![false; n]; n];
        for &(u, v) in edges {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    }

    pub fn members(n: usize, mask: u64) -> Vec<usize> {
        (0..n).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Vertices outside `c` with an odd count of neighbours in `c`.
    pub fn odd(a: &Adj, c: &[usize]) -> Vec<usize> {
        (0..a.len()).filter(|v| !c.contains(v) && c.iter().filter(|&&u| a[*v][u]).count() % 2 == 1).collect()
    }

    pub fn wod(a: &Adj, b: &[usize]) -> bool {
        let n = a.len();
        let outside: Vec<usize> = (0..n).filter(|v| !b.contains(v)).collect();
        (0u64..1 << outside.len()).any(|m| {
            let c: Vec<usize> = members(outside.len(), m).into_iter().map(|i| outside[i]).collect();
            let o = odd(a, &c);
            b.iter().all(|v| o.contains(v))
        })
    }

    /// `(κ, lexicographically smallest maximizer)`.
    pub fn kappa(a: &Adj) -> (usize, Vec<usize>) {
        let n = a.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for m in 0u64..1 << n {
            let c = members(n, m);
            let v = odd(a, &c).len();
            if best.as_ref().is_none_or(|(bv, bc)| v > *bv || (v == *bv && c < *bc)) {
                best = Some((v, c));
            }
        }
        best.unwrap()
    }

    /// `(κ', lexicographically smallest minimizer)` over odd-size sets.
    pub fn kappa_prime(a: &Adj) -> (usize, Vec<usize>) {
        let n = a.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for m in 0u64..1 << n {
            let c = members(n, m);
            if c.len() % 2 != 1 {
                continue;
            }
            let v = c.len() + odd(a, &c).len();
            if best.as_ref().is_none_or(|(bv, bc)| v < *bv || (v == *bv && c < *bc)) {
                best = Some((v, c));
            }
        }
        best.unwrap()
    }

    pub fn complement(a: &Adj) -> Adj {
        let n = a.len();
        (0..n).map(|u| (0..n).map(|v| u != v && !a[u][v]).collect()).collect()
    }

    /// Independent recheck of a certificate's fields.
    pub fn certificate_holds(a: &Adj, kind: &str, witness: &[usize], set: &[usize], value: usize) -> bool {
        let o = odd(a, witness);
        match kind {
            "wod" => o == set && value == set.len(),
            "nonwod" => {
                let mut closure: Vec<usize> = witness.iter().chain(o.iter()).copied().collect();
                closure.sort_unstable();
                witness.len() % 2 == 1 && closure == set && value == set.len()
            }
            _ => false,
        }
    }
}

fn adj(g: &Graph) -> oracle::Adj {
    oracle::adjacency(g.order(), &g.edges())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn set(g: &Graph, xs: &[usize]) -> VertexSet {
    VertexSet::from_indices(g.order(), xs.iter().copied()).unwrap()
}

fn small_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(all_graphs).collect()
}

/// Every graph on at most 5 vertices plus 100 seeded graphs with `n <= 12`.
fn a2_graphs() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut gs = small_graphs(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        gs.push(random_graph(&mut rng, n, 0.5));
    }
    gs
}

fn out_dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&d).unwrap();
    d
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn a1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for g in all_graphs(5) {
        let a = adj(&g);
        for m in 0u64..32 {
            let b = oracle::members(5, m);
            let (fast, witness) = is_wod(&g, &set(&g, &b)).unwrap();
            ensure(fast == is_wod_bruteforce(&g, &set(&g, &b)).unwrap(), || format!("{g:?} B={b:?}"))?;
            ensure(fast == oracle::wod(&a, &b), || format!("oracle disagrees on {g:?} B={b:?}"))?;
            if let Some(c) = witness {
                let o = oracle::odd(&a, &c.to_vec());
                ensure(b.iter().all(|v| o.contains(v) && !c.contains(*v)), || format!("bad witness {g:?}"))?;
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let n = rng.gen_range(6..=10);
        let g = random_graph(&mut rng, n, 0.5);
        let a = adj(&g);
        for _ in 0..50 {
            let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let fast = is_wod(&g, &set(&g, &b)).unwrap().0;
            ensure(fast == is_wod_bruteforce(&g, &set(&g, &b)).unwrap(), || format!("{g:?} B={b:?}"))?;
            ensure(fast == oracle::wod(&a, &b), || format!("oracle disagrees on {g:?} B={b:?}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{checked} (graph, B) pairs agree"))
}

fn a2() -> Outcome {
    let start = Instant::now();
    let gs = a2_graphs();
    for g in &gs {
        let a = adj(g);
        let n = g.order();
        let (kv, kw) = oracle::kappa(&a);
        let (pv, pw) = oracle::kappa_prime(&a);
        let k = kappa(g).unwrap();
        let kp = kappa_prime(g).unwrap();
        ensure(k.value == kv && k.witness == kw, || format!("kappa {g:?}: {:?} vs ({kv}, {kw:?})", k))?;
        ensure(kp.value == pv && kp.witness == pw, || format!("kappa_prime {g:?}: {:?} vs ({pv}, {pw:?})", kp))?;
        let q = kappa_q(g).unwrap();
        ensure(q.value == kv.max(n - pv), || format!("kappa_q {g:?}"))?;
        let (kind, witness, s, value) = match &q.evidence {
            Certificate::Wod(c) => ("wod", &c.witness, &c.dominated, c.value),
            Certificate::NonWod(c) => ("nonwod", &c.witness, &c.closure, c.value),
        };
        ensure(oracle::certificate_holds(&a, kind, witness, s, value), || format!("evidence {g:?}"))?;
        ensure((kind == "wod") == (kv >= n - pv), || format!("tie rule {g:?}"))?;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} graphs, values and lexicographic witnesses match", gs.len()))
}

fn a3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=64);
        let p = rng.gen_range(0.0..1.0);
        let mut g = random_graph(&mut rng, n, p);
        let mut edges = g.edges();
        for v in g.isolated_vertices().iter() {
            let u = (v + rng.gen_range(1..n)) % n;
            edges.push((u.min(v), u.max(v)));
        }
        g = Graph::from_edge_list(n, &edges).unwrap();
        ensure(g.isolated_vertices().is_empty(), || "isolated vertex left".into())?;
        let run = greedy_run(&g);
        let v = run.certificate.value as f64;
        let nf = n as f64;
        ensure(2.0 * v >= nf.sqrt(), || format!("√n/2 bound fails on {g:?}"))?;
        ensure(2.0 * v * (1.0 + g.max_degree() as f64) >= nf, || format!("n/(2(1+Δ)) bound fails on {g:?}"))?;
        ensure(run.trace.windows(2).all(|w| w[0] < w[1]), || format!("trace not increasing on {g:?}"))?;
        let o = oracle::odd(&adj(&g), &run.certificate.witness);
        ensure(o == run.certificate.dominated, || format!("greedy certificate wrong on {g:?}"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok("1000 isolated-free graphs meet both bounds with increasing traces".into())
}

fn a4() -> Outcome {
    let gs = a2_graphs();
    for g in &gs {
        let a = adj(g);
        let lhs = oracle::kappa_prime(&a).0 + oracle::kappa(&oracle::complement(&a)).0;
        ensure(lhs >= g.order(), || format!("κ'+κ(Ḡ) < n on {g:?}"))?;
        ensure(kappa_prime(g).unwrap().value + kappa(&g.complement()).unwrap().value == lhs, || {
            format!("kernel differs on {g:?}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(&mut rng, n, 0.5).with_apex();
        let a = adj(&g);
        let lhs = oracle::kappa_prime(&a).0 + oracle::kappa(&oracle::complement(&a)).0;
        ensure(lhs == g.order(), || format!("equality fails with universal vertex on {g:?}"))?;
    }
    Ok(format!("inequality on {} graphs, equality on 300 apexed graphs", gs.len()))
}

fn a5_tested() -> Vec<Graph> {
    let mut tested = a2_graphs();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        tested.push(random_graph(&mut rng, n, 0.5).with_apex());
    }
    tested
}

/// Literal bound `κ_Q ≥ ⌈n/2⌉`. Odd orders can sit at `⌊n/2⌋` (the 5-cycle has
/// κ = 2 and κ' = 3), so this is reported as an expected failure; the
/// `⌊n/2⌋` bound is asserted alongside.
fn a5() -> Outcome {
    let tested = a5_tested();
    let mut below_ceil = Vec::new();
    for g in &tested {
        let n = g.order();
        let a = adj(g);
        let q = kappa_q(g).unwrap().value;
        ensure(q == oracle::kappa(&a).0.max(n - oracle::kappa_prime(&a).0), || format!("κ_Q differs on {g:?}"))?;
        ensure(2 * q + 1 >= n, || format!("κ_Q = {q} < ⌊n/2⌋ on {g:?}"))?;
        if 2 * q < n {
            below_ceil.push((g.to_text().replace('\n', ";"), q));
        }
    }
    let detail = format!("κ_Q ≥ ⌊n/2⌋ holds on all {} tested graphs", tested.len());
    if below_ceil.is_empty() {
        return Ok(detail);
    }
    below_ceil.sort();
    below_ceil.dedup();
    let shown: Vec<String> = below_ceil.iter().take(3).map(|(g, q)| format!("[{g}] κ_Q={q}")).collect();
    Err(format!(
        "κ_Q < ⌈n/2⌉ on {} distinct graphs, all of odd order with κ_Q = ⌊n/2⌋, e.g. {}; {detail}",
        below_ceil.len(),
        shown.join(", ")
    ))
}

/// `max(κ, n − κ')` against `max(κ(G), κ(Ḡ))` on every graph with `n <= 5`.
fn a5b() -> Outcome {
    let mut findings = Vec::new();
    let mut compared = 0;
    for g in small_graphs(5) {
        let a = adj(&g);
        let n = g.order();
        let defined = oracle::kappa(&a).0.max(n - oracle::kappa_prime(&a).0);
        let alternative = oracle::kappa(&a).0.max(oracle::kappa(&oracle::complement(&a)).0);
        compared += 1;
        if defined != alternative {
            findings.push(serde_json::json!({
                "graph": g.to_text(),
                "max_kappa_n_minus_kappa_prime": defined,
                "max_kappa_kappa_complement": alternative,
            }));
        }
    }
    let report = serde_json::json!({ "compared": compared, "disagreements": findings });
    let path = out_dir().join("a5b_findings.json");
    fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
    Ok(format!("{} of {compared} graphs differ between the two forms; report {}", findings.len(), path.display()))
}

fn a6() -> Outcome {
    let start = Instant::now();
    let mut graphs = small_graphs(7);
    let exhaustive = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..3000 {
        let n = rng.gen_range(8..=10);
        let p = rng.gen_range(0.05..0.95);
        graphs.push(random_graph(&mut rng, n, p));
    }
    for n in 1..=10 {
        graphs.push(Graph::empty(n).unwrap());
        graphs.push(Graph::complete(n).unwrap());
        graphs.push(Graph::path(n).unwrap());
        graphs.push(Graph::star(n - 1).unwrap());
        if n >= 3 {
            graphs.push(Graph::cycle(n).unwrap());
        }
        if n >= 2 {
            graphs.push(Graph::path(n - 1).unwrap().with_apex());
        }
    }
    let mut bound_yes = 0usize;
    for g in &graphs {
        let n = g.order();
        let kv = kappa(g).unwrap().value;
        let pv = kappa_prime(g).unwrap().value;
        let qv = kv.max(n - pv);
        for k in 0..=n {
            let d = decide_kappa_at_least(g, k).unwrap();
            ensure(d.answer == (kv >= k), || format!("wod-atleast {g:?} k={k}"))?;
            if let Some(c) = &d.certificate {
                ensure(c.value >= k && verify_certificate(g, &c.clone().into()), || format!("cert {g:?} k={k}"))?;
            }
            let e = decide_kappa_prime_at_most(g, k).unwrap();
            ensure(e.answer == (pv + k <= n), || format!("nonwod-atmost {g:?} k={k}"))?;
            if let Some(c) = &e.certificate {
                ensure(c.value + k <= n && verify_certificate(g, &c.clone().into()), || format!("cert {g:?} k={k}"))?;
            }
            let f = decide_kappa_q_at_least(g, k).unwrap();
            ensure(f.answer == (qv >= k), || format!("kq-atleast {g:?} k={k}"))?;
            if let Some(c) = &f.certificate {
                ensure(verify_certificate(g, c), || format!("cert {g:?} k={k}"))?;
            }
            for (branch, answer) in [(d.branch, d.answer), (e.branch, e.answer), (f.branch, f.answer)] {
                if branch == Branch::Bound && answer {
                    bound_yes += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} graphs ({exhaustive} exhaustive with n ≤ 7), every k ∈ [0, n]; {bound_yes} bound-branch yes answers confirmed exactly",
        graphs.len()
    ))
}

fn a7() -> Outcome {
    let start = Instant::now();
    let suite = SuiteConfig::default();
    let cfg = HarnessConfig::default();
    let dir = out_dir();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for kind in ReductionKind::ALL {
        let instances = enumerate_suite(kind, &suite);
        let report = verify_reduction(kind, &instances, &cfg);
        fs::write(dir.join(format!("a7_{kind}.json")), report.to_json()).unwrap();
        lines.push(format!("{kind} {}/{}", report.agreed, report.total));
        if !report.all_agree() {
            failures.push(format!(
                "{kind}: {} skipped, {} counterexamples",
                report.skipped.len(),
                report.counterexamples.len()
            ));
        }
    }
    // the gate must notice a broken gadget and keep a minimized artifact
    let instances = enumerate_suite(ReductionKind::KqToOddset, &SuiteConfig { random: 0, ..suite });
    let broken = verify_reduction(
        ReductionKind::KqToOddset,
        &instances,
        &HarnessConfig { kq_wiring: KqOddsetWiring::Crossed, ..cfg },
    );
    ensure(!broken.all_agree() && !broken.counterexamples.is_empty(), || "broken wiring went unnoticed".into())?;
    fs::write(dir.join("a7_kq-to-oddset_crossed.json"), broken.to_json()).unwrap();
    ensure(failures.is_empty(), || failures.join("; "))?;
    within(start, Duration::from_secs(1800))?;
    Ok(lines.join(", "))
}

fn a8() -> Outcome {
    let start = Instant::now();
    let dir = out_dir();
    let run = |name: &str, threads: Option<&str>| -> Result<String, String> {
        let path = dir.join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_wod"));
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        cmd.args(["mine", "-n", "20", "--trials", "2000", "--seed", "0", "-o"]).arg(&path);
        let out = cmd.output().map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        fs::read_to_string(&path).map_err(|e| e.to_string())
    };
    let first = run("a8_mine.jsonl", None)?;
    within(start, Duration::from_secs(900))?;
    let second = run("a8_mine_1thread.jsonl", Some("1"))?;
    ensure(first == second, || "output differs between runs".into())?;

    let lines: Vec<Value> = first.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    ensure(summary["type"] == "summary", || "missing summary".into())?;
    let histogram: BTreeMap<usize, u64> = serde_json::from_value(summary["histogram"].clone()).unwrap();
    ensure(histogram.values().sum::<u64>() == 2000, || "histogram mass != trials".into())?;
    ensure(histogram.keys().all(|&q| q >= 10), || "κ_Q below n/2".into())?;
    let best = summary["best"]["kappa_q"].as_u64().unwrap() as usize;
    ensure(best <= 18, || format!("best κ_Q = {best} > 18"))?;

    let mut records: Vec<&Value> = lines.iter().filter(|l| l["type"] == "record").collect();
    records.push(&summary["best"]);
    for r in &records {
        let g = Graph::from_text(r["graph"].as_str().unwrap()).unwrap();
        let cert: Certificate = serde_json::from_value(r["evidence"].clone()).unwrap();
        let q = r["kappa_q"].as_u64().unwrap() as usize;
        ensure(verify_certificate(&g, &cert), || format!("record {} does not verify", r["trial"]))?;
        ensure(kappa_q(&g).unwrap().value == q, || format!("record {} κ_Q differs", r["trial"]))?;
        let a = adj(&g);
        let (kind, witness, s, value) = match &cert {
            Certificate::Wod(c) => ("wod", &c.witness, &c.dominated, c.value),
            Certificate::NonWod(c) => ("nonwod", &c.witness, &c.closure, c.value),
        };
        ensure(oracle::certificate_holds(&a, kind, witness, s, value), || "oracle rejects evidence".into())?;
        let implied = if kind == "wod" { value } else { 20 - value };
        ensure(implied == q, || "evidence does not realize κ_Q".into())?;
    }
    let best_graph = Graph::from_text(summary["best"]["graph"].as_str().unwrap()).unwrap();
    let a = adj(&best_graph);
    ensure(oracle::kappa(&a).0.max(20 - oracle::kappa_prime(&a).0) == best, || "oracle disagrees on best".into())?;

    let at_target: u64 = histogram.range(..=16).map(|(_, c)| c).sum();
    Ok(format!(
        "best κ_Q = {best}, {} records re-verified, deterministic; info: {:.1}% of trials have κ_Q ≤ 16; histogram {:?}; {:?}",
        records.len() - 1,
        100.0 * at_target as f64 / 2000.0,
        histogram,
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", "WOD oracle equivalence", a1),
        ("A2", "solvers vs definitions", a2),
        ("A3", "greedy lower bounds", a3),
        ("A4", "complement identities", a4),
        ("A5", "κ_Q ≥ ⌈n/2⌉", a5),
        ("A5b", "κ_Q forms compared", a5b),
        ("A6", "FPT deciders", a6),
        ("A7", "reduction equivalence", a7),
        ("A8", "miner", a8),
    ];
    // unattainable as stated; the analysis is kept with the project notes
    let expected_failures = ["A5"];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with('A')).collect();
    let mut unexpected = 0;
    for (id, title, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let expected = expected_failures.contains(&id);
        match outcome {
            Ok(detail) => {
                if expected {
                    unexpected += 1;
                }
                println!("{id} PASS {title} ({:.1?}): {detail}", start.elapsed());
            }
            Err(detail) => {
                if !expected {
                    unexpected += 1;
                }
                let tag = if expected { " [expected]" } else { "" };
                println!("{id} FAIL{tag} {title} ({:.1?}): {detail}", start.elapsed());
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
