//! Shared fixtures for the integration tests: brute-force oracles and
//! hand-tampered certificates.
#![allow(dead_code)]

use std::collections::BTreeSet;

use drgsym::audit::audit;
use drgsym::certifier::{
    certify_family, krit_witness_valid, pivot_intersection, Certificate, CertifyOptions, RuleId,
    Verdict,
};
use drgsym::families::{self, FamilySpec};
use drgsym::graph::Graph;
use drgsym::io::to_graph6;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn spec(s: &str) -> FamilySpec {
    s.parse().unwrap()
}

pub fn graph(s: &str) -> Graph {
    families::build(&spec(s)).unwrap().graph
}

pub fn certified(s: &str) -> (Certificate, Graph) {
    let cert = certify_family(&spec(s), &CertifyOptions::default()).unwrap();
    (cert, graph(s))
}

pub fn chain(cert: &Certificate) -> Vec<(RuleId, usize)> {
    cert.applications
        .iter()
        .map(|a| (a.rule, a.class))
        .collect()
}

// ---- brute-force oracles -------------------------------------------------

/// All-pairs distances by repeated relaxation over the adjacency matrix.
pub fn naive_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.order();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for step in 1..n.max(1) {
        for u in 0..n {
            for v in 0..n {
                if d[u][v].is_none()
                    && (0..n).any(|w| g.adjacent(w, v) && d[u][w] == Some(step - 1))
                {
                    d[u][v] = Some(step);
                }
            }
        }
    }
    d
}

/// Intersection array by counting neighbours at every pair, or None.
pub fn naive_array(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = naive_distances(g);
    let n = g.order();
    if d.iter().flatten().any(Option::is_none) {
        return None;
    }
    let diam = d.iter().flatten().map(|x| x.unwrap()).max().unwrap_or(0);
    let mut b: Vec<Option<usize>> = vec![None; diam + 1];
    let mut c: Vec<Option<usize>> = vec![None; diam + 1];
    for u in 0..n {
        for v in 0..n {
            let i = d[u][v].unwrap();
            let mut nb = 0;
            let mut nc = 0;
            for w in 0..n {
                if g.adjacent(v, w) {
                    let dw = d[u][w].unwrap();
                    if dw == i + 1 {
                        nb += 1;
                    }
                    if dw + 1 == i {
                        nc += 1;
                    }
                }
            }
            if *b[i].get_or_insert(nb) != nb || *c[i].get_or_insert(nc) != nc {
                return None;
            }
        }
    }
    Some((
        b.into_iter().take(diam).map(Option::unwrap).collect(),
        c.into_iter().skip(1).map(Option::unwrap).collect(),
    ))
}

/// Shortest cycle by depth-limited enumeration of simple cycles, each rooted at
/// its smallest vertex.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    fn extend(g: &Graph, root: usize, path: &mut Vec<usize>, len: usize) -> bool {
        let last = *path.last().unwrap();
        if path.len() == len {
            return g.adjacent(last, root);
        }
        for next in root + 1..g.order() {
            if g.adjacent(last, next) && !path.contains(&next) {
                path.push(next);
                if extend(g, root, path, len) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (3..=g.order()).find(|&len| (0..g.order()).any(|root| extend(g, root, &mut vec![root], len)))
}

/// Number of vertex permutations preserving adjacency.
pub fn brute_aut_order(g: &Graph) -> u64 {
    fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let n = g.order();
        let k = perm.len();
        if k == n {
            return u64::from(
                (0..n).all(|u| (0..n).all(|v| g.adjacent(u, v) == g.adjacent(perm[u], perm[v]))),
            );
        }
        let mut total = 0;
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                perm.push(x);
                total += go(g, perm, used);
                perm.pop();
                used[x] = false;
            }
        }
        total
    }
    go(g, &mut Vec::new(), &mut vec![false; g.order()])
}

/// A relabelled copy of `g` under a random permutation.
pub fn shuffled(g: &Graph, rng: &mut StdRng) -> Graph {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    g.permuted(&perm)
}

/// Random connected graphs on at most `max_n` vertices; about a quarter are
/// relabelled small distance-regular graphs so both oracle branches are hit.
pub fn random_connected_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let structured: Vec<Graph> = [
        "cycle:5",
        "cycle:8",
        "complete:6",
        "complete-bipartite:4",
        "named:petersen",
        "named:q3",
        "paley:9",
        "named:k33",
        "crown:5",
        "named:icosahedron",
        "johnson:5,2",
        "cube:3",
        "hamming:2,3",
        "crown:4",
    ]
    .iter()
    .map(|s| graph(s))
    .filter(|g| g.order() <= max_n)
    .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if rng.random_range(0..4) == 0 {
            let g = &structured[rng.random_range(0..structured.len())];
            out.push(shuffled(g, &mut rng));
            continue;
        }
        let n = rng.random_range(1..=max_n);
        let p: f64 = rng.random_range(0.15..0.85);
        let g = Graph::from_fn(n, |_, _| rng.random_bool(p));
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

// ---- tampered certificates ----------------------------------------------

fn certified_before(cert: &Certificate, index: usize) -> BTreeSet<usize> {
    cert.applications[..index].iter().map(|a| a.class).collect()
}

/// H(3,3): one pivot swapped for an eligible vertex that leaves a second candidate.
pub fn tamper_wrong_pivot() -> (Certificate, Graph) {
    let (mut cert, g) = certified("hamming:3,3");
    let dd = g.distances();
    let idx = cert
        .applications
        .iter()
        .position(|a| a.rule == RuleId::PivotIntersection)
        .unwrap();
    let done = certified_before(&cert, idx);
    let w = &mut cert.applications[idx].witnesses[0];
    let last = w.pivots.len() - 1;
    let replacement = (0..g.order())
        .find(|&q| {
            let mut pivots = w.pivots.clone();
            pivots[last] = q;
            q != w.l
                && !w.pivots.contains(&q)
                && done.contains(&dd.d(q, w.l))
                && pivot_intersection(&dd, w.j, w.l, &pivots) != BTreeSet::from([w.j])
        })
        .unwrap();
    w.pivots[last] = replacement;
    (cert, g)
}

/// K_{3,3}: class 2 claimed through the first intersection-array variant.
pub fn tamper_ia_on_k33() -> (Certificate, Graph) {
    let (mut cert, g) = certified("named:k33");
    let app = cert.applications.iter_mut().find(|a| a.class == 2).unwrap();
    app.rule = RuleId::IaA;
    app.mode = None;
    app.witnesses.clear();
    (cert, g)
}

/// Heawood: ia(a) at class 3 relabelled as ia(b).
pub fn tamper_ia_variant_heawood() -> (Certificate, Graph) {
    let (mut cert, g) = certified("named:heawood");
    let app = cert
        .applications
        .iter_mut()
        .find(|a| a.rule == RuleId::IaA)
        .unwrap();
    app.rule = RuleId::IaB;
    (cert, g)
}

/// Heawood: the class-3 application dropped while NO_QSYM is kept.
pub fn tamper_missing_class() -> (Certificate, Graph) {
    let (mut cert, g) = certified("named:heawood");
    cert.applications.retain(|a| a.class != 3);
    (cert, g)
}

/// P_13: the first krit witness points at a vertex that does not separate.
pub fn tamper_forged_witness() -> (Certificate, Graph) {
    let (mut cert, g) = certified("paley:13");
    let dd = g.distances();
    let app = cert
        .applications
        .iter_mut()
        .find(|a| a.rule == RuleId::KritSearch)
        .unwrap();
    let w = &mut app.witnesses[0];
    let (j, l) = (w.j, w.l);
    let k = &mut w.krit[0];
    let forged = (0..g.order())
        .find(|&q| {
            let candidate = drgsym::certifier::KritWitness { p: k.p, q, s: k.s };
            q != k.q && !krit_witness_valid(&dd, j, l, &candidate)
        })
        .unwrap();
    k.q = forged;
    (cert, g)
}

/// The Shrikhande certificate presented as a proof for the 4x4 rook's graph,
/// which has the same intersection array.
pub fn tamper_rook_claim() -> (Certificate, Graph) {
    let (mut cert, _) = certified("named:shrikhande");
    let rook = graph("hamming:2,4");
    cert.graph.graph6 = to_graph6(&rook);
    cert.graph.label = "H(2,4)".into();
    cert.family = None;
    cert.knowledge_base = None;
    assert_eq!(cert.verdict, Verdict::NoQsym);
    (cert, rook)
}

pub fn tampered() -> Vec<(&'static str, Certificate, Graph)> {
    vec![
        ("wrong pivot on H(3,3)", tamper_wrong_pivot()),
        ("ia(a) claimed on K_{3,3}", tamper_ia_on_k33()),
        (
            "ia(a) relabelled ia(b) on Heawood",
            tamper_ia_variant_heawood(),
        ),
        ("missing class 3 on Heawood", tamper_missing_class()),
        ("forged krit witness on P_13", tamper_forged_witness()),
        ("Shrikhande proof relabelled as H(2,4)", tamper_rook_claim()),
    ]
    .into_iter()
    .map(|(name, (c, g))| (name, c, g))
    .collect()
}

pub fn audit_passes(cert: &Certificate, g: &Graph) -> bool {
    audit(cert, g).passed()
}
