//! Independent re-verification of certificates.
//!
//! Nothing here calls into the rule engine: distances, girth and the
//! intersection array are recomputed with separate, deliberately naive code,
//! and every uniqueness set is enumerated in full.

use std::collections::BTreeSet;
use std::fmt;

use crate::certifier::{
    Certificate, KritWitness, PairWitness, RuleApplication, RuleId, SearchMode, Verdict,
};
use crate::families;
use crate::graph::{Graph, Vertex};
use crate::io::to_graph6;
use crate::knowledge::{self, KnownVerdict};

/// Outcome of an audit; `failure` names the first check that did not pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub failure: Option<String>,
    pub checked_applications: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "audit passed ({} applications re-verified)",
                self.checked_applications
            ),
            Some(why) => write!(f, "audit FAILED: {why}"),
        }
    }
}

pub fn audit(cert: &Certificate, g: &Graph) -> AuditReport {
    let mut checked = 0;
    let failure = audit_inner(cert, g, &mut checked).err();
    AuditReport {
        failure,
        checked_applications: checked,
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// Distance matrix by Floyd-Warshall; `usize::MAX` marks unreachable.
struct Dist {
    n: usize,
    d: Vec<usize>,
}

impl Dist {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let inf = usize::MAX / 4;
        let mut d = vec![inf; n * n];
        for u in 0..n {
            d[u * n + u] = 0;
            for v in 0..n {
                if g.adjacent(u, v) {
                    d[u * n + v] = 1;
                }
            }
        }
        for w in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let via = d[u * n + w] + d[w * n + v];
                    if via < d[u * n + v] {
                        d[u * n + v] = via;
                    }
                }
            }
        }
        Dist { n, d }
    }

    fn at(&self, u: Vertex, v: Vertex) -> usize {
        self.d[u * self.n + v]
    }

    fn connected(&self) -> bool {
        self.d.iter().all(|&x| x < usize::MAX / 4)
    }

    fn diameter(&self) -> usize {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Shortest cycle: for each edge, the shortest path between its ends avoiding it.
fn girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                continue;
            }
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut queue = std::collections::VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if g.adjacent(x, y) && !(x == u && y == v) && dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if dist[v] != usize::MAX {
                let len = dist[v] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

fn girth_at_least(girth: Option<usize>, bound: usize) -> bool {
    girth.is_none_or(|g| g >= bound)
}

fn common(g: &Graph, u: Vertex, v: Vertex) -> usize {
    (0..g.order())
        .filter(|&w| g.adjacent(u, w) && g.adjacent(v, w))
        .count()
}

/// `(b, c)` when the graph is distance-regular, by counting around every pair.
fn drg_array(g: &Graph, dist: &Dist) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let diam = dist.diameter();
    let mut b = vec![None; diam + 1];
    let mut c = vec![None; diam + 1];
    for u in 0..n {
        for v in 0..n {
            let i = dist.at(u, v);
            let nb = (0..n)
                .filter(|&w| g.adjacent(v, w) && dist.at(u, w) == i + 1)
                .count();
            let nc = (0..n)
                .filter(|&w| g.adjacent(v, w) && i > 0 && dist.at(u, w) == i - 1)
                .count();
            for (slot, val) in [(&mut b[i], nb), (&mut c[i], nc)] {
                match slot {
                    None => *slot = Some(val),
                    Some(x) if *x == val => {}
                    Some(_) => return None,
                }
            }
        }
    }
    let b: Vec<usize> = b.into_iter().map(Option::unwrap).take(diam).collect();
    let c: Vec<usize> = c.into_iter().map(Option::unwrap).skip(1).collect();
    Some((b, c))
}

fn array_string(b: &[usize], c: &[usize]) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("{{{};{}}}", join(b), join(c))
}

struct Ctx<'a> {
    g: &'a Graph,
    dist: Dist,
    girth: Option<usize>,
    array: Option<(Vec<usize>, Vec<usize>)>,
    /// Classes certified by applications already checked.
    done: BTreeSet<usize>,
    generators: Option<&'a [Vec<Vertex>]>,
}

impl Ctx<'_> {
    fn b(&self, i: usize) -> Option<usize> {
        self.array.as_ref().and_then(|(b, _)| b.get(i).copied())
    }

    fn c(&self, i: usize) -> Option<usize> {
        self.array
            .as_ref()
            .and_then(|(_, c)| i.checked_sub(1).and_then(|k| c.get(k).copied()))
    }

    fn pairs_at(&self, m: usize) -> Vec<(Vertex, Vertex)> {
        let n = self.g.order();
        (0..n)
            .flat_map(|j| (0..n).map(move |l| (j, l)))
            .filter(|&(j, l)| self.dist.at(j, l) == m)
            .collect()
    }

    fn all_common(&self, distances: &[usize], count: usize) -> bool {
        self.pairs_at_any(distances)
            .iter()
            .all(|&(u, v)| common(self.g, u, v) == count)
    }

    fn pairs_at_any(&self, distances: &[usize]) -> Vec<(Vertex, Vertex)> {
        distances.iter().flat_map(|&m| self.pairs_at(m)).collect()
    }

    fn has_k4(&self) -> bool {
        let n = self.g.order();
        let adj = |a, b| self.g.adjacent(a, b);
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                adj(a, b)
                    && (b + 1..n).any(|c| {
                        adj(a, c)
                            && adj(b, c)
                            && (c + 1..n).any(|d| adj(a, d) && adj(b, d) && adj(c, d))
                    })
            })
        })
    }

    fn has_triangle(&self) -> bool {
        let n = self.g.order();
        (0..n).any(|a| (a + 1..n).any(|b| self.g.adjacent(a, b) && common(self.g, a, b) > 0))
    }

    fn check(&self, app: &RuleApplication) -> Check {
        let m = app.class;
        let here = || format!("class {m} via {}", app.rule);
        let simple = !matches!(
            app.rule,
            RuleId::PivotIntersection | RuleId::KritSearch | RuleId::Combined
        );
        if simple {
            ensure(app.witnesses.is_empty() && app.mode.is_none(), || {
                format!("{}: unexpected witness data", here())
            })?;
        }
        let ok = match app.rule {
            RuleId::Girth5 => m == 1 && girth_at_least(self.girth, 5),
            RuleId::OneCommon => m == 1 && self.all_common(&[1], 1),
            RuleId::TwoCommon => {
                m == 1 && self.all_common(&[1, 2], 2) && self.has_triangle() && !self.has_k4()
            }
            RuleId::IaA | RuleId::IaB | RuleId::IaC => {
                let (Some(b0), Some(b1), Some(c2), Some(cm)) =
                    (self.b(0), self.b(1), self.c(2), self.c(m))
                else {
                    return Err(format!(
                        "{}: needs a distance-regular graph of diameter >= 2",
                        here()
                    ));
                };
                m >= 2
                    && cm >= 2
                    && self.done.contains(&(m - 1))
                    && match app.rule {
                        RuleId::IaA => c2 == 1 && b1 + 1 == b0,
                        RuleId::IaB => c2 == 1 && b1 + 2 == b0,
                        _ => c2 == 2 && m == 2 && b1 + 3 == b0,
                    }
            }
            RuleId::CubicD2 => {
                m == 2
                    && (0..self.g.order()).all(|v| self.g.degree(v) == 3)
                    && girth_at_least(self.girth, 5)
                    && self.done.contains(&1)
            }
            RuleId::CubicStepI | RuleId::CubicStepIi => {
                m >= 2
                    && self.b(0) == Some(3)
                    && (1..m).all(|t| self.done.contains(&t))
                    && if app.rule == RuleId::CubicStepI {
                        self.b(m - 1) == Some(1)
                    } else {
                        self.b(m - 1) == Some(2)
                            && self.b(m) == Some(1)
                            && self.c(m) == Some(1)
                            && girth_at_least(self.girth, 2 * m)
                    }
            }
            RuleId::UniqueFar => (0..self.g.order()).all(|v| {
                (0..self.g.order())
                    .filter(|&w| self.dist.at(v, w) == m)
                    .count()
                    == 1
            }),
            RuleId::PivotIntersection | RuleId::KritSearch | RuleId::Combined => {
                self.check_pairs(app)?;
                for w in &app.witnesses {
                    self.check_witness(app.rule, w)
                        .map_err(|e| format!("{}: pair ({},{}): {e}", here(), w.j, w.l))?;
                }
                true
            }
        };
        ensure(ok, || format!("{}: preconditions do not hold", here()))
    }

    /// The witnessed pairs cover the class: every pair in all-pairs mode,
    /// one pair of a single generator orbit in orbit mode.
    fn check_pairs(&self, app: &RuleApplication) -> Check {
        let m = app.class;
        let expected: BTreeSet<(Vertex, Vertex)> = self.pairs_at(m).into_iter().collect();
        let given: Vec<(Vertex, Vertex)> = app.witnesses.iter().map(|w| (w.j, w.l)).collect();
        for &(j, l) in &given {
            ensure(expected.contains(&(j, l)), || {
                format!("class {m}: ({j},{l}) is not at distance {m}")
            })?;
        }
        match app.mode {
            Some(SearchMode::AllPairs) => {
                let given: BTreeSet<_> = given.into_iter().collect();
                ensure(
                    given == expected && app.witnesses.len() == expected.len(),
                    || format!("class {m}: witnesses do not cover every pair exactly once"),
                )
            }
            Some(SearchMode::Orbit) => {
                let gens = self
                    .generators
                    .ok_or_else(|| format!("class {m}: orbit mode without generators"))?;
                ensure(given.len() == 1, || {
                    format!("class {m}: orbit mode needs exactly one representative")
                })?;
                ensure(single_orbit(self.g.order(), gens, &expected), || {
                    format!("class {m}: generators do not act transitively on the pairs at distance {m}")
                })
            }
            None => Err(format!("class {m}: search rule without a mode")),
        }
    }

    fn pivot_allowed(&self, l: Vertex, q: Vertex) -> bool {
        q < self.g.order() && q != l && self.done.contains(&self.dist.at(q, l))
    }

    fn survivors(&self, j: Vertex, l: Vertex, pivots: &[Vertex]) -> BTreeSet<Vertex> {
        let m = self.dist.at(j, l);
        (0..self.g.order())
            .filter(|&p| {
                self.dist.at(l, p) == m
                    && pivots
                        .iter()
                        .all(|&q| self.dist.at(p, q) == self.dist.at(j, q))
            })
            .collect()
    }

    fn krit_valid(&self, j: Vertex, l: Vertex, w: &KritWitness) -> bool {
        let n = self.g.order();
        let m = self.dist.at(j, l);
        if w.p >= n || w.q >= n || w.p == j || self.dist.at(w.p, l) != m {
            return false;
        }
        if self.dist.at(w.q, l) != w.s || self.dist.at(j, w.q) == self.dist.at(w.q, w.p) {
            return false;
        }
        let hits: Vec<Vertex> = (0..n)
            .filter(|&x| {
                self.dist.at(x, w.q) == w.s && self.dist.at(x, j) == m && self.dist.at(x, w.p) == m
            })
            .collect();
        hits == [l]
    }

    fn check_witness(&self, rule: RuleId, w: &PairWitness) -> Check {
        let (j, l) = (w.j, w.l);
        ensure(w.pivots.len() <= 3, || "more than three pivots".into())?;
        let distinct: BTreeSet<_> = w.pivots.iter().collect();
        ensure(distinct.len() == w.pivots.len(), || "repeated pivot".into())?;
        for &q in &w.pivots {
            ensure(self.pivot_allowed(l, q), || {
                format!("pivot {q} is l or lies in an uncertified class")
            })?;
        }
        let survivors = self.survivors(j, l, &w.pivots);
        let others: BTreeSet<Vertex> = survivors.iter().copied().filter(|&p| p != j).collect();
        let covered: BTreeSet<Vertex> = w.krit.iter().map(|k| k.p).collect();
        match rule {
            RuleId::PivotIntersection => {
                ensure(!w.pivots.is_empty() && w.krit.is_empty(), || {
                    "malformed pivot witness".into()
                })?;
                ensure(others.is_empty(), || {
                    format!("pivot intersection is {survivors:?}, not {{{j}}}")
                })
            }
            RuleId::KritSearch | RuleId::Combined => {
                if rule == RuleId::KritSearch {
                    ensure(w.pivots.is_empty(), || "krit witness with pivots".into())?;
                }
                ensure(covered == others && w.krit.len() == others.len(), || {
                    format!("krit witnesses cover {covered:?}, expected {others:?}")
                })?;
                for k in &w.krit {
                    ensure(self.krit_valid(j, l, k), || {
                        format!("invalid witness q={} s={} for p={}", k.q, k.s, k.p)
                    })?;
                }
                Ok(())
            }
            _ => unreachable!(),
        }
    }
}

/// Union-find over ordered pairs under the generators.
fn single_orbit(n: usize, gens: &[Vec<Vertex>], pairs: &BTreeSet<(Vertex, Vertex)>) -> bool {
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in gens {
        for &(a, b) in pairs {
            let (x, y) = (
                find(&mut parent, a * n + b),
                find(&mut parent, gen[a] * n + gen[b]),
            );
            parent[x] = y;
        }
    }
    let mut roots = pairs.iter().map(|&(a, b)| find(&mut parent, a * n + b));
    match roots.next() {
        Some(first) => roots.all(|r| r == first),
        None => false,
    }
}

fn is_automorphism(g: &Graph, perm: &[Vertex]) -> bool {
    let n = g.order();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    (0..n).all(|u| (0..n).all(|v| g.adjacent(u, v) == g.adjacent(perm[u], perm[v])))
}

fn audit_inner(cert: &Certificate, g: &Graph, checked: &mut usize) -> Check {
    ensure(cert.graph.graph6 == to_graph6(g), || {
        "certificate is for a different graph (graph6 mismatch)".into()
    })?;
    ensure(
        cert.graph.order == g.order() && cert.graph.edges == g.edge_count(),
        || "order or size mismatch".into(),
    )?;
    let dist = Dist::new(g);
    ensure(dist.connected(), || "graph is disconnected".into())?;
    let diameter = dist.diameter();
    ensure(cert.diameter == diameter, || {
        format!("diameter is {diameter}, certificate says {}", cert.diameter)
    })?;
    let array = drg_array(g, &dist);
    let array_text = array.as_ref().map(|(b, c)| array_string(b, c));
    ensure(cert.intersection_array == array_text, || {
        format!(
            "intersection array is {array_text:?}, certificate says {:?}",
            cert.intersection_array
        )
    })?;

    if let Some(family) = &cert.family {
        let built = families::build(family).map_err(|e| format!("family {family}: {e}"))?;
        ensure(to_graph6(&built.graph) == cert.graph.graph6, || {
            format!("family {family} does not build this graph")
        })?;
        let fact = knowledge::lookup(family);
        if fact.verdict == KnownVerdict::HasQsym {
            ensure(cert.verdict != Verdict::NoQsym, || {
                format!("NO_QSYM claimed for {family}, recorded as HAS_QSYM")
            })?;
        }
    }

    if let Some(gens) = &cert.generators {
        for (i, gen) in gens.iter().enumerate() {
            ensure(is_automorphism(g, gen), || {
                format!("generator {i} is not an automorphism")
            })?;
        }
    }

    if let Some(inner) = &cert.transfer {
        let co = g.complement();
        ensure(cert.applications.is_empty(), || {
            "transferred certificate has its own applications".into()
        })?;
        ensure(
            cert.verdict == Verdict::NoQsym && inner.verdict == Verdict::NoQsym,
            || "transfer needs NO_QSYM on both sides".into(),
        )?;
        ensure(Dist::new(&co).connected(), || {
            "complement is disconnected".into()
        })?;
        return audit_inner(inner, &co, checked)
            .map_err(|e| format!("complement certificate: {e}"));
    }

    let mut ctx = Ctx {
        g,
        dist,
        girth: girth(g),
        array,
        done: BTreeSet::new(),
        generators: cert.generators.as_deref(),
    };
    for app in &cert.applications {
        ensure((1..=diameter).contains(&app.class), || {
            format!("class {} out of range", app.class)
        })?;
        ensure(!ctx.done.contains(&app.class), || {
            format!("class {} certified twice", app.class)
        })?;
        ctx.check(app)?;
        ctx.done.insert(app.class);
        *checked += 1;
    }

    let open: Vec<usize> = (1..=diameter).filter(|m| !ctx.done.contains(m)).collect();
    match &cert.verdict {
        Verdict::NoQsym => ensure(open.is_empty(), || {
            format!("NO_QSYM with classes {open:?} uncertified")
        }),
        Verdict::Inconclusive { open_classes } => ensure(*open_classes == open, || {
            format!("open classes are {open:?}, certificate lists {open_classes:?}")
        }),
        Verdict::HasQsym { .. } => {
            let family = cert.family.as_ref().ok_or("HAS_QSYM without a family")?;
            ensure(
                knowledge::lookup(family).verdict == KnownVerdict::HasQsym,
                || format!("no HAS_QSYM fact covers {family}"),
            )
        }
    }
}
