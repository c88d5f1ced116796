//! Automorphism groups by individualization and refinement.
//!
//! Source and target copies of a graph are colored jointly, so one
//! refinement step on the disjoint union keeps the two colorings
//! comparable. A stabilizer chain along an adaptively chosen base gives
//! the group order as a product of basic orbit lengths.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceData, Graph, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("distance {requested} exceeds the diameter {diameter}")]
    DistanceOutOfRange { requested: usize, diameter: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutOptions {
    pub node_budget: u64,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Colors of the disjoint union: source vertex `v` at `v`, target vertex `v` at `n + v`.
type Coloring = Vec<u32>;

struct Search<'a> {
    source: &'a Graph,
    target: &'a Graph,
    n: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(source: &'a Graph, target: &'a Graph, budget: u64) -> Self {
        Search {
            source,
            target,
            n: source.order(),
            nodes: 0,
            budget,
        }
    }

    fn tick(&mut self) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(AutError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Refines to the coarsest equitable coloring below `colors`. Returns
    /// false as soon as some color class has different sizes on the two sides.
    fn refine(&self, colors: &mut Coloring) -> bool {
        let n = self.n;
        let mut classes = count_classes(colors);
        loop {
            let mut keyed: Vec<(Vec<u32>, usize)> = (0..2 * n)
                .map(|x| {
                    let (graph, offset) = if x < n {
                        (self.source, 0)
                    } else {
                        (self.target, n)
                    };
                    let mut sig = Vec::with_capacity(1 + graph.degree(x - offset));
                    sig.push(colors[x]);
                    sig.extend(
                        graph
                            .neighbors(x - offset)
                            .iter()
                            .map(|&y| colors[y + offset]),
                    );
                    sig[1..].sort_unstable();
                    (sig, x)
                })
                .collect();
            keyed.sort_unstable();
            let mut rank = 0u32;
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    rank += 1;
                }
                colors[keyed[i].1] = rank;
            }
            if !balanced(colors, n) {
                return false;
            }
            let refined = rank as usize + 1;
            if refined == classes {
                return true;
            }
            classes = refined;
        }
    }

    /// Gives `x` (source) and `y` (target) a shared fresh color, then refines.
    fn individualize(
        &mut self,
        colors: &Coloring,
        x: Vertex,
        y: Vertex,
    ) -> Result<Option<Coloring>, AutError> {
        self.tick()?;
        let mut next = colors.clone();
        let fresh = *colors.iter().max().unwrap_or(&0) + 1;
        next[x] = fresh;
        next[self.n + y] = fresh;
        Ok(self.refine(&mut next).then_some(next))
    }

    /// Depth-first search for an isomorphism compatible with `colors`.
    fn extend(&mut self, colors: &Coloring) -> Result<Option<Vec<Vertex>>, AutError> {
        let n = self.n;
        let Some((color, x)) = target_cell(colors, n) else {
            let mut by_color = vec![usize::MAX; 2 * n];
            for y in 0..n {
                by_color[colors[n + y] as usize] = y;
            }
            let perm: Vec<Vertex> = (0..n).map(|x| by_color[colors[x] as usize]).collect();
            let ok = self
                .source
                .edges()
                .all(|(u, v)| self.target.adjacent(perm[u], perm[v]));
            return Ok(ok.then_some(perm));
        };
        for y in (0..n).filter(|&y| colors[n + y] == color) {
            if let Some(next) = self.individualize(colors, x, y)? {
                if let Some(perm) = self.extend(&next)? {
                    return Ok(Some(perm));
                }
            }
        }
        Ok(None)
    }

    fn initial(&self) -> Option<Coloring> {
        let mut colors = vec![0; 2 * self.n];
        self.refine(&mut colors).then_some(colors)
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn balanced(colors: &[u32], n: usize) -> bool {
    let max = colors.iter().copied().max().unwrap_or(0) as usize;
    let mut diff = vec![0i64; max + 1];
    for (x, &c) in colors.iter().enumerate() {
        diff[c as usize] += if x < n { 1 } else { -1 };
    }
    diff.iter().all(|&d| d == 0)
}

/// First smallest non-singleton cell on the source side, with its least vertex.
fn target_cell(colors: &[u32], n: usize) -> Option<(u32, Vertex)> {
    let max = colors[..n].iter().copied().max().unwrap_or(0) as usize;
    let mut sizes = vec![0usize; max + 1];
    let mut first = vec![usize::MAX; max + 1];
    for (x, &c) in colors[..n].iter().enumerate() {
        sizes[c as usize] += 1;
        if first[c as usize] == usize::MAX {
            first[c as usize] = x;
        }
    }
    let best = (0..=max)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))?;
    Some((best as u32, first[best]))
}

/// Exact automorphism group with generators, order, and orbits on ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroup {
    n: usize,
    generators: Vec<Vec<Vertex>>,
    order: BigUint,
    base: Vec<Vertex>,
    basic_orbit_lengths: Vec<usize>,
    pair_orbit: Vec<u32>,
    pair_orbit_count: usize,
    search_nodes: u64,
}

impl AutGroup {
    /// Assembles a group from generators alone; order is not known here and
    /// is reported as 0. Used by certificate auditing.
    pub fn from_generators(n: usize, generators: Vec<Vec<Vertex>>) -> Self {
        let (pair_orbit, pair_orbit_count) = pair_orbits(n, &generators);
        AutGroup {
            n,
            generators,
            order: BigUint::default(),
            base: Vec::new(),
            basic_orbit_lengths: Vec::new(),
            pair_orbit,
            pair_orbit_count,
            search_nodes: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Vertex>] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> &[Vertex] {
        &self.base
    }

    pub fn basic_orbit_lengths(&self) -> &[usize] {
        &self.basic_orbit_lengths
    }

    pub fn search_nodes(&self) -> u64 {
        self.search_nodes
    }

    /// Orbit index of the ordered pair `(u, v)`.
    pub fn pair_orbit(&self, u: Vertex, v: Vertex) -> u32 {
        self.pair_orbit[u * self.n + v]
    }

    pub fn pair_orbit_count(&self) -> usize {
        self.pair_orbit_count
    }

    /// Vertex orbits, each sorted, listed by least element.
    pub fn vertex_orbits(&self) -> Vec<Vec<Vertex>> {
        let mut groups: std::collections::BTreeMap<u32, Vec<Vertex>> = Default::default();
        for v in 0..self.n {
            groups.entry(self.pair_orbit(v, v)).or_default().push(v);
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Lexicographically least pair of each orbit on pairs at distance `m`.
    pub fn orbit_representatives(
        &self,
        dd: &DistanceData,
        m: usize,
    ) -> Result<Vec<(Vertex, Vertex)>, AutError> {
        if m > dd.diameter() {
            return Err(AutError::DistanceOutOfRange {
                requested: m,
                diameter: dd.diameter(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        Ok(dd
            .pairs_at(m)
            .filter(|&(u, v)| seen.insert(self.pair_orbit(u, v)))
            .collect())
    }

    /// Number of orbits on ordered pairs at distance `m`.
    pub fn orbits_at(&self, dd: &DistanceData, m: usize) -> usize {
        let ids: std::collections::HashSet<u32> =
            dd.pairs_at(m).map(|(u, v)| self.pair_orbit(u, v)).collect();
        ids.len()
    }
}

fn pair_orbits(n: usize, generators: &[Vec<Vertex>]) -> (Vec<u32>, usize) {
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for u in 0..n {
            for v in 0..n {
                let a = find(&mut parent, u * n + v);
                let b = find(&mut parent, g[u] * n + g[v]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut ids = vec![u32::MAX; n * n];
    let mut out = vec![0u32; n * n];
    let mut count = 0u32;
    for x in 0..n * n {
        let r = find(&mut parent, x);
        if ids[r] == u32::MAX {
            ids[r] = count;
            count += 1;
        }
        out[x] = ids[r];
    }
    (out, count as usize)
}

fn orbit_of(point: Vertex, n: usize, generators: &[&Vec<Vertex>]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in generators {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

pub fn automorphism_group(g: &Graph) -> Result<AutGroup, AutError> {
    automorphism_group_with(g, &AutOptions::default())
}

pub fn automorphism_group_with(g: &Graph, options: &AutOptions) -> Result<AutGroup, AutError> {
    let n = g.order();
    let mut search = Search::new(g, g, options.node_budget);

    // Base points and the partition in force when each was chosen.
    let mut levels: Vec<(Vertex, Coloring)> = Vec::new();
    let mut colors = search
        .initial()
        .expect("a graph is balanced against itself");
    while let Some((_, b)) = target_cell(&colors, n) {
        let next = search
            .individualize(&colors, b, b)?
            .expect("identity is balanced");
        levels.push((b, colors));
        colors = next;
    }

    // Generators tagged with the level at which they were found; a generator
    // from level i fixes base points 0..i.
    let mut generators: Vec<(usize, Vec<Vertex>)> = Vec::new();
    let mut lengths = vec![0usize; levels.len()];
    for (i, (b, colors)) in levels.iter().enumerate().rev() {
        let b = *b;
        let cell: Vec<Vertex> = (0..n).filter(|&y| colors[n + y] == colors[b]).collect();
        let mut gens_here: Vec<&Vec<Vertex>> = generators
            .iter()
            .filter(|(l, _)| *l >= i)
            .map(|(_, p)| p)
            .collect();
        let mut orbit = orbit_of(b, n, &gens_here);
        let mut found = Vec::new();
        for &c in &cell {
            if orbit[c] {
                continue;
            }
            let Some(start) = search.individualize(colors, b, c)? else {
                continue;
            };
            if let Some(perm) = search.extend(&start)? {
                debug_assert!(g.is_automorphism(&perm));
                found.push(perm);
                gens_here = generators
                    .iter()
                    .filter(|(l, _)| *l >= i)
                    .map(|(_, p)| p)
                    .chain(found.iter())
                    .collect();
                orbit = orbit_of(b, n, &gens_here);
            }
        }
        lengths[i] = orbit.iter().filter(|&&x| x).count();
        generators.extend(found.into_iter().map(|p| (i, p)));
    }

    let order = lengths
        .iter()
        .fold(BigUint::one(), |acc, &l| acc * BigUint::from(l));
    let generators: Vec<Vec<Vertex>> = generators.into_iter().map(|(_, p)| p).collect();
    let (pair_orbit, pair_orbit_count) = pair_orbits(n, &generators);
    Ok(AutGroup {
        n,
        generators,
        order,
        base: levels.iter().map(|(b, _)| *b).collect(),
        basic_orbit_lengths: lengths,
        pair_orbit,
        pair_orbit_count,
        search_nodes: search.nodes,
    })
}

/// True iff for every distance `m` (including 0) the ordered pairs at
/// distance `m` form a single orbit.
pub fn is_distance_transitive(dd: &DistanceData, aut: &AutGroup) -> bool {
    dd.is_connected() && (0..=dd.diameter()).all(|m| aut.orbits_at(dd, m) == 1)
}

/// An isomorphism `g -> h` as a vertex map, if one exists.
pub fn find_isomorphism(
    g: &Graph,
    h: &Graph,
    options: &AutOptions,
) -> Result<Option<Vec<Vertex>>, AutError> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut search = Search::new(g, h, options.node_budget);
    match search.initial() {
        Some(colors) => search.extend(&colors),
        None => Ok(None),
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, AutError> {
    Ok(find_isomorphism(g, h, &AutOptions::default())?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.extend([(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(
            automorphism_group(&cycle(5)).unwrap().order(),
            &BigUint::from(10u32)
        );
        assert_eq!(
            automorphism_group(&cycle(8)).unwrap().order(),
            &BigUint::from(16u32)
        );
        let k5 = Graph::from_fn(5, |_, _| true);
        assert_eq!(
            automorphism_group(&k5).unwrap().order(),
            &BigUint::from(120u32)
        );
        assert_eq!(
            automorphism_group(&Graph::empty(4)).unwrap().order(),
            &BigUint::from(24u32)
        );
        assert_eq!(
            automorphism_group(&Graph::empty(1)).unwrap().order(),
            &BigUint::from(1u32)
        );
        let path = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            automorphism_group(&path).unwrap().order(),
            &BigUint::from(2u32)
        );
    }

    #[test]
    fn petersen_group() {
        let g = petersen();
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order(), &BigUint::from(120u32));
        assert!(aut.generators().iter().all(|p| g.is_automorphism(p)));
        let dd = g.distances();
        assert!(is_distance_transitive(&dd, &aut));
        assert_eq!(aut.orbit_representatives(&dd, 1).unwrap(), vec![(0, 1)]);
        assert_eq!(aut.orbit_representatives(&dd, 2).unwrap().len(), 1);
        assert!(matches!(
            aut.orbit_representatives(&dd, 3),
            Err(AutError::DistanceOutOfRange {
                requested: 3,
                diameter: 2
            })
        ));
    }

    #[test]
    fn pair_orbits_respect_distance() {
        let path = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let aut = automorphism_group(&path).unwrap();
        let dd = path.distances();
        for u in 0..5 {
            for v in 0..5 {
                for x in 0..5 {
                    for y in 0..5 {
                        if aut.pair_orbit(u, v) == aut.pair_orbit(x, y) {
                            assert_eq!(dd.d(u, v), dd.d(x, y));
                        }
                    }
                }
            }
        }
        assert!(!is_distance_transitive(&dd, &aut));
        assert_eq!(aut.vertex_orbits(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }

    #[test]
    fn isomorphism_tests() {
        let k4 = Graph::from_fn(4, |_, _| true);
        assert!(!are_isomorphic(&k4, &cycle(4)).unwrap());
        let shuffled = petersen().permuted(&[3, 7, 1, 0, 9, 2, 8, 4, 6, 5]);
        let iso = find_isomorphism(&petersen(), &shuffled, &AutOptions::default())
            .unwrap()
            .unwrap();
        for (u, v) in petersen().edges() {
            assert!(shuffled.adjacent(iso[u], iso[v]));
        }
        assert!(!are_isomorphic(
            &cycle(6),
            &Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
        )
        .unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let err = automorphism_group_with(&petersen(), &AutOptions { node_budget: 3 }).unwrap_err();
        assert_eq!(err, AutError::BudgetExceeded { budget: 3 });
    }
}
