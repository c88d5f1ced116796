//! Distance-regularity, intersection arrays, and strongly regular parameters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceData, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrgError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid intersection array: {0}")]
    InvalidArray(String),
    #[error("cannot parse intersection array {0:?}")]
    Parse(String),
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    b: Vec<usize>,
    c: Vec<usize>,
}

impl IntersectionArray {
    /// Checks the structural invariants: equal lengths, `c_1 = 1`, positive
    /// entries, `b_i + c_i <= b_0`, and an integral k-sequence.
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Result<Self, DrgError> {
        if b.len() != c.len() {
            return Err(DrgError::InvalidArray(format!(
                "{} b-entries but {} c-entries",
                b.len(),
                c.len()
            )));
        }
        if let Some(&c1) = c.first() {
            if c1 != 1 {
                return Err(DrgError::InvalidArray(format!("c_1 = {c1}, expected 1")));
            }
        }
        if b.contains(&0) || c.contains(&0) {
            return Err(DrgError::InvalidArray("zero entry".into()));
        }
        let k = b.first().copied().unwrap_or(0);
        for i in 1..b.len() {
            if b[i] + c[i - 1] > k {
                return Err(DrgError::InvalidArray(format!("b_{i} + c_{i} exceeds b_0")));
            }
        }
        if c.last().is_some_and(|&cd| cd > k) {
            return Err(DrgError::InvalidArray("c_d exceeds b_0".into()));
        }
        let ia = IntersectionArray { b, c };
        ia.k_sequence()?;
        Ok(ia)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn degree(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    pub fn bs(&self) -> &[usize] {
        &self.b
    }

    pub fn cs(&self) -> &[usize] {
        &self.c
    }

    /// `b_i` for `0 <= i < d`.
    pub fn b(&self, i: usize) -> Option<usize> {
        self.b.get(i).copied()
    }

    /// `c_i` for `1 <= i <= d`.
    pub fn c(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|j| self.c.get(j)).copied()
    }

    /// `a_i = b_0 - b_i - c_i`, with `b_d = 0` and `c_0 = 0`.
    pub fn a(&self, i: usize) -> Option<usize> {
        if i > self.diameter() {
            return None;
        }
        let bi = self.b(i).unwrap_or(0);
        let ci = self.c(i).unwrap_or(0);
        Some(self.degree() - bi - ci)
    }

    /// `k_0 = 1`, `k_{i+1} = k_i b_i / c_{i+1}`.
    pub fn k_sequence(&self) -> Result<Vec<usize>, DrgError> {
        let mut ks = vec![1usize];
        for i in 0..self.diameter() {
            let num = ks[i] * self.b[i];
            if !num.is_multiple_of(self.c[i]) {
                return Err(DrgError::InvalidArray(format!(
                    "k_{} = {}*{}/{} is not an integer",
                    i + 1,
                    ks[i],
                    self.b[i],
                    self.c[i]
                )));
            }
            ks.push(num / self.c[i]);
        }
        Ok(ks)
    }

    /// Number of vertices implied by the array.
    pub fn order(&self) -> usize {
        self.k_sequence().map(|ks| ks.iter().sum()).unwrap_or(0)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = DrgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DrgError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let (b, c) = inner.split_once(';').ok_or_else(bad)?;
        let nums = |part: &str| -> Result<Vec<usize>, DrgError> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect()
        };
        IntersectionArray::new(nums(b)?, nums(c)?)
    }
}

/// Where a graph fails distance-regularity. `distance = 0` flags a degree
/// mismatch between `pair.0` and `reference.0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrgViolation {
    pub pair: (Vertex, Vertex),
    pub reference: (Vertex, Vertex),
    pub distance: usize,
    pub parameter: char,
    pub found: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrgCheck {
    Regular(IntersectionArray),
    NotRegular(DrgViolation),
}

impl DrgCheck {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgCheck::Regular(ia) => Some(ia),
            DrgCheck::NotRegular(_) => None,
        }
    }
}

pub fn is_distance_regular(g: &Graph) -> Result<DrgCheck, DrgError> {
    is_distance_regular_with(g, &g.distances())
}

/// Same as [`is_distance_regular`] with precomputed distances.
pub fn is_distance_regular_with(g: &Graph, dd: &DistanceData) -> Result<DrgCheck, DrgError> {
    if !dd.is_connected() {
        return Err(DrgError::Disconnected);
    }
    let n = g.order();
    if n == 0 {
        return Ok(DrgCheck::Regular(IntersectionArray {
            b: vec![],
            c: vec![],
        }));
    }
    let k = g.degree(0);
    if let Some(v) = (1..n).find(|&v| g.degree(v) != k) {
        return Ok(DrgCheck::NotRegular(DrgViolation {
            pair: (v, v),
            reference: (0, 0),
            distance: 0,
            parameter: 'k',
            found: g.degree(v),
            expected: k,
        }));
    }
    let d = dd.diameter();
    // (value, first pair that produced it) per distance.
    let mut bs: Vec<Option<(usize, (Vertex, Vertex))>> = vec![None; d + 1];
    let mut cs: Vec<Option<(usize, (Vertex, Vertex))>> = vec![None; d + 1];
    for v in 0..n {
        for w in 0..n {
            let i = dd.d(v, w);
            let (mut up, mut down) = (0, 0);
            for &x in g.neighbors(w) {
                let j = dd.d(v, x);
                if j == i + 1 {
                    up += 1;
                } else if j + 1 == i {
                    down += 1;
                }
            }
            for (param, slot, value) in [('b', &mut bs[i], up), ('c', &mut cs[i], down)] {
                match slot {
                    None => *slot = Some((value, (v, w))),
                    Some((expected, reference)) if *expected != value => {
                        return Ok(DrgCheck::NotRegular(DrgViolation {
                            pair: (v, w),
                            reference: *reference,
                            distance: i,
                            parameter: param,
                            found: value,
                            expected: *expected,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let b = (0..d)
        .map(|i| bs[i].expect("every distance is realized").0)
        .collect();
    let c = (1..=d)
        .map(|i| cs[i].expect("every distance is realized").0)
        .collect();
    Ok(DrgCheck::Regular(IntersectionArray::new(b, c)?))
}

/// `(n, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k(k - λ - 1) = (n - k - 1)μ`.
    pub fn is_feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Parameters if the graph is connected, regular, of diameter 2, and has
/// constant common-neighbor counts on edges and on non-edges.
pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    let k = g.regular_degree()?;
    if !g.is_connected() || n < 3 || k == n - 1 {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = g.neighbors(u).iter().filter(|&&w| g.adjacent(v, w)).count();
            let slot = if g.adjacent(u, v) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(common),
                Some(x) if x != common => return None,
                Some(_) => {}
            }
        }
    }
    let mu = mu?;
    (mu > 0).then_some(SrgParams {
        n,
        k,
        lambda: lambda.unwrap_or(0),
        mu,
    })
}
