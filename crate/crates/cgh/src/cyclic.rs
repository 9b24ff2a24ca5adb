//! Cyclic-order arithmetic, arcs, edges and the cgh container.
//!
//! Vertices are indices in [0, n) on a circle with clockwise ordering
//! v_0 < v_1 < ... < v_{n-1} < v_0. All index arithmetic is mod n; the only
//! meaningful comparison is cyclic betweenness.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// An edge: r distinct vertex indices, stored sorted by raw index. The sort
/// is for hashing and dedup only; all semantics go through cyclic predicates.
pub type Edge = Vec<usize>;

/// Size of the closed arc [a, b] walking clockwise.
#[inline]
pub fn closed_arc_len(n: usize, a: usize, b: usize) -> usize {
    (b + n - a) % n + 1
}

/// True iff x lies on the closed clockwise arc [a, b].
#[inline]
pub fn in_closed_arc(n: usize, a: usize, b: usize, x: usize) -> bool {
    (x + n - a) % n <= (b + n - a) % n
}

/// A cyclic interval with independently open/closed endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
    pub closed_start: bool,
    pub closed_end: bool,
}

impl Arc {
    pub fn closed(start: usize, end: usize) -> Self {
        Arc {
            start,
            end,
            closed_start: true,
            closed_end: true,
        }
    }

    pub fn open(start: usize, end: usize) -> Self {
        Arc {
            start,
            end,
            closed_start: false,
            closed_end: false,
        }
    }
}

/// The members of a cyclic interval, in clockwise order from the start.
///
/// `[v_i, v_i]` is the singleton; an open arc with equal endpoints is
/// rejected as ill-formed.
pub fn arc_members(n: usize, arc: &Arc) -> Result<Vec<usize>> {
    if arc.start >= n || arc.end >= n {
        return Err(Error::VertexOutOfRange {
            index: arc.start.max(arc.end),
            n,
        });
    }
    if arc.start == arc.end && !arc.closed_start && !arc.closed_end {
        return Err(Error::EmptyOpenArc);
    }
    let len = closed_arc_len(n, arc.start, arc.end);
    let mut out: Vec<usize> = (0..len).map(|k| (arc.start + k) % n).collect();
    if !arc.closed_end {
        out.pop();
    }
    if !arc.closed_start && !out.is_empty() {
        out.remove(0);
    }
    Ok(out)
}

/// An r-uniform convex geometric hypergraph: a deduplicated edge family over
/// n cyclically ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CghRaw")]
pub struct Cgh {
    pub n: usize,
    pub r: usize,
    edges: BTreeSet<Edge>,
}

#[derive(Deserialize)]
struct CghRaw {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<CghRaw> for Cgh {
    type Error = Error;
    fn try_from(raw: CghRaw) -> Result<Cgh> {
        Cgh::from_edges(raw.n, raw.r, raw.edges)
    }
}

impl Cgh {
    pub fn empty(n: usize, r: usize) -> Self {
        assert!(r >= 2, "uniformity must be at least 2");
        Cgh {
            n,
            r,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(n: usize, r: usize, edges: I) -> Result<Cgh>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut h = Cgh::empty(n, r);
        for e in edges {
            h.insert(e)?;
        }
        Ok(h)
    }

    /// Insert an edge given in any vertex order; returns false if already present.
    pub fn insert(&mut self, mut e: Edge) -> Result<bool> {
        e.sort_unstable();
        e.dedup();
        if e.len() != self.r {
            return Err(Error::BadEdge(e));
        }
        if let Some(&v) = e.last() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
        }
        Ok(self.edges.insert(e))
    }

    pub fn contains(&self, e: &[usize]) -> bool {
        let mut s = e.to_vec();
        s.sort_unstable();
        self.edges.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order of their sorted vertex lists.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges.iter().cloned().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }
}

/// Rotate every vertex by s places clockwise.
pub fn rotate(h: &Cgh, s: usize) -> Cgh {
    let n = h.n;
    let edges = h
        .edges()
        .map(|e| e.iter().map(|&v| (v + s) % n).collect())
        .collect::<Vec<Edge>>();
    Cgh::from_edges(n, h.r, edges).expect("rotation preserves validity")
}

/// Mirror the circle (v_i -> v_{n-i mod n}). Reflections do not respect the
/// cyclic ordering as defined, so this is a helper and never part of
/// [`is_isomorphic`].
pub fn reflect(h: &Cgh) -> Cgh {
    let n = h.n;
    let edges = h
        .edges()
        .map(|e| e.iter().map(|&v| (n - v) % n).collect())
        .collect::<Vec<Edge>>();
    Cgh::from_edges(n, h.r, edges).expect("reflection preserves validity")
}

/// Lexicographically least rotation of H under the sorted-edge-list encoding.
pub fn canonical_form(h: &Cgh) -> Cgh {
    let mut best = h.clone();
    for s in 1..h.n {
        let cand = rotate(h, s);
        if cand.edges < best.edges {
            best = cand;
        }
    }
    best
}

/// Cyclic-order-preserving isomorphism. The order-preserving bijections of
/// the circle are exactly the n rotations, so this reduces to a rotation test.
pub fn is_isomorphic(h1: &Cgh, h2: &Cgh) -> bool {
    if h1.n != h2.n || h1.r != h2.r || h1.len() != h2.len() {
        return false;
    }
    (0..h1.n).any(|s| rotate(h1, s) == *h2)
}
