//! The two-edge pattern catalog: canonical embeddings, pair classification,
//! and conflict graphs over the rank space of r-subsets.
//!
//! For r=2 the patterns are G0 (shared vertex), G1 (crossing), G2
//! (non-crossing disjoint). For r=3 every pair of distinct triples realizes
//! exactly one of M1, M2, M3 (disjoint with 2/4/6 alternation blocks), S1, S2,
//! S3 (one shared vertex: consecutive / nested / crossing) or D1, D2 (two
//! shared vertices: odd vertices on opposite / the same arc). M1r(r) is the
//! r-uniform geometrically disjoint pair; M1r(2) and M1r(3) alias G2 and M1.

use crate::bitset::BitSet;
use crate::combin::{binomial, colex_rank, combinations};
use crate::cyclic::{in_closed_arc, Cgh};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PatternId {
    G0,
    G1,
    G2,
    M1,
    M2,
    M3,
    S1,
    S2,
    S3,
    D1,
    D2,
    /// Two geometrically disjoint r-edges for general uniformity r >= 2.
    M1r(usize),
}

impl PatternId {
    pub const ALL_R3: [PatternId; 8] = [
        PatternId::M1,
        PatternId::M2,
        PatternId::M3,
        PatternId::S1,
        PatternId::S2,
        PatternId::S3,
        PatternId::D1,
        PatternId::D2,
    ];

    pub fn uniformity(self) -> usize {
        match self {
            PatternId::G0 | PatternId::G1 | PatternId::G2 => 2,
            PatternId::M1r(r) => r,
            _ => 3,
        }
    }

    /// Resolve aliases: M1r(2) = G2 and M1r(3) = M1.
    pub fn canonical(self) -> PatternId {
        match self {
            PatternId::M1r(2) => PatternId::G2,
            PatternId::M1r(3) => PatternId::M1,
            other => other,
        }
    }

    /// Minimal n over which the pattern embeds.
    pub fn min_n(self) -> usize {
        match self {
            PatternId::G0 => 3,
            PatternId::G1 | PatternId::G2 => 4,
            PatternId::M1 | PatternId::M2 | PatternId::M3 => 6,
            PatternId::S1 | PatternId::S2 | PatternId::S3 => 5,
            PatternId::D1 | PatternId::D2 => 4,
            PatternId::M1r(r) => 2 * r,
        }
    }

    /// A minimal-n two-edge cgh realizing the pattern.
    pub fn canonical_embedding(self) -> Cgh {
        let (n, e, f): (usize, Vec<usize>, Vec<usize>) = match self {
            PatternId::G0 => (3, vec![0, 1], vec![0, 2]),
            PatternId::G1 => (4, vec![0, 2], vec![1, 3]),
            PatternId::G2 => (4, vec![0, 1], vec![2, 3]),
            PatternId::M1 => (6, vec![0, 1, 2], vec![3, 4, 5]),
            PatternId::M2 => (6, vec![0, 1, 3], vec![2, 4, 5]),
            PatternId::M3 => (6, vec![0, 2, 4], vec![1, 3, 5]),
            PatternId::S1 => (5, vec![0, 1, 2], vec![0, 3, 4]),
            PatternId::S2 => (5, vec![0, 2, 3], vec![0, 1, 4]),
            PatternId::S3 => (5, vec![0, 1, 3], vec![0, 2, 4]),
            PatternId::D1 => (4, vec![0, 1, 2], vec![0, 2, 3]),
            PatternId::D2 => (4, vec![0, 1, 3], vec![0, 2, 3]),
            PatternId::M1r(r) => (2 * r, (0..r).collect(), (r..2 * r).collect()),
        };
        Cgh::from_edges(n, e.len(), vec![e, f]).expect("embeddings are well-formed")
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternId::M1r(r) => write!(f, "M1r:{r}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for PatternId {
    type Err = Error;
    fn from_str(s: &str) -> Result<PatternId> {
        Ok(match s {
            "G0" => PatternId::G0,
            "G1" => PatternId::G1,
            "G2" => PatternId::G2,
            "M1" => PatternId::M1,
            "M2" => PatternId::M2,
            "M3" => PatternId::M3,
            "S1" => PatternId::S1,
            "S2" => PatternId::S2,
            "S3" => PatternId::S3,
            "D1" => PatternId::D1,
            "D2" => PatternId::D2,
            other => {
                let r = other
                    .strip_prefix("M1r:")
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&r| r >= 2)
                    .ok_or_else(|| Error::UnknownPattern(other.to_string()))?;
                PatternId::M1r(r)
            }
        })
    }
}

impl From<PatternId> for String {
    fn from(p: PatternId) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for PatternId {
    type Error = Error;
    fn try_from(s: String) -> Result<PatternId> {
        s.parse()
    }
}

/// Rotation-invariant shape of an unordered edge pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairShape {
    /// Vertices common to both edges.
    pub shared: usize,
    /// Maximal blocks of equal edge-membership reading the union clockwise
    /// (only defined for disjoint pairs; always even).
    pub alternations: usize,
}

/// Number of maximal same-edge blocks reading the 2r union vertices clockwise.
fn block_count(e: &[usize], f: &[usize]) -> usize {
    let mut pts: Vec<(usize, bool)> = e
        .iter()
        .map(|&v| (v, true))
        .chain(f.iter().map(|&v| (v, false)))
        .collect();
    pts.sort_unstable();
    let mut blocks = 0;
    for i in 0..pts.len() {
        let prev = pts[(i + pts.len() - 1) % pts.len()].1;
        if pts[i].1 != prev {
            blocks += 1;
        }
    }
    blocks.max(1)
}

/// Classify a pair of distinct same-size edges into its two-edge pattern.
///
/// Returns None only for uniformities r >= 4 with a shape other than the
/// geometrically disjoint one; for r = 2 and r = 3 the catalog is complete.
pub fn classify_pair(n: usize, e: &[usize], f: &[usize]) -> Result<Option<PatternId>> {
    let mut e = e.to_vec();
    let mut f = f.to_vec();
    e.sort_unstable();
    f.sort_unstable();
    if e.len() != f.len() {
        return Err(Error::UniformityMismatch(e.len(), f.len()));
    }
    if e == f {
        return Err(Error::EqualEdges);
    }
    if e.iter().chain(&f).any(|&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            index: *e.iter().chain(&f).max().unwrap(),
            n,
        });
    }
    let r = e.len();
    let shared: Vec<usize> = e.iter().copied().filter(|v| f.contains(v)).collect();

    if r == 2 {
        return Ok(Some(match shared.len() {
            1 => PatternId::G0,
            0 => {
                if block_count(&e, &f) == 4 {
                    PatternId::G1
                } else {
                    PatternId::G2
                }
            }
            _ => unreachable!("distinct 2-sets share at most one vertex"),
        }));
    }

    if r == 3 {
        return Ok(Some(match shared.len() {
            0 => match block_count(&e, &f) {
                2 => PatternId::M1,
                4 => PatternId::M2,
                6 => PatternId::M3,
                b => unreachable!("disjoint triples alternate in {b} blocks"),
            },
            1 => {
                let v = shared[0];
                // the four non-shared vertices clockwise starting just after v
                let mut others: Vec<(usize, bool)> = e
                    .iter()
                    .filter(|&&x| x != v)
                    .map(|&x| ((x + n - v) % n, true))
                    .chain(
                        f.iter()
                            .filter(|&&x| x != v)
                            .map(|&x| ((x + n - v) % n, false)),
                    )
                    .collect();
                others.sort_unstable();
                let pat: Vec<bool> = others.iter().map(|&(_, in_e)| in_e).collect();
                match (pat[0] == pat[1], pat[1] == pat[2], pat[2] == pat[3]) {
                    (true, false, true) => PatternId::S1,  // AABB / BBAA
                    (false, true, false) => PatternId::S2, // ABBA / BAAB
                    (false, false, false) => PatternId::S3, // ABAB / BABA
                    _ => unreachable!("two of each label"),
                }
            }
            2 => {
                let (x, y) = (shared[0], shared[1]);
                let a = *e.iter().find(|v| !shared.contains(v)).unwrap();
                let b = *f.iter().find(|v| !shared.contains(v)).unwrap();
                let a_side = in_closed_arc(n, x, y, a);
                let b_side = in_closed_arc(n, x, y, b);
                if a_side == b_side {
                    PatternId::D2
                } else {
                    PatternId::D1
                }
            }
            _ => unreachable!("distinct triples share at most two vertices"),
        }));
    }

    // general r: only the geometrically disjoint pattern is in the catalog
    if shared.is_empty() && block_count(&e, &f) == 2 {
        Ok(Some(PatternId::M1r(r)))
    } else {
        Ok(None)
    }
}

/// True iff the pair {e, f} forms the given pattern, resolving aliases.
pub fn pair_matches(n: usize, e: &[usize], f: &[usize], pattern: PatternId) -> Result<bool> {
    let got = classify_pair(n, e, f)?;
    Ok(got.map(PatternId::canonical) == Some(pattern.canonical()))
}

/// Graph on all r-subsets of the circle; two subsets are adjacent iff the
/// pair forms the given pattern. Vertices are colex ranks.
#[derive(Clone)]
pub struct ConflictGraph {
    pub n: usize,
    pub r: usize,
    pub pattern: PatternId,
    pub adj: Vec<BitSet>,
    sets: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn set_of(&self, rank: usize) -> &[usize] {
        &self.sets[rank]
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        let mut s = set.to_vec();
        s.sort_unstable();
        colex_rank(&s)
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.adj[rank].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn cgh_from_ranks(&self, ranks: impl IntoIterator<Item = usize>) -> Cgh {
        let edges: Vec<Vec<usize>> = ranks.into_iter().map(|i| self.sets[i].clone()).collect();
        Cgh::from_edges(self.n, self.r, edges).expect("ranks are valid r-subsets")
    }
}

/// Build the conflict graph for a pattern over all r-subsets of [0, n).
pub fn conflict_graph(n: usize, pattern: PatternId) -> Result<ConflictGraph> {
    // below the pattern's minimum point count the graph is simply edgeless,
    // so only require that r-subsets exist at all
    let r = pattern.uniformity();
    if n < r {
        return Err(Error::NTooSmall {
            n,
            reason: format!("no {r}-subsets on {n} points"),
        });
    }
    let m = binomial(n, r) as usize;
    let sets: Vec<Vec<usize>> = combinations(n, r).collect();
    let target = pattern.canonical();
    let adj: Vec<BitSet> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = BitSet::new(m);
            for j in 0..m {
                if j != i
                    && classify_pair(n, &sets[i], &sets[j])
                        .expect("valid ranked sets")
                        .map(PatternId::canonical)
                        == Some(target)
                {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    Ok(ConflictGraph {
        n,
        r,
        pattern,
        adj,
        sets,
    })
}

/// Number of r-sets forming the pattern with e: the degree of e in the
/// conflict graph, computed directly.
pub fn pattern_degree(n: usize, e: &[usize], pattern: PatternId) -> Result<usize> {
    let r = pattern.uniformity();
    if e.len() != r {
        return Err(Error::UniformityMismatch(e.len(), r));
    }
    let target = pattern.canonical();
    let mut count = 0;
    for f in combinations(n, r) {
        if f.as_slice() != e
            && classify_pair(n, e, &f)?.map(PatternId::canonical) == Some(target)
        {
            count += 1;
        }
    }
    Ok(count)
}
