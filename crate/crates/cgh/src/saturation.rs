//! F-freeness, F-saturation, deterministic closure, and exact sat/ex values
//! at small n via branch-and-bound on the conflict graph.
//!
//! F-free families are independent sets of the conflict graph; F-saturated
//! families are its maximal independent sets. sat(n, F) is therefore a
//! minimum maximal independent set (independent dominating set) and ex(n, F)
//! a maximum independent set.

use crate::bitset::BitSet;
use crate::combin::combinations;
use crate::cyclic::{canonical_form, Cgh, Edge};
use crate::patterns::{conflict_graph, pair_matches, ConflictGraph, PatternId};
use crate::{Error, Result};
use serde::Serialize;

/// True iff no pair of distinct edges of H forms the pattern.
pub fn is_free(h: &Cgh, pattern: PatternId) -> Result<bool> {
    Ok(find_conflict(h, pattern)?.is_none())
}

fn find_conflict(h: &Cgh, pattern: PatternId) -> Result<Option<(Edge, Edge)>> {
    if h.r != pattern.uniformity() {
        return Err(Error::UniformityMismatch(h.r, pattern.uniformity()));
    }
    let edges = h.edge_vec();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if pair_matches(h.n, &edges[i], &edges[j], pattern)? {
                return Ok(Some((edges[i].clone(), edges[j].clone())));
            }
        }
    }
    Ok(None)
}

/// True iff H is F-free and every r-set outside H forms the pattern with some
/// member of H (H is a maximal independent set of the conflict graph).
pub fn is_saturated(h: &Cgh, pattern: PatternId) -> Result<bool> {
    if !is_free(h, pattern)? {
        return Ok(false);
    }
    let members = h.edge_vec();
    for e in combinations(h.n, h.r) {
        if h.contains(&e) {
            continue;
        }
        let mut conflicts = false;
        for m in &members {
            if pair_matches(h.n, &e, m, pattern)? {
                conflicts = true;
                break;
            }
        }
        if !conflicts {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic saturation: visit candidate r-sets in colex rank order and
/// add each one that is conflict-free against the current family. A single
/// pass suffices since conflicts only accumulate.
///
/// For patterns whose two edges share a vertex the conflict test only scans
/// edges incident to the candidate, which keeps large-n closures cheap.
pub fn closure(h: &Cgh, pattern: PatternId) -> Result<Cgh> {
    if let Some((a, b)) = find_conflict(h, pattern)? {
        return Err(Error::NotFree {
            pattern: pattern.to_string(),
            first: a,
            second: b,
        });
    }
    let n = h.n;
    let shares_vertex = matches!(
        pattern.canonical(),
        PatternId::G0
            | PatternId::S1
            | PatternId::S2
            | PatternId::S3
            | PatternId::D1
            | PatternId::D2
    );
    let mut family: Vec<Edge> = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n]; // vertex -> family indices
    let push = |family: &mut Vec<Edge>, incident: &mut Vec<Vec<usize>>, e: Edge| {
        let idx = family.len();
        for &v in &e {
            incident[v].push(idx);
        }
        family.push(e);
    };
    let mut out = h.clone();
    for e in h.edges() {
        push(&mut family, &mut incident, e.clone());
    }
    let mut seen = vec![false; family.len()];
    for e in combinations(n, h.r) {
        if out.contains(&e) {
            continue;
        }
        let conflict = if shares_vertex {
            seen.resize(family.len(), false);
            seen.iter_mut().for_each(|s| *s = false);
            let mut hit = false;
            'scan: for &v in &e {
                for &idx in &incident[v] {
                    if !seen[idx] {
                        seen[idx] = true;
                        if pair_matches(n, &e, &family[idx], pattern)? {
                            hit = true;
                            break 'scan;
                        }
                    }
                }
            }
            hit
        } else {
            let mut hit = false;
            for f in &family {
                if pair_matches(n, &e, f, pattern)? {
                    hit = true;
                    break;
                }
            }
            hit
        };
        if !conflict {
            out.insert(e.clone())?;
            push(&mut family, &mut incident, e);
        }
    }
    Ok(out)
}

/// Result of an exact solve over the conflict graph.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub n: usize,
    #[serde(rename = "F")]
    pub pattern: PatternId,
    pub value: usize,
    pub exhaustive: bool,
    pub witnesses: Vec<Cgh>,
    pub nodes: u64,
}

pub const DEFAULT_BUDGET: u64 = 50_000_000;

struct SatSearch<'a> {
    g: &'a ConflictGraph,
    budget: u64,
    nodes: u64,
    truncated: bool,
    best: usize,
    best_sets: Vec<Vec<usize>>,
    collect_all: bool,
}

impl<'a> SatSearch<'a> {
    /// Branch on dominating a minimum-choice undominated vertex. `chosen` is
    /// independent; `dominated` is its closed neighborhood N[chosen] (so a
    /// vertex is selectable iff undominated); `excluded` are vertices banned
    /// from selection in this subtree.
    fn run(&mut self, chosen: &mut Vec<usize>, dominated: &BitSet, excluded: &BitSet) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return;
        }
        let m = self.g.num_vertices();
        // selectable: not excluded and outside N[chosen] (= not dominated)
        let avail: Vec<usize> = (0..m)
            .filter(|&v| !excluded.get(v) && !dominated.get(v))
            .collect();
        let undominated: Vec<usize> = (0..m).filter(|&v| !dominated.get(v)).collect();

        if undominated.is_empty() {
            // all vertices in N[chosen]: chosen is a maximal independent set
            let sz = chosen.len();
            if sz < self.best {
                self.best = sz;
                self.best_sets.clear();
            }
            if sz == self.best {
                self.best_sets.push(chosen.clone());
            }
            return;
        }

        // prune: greedy fractional domination lower bound
        let need = undominated.len();
        let mut covers: Vec<usize> = avail
            .iter()
            .map(|&u| {
                let mut c = if dominated.get(u) { 0 } else { 1 };
                c += self.g.adj[u]
                    .iter_ones()
                    .filter(|&w| !dominated.get(w))
                    .count();
                c
            })
            .collect();
        covers.sort_unstable_by(|a, b| b.cmp(a));
        let mut got = 0;
        let mut lb = 0;
        for c in covers {
            if got >= need {
                break;
            }
            got += c;
            lb += 1;
        }
        if got < need {
            return; // some vertex can never be dominated
        }
        let limit = if self.collect_all {
            chosen.len() + lb > self.best
        } else {
            chosen.len() + lb >= self.best
        };
        if limit {
            return;
        }

        // branch vertex: undominated with fewest selection choices, ties by rank
        let choices_of = |v: usize| -> Vec<usize> {
            let mut cs: Vec<usize> = Vec::new();
            if !excluded.get(v) {
                cs.push(v);
            }
            for u in self.g.adj[v].iter_ones() {
                if !excluded.get(u) && !dominated.get(u) {
                    cs.push(u);
                }
            }
            cs.sort_unstable();
            cs
        };
        let mut branch_v = undominated[0];
        let mut branch_choices = choices_of(branch_v);
        for &v in undominated.iter().skip(1) {
            let cs = choices_of(v);
            if cs.len() < branch_choices.len() {
                branch_v = v;
                branch_choices = cs;
                if branch_choices.is_empty() {
                    break;
                }
            }
        }
        let _ = branch_v;
        if branch_choices.is_empty() {
            return;
        }

        let mut local_excluded = excluded.clone();
        for &u in &branch_choices {
            let mut dom2 = dominated.clone();
            dom2.set(u);
            dom2.union_with(&self.g.adj[u]);
            chosen.push(u);
            self.run(chosen, &dom2, &local_excluded);
            chosen.pop();
            // solutions containing u were all found above
            local_excluded.set(u);
        }
    }
}

fn solve_sat(
    g: &ConflictGraph,
    budget: u64,
    collect_all: bool,
    incumbent: Option<(usize, Vec<usize>)>,
) -> (usize, Vec<Vec<usize>>, u64, bool) {
    let m = g.num_vertices();
    let mut search = SatSearch {
        g,
        budget,
        nodes: 0,
        truncated: false,
        best: m + 1,
        best_sets: Vec::new(),
        collect_all,
    };
    if let Some((val, set)) = incumbent {
        search.best = val;
        search.best_sets.push(set);
    }
    let mut chosen = Vec::new();
    search.run(&mut chosen, &BitSet::new(m), &BitSet::new(m));
    if collect_all {
        // keep only optima (incumbent seed may be duplicated by the search)
        search.best_sets.retain(|s| s.len() == search.best);
        search.best_sets.iter_mut().for_each(|s| s.sort_unstable());
        search.best_sets.sort();
        search.best_sets.dedup();
    }
    (search.best, search.best_sets, search.nodes, !search.truncated)
}

/// Exact sat(n, F): minimum maximal independent set of the conflict graph.
///
/// The deterministic closure of the empty family seeds the incumbent.
/// Exhaustive within the node budget; otherwise the best incumbent is
/// reported with `exhaustive = false`.
pub fn sat_exact(n: usize, pattern: PatternId, budget: u64) -> Result<SolveReport> {
    let g = conflict_graph(n, pattern)?;
    let seed = closure(&Cgh::empty(n, pattern.uniformity()), pattern)?;
    let seed_ranks: Vec<usize> = seed.edges().map(|e| g.rank_of(e)).collect();
    let (value, sets, nodes, exhaustive) =
        solve_sat(&g, budget, false, Some((seed.len(), seed_ranks)));
    let witnesses = dedup_canonical(&g, &sets);
    Ok(SolveReport {
        n,
        pattern,
        value,
        exhaustive,
        witnesses,
        nodes,
    })
}

/// All F-saturated families of minimum size, deduplicated by canonical form.
/// Re-runs the search with non-strict pruning so co-optimal witnesses survive.
pub fn enumerate_minimum_saturated(n: usize, pattern: PatternId, budget: u64) -> Result<Vec<Cgh>> {
    let first = sat_exact(n, pattern, budget)?;
    if !first.exhaustive {
        return Err(Error::Invalid(format!(
            "budget exhausted before sat({n},{pattern}) was proved"
        )));
    }
    let g = conflict_graph(n, pattern)?;
    let (value, sets, _, exhaustive) = solve_sat(&g, budget, true, None);
    if !exhaustive || value != first.value {
        return Err(Error::Invalid(
            "enumeration pass disagrees with bounding pass".into(),
        ));
    }
    Ok(dedup_canonical(&g, &sets))
}

fn dedup_canonical(g: &ConflictGraph, sets: &[Vec<usize>]) -> Vec<Cgh> {
    let mut out: Vec<Cgh> = Vec::new();
    for s in sets {
        let c = canonical_form(&g.cgh_from_ranks(s.iter().copied()));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.edge_vec().cmp(&b.edge_vec()));
    out
}

/// Every maximal independent set of the conflict graph, i.e. every
/// F-saturated family (Bron-Kerbosch with pivoting on the complement).
pub fn enumerate_all_saturated(g: &ConflictGraph) -> Vec<Vec<usize>> {
    let m = g.num_vertices();
    // complement adjacency (maximal IS of G = maximal cliques of complement)
    let comp: Vec<BitSet> = (0..m)
        .map(|i| {
            let mut row = BitSet::new(m);
            for j in 0..m {
                if j != i && !g.adj[i].get(j) {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    let mut all = Vec::new();
    let mut r = Vec::new();
    let mut p = BitSet::new(m);
    for i in 0..m {
        p.set(i);
    }
    let x = BitSet::new(m);
    bron_kerbosch(&comp, &mut r, p, x, &mut all);
    all
}

fn bron_kerbosch(
    comp: &[BitSet],
    r: &mut Vec<usize>,
    p: BitSet,
    x: BitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut s = r.clone();
        s.sort_unstable();
        out.push(s);
        return;
    }
    // pivot: vertex of P ∪ X maximizing |P ∩ N(pivot)|
    let pivot = p
        .iter_ones()
        .chain(x.iter_ones())
        .max_by_key(|&u| p.intersect_count(&comp[u]))
        .unwrap();
    let candidates: Vec<usize> = p
        .iter_ones()
        .filter(|&v| !comp[pivot].get(v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let mut p2 = BitSet::new(comp.len());
        for u in p.iter_ones() {
            if comp[v].get(u) {
                p2.set(u);
            }
        }
        let mut x2 = BitSet::new(comp.len());
        for u in x.iter_ones() {
            if comp[v].get(u) {
                x2.set(u);
            }
        }
        r.push(v);
        bron_kerbosch(comp, r, p2, x2, out);
        r.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Exact ex(n, F): maximum independent set of the conflict graph, found as a
/// maximum clique of the complement with a greedy-coloring bound.
pub fn ex_exact(n: usize, pattern: PatternId, budget: u64) -> Result<SolveReport> {
    let g = conflict_graph(n, pattern)?;
    let m = g.num_vertices();
    let comp: Vec<BitSet> = (0..m)
        .map(|i| {
            let mut row = BitSet::new(m);
            for j in 0..m {
                if j != i && !g.adj[i].get(j) {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut nodes = 0u64;
    let mut truncated = false;
    let all: Vec<usize> = (0..m).collect();
    max_clique(
        &comp,
        &mut cur,
        all,
        &mut best,
        &mut nodes,
        budget,
        &mut truncated,
    );
    let witness = canonical_form(&g.cgh_from_ranks(best.iter().copied()));
    Ok(SolveReport {
        n,
        pattern,
        value: best.len(),
        exhaustive: !truncated,
        witnesses: vec![witness],
        nodes,
    })
}

fn max_clique(
    adj: &[BitSet],
    cur: &mut Vec<usize>,
    cand: Vec<usize>,
    best: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
    truncated: &mut bool,
) {
    *nodes += 1;
    if *nodes > budget {
        *truncated = true;
        return;
    }
    if cand.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    // greedy coloring bound: vertices in color class order
    let mut color: Vec<usize> = vec![0; cand.len()];
    let mut order: Vec<usize> = Vec::with_capacity(cand.len());
    {
        let mut remaining = cand.clone();
        let mut c = 0;
        while !remaining.is_empty() {
            c += 1;
            let mut class_mask = BitSet::new(adj.len());
            let mut next = Vec::new();
            for &v in &remaining {
                if class_mask.is_disjoint(&adj[v]) {
                    class_mask.set(v);
                    color[order.len()] = c;
                    order.push(v);
                } else {
                    next.push(v);
                }
            }
            remaining = next;
        }
    }
    for i in (0..order.len()).rev() {
        if *truncated || cur.len() + color[i] <= best.len() {
            return;
        }
        let v = order[i];
        let new_cand: Vec<usize> = order[..i]
            .iter()
            .copied()
            .filter(|&u| adj[v].get(u))
            .collect();
        cur.push(v);
        max_clique(adj, cur, new_cand, best, nodes, budget, truncated);
        cur.pop();
    }
}

/// Per-edge weights wt(h) = sum over v in h of 1/d_H(v), plus the covered
/// vertex count; the double-counting identity gives sum(wt) = |covered|.
pub fn weight_profile(h: &Cgh) -> Result<(Vec<(Edge, f64)>, usize)> {
    if h.r != 3 {
        return Err(Error::Invalid("weight profile is defined for r=3".into()));
    }
    let deg = h.degrees();
    let covered = deg.iter().filter(|&&d| d > 0).count();
    let weights = h
        .edges()
        .map(|e| {
            let w = e.iter().map(|&v| 1.0 / deg[v] as f64).sum();
            (e.clone(), w)
        })
        .collect();
    Ok((weights, covered))
}

/// A small random pattern-free family: shuffle all r-sets with a seeded
/// generator and greedily keep up to max_edges of them while freeness holds.
pub fn random_free_seed(
    n: usize,
    r: usize,
    pattern: PatternId,
    max_edges: usize,
    seed: u64,
) -> Result<Cgh> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<Edge> = crate::combin::combinations(n, r).collect();
    all.shuffle(&mut rng);
    let mut h = Cgh::empty(n, r);
    for e in all {
        if h.len() >= max_edges {
            break;
        }
        let mut ok = true;
        for f in h.edges() {
            if crate::patterns::pair_matches(n, f, &e, pattern)? {
                ok = false;
                break;
            }
        }
        if ok {
            h.insert(e)?;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    fn cgh(n: usize, r: usize, edges: &[&[usize]]) -> Cgh {
        Cgh::from_edges(n, r, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn freeness_examples() {
        let h = cgh(6, 3, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(!is_free(&h, PatternId::M1).unwrap());
        assert!(is_free(&cgh(6, 3, &[&[0, 1, 2]]), PatternId::M2).unwrap());
        let all: Vec<Vec<usize>> = combinations(6, 3).collect();
        let complete = Cgh::from_edges(6, 3, all).unwrap();
        assert!(!is_free(&complete, PatternId::M2).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let single = cgh(6, 3, &[&[0, 1, 2]]);
        assert!(!is_saturated(&single, PatternId::M1).unwrap());
        let consec = crate::constructions::consecutive_triples(8).unwrap();
        assert!(is_saturated(&consec, PatternId::S2).unwrap());
        assert!(is_free(&consec, PatternId::S3).unwrap());
    }

    #[test]
    fn closure_examples() {
        let c = closure(&Cgh::empty(6, 3), PatternId::M1).unwrap();
        assert_eq!(c.len(), 17);
        assert!(is_saturated(&c, PatternId::M1).unwrap());
        assert_eq!(closure(&c, PatternId::M1).unwrap(), c);
        // containment contract
        let seed = cgh(8, 3, &[&[0, 1, 2]]);
        let cl = closure(&seed, PatternId::D2).unwrap();
        assert!(cl.contains(&[0, 1, 2]));
        assert!(is_saturated(&cl, PatternId::D2).unwrap());
        // non-free input rejected with the offending pair
        let bad = cgh(6, 3, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(matches!(
            closure(&bad, PatternId::M1),
            Err(Error::NotFree { .. })
        ));
    }

    #[test]
    fn sat_exact_small_values() {
        assert_eq!(sat_exact(6, PatternId::M1, DEFAULT_BUDGET).unwrap().value, 17);
        assert_eq!(sat_exact(6, PatternId::G0, DEFAULT_BUDGET).unwrap().value, 3);
        assert_eq!(sat_exact(6, PatternId::G1, DEFAULT_BUDGET).unwrap().value, 9);
    }

    #[test]
    fn sat_exact_m3_bounds() {
        let n = 7;
        let rep = sat_exact(n, PatternId::M3, DEFAULT_BUDGET).unwrap();
        assert!(rep.exhaustive);
        let lower = n * (n - 3);
        let upper = (binomial(n, 3) - binomial(n - 3, 3)) as usize;
        assert!(rep.value >= lower && rep.value <= upper, "got {}", rep.value);
        // every minimum witness contains all short edges {i, i+1, j}
        for w in &rep.witnesses {
            for i in 0..n {
                for j in 0..n {
                    if j != i && j != (i + 1) % n {
                        assert!(w.contains(&[i, (i + 1) % n, j]));
                    }
                }
            }
        }
    }

    #[test]
    fn ex_exact_values() {
        // C(n,2) - 2 holds from n = 7 on; n = 6 is exceptional (14)
        assert_eq!(ex_exact(7, PatternId::M2, DEFAULT_BUDGET).unwrap().value, 19);
        assert_eq!(ex_exact(6, PatternId::M2, DEFAULT_BUDGET).unwrap().value, 14);
        assert_eq!(ex_exact(6, PatternId::M3, DEFAULT_BUDGET).unwrap().value, 19);
        // below 2r every r-set is M1-free, so the whole cube is extremal
        assert_eq!(ex_exact(5, PatternId::M1, DEFAULT_BUDGET).unwrap().value, 10);
    }

    #[test]
    fn minimum_enumeration_n6_g2() {
        let mins = enumerate_minimum_saturated(5, PatternId::G2, DEFAULT_BUDGET).unwrap();
        assert!(!mins.is_empty());
        for h in &mins {
            assert_eq!(h.len(), 5);
        }
    }

    #[test]
    fn weight_profile_examples() {
        let (w, covered) = weight_profile(&cgh(6, 3, &[&[0, 1, 2]])).unwrap();
        assert_eq!(w[0].1, 3.0);
        assert_eq!(covered, 3);
        let h = cgh(6, 3, &[&[0, 1, 2], &[0, 3, 4]]);
        let (w, covered) = weight_profile(&h).unwrap();
        let wt012 = w.iter().find(|(e, _)| e == &vec![0, 1, 2]).unwrap().1;
        assert!((wt012 - 2.5).abs() < 1e-12);
        let total: f64 = w.iter().map(|(_, x)| x).sum();
        assert!((total - covered as f64).abs() < 1e-9);
    }
}
