//! Structure theory of families saturated with respect to two geometrically
//! disjoint r-edges: witness tuples and H_n^(r)(C), the lambda/rho nearest
//! neighbor maps, tuple extraction, local shift moves with closed-form edge
//! deltas, and a structural (non-brute-force) saturation-number oracle.

use crate::combin::{binomial, combinations};
use crate::cyclic::{closed_arc_len, in_closed_arc, Cgh};
use crate::patterns::PatternId;
use crate::saturation::{closure, is_saturated};
use crate::{Error, Result};
use serde::Serialize;

/// An odd tuple C = (w_1, ..., w_{2l+1}) of circle points. Semi-valid means
/// the alternating cyclic order w_1 < w_3 < ... < w_{2l+1} < w_2 < ... <
/// w_{2l} < w_1 holds; r-valid additionally requires every closed arc
/// [w_i, w_{i-1}] to have at least r points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTuple {
    pub n: usize,
    pub points: Vec<usize>,
}

impl WitnessTuple {
    pub fn new(n: usize, points: Vec<usize>) -> Self {
        WitnessTuple { n, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ell(&self) -> usize {
        (self.points.len() - 1) / 2
    }

    /// w_p with 1-based index p taken mod 2l+1 (so w_0 = w_{2l+1}).
    pub fn w(&self, p: i64) -> usize {
        let m = self.points.len() as i64;
        self.points[((p - 1).rem_euclid(m)) as usize]
    }

    /// The alternating order read with step 2 (w_1, w_3, ..., w_{2l+1},
    /// w_2, ..., w_{2l}) must ascend strictly around the circle; this
    /// characterization is invariant under rotating the tuple's start.
    pub fn is_semi_valid(&self) -> bool {
        let m = self.points.len();
        if m < 3 || m % 2 == 0 || self.points.iter().any(|&v| v >= self.n) {
            return false;
        }
        let step2: Vec<usize> = (0..m).map(|q| self.points[(2 * q) % m]).collect();
        let base = step2[0];
        let offs: Vec<usize> = step2.iter().map(|&v| (v + self.n - base) % self.n).collect();
        offs.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_r_valid(&self, r: usize) -> bool {
        self.is_semi_valid()
            && (1..=self.points.len() as i64)
                .all(|p| closed_arc_len(self.n, self.w(p), self.w(p - 1)) >= r)
    }

    /// Same point cycle regardless of which entry is written first.
    pub fn same_up_to_start(&self, other: &WitnessTuple) -> bool {
        let m = self.points.len();
        self.n == other.n
            && m == other.points.len()
            && (0..m).any(|d| (0..m).all(|i| self.points[(i + d) % m] == other.points[i]))
    }
}

/// Whether e (sorted or not) meets every closed arc [w_i, w_{i-1}] of C.
fn meets_all_arcs(n: usize, c: &WitnessTuple, e: &[usize]) -> bool {
    (1..=c.points.len() as i64).all(|p| {
        let (a, b) = (c.w(p), c.w(p - 1));
        e.iter().any(|&v| in_closed_arc(n, a, b, v))
    })
}

/// H_n^(r)(C): every r-set meeting each of the 2l+1 closed arcs of C.
pub fn build_h_of_c(n: usize, r: usize, c: &WitnessTuple) -> Result<Cgh> {
    if c.n != n || !c.is_semi_valid() {
        return Err(Error::NotSemiValid(c.points.clone()));
    }
    let mut h = Cgh::empty(n, r);
    for e in combinations(n, r) {
        if meets_all_arcs(n, c, &e) {
            h.insert(e)?;
        }
    }
    Ok(h)
}

/// |H_n^(r)(C)| without materializing the family: inclusion-exclusion over
/// missed arcs when the tuple is short (an r-set misses a set S of arcs iff
/// it avoids their union), direct enumeration as the authority otherwise.
pub fn h_of_c_size(n: usize, r: usize, c: &WitnessTuple) -> Result<usize> {
    if c.n != n || !c.is_semi_valid() {
        return Err(Error::NotSemiValid(c.points.clone()));
    }
    let m = c.points.len();
    if m <= 7 {
        let arcs: Vec<Vec<bool>> = (1..=m as i64)
            .map(|p| {
                let (a, b) = (c.w(p), c.w(p - 1));
                (0..n).map(|v| in_closed_arc(n, a, b, v)).collect()
            })
            .collect();
        let mut total: i64 = 0;
        for mask in 0u32..(1 << m) {
            let mut covered = 0usize;
            for v in 0..n {
                if (0..m).any(|i| mask >> i & 1 == 1 && arcs[i][v]) {
                    covered += 1;
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            total += sign * binomial(n - covered, r) as i64;
        }
        Ok(total as usize)
    } else {
        let mut count = 0usize;
        for e in combinations(n, r) {
            if meets_all_arcs(n, c, &e) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// The tuple C = (v_{n-r+1}, v_1, v_{n-r+2}, v_2, ..., v_{n-1}, v_{r-1}, v_0)
/// whose H_n^(r)(C) equals star_plus(n, r).
pub fn star_plus_tuple(n: usize, r: usize) -> WitnessTuple {
    let mut points = Vec::with_capacity(2 * r - 1);
    for t in 0..r - 1 {
        points.push(n - r + 1 + t);
        points.push(t + 1);
    }
    points.push(0);
    WitnessTuple::new(n, points)
}

/// The fully consecutive canonical tuple of length 2m+1:
/// C_m = (v_{n-m}, v_1, v_{n-m+1}, v_2, ..., v_{n-1}, v_m, v_0).
pub fn canonical_tuple(n: usize, m: usize) -> WitnessTuple {
    let mut points = Vec::with_capacity(2 * m + 1);
    for t in 0..m {
        points.push(n - m + t);
        points.push(t + 1);
    }
    points.push(0);
    WitnessTuple::new(n, points)
}

/// True iff star_plus(n, r) coincides with H_n^(r) of its defining tuple.
pub fn eq1_equivalence_check(n: usize, r: usize) -> Result<bool> {
    let via_tuple = build_h_of_c(n, r, &star_plus_tuple(n, r))?;
    Ok(via_tuple == crate::constructions::star_plus(n, r)?)
}

/// Nearest leftmost (lambda) and rightmost (rho) neighbor per vertex:
/// lambda(v) starts the shortest closed arc ending at v that contains an
/// edge through v; rho(v) ends the shortest such arc starting at v.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaRhoMap {
    pub lambda: Vec<usize>,
    pub rho: Vec<usize>,
}

pub fn lambda_rho(h: &Cgh) -> Result<LambdaRhoMap> {
    let n = h.n;
    let mut lambda = vec![usize::MAX; n];
    let mut rho = vec![usize::MAX; n];
    let mut best_l = vec![usize::MAX; n]; // arc lengths
    let mut best_r = vec![usize::MAX; n];
    for e in h.edges() {
        for &v in e {
            // the minimal closed arc [u, v] containing e starts at the
            // element farthest counterclockwise from v
            let u_l = *e
                .iter()
                .max_by_key(|&&x| (v + n - x) % n)
                .expect("edges are nonempty");
            let len_l = closed_arc_len(n, u_l, v);
            if len_l < best_l[v] {
                best_l[v] = len_l;
                lambda[v] = u_l;
            }
            let u_r = *e
                .iter()
                .max_by_key(|&&x| (x + n - v) % n)
                .expect("edges are nonempty");
            let len_r = closed_arc_len(n, v, u_r);
            if len_r < best_r[v] {
                best_r[v] = len_r;
                rho[v] = u_r;
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| lambda[v] == usize::MAX) {
        return Err(Error::NotSaturatedInput(format!(
            "vertex {v} has degree 0, impossible in a saturated family"
        )));
    }
    Ok(LambdaRhoMap { lambda, rho })
}

/// Follow w_{i+1} = lambda(w_i) from a vertex with rho != lambda until the
/// walk closes; in a saturated family the result is the witness tuple of the
/// structure theorem.
pub fn extract_tuple(h: &Cgh) -> Result<WitnessTuple> {
    let lr = lambda_rho(h)?;
    let n = h.n;
    let start = (0..n)
        .find(|&v| lr.rho[v] != lr.lambda[v])
        .ok_or_else(|| Error::NotSaturatedInput("no vertex with rho != lambda".into()))?;
    let mut points = vec![start];
    let mut cur = lr.lambda[start];
    while cur != start {
        if points.len() > n {
            return Err(Error::NotSaturatedInput(
                "lambda walk does not close".into(),
            ));
        }
        points.push(cur);
        cur = lr.lambda[cur];
    }
    let t = WitnessTuple::new(n, points);
    if !t.is_semi_valid() {
        return Err(Error::NotSaturatedInput(format!(
            "lambda walk {:?} is not semi-valid",
            t.points
        )));
    }
    Ok(t)
}

/// All semi-valid tuples of length 2l+1: each (2l+1)-point subset
/// {p_0 < ... < p_{2l}} admits exactly 2l+1 of them, one per choice of which
/// subset element plays w_1 in the step-2 reading.
pub fn enumerate_semi_valid(n: usize, ell: usize) -> Vec<WitnessTuple> {
    let m = 2 * ell + 1;
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    for subset in combinations(n, m) {
        for t in 0..m {
            let mut points = vec![0; m];
            for q in 0..m {
                points[(2 * q) % m] = subset[(t + q) % m];
            }
            let tup = WitnessTuple::new(n, points);
            debug_assert!(tup.is_semi_valid());
            out.push(tup);
        }
    }
    out
}

pub fn enumerate_r_valid(n: usize, r: usize, ell: usize) -> Vec<WitnessTuple> {
    enumerate_semi_valid(n, ell)
        .into_iter()
        .filter(|c| c.is_r_valid(r))
        .collect()
}

/// Largest k such that C is (i,k)-consecutive at the 1-based position i:
/// w_{i+2s} = v_{j+s} for 0 <= s < k with v_j = w_i. Capped at 2l+1.
pub fn run_length(c: &WitnessTuple, i: usize) -> usize {
    let m = c.points.len();
    let j = c.w(i as i64);
    let mut k = 1;
    while k < m {
        if c.w((i + 2 * k) as i64) != (j + k) % c.n {
            break;
        }
        k += 1;
    }
    k
}

pub fn is_consecutive(c: &WitnessTuple, i: usize, k: usize) -> bool {
    k >= 1 && run_length(c, i) >= k
}

/// C_{i,k,m}: the k consecutive points w_i, w_{i+2}, ..., w_{i+2k-2} shifted
/// m units clockwise. The output may fail semi-validity; callers must check.
pub fn shift_tuple(c: &WitnessTuple, i: usize, k: usize, m: i64) -> Result<WitnessTuple> {
    if !is_consecutive(c, i, k) {
        return Err(Error::NotConsecutive { i, k });
    }
    let len = c.points.len() as i64;
    let j = c.w(i as i64);
    let mut points = c.points.clone();
    for s in 0..k {
        let pos = ((i as i64 + 2 * s as i64 - 1).rem_euclid(len)) as usize;
        points[pos] = ((j as i64 + s as i64 + m).rem_euclid(c.n as i64)) as usize;
    }
    Ok(WitnessTuple::new(c.n, points))
}

/// The (i, k) prescribed by the run-after-the-longest-run recipe: take a
/// maximal run k' starting at i', then the maximal run starting at
/// i = i' + 2k'. Both unit shifts of that run are semi-valid. Signals
/// FullyConsecutive when the whole tuple is one run (no local move applies).
pub fn find_shiftable(c: &WitnessTuple) -> Result<(usize, usize)> {
    if !c.is_semi_valid() {
        return Err(Error::NotSemiValid(c.points.clone()));
    }
    let m = c.points.len();
    let mut best_i = 1;
    let mut best_k = 0;
    for i in 1..=m {
        let k = run_length(c, i);
        if k > best_k {
            best_k = k;
            best_i = i;
        }
    }
    if best_k >= m {
        return Err(Error::FullyConsecutive);
    }
    let i = (best_i + 2 * best_k - 1) % m + 1;
    let k = run_length(c, i);
    debug_assert!(k <= c.ell());
    debug_assert!(shift_tuple(c, i, k, 1)?.is_semi_valid());
    debug_assert!(shift_tuple(c, i, k, -1)?.is_semi_valid());
    Ok((i, k))
}

/// Gap statistics and edge-count deltas for the unit shifts of a run.
///
/// With the run normalized to start at w_1 = v_j, the gaps are
/// t_s = |(w_{2s}, w_{2s+2})| for 0 <= s < k, t_k = |(w_{2k}, v_j)| and
/// t_{-1} = |(v_{j+k+1}, w_0)|, with partial sums t_{>s} and t_{<s}.
/// The per-run-slot counts are
/// |E^s_{m,m+1}| = sum_p C(t_s+1, p) * C(|(w_{2s+2}, v_{j+s+m})|, r-1-p) and
/// |E^s_{m+1,m}| = sum_p C(t_s+1, p) * C(|(v_{j+s+m+1}, w_{2s})|, r-1-p).
/// The outer-interval sizes are measured directly on the circle; expressing
/// them through the t partial sums (t_{>s}+k+m and t_{<s}+k-m) is only valid
/// when no tuple point outside the run neighborhood lands inside them, so the
/// partial sums are recorded as statistics but never used in the counts.
/// The robust per-slot identity is n - 4 = t_s + a0 + b0 (a partition of the
/// circle by the four interval endpoints), together with am1 = a0 - 1 and
/// bm1 = b0 + 1.
#[derive(Clone, Debug, Serialize)]
pub struct MoveDelta {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    /// run start v_j after normalizing the run to position i = 1
    pub j: usize,
    pub t_minus1: usize,
    /// t_0 .. t_k
    pub t: Vec<usize>,
    pub rows: Vec<MoveDeltaRow>,
    /// formula totals |E_{0,1}|, |E_{1,0}|, |E_{0,-1}|, |E_{-1,0}|
    pub e01: usize,
    pub e10: usize,
    pub e0m1: usize,
    pub em10: usize,
    /// direct enumeration sizes |H_{-1}|, |H_0|, |H_1|
    pub h_sizes: [usize; 3],
    /// direct set-difference sizes in the same order as the formula totals
    pub direct_e01: usize,
    pub direct_e10: usize,
    pub direct_e0m1: usize,
    pub direct_em10: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MoveDeltaRow {
    pub s: usize,
    pub t_s: usize,
    pub t_gt: usize,
    pub t_lt: usize,
    /// |(w_{2s+2}, v_{j+s+m})| for m = 0, -1
    pub a0: usize,
    pub am1: usize,
    /// |(v_{j+s+m+1}, w_{2s})| for m = 0, -1
    pub b0: usize,
    pub bm1: usize,
    pub e01: usize,
    pub e10: usize,
    pub e0m1: usize,
    pub em10: usize,
}

/// Open-arc size |(a, b)| on the n-circle; equal endpoints give 0 (this only
/// arises for the t_{-1} statistic, whose nominal start point v_{j+k+1} can
/// coincide with w_0).
fn open_len(n: usize, a: usize, b: usize) -> usize {
    if a == b {
        0
    } else {
        (b + n - a - 1) % n
    }
}

impl MoveDelta {
    /// 2|H_0| - |H_{-1}| - |H_1| from direct enumeration; by the move
    /// identity this equals e01 + e0m1 - e10 - em10.
    pub fn direct_gain(&self) -> i64 {
        2 * self.h_sizes[1] as i64 - self.h_sizes[0] as i64 - self.h_sizes[2] as i64
    }

    pub fn formula_gain(&self) -> i64 {
        self.e01 as i64 + self.e0m1 as i64 - self.e10 as i64 - self.em10 as i64
    }
}

pub fn move_delta(c: &WitnessTuple, i: usize, k: usize, r: usize) -> Result<MoveDelta> {
    if !is_consecutive(c, i, k) {
        return Err(Error::NotConsecutive { i, k });
    }
    let n = c.n;
    let len = c.points.len();
    // normalize the run to start at tuple position 1
    let mut points = Vec::with_capacity(len);
    for p in 0..len {
        points.push(c.w(i as i64 + p as i64));
    }
    let c0 = WitnessTuple::new(n, points);
    let cm1 = shift_tuple(&c0, 1, k, -1)?;
    let cp1 = shift_tuple(&c0, 1, k, 1)?;
    for t in [&c0, &cm1, &cp1] {
        if !t.is_semi_valid() {
            return Err(Error::NotSemiValid(t.points.clone()));
        }
    }
    let j = c0.w(1);

    // gaps; w_{2s} for s = 0 is w_0 = w_{2l+1}
    let mut t = Vec::with_capacity(k + 1);
    for s in 0..k {
        t.push(open_len(n, c0.w(2 * s as i64), c0.w(2 * s as i64 + 2)));
    }
    t.push(open_len(n, c0.w(2 * k as i64), j));
    let t_minus1 = open_len(n, (j + k + 1) % n, c0.w(0));

    let mut rows = Vec::with_capacity(k);
    let (mut e01, mut e10, mut e0m1, mut em10) = (0, 0, 0, 0);
    for s in 0..k {
        let t_gt: usize = t[s + 1..=k].iter().sum();
        let t_lt: usize = t_minus1 + t[..s].iter().sum::<usize>();
        let w2s2 = c0.w(2 * s as i64 + 2);
        let w2s = c0.w(2 * s as i64);
        let vj_s = (j + s) % n;
        let vj_sm1 = (j + s + n - 1) % n;
        let a0 = open_len(n, w2s2, vj_s);
        let am1 = open_len(n, w2s2, vj_sm1);
        let b0 = open_len(n, (vj_s + 1) % n, w2s);
        let bm1 = open_len(n, vj_s, w2s);
        let slot = t[s] + 1;
        let count = |outer: usize| -> usize {
            (1..r)
                .map(|p| binomial(slot, p) as usize * binomial(outer, r - 1 - p) as usize)
                .sum()
        };
        let row = MoveDeltaRow {
            s,
            t_s: t[s],
            t_gt,
            t_lt,
            a0,
            am1,
            b0,
            bm1,
            e01: count(a0),
            e10: count(b0),
            e0m1: count(bm1),
            em10: count(am1),
        };
        e01 += row.e01;
        e10 += row.e10;
        e0m1 += row.e0m1;
        em10 += row.em10;
        rows.push(row);
    }

    let h0 = build_h_of_c(n, r, &c0)?;
    let hm1 = build_h_of_c(n, r, &cm1)?;
    let hp1 = build_h_of_c(n, r, &cp1)?;
    let diff = |a: &Cgh, b: &Cgh| a.edges().filter(|e| !b.contains(e)).count();

    Ok(MoveDelta {
        n,
        r,
        k,
        j,
        t_minus1,
        t,
        rows,
        e01,
        e10,
        e0m1,
        em10,
        h_sizes: [hm1.len(), h0.len(), hp1.len()],
        direct_e01: diff(&h0, &hp1),
        direct_e10: diff(&hp1, &h0),
        direct_e0m1: diff(&h0, &hm1),
        direct_em10: diff(&hm1, &h0),
    })
}

/// Greedy local optimization: repeatedly shift the run after the longest run
/// by the unit that strictly decreases |H(C)| (preferring +1 on ties among
/// strict improvements), discarding shifts that break r-validity; once fully
/// consecutive, compare against the canonical candidates of smaller length.
pub fn optimize_tuple(n: usize, r: usize, c0: &WitnessTuple) -> Result<WitnessTuple> {
    if !c0.is_r_valid(r) {
        return Err(Error::NotRValid {
            r,
            points: c0.points.clone(),
        });
    }
    let mut cur = c0.clone();
    let mut cur_size = h_of_c_size(n, r, &cur)?;
    loop {
        let (i, k) = match find_shiftable(&cur) {
            Ok(ik) => ik,
            Err(Error::FullyConsecutive) => break,
            Err(e) => return Err(e),
        };
        let mut moved = false;
        let mut best: Option<(usize, WitnessTuple)> = None;
        for m in [1i64, -1] {
            let cand = shift_tuple(&cur, i, k, m)?;
            if !cand.is_r_valid(r) {
                continue;
            }
            let size = h_of_c_size(n, r, &cand)?;
            if size < cur_size && best.as_ref().map_or(true, |(b, _)| size < *b) {
                best = Some((size, cand));
            }
        }
        if let Some((size, cand)) = best {
            cur = cand;
            cur_size = size;
            moved = true;
        }
        if !moved {
            break;
        }
    }
    // compare with the canonical small-length candidates
    let mut candidates: Vec<WitnessTuple> = Vec::new();
    if r == 3 && n >= 6 {
        candidates.push(WitnessTuple::new(n, vec![0, n - 2, 2]));
        candidates.push(WitnessTuple::new(n, vec![0, n - 2, 1, n - 1, 2]));
    }
    for m in (r - 1)..=cur.ell() {
        if 2 * m + 1 <= n {
            candidates.push(canonical_tuple(n, m));
        }
    }
    for cand in candidates {
        if !cand.is_r_valid(r) {
            continue;
        }
        let size = h_of_c_size(n, r, &cand)?;
        if size < cur_size || (size == cur_size && cand.len() < cur.len()) {
            cur = cand;
            cur_size = size;
        }
    }
    Ok(cur)
}

/// Structural value of sat(n, two disjoint r-edges), no conflict-graph
/// search: for r = 2 every saturated family has n edges; for r = 3 the
/// minimum is attained by C_1 = (v_0, v_{n-2}, v_2) or
/// C_2 = (v_0, v_{n-2}, v_1, v_{n-1}, v_2); for larger r the canonical fully
/// consecutive tuple of length 2r-1 is the optimizer over its length class
/// and the shorter classes admit no r-valid fully consecutive tuple.
pub fn structural_sat(n: usize, r: usize) -> Result<usize> {
    if n < 2 * r {
        return Err(Error::NTooSmall {
            n,
            reason: format!("structural analysis needs n >= 2r = {}", 2 * r),
        });
    }
    match r {
        2 => Ok(n),
        3 => {
            let c1 = WitnessTuple::new(n, vec![0, n - 2, 2]);
            let c2 = WitnessTuple::new(n, vec![0, n - 2, 1, n - 1, 2]);
            Ok(h_of_c_size(n, 3, &c1)?.min(h_of_c_size(n, 3, &c2)?))
        }
        _ => h_of_c_size(n, r, &canonical_tuple(n, r - 1)),
    }
}

/// Per-vertex properties of the nearest-neighbor maps on a saturated family;
/// returns human-readable descriptions of any violations.
pub fn check_prop_basic(h: &Cgh, lr: &LambdaRhoMap) -> Vec<String> {
    let n = h.n;
    let r = h.r;
    let mut bad = Vec::new();
    for v in 0..n {
        let (l, rho) = (lr.lambda[v], lr.rho[v]);
        // (2) forbidden windows around v
        if in_closed_arc(n, (v + n - (r - 2)) % n, (v + r - 1) % n, l) {
            bad.push(format!("lambda({v}) = {l} lies in the forbidden window"));
        }
        if in_closed_arc(n, (v + n - (r - 1)) % n, (v + r - 2) % n, rho) {
            bad.push(format!("rho({v}) = {rho} lies in the forbidden window"));
        }
        // (3) lambda(v) < v < rho(v) <= lambda(v) cyclically
        let dv = (v + n - l) % n;
        let dr = (rho + n - l) % n;
        if !(dv >= 1 && (rho == l || dr > dv)) {
            bad.push(format!("chain order fails at {v}: lambda={l}, rho={rho}"));
        }
        // (4) every r-set through {v, u} with u in [rho(v), lambda(v)] is an edge
        let arc_len = closed_arc_len(n, rho, l);
        for d in 0..arc_len {
            let u = (rho + d) % n;
            if u == v {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&x| x != v && x != u).collect();
            for rest in combinations(others.len(), r - 2) {
                let mut e: Vec<usize> = rest.iter().map(|&idx| others[idx]).collect();
                e.push(v);
                e.push(u);
                if !h.contains(&e) {
                    bad.push(format!(
                        "r-set {e:?} through {{{v},{u}}} with {u} in [rho,lambda] of {v} missing"
                    ));
                }
            }
        }
    }
    bad
}

/// Relations between the maps at different vertices.
pub fn check_prop_relative(h: &Cgh, lr: &LambdaRhoMap) -> Vec<String> {
    let n = h.n;
    let mut bad = Vec::new();
    for v in 0..n {
        // (1) rho(v_{i+1}) = lambda(v_i)
        if lr.rho[(v + 1) % n] != lr.lambda[v] {
            bad.push(format!(
                "rho({}) = {} but lambda({v}) = {}",
                (v + 1) % n,
                lr.rho[(v + 1) % n],
                lr.lambda[v]
            ));
        }
        // (4) when lambda != rho: lambda(rho(v)) = v and rho(rho(v)) in [lambda(v), v)
        let (l, rho) = (lr.lambda[v], lr.rho[v]);
        if l != rho {
            if lr.lambda[rho] != v {
                bad.push(format!("lambda(rho({v})) = {} != {v}", lr.lambda[rho]));
            }
            let rr = lr.rho[rho];
            if !(in_closed_arc(n, l, v, rr) && rr != v) {
                bad.push(format!("rho(rho({v})) = {rr} outside [lambda({v}), {v})"));
            }
        }
    }
    let interval = |v: usize| -> Vec<usize> {
        let (a, b) = (lr.rho[v], lr.lambda[v]);
        (0..closed_arc_len(n, a, b)).map(|d| (a + d) % n).collect()
    };
    for i in 0..n {
        for j in i + 1..n {
            // (2) distinct intervals share at most one vertex
            let ii = interval(i);
            let jj = interval(j);
            let common = ii.iter().filter(|x| jj.contains(x)).count();
            if common > 1 {
                bad.push(format!(
                    "intervals of {i} and {j} share {common} vertices"
                ));
            }
        }
    }
    for j in 0..n {
        // (3) each adjacent pair lies in exactly one interval
        let holders = (0..n)
            .filter(|&i| {
                let (a, b) = (lr.rho[i], lr.lambda[i]);
                in_closed_arc(n, a, b, j) && in_closed_arc(n, a, b, (j + 1) % n) && {
                    // both inside as a pair means j then j+1 without wrapping past b
                    (j + n - a) % n < (b + n - a) % n
                }
            })
            .count();
        if holders != 1 {
            bad.push(format!(
                "pair {{{j},{}}} lies in {holders} intervals",
                (j + 1) % n
            ));
        }
    }
    bad
}

/// For r = 2: the saturated family must be the odd cycle {w_i, w_{i+1}} on
/// the extracted tuple plus the leaves {v, w_i} for v in (w_{i-1}, w_{i+1}).
pub fn check_r2_structure(h: &Cgh) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    if h.r != 2 {
        return Err(Error::UniformityMismatch(h.r, 2));
    }
    let c = extract_tuple(h)?;
    let n = h.n;
    if h.len() != n {
        bad.push(format!("saturated 2-cgh has {} edges, expected n = {n}", h.len()));
    }
    let mut expected = Cgh::empty(n, 2);
    let m = c.points.len() as i64;
    for p in 1..=m {
        expected.insert(vec![c.w(p), c.w(p + 1)])?;
        let (lo, hi) = (c.w(p - 1), c.w(p + 1));
        let span = closed_arc_len(n, lo, hi);
        for d in 1..span - 1 {
            let v = (lo + d) % n;
            if v != c.w(p) {
                expected.insert(vec![v, c.w(p)])?;
            }
        }
    }
    if &expected != h {
        bad.push("edge set differs from odd-cycle-plus-leaves form".to_string());
    }
    Ok(bad)
}

/// Structure-theorem verification: (a) every r-valid tuple of every length
/// builds a saturated family; (b) saturated families grown by closure from
/// seeded random free families extract a tuple that rebuilds them exactly.
pub fn verify_structure_theorem(n: usize, r: usize, trials: usize, seed: u64) -> Result<Vec<String>> {
    let pattern = PatternId::M1r(r).canonical();
    let mut bad = Vec::new();
    let mut ell = 1;
    while 2 * ell + 1 <= n {
        for c in enumerate_r_valid(n, r, ell) {
            let h = build_h_of_c(n, r, &c)?;
            if !is_saturated(&h, pattern)? {
                bad.push(format!("H({:?}) is not saturated", c.points));
            }
        }
        ell += 1;
    }
    for t in 0..trials {
        let seed_family = crate::saturation::random_free_seed(n, r, pattern, 3, seed ^ t as u64)?;
        let h = closure(&seed_family, pattern)?;
        let c = extract_tuple(&h)?;
        if !c.is_r_valid(r) {
            bad.push(format!("extracted tuple {:?} is not r-valid", c.points));
            continue;
        }
        if build_h_of_c(n, r, &c)? != h {
            bad.push(format!("tuple {:?} does not rebuild its family", c.points));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star_plus;
    use crate::saturation::is_free;

    #[test]
    fn semi_validity() {
        assert!(WitnessTuple::new(6, vec![0, 4, 2]).is_semi_valid());
        assert!(WitnessTuple::new(7, vec![0, 5, 1, 6, 2]).is_semi_valid());
        assert!(!WitnessTuple::new(6, vec![0, 2, 4]).is_semi_valid());
        assert!(!WitnessTuple::new(6, vec![0, 4]).is_semi_valid());
        // rotation of the start preserves semi-validity
        assert!(WitnessTuple::new(6, vec![4, 2, 0]).is_semi_valid());
        assert!(WitnessTuple::new(6, vec![0, 4, 2]).is_r_valid(3));
        assert!(!WitnessTuple::new(6, vec![0, 4, 1]).is_r_valid(3));
    }

    #[test]
    fn build_h_examples() {
        let h = build_h_of_c(6, 3, &WitnessTuple::new(6, vec![0, 4, 2])).unwrap();
        assert_eq!(h.len(), 17);
        assert!(!h.contains(&[1, 2, 3]) && !h.contains(&[3, 4, 5]) && !h.contains(&[5, 0, 1]));
        let h7 = build_h_of_c(7, 3, &WitnessTuple::new(7, vec![0, 5, 1, 6, 2])).unwrap();
        assert_eq!(h7.len(), 25);
        let h2 = build_h_of_c(7, 2, &WitnessTuple::new(7, vec![0, 4, 2])).unwrap();
        assert_eq!(h2.len(), 7);
    }

    #[test]
    fn size_matches_enumeration() {
        for (n, pts) in [(6, vec![0, 4, 2]), (9, vec![0, 5, 1, 7, 3]), (10, vec![0, 8, 2])] {
            let c = WitnessTuple::new(n, pts);
            assert_eq!(
                h_of_c_size(n, 3, &c).unwrap(),
                build_h_of_c(n, 3, &c).unwrap().len()
            );
        }
    }

    #[test]
    fn eq1_checks() {
        assert!(eq1_equivalence_check(7, 3).unwrap());
        assert!(eq1_equivalence_check(8, 3).unwrap());
        assert!(eq1_equivalence_check(10, 4).unwrap());
    }

    #[test]
    fn lambda_rho_hand_values() {
        let h = build_h_of_c(6, 3, &WitnessTuple::new(6, vec![0, 4, 2])).unwrap();
        let lr = lambda_rho(&h).unwrap();
        assert_eq!(lr.rho[0], 2);
        assert_eq!(lr.lambda[0], 4);
        assert_eq!(lr.lambda[1], 4);
        assert_eq!(lr.rho[1], 4);
        for v in 0..6 {
            assert_eq!(lr.rho[(v + 1) % 6], lr.lambda[v]);
        }
    }

    #[test]
    fn extract_round_trips() {
        let c = WitnessTuple::new(6, vec![0, 4, 2]);
        let h = build_h_of_c(6, 3, &c).unwrap();
        let back = extract_tuple(&h).unwrap();
        assert!(back.same_up_to_start(&c));
        let star = star_plus(7, 3).unwrap();
        let t = extract_tuple(&star).unwrap();
        assert!(t.same_up_to_start(&WitnessTuple::new(7, vec![5, 1, 6, 2, 0])));
        let h8 = closure(&Cgh::empty(8, 3), PatternId::M1).unwrap();
        let c8 = extract_tuple(&h8).unwrap();
        assert!(c8.is_r_valid(3));
        assert_eq!(build_h_of_c(8, 3, &c8).unwrap(), h8);
    }

    #[test]
    fn shift_examples() {
        let c = WitnessTuple::new(7, vec![0, 4, 2]);
        let s = shift_tuple(&c, 1, 1, 1).unwrap();
        assert_eq!(s.points, vec![1, 4, 2]);
        assert_eq!(shift_tuple(&c, 1, 1, 0).unwrap(), c);
        assert_eq!(shift_tuple(&shift_tuple(&c, 2, 1, 1).unwrap(), 2, 1, -1).unwrap(), c);
        assert!(shift_tuple(&c, 1, 2, 1).is_err());
    }

    #[test]
    fn find_shiftable_examples() {
        let c = WitnessTuple::new(9, vec![0, 5, 1, 7, 3]);
        let (i, k) = find_shiftable(&c).unwrap();
        assert!(k >= 1 && k <= c.ell());
        assert!(shift_tuple(&c, i, k, 1).unwrap().is_semi_valid());
        assert!(shift_tuple(&c, i, k, -1).unwrap().is_semi_valid());
        let full = WitnessTuple::new(7, vec![0, 5, 1, 6, 2]);
        assert!(matches!(find_shiftable(&full), Err(Error::FullyConsecutive)));
    }

    #[test]
    fn lemma_every_semi_valid_is_r_valid_at_large_ell() {
        // (r, ell, n) = (3, 2, 9): semi-valid length-5 tuples are all 3-valid
        for c in enumerate_semi_valid(9, 2) {
            assert!(c.is_r_valid(3), "{:?}", c.points);
        }
    }

    #[test]
    fn move_delta_formula_matches_enumeration() {
        let c = WitnessTuple::new(9, vec![0, 5, 1, 7, 3]);
        let (i, k) = find_shiftable(&c).unwrap();
        let d = move_delta(&c, i, k, 3).unwrap();
        assert_eq!(d.e01, d.direct_e01);
        assert_eq!(d.e10, d.direct_e10);
        assert_eq!(d.e0m1, d.direct_e0m1);
        assert_eq!(d.em10, d.direct_em10);
        assert_eq!(d.formula_gain(), d.direct_gain());
        // per-slot partition identity and unit shifts of the outer intervals
        for row in &d.rows {
            assert_eq!(d.n - 4, row.t_s + row.a0 + row.b0);
            assert_eq!(row.am1, row.a0 - 1);
            assert_eq!(row.bm1, row.b0 + 1);
        }
        // r = 2: every tuple family has n edges
        let d2 = move_delta(&c, i, k, 2).unwrap();
        assert_eq!(d2.h_sizes, [9, 9, 9]);
    }

    #[test]
    fn optimize_matches_formula() {
        for n in 7..=10 {
            let c0 = WitnessTuple::new(n, vec![0, n - 2, 3]);
            let best = optimize_tuple(n, 3, &c0).unwrap();
            assert_eq!(
                h_of_c_size(n, 3, &best).unwrap(),
                structural_sat(n, 3).unwrap()
            );
        }
    }

    #[test]
    fn structural_sat_formula() {
        for n in 6..=30 {
            assert_eq!(
                structural_sat(n, 3).unwrap(),
                binomial(n - 1, 2) as usize + 3 * n - 11
            );
        }
        assert_eq!(structural_sat(20, 3).unwrap(), 220);
        assert_eq!(structural_sat(10, 2).unwrap(), 10);
        assert!(structural_sat(5, 3).is_err());
        // |H(C_1)| - |H(C_2)| = (n - 5) - 1 at r = 3
        for n in 6..=15 {
            let c1 = h_of_c_size(n, 3, &WitnessTuple::new(n, vec![0, n - 2, 2])).unwrap();
            let c2 = h_of_c_size(n, 3, &WitnessTuple::new(n, vec![0, n - 2, 1, n - 1, 2])).unwrap();
            assert_eq!(c1 as i64 - c2 as i64, n as i64 - 6);
        }
    }

    #[test]
    fn prop_checks_on_tuple_families() {
        for c in enumerate_r_valid(7, 3, 1) {
            let h = build_h_of_c(7, 3, &c).unwrap();
            let lr = lambda_rho(&h).unwrap();
            assert!(check_prop_basic(&h, &lr).is_empty(), "{:?}", c.points);
            assert!(check_prop_relative(&h, &lr).is_empty(), "{:?}", c.points);
        }
    }

    #[test]
    fn r2_structure() {
        let h = build_h_of_c(8, 2, &WitnessTuple::new(8, vec![0, 5, 2])).unwrap();
        assert!(is_free(&h, PatternId::G2).unwrap());
        assert!(is_saturated(&h, PatternId::G2).unwrap());
        assert!(check_r2_structure(&h).unwrap().is_empty());
    }

    #[test]
    fn structure_theorem_small() {
        let bad = verify_structure_theorem(7, 3, 10, 42).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
