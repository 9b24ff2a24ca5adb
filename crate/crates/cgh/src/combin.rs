//! Binomial coefficients and colex ranking of r-subsets.
//!
//! Combinations are ranked in colexicographic order: for S = {s_0 < ... <
//! s_{r-1}}, rank(S) = sum_i C(s_i, i+1). This rank order is the internal
//! contract for solver bitsets and for the deterministic closure visit order.

/// C(n, k) as u64; returns 0 when k > n.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Colex rank of a sorted combination.
pub fn colex_rank(set: &[usize]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i + 1) as usize)
        .sum()
}

/// Inverse of [`colex_rank`] for combinations of size r.
pub fn colex_unrank(mut rank: usize, r: usize) -> Vec<usize> {
    let mut out = vec![0; r];
    for i in (0..r).rev() {
        // largest s with C(s, i+1) <= rank
        let mut s = i;
        while binomial(s + 1, i + 1) as usize <= rank {
            s += 1;
        }
        out[i] = s;
        rank -= binomial(s, i + 1) as usize;
    }
    out
}

/// All r-subsets of {0,..,n-1} in colex order.
pub fn combinations(n: usize, r: usize) -> Combinations {
    Combinations {
        n,
        r,
        cur: None,
        done: r > n,
    }
}

pub struct Combinations {
    n: usize,
    r: usize,
    cur: Option<Vec<usize>>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        match &mut self.cur {
            None => {
                let first: Vec<usize> = (0..self.r).collect();
                self.cur = Some(first.clone());
                Some(first)
            }
            Some(cur) => {
                // next in colex: bump the smallest position that can move
                let r = self.r;
                let mut i = 0;
                while i < r {
                    let bound = if i + 1 < r { cur[i + 1] } else { self.n };
                    if cur[i] + 1 < bound {
                        cur[i] += 1;
                        for j in 0..i {
                            cur[j] = j;
                        }
                        return Some(cur.clone());
                    }
                    i += 1;
                }
                self.done = true;
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 5), 5_461_512);
    }

    #[test]
    fn rank_is_colex_position() {
        for (i, c) in combinations(7, 3).enumerate() {
            assert_eq!(colex_rank(&c), i);
            assert_eq!(colex_unrank(i, 3), c);
        }
        assert_eq!(combinations(7, 3).count(), 35);
    }

    #[test]
    fn colex_order_starts_low() {
        let all: Vec<_> = combinations(5, 2).collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[1], vec![0, 2]);
        assert_eq!(all[2], vec![1, 2]);
        assert_eq!(all.last().unwrap(), &vec![3, 4]);
    }
}
