//! Unpruned reference enumerator for tiny hosts.
//!
//! Shares nothing with the search: it walks every canonical filling (fresh
//! symbols in order of first appearance) and scans each complete one for
//! rainbow subrectangles by brute force over row and column subsets.

use std::collections::BTreeMap;

use itertools::Itertools;

/// Arrow verdicts for `K_{m,n}` and every `1 <= a <= b <= n`, keyed by `(a, b)`.
pub fn brute_force_verdicts(m: usize, n: usize) -> BTreeMap<(usize, usize), bool> {
    let queries: Vec<(usize, usize)> = (1..=n).flat_map(|b| (1..=b).map(move |a| (a, b))).collect();
    let mut state = Oracle {
        m,
        n,
        grid: vec![vec![0; n]; m],
        queries: queries.clone(),
        blocked: vec![false; queries.len()],
    };
    state.fill(0, 0);
    queries.into_iter().zip(state.blocked.iter().map(|&b| !b)).collect()
}

struct Oracle {
    m: usize,
    n: usize,
    grid: Vec<Vec<u32>>,
    queries: Vec<(usize, usize)>,
    /// A blocker has been seen for this query.
    blocked: Vec<bool>,
}

impl Oracle {
    fn fill(&mut self, pos: usize, used: u32) {
        if self.blocked.iter().all(|&b| b) {
            return;
        }
        if pos == self.m * self.n {
            self.scan_leaf();
            return;
        }
        let (i, j) = (pos / self.n, pos % self.n);
        for s in 0..=used {
            let clash = (0..j).any(|c| self.grid[i][c] == s) || (0..i).any(|r| self.grid[r][j] == s);
            if clash {
                continue;
            }
            self.grid[i][j] = s;
            self.fill(pos + 1, if s == used { used + 1 } else { used });
        }
    }

    fn scan_leaf(&mut self) {
        for k in 0..self.queries.len() {
            if self.blocked[k] {
                continue;
            }
            let (a, b) = self.queries[k];
            if !self.has_rainbow(a, b) && !self.has_rainbow(b, a) {
                self.blocked[k] = true;
            }
        }
    }

    fn has_rainbow(&self, h: usize, w: usize) -> bool {
        if h > self.m || w > self.n {
            return false;
        }
        (0..self.m).combinations(h).any(|rows| {
            (0..self.n).combinations(w).any(|cols| {
                let symbols: Vec<u32> = rows.iter().cartesian_product(&cols).map(|(&r, &c)| self.grid[r][c]).collect();
                symbols.iter().all_unique()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_three() {
        let v = brute_force_verdicts(2, 3);
        assert!(v[&(1, 1)]);
        assert!(!v[&(2, 2)]);
        assert!(v[&(1, 3)]);
        assert!(!v[&(2, 3)]);
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn two_by_four_arrows_two_two() {
        assert!(brute_force_verdicts(2, 4)[&(2, 2)]);
    }
}
