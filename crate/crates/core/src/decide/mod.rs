//! Exhaustive decision of `K_{m,n} ->_R K_{a,b}`.
//!
//! A proper edge coloring of `K_{m,n}` is an `m x n` latin rectangle with an
//! unbounded palette. The search looks for one with no rainbow `a x b` and no
//! rainbow `b x a` subrectangle (a blocker). Finding one refutes the arrow;
//! exhausting the canonical search space proves it.
//!
//! Cells are filled row-major. Each cell may take any symbol already used
//! that is legal in its row and column, or exactly one fresh symbol, so
//! every coloring is reached once up to renaming colors and row 0 is always
//! `0, 1, ..., n-1`. Two prunings apply:
//!
//! * a branch dies as soon as the placed cell completes a rainbow `a x b` or
//!   `b x a` subrectangle having it as bottom-right corner (every rainbow
//!   subrectangle has a unique last-filled cell, so nothing is lost);
//! * at the end of each row, the filled prefix must be lexicographically
//!   least, after renaming, among its images under a set of column
//!   permutations. The least representative of any coloring's class passes
//!   every such test at every row, so the pruning is complete for any set of
//!   permutations checked.
//!
//! Rows are not quotiented.

mod oracle;
mod search;

pub use oracle::brute_force_verdicts;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::latin::LatinRectangle;
use crate::rainbow::{find_rainbow_either, OrientedWitness, RainbowError, RainbowQuery};

/// Hard limit on `m * n`: symbols are tracked in 128-bit masks.
pub const MAX_AREA: usize = 128;

/// Default soft limit on `m * n`; larger instances run with a warning.
pub const DEFAULT_AREA_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_nodes: u64,
    pub workers: usize,
    pub column_symmetry_pruning: bool,
    pub incremental_rainbow_check: bool,
    pub area_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_nodes: 20_000_000_000,
            workers: 1,
            column_symmetry_pruning: true,
            incremental_rainbow_check: true,
            area_cap: DEFAULT_AREA_CAP,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_column_symmetry_pruning(mut self, on: bool) -> Self {
        self.column_symmetry_pruning = on;
        self
    }

    pub fn with_incremental_rainbow_check(mut self, on: bool) -> Self {
        self.incremental_rainbow_check = on;
        self
    }

    pub fn with_area_cap(mut self, area_cap: usize) -> Self {
        self.area_cap = area_cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrowDecision {
    pub arrows: bool,
    /// Present iff `arrows` is false; verified before it is returned.
    pub certificate: Option<LatinRectangle>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub config_echo: SearchConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    InvalidQuery(#[from] RainbowError),
    #[error("host K_{{{m},{n}}} must satisfy 1 <= m <= n")]
    InvalidHost { m: usize, n: usize },
    #[error("workers must be at least 1")]
    NoWorkers,
    #[error("host K_{{{m},{n}}} has more than {limit} edges")]
    InstanceTooLarge { m: usize, n: usize, limit: usize },
    /// Neither outcome: the node budget ran out first.
    #[error("node budget exhausted after {nodes} nodes; verdict unknown")]
    BudgetExhausted { nodes: u64 },
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateVerdict {
    Pass,
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    InvalidQuery { a: usize, b: usize },
    RainbowFound(OrientedWitness),
}

impl CertificateVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CertificateVerdict::Pass)
    }
}

/// Independently checks that `rect` is an `m x n` coloring with no rainbow
/// `a x b` or `b x a`. Latinness is guaranteed by the type.
pub fn verify_certificate(rect: &LatinRectangle, m: usize, n: usize, a: usize, b: usize) -> CertificateVerdict {
    if (rect.rows(), rect.cols()) != (m, n) {
        return CertificateVerdict::DimensionMismatch {
            expected: (m, n),
            found: (rect.rows(), rect.cols()),
        };
    }
    let Ok(q) = RainbowQuery::new(a, b) else {
        return CertificateVerdict::InvalidQuery { a, b };
    };
    match find_rainbow_either(rect, q) {
        None => CertificateVerdict::Pass,
        Some(w) => CertificateVerdict::RainbowFound(w),
    }
}

/// Decides whether every proper coloring of `K_{m,n}` has a rainbow `K_{a,b}`
/// (in either orientation).
///
/// When neither orientation fits in `m x n` the answer is no, with the
/// cyclic rectangle as certificate.
pub fn decide_arrow(m: usize, n: usize, a: usize, b: usize, cfg: &SearchConfig) -> Result<ArrowDecision, DecideError> {
    let query = RainbowQuery::new(a, b)?;
    if m == 0 || m > n {
        return Err(DecideError::InvalidHost { m, n });
    }
    if cfg.workers == 0 {
        return Err(DecideError::NoWorkers);
    }
    if m * n > MAX_AREA {
        return Err(DecideError::InstanceTooLarge { m, n, limit: MAX_AREA });
    }
    if m * n > cfg.area_cap {
        log::warn!(
            "K_{{{m},{n}}} has {} edges, beyond the cap of {}; the search may not finish",
            m * n,
            cfg.area_cap
        );
    }
    let start = Instant::now();
    let shapes: Vec<(usize, usize)> = [(a, b), (b, a)]
        .into_iter()
        .enumerate()
        .filter(|&(k, (h, w))| (k == 0 || a != b) && h <= m && w <= n)
        .map(|(_, s)| s)
        .collect();
    if shapes.is_empty() {
        log::info!("K_{{{a},{b}}} does not fit in K_{{{m},{n}}}");
        return Ok(ArrowDecision {
            arrows: false,
            certificate: Some(LatinRectangle::cyclic(m, n)),
            nodes_explored: 0,
            elapsed: start.elapsed(),
            config_echo: *cfg,
        });
    }
    let problem = search::Problem {
        m,
        n,
        query,
        shapes,
        incremental: cfg.incremental_rainbow_check,
        symmetry: cfg.column_symmetry_pruning,
    };
    let (outcome, nodes) = search::run(&problem, cfg);
    let certificate = match outcome {
        search::Outcome::Exhausted => None,
        search::Outcome::Budget => return Err(DecideError::BudgetExhausted { nodes }),
        search::Outcome::Blocker(cells) => {
            let rect = LatinRectangle::from_cells(m, n, cells.into_iter().map(u32::from).collect())
                .map_err(|e| DecideError::InvariantViolated(format!("search produced a non-latin grid: {e}")))?;
            match verify_certificate(&rect, m, n, a, b) {
                CertificateVerdict::Pass => Some(rect),
                v => return Err(DecideError::InvariantViolated(format!("certificate rejected: {v:?}"))),
            }
        }
    };
    Ok(ArrowDecision {
        arrows: certificate.is_none(),
        certificate,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        config_echo: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::block_blocker;
    use crate::fixtures::triangle_2x3;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn arrows(m: usize, n: usize, a: usize, b: usize) -> bool {
        decide_arrow(m, n, a, b, &cfg()).unwrap().arrows
    }

    /// Every two columns share a symbol.
    fn pairs_meet(r: &LatinRectangle) -> bool {
        (0..r.cols()).all(|c1| (c1 + 1..r.cols()).all(|c2| (0..r.rows()).any(|i| (0..r.rows()).any(|k| r.get(i, c1) == r.get(k, c2)))))
    }

    #[test]
    fn two_by_three_has_a_blocker() {
        let d = decide_arrow(2, 3, 2, 2, &cfg()).unwrap();
        assert!(!d.arrows);
        let cert = d.certificate.unwrap();
        assert!(pairs_meet(&cert));
        assert_eq!(cert.canonical_relabel(), triangle_2x3());
    }

    #[test]
    fn small_arrowing_instances() {
        assert!(arrows(2, 4, 2, 2));
        assert!(arrows(1, 3, 1, 3));
        assert!(arrows(1, 1, 1, 1));
        assert!(arrows(3, 3, 1, 3));
    }

    #[test]
    fn two_by_six_refutes_two_three() {
        let d = decide_arrow(2, 6, 2, 3, &cfg()).unwrap();
        assert!(!d.arrows);
        assert!(verify_certificate(d.certificate.as_ref().unwrap(), 2, 6, 2, 3).passed());
        assert!(verify_certificate(&block_blocker(2, 3).unwrap(), 2, 6, 2, 3).passed());
    }

    #[test]
    fn infeasible_queries_refute_trivially() {
        let d = decide_arrow(2, 5, 3, 3, &cfg()).unwrap();
        assert!(!d.arrows);
        assert_eq!(d.nodes_explored, 0);
        assert!(!arrows(2, 3, 2, 4));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(decide_arrow(3, 2, 1, 1, &cfg()), Err(DecideError::InvalidHost { .. })));
        assert!(matches!(decide_arrow(2, 2, 2, 1, &cfg()), Err(DecideError::InvalidQuery(_))));
        assert!(matches!(decide_arrow(2, 2, 1, 1, &cfg().with_workers(0)), Err(DecideError::NoWorkers)));
        assert!(matches!(decide_arrow(12, 12, 2, 2, &cfg()), Err(DecideError::InstanceTooLarge { .. })));
    }

    #[test]
    fn budget_is_a_third_verdict() {
        let e = decide_arrow(2, 4, 2, 2, &cfg().with_max_nodes(1)).unwrap_err();
        assert!(matches!(e, DecideError::BudgetExhausted { .. }));
    }

    #[test]
    fn certificates_examples() {
        let sq = LatinRectangle::from_grid(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(verify_certificate(&sq, 2, 2, 2, 2), CertificateVerdict::Pass);
        let r = LatinRectangle::from_grid(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        match verify_certificate(&r, 2, 4, 2, 2) {
            CertificateVerdict::RainbowFound(w) => assert_eq!(w.cols, vec![0, 2]),
            v => panic!("{v:?}"),
        }
        assert!(matches!(
            verify_certificate(&r, 2, 5, 2, 2),
            CertificateVerdict::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn pruning_switches_agree() {
        for (m, n, a, b) in [(2, 3, 2, 2), (2, 4, 2, 2), (2, 5, 2, 3), (3, 3, 2, 2), (3, 4, 2, 2), (2, 6, 2, 3)] {
            let base = arrows(m, n, a, b);
            for (sym, inc) in [(false, true), (true, false), (false, false)] {
                let c = cfg().with_column_symmetry_pruning(sym).with_incremental_rainbow_check(inc);
                assert_eq!(decide_arrow(m, n, a, b, &c).unwrap().arrows, base, "({m},{n},{a},{b}) {sym} {inc}");
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_the_answer() {
        for (m, n, a, b) in [(3, 4, 2, 2), (3, 5, 2, 3), (3, 6, 3, 3), (4, 4, 2, 3)] {
            let one = decide_arrow(m, n, a, b, &cfg()).unwrap();
            let again = decide_arrow(m, n, a, b, &cfg()).unwrap();
            let many = decide_arrow(m, n, a, b, &cfg().with_workers(4)).unwrap();
            assert_eq!(one.certificate, again.certificate);
            assert_eq!(one.certificate, many.certificate, "({m},{n},{a},{b})");
        }
    }
}
