//! Vertex and edge anti-Ramsey numbers of `K_{a,b}`.
//!
//! `AR_V` is the least `m + n` and `AR_E` the least `m * n` over hosts
//! `K_{m,n}` (with `m <= n`) that arrow `K_{a,b}`. Both are computed by
//! sweeping hosts in size order and deciding each one. Hosts are refuted
//! without search when possible:
//!
//! * the target fits in neither orientation;
//! * `n < ab`: the cyclic rectangle uses `n` colors, too few for a rainbow
//!   copy with `ab` edges;
//! * `a - 1` a prime power, `m < b`, `n <= (a^2 - a + 1)(b - 1)`: a block
//!   blocker cut down to `m x n`.
//!
//! Every refutation certificate is re-verified.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::is_prime_power;
use crate::constructions::block_blocker;
use crate::decide::{decide_arrow, verify_certificate, DecideError, SearchConfig};
use crate::latin::LatinRectangle;
use crate::rainbow::{RainbowError, RainbowQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntiRamseyKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefutationReason {
    /// `K_{a,b}` fits in neither orientation.
    Infeasible,
    /// Fewer colors than the target has edges.
    TooFewColors,
    BlockConstruction,
    Search,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutedHost {
    pub m: usize,
    pub n: usize,
    pub reason: RefutationReason,
    pub certificate: LatinRectangle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntiRamseyResult {
    pub kind: AntiRamseyKind,
    pub a: usize,
    pub b: usize,
    /// Absent only if the sweep could not reach an arrowing host.
    pub value: Option<usize>,
    pub witness_host: Option<(usize, usize)>,
    pub refuted_hosts: Vec<RefutedHost>,
    /// Hosts whose search ran out of budget.
    pub unresolved_hosts: Vec<(usize, usize)>,
    /// False if any host before the witness is unresolved.
    pub complete: bool,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error(transparent)]
    InvalidQuery(#[from] RainbowError),
    #[error("formula applies only when {0}")]
    DomainViolation(String),
    #[error(transparent)]
    Decide(DecideError),
}

/// Largest `n` for which the block construction refutes `K_{m,n}` (given `m < b`).
fn block_width(q: RainbowQuery) -> usize {
    q.greedy_bound()
}

/// `AR_V(K_{a,b})` by sweeping `s = m + n = 2, 3, ...`, `m` ascending.
pub fn ar_vertex(a: usize, b: usize, cfg: &SearchConfig) -> Result<AntiRamseyResult, RamseyError> {
    let q = RainbowQuery::new(a, b)?;
    let limit = a + block_width(q) + 1;
    let hosts = (2..=limit).flat_map(|s| (1..=s / 2).map(move |m| (m, s - m)));
    sweep(AntiRamseyKind::Vertex, q, hosts, |m, n| m + n, cfg)
}

/// `AR_E(K_{a,b})` by sweeping hosts ordered by `m * n`, then `m + n`, then `m`.
pub fn ar_edge(a: usize, b: usize, cfg: &SearchConfig) -> Result<AntiRamseyResult, RamseyError> {
    let q = RainbowQuery::new(a, b)?;
    let limit = a * (block_width(q) + 1);
    let mut hosts: Vec<(usize, usize)> = (1..=limit)
        .flat_map(|m| (m..=limit / m).map(move |n| (m, n)))
        .collect();
    hosts.sort_by_key(|&(m, n)| (m * n, m + n, m));
    sweep(AntiRamseyKind::Edge, q, hosts, |m, n| m * n, cfg)
}

fn sweep(
    kind: AntiRamseyKind,
    q: RainbowQuery,
    hosts: impl IntoIterator<Item = (usize, usize)>,
    size: impl Fn(usize, usize) -> usize,
    cfg: &SearchConfig,
) -> Result<AntiRamseyResult, RamseyError> {
    let mut result = AntiRamseyResult {
        kind,
        a: q.a(),
        b: q.b(),
        value: None,
        witness_host: None,
        refuted_hosts: Vec::new(),
        unresolved_hosts: Vec::new(),
        complete: false,
        nodes_explored: 0,
    };
    for (m, n) in hosts {
        if let Some((reason, certificate)) = shortcut(q, m, n) {
            log::debug!("K_{{{m},{n}}} refuted: {reason:?}");
            result.refuted_hosts.push(RefutedHost { m, n, reason, certificate });
            continue;
        }
        match decide_arrow(m, n, q.a(), q.b(), cfg) {
            Ok(d) => {
                result.nodes_explored += d.nodes_explored;
                match d.certificate {
                    Some(certificate) => result.refuted_hosts.push(RefutedHost {
                        m,
                        n,
                        reason: RefutationReason::Search,
                        certificate,
                    }),
                    None => {
                        log::info!("K_{{{m},{n}}} arrows K_{{{},{}}}", q.a(), q.b());
                        result.value = Some(size(m, n));
                        result.witness_host = Some((m, n));
                        result.complete = result.unresolved_hosts.is_empty();
                        return Ok(result);
                    }
                }
            }
            Err(DecideError::BudgetExhausted { nodes }) => {
                log::warn!("K_{{{m},{n}}} unresolved after {nodes} nodes");
                result.nodes_explored += nodes;
                result.unresolved_hosts.push((m, n));
            }
            Err(e) => return Err(RamseyError::Decide(e)),
        }
    }
    Ok(result)
}

/// Refutes `K_{m,n}` without search when one of the constructions applies.
fn shortcut(q: RainbowQuery, m: usize, n: usize) -> Option<(RefutationReason, LatinRectangle)> {
    let (a, b) = (q.a(), q.b());
    let fits = (m >= a && n >= b) || (m >= b && n >= a);
    let candidate = if !fits {
        Some((RefutationReason::Infeasible, LatinRectangle::cyclic(m, n)))
    } else if n < a * b {
        Some((RefutationReason::TooFewColors, LatinRectangle::cyclic(m, n)))
    } else if a >= 2 && is_prime_power(a as u64 - 1) && m < b && n <= block_width(q) {
        match block_blocker(a, b) {
            Ok(r) => Some((RefutationReason::BlockConstruction, r.truncate(m, n))),
            Err(e) => {
                log::debug!("block construction unavailable for ({a},{b}): {e}");
                None
            }
        }
    } else {
        None
    };
    let (reason, cert) = candidate?;
    if verify_certificate(&cert, m, n, a, b).passed() {
        Some((reason, cert))
    } else {
        log::warn!("{reason:?} certificate for K_{{{m},{n}}} failed verification; searching instead");
        None
    }
}

/// Closed form `3b` for `AR_V(K_{2,b})`, `b >= 2`.
pub fn ar_vertex_formula(b: usize) -> Result<usize, RamseyError> {
    if b < 2 {
        return Err(RamseyError::DomainViolation("b >= 2".into()));
    }
    Ok(3 * b)
}

/// Closed form `a^2 (a - 1)(b - 1) + ab` for `AR_E(K_{a,b})`, valid when
/// `a - 1` is a prime power and `b >= a(a - 1)`.
pub fn ar_edge_formula(a: usize, b: usize) -> Result<usize, RamseyError> {
    if a < 2 || !is_prime_power(a as u64 - 1) {
        return Err(RamseyError::DomainViolation("a - 1 is a prime power".into()));
    }
    if b < a * (a - 1) {
        return Err(RamseyError::DomainViolation(format!("b >= a(a - 1) = {}", a * (a - 1))));
    }
    Ok(a * a * (a - 1) * (b - 1) + a * b)
}
