//! Cross-checks of the exhaustive search against the reference enumerator,
//! the constructions and the greedy guarantee.

use std::collections::BTreeMap;

use rainbow_core::algebra::is_prime_power;
use rainbow_core::constructions::block_blocker;
use rainbow_core::decide::brute_force_verdicts;
use rainbow_core::ramsey::{ar_edge, ar_vertex, ar_vertex_formula};
use rainbow_core::{decide_arrow, verify_certificate, RainbowQuery, SearchConfig};

/// Every decidable instance with `m * n <= area`, keyed by `(m, n, a, b)`.
fn decided(area: usize) -> BTreeMap<(usize, usize, usize, usize), bool> {
    let mut out = BTreeMap::new();
    for m in 1..=area {
        for n in m..=area / m {
            for b in 1..=n {
                for a in 1..=b {
                    let d = decide_arrow(m, n, a, b, &SearchConfig::default()).unwrap();
                    if let Some(c) = &d.certificate {
                        assert!(verify_certificate(c, m, n, a, b).passed());
                    }
                    out.insert((m, n, a, b), d.arrows);
                }
            }
        }
    }
    out
}

#[test]
fn agrees_with_reference_enumerator() {
    for m in 1..=12 {
        for n in m..=12 / m {
            for ((a, b), expected) in brute_force_verdicts(m, n) {
                for (sym, inc) in [(true, true), (false, true), (true, false)] {
                    let cfg = SearchConfig::default()
                        .with_column_symmetry_pruning(sym)
                        .with_incremental_rainbow_check(inc);
                    let d = decide_arrow(m, n, a, b, &cfg).unwrap();
                    assert_eq!(d.arrows, expected, "K_{{{m},{n}}} vs K_{{{a},{b}}} sym={sym} inc={inc}");
                }
            }
        }
    }
}

#[test]
fn agrees_with_reference_enumerator_two_rows() {
    for n in [7, 8] {
        for ((a, b), expected) in brute_force_verdicts(2, n) {
            assert_eq!(decide_arrow(2, n, a, b, &SearchConfig::default()).unwrap().arrows, expected);
        }
    }
}

#[test]
fn verdicts_are_monotone_and_match_constructions() {
    let table = decided(24);
    for (&(m, n, a, b), &arrows) in &table {
        if arrows {
            if let Some(&wider) = table.get(&(m, n + 1, a, b)) {
                assert!(wider, "K_{{{m},{}}} should arrow K_{{{a},{b}}}", n + 1);
            }
            if let Some(&taller) = table.get(&(m + 1, n, a, b)) {
                assert!(taller, "K_{{{},{n}}} should arrow K_{{{a},{b}}}", m + 1);
            }
        }
        let bound = RainbowQuery::new(a, b).unwrap().greedy_bound();
        if m >= a && n > bound {
            assert!(arrows, "greedy guarantee fails for K_{{{m},{n}}}, K_{{{a},{b}}}");
        }
        if a >= 2 && is_prime_power(a as u64 - 1) && m < b && n <= bound {
            assert!(!arrows, "block construction contradicted for K_{{{m},{n}}}, K_{{{a},{b}}}");
        }
    }
}

#[test]
fn block_blockers_refute_their_hosts() {
    for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)] {
        let r = block_blocker(a, b).unwrap();
        assert!(verify_certificate(&r, r.rows(), r.cols(), a, b).passed(), "({a},{b})");
    }
}

#[test]
fn certificates_are_independent_of_workers() {
    for (m, n, a, b) in [(3, 6, 3, 3), (3, 7, 3, 3), (4, 5, 3, 3), (2, 6, 2, 3)] {
        let base = decide_arrow(m, n, a, b, &SearchConfig::default()).unwrap();
        for w in [2, 3, 8] {
            let d = decide_arrow(m, n, a, b, &SearchConfig::default().with_workers(w)).unwrap();
            assert_eq!(d.arrows, base.arrows);
            assert_eq!(d.certificate, base.certificate, "K_{{{m},{n}}} with {w} workers");
        }
    }
    let k36 = decide_arrow(3, 6, 2, 3, &SearchConfig::default().with_workers(4)).unwrap();
    assert!(k36.arrows);
}

#[test]
fn vertex_numbers_match_formula() {
    for b in [2, 3] {
        let r = ar_vertex(2, b, &SearchConfig::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.value, Some(ar_vertex_formula(b).unwrap()));
        let (m, n) = r.witness_host.unwrap();
        assert!(decide_arrow(m, n, 2, b, &SearchConfig::default()).unwrap().arrows);
    }
}

#[test]
fn edge_number_two_three() {
    let r = ar_edge(2, 3, &SearchConfig::default()).unwrap();
    assert!(r.complete);
    assert_eq!(r.value, Some(14));
    assert_eq!(r.witness_host, Some((2, 7)));
    for h in &r.refuted_hosts {
        assert!(h.m * h.n < 14);
        assert!(verify_certificate(&h.certificate, h.m, h.n, 2, 3).passed());
    }
}
