//! End-to-end verification battery.
//!
//! Each criterion runs against the library, produces a one-line detail, and
//! fails if it errors or overruns its time limit. Randomized checks draw from
//! a ChaCha stream seeded by [`SuiteConfig::seed`].

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rainbow_core::algebra::{
    difference_set, exhaustive_difference_set, plane_from_blocker, verify_plane_axioms, DifferenceSet,
    DifferenceSetMethod, FieldElement, FiniteField, PlaneReport, PrimePower,
};
use rainbow_core::constructions::{block_blocker, kron_blocker, singer_blocker, KronSpec};
use rainbow_core::decide::brute_force_verdicts;
use rainbow_core::fixtures::fano_3x7;
use rainbow_core::ramsey::{ar_edge, ar_vertex, AntiRamseyResult};
use rainbow_core::{
    decide_arrow, find_rainbow, find_rainbow_shape, greedy_rainbow, verify_certificate, ArrowDecision,
    CertificateVerdict, LatinRectangle, RainbowQuery, SearchConfig,
};

use crate::random::random_latin;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub workers: usize,
    pub max_nodes: u64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            workers: 1,
            max_nodes: SearchConfig::default().max_nodes,
            seed: DEFAULT_SEED,
        }
    }
}

impl SuiteConfig {
    fn search(&self) -> SearchConfig {
        SearchConfig::default().with_workers(self.workers).with_max_nodes(self.max_nodes)
    }
}

type Check = fn(&SuiteConfig) -> Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    check: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: u128,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} ({:.1} ms, limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "K_{2,4} arrows K_{2,2}", limit: secs(1), check: k24_arrows_k22 },
        Criterion { id: 2, name: "K_{3,6} arrows K_{2,3}", limit: secs(600), check: k36_arrows_k23 },
        Criterion { id: 3, name: "K_{2,6} does not arrow K_{2,3}", limit: secs(1), check: k26_refuted },
        Criterion { id: 4, name: "Singer blockers have no rainbow a x 2", limit: secs(10), check: singer_blockers },
        Criterion { id: 5, name: "Singer blockers give projective planes", limit: secs(10), check: planes_from_blockers },
        Criterion { id: 6, name: "Singer sets are planar and match exhaustive search", limit: secs(30), check: difference_sets },
        Criterion { id: 7, name: "AR_V(K_{2,2}) = 6, AR_V(K_{2,3}) = 9", limit: secs(900), check: vertex_numbers },
        Criterion { id: 8, name: "AR_E(K_{2,2}) = 8", limit: secs(60), check: edge_number },
        Criterion { id: 9, name: "Product blocker 4x6 has no rainbow 3x3", limit: secs(1), check: product_blocker },
        Criterion { id: 10, name: "Search agrees with brute force for m*n <= 12", limit: secs(300), check: oracle_agreement },
        Criterion { id: 11, name: "Property suites", limit: secs(120), check: property_suites },
    ]
}

pub fn run_criterion(c: &Criterion, cfg: &SuiteConfig) -> CriterionReport {
    let start = Instant::now();
    let outcome = (c.check)(cfg);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > c.limit {
        passed = false;
        detail = format!("over time limit: {detail}");
    }
    CriterionReport {
        id: c.id,
        name: c.name,
        passed,
        detail,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        limit_ms: c.limit.as_millis(),
    }
}

/// Runs the criteria whose ids are in `only` (all when empty), in order.
pub fn run_suite(cfg: &SuiteConfig, only: &[u32]) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| {
            let r = run_criterion(c, cfg);
            log::info!("{r}");
            r
        })
        .collect()
}

fn decide(m: usize, n: usize, a: usize, b: usize, cfg: &SearchConfig) -> Result<ArrowDecision, String> {
    decide_arrow(m, n, a, b, cfg).map_err(|e| format!("decide({m},{n},{a},{b}): {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k24_arrows_k22(cfg: &SuiteConfig) -> Result<String, String> {
    let d = decide(2, 4, 2, 2, &cfg.search())?;
    ensure(d.arrows, || format!("blocker found: {:?}", d.certificate))?;
    Ok(format!("arrows by exhaustion, {} nodes", d.nodes_explored))
}

fn k36_arrows_k23(cfg: &SuiteConfig) -> Result<String, String> {
    let single = decide(3, 6, 2, 3, &cfg.search().with_workers(1))?;
    ensure(single.arrows, || format!("blocker found: {:?}", single.certificate))?;
    let workers = cfg.workers.max(2);
    let parallel = decide(3, 6, 2, 3, &cfg.search().with_workers(workers))?;
    ensure(parallel.arrows, || format!("{workers} workers disagree"))?;
    Ok(format!(
        "arrows by exhaustion, {} nodes single-threaded; same verdict with {workers} workers",
        single.nodes_explored
    ))
}

fn k26_refuted(cfg: &SuiteConfig) -> Result<String, String> {
    let d = decide(2, 6, 2, 3, &cfg.search())?;
    ensure(!d.arrows, || "search claims K_{2,6} arrows".into())?;
    let cert = d.certificate.ok_or("no certificate")?;
    let v = verify_certificate(&cert, 2, 6, 2, 3);
    ensure(v.passed(), || format!("search certificate rejected: {v:?}"))?;
    let block = block_blocker(2, 3).map_err(|e| e.to_string())?;
    let v = verify_certificate(&block, 2, 6, 2, 3);
    ensure(v.passed(), || format!("block blocker rejected: {v:?}"))?;
    Ok(format!("blocker {:?}; block construction {:?} verified", cert.to_grid(), block.to_grid()))
}

const SINGER_RANGE: [usize; 8] = [2, 3, 4, 5, 6, 8, 9, 10];

/// Every two columns share a symbol, checked pair by pair.
fn columns_pairwise_meet(r: &LatinRectangle) -> bool {
    let col = |j: usize| (0..r.rows()).map(|i| r.get(i, j)).collect::<Vec<_>>();
    (0..r.cols()).all(|j1| {
        let c1 = col(j1);
        (j1 + 1..r.cols()).all(|j2| col(j2).iter().any(|s| c1.contains(s)))
    })
}

fn singer_blockers(_: &SuiteConfig) -> Result<String, String> {
    for a in SINGER_RANGE {
        let r = singer_blocker(a).map_err(|e| format!("a = {a}: {e}"))?;
        LatinRectangle::from_cells(r.rows(), r.cols(), r.cells().to_vec()).map_err(|e| format!("a = {a}: {e}"))?;
        ensure(r.cols() == a * a - a + 1, || format!("a = {a}: {} columns", r.cols()))?;
        let q = RainbowQuery::new(2, a).expect("2 <= a");
        let hit = find_rainbow_shape(&r, a, 2).map_err(|e| e.to_string())?;
        ensure(hit.is_none(), || format!("a = {a}: rainbow {hit:?}"))?;
        ensure(columns_pairwise_meet(&r), || format!("a = {a}: disjoint column pair"))?;
        // a x 2 is the transpose of the 2 x a query
        let hit = find_rainbow(&r.transpose(), q).map_err(|e| e.to_string())?;
        ensure(hit.is_none(), || format!("a = {a}: transposed search found {hit:?}"))?;
    }
    Ok(format!("a in {SINGER_RANGE:?}"))
}

fn planes_from_blockers(_: &SuiteConfig) -> Result<String, String> {
    for a in SINGER_RANGE {
        let r = singer_blocker(a).map_err(|e| e.to_string())?;
        let plane = plane_from_blocker(&r).map_err(|e| format!("a = {a}: {e}"))?;
        let report = verify_plane_axioms(&plane);
        ensure(report == PlaneReport::Pass, || format!("a = {a}: {report:?}"))?;
    }
    let plane = plane_from_blocker(&singer_blocker(3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let example = plane_from_blocker(&fano_3x7()).map_err(|e| e.to_string())?;
    let params = |p: &rainbow_core::algebra::ProjectivePlane| (p.num_points(), p.lines().len(), p.line_size());
    ensure(params(&plane) == (7, 7, 3) && params(&example) == (7, 7, 3), || {
        format!("a = 3 parameters {:?}, example {:?}", params(&plane), params(&example))
    })?;
    Ok("all planes pass the axioms; a = 3 gives 7 points, 7 lines, 3 points per line".into())
}

/// Each nonzero residue arises exactly once as a difference.
fn differences_once(d: &DifferenceSet) -> bool {
    let v = d.modulus();
    let mut count = vec![0u32; v as usize];
    for &x in d.residues() {
        for &y in d.residues() {
            if x != y {
                count[((x + v - y) % v) as usize] += 1;
            }
        }
    }
    count[1..].iter().all(|&c| c == 1)
}

fn difference_sets(_: &SuiteConfig) -> Result<String, String> {
    let mut found = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let pp = PrimePower::new(q).expect("prime power");
        let d = difference_set(pp, DifferenceSetMethod::Singer).map_err(|e| format!("q = {q}: {e}"))?;
        ensure(d.modulus() == q * q + q + 1 && differences_once(&d), || format!("q = {q}: {d:?} is not planar"))?;
        if q <= 3 {
            let e = exhaustive_difference_set(q).map_err(|e| e.to_string())?;
            ensure(differences_once(&e), || format!("q = {q}: exhaustive {e:?} not planar"))?;
            ensure(d.equivalent_to(&e), || format!("q = {q}: {d:?} not equivalent to {e:?}"))?;
        }
        found.push(format!("q={q}: {:?}", d.residues()));
    }
    Ok(found.join("; "))
}

fn sweep_check(r: &AntiRamseyResult, expected: usize) -> Result<(), String> {
    let label = format!("{:?}({},{})", r.kind, r.a, r.b);
    ensure(r.complete, || format!("{label}: incomplete, unresolved hosts {:?}", r.unresolved_hosts))?;
    ensure(r.value == Some(expected), || format!("{label}: value {:?}, expected {expected}", r.value))?;
    for h in &r.refuted_hosts {
        let v = verify_certificate(&h.certificate, h.m, h.n, r.a, r.b);
        ensure(v == CertificateVerdict::Pass, || format!("{label}: K_{{{},{}}} certificate {v:?}", h.m, h.n))?;
    }
    Ok(())
}

fn vertex_numbers(cfg: &SuiteConfig) -> Result<String, String> {
    let mut out = Vec::new();
    for (b, expected) in [(2, 6), (3, 9)] {
        let r = ar_vertex(2, b, &cfg.search()).map_err(|e| e.to_string())?;
        sweep_check(&r, expected)?;
        out.push(format!("AR_V(K_{{2,{b}}}) = {expected} at {:?}", r.witness_host.expect("complete")));
    }
    Ok(out.join(", "))
}

fn edge_number(cfg: &SuiteConfig) -> Result<String, String> {
    let r = ar_edge(2, 2, &cfg.search()).map_err(|e| e.to_string())?;
    sweep_check(&r, 8)?;
    Ok(format!("AR_E(K_{{2,2}}) = 8 at {:?}", r.witness_host.expect("complete")))
}

fn product_blocker(_: &SuiteConfig) -> Result<String, String> {
    let a = singer_blocker(2).map_err(|e| e.to_string())?;
    let b = LatinRectangle::from_grid(&[vec![0, 1], vec![1, 0]]).expect("latin");
    let spec = KronSpec::new(a, b, 3).map_err(|e| e.to_string())?;
    let out = kron_blocker(&spec);
    ensure((out.rows(), out.cols()) == (4, 6), || format!("shape {}x{}", out.rows(), out.cols()))?;
    LatinRectangle::from_cells(4, 6, out.cells().to_vec()).map_err(|e| e.to_string())?;
    let hit = find_rainbow_shape(&out, 3, 3).map_err(|e| e.to_string())?;
    ensure(hit.is_none(), || format!("rainbow 3x3 {hit:?}"))?;
    Ok(format!("{:?}", out.to_grid()))
}

fn oracle_agreement(cfg: &SuiteConfig) -> Result<String, String> {
    let mut instances = 0;
    for m in 1..=12 {
        for n in m..=12 / m {
            for ((a, b), expected) in brute_force_verdicts(m, n) {
                let d = decide(m, n, a, b, &cfg.search())?;
                ensure(d.arrows == expected, || {
                    format!("K_{{{m},{n}}} vs K_{{{a},{b}}}: search {}, brute force {expected}", d.arrows)
                })?;
                instances += 1;
            }
        }
    }
    Ok(format!("{instances} instances agree"))
}

fn property_suites(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rects = 200;
    for k in 0..rects {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
        let palette = (m + n - 1) as u32 + rng.gen_range(0..4);
        let r = random_latin(&mut rng, m, n, palette);
        structural_properties(&r).map_err(|e| format!("rectangle {k} {:?}: {e}", r.to_grid()))?;
        let (h, w) = (rng.gen_range(1..=m), rng.gen_range(1..=n));
        rainbow_properties(&r, h, w).map_err(|e| format!("rectangle {k} {:?}, {h}x{w}: {e}", r.to_grid()))?;
    }
    let greedy = 200;
    for k in 0..greedy {
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(a..=4);
        let q = RainbowQuery::new(a, b).expect("a <= b");
        let (m, n) = (a + rng.gen_range(0..=2), q.greedy_bound() + 1 + rng.gen_range(0..=3));
        let palette = (m + n - 1) as u32 + rng.gen_range(0..8);
        let r = random_latin(&mut rng, m, n, palette);
        let w = greedy_rainbow(&r, q).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(w.is_rainbow_in(&r) && w.cols.len() == b, || format!("instance {k}: bad witness {w:?}"))?;
    }
    let fields = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];
    for (p, k) in fields {
        let f = FiniteField::new(p, k).map_err(|e| e.to_string())?;
        field_axioms(&f, &mut rng, 1000).map_err(|e| format!("GF({p}^{k}): {e}"))?;
    }
    Ok(format!(
        "{rects} rectangles, {greedy} greedy instances, {} fields x 1000 triples (seed {:#x})",
        fields.len(),
        cfg.seed
    ))
}

fn structural_properties(r: &LatinRectangle) -> Result<(), String> {
    let relabeled = r.canonical_relabel();
    let derived = [
        ("transpose", r.transpose()),
        ("relabel", relabeled.clone()),
        ("shift", r.shift_symbols(5)),
        ("select", r.select(&(0..r.rows()).rev().collect::<Vec<_>>(), &(0..r.cols()).step_by(2).collect::<Vec<_>>())),
        ("text", LatinRectangle::parse_text(&r.to_text()).map_err(|e| e.to_string())?),
        ("json", LatinRectangle::parse_json(&r.to_json()).map_err(|e| e.to_string())?),
    ];
    for (what, d) in &derived {
        LatinRectangle::from_cells(d.rows(), d.cols(), d.cells().to_vec()).map_err(|e| format!("{what}: {e}"))?;
    }
    ensure(derived[4].1 == *r && derived[5].1 == *r, || "serialization round trip changed the rectangle".into())?;
    ensure(r.transpose().transpose() == *r, || "transpose is not an involution".into())?;
    ensure(relabeled.canonical_relabel() == relabeled && relabeled.is_canonical(), || {
        "relabel is not idempotent".into()
    })
}

fn rainbow_properties(r: &LatinRectangle, h: usize, w: usize) -> Result<(), String> {
    let has = |x: &LatinRectangle, h, w| find_rainbow_shape(x, h, w).map(|o| o.is_some()).map_err(|e| e.to_string());
    let base = has(r, h, w)?;
    ensure(has(&r.canonical_relabel(), h, w)? == base, || "relabel changed rainbow status".into())?;
    ensure(has(&r.transpose(), w, h)? == base, || "transpose duality fails".into())?;
    if let Some(wit) = find_rainbow_shape(r, h, w).map_err(|e| e.to_string())? {
        ensure(wit.is_rainbow_in(r), || format!("witness {wit:?} is not rainbow"))?;
    }
    Ok(())
}

fn field_axioms(f: &FiniteField, rng: &mut ChaCha8Rng, samples: usize) -> Result<(), String> {
    let (zero, one) = (f.zero(), f.one());
    let pick = |rng: &mut ChaCha8Rng| f.element(rng.gen_range(0..f.order()));
    for _ in 0..samples {
        let (x, y, z) = (pick(rng), pick(rng), pick(rng));
        let checks: [(&str, FieldElement, FieldElement); 7] = [
            ("add assoc", f.add(f.add(x, y), z), f.add(x, f.add(y, z))),
            ("mul assoc", f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z))),
            ("add comm", f.add(x, y), f.add(y, x)),
            ("mul comm", f.mul(x, y), f.mul(y, x)),
            ("distrib", f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z))),
            ("identities", f.add(f.mul(x, one), zero), x),
            ("negation", f.add(x, f.neg(x)), zero),
        ];
        for (what, l, r) in checks {
            ensure(l == r, || format!("{what} fails at ({x:?}, {y:?}, {z:?})"))?;
        }
        if x != zero {
            let inv = f.inv(x).ok_or_else(|| format!("{x:?} has no inverse"))?;
            ensure(f.mul(x, inv) == one, || format!("inverse of {x:?} is wrong"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sequential() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn budget_of_one_node_fails_search_criteria() {
        let cfg = SuiteConfig { max_nodes: 1, ..SuiteConfig::default() };
        let reports = run_suite(&cfg, &[1, 4, 8]);
        assert!(!reports[0].passed);
        assert!(reports[0].detail.contains("budget"), "{}", reports[0].detail);
        assert!(reports[1].passed);
        assert!(!reports[2].passed);
    }
}
