//! Backtracking search with task-level parallelism.
//!
//! The tree is cut after the first rows; every surviving prefix becomes a
//! task. Workers pull tasks in order. A task that finds a blocker lowers a
//! shared bound so that tasks after it are abandoned, while tasks before it
//! still run to completion. The reported blocker is therefore the first one
//! in sequential search order, whatever the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::mpsc;

use itertools::Itertools;

use super::SearchConfig;
use crate::latin::LatinRectangle;
use crate::rainbow::{find_rainbow_either, next_combination, RainbowQuery};

/// Largest column count for which every column permutation is tried by the
/// symmetry test; wider instances try transpositions only.
const FULL_GROUP_MAX_COLS: usize = 6;

/// Nodes counted locally before touching the shared counter.
const NODE_BATCH: u64 = 1024;

pub(super) struct Problem {
    pub m: usize,
    pub n: usize,
    pub query: RainbowQuery,
    /// Fitting orientations as `(height, width)`.
    pub shapes: Vec<(usize, usize)>,
    pub incremental: bool,
    pub symmetry: bool,
}

pub(super) enum Outcome {
    Exhausted,
    Blocker(Vec<u8>),
    Budget,
}

enum Step {
    Exhausted,
    Found,
    Halt,
}

struct Shared {
    nodes: AtomicU64,
    max_nodes: u64,
    /// Lowest task index that has produced a blocker.
    best: AtomicUsize,
    budget_hit: AtomicBool,
}

impl Shared {
    fn add_nodes(&self, k: u64) -> bool {
        let total = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        if total > self.max_nodes {
            self.budget_hit.store(true, Ordering::Relaxed);
        }
        !self.budget_hit.load(Ordering::Relaxed)
    }
}

struct Searcher<'a> {
    p: &'a Problem,
    perms: &'a [Vec<u8>],
    shared: &'a Shared,
    task: usize,
    cells: Vec<u8>,
    row_mask: Vec<u128>,
    col_mask: Vec<u128>,
    used: u8,
    pending: u64,
    /// When set, prefixes reaching this cell index are collected instead of searched.
    split: Option<usize>,
    tasks: Vec<Vec<u8>>,
    cand: Vec<u128>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a Problem, perms: &'a [Vec<u8>], shared: &'a Shared) -> Self {
        Self {
            p,
            perms,
            shared,
            task: usize::MAX,
            cells: vec![0; p.m * p.n],
            row_mask: vec![0; p.m],
            col_mask: vec![0; p.n],
            used: 0,
            pending: 0,
            split: None,
            tasks: Vec::new(),
            cand: Vec::new(),
        }
    }

    fn load(&mut self, task: usize, prefix: &[u8]) {
        self.task = task;
        self.row_mask.fill(0);
        self.col_mask.fill(0);
        self.used = 0;
        for (pos, &s) in prefix.iter().enumerate() {
            self.place(pos, s);
        }
    }

    fn place(&mut self, pos: usize, s: u8) {
        let (i, j) = (pos / self.p.n, pos % self.p.n);
        self.cells[pos] = s;
        self.row_mask[i] |= 1 << s;
        self.col_mask[j] |= 1 << s;
        if s == self.used {
            self.used += 1;
        }
    }

    fn unplace(&mut self, pos: usize, s: u8, fresh: bool) {
        let (i, j) = (pos / self.p.n, pos % self.p.n);
        self.row_mask[i] &= !(1 << s);
        self.col_mask[j] &= !(1 << s);
        if fresh {
            self.used -= 1;
        }
    }

    /// Counts a node; false when the search should stop.
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending < NODE_BATCH {
            return true;
        }
        self.flush() && self.shared.best.load(Ordering::Relaxed) >= self.task
    }

    fn flush(&mut self) -> bool {
        let k = std::mem::take(&mut self.pending);
        self.shared.add_nodes(k)
    }

    fn dfs(&mut self, pos: usize) -> Step {
        if self.split == Some(pos) {
            self.tasks.push(self.cells[..pos].to_vec());
            return Step::Exhausted;
        }
        let (m, n) = (self.p.m, self.p.n);
        if pos == m * n {
            return if self.leaf_is_blocker() { Step::Found } else { Step::Exhausted };
        }
        let (i, j) = (pos / n, pos % n);
        let forbidden = self.row_mask[i] | self.col_mask[j];
        let top = self.used;
        for s in 0..=top {
            if s < top && forbidden >> s & 1 == 1 {
                continue;
            }
            self.place(pos, s);
            if !self.tick() {
                return Step::Halt;
            }
            let keep = !(self.p.incremental && self.anchored_rainbow(i, j))
                && !(self.p.symmetry && j + 1 == n && i > 0 && !self.column_minimal(i + 1));
            if keep {
                match self.dfs(pos + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.unplace(pos, s, s == top);
        }
        Step::Exhausted
    }

    fn leaf_is_blocker(&self) -> bool {
        let cells = self.cells.iter().map(|&s| u32::from(s)).collect();
        let rect = LatinRectangle::from_cells_unchecked(self.p.m, self.p.n, cells);
        find_rainbow_either(&rect, self.p.query).is_none()
    }

    fn symbol_bit(&self, r: usize, c: usize) -> u128 {
        1 << self.cells[r * self.p.n + c]
    }

    /// Rainbow `h x w` subrectangle with bottom-right corner `(i, j)`, for
    /// each fitting orientation.
    fn anchored_rainbow(&mut self, i: usize, j: usize) -> bool {
        let shapes = self.p.shapes.clone();
        shapes.iter().any(|&(h, w)| i + 1 >= h && j + 1 >= w && self.anchored_shape(i, j, h, w))
    }

    fn anchored_shape(&mut self, i: usize, j: usize, h: usize, w: usize) -> bool {
        let mut rows: Vec<usize> = (0..h - 1).collect();
        loop {
            let mask_of = |this: &Self, c: usize| rows.iter().fold(this.symbol_bit(i, c), |acc, &r| acc | this.symbol_bit(r, c));
            let anchor = mask_of(self, j);
            let mut cand = std::mem::take(&mut self.cand);
            cand.clear();
            cand.extend((0..j).map(|c| mask_of(self, c)).filter(|mc| mc & anchor == 0));
            let hit = cand.len() + 1 >= w && pick_disjoint(&cand, w - 1, anchor);
            self.cand = cand;
            if hit {
                return true;
            }
            if !next_combination(&mut rows, i) {
                return false;
            }
        }
    }

    /// Whether rows `0..rows` are lexicographically least among their
    /// images under the stored column permutations, after renaming.
    fn column_minimal(&self, rows: usize) -> bool {
        let n = self.p.n;
        let mut label = [u8::MAX; 128];
        for perm in self.perms {
            label.fill(u8::MAX);
            for (c, &pc) in perm.iter().enumerate() {
                label[pc as usize] = c as u8;
            }
            let mut next = n as u8;
            'cmp: for r in 1..rows {
                for (c, &pc) in perm.iter().enumerate() {
                    let s = self.cells[r * n + pc as usize] as usize;
                    if label[s] == u8::MAX {
                        label[s] = next;
                        next += 1;
                    }
                    let cur = self.cells[r * n + c];
                    if label[s] != cur {
                        if label[s] < cur {
                            return false;
                        }
                        break 'cmp;
                    }
                }
            }
        }
        true
    }
}

/// Chooses `need` pairwise disjoint masks from `cand`, all disjoint from `acc`.
fn pick_disjoint(cand: &[u128], need: usize, acc: u128) -> bool {
    if need == 0 {
        return true;
    }
    for (k, &mc) in cand.iter().enumerate() {
        if cand.len() - k < need {
            break;
        }
        if mc & acc == 0 && pick_disjoint(&cand[k + 1..], need - 1, acc | mc) {
            return true;
        }
    }
    false
}

fn column_perms(n: usize) -> Vec<Vec<u8>> {
    if n <= FULL_GROUP_MAX_COLS {
        (0..n as u8).permutations(n).skip(1).collect()
    } else {
        (0..n)
            .tuple_combinations()
            .map(|(x, y)| {
                let mut p: Vec<u8> = (0..n as u8).collect();
                p.swap(x, y);
                p
            })
            .collect()
    }
}

struct TaskReport {
    task: usize,
    blocker: Option<Vec<u8>>,
    completed: bool,
}

pub(super) fn run(p: &Problem, cfg: &SearchConfig) -> (Outcome, u64) {
    let perms = if p.symmetry && p.m > 1 { column_perms(p.n) } else { Vec::new() };
    let shared = Shared {
        nodes: AtomicU64::new(0),
        max_nodes: cfg.max_nodes,
        best: AtomicUsize::new(usize::MAX),
        budget_hit: AtomicBool::new(false),
    };
    let split_row = if p.m >= 3 { 2 } else { 1 };

    let mut root = Searcher::new(p, &perms, &shared);
    root.split = Some(split_row * p.n);
    let expanded = root.dfs(0);
    root.flush();
    if matches!(expanded, Step::Halt) || shared.budget_hit.load(Ordering::Relaxed) {
        return (Outcome::Budget, shared.nodes.load(Ordering::Relaxed));
    }
    let tasks = std::mem::take(&mut root.tasks);
    log::debug!("{} subtree tasks for {} workers", tasks.len(), cfg.workers);

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let work = |tx: mpsc::Sender<TaskReport>| {
        let mut s = Searcher::new(p, &perms, &shared);
        loop {
            let k = next.fetch_add(1, Ordering::Relaxed);
            if k >= tasks.len() || k > shared.best.load(Ordering::Relaxed) {
                break;
            }
            s.load(k, &tasks[k]);
            let step = s.dfs(tasks[k].len());
            let in_budget = s.flush();
            let report = match step {
                Step::Found => {
                    shared.best.fetch_min(k, Ordering::Relaxed);
                    TaskReport {
                        task: k,
                        blocker: Some(s.cells.clone()),
                        completed: true,
                    }
                }
                Step::Exhausted => TaskReport {
                    task: k,
                    blocker: None,
                    completed: in_budget,
                },
                Step::Halt => TaskReport {
                    task: k,
                    blocker: None,
                    completed: false,
                },
            };
            tx.send(report).expect("collector outlives workers");
            if shared.budget_hit.load(Ordering::Relaxed) {
                break;
            }
        }
    };
    if cfg.workers == 1 {
        work(tx);
    } else {
        std::thread::scope(|scope| {
            for _ in 0..cfg.workers {
                let tx = tx.clone();
                scope.spawn(|| work(tx));
            }
            drop(tx);
        });
    }

    let mut completed = vec![false; tasks.len()];
    let mut first: Option<(usize, Vec<u8>)> = None;
    for r in rx {
        completed[r.task] = r.completed;
        if let Some(cells) = r.blocker {
            if first.as_ref().is_none_or(|(k, _)| r.task < *k) {
                first = Some((r.task, cells));
            }
        }
    }
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let outcome = match first {
        Some((k, cells)) if completed[..k].iter().all(|&c| c) => Outcome::Blocker(cells),
        None if completed.iter().all(|&c| c) => Outcome::Exhausted,
        _ => Outcome::Budget,
    };
    (outcome, nodes)
}
