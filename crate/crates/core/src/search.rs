//! Branch-and-bound search for maximum point sets with at most `k` distinct
//! distances inside a finite rational grid.
//!
//! Results are grid-restricted: a maximum found on `{a/q : |a| <= m}^d` says
//! nothing about sets of real points outside that grid.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{generate_lambda, int_distance, Configuration, Metric, Point};
use crate::numeric::Rational;
use crate::similarity::{canonicalize, is_axis_parallel};

pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;

/// The grid `{a/q : a integer, |a| <= m}^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub dimension: usize,
    pub half_width: u32,
    pub denominator: u32,
}

impl GridSpec {
    pub fn new(dimension: usize, half_width: u32, denominator: u32) -> Result<Self> {
        if dimension == 0 || half_width == 0 || denominator == 0 {
            return Err(Error::Precondition(format!(
                "grid needs positive dimension, half-width and denominator (got {dimension}, {half_width}, {denominator})"
            )));
        }
        Ok(GridSpec {
            dimension,
            half_width,
            denominator,
        })
    }

    pub fn side(&self) -> usize {
        2 * self.half_width as usize + 1
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.dimension as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the integer lattice points of l1 norm at most `k` lie in the
    /// grid, i.e. `m / q >= k`.
    pub fn holds_radius(&self, k: u32) -> bool {
        self.half_width as u64 >= k as u64 * self.denominator as u64
    }

    /// Grid numerators in lexicographic order.
    fn numerators(&self) -> Vec<Vec<i64>> {
        let m = self.half_width as i64;
        let side = self.side();
        (0..self.len())
            .map(|mut idx| {
                let mut coords = vec![0i64; self.dimension];
                for c in coords.iter_mut().rev() {
                    *c = (idx % side) as i64 - m;
                    idx /= side;
                }
                coords
            })
            .collect()
    }

    fn point_at(&self, numerators: &[i64]) -> Point {
        let q = BigInt::from(self.denominator);
        Point::new(
            numerators
                .iter()
                .map(|&a| Rational::new(BigInt::from(a), q.clone()))
                .collect(),
        )
        .expect("dimension >= 1")
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{a/{} : |a| <= {}}}^{}",
            self.denominator, self.half_width, self.dimension
        )
    }
}

/// All `(2m+1)^d` grid points in lexicographic order.
pub fn enumerate_grid(g: &GridSpec) -> Vec<Point> {
    g.numerators().iter().map(|a| g.point_at(a)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub max_size: usize,
    /// Canonical representatives, sorted, one per similarity class.
    pub canonical_classes: Vec<Configuration>,
    /// Diagnostic only; varies with scheduling when `jobs > 1`.
    pub nodes_explored: u64,
    pub grid: GridSpec,
    pub k: u32,
    pub metric: Metric,
    /// False when the node limit stopped the search early.
    pub complete: bool,
}

pub fn max_k_distance_sets(g: &GridSpec, k: u32, metric: Metric) -> SearchResult {
    max_k_distance_sets_with(g, k, metric, &SearchOptions::default())
}

pub fn max_k_distance_sets_with(
    g: &GridSpec,
    k: u32,
    metric: Metric,
    options: &SearchOptions,
) -> SearchResult {
    assert!(k >= 1, "k must be positive");
    let points = g.numerators();
    let engine = Engine::new(&points, k, metric, options.node_limit);
    let run = || engine.run();
    let raw = if options.jobs == 1 {
        engine.run_sequential()
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if options.jobs > 0 {
            builder = builder.num_threads(options.jobs);
        }
        builder.build().expect("thread pool").install(run)
    };
    let max_size = engine.best.load(Ordering::SeqCst);
    let classes: BTreeSet<Configuration> = raw
        .into_iter()
        .filter(|s| s.len() == max_size)
        .map(|s| {
            let pts = s.iter().map(|&i| g.point_at(&points[i]));
            canonicalize(&Configuration::new(g.dimension, pts).expect("grid points"))
        })
        .collect();
    SearchResult {
        max_size,
        canonical_classes: classes.into_iter().collect(),
        nodes_explored: engine.nodes.load(Ordering::SeqCst),
        grid: *g,
        k,
        metric,
        complete: !engine.aborted.load(Ordering::SeqCst),
    }
}

/// Depth-first extension in grid order. Every candidate carries the mask of
/// distance values it would add, so a branch never holds a point whose
/// insertion pushes the distance count past `k`.
struct Engine {
    n: usize,
    words: usize,
    k: u32,
    /// Row-major `n x n` matrix of distance-value indices.
    dist: Vec<u32>,
    node_limit: u64,
    best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

type Mask = Vec<u64>;

struct Worker<'a> {
    engine: &'a Engine,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
    local_nodes: u64,
}

impl Engine {
    fn new(points: &[Vec<i64>], k: u32, metric: Metric, node_limit: u64) -> Self {
        let n = points.len();
        let mut raw = vec![0i64; n * n];
        let mut values = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                let d = int_distance(&points[i], &points[j], metric);
                raw[i * n + j] = d;
                if d != 0 {
                    values.insert(d);
                }
            }
        }
        let values: Vec<i64> = values.into_iter().collect();
        let dist = raw
            .iter()
            .map(|d| values.binary_search(d).map(|i| i as u32).unwrap_or(u32::MAX))
            .collect();
        Engine {
            n,
            words: values.len().div_ceil(64).max(1),
            k,
            dist,
            node_limit,
            best: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    fn root(&self, first: usize) -> (Mask, Vec<(usize, Mask)>) {
        let set = vec![0u64; self.words];
        let cands = (first + 1..self.n)
            .map(|c| {
                let mut m = vec![0u64; self.words];
                set_bit(&mut m, self.dist[c * self.n + first]);
                (c, m)
            })
            .filter(|(_, m)| popcount(m) <= self.k)
            .collect();
        (set, cands)
    }

    fn run(&self) -> Vec<Vec<usize>> {
        let found = Mutex::new(Vec::new());
        (0..self.n).into_par_iter().for_each(|first| {
            let mut w = Worker::new(self);
            w.start(first);
            found.lock().unwrap().extend(w.found);
        });
        found.into_inner().unwrap()
    }

    fn run_sequential(&self) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        for first in 0..self.n {
            let mut w = Worker::new(self);
            w.start(first);
            all.extend(w.found);
        }
        all
    }
}

impl<'a> Worker<'a> {
    fn new(engine: &'a Engine) -> Self {
        Worker {
            engine,
            chosen: Vec::new(),
            found: Vec::new(),
            local_nodes: 0,
        }
    }

    fn start(&mut self, first: usize) {
        let e = self.engine;
        if e.aborted.load(Ordering::Relaxed) || e.n - first < e.best.load(Ordering::Relaxed) {
            return;
        }
        let (set, cands) = e.root(first);
        self.chosen.push(first);
        self.dfs(&set, &cands);
        self.chosen.pop();
        self.flush_nodes();
    }

    fn flush_nodes(&mut self) {
        let e = self.engine;
        let total = e.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > e.node_limit {
            e.aborted.store(true, Ordering::Relaxed);
        }
    }

    fn record(&mut self) {
        let size = self.chosen.len();
        let prev = self.engine.best.fetch_max(size, Ordering::Relaxed);
        if size >= prev {
            if size > prev {
                self.found.retain(|s| s.len() >= size);
            }
            self.found.push(self.chosen.clone());
        }
    }

    fn dfs(&mut self, set: &Mask, cands: &[(usize, Mask)]) {
        let e = self.engine;
        self.local_nodes += 1;
        if self.local_nodes >= 4096 {
            self.flush_nodes();
        }
        if e.aborted.load(Ordering::Relaxed) {
            return;
        }
        let size = self.chosen.len();
        if size >= e.best.load(Ordering::Relaxed) {
            self.record();
        }
        let n = e.n;
        let mut next_set = vec![0u64; e.words];
        for (idx, (p, pmask)) in cands.iter().enumerate() {
            // keep ties so that every maximum set is reached
            if size + (cands.len() - idx) < e.best.load(Ordering::Relaxed) {
                break;
            }
            for (dst, (a, b)) in next_set.iter_mut().zip(set.iter().zip(pmask)) {
                *dst = a | b;
            }
            let row = &e.dist[p * n..(p + 1) * n];
            let mut next: Vec<(usize, Mask)> = Vec::with_capacity(cands.len() - idx - 1);
            for (c, cmask) in &cands[idx + 1..] {
                let mut m = cmask.clone();
                set_bit(&mut m, row[*c]);
                let total: u32 = next_set
                    .iter()
                    .zip(&m)
                    .map(|(a, b)| (a | b).count_ones())
                    .sum();
                if total <= e.k {
                    next.push((*c, m));
                }
            }
            self.chosen.push(*p);
            self.dfs(&next_set, &next);
            self.chosen.pop();
        }
    }
}

fn set_bit(mask: &mut [u64], bit: u32) {
    mask[(bit / 64) as usize] |= 1u64 << (bit % 64);
}

fn popcount(mask: &[u64]) -> u32 {
    mask.iter().map(|w| w.count_ones()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Counterexample,
    Incomplete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Counterexample => "COUNTEREXAMPLE",
            Verdict::Incomplete => "INCOMPLETE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub d: usize,
    pub k: u32,
    pub lambda_size: usize,
    pub search: SearchResult,
    /// `max_size == |Lambda_d(k)|`.
    pub size_matches: bool,
    /// The class list is exactly the class of `Lambda_d(k)`.
    pub unique_class: bool,
    /// One entry per maximum class.
    pub axis_parallel: Vec<bool>,
    pub verdict: Verdict,
    pub witness: Option<Configuration>,
}

impl ConjectureReport {
    pub fn all_axis_parallel(&self) -> bool {
        self.axis_parallel.iter().all(|&a| a)
    }
}

/// Searches `g` under l1 and compares the maxima with `Lambda_d(k)`: size,
/// uniqueness of the similarity class and axis-parallelism of every maximum.
pub fn verify_conjecture_instance(d: usize, k: u32, g: &GridSpec) -> Result<ConjectureReport> {
    verify_conjecture_instance_with(d, k, g, &SearchOptions::default())
}

pub fn verify_conjecture_instance_with(
    d: usize,
    k: u32,
    g: &GridSpec,
    options: &SearchOptions,
) -> Result<ConjectureReport> {
    if g.dimension != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: g.dimension,
        });
    }
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if !g.holds_radius(k) {
        return Err(Error::GridTooSmall {
            m: g.half_width,
            q: g.denominator,
            k,
        });
    }
    let lambda = generate_lambda(d, k);
    let lambda_canon = canonicalize(&lambda);
    let search = max_k_distance_sets_with(g, k, Metric::L1, options);
    let size_matches = search.max_size == lambda.len();
    let unique_class = search.canonical_classes == [lambda_canon.clone()];
    let axis_parallel: Vec<bool> = search
        .canonical_classes
        .iter()
        .map(|c| is_axis_parallel(c, Metric::L1).expect("maxima have at least two points"))
        .collect();
    let witness = if !search.complete {
        None
    } else if let Some(pos) = axis_parallel.iter().position(|a| !a) {
        Some(search.canonical_classes[pos].clone())
    } else {
        search
            .canonical_classes
            .iter()
            .find(|c| **c != lambda_canon)
            .cloned()
    };
    let verdict = if !search.complete {
        Verdict::Incomplete
    } else if size_matches && unique_class && axis_parallel.iter().all(|&a| a) {
        Verdict::Consistent
    } else {
        Verdict::Counterexample
    };
    Ok(ConjectureReport {
        d,
        k,
        lambda_size: lambda.len(),
        search,
        size_matches,
        unique_class,
        axis_parallel,
        verdict,
        witness,
    })
}
