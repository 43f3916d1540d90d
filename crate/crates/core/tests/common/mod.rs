//! Test-only oracles shared by the integration suites. Nothing here calls the
//! branch-and-bound engine; distances come from exact rational arithmetic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use taxicab::geometry::{distance, Configuration, Metric, Point};
use taxicab::search::{enumerate_grid, GridSpec};
use taxicab::similarity::canonicalize;
use taxicab::Rational;

pub struct OracleResult {
    pub max_size: usize,
    pub classes: Vec<Configuration>,
    pub subsets_checked: u64,
}

fn distance_matrix(points: &[Point], metric: Metric) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| distance(a, b, metric).unwrap()).collect())
        .collect()
}

fn finish(g: &GridSpec, points: &[Point], best: usize, winners: Vec<Vec<usize>>, checked: u64) -> OracleResult {
    let classes: BTreeSet<Configuration> = winners
        .into_iter()
        .map(|s| {
            let c = Configuration::new(g.dimension, s.iter().map(|&i| points[i].clone())).unwrap();
            canonicalize(&c)
        })
        .collect();
    OracleResult {
        max_size: best,
        classes: classes.into_iter().collect(),
        subsets_checked: checked,
    }
}

/// Every one of the `2^n` subsets of the grid, checked one by one.
pub fn naive_all_subsets(g: &GridSpec, k: usize, metric: Metric) -> OracleResult {
    let points = enumerate_grid(g);
    let n = points.len();
    assert!(n <= 20, "naive enumeration over {n} points");
    let dm = distance_matrix(&points, metric);
    let mut best = 0;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut values: Vec<&Rational> = Vec::new();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if !values.contains(&&dm[i][j]) {
                    values.push(&dm[i][j]);
                }
            }
        }
        if values.len() > k {
            continue;
        }
        if members.len() > best {
            best = members.len();
            winners.clear();
        }
        if members.len() == best {
            winners.push(members);
        }
    }
    finish(g, &points, best, winners, 1u64 << n)
}

/// All subsets again, but a branch stops as soon as its distance count
/// exceeds `k` (no cardinality bound, no look-ahead).
pub fn naive_distance_pruned(g: &GridSpec, k: usize, metric: Metric) -> OracleResult {
    let points = enumerate_grid(g);
    let dm = distance_matrix(&points, metric);
    struct State<'a> {
        dm: &'a [Vec<Rational>],
        k: usize,
        chosen: Vec<usize>,
        values: Vec<Rational>,
        best: usize,
        winners: Vec<Vec<usize>>,
        checked: u64,
    }
    fn rec(s: &mut State<'_>, next: usize) {
        s.checked += 1;
        let size = s.chosen.len();
        if size > s.best {
            s.best = size;
            s.winners.clear();
        }
        if size == s.best {
            s.winners.push(s.chosen.clone());
        }
        for p in next..s.dm.len() {
            let before = s.values.len();
            for i in 0..s.chosen.len() {
                let v = &s.dm[s.chosen[i]][p];
                if !s.values.contains(v) {
                    s.values.push(v.clone());
                }
            }
            if s.values.len() <= s.k {
                s.chosen.push(p);
                rec(s, p + 1);
                s.chosen.pop();
            }
            s.values.truncate(before);
        }
    }
    let mut s = State {
        dm: &dm,
        k,
        chosen: Vec::new(),
        values: Vec::new(),
        best: 0,
        winners: Vec::new(),
        checked: 0,
    };
    rec(&mut s, 0);
    let (best, winners, checked) = (s.best, s.winners, s.checked);
    finish(g, &points, best, winners, checked)
}
