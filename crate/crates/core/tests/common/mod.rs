//! Independent Stackelberg oracles shared by integration tests.
#![allow(dead_code)]

use cegame_core::game::CEGame;
use cegame_core::stackelberg::catcher_utility;

fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in 0..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn next_combination(idx: &mut [usize], k: usize) -> bool {
    let r = idx.len();
    for i in (0..r).rev() {
        if idx[i] < k - (r - i) {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact optimum of the per-target LPs by enumerating every basic solution:
/// the coverage equality plus `m - 1` tight inequalities among the bounds
/// and the evader's best-response constraints.
pub fn stackelberg_lp(g: &CEGame) -> f64 {
    let m = g.m();
    let (c, e) = (g.catcher(), g.player(1));
    let mut best = f64::NEG_INFINITY;
    for t in 0..m {
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
        for s in 0..m {
            let mut lo = vec![0.0; m];
            lo[s] = -1.0;
            rows.push((lo, 0.0));
            let mut hi = vec![0.0; m];
            hi[s] = 1.0;
            rows.push((hi, c.limit[s]));
        }
        for q in (0..m).filter(|&q| q != t) {
            let mut v = vec![0.0; m];
            v[q] = e.d[q];
            v[t] = -e.d[t];
            rows.push((v, e.b[t] - e.b[q]));
        }
        let mut idx: Vec<usize> = (0..m - 1).collect();
        loop {
            let mut a = vec![vec![1.0; m]];
            let mut b = vec![c.resource];
            for &i in &idx {
                a.push(rows[i].0.clone());
                b.push(rows[i].1);
            }
            if let Some(x) = solve_linear(a, b) {
                let feasible = rows
                    .iter()
                    .all(|(v, r)| v.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= r + 1e-9);
                if feasible {
                    best = best.max(catcher_utility(g, &x, t));
                }
            }
            if !next_combination(&mut idx, rows.len()) {
                break;
            }
        }
    }
    best
}

/// Evader reply to `x`: highest per-resource utility, ties to the catcher's
/// advantage, then lowest index.
pub fn follower(g: &CEGame, x: &[f64]) -> usize {
    let e = g.player(1);
    let mu: Vec<f64> = (0..g.m()).map(|s| e.b[s] + e.d[s] * x[s]).collect();
    let top = mu.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut best: Option<(f64, usize)> = None;
    for s in 0..g.m() {
        if mu[s] >= top - 1e-12 {
            let u = catcher_utility(g, x, s);
            if best.is_none_or(|(bu, _)| u > bu) {
                best = Some((u, s));
            }
        }
    }
    best.unwrap().1
}

/// Catcher value maximized over coverages whose entries are multiples of
/// `1/steps`.
pub fn stackelberg_grid(g: &CEGame, steps: usize) -> f64 {
    struct Walk<'a> {
        g: &'a CEGame,
        units: Vec<usize>,
        total: usize,
        h: f64,
        k: Vec<usize>,
        x: Vec<f64>,
        best: f64,
    }
    impl Walk<'_> {
        fn rec(&mut self, depth: usize, used: usize) {
            let m = self.units.len();
            if depth == m - 1 {
                if self.total < used || self.total - used > self.units[m - 1] {
                    return;
                }
                self.k[m - 1] = self.total - used;
                for s in 0..m {
                    self.x[s] = self.k[s] as f64 * self.h;
                }
                let u = catcher_utility(self.g, &self.x, follower(self.g, &self.x));
                self.best = self.best.max(u);
                return;
            }
            let rest: usize = self.units[depth + 1..].iter().sum();
            let lo = self.total.saturating_sub(used + rest);
            let hi = self.units[depth].min(self.total.saturating_sub(used));
            for v in lo..=hi {
                self.k[depth] = v;
                self.rec(depth + 1, used + v);
            }
        }
    }
    let c = g.catcher();
    let mut walk = Walk {
        g,
        units: c.limit.iter().map(|l| (l * steps as f64).round() as usize).collect(),
        total: (c.resource * steps as f64).round() as usize,
        h: 1.0 / steps as f64,
        k: vec![0; g.m()],
        x: vec![0.0; g.m()],
        best: f64::NEG_INFINITY,
    };
    walk.rec(0, 0);
    walk.best
}
