//! Catcher Stackelberg strategies against a single evader whose limits never
//! bind (`l_1 >= r_1` on every site).
//!
//! Such an evader puts all its resource on one site `s*`. For a fixed `s*`
//! and `t = x_0[s*]`, the best-response constraints become lower bounds on
//! the other catcher coordinates that grow with `t`, so the feasible `t`
//! form an interval. The catcher's value as a function of `t` is the value
//! of a parametric LP, hence concave, and is maximized by ternary search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{ensure_valid, CEGame};
use crate::response::greedy_fill;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StackelbergSolution {
    pub coverage: Vec<f64>,
    pub attacked_site: usize,
    pub catcher_utility: f64,
    pub evader_utility: f64,
}

const SEARCH_ROUNDS: usize = 200;
const TIE_EPS: f64 = 1e-12;

struct Candidate<'a> {
    game: &'a CEGame,
    target: usize,
}

impl Candidate<'_> {
    /// Least coverage each site needs so that `target` stays a best response
    /// when it has coverage `t`.
    fn lower_bounds(&self, t: f64) -> Vec<f64> {
        let e = self.game.player(1);
        let s = self.target;
        (0..self.game.m())
            .map(|q| {
                if q == s {
                    0.0
                } else {
                    ((e.b[q] - e.b[s] - e.d[s] * t) / -e.d[q]).max(0.0)
                }
            })
            .collect()
    }

    /// Feasible range of `t`, if any.
    fn interval(&self) -> Option<(f64, f64)> {
        let c = self.game.catcher();
        let e = self.game.player(1);
        let s = self.target;
        let others: f64 = (0..self.game.m()).filter(|&q| q != s).map(|q| c.limit[q]).sum();
        let lo = (c.resource - others).max(0.0);
        let mut hi = c.limit[s].min(c.resource);
        for q in (0..self.game.m()).filter(|&q| q != s) {
            hi = hi.min((e.b[s] - e.b[q] - e.d[q] * c.limit[q]) / -e.d[s]);
        }
        if hi < lo {
            return None;
        }
        // t plus the forced coverage elsewhere is increasing in t.
        let need = |t: f64| t + self.lower_bounds(t).iter().sum::<f64>();
        if need(lo) > c.resource + TIE_EPS * c.resource.max(1.0) {
            return None;
        }
        if need(hi) > c.resource {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..SEARCH_ROUNDS {
                let mid = 0.5 * (a + b);
                if need(mid) <= c.resource {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            hi = a;
        }
        Some((lo, hi))
    }

    /// Best catcher coverage with `x_0[target] = t`.
    fn coverage(&self, t: f64) -> Vec<f64> {
        let c = self.game.catcher();
        let s = self.target;
        let lower = self.lower_bounds(t);
        let left = (c.resource - t - lower.iter().sum::<f64>()).max(0.0);
        let mut value = c.b.clone();
        value[s] = f64::NEG_INFINITY;
        let mut room: Vec<f64> = c.limit.iter().zip(&lower).map(|(l, lb)| (l - lb).max(0.0)).collect();
        room[s] = 0.0;
        let extra = greedy_fill(&value, &room, left);
        let mut x: Vec<f64> = lower.iter().zip(&extra).map(|(a, b)| a + b).collect();
        x[s] = t;
        x
    }

    fn catcher_value(&self, x: &[f64]) -> f64 {
        catcher_utility(self.game, x, self.target)
    }

    fn solve(&self) -> Option<Vec<f64>> {
        let (lo, hi) = self.interval()?;
        let f = |t: f64| self.catcher_value(&self.coverage(t));
        let (mut a, mut b) = (lo, hi);
        for _ in 0..SEARCH_ROUNDS {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if f(m1) < f(m2) {
                a = m1;
            } else {
                b = m2;
            }
        }
        let best = [lo, hi, 0.5 * (a + b)]
            .into_iter()
            .map(|t| (f(t), t))
            .fold((f64::NEG_INFINITY, lo), |acc, v| if v.0 > acc.0 { v } else { acc });
        Some(self.coverage(best.1))
    }
}

/// Catcher utility when the evader puts its whole resource on `target`.
pub fn catcher_utility(game: &CEGame, coverage: &[f64], target: usize) -> f64 {
    let c = game.catcher();
    let r1 = game.player(1).resource;
    let mut u: f64 = c.c.iter().sum();
    for (s, &x) in coverage.iter().enumerate() {
        let load = if s == target { r1 } else { 0.0 };
        u += (c.b[s] + c.d[s] * load) * x + c.a[s] * load;
    }
    u
}

/// Evader utility for putting its whole resource on `target`.
pub fn evader_utility(game: &CEGame, coverage: &[f64], target: usize) -> f64 {
    let e = game.player(1);
    let mut u: f64 = e.c.iter().sum();
    for (s, &x) in coverage.iter().enumerate() {
        if s == target {
            u += (e.b[s] + e.d[s] * x) * e.resource;
        }
        u += e.a[s] * x;
    }
    u
}

/// Optimal catcher commitment. Only single-evader games with non-binding
/// evader limits are supported; the general problem is strongly NP-hard.
pub fn solve_stackelberg(game: &CEGame) -> Result<StackelbergSolution> {
    ensure_valid(game)?;
    if game.n() != 1 {
        return Err(Error::Unsupported(format!(
            "Stackelberg commitment needs exactly one evader (got {}); the multi-evader problem is strongly NP-hard",
            game.n()
        )));
    }
    let e = game.player(1);
    if let Some(s) = (0..game.m()).find(|&s| e.limit[s] < e.resource) {
        return Err(Error::Unsupported(format!(
            "evader limit on site {s} is below its resource; the problem is strongly NP-hard once limits bind"
        )));
    }

    let mut best: Option<StackelbergSolution> = None;
    for target in 0..game.m() {
        let cand = Candidate { game, target };
        let Some(mut coverage) = cand.solve() else { continue };
        renormalize(&mut coverage, &game.catcher().limit, game.catcher().resource, target);
        let u = cand.catcher_value(&coverage);
        if best.as_ref().is_none_or(|b| u > b.catcher_utility + TIE_EPS) {
            best = Some(StackelbergSolution {
                evader_utility: evader_utility(game, &coverage, target),
                coverage,
                attacked_site: target,
                catcher_utility: u,
            });
        }
    }
    best.ok_or_else(|| Error::Internal("no attacked site admits a feasible commitment".into()))
}

/// Puts any rounding gap between the coverage total and `r0` on the
/// non-target sites with room, in index order.
fn renormalize(x: &mut [f64], limit: &[f64], r0: f64, target: usize) {
    let mut gap = r0 - x.iter().sum::<f64>();
    for s in (0..x.len()).filter(|&s| s != target) {
        if gap == 0.0 {
            break;
        }
        let step = if gap > 0.0 { gap.min(limit[s] - x[s]) } else { gap.max(-x[s]) };
        x[s] += step;
        gap -= step;
    }
}
