//! Strategy profiles and the quantities derived from them: per-resource
//! utilities, thresholds, boundary sets and active edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{on_threshold, CEGame, FLOW_EPS};

/// Tolerances used when classifying a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// An allocation counts as positive (or unsaturated) only beyond this margin.
    pub mass: f64,
    /// Relative-absolute tolerance for `mu == theta`.
    pub utility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            mass: FLOW_EPS,
            utility: FLOW_EPS,
        }
    }
}

/// Fractional allocation `x[player][site]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyProfile {
    pub x: Vec<Vec<f64>>,
}

impl StrategyProfile {
    pub fn zeros(game: &CEGame) -> Self {
        StrategyProfile {
            x: vec![vec![0.0; game.m()]; game.n() + 1],
        }
    }

    pub fn from_rows(x: Vec<Vec<f64>>) -> Self {
        StrategyProfile { x }
    }

    pub fn catcher(&self) -> &[f64] {
        &self.x[0]
    }

    /// Combined evader allocation on `site`.
    pub fn evader_sum(&self, site: usize) -> f64 {
        self.x[1..].iter().map(|row| row[site]).sum()
    }

    pub fn evader_sums(&self) -> Vec<f64> {
        let m = self.x[0].len();
        (0..m).map(|s| self.evader_sum(s)).collect()
    }

    /// What player `i` faces on `site`: the catcher's allocation for an
    /// evader, the evaders' sum for the catcher.
    pub fn opponent(&self, i: usize, site: usize) -> f64 {
        if i == 0 {
            self.evader_sum(site)
        } else {
            self.x[0][site]
        }
    }

    pub fn opponent_row(&self, i: usize) -> Vec<f64> {
        if i == 0 {
            self.evader_sums()
        } else {
            self.x[0].clone()
        }
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.x[i].iter().sum()
    }

    /// Checks shape against the game.
    pub fn check_shape(&self, game: &CEGame) -> Result<()> {
        if self.x.len() != game.n() + 1 || self.x.iter().any(|r| r.len() != game.m()) {
            return Err(Error::InvalidInput(format!(
                "profile shape does not match game ({} players x {} sites)",
                game.n() + 1,
                game.m()
            )));
        }
        Ok(())
    }

    /// Largest bound or row-sum violation.
    pub fn feasibility_violation(&self, game: &CEGame) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.x.iter().enumerate() {
            let p = game.player(i);
            for (s, &v) in row.iter().enumerate() {
                worst = worst.max(-v).max(v - p.limit[s]);
            }
            worst = worst.max((self.row_sum(i) - p.resource).abs());
        }
        worst
    }
}

/// Per-resource utility of player `i` on every site given opponent allocations.
pub fn per_resource_utility(game: &CEGame, i: usize, opponent: &[f64]) -> Vec<f64> {
    let p = game.player(i);
    p.b.iter()
        .zip(&p.d)
        .zip(opponent)
        .map(|((b, d), o)| b + d * o)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileView {
    pub mu: Vec<Vec<f64>>,
    /// `theta[0]` is the max `mu` over unsaturated catcher sites; `theta[i]`
    /// the min `mu` over evader `i`'s support. `None` when the set is empty.
    pub theta: Vec<Option<f64>>,
    /// Boundary sites `B_i`.
    pub boundary: Vec<Vec<usize>>,
    /// Positive boundary sites `B_i^+` (empty for the catcher).
    pub positive_boundary: Vec<Vec<usize>>,
    /// Open catcher boundary sites.
    pub open_boundary: Vec<usize>,
    /// `(evader, site)` pairs with the site on the evader's boundary.
    pub active_edges: Vec<(usize, usize)>,
}

impl ProfileView {
    pub fn theta(&self, i: usize) -> Result<f64> {
        self.theta[i].ok_or(Error::ThresholdUndefined { player: i })
    }

    pub fn is_active(&self, i: usize, site: usize) -> bool {
        self.boundary[i].binary_search(&site).is_ok() && i > 0
    }
}

pub fn profile_view(game: &CEGame, x: &StrategyProfile, tol: Tolerances) -> ProfileView {
    let players = game.n() + 1;
    let mut mu = Vec::with_capacity(players);
    let mut theta = Vec::with_capacity(players);
    let mut boundary = Vec::with_capacity(players);
    let mut positive_boundary = Vec::with_capacity(players);
    let mut open_boundary = Vec::new();
    let mut active_edges = Vec::new();

    for i in 0..players {
        let p = game.player(i);
        let row_mu = per_resource_utility(game, i, &x.opponent_row(i));
        let th = if i == 0 {
            (0..game.m())
                .filter(|&s| x.x[0][s] < p.limit[s] - tol.mass)
                .map(|s| row_mu[s])
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
        } else {
            (0..game.m())
                .filter(|&s| x.x[i][s] > tol.mass)
                .map(|s| row_mu[s])
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))))
        };
        let b: Vec<usize> = match th {
            Some(t) => (0..game.m())
                .filter(|&s| on_threshold(row_mu[s], t, tol.utility))
                .collect(),
            None => Vec::new(),
        };
        if i == 0 {
            open_boundary = b
                .iter()
                .copied()
                .filter(|&s| x.x[0][s] < p.limit[s] - tol.mass)
                .collect();
            positive_boundary.push(Vec::new());
        } else {
            positive_boundary.push(b.iter().copied().filter(|&s| x.x[i][s] > tol.mass).collect());
            active_edges.extend(b.iter().map(|&s| (i, s)));
        }
        mu.push(row_mu);
        theta.push(th);
        boundary.push(b);
    }

    ProfileView {
        mu,
        theta,
        boundary,
        positive_boundary,
        open_boundary,
        active_edges,
    }
}

/// Total utility of player `i`, including the constant and alternating terms.
pub fn player_utility(game: &CEGame, x: &StrategyProfile, i: usize) -> f64 {
    let p = game.player(i);
    let opp = x.opponent_row(i);
    (0..game.m())
        .map(|s| (p.b[s] + p.d[s] * opp[s]) * x.x[i][s] + p.a[s] * opp[s] + p.c[s])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::PlayerParams;

    fn one_evader_game() -> CEGame {
        let c = PlayerParams::new("c", 1.0, 1.0, 2).with_d(&[1.0, 1.0]);
        let e = PlayerParams::new("e", 1.0, 1.0, 2)
            .with_b(&[6.0, 4.0])
            .with_d(&[-10.0, -10.0]);
        CEGame::with_default_sites(2, c, vec![e]).unwrap()
    }

    #[test]
    fn evader_view_at_mixed_coverage() {
        let g = one_evader_game();
        let x = StrategyProfile::from_rows(vec![vec![0.6, 0.4], vec![0.5, 0.5]]);
        let v = profile_view(&g, &x, Tolerances::default());
        assert!(v.mu[1][0].abs() < 1e-12 && v.mu[1][1].abs() < 1e-12);
        assert!(v.theta[1].unwrap().abs() < 1e-12);
        assert_eq!(v.boundary[1], vec![0, 1]);
        assert_eq!(v.active_edges, vec![(1, 0), (1, 1)]);
    }

    #[test]
    fn zero_coverage_leaves_base_utility() {
        let g = one_evader_game();
        let x = StrategyProfile::from_rows(vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        let v = profile_view(&g, &x, Tolerances::default());
        assert_eq!(v.mu[1], vec![6.0, 4.0]);
        assert_eq!(v.theta[1], Some(6.0));
        assert_eq!(v.boundary[1], vec![0]);
    }

    #[test]
    fn catcher_view() {
        let g = one_evader_game();
        let x = StrategyProfile::from_rows(vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        let v = profile_view(&g, &x, Tolerances::default());
        assert_eq!(v.mu[0], vec![0.5, 0.5]);
        assert_eq!(v.open_boundary, vec![0, 1]);
    }

    #[test]
    fn saturated_catcher_has_no_threshold() {
        let g = one_evader_game();
        let x = StrategyProfile::from_rows(vec![vec![1.0, 1.0], vec![1.0, 0.0]]);
        let v = profile_view(&g, &x, Tolerances::default());
        assert!(matches!(v.theta(0), Err(Error::ThresholdUndefined { player: 0 })));
    }

    #[test]
    fn zero_allocation_utility_is_the_constant_term() {
        let mut g = one_evader_game();
        g.players[1].c = vec![1.5, -0.25];
        g.players[1].a = vec![3.0, 3.0];
        let x = StrategyProfile::zeros(&g);
        assert_eq!(player_utility(&g, &x, 1), 1.25);
    }
}
