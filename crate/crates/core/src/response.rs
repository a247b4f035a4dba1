//! Best responses and equilibrium verification.
//!
//! With the opponent fixed, a player's utility is linear in its own
//! allocation, so the best response is a fractional knapsack: fill sites in
//! decreasing order of per-resource utility up to their limits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::CEGame;
use crate::profile::{per_resource_utility, player_utility, StrategyProfile};

/// Exact best response of player `i` against the given opponent marginals.
/// Ties go to the lowest site index.
pub fn best_response(game: &CEGame, opponent: &[f64], i: usize) -> Result<Vec<f64>> {
    let p = game.player(i);
    if opponent.len() != game.m() {
        return Err(Error::InvalidInput(format!(
            "opponent marginals have {} entries, expected {}",
            opponent.len(),
            game.m()
        )));
    }
    let capacity = p.total_limit();
    if p.resource > capacity + 1e-9 * capacity.max(1.0) {
        return Err(Error::Infeasible(format!(
            "player {i} needs {} but limits sum to {capacity}",
            p.resource
        )));
    }
    let mu = per_resource_utility(game, i, opponent);
    Ok(greedy_fill(&mu, &p.limit, p.resource))
}

/// Fills `order`-sorted sites (by `value` descending, index ascending) up to
/// their caps until `amount` is used.
pub(crate) fn greedy_fill(value: &[f64], cap: &[f64], amount: f64) -> Vec<f64> {
    let mut order: Vec<usize> = (0..value.len()).collect();
    order.sort_by(|&a, &b| value[b].total_cmp(&value[a]).then(a.cmp(&b)));
    let mut out = vec![0.0; value.len()];
    let mut left = amount;
    for s in order {
        if left <= 0.0 {
            break;
        }
        let put = cap[s].min(left);
        out[s] = put;
        left -= put;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    /// `u_i(best response) - u_i(x)` per player.
    pub utility_gap: Vec<f64>,
    /// Mass by which each player's allocation departs from the nearest
    /// threshold structure (full above, empty below).
    pub threshold_violation: Vec<f64>,
    /// Max of the two above, per player.
    pub per_player_violation: Vec<f64>,
    pub feasibility_violation: f64,
    pub worst_violation: f64,
    pub is_equilibrium: bool,
}

/// Smallest mass violation over all candidate thresholds.
fn threshold_violation(mu: &[f64], alloc: &[f64], limit: &[f64], eps: f64) -> f64 {
    if mu.is_empty() {
        return 0.0;
    }
    mu.iter()
        .map(|&t| {
            let tol = eps * t.abs().max(1.0);
            mu.iter()
                .zip(alloc)
                .zip(limit)
                .map(|((&u, &x), &l)| {
                    if u > t + tol {
                        (l - x).max(0.0)
                    } else if u < t - tol {
                        x.max(0.0)
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Checks every player against its exact best response.
pub fn verify_equilibrium(game: &CEGame, x: &StrategyProfile, eps: f64) -> Result<EquilibriumReport> {
    x.check_shape(game)?;
    let players = game.n() + 1;
    let mut utility_gap = Vec::with_capacity(players);
    let mut thresh = Vec::with_capacity(players);
    for i in 0..players {
        let p = game.player(i);
        let opp = x.opponent_row(i);
        let br = best_response(game, &opp, i)?;
        let mut y = x.clone();
        y.x[i] = br;
        let gap = player_utility(game, &y, i) - player_utility(game, x, i);
        utility_gap.push(gap.max(0.0));
        let mu = per_resource_utility(game, i, &opp);
        thresh.push(threshold_violation(&mu, &x.x[i], &p.limit, eps));
    }
    let per_player_violation: Vec<f64> = utility_gap.iter().zip(&thresh).map(|(a, b)| a.max(*b)).collect();
    let feasibility_violation = x.feasibility_violation(game);
    let worst_violation = per_player_violation
        .iter()
        .copied()
        .fold(feasibility_violation, f64::max);
    Ok(EquilibriumReport {
        utility_gap,
        threshold_violation: thresh,
        per_player_violation,
        feasibility_violation,
        worst_violation,
        is_equilibrium: worst_violation <= eps,
    })
}
