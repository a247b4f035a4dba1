use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Annotations, CEGame, PlayerParams};
use crate::nash::NashSolution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingVertex {
    pub id: String,
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingEdge {
    pub from: String,
    pub to: String,
    pub capacity: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingSpec {
    pub left: Vec<MatchingVertex>,
    pub right: Vec<MatchingVertex>,
    pub edges: Vec<MatchingEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingFlow {
    /// `flow[u][v]` over left vertices `u` and right vertices `v`.
    pub flow: Vec<Vec<f64>>,
    pub cost: f64,
}

/// Left vertices become evaders and right vertices sites. A unit catcher
/// with `d = 1 / capacity` prices each right vertex; evader deltas are
/// `-exp(cost)`. Missing edges get a zero limit. The original costs are
/// kept in the game's annotations.
pub fn matching_to_ce(spec: &MatchingSpec) -> Result<CEGame> {
    let (nu, nv) = (spec.left.len(), spec.right.len());
    let left: f64 = spec.left.iter().map(|u| u.capacity).sum();
    let right: f64 = spec.right.iter().map(|v| v.capacity).sum();
    if (left - right).abs() > 1e-9 * left.max(right).max(1.0) {
        return Err(Error::InvalidInput(format!(
            "capacities are unbalanced: left {left}, right {right}"
        )));
    }
    if let Some(v) = spec.right.iter().find(|v| v.capacity <= 0.0) {
        return Err(Error::InvalidInput(format!("right vertex '{}' has no capacity", v.id)));
    }
    let find = |side: &[MatchingVertex], id: &str| {
        side.iter()
            .position(|x| x.id == id)
            .ok_or_else(|| Error::InvalidInput(format!("edge endpoint '{id}' is not a vertex")))
    };

    let mut catcher = PlayerParams::new("prices", 1.0, 1.0, nv);
    for (k, v) in spec.right.iter().enumerate() {
        catcher.d[k] = 1.0 / v.capacity;
    }
    let mut evaders: Vec<PlayerParams> = spec
        .left
        .iter()
        .map(|u| PlayerParams::new(u.id.clone(), u.capacity, 0.0, nv).with_d(&vec![-1.0; nv]))
        .collect();
    let mut costs = vec![vec![0.0; nv]; nu];
    for e in &spec.edges {
        let (u, v) = (find(&spec.left, &e.from)?, find(&spec.right, &e.to)?);
        if evaders[u].limit[v] > 0.0 {
            return Err(Error::InvalidInput(format!("duplicate edge {} -> {}", e.from, e.to)));
        }
        evaders[u].limit[v] = e.capacity;
        evaders[u].d[v] = -e.cost.exp();
        costs[u][v] = e.cost;
    }
    let mut game = CEGame::new(spec.right.iter().map(|v| v.id.clone()).collect(), catcher, evaders)?;
    game.annotations = Some(Annotations {
        matching_costs: Some(costs),
    });
    Ok(game)
}

/// Reads the evader allocations of an equilibrium as a matching and prices
/// it with the stored original costs.
pub fn extract_matching(game: &CEGame, sol: &NashSolution) -> Result<MatchingFlow> {
    let costs = game
        .annotations
        .as_ref()
        .and_then(|a| a.matching_costs.as_ref())
        .ok_or_else(|| Error::InvalidInput("game carries no matching costs".into()))?;
    let flow: Vec<Vec<f64>> = sol.profile.x[1..].to_vec();
    let cost = flow
        .iter()
        .zip(costs)
        .flat_map(|(f, w)| f.iter().zip(w).map(|(a, b)| a * b))
        .sum();
    Ok(MatchingFlow { flow, cost })
}
