use std::sync::OnceLock;

use super::{find_negative_cycle, max_flow, shortest_path_tree, FlowNetwork};
use crate::error::{Error, Result};
use crate::game::FLOW_EPS;
use crate::registry::{Named, Registry};

const MAX_ROUNDS: usize = 1_000_000;

/// Computes a minimum-cost flow among those saturating every edge out of
/// the source. The network's current flow is the starting point.
pub trait MinCostFlowSolver: Named + Send + Sync {
    fn solve(&self, net: &mut FlowNetwork) -> Result<()>;
}

fn ensure_saturated(net: &FlowNetwork) -> Result<()> {
    let demand = net.source_capacity();
    let value = net.flow_value();
    if value < demand - FLOW_EPS * demand.max(1.0) {
        return Err(Error::Infeasible(format!(
            "source edges cannot be saturated (flow {value} of {demand})"
        )));
    }
    Ok(())
}

/// Cancels residual cycles of negative cost until none remain.
pub fn cancel_negative_cycles(net: &mut FlowNetwork) -> Result<usize> {
    for rounds in 0..MAX_ROUNDS {
        let Some(cycle) = find_negative_cycle(&net.residual()) else {
            return Ok(rounds);
        };
        let amount = cycle.iter().map(|a| a.capacity).fold(f64::INFINITY, f64::min);
        for arc in &cycle {
            net.push(arc, amount);
        }
    }
    Err(Error::Internal("cycle canceling did not converge".into()))
}

/// Augments along cheapest residual paths until the source is saturated.
pub struct SuccessiveShortestPaths;

impl Named for SuccessiveShortestPaths {
    fn name(&self) -> &'static str {
        "ssp"
    }

    fn description(&self) -> &'static str {
        "successive shortest paths with label-correcting path search"
    }
}

impl MinCostFlowSolver for SuccessiveShortestPaths {
    fn solve(&self, net: &mut FlowNetwork) -> Result<()> {
        // Shortest-path augmentation only preserves optimality from an
        // optimal start.
        cancel_negative_cycles(net)?;
        let (s, t) = (net.source(), net.sink());
        let demand = net.source_capacity();
        for _ in 0..MAX_ROUNDS {
            let left = demand - net.flow_value();
            if left <= net.tolerance() {
                break;
            }
            let (dist, parent) = shortest_path_tree(&net.residual(), s)?;
            if dist[t].is_infinite() {
                break;
            }
            let mut path = Vec::new();
            let mut v = t;
            while let Some(arc) = parent[v] {
                path.push(arc);
                v = arc.from;
            }
            let amount = path.iter().map(|a| a.capacity).fold(left, f64::min);
            for arc in &path {
                net.push(arc, amount);
            }
        }
        ensure_saturated(net)
    }
}

/// Finds any saturating flow, then cancels negative cycles.
pub struct CycleCanceling;

impl Named for CycleCanceling {
    fn name(&self) -> &'static str {
        "cycle-canceling"
    }

    fn description(&self) -> &'static str {
        "max flow followed by negative-cycle canceling"
    }
}

impl MinCostFlowSolver for CycleCanceling {
    fn solve(&self, net: &mut FlowNetwork) -> Result<()> {
        max_flow(net);
        ensure_saturated(net)?;
        cancel_negative_cycles(net)?;
        Ok(())
    }
}

pub fn builtin_min_cost_flow() -> &'static Registry<dyn MinCostFlowSolver> {
    static REG: OnceLock<Registry<dyn MinCostFlowSolver>> = OnceLock::new();
    REG.get_or_init(|| {
        let ssp: Box<dyn MinCostFlowSolver> = Box::new(SuccessiveShortestPaths);
        let cc: Box<dyn MinCostFlowSolver> = Box::new(CycleCanceling);
        Registry::new("min-cost flow algorithm").with(ssp).with(cc)
    })
}

/// Min-cost flow with the default algorithm.
pub fn min_cost_flow(net: &mut FlowNetwork) -> Result<()> {
    SuccessiveShortestPaths.solve(net)
}
