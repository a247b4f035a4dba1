use std::collections::VecDeque;

use super::{Arc, NodeId, ResidualGraph};
use crate::error::{Error, Result};

/// A relaxation must improve a label by more than this to count.
const RELAX_EPS: f64 = 1e-12;

/// Label-correcting single-source shortest paths over residual arcs.
/// Returns distances (`+inf` when unreachable) and the arc used to reach
/// each node.
pub fn shortest_path_tree(res: &ResidualGraph<'_>, source: NodeId) -> Result<(Vec<f64>, Vec<Option<Arc>>)> {
    let n = res.num_nodes();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<Arc>> = vec![None; n];
    let mut in_queue = vec![false; n];
    let mut relaxed = vec![0usize; n];
    dist[source] = 0.0;
    let mut queue = VecDeque::from([source]);
    in_queue[source] = true;
    while let Some(u) = queue.pop_front() {
        in_queue[u] = false;
        for arc in res.arcs_from(u) {
            let cand = dist[u] + arc.cost;
            if cand < dist[arc.to] - RELAX_EPS {
                dist[arc.to] = cand;
                parent[arc.to] = Some(arc);
                relaxed[arc.to] += 1;
                if relaxed[arc.to] > n {
                    return Err(Error::NegativeCycle(source));
                }
                if !in_queue[arc.to] {
                    in_queue[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
    }
    Ok((dist, parent))
}

/// Shortest residual distances from `source`; `+inf` for unreachable nodes.
/// Costs may be negative; a reachable negative cycle is an error.
pub fn shortest_paths(res: &ResidualGraph<'_>, source: NodeId) -> Result<Vec<f64>> {
    shortest_path_tree(res, source).map(|(d, _)| d)
}

pub fn cycle_cost(cycle: &[Arc]) -> f64 {
    cycle.iter().map(|a| a.cost).sum()
}

/// Some residual cycle of negative total cost, if one exists.
pub fn find_negative_cycle(res: &ResidualGraph<'_>) -> Option<Vec<Arc>> {
    let n = res.num_nodes();
    if n == 0 {
        return None;
    }
    // Every node starts at distance 0, as if joined to a virtual root.
    let mut dist = vec![0.0f64; n];
    let mut parent: Vec<Option<Arc>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for arc in res.arcs() {
            let cand = dist[arc.from] + arc.cost;
            if cand < dist[arc.to] - RELAX_EPS {
                dist[arc.to] = cand;
                parent[arc.to] = Some(arc);
                last = Some(arc.to);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = parent[v]?.from;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let arc = parent[v]?;
        cycle.push(arc);
        v = arc.from;
        if v == start {
            break;
        }
        if cycle.len() > n {
            return None;
        }
    }
    cycle.reverse();
    (cycle_cost(&cycle) < 0.0).then_some(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::FlowNetwork;

    #[test]
    fn single_node() {
        let net = FlowNetwork::new(1, 0, 0);
        assert_eq!(shortest_paths(&net.residual(), 0).unwrap(), vec![0.0]);
    }

    #[test]
    fn additive_path_with_negative_cost() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_edge(0, 1, 1.0, -1.0);
        net.add_edge(1, 2, 1.0, 2.0);
        assert_eq!(shortest_paths(&net.residual(), 0).unwrap(), vec![0.0, -1.0, 1.0]);
    }

    #[test]
    fn unreachable_is_infinite() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_edge(0, 1, 1.0, 1.0);
        let d = shortest_paths(&net.residual(), 0).unwrap();
        assert!(d[2].is_infinite());
    }

    #[test]
    fn acyclic_graph_has_no_negative_cycle() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_edge(0, 1, 1.0, -5.0);
        net.add_edge(1, 2, 1.0, -5.0);
        assert!(find_negative_cycle(&net.residual()).is_none());
    }

    #[test]
    fn two_cycle_is_found() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_edge(0, 1, 1.0, 1.0);
        net.add_edge(1, 0, 1.0, -2.0);
        let cycle = find_negative_cycle(&net.residual()).unwrap();
        assert_eq!(cycle.len(), 2);
        assert_eq!(cycle_cost(&cycle), -1.0);
        assert!(matches!(shortest_paths(&net.residual(), 0), Err(Error::NegativeCycle(0))));
    }

    #[test]
    fn backward_arcs_carry_negated_cost() {
        let mut net = FlowNetwork::new(2, 0, 1);
        let e = net.add_edge(0, 1, 1.0, 3.0);
        net.set_flow(e, 1.0);
        let d = shortest_paths(&net.residual(), 1).unwrap();
        assert_eq!(d, vec![-3.0, 0.0]);
    }
}
