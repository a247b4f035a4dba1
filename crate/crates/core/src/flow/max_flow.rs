use std::collections::VecDeque;

use super::{Arc, FlowNetwork};

/// Augments the network's current flow to a maximum source-sink flow using
/// breadth-first augmenting paths. Returns the value added; on a network
/// starting at zero flow that is the max-flow value.
pub fn max_flow(net: &mut FlowNetwork) -> f64 {
    let (s, t) = (net.source(), net.sink());
    if s == t {
        return 0.0;
    }
    let mut added = 0.0;
    loop {
        let mut parent: Vec<Option<Arc>> = vec![None; net.num_nodes()];
        let mut seen = vec![false; net.num_nodes()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for arc in net.residual().arcs_from(u) {
                if !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = Some(arc);
                    if arc.to == t {
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return added;
        }
        let mut path = Vec::new();
        let mut v = t;
        while let Some(arc) = parent[v] {
            path.push(arc);
            v = arc.from;
        }
        let bottleneck = path.iter().map(|a| a.capacity).fold(f64::INFINITY, f64::min);
        for arc in &path {
            net.push(arc, bottleneck);
        }
        added += bottleneck;
    }
}
