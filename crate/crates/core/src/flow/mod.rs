//! Network flow on fractional capacities: max flow, min-cost flow, residual
//! shortest paths and negative-cycle detection.
//!
//! Flows live on the edges of a [`FlowNetwork`]; a [`ResidualGraph`] is a
//! borrowed view over it and is never materialized.

mod max_flow;
mod min_cost;
mod paths;

pub use max_flow::max_flow;
pub use min_cost::{
    builtin_min_cost_flow, cancel_negative_cycles, min_cost_flow, CycleCanceling, MinCostFlowSolver,
    SuccessiveShortestPaths,
};
pub use paths::{cycle_cost, find_negative_cycle, shortest_paths, shortest_path_tree};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Residual capacities at or below this are treated as absent.
pub const RESIDUAL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: f64,
    pub cost: f64,
    pub flow: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    edges: Vec<FlowEdge>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
    source: NodeId,
    sink: NodeId,
    tol: f64,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: NodeId, sink: NodeId) -> Self {
        assert!(source < num_nodes && sink < num_nodes, "source/sink out of range");
        FlowNetwork {
            edges: Vec::new(),
            out: vec![Vec::new(); num_nodes],
            inc: vec![Vec::new(); num_nodes],
            source,
            sink,
            tol: RESIDUAL_EPS,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn add_node(&mut self) -> NodeId {
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        self.out.len() - 1
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId, capacity: f64, cost: f64) -> EdgeId {
        debug_assert!(capacity >= 0.0, "negative capacity");
        let id = self.edges.len();
        self.edges.push(FlowEdge {
            from,
            to,
            capacity,
            cost,
            flow: 0.0,
        });
        self.out[from].push(id);
        self.inc[to].push(id);
        id
    }

    pub fn num_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &FlowEdge {
        &self.edges[e]
    }

    pub fn set_flow(&mut self, e: EdgeId, flow: f64) {
        self.edges[e].flow = flow;
    }

    pub fn set_capacity(&mut self, e: EdgeId, capacity: f64) {
        self.edges[e].capacity = capacity;
    }

    pub fn reset_flow(&mut self) {
        for e in &mut self.edges {
            e.flow = 0.0;
        }
    }

    pub fn out_edges(&self, u: NodeId) -> &[EdgeId] {
        &self.out[u]
    }

    pub fn in_edges(&self, u: NodeId) -> &[EdgeId] {
        &self.inc[u]
    }

    /// Net flow leaving the source.
    pub fn flow_value(&self) -> f64 {
        self.net_outflow(self.source)
    }

    pub fn net_outflow(&self, u: NodeId) -> f64 {
        let out: f64 = self.out[u].iter().map(|&e| self.edges[e].flow).sum();
        let inc: f64 = self.inc[u].iter().map(|&e| self.edges[e].flow).sum();
        out - inc
    }

    /// Sum of capacities on edges leaving the source.
    pub fn source_capacity(&self) -> f64 {
        self.out[self.source].iter().map(|&e| self.edges[e].capacity).sum()
    }

    pub fn total_cost(&self) -> f64 {
        self.edges.iter().map(|e| e.flow * e.cost).sum()
    }

    /// Largest conservation imbalance at a node other than source and sink.
    pub fn conservation_violation(&self) -> f64 {
        (0..self.num_nodes())
            .filter(|&u| u != self.source && u != self.sink)
            .map(|u| self.net_outflow(u).abs())
            .fold(0.0, f64::max)
    }

    /// Largest amount by which a flow leaves `[0, capacity]`.
    pub fn capacity_violation(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| (-e.flow).max(e.flow - e.capacity))
            .fold(0.0, f64::max)
    }

    pub fn residual(&self) -> ResidualGraph<'_> {
        ResidualGraph { net: self }
    }

    /// Pushes `amount` along a residual arc.
    pub fn push(&mut self, arc: &Arc, amount: f64) {
        let e = &mut self.edges[arc.edge];
        if arc.forward {
            e.flow += amount;
        } else {
            e.flow -= amount;
        }
    }
}

/// A residual arc: forward arcs have capacity `capacity - flow` and the
/// edge's cost, backward arcs capacity `flow` and the negated cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub edge: EdgeId,
    pub forward: bool,
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ResidualGraph<'a> {
    net: &'a FlowNetwork,
}

impl<'a> ResidualGraph<'a> {
    pub fn network(&self) -> &'a FlowNetwork {
        self.net
    }

    pub fn num_nodes(&self) -> usize {
        self.net.num_nodes()
    }

    pub fn arcs_from(&self, u: NodeId) -> impl Iterator<Item = Arc> + 'a {
        let net = self.net;
        let tol = net.tol;
        let fwd = net.out[u].iter().filter_map(move |&e| {
            let edge = &net.edges[e];
            let cap = edge.capacity - edge.flow;
            (cap > tol).then_some(Arc {
                edge: e,
                forward: true,
                from: u,
                to: edge.to,
                capacity: cap,
                cost: edge.cost,
            })
        });
        let bwd = net.inc[u].iter().filter_map(move |&e| {
            let edge = &net.edges[e];
            (edge.flow > tol).then_some(Arc {
                edge: e,
                forward: false,
                from: u,
                to: edge.from,
                capacity: edge.flow,
                cost: -edge.cost,
            })
        });
        fwd.chain(bwd)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + 'a {
        let this = *self;
        (0..self.num_nodes()).flat_map(move |u| this.arcs_from(u))
    }
}
