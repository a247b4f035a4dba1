use crate::flow::{EdgeId, FlowNetwork, NodeId};
use crate::game::CEGame;
use crate::profile::{ProfileView, StrategyProfile};

const SNAPPED_RESIDUAL_EPS: f64 = 1e-14;

/// Bipartite evader/site network over the active edges, plus a source and a
/// sink with no edges attached yet. Edge costs are `ln(-d)`.
#[derive(Debug, Clone)]
pub(crate) struct ActiveGraph {
    pub net: FlowNetwork,
    /// `(evader, site, edge)` for every active edge.
    pub edges: Vec<(usize, usize, EdgeId)>,
    n: usize,
}

impl ActiveGraph {
    /// Flows start at zero and arcs below `mass` are ignored.
    pub fn empty(game: &CEGame, view: &ProfileView, mass: f64) -> Self {
        Self::build(game, None, view, mass, mass)
    }

    /// Each active edge carries the profile's allocation, snapped to 0 or
    /// the limit when within `mass` of it, so arc existence follows the
    /// mass tolerance while small augmentations stay representable.
    pub fn loaded(game: &CEGame, x: &StrategyProfile, view: &ProfileView, mass: f64) -> Self {
        Self::build(game, Some(x), view, mass, SNAPPED_RESIDUAL_EPS)
    }

    fn build(game: &CEGame, x: Option<&StrategyProfile>, view: &ProfileView, mass: f64, tol: f64) -> Self {
        let (n, m) = (game.n(), game.m());
        let mut net = FlowNetwork::new(n + m + 2, n + m, n + m + 1).with_tolerance(tol);
        let mut edges = Vec::with_capacity(view.active_edges.len());
        for &(i, s) in &view.active_edges {
            let p = game.player(i);
            let e = net.add_edge(i - 1, n + s, p.limit[s], (-p.d[s]).ln());
            if let Some(x) = x {
                let v = x.x[i][s];
                let snapped = if v <= mass {
                    0.0
                } else if v >= p.limit[s] - mass {
                    p.limit[s]
                } else {
                    v
                };
                net.set_flow(e, snapped);
            }
            edges.push((i, s, e));
        }
        ActiveGraph { net, edges, n }
    }

    pub fn evader_node(&self, i: usize) -> NodeId {
        i - 1
    }

    pub fn site_node(&self, s: usize) -> NodeId {
        self.n + s
    }

    pub fn source(&self) -> NodeId {
        self.net.source()
    }

    pub fn sink(&self) -> NodeId {
        self.net.sink()
    }

    /// Writes the active-edge flows back into the profile, clamped to the limits.
    pub fn write_back(&self, game: &CEGame, x: &mut StrategyProfile) {
        for &(i, s, e) in &self.edges {
            x.x[i][s] = self.net.edge(e).flow.clamp(0.0, game.player(i).limit[s]);
        }
    }
}
