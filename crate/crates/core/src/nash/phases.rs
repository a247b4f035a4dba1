use super::graph::ActiveGraph;
use crate::error::{Error, Result};
use crate::flow::{max_flow, shortest_paths, MinCostFlowSolver};
use crate::game::{on_threshold, CEGame};
use crate::profile::{profile_view, StrategyProfile, Tolerances};
use crate::response::greedy_fill;

/// Evaders fill their highest-`b` sites first; the catcher starts at zero.
pub fn initialize_evaders(game: &CEGame) -> StrategyProfile {
    let mut x = StrategyProfile::zeros(game);
    for i in 1..=game.n() {
        let p = game.player(i);
        x.x[i] = greedy_fill(&p.b, &p.limit, p.resource);
    }
    x
}

/// Redistributes evader mass over the active edges by a min-cost flow with
/// edge costs `ln(-d)`, keeping each evader's boundary mass and each site's
/// boundary load fixed.
pub fn reallocate_min_cost(
    game: &CEGame,
    x: &StrategyProfile,
    tol: Tolerances,
    solver: &dyn MinCostFlowSolver,
) -> Result<StrategyProfile> {
    let view = profile_view(game, x, tol);
    if view.active_edges.is_empty() {
        return Ok(x.clone());
    }
    let mut g = ActiveGraph::empty(game, &view, tol.mass);
    let (src, snk) = (g.source(), g.sink());
    for i in 1..=game.n() {
        let supply: f64 = view.boundary[i].iter().map(|&s| x.x[i][s]).sum();
        if supply > 0.0 {
            let v = g.evader_node(i);
            g.net.add_edge(src, v, supply, 0.0);
        }
    }
    for s in 0..game.m() {
        let load: f64 = (1..=game.n())
            .filter(|&i| view.is_active(i, s))
            .map(|i| x.x[i][s])
            .sum();
        if load > 0.0 {
            let v = g.site_node(s);
            g.net.add_edge(v, snk, load, 0.0);
        }
    }
    // Start from the current allocation so the solver only has to improve it.
    for &(i, s, e) in &g.edges {
        g.net.set_flow(e, x.x[i][s]);
    }
    for e in 0..g.net.edges().len() {
        let edge = g.net.edge(e).clone();
        if edge.from == src || edge.to == snk {
            g.net.set_flow(e, edge.capacity);
        }
    }
    solver.solve(&mut g.net)?;
    let mut out = x.clone();
    g.write_back(game, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum IncreaseOutcome {
    Success {
        profile: StrategyProfile,
        /// Step length in units of `theta_0` decrease.
        delta: f64,
        /// Root site the increase was driven from.
        root: usize,
        /// Rate at which each site's catcher coverage grows.
        site_rates: Vec<f64>,
        /// Rate at which each evader's threshold falls.
        evader_rates: Vec<f64>,
    },
    /// Every open boundary site reaches a site outside the open boundary.
    Failure,
}

/// Raises catcher coverage along the residual shortest-path tree of the
/// first open boundary site whose reachable sites all lie in the open
/// boundary.
pub fn increase_coverage(game: &CEGame, x: &StrategyProfile, tol: Tolerances) -> Result<IncreaseOutcome> {
    let (n, m) = (game.n(), game.m());
    let view = profile_view(game, x, tol);
    let mut open = vec![false; m];
    for &s in &view.open_boundary {
        open[s] = true;
    }
    let g = ActiveGraph::loaded(game, x, &view, tol.mass);
    let res = g.net.residual();

    let mut chosen = None;
    for &root in &view.open_boundary {
        let dist = shortest_paths(&res, g.site_node(root))?;
        let closed = (0..m).all(|s| dist[g.site_node(s)].is_infinite() || open[s]);
        if closed {
            chosen = Some((root, dist));
            break;
        }
    }
    let Some((root, dist)) = chosen else {
        return Ok(IncreaseOutcome::Failure);
    };

    let rate = |d: f64| if d.is_finite() { (-d).exp() } else { 0.0 };
    let site_rates: Vec<f64> = (0..m).map(|s| rate(dist[g.site_node(s)])).collect();
    let mut evader_rates = vec![0.0; n + 1];
    for (i, r) in evader_rates.iter_mut().enumerate().skip(1) {
        *r = rate(dist[g.evader_node(i)]);
    }

    let catcher = game.catcher();
    let remaining = catcher.resource - x.catcher().iter().sum::<f64>();
    let mut delta = remaining / site_rates.iter().sum::<f64>();
    for s in 0..m {
        if site_rates[s] > 0.0 {
            delta = delta.min((catcher.limit[s] - x.x[0][s]) / site_rates[s]);
        }
    }
    // Stop when an inactive edge joins its evader's boundary.
    for i in 1..=n {
        let Some(theta) = view.theta[i] else { continue };
        let p = game.player(i);
        for s in 0..m {
            if p.limit[s] <= tol.mass || view.is_active(i, s) {
                continue;
            }
            let denom = site_rates[s] * -p.d[s] - evader_rates[i];
            if denom == 0.0 {
                continue;
            }
            let step = (view.mu[i][s] - theta) / denom;
            if step > 0.0 {
                delta = delta.min(step);
            }
        }
    }
    let delta = delta.max(0.0);

    let mut profile = x.clone();
    for s in 0..m {
        if site_rates[s] > 0.0 {
            let v = x.x[0][s] + delta * site_rates[s];
            profile.x[0][s] = if v >= catcher.limit[s] - tol.mass {
                catcher.limit[s]
            } else {
                v
            };
        }
    }
    Ok(IncreaseOutcome::Success {
        profile,
        delta,
        root,
        site_rates,
        evader_rates,
    })
}

/// Lowers `theta_0` by the largest feasible `delta`, shifting evader mass
/// off the open boundary sites. Returns the new profile and `delta`.
pub fn reroute_decrease_theta0(game: &CEGame, x: &StrategyProfile, tol: Tolerances) -> Result<(StrategyProfile, f64)> {
    let m = game.m();
    let view = profile_view(game, x, tol);
    let theta0 = view.theta(0)?;
    if view.open_boundary.is_empty() {
        return Err(Error::Internal("reroute with an empty open boundary".into()));
    }
    let catcher = game.catcher();
    let mut open = vec![false; m];
    for &s in &view.open_boundary {
        open[s] = true;
    }

    let mut upper = f64::INFINITY;
    for s in 0..m {
        let mu = view.mu[0][s];
        if !open[s] && catcher.limit[s] > tol.mass && mu < theta0 && !on_threshold(mu, theta0, tol.utility) {
            upper = upper.min(theta0 - mu);
        }
    }
    for &s in &view.open_boundary {
        let load: f64 = (1..=game.n())
            .filter(|&i| view.is_active(i, s) && x.x[i][s] > tol.mass)
            .map(|i| x.x[i][s])
            .sum();
        upper = upper.min(catcher.d[s] * load);
    }
    if !(upper > 0.0) {
        return Ok((x.clone(), 0.0));
    }

    let mut g = ActiveGraph::loaded(game, x, &view, tol.mass);
    let (src, snk) = (g.source(), g.sink());
    let unbounded = game.total_evader_resource() + 1.0;
    let mut supply = Vec::new();
    let mut drain = Vec::new();
    for s in 0..m {
        let v = g.site_node(s);
        if open[s] {
            supply.push((s, g.net.add_edge(src, v, 0.0, 0.0)));
        } else {
            let mu = view.mu[0][s];
            let finite = catcher.limit[s] > tol.mass
                && x.x[0][s] < catcher.limit[s] - tol.mass
                && mu < theta0
                && !on_threshold(mu, theta0, tol.utility);
            drain.push((s, g.net.add_edge(v, snk, 0.0, 0.0), finite));
        }
    }

    let attempt = |delta: f64| -> (bool, ActiveGraph) {
        let mut h = g.clone();
        let mut demand = 0.0;
        for &(s, e) in &supply {
            let cap = delta / catcher.d[s];
            demand += cap;
            h.net.set_capacity(e, cap);
        }
        for &(s, e, finite) in &drain {
            let cap = if finite {
                ((theta0 - delta - view.mu[0][s]) / catcher.d[s]).max(0.0)
            } else {
                unbounded
            };
            h.net.set_capacity(e, cap);
        }
        let value = max_flow(&mut h.net);
        (value >= demand * (1.0 - 1e-12) - 1e-15, h)
    };

    let (ok, h) = attempt(upper);
    let (delta, h) = if ok {
        (upper, h)
    } else {
        let (mut lo, mut hi) = (0.0, upper);
        let width = 1e-13 * upper.max(1.0);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if attempt(mid).0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo == 0.0 {
            return Ok((x.clone(), 0.0));
        }
        (lo, attempt(lo).1)
    };

    let mut out = x.clone();
    for &(i, s, e) in &h.edges {
        let moved = h.net.edge(e).flow - g.net.edge(e).flow;
        out.x[i][s] = (x.x[i][s] + moved).clamp(0.0, game.player(i).limit[s]);
    }
    Ok((out, delta))
}
