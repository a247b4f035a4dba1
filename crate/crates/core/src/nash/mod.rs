//! Nash equilibria by catcher-coverage continuation.
//!
//! Evaders start greedy and the catcher at zero. Each iteration rebalances
//! evader mass over the active edges, then either pushes catcher coverage
//! along residual shortest paths or, when that is blocked, reroutes evader
//! mass to lower the catcher's threshold. Every intermediate profile is an
//! equilibrium of the game whose catcher resource equals the mass placed
//! so far.

mod graph;
mod phases;

use serde::Serialize;

pub use phases::{increase_coverage, initialize_evaders, reallocate_min_cost, reroute_decrease_theta0, IncreaseOutcome};

use crate::error::{Error, Result};
use crate::flow::builtin_min_cost_flow;
use crate::game::{ensure_valid, CEGame, FLOW_EPS, VERIFY_EPS};
use crate::profile::{profile_view, StrategyProfile, Tolerances};
use crate::response::{verify_equilibrium, EquilibriumReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Realloc,
    IncreaseSuccess,
    IncreaseFail,
    Reroute,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace {
    pub step: usize,
    pub phase: Phase,
    pub delta: f64,
    pub theta0: Option<f64>,
    pub catcher_allocated: f64,
    pub boundary_open: Vec<usize>,
    /// Sites that joined the open boundary during this phase.
    pub entered_boundary: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct NashOptions {
    /// Tolerance on per-resource utilities for boundary membership.
    pub eps: f64,
    /// Tolerance on allocated mass.
    pub mass_eps: f64,
    /// Tolerance handed to the final equilibrium check.
    pub verify_eps: f64,
    pub max_iterations: usize,
    /// Consecutive zero-length reroutes tolerated before giving up.
    pub stall_limit: usize,
    pub trace: bool,
    /// Check the per-phase invariants while solving.
    pub audit: bool,
    /// Name of a registered min-cost flow algorithm.
    pub flow: String,
}

impl Default for NashOptions {
    fn default() -> Self {
        NashOptions {
            eps: FLOW_EPS,
            mass_eps: FLOW_EPS,
            verify_eps: VERIFY_EPS,
            max_iterations: 1_000_000,
            stall_limit: 3,
            trace: false,
            audit: false,
            flow: "ssp".into(),
        }
    }
}

impl NashOptions {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            mass: self.mass_eps,
            utility: self.eps,
        }
    }
}

/// Counts of invariant breaches observed while solving with auditing on.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct InvariantAudit {
    /// Rebalancing changed catcher mass, site loads, utilities or thresholds.
    pub realloc_drift: usize,
    /// An evader threshold moved by other than `delta` times its rate.
    pub threshold_rate: usize,
    /// A reroute failed to lower `theta_0` by `delta`.
    pub theta0_decrease: usize,
    /// A site joined the open boundary more than once.
    pub boundary_reentry: usize,
    /// Two failed increases with no site joining the open boundary between them.
    pub repeated_failure: usize,
    /// An intermediate profile was not an equilibrium of its partial game.
    pub intermediate_equilibrium: usize,
    pub realloc_checks: usize,
    pub increase_checks: usize,
    pub reroute_checks: usize,
}

impl InvariantAudit {
    pub fn violations(&self) -> usize {
        self.realloc_drift
            + self.threshold_rate
            + self.theta0_decrease
            + self.boundary_reentry
            + self.repeated_failure
            + self.intermediate_equilibrium
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NashSolution {
    pub profile: StrategyProfile,
    pub iterations: usize,
    pub trace: Vec<IterationTrace>,
    pub verified: EquilibriumReport,
    pub audit: InvariantAudit,
}

/// Worst-case iteration count `2m + 4m * 3^(nm)`, saturating at `usize::MAX`.
pub fn iteration_bound(n: usize, m: usize) -> usize {
    let exp = n.saturating_mul(m);
    let pow = if exp >= 40 {
        usize::MAX
    } else {
        3usize.checked_pow(exp as u32).unwrap_or(usize::MAX)
    };
    (4 * m).saturating_mul(pow).saturating_add(2 * m)
}

const DRIFT_TOL: f64 = 1e-9;
const RATE_TOL: f64 = 1e-7;

struct Run<'a> {
    game: &'a CEGame,
    opts: &'a NashOptions,
    tol: Tolerances,
    trace: Vec<IterationTrace>,
    audit: InvariantAudit,
    open: Vec<bool>,
    entries: Vec<usize>,
    failure_armed: bool,
}

impl<'a> Run<'a> {
    fn new(game: &'a CEGame, opts: &'a NashOptions, x: &StrategyProfile) -> Self {
        let tol = opts.tolerances();
        let view = profile_view(game, x, tol);
        let mut open = vec![false; game.m()];
        let mut entries = vec![0; game.m()];
        for &s in &view.open_boundary {
            open[s] = true;
            entries[s] = 1;
        }
        Run {
            game,
            opts,
            tol,
            trace: Vec::new(),
            audit: InvariantAudit::default(),
            open,
            entries,
            failure_armed: false,
        }
    }

    fn record(&mut self, step: usize, phase: Phase, delta: f64, x: &StrategyProfile) {
        let view = profile_view(self.game, x, self.tol);
        let mut open = vec![false; self.game.m()];
        let mut entered = Vec::new();
        for &s in &view.open_boundary {
            open[s] = true;
            if !self.open[s] {
                entered.push(s);
                self.entries[s] += 1;
                if self.entries[s] > 1 && self.opts.audit {
                    self.audit.boundary_reentry += 1;
                }
            }
        }
        self.open = open;
        if !entered.is_empty() {
            self.failure_armed = false;
        }
        if self.opts.trace {
            self.trace.push(IterationTrace {
                step,
                phase,
                delta,
                theta0: view.theta[0],
                catcher_allocated: x.catcher().iter().sum(),
                boundary_open: view.open_boundary,
                entered_boundary: entered,
            });
        }
    }

    fn audit_realloc(&mut self, before: &StrategyProfile, after: &StrategyProfile) {
        self.audit.realloc_checks += 1;
        let a = profile_view(self.game, before, self.tol);
        let b = profile_view(self.game, after, self.tol);
        let close = |u: f64, v: f64| (u - v).abs() <= DRIFT_TOL * u.abs().max(1.0);
        let loads = before.evader_sums().into_iter().zip(after.evader_sums()).all(|(u, v)| close(u, v));
        let catcher = before.catcher() == after.catcher();
        let mu = a.mu.iter().flatten().zip(b.mu.iter().flatten()).all(|(u, v)| close(*u, *v));
        let theta = a.theta.iter().zip(&b.theta).all(|(u, v)| match (u, v) {
            (Some(u), Some(v)) => close(*u, *v),
            (None, None) => true,
            _ => false,
        });
        if !(loads && catcher && mu && theta) {
            self.audit.realloc_drift += 1;
        }
    }

    fn audit_increase(&mut self, before: &StrategyProfile, after: &StrategyProfile, delta: f64, rates: &[f64]) {
        self.audit.increase_checks += 1;
        let a = profile_view(self.game, before, self.tol);
        let b = profile_view(self.game, after, self.tol);
        for i in 1..=self.game.n() {
            if let (Some(u), Some(v)) = (a.theta[i], b.theta[i]) {
                if (u - delta * rates[i] - v).abs() > RATE_TOL {
                    self.audit.threshold_rate += 1;
                }
            }
        }
    }

    fn audit_reroute(&mut self, before: &StrategyProfile, after: &StrategyProfile, delta: f64) {
        self.audit.reroute_checks += 1;
        let a = profile_view(self.game, before, self.tol).theta[0];
        let b = profile_view(self.game, after, self.tol).theta[0];
        let ok = match (a, b) {
            (Some(u), Some(v)) => v < u && (u - delta - v).abs() <= RATE_TOL * u.abs().max(1.0),
            _ => false,
        };
        if !ok {
            self.audit.theta0_decrease += 1;
        }
    }

    fn audit_partial(&mut self, x: &StrategyProfile) -> Result<()> {
        let placed: f64 = x.catcher().iter().sum();
        let partial = self.game.with_catcher_resource(placed);
        if !verify_equilibrium(&partial, x, VERIFY_EPS)?.is_equilibrium {
            self.audit.intermediate_equilibrium += 1;
        }
        Ok(())
    }
}

/// Computes a Nash equilibrium of a validated game.
pub fn solve_nash(game: &CEGame, opts: &NashOptions) -> Result<NashSolution> {
    ensure_valid(game)?;
    let solver = builtin_min_cost_flow().lookup(&opts.flow)?;
    let tol = opts.tolerances();
    let limit = opts.max_iterations.min(iteration_bound(game.n(), game.m()));
    let r0 = game.catcher().resource;
    let done_tol = 1e-11 * r0.max(1.0);

    let mut x = initialize_evaders(game);
    let mut run = Run::new(game, opts, &x);
    let mut iterations = 0;
    let mut stalls = 0;

    while r0 - x.catcher().iter().sum::<f64>() > done_tol {
        if iterations >= limit {
            return Err(Error::IterationLimit {
                limit,
                trace: run.trace,
            });
        }
        iterations += 1;

        let next = reallocate_min_cost(game, &x, tol, solver)?;
        if opts.audit {
            run.audit_realloc(&x, &next);
        }
        x = next;
        run.record(iterations, Phase::Realloc, 0.0, &x);

        match increase_coverage(game, &x, tol)? {
            IncreaseOutcome::Success {
                profile,
                delta,
                evader_rates,
                ..
            } => {
                if opts.audit {
                    run.audit_increase(&x, &profile, delta, &evader_rates);
                }
                x = profile;
                run.failure_armed = false;
                run.record(iterations, Phase::IncreaseSuccess, delta, &x);
                stalls = 0;
            }
            IncreaseOutcome::Failure => {
                if run.failure_armed && opts.audit {
                    run.audit.repeated_failure += 1;
                }
                run.record(iterations, Phase::IncreaseFail, 0.0, &x);
                run.failure_armed = true;
                let (next, delta) = reroute_decrease_theta0(game, &x, tol)?;
                if delta == 0.0 {
                    stalls += 1;
                    if stalls >= opts.stall_limit {
                        return Err(Error::NumericDegeneracy {
                            message: format!("reroute made no progress {stalls} times in a row"),
                            trace: run.trace,
                        });
                    }
                } else {
                    stalls = 0;
                    if opts.audit {
                        run.audit_reroute(&x, &next, delta);
                    }
                }
                x = next;
                run.record(iterations, Phase::Reroute, delta, &x);
            }
        }
        if opts.audit {
            run.audit_partial(&x)?;
        }
    }

    let verified = verify_equilibrium(game, &x, opts.verify_eps)?;
    if !verified.is_equilibrium {
        return Err(Error::NumericDegeneracy {
            message: format!(
                "final profile misses equilibrium by {} (tolerance {})",
                verified.worst_violation, opts.verify_eps
            ),
            trace: run.trace,
        });
    }
    Ok(NashSolution {
        profile: x,
        iterations,
        trace: run.trace,
        verified,
        audit: run.audit,
    })
}
