//! The catcher-evader game model.
//!
//! Player `0` is the catcher, players `1..=n` are the evaders. Every player
//! spreads a divisible resource amount over the sites, bounded per site by a
//! limit. The utility of player `i` on site `s` is
//!
//! ```text
//! (b[i][s] + d[i][s] * x_opp[s]) * x[i][s] + a[i][s] * x_opp[s] + c[i][s]
//! ```
//!
//! where `x_opp` is the catcher's allocation for an evader and the summed
//! evader allocation for the catcher.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for flow and graph comparisons.
pub const FLOW_EPS: f64 = 1e-9;
/// Tolerance for equilibrium verification.
pub const VERIFY_EPS: f64 = 1e-6;

/// `mu == theta` under the relative-absolute hybrid tolerance used for
/// boundary-set membership.
#[inline]
pub fn on_threshold(mu: f64, theta: f64, eps: f64) -> bool {
    (mu - theta).abs() <= eps * theta.abs().max(1.0)
}

/// Per-player parameters. All per-site vectors have one entry per site.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerParams {
    pub id: String,
    pub resource: f64,
    pub limit: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl PlayerParams {
    /// Zero utilities and the given resource and limit broadcast over `m` sites.
    pub fn new(id: impl Into<String>, resource: f64, limit: f64, m: usize) -> Self {
        PlayerParams {
            id: id.into(),
            resource,
            limit: vec![limit; m],
            a: vec![0.0; m],
            b: vec![0.0; m],
            c: vec![0.0; m],
            d: vec![0.0; m],
        }
    }

    pub fn with_b(mut self, b: &[f64]) -> Self {
        self.b = b.to_vec();
        self
    }

    pub fn with_d(mut self, d: &[f64]) -> Self {
        self.d = d.to_vec();
        self
    }

    pub fn with_a(mut self, a: &[f64]) -> Self {
        self.a = a.to_vec();
        self
    }

    pub fn with_c(mut self, c: &[f64]) -> Self {
        self.c = c.to_vec();
        self
    }

    pub fn with_limit(mut self, limit: &[f64]) -> Self {
        self.limit = limit.to_vec();
        self
    }

    pub fn total_limit(&self) -> f64 {
        self.limit.iter().sum()
    }
}

/// Extra data carried alongside a game that the solvers never read.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Annotations {
    /// Original edge costs of a reduced matching instance, evader-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching_costs: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CEGame {
    pub sites: Vec<String>,
    /// `players[0]` is the catcher.
    pub players: Vec<PlayerParams>,
    pub annotations: Option<Annotations>,
}

impl CEGame {
    /// Builds a game, checking only that every per-site vector has the
    /// right length. Use [`validate_game`] for the semantic invariants.
    pub fn new(sites: Vec<String>, catcher: PlayerParams, evaders: Vec<PlayerParams>) -> Result<Self> {
        let mut players = Vec::with_capacity(evaders.len() + 1);
        players.push(catcher);
        players.extend(evaders);
        let game = CEGame {
            sites,
            players,
            annotations: None,
        };
        game.check_shape()?;
        Ok(game)
    }

    /// Sites named `s0, s1, ...`.
    pub fn with_default_sites(m: usize, catcher: PlayerParams, evaders: Vec<PlayerParams>) -> Result<Self> {
        Self::new((0..m).map(|s| format!("s{s}")).collect(), catcher, evaders)
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.sites.len();
        if self.players.is_empty() {
            return Err(Error::InvalidInput("a game needs a catcher".into()));
        }
        for (i, p) in self.players.iter().enumerate() {
            for (name, v) in [
                ("limits", &p.limit),
                ("a", &p.a),
                ("b", &p.b),
                ("c", &p.c),
                ("d", &p.d),
            ] {
                if v.len() != m {
                    return Err(Error::InvalidInput(format!(
                        "player {i}: '{name}' has {} entries, expected {m}",
                        v.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of evaders.
    pub fn n(&self) -> usize {
        self.players.len() - 1
    }

    /// Number of sites.
    pub fn m(&self) -> usize {
        self.sites.len()
    }

    pub fn catcher(&self) -> &PlayerParams {
        &self.players[0]
    }

    pub fn evaders(&self) -> &[PlayerParams] {
        &self.players[1..]
    }

    pub fn player(&self, i: usize) -> &PlayerParams {
        &self.players[i]
    }

    pub fn total_evader_resource(&self) -> f64 {
        self.evaders().iter().map(|p| p.resource).sum()
    }

    /// Same game with the catcher's resource replaced. The Nash solver's
    /// intermediate profiles are equilibria of these restricted games.
    pub fn with_catcher_resource(&self, r0: f64) -> CEGame {
        let mut g = self.clone();
        g.players[0].resource = r0;
        g
    }

    pub fn site_index(&self, name: &str) -> Option<usize> {
        self.sites.iter().position(|s| s == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    CatcherDeltaNotPositive { site: usize, value: f64 },
    EvaderDeltaNotNegative { player: usize, site: usize, value: f64 },
    InfeasibleResource { player: usize, resource: f64, capacity: f64 },
    NegativeResource { player: usize, value: f64 },
    NegativeLimit { player: usize, site: usize, value: f64 },
    NonFinite { player: usize, field: &'static str },
    DuplicateSite { site: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CatcherDeltaNotPositive { site, value } => {
                write!(f, "catcher delta must be positive (site {site}: d = {value})")
            }
            Violation::EvaderDeltaNotNegative { player, site, value } => {
                write!(f, "evader delta must be negative (player {player}, site {site}: d = {value})")
            }
            Violation::InfeasibleResource { player, resource, capacity } => write!(
                f,
                "infeasible resource: player {player} has r = {resource} but limits sum to {capacity}"
            ),
            Violation::NegativeResource { player, value } => {
                write!(f, "player {player} has negative resource {value}")
            }
            Violation::NegativeLimit { player, site, value } => {
                write!(f, "player {player} has negative limit {value} at site {site}")
            }
            Violation::NonFinite { player, field } => {
                write!(f, "player {player} has a non-finite value in '{field}'")
            }
            Violation::DuplicateSite { site } => write!(f, "site {site} has a duplicate name"),
        }
    }
}

/// Every violated game invariant. An empty list means the game is valid.
pub fn validate_game(game: &CEGame) -> Vec<Violation> {
    let mut out = Vec::new();
    for (s, name) in game.sites.iter().enumerate() {
        if game.sites[..s].contains(name) {
            out.push(Violation::DuplicateSite { site: s });
        }
    }
    for (i, p) in game.players.iter().enumerate() {
        let fields: [(&'static str, &[f64]); 5] = [
            ("limits", &p.limit),
            ("a", &p.a),
            ("b", &p.b),
            ("c", &p.c),
            ("d", &p.d),
        ];
        if !p.resource.is_finite() {
            out.push(Violation::NonFinite { player: i, field: "resource" });
        }
        for (field, v) in fields {
            if v.iter().any(|x| !x.is_finite()) {
                out.push(Violation::NonFinite { player: i, field });
            }
        }
        if p.resource < 0.0 {
            out.push(Violation::NegativeResource { player: i, value: p.resource });
        }
        for (s, &l) in p.limit.iter().enumerate() {
            if l < 0.0 {
                out.push(Violation::NegativeLimit { player: i, site: s, value: l });
            }
        }
        for (s, &d) in p.d.iter().enumerate() {
            if i == 0 && !(d > 0.0) {
                out.push(Violation::CatcherDeltaNotPositive { site: s, value: d });
            } else if i > 0 && !(d < 0.0) {
                out.push(Violation::EvaderDeltaNotNegative { player: i, site: s, value: d });
            }
        }
        let capacity = p.total_limit();
        // Exact equality is allowed; the slack only absorbs summation order.
        if p.resource > capacity + FLOW_EPS * capacity.max(1.0) {
            out.push(Violation::InfeasibleResource {
                player: i,
                resource: p.resource,
                capacity,
            });
        }
    }
    out
}

/// [`validate_game`] as a `Result`.
pub fn ensure_valid(game: &CEGame) -> Result<()> {
    let v = validate_game(game);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Security game example: defender (1, -10), attackers (-5, 5) and (-9, 10).
    fn security_example() -> CEGame {
        let def = PlayerParams::new("def", 1.0, 1.0, 1).with_a(&[-10.0]).with_d(&[11.0]);
        let att1 = PlayerParams::new("att1", 0.5, 0.5, 1).with_b(&[5.0]).with_d(&[-10.0]);
        let att2 = PlayerParams::new("att2", 0.5, 0.5, 1).with_b(&[10.0]).with_d(&[-19.0]);
        CEGame::new(vec!["t".into()], def, vec![att1, att2]).unwrap()
    }

    #[test]
    fn security_example_is_valid() {
        assert!(validate_game(&security_example()).is_empty());
    }

    #[test]
    fn zero_catcher_delta_is_reported() {
        let mut g = security_example();
        g.players[0].d[0] = 0.0;
        let v = validate_game(&g);
        assert_eq!(v, vec![Violation::CatcherDeltaNotPositive { site: 0, value: 0.0 }]);
        assert!(v[0].to_string().contains("catcher delta must be positive"));
    }

    #[test]
    fn resource_above_capacity_is_reported() {
        let catcher = PlayerParams::new("c", 1.0, 1.0, 2).with_d(&[1.0, 1.0]);
        let ev = PlayerParams::new("e", 3.0, 1.0, 2).with_d(&[-1.0, -1.0]);
        let g = CEGame::with_default_sites(2, catcher, vec![ev]).unwrap();
        let v = validate_game(&g);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("infeasible resource"));
    }

    #[test]
    fn full_saturation_is_allowed() {
        let catcher = PlayerParams::new("c", 2.0, 1.0, 2).with_d(&[1.0, 1.0]);
        let ev = PlayerParams::new("e", 2.0, 1.0, 2).with_d(&[-1.0, -1.0]);
        let g = CEGame::with_default_sites(2, catcher, vec![ev]).unwrap();
        assert!(validate_game(&g).is_empty());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let catcher = PlayerParams::new("c", 1.0, 1.0, 3);
        assert!(matches!(
            CEGame::with_default_sites(2, catcher, vec![]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn threshold_membership_is_scale_aware() {
        assert!(on_threshold(1.0 + 5e-10, 1.0, 1e-9));
        assert!(!on_threshold(1.0 + 5e-9, 1.0, 1e-9));
        assert!(on_threshold(1000.0 + 5e-7, 1000.0, 1e-9));
    }
}
