use serde::Deserialize;

use crate::error::{Error, Result};
use crate::game::{CEGame, PlayerParams};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefenderSpec {
    pub resources: f64,
    /// Payoff per target when the attacked target is covered.
    pub covered: Vec<f64>,
    pub uncovered: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackerType {
    #[serde(default)]
    pub id: Option<String>,
    pub probability: f64,
    pub resources: f64,
    pub covered: Vec<f64>,
    pub uncovered: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecurityGameSpec {
    pub targets: Vec<String>,
    pub defender: DefenderSpec,
    pub attackers: Vec<AttackerType>,
}

fn check_len(what: &str, v: &[f64], m: usize) -> Result<()> {
    if v.len() != m {
        return Err(Error::InvalidInput(format!("{what} has {} payoffs for {m} targets", v.len())));
    }
    Ok(())
}

/// The defender becomes the catcher; attacker type `i` becomes an evader
/// whose limits and resources are scaled by its probability.
pub fn security_to_ce(spec: &SecurityGameSpec) -> Result<CEGame> {
    let m = spec.targets.len();
    let def = &spec.defender;
    check_len("defender covered", &def.covered, m)?;
    check_len("defender uncovered", &def.uncovered, m)?;
    for t in 0..m {
        if def.covered[t] <= def.uncovered[t] {
            return Err(Error::InvalidInput(format!(
                "sign violation: defender must prefer covering target '{}'",
                spec.targets[t]
            )));
        }
    }
    let total: f64 = spec.attackers.iter().map(|a| a.probability).sum();
    if spec.attackers.iter().any(|a| a.probability <= 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "attacker probabilities must be positive and sum to 1 (sum {total})"
        )));
    }

    let mut catcher = PlayerParams::new("defender", def.resources, 1.0, m);
    for t in 0..m {
        catcher.a[t] = def.uncovered[t];
        catcher.d[t] = def.covered[t] - def.uncovered[t];
    }
    let mut evaders = Vec::with_capacity(spec.attackers.len());
    for (k, att) in spec.attackers.iter().enumerate() {
        let id = att.id.clone().unwrap_or_else(|| format!("attacker{}", k + 1));
        check_len(&format!("{id} covered"), &att.covered, m)?;
        check_len(&format!("{id} uncovered"), &att.uncovered, m)?;
        let p = att.probability;
        let mut e = PlayerParams::new(id, p * att.resources, p, m);
        for t in 0..m {
            if att.covered[t] >= att.uncovered[t] {
                return Err(Error::InvalidInput(format!(
                    "sign violation: {} must prefer target '{}' uncovered",
                    e.id, spec.targets[t]
                )));
            }
            e.b[t] = att.uncovered[t];
            e.d[t] = att.covered[t] - att.uncovered[t];
        }
        evaders.push(e);
    }
    CEGame::new(spec.targets.clone(), catcher, evaders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_game;

    pub(crate) fn two_attackers() -> SecurityGameSpec {
        SecurityGameSpec {
            targets: vec!["t".into()],
            defender: DefenderSpec {
                resources: 1.0,
                covered: vec![1.0],
                uncovered: vec![-10.0],
            },
            attackers: vec![
                AttackerType {
                    id: None,
                    probability: 0.5,
                    resources: 1.0,
                    covered: vec![-5.0],
                    uncovered: vec![5.0],
                },
                AttackerType {
                    id: None,
                    probability: 0.5,
                    resources: 1.0,
                    covered: vec![-9.0],
                    uncovered: vec![10.0],
                },
            ],
        }
    }

    fn row(p: &PlayerParams) -> [f64; 4] {
        [p.a[0], p.b[0], p.c[0], p.d[0]]
    }

    #[test]
    fn coefficients_per_role() {
        let g = security_to_ce(&two_attackers()).unwrap();
        assert_eq!(row(g.catcher()), [-10.0, 0.0, 0.0, 11.0]);
        assert_eq!(row(g.player(1)), [0.0, 5.0, 0.0, -10.0]);
        assert_eq!(row(g.player(2)), [0.0, 10.0, 0.0, -19.0]);
        assert_eq!(g.player(1).limit, vec![0.5]);
        assert_eq!(g.player(1).resource, 0.5);
        assert!(validate_game(&g).is_empty());
    }

    #[test]
    fn certain_single_type() {
        let mut spec = two_attackers();
        spec.attackers.truncate(1);
        spec.attackers[0].probability = 1.0;
        let g = security_to_ce(&spec).unwrap();
        assert_eq!(g.player(1).resource, 1.0);
        assert_eq!(g.player(1).limit, vec![1.0]);
    }

    #[test]
    fn sign_violations_are_reported() {
        let mut spec = two_attackers();
        spec.defender.covered[0] = -10.0;
        assert!(security_to_ce(&spec).unwrap_err().to_string().contains("sign violation"));
        let mut spec = two_attackers();
        spec.attackers[1].covered[0] = 10.0;
        assert!(security_to_ce(&spec).unwrap_err().to_string().contains("sign violation"));
    }

    #[test]
    fn probabilities_must_sum_to_one() {
        let mut spec = two_attackers();
        spec.attackers[0].probability = 0.7;
        assert!(security_to_ce(&spec).is_err());
    }
}
