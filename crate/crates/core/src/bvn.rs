//! Decomposition of a marginal coverage vector into a lottery over pure
//! assignments of exactly `r` distinct sites.

use serde::Serialize;

use crate::error::{Error, Result};

const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Atom {
    /// Sites covered by this pure assignment, ascending.
    pub sites: Vec<usize>,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedStrategy {
    pub atoms: Vec<Atom>,
}

impl MixedStrategy {
    /// Marginal coverage implied by the lottery.
    pub fn marginals(&self, m: usize) -> Vec<f64> {
        let mut out = vec![0.0; m];
        for atom in &self.atoms {
            for &s in &atom.sites {
                out[s] += atom.probability;
            }
        }
        out
    }

    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.probability).sum()
    }
}

/// Peels off pure assignments greedily: each round covers the `r` sites with
/// the largest remaining mass, with the largest weight that keeps every
/// residual marginal within `[0, remaining probability]`. Every round zeroes
/// a covered site or pins an uncovered one at the remaining probability, so
/// at most `m` atoms are produced.
pub fn bvn_decompose(marginals: &[f64], r: usize) -> Result<MixedStrategy> {
    let m = marginals.len();
    if r > m {
        return Err(Error::Infeasible(format!("cannot cover {r} of {m} sites")));
    }
    if let Some((s, v)) = marginals
        .iter()
        .enumerate()
        .find(|(_, &v)| !(-1e-9..=1.0 + 1e-9).contains(&v))
    {
        return Err(Error::Infeasible(format!("marginal {v} at site {s} is outside [0, 1]")));
    }
    let total: f64 = marginals.iter().sum();
    if (total - r as f64).abs() > 1e-9 * (r as f64).max(1.0) {
        return Err(Error::Infeasible(format!("marginals sum to {total}, expected {r}")));
    }

    let mut rest: Vec<f64> = marginals.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let mut remaining = 1.0f64;
    let mut atoms: Vec<Atom> = Vec::new();

    for _ in 0..=m {
        if remaining <= SNAP {
            break;
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| rest[b].total_cmp(&rest[a]).then(a.cmp(&b)));
        let (chosen, others) = order.split_at(r);

        let lowest_chosen = chosen.iter().map(|&s| rest[s]).fold(remaining, f64::min);
        let highest_other = others.iter().map(|&s| rest[s]).fold(0.0, f64::max);
        let p = lowest_chosen.min(remaining - highest_other).clamp(0.0, remaining);
        if p <= 0.0 {
            return Err(Error::Internal("decomposition stalled".into()));
        }

        for &s in chosen {
            rest[s] -= p;
            if rest[s] <= SNAP {
                rest[s] = 0.0;
            }
        }
        remaining -= p;
        for &s in others {
            if remaining - rest[s] <= SNAP {
                rest[s] = remaining;
            }
        }
        let mut sites = chosen.to_vec();
        sites.sort_unstable();
        atoms.push(Atom { sites, probability: p });
    }

    let total_p: f64 = atoms.iter().map(|a| a.probability).sum();
    for a in atoms.iter_mut() {
        a.probability /= total_p;
    }
    Ok(MixedStrategy { atoms })
}
