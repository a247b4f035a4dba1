//! Seeded random instances.
//!
//! The stream is SplitMix64; each draw from `{lo..=hi}` is
//! `lo + next_u64() % (hi - lo + 1)`. Draw order: for each player in
//! index order, its resource, then `b` and `d` per site in site order.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::game::{CEGame, PlayerParams};
use crate::reductions::{MatchingEdge, MatchingSpec, MatchingVertex};

fn draw(rng: &mut SplitMix64, lo: i64, hi: i64) -> f64 {
    let span = (hi - lo + 1) as u64;
    (lo + (rng.next_u64() % span) as i64) as f64
}

/// Uniform in `[0, 1)` from the top 53 bits.
fn unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// `n` evaders and `m` sites with unit limits, resources and `b` in
/// `{1..10}`, catcher `d` in `{1..10}` and evader `d` in `{-10..-1}`.
/// Resources are clamped to the total limit `m`.
pub fn gen_random(n: usize, m: usize, seed: u64) -> CEGame {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut players = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let id = if i == 0 { "catcher".to_string() } else { format!("e{i}") };
        let resource = draw(&mut rng, 1, 10).min(m as f64);
        let mut p = PlayerParams::new(id, resource, 1.0, m);
        for s in 0..m {
            p.b[s] = draw(&mut rng, 1, 10);
            p.d[s] = if i == 0 { draw(&mut rng, 1, 10) } else { -draw(&mut rng, 1, 10) };
        }
        players.push(p);
    }
    let catcher = players.remove(0);
    CEGame::with_default_sites(m, catcher, players).expect("generated shapes are consistent")
}

/// Single evader on `m` sites whose limits equal its resource, so it never
/// needs to split. Catcher resource is in `{0..m}`, `a_0` in `{-10..-1}`,
/// `b_0` in `{0..10}` and the rest as in [`gen_random`].
pub fn gen_single_evader(m: usize, seed: u64) -> CEGame {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut c = PlayerParams::new("catcher", draw(&mut rng, 0, m as i64), 1.0, m);
    let r1 = draw(&mut rng, 1, 10);
    let mut e = PlayerParams::new("e1", r1, r1, m);
    for s in 0..m {
        c.a[s] = -draw(&mut rng, 1, 10);
        c.b[s] = draw(&mut rng, 0, 10);
        c.d[s] = draw(&mut rng, 1, 10);
        e.b[s] = draw(&mut rng, 1, 10);
        e.d[s] = -draw(&mut rng, 1, 10);
    }
    CEGame::with_default_sites(m, c, vec![e]).expect("generated shapes are consistent")
}

/// Complete bipartite matching instance with `nu` left and `nv` right
/// vertices, capacities in `(0, 1]`, edge capacity 1 and costs in `[0, 2)`.
/// The side with the larger total is scaled down to balance the two.
pub fn gen_matching(nu: usize, nv: usize, seed: u64) -> MatchingSpec {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let side = |prefix: &str, k: usize, rng: &mut SplitMix64| -> Vec<MatchingVertex> {
        (0..k)
            .map(|j| MatchingVertex {
                id: format!("{prefix}{j}"),
                capacity: 1.0 - unit(rng),
            })
            .collect()
    };
    let mut left = side("u", nu, &mut rng);
    let mut right = side("v", nv, &mut rng);
    let (sl, sr): (f64, f64) = (left.iter().map(|v| v.capacity).sum(), right.iter().map(|v| v.capacity).sum());
    if sl > sr {
        left.iter_mut().for_each(|v| v.capacity *= sr / sl);
    } else {
        right.iter_mut().for_each(|v| v.capacity *= sl / sr);
    }
    let mut edges = Vec::with_capacity(nu * nv);
    for u in &left {
        for v in &right {
            edges.push(MatchingEdge {
                from: u.id.clone(),
                to: v.id.clone(),
                capacity: 1.0,
                cost: 2.0 * unit(&mut rng),
            });
        }
    }
    MatchingSpec { left, right, edges }
}
