use cegame_core::game::{CEGame, PlayerParams};
use cegame_core::generate::gen_random;
use cegame_core::nash::{solve_nash, NashOptions};
use cegame_core::profile::StrategyProfile;

/// Largest breach of the water-filling conditions, computed from scratch:
/// every player's row sums to its resource and no site it leaves unfilled
/// beats a site it uses.
fn threshold_gap(g: &CEGame, x: &StrategyProfile) -> f64 {
    let m = g.m();
    let mut worst = 0.0f64;
    for (i, p) in g.players.iter().enumerate() {
        let opp: Vec<f64> = (0..m)
            .map(|s| if i == 0 { (1..=g.n()).map(|k| x.x[k][s]).sum() } else { x.x[0][s] })
            .collect();
        let mu: Vec<f64> = (0..m).map(|s| p.b[s] + p.d[s] * opp[s]).collect();
        let row = &x.x[i];
        worst = worst.max((row.iter().sum::<f64>() - p.resource).abs());
        for s in 0..m {
            worst = worst.max(-row[s]).max(row[s] - p.limit[s]);
        }
        let best_unfilled = (0..m)
            .filter(|&s| row[s] < p.limit[s] - 1e-7)
            .map(|s| mu[s])
            .fold(f64::NEG_INFINITY, f64::max);
        let worst_used = (0..m).filter(|&s| row[s] > 1e-7).map(|s| mu[s]).fold(f64::INFINITY, f64::min);
        worst = worst.max(best_unfilled - worst_used);
    }
    worst
}

#[test]
fn two_site_example() {
    let c = PlayerParams::new("c", 1.0, 1.0, 2).with_d(&[1.0, 1.0]);
    let e = PlayerParams::new("e", 1.0, 1.0, 2).with_b(&[6.0, 4.0]).with_d(&[-10.0, -10.0]);
    let g = CEGame::with_default_sites(2, c, vec![e]).unwrap();
    let x = solve_nash(&g, &NashOptions::default()).unwrap().profile;
    for (got, want) in x.x.iter().flatten().zip([0.6, 0.4, 0.5, 0.5]) {
        assert!((got - want).abs() < 1e-9, "{x:?}");
    }
}

#[test]
fn random_games_meet_the_threshold_conditions() {
    for seed in 0..60u64 {
        let g = gen_random(1 + (seed % 4) as usize, 2 + (seed % 5) as usize, 500 + seed);
        let sol = solve_nash(&g, &NashOptions::default()).unwrap();
        let gap = threshold_gap(&g, &sol.profile);
        assert!(gap < 1e-6, "seed {seed}: gap {gap}");
    }
}

#[test]
fn flow_algorithms_agree_on_catcher_utility() {
    for seed in 0..20u64 {
        let g = gen_random(3, 4, seed);
        let utility = |flow: &str| {
            let opts = NashOptions {
                flow: flow.into(),
                ..NashOptions::default()
            };
            let x = solve_nash(&g, &opts).unwrap().profile;
            assert!(threshold_gap(&g, &x) < 1e-6);
            cegame_core::profile::player_utility(&g, &x, 0)
        };
        let (a, b) = (utility("ssp"), utility("cycle-canceling"));
        assert!((a - b).abs() < 1e-6, "seed {seed}: {a} vs {b}");
    }
}

#[test]
fn heterogeneous_limits_and_fractional_resources() {
    let c = PlayerParams::new("c", 1.7, 1.0, 3)
        .with_limit(&[0.9, 0.5, 0.6])
        .with_d(&[2.0, 3.0, 0.5]);
    let e1 = PlayerParams::new("e1", 1.2, 1.0, 3)
        .with_limit(&[0.8, 0.7, 0.4])
        .with_b(&[5.0, 3.0, 4.0])
        .with_d(&[-4.0, -1.5, -6.0]);
    let e2 = PlayerParams::new("e2", 0.5, 1.0, 3).with_b(&[2.0, 6.0, 1.0]).with_d(&[-2.0, -7.0, -1.0]);
    let g = CEGame::with_default_sites(3, c, vec![e1, e2]).unwrap();
    let x = solve_nash(&g, &NashOptions::default()).unwrap().profile;
    assert!(threshold_gap(&g, &x) < 1e-7, "{x:?}");
}
