use crate::game::CEGame;
use crate::profile::StrategyProfile;

/// Exchanges the catcher's covered and uncovered mass: the new catcher
/// allocation is `l_0 - x_0` and every coefficient is rewritten so that all
/// utilities are unchanged under [`swap_profile`]. Applying it twice gives
/// back the original game whenever the arithmetic is exact.
pub fn swap_roles(game: &CEGame) -> CEGame {
    let mut g = game.clone();
    let l0 = game.catcher().limit.clone();
    let c = &mut g.players[0];
    c.resource = l0.iter().sum::<f64>() - c.resource;
    for s in 0..l0.len() {
        c.a[s] += c.d[s] * l0[s];
        c.c[s] += c.b[s] * l0[s];
        c.b[s] = -c.b[s];
        c.d[s] = -c.d[s];
    }
    for e in g.players.iter_mut().skip(1) {
        for s in 0..l0.len() {
            e.b[s] += e.d[s] * l0[s];
            e.c[s] += e.a[s] * l0[s];
            e.a[s] = -e.a[s];
            e.d[s] = -e.d[s];
        }
    }
    g
}

/// The profile that [`swap_roles`] pairs with `x`.
pub fn swap_profile(game: &CEGame, x: &StrategyProfile) -> StrategyProfile {
    let mut y = x.clone();
    for (v, l) in y.x[0].iter_mut().zip(&game.catcher().limit) {
        *v = l - *v;
    }
    y
}
