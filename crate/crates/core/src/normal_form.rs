use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::game::CEGame;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Number of pure-strategy profiles when every player picks `r_i` distinct
/// sites: the product of `C(m, r_i)` over all players.
pub fn normal_form_size(game: &CEGame) -> Result<BigUint> {
    let m = game.m() as u64;
    let mut size = BigUint::from(1u32);
    for (i, p) in game.players.iter().enumerate() {
        let r = p.resource.round();
        if (p.resource - r).abs() > 1e-9 || r < 0.0 {
            return Err(Error::InvalidInput(format!(
                "player {i} has non-integral resource {}",
                p.resource
            )));
        }
        size *= binomial(m, r as u64);
    }
    Ok(size)
}
