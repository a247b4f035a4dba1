//! Command bodies. Each returns the JSON document printed on standard output.

use std::fs;
use std::io::Write;

use cegame_core::bvn::bvn_decompose;
use cegame_core::game::CEGame;
use cegame_core::generate::{gen_random, gen_single_evader};
use cegame_core::nash::{solve_nash, IterationTrace, NashOptions};
use cegame_core::profile::{player_utility, StrategyProfile};
use cegame_core::reductions::{builtin_reductions, extract_matching, swap_roles};
use cegame_core::response::verify_equilibrium;
use cegame_core::stackelberg::solve_stackelberg;
use cegame_core::Error;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{parse_game, parse_game_unchecked, serialize_game};

pub fn read_text(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_game(path: &str) -> Result<CEGame, CliError> {
    parse_game(&read_text(path)?)
}

/// Reads a profile given either as a bare list of rows or as the output of
/// `solve-nash`, which keeps the rows under `"profile"`.
pub fn load_profile(path: &str) -> Result<StrategyProfile, CliError> {
    let v: Value = serde_json::from_str(&read_text(path)?).map_err(CliError::Json)?;
    let rows = match v {
        Value::Object(mut map) => map.remove("profile").ok_or_else(|| CliError::Format {
            key: "profile".into(),
            message: "missing field".into(),
        })?,
        other => other,
    };
    serde_json::from_value(rows).map_err(CliError::Json)
}

fn site_map(game: &CEGame, values: &[f64]) -> Value {
    let map: serde_json::Map<String, Value> = game.sites.iter().cloned().zip(values.iter().map(|v| json!(v))).collect();
    Value::Object(map)
}

fn write_trace(path: &str, trace: &[IterationTrace]) -> Result<(), CliError> {
    let mut out = String::new();
    for t in trace {
        out.push_str(&serde_json::to_string(t).expect("trace serialization cannot fail"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io(path, e))
}

pub fn validate(path: &str) -> Result<Value, CliError> {
    let game = load_game(path)?;
    Ok(json!({ "valid": true, "evaders": game.n(), "sites": game.m() }))
}

pub fn solve_nash_cmd(path: &str, opts: &NashOptions, trace: Option<&str>) -> Result<Value, CliError> {
    let game = load_game(path)?;
    let opts = NashOptions {
        trace: trace.is_some(),
        ..opts.clone()
    };
    let sol = match solve_nash(&game, &opts) {
        Ok(sol) => sol,
        Err(e) => {
            if let (Some(path), Error::IterationLimit { trace: t, .. } | Error::NumericDegeneracy { trace: t, .. }) =
                (trace, &e)
            {
                write_trace(path, t)?;
            }
            return Err(e.into());
        }
    };
    if let Some(path) = trace {
        write_trace(path, &sol.trace)?;
    }
    let utilities: Vec<f64> = (0..=game.n()).map(|i| player_utility(&game, &sol.profile, i)).collect();
    let mut out = json!({
        "sites": game.sites,
        "players": game.players.iter().map(|p| p.id.as_str()).collect::<Vec<_>>(),
        "profile": sol.profile,
        "catcher": site_map(&game, sol.profile.catcher()),
        "utilities": utilities,
        "iterations": sol.iterations,
        "verification": sol.verified,
    });
    if game.annotations.as_ref().is_some_and(|a| a.matching_costs.is_some()) {
        out["matching"] = json!(extract_matching(&game, &sol)?);
    }
    Ok(out)
}

pub fn solve_stackelberg_cmd(path: &str) -> Result<Value, CliError> {
    let game = load_game(path)?;
    let sol = solve_stackelberg(&game)?;
    Ok(json!({
        "coverage": site_map(&game, &sol.coverage),
        "attacked_site": game.sites[sol.attacked_site],
        "catcher_utility": sol.catcher_utility,
        "evader_utility": sol.evader_utility,
    }))
}

/// Reduces a spec file. A missing `"kind"` is filled in from `kind`; a
/// conflicting one is an error.
pub fn reduce(kind: &str, path: &str) -> Result<String, CliError> {
    let mut spec: Value = serde_json::from_str(&read_text(path)?).map_err(CliError::Json)?;
    let obj = spec.as_object_mut().ok_or_else(|| CliError::Format {
        key: "kind".into(),
        message: "spec must be a JSON object".into(),
    })?;
    obj.entry("kind").or_insert_with(|| json!(kind));
    let game = builtin_reductions().lookup(kind)?.reduce(&spec)?;
    Ok(serialize_game(&game))
}

/// Swaps the catcher's covered and uncovered roles. The input may be in
/// either form, so it is not validated.
pub fn swap(path: &str) -> Result<String, CliError> {
    let game = parse_game_unchecked(&read_text(path)?)?;
    Ok(serialize_game(&swap_roles(&game)))
}

pub fn verify(game_path: &str, profile_path: &str, eps: f64) -> Result<(Value, bool), CliError> {
    let game = load_game(game_path)?;
    let x = load_profile(profile_path)?;
    let report = verify_equilibrium(&game, &x, eps)?;
    let ok = report.is_equilibrium;
    Ok((json!(report), ok))
}

/// Splits each player's allocation into a lottery over pure site sets.
pub fn decompose(game_path: &str, profile_path: &str) -> Result<Value, CliError> {
    let game = load_game(game_path)?;
    let x = load_profile(profile_path)?;
    x.check_shape(&game)?;
    let mut players = Vec::new();
    for (i, p) in game.players.iter().enumerate() {
        let r = p.resource.round();
        if (p.resource - r).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("player {i} has non-integral resource {}", p.resource)).into());
        }
        let mixed = bvn_decompose(&x.x[i], r as usize)?;
        let atoms: Vec<Value> = mixed
            .atoms
            .iter()
            .map(|a| {
                json!({
                    "sites": a.sites.iter().map(|&s| game.sites[s].as_str()).collect::<Vec<_>>(),
                    "probability": a.probability,
                })
            })
            .collect();
        players.push(json!({ "id": p.id, "atoms": atoms }));
    }
    Ok(json!({ "players": players }))
}

pub fn gen(evaders: usize, sites: usize, seed: u64, single_evader: bool) -> Result<String, CliError> {
    if sites == 0 || (!single_evader && evaders == 0) {
        return Err(CliError::Usage("need at least one site and one evader".into()));
    }
    let game = if single_evader {
        gen_single_evader(sites, seed)
    } else {
        gen_random(evaders, sites, seed)
    };
    Ok(serialize_game(&game))
}

pub fn print_json<W: Write>(mut out: W, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("json serialization cannot fail");
    writeln!(out, "{text}").map_err(|e| CliError::io("stdout", e))
}
