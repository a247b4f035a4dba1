//! JSON game files.
//!
//! Every per-site field is a scalar broadcast to all sites, a map from site
//! name to value, or a list in site order. Serialization writes a scalar
//! when all values are bitwise equal and a site-ordered map otherwise.
//! Floats are written in shortest round-trip form, so parsing a serialized
//! game gives back the same bits.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use cegame_core::game::{Annotations, CEGame, PlayerParams};
use cegame_core::{validate_game, Error};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

const CATCHER_ID: &str = "catcher";

#[derive(Debug, Clone, PartialEq)]
enum PerSite {
    Scalar(f64),
    List(Vec<f64>),
    Map(BTreeMap<String, f64>),
}

impl<'de> Deserialize<'de> for PerSite {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PerSiteVisitor;

        impl<'de> Visitor<'de> for PerSiteVisitor {
            type Value = PerSite;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, a list of numbers, or a map from site name to number")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<PerSite, E> {
                Ok(PerSite::Scalar(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<PerSite, E> {
                Ok(PerSite::Scalar(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<PerSite, E> {
                Ok(PerSite::Scalar(v as f64))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<PerSite, A::Error> {
                let mut out = Vec::new();
                while let Some(v) = seq.next_element::<f64>()? {
                    out.push(v);
                }
                Ok(PerSite::List(out))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<PerSite, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = map.next_entry::<String, f64>()? {
                    if out.insert(k.clone(), v).is_some() {
                        return Err(de::Error::custom(format!("site '{k}' appears twice")));
                    }
                }
                Ok(PerSite::Map(out))
            }
        }

        d.deserialize_any(PerSiteVisitor)
    }
}

impl PerSite {
    fn expand(&self, sites: &[String], key: &str) -> Result<Vec<f64>, CliError> {
        let bad = |message: String| CliError::Format {
            key: key.to_string(),
            message,
        };
        match self {
            PerSite::Scalar(v) => Ok(vec![*v; sites.len()]),
            PerSite::List(v) if v.len() == sites.len() => Ok(v.clone()),
            PerSite::List(v) => Err(bad(format!("has {} entries for {} sites", v.len(), sites.len()))),
            PerSite::Map(map) => {
                if sites.iter().collect::<HashSet<_>>().len() != sites.len() {
                    return Err(bad("site maps need distinct site names".into()));
                }
                if let Some(k) = map.keys().find(|k| !sites.contains(k)) {
                    return Err(bad(format!("unknown site '{k}'")));
                }
                sites
                    .iter()
                    .map(|s| map.get(s).copied().ok_or_else(|| bad(format!("missing site '{s}'"))))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlayer {
    #[serde(default)]
    id: Option<String>,
    resource: f64,
    limits: PerSite,
    #[serde(default)]
    a: Option<PerSite>,
    #[serde(default)]
    b: Option<PerSite>,
    #[serde(default)]
    c: Option<PerSite>,
    d: PerSite,
}

impl RawPlayer {
    fn build(&self, sites: &[String], key: &str, default_id: String) -> Result<PlayerParams, CliError> {
        let field = |v: &Option<PerSite>, name: &str| match v {
            Some(v) => v.expand(sites, &format!("{key}.{name}")),
            None => Ok(vec![0.0; sites.len()]),
        };
        Ok(PlayerParams {
            id: self.id.clone().unwrap_or(default_id),
            resource: self.resource,
            limit: self.limits.expand(sites, &format!("{key}.limits"))?,
            a: field(&self.a, "a")?,
            b: field(&self.b, "b")?,
            c: field(&self.c, "c")?,
            d: self.d.expand(sites, &format!("{key}.d"))?,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    sites: Vec<String>,
    catcher: RawPlayer,
    evaders: Vec<RawPlayer>,
    #[serde(default)]
    annotations: Option<Annotations>,
}

/// Parses a game file without checking the game invariants. Catcher-form
/// games such as a pre-swap scored test need this.
pub fn parse_game_unchecked(text: &str) -> Result<CEGame, CliError> {
    let raw: RawGame = serde_json::from_str(text).map_err(CliError::Json)?;
    let catcher = raw.catcher.build(&raw.sites, "catcher", CATCHER_ID.into())?;
    let evaders = raw
        .evaders
        .iter()
        .enumerate()
        .map(|(k, e)| e.build(&raw.sites, &format!("evaders[{k}]"), format!("e{}", k + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut game = CEGame::new(raw.sites, catcher, evaders)?;
    game.annotations = raw.annotations;
    Ok(game)
}

/// Parses a game file and checks every game invariant.
pub fn parse_game(text: &str) -> Result<CEGame, CliError> {
    let game = parse_game_unchecked(text)?;
    let violations = validate_game(&game);
    if violations.is_empty() {
        Ok(game)
    } else {
        Err(Error::Validation(violations).into())
    }
}

/// Site-ordered map of per-site values, or a scalar when they all agree.
pub struct SiteValues<'a> {
    pub sites: &'a [String],
    pub values: &'a [f64],
}

impl Serialize for SiteValues<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some((first, rest)) = self.values.split_first() {
            if rest.iter().all(|v| v.to_bits() == first.to_bits()) {
                return s.serialize_f64(*first);
            }
        }
        if self.sites.iter().collect::<HashSet<_>>().len() != self.sites.len() {
            return self.values.serialize(s);
        }
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (k, v) in self.sites.iter().zip(self.values) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct PlayerOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<&'a str>,
    resource: f64,
    limits: SiteValues<'a>,
    a: SiteValues<'a>,
    b: SiteValues<'a>,
    c: SiteValues<'a>,
    d: SiteValues<'a>,
}

impl<'a> PlayerOut<'a> {
    fn new(sites: &'a [String], p: &'a PlayerParams, omit_id: bool) -> Self {
        let v = |values: &'a [f64]| SiteValues { sites, values };
        PlayerOut {
            id: (!omit_id).then_some(p.id.as_str()),
            resource: p.resource,
            limits: v(&p.limit),
            a: v(&p.a),
            b: v(&p.b),
            c: v(&p.c),
            d: v(&p.d),
        }
    }
}

#[derive(Serialize)]
struct GameOut<'a> {
    sites: &'a [String],
    catcher: PlayerOut<'a>,
    evaders: Vec<PlayerOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annotations: Option<&'a Annotations>,
}

/// Pretty-printed game file.
pub fn serialize_game(game: &CEGame) -> String {
    let sites = &game.sites;
    let out = GameOut {
        sites,
        catcher: PlayerOut::new(sites, game.catcher(), game.catcher().id == CATCHER_ID),
        evaders: game.evaders().iter().map(|e| PlayerOut::new(sites, e, false)).collect(),
        annotations: game.annotations.as_ref(),
    };
    serde_json::to_string_pretty(&out).expect("game serialization cannot fail")
}
