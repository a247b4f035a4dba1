//! Reductions into catcher-evader games.
//!
//! Each source problem has a typed spec that deserializes from JSON with a
//! `"kind"` tag. [`builtin_reductions`] maps a kind name to a reduction that
//! takes the raw document.

mod matching;
mod scored_test;
mod security;
mod swap;

use std::sync::OnceLock;

use serde::Deserialize;

pub use matching::{extract_matching, matching_to_ce, MatchingEdge, MatchingFlow, MatchingSpec, MatchingVertex};
pub use scored_test::{test_to_ce, test_to_ce_pre_swap, Question, TakerType, TestGameSpec};
pub use security::{security_to_ce, AttackerType, DefenderSpec, SecurityGameSpec};
pub use swap::{swap_profile, swap_roles};

use crate::error::{Error, Result};
use crate::game::CEGame;
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionSpec {
    Security(SecurityGameSpec),
    Test(TestGameSpec),
    Matching(MatchingSpec),
}

impl ReductionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionSpec::Security(_) => "security",
            ReductionSpec::Test(_) => "test",
            ReductionSpec::Matching(_) => "matching",
        }
    }

    pub fn reduce(&self) -> Result<CEGame> {
        match self {
            ReductionSpec::Security(s) => security_to_ce(s),
            ReductionSpec::Test(s) => test_to_ce(s),
            ReductionSpec::Matching(s) => matching_to_ce(s),
        }
    }
}

pub trait Reduction: Named + Send + Sync {
    fn reduce(&self, spec: &serde_json::Value) -> Result<CEGame>;
}

struct ByKind {
    kind: &'static str,
    description: &'static str,
}

impl Named for ByKind {
    fn name(&self) -> &'static str {
        self.kind
    }

    fn description(&self) -> &'static str {
        self.description
    }
}

impl Reduction for ByKind {
    fn reduce(&self, spec: &serde_json::Value) -> Result<CEGame> {
        let spec: ReductionSpec =
            serde_json::from_value(spec.clone()).map_err(|e| Error::InvalidInput(format!("{} spec: {e}", self.kind)))?;
        if spec.kind() != self.kind {
            return Err(Error::InvalidInput(format!(
                "spec has kind '{}', expected '{}'",
                spec.kind(),
                self.kind
            )));
        }
        spec.reduce()
    }
}

pub fn builtin_reductions() -> &'static Registry<dyn Reduction> {
    static REG: OnceLock<Registry<dyn Reduction>> = OnceLock::new();
    REG.get_or_init(|| {
        let all: [(&'static str, &'static str); 3] = [
            ("security", "security game with attacker types"),
            ("test", "scored test with taker types, returned in catcher form"),
            ("matching", "min-cost balanced fractional bipartite matching"),
        ];
        all.into_iter().fold(Registry::new("reduction"), |reg, (kind, description)| {
            let r: Box<dyn Reduction> = Box::new(ByKind { kind, description });
            reg.with(r)
        })
    })
}
