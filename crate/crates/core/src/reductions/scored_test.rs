use serde::Deserialize;

use super::swap_roles;
use crate::error::{Error, Result};
use crate::game::{CEGame, PlayerParams};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Question {
    pub id: String,
    pub score: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TakerType {
    #[serde(default)]
    pub id: Option<String>,
    pub probability: f64,
    pub importance: f64,
    /// Ids of the questions this type cannot answer without memorizing.
    pub hard: Vec<String>,
    /// How many questions this type can memorize.
    pub memorization: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestGameSpec {
    pub questions: Vec<Question>,
    /// Number of questions on the test.
    pub length: f64,
    pub types: Vec<TakerType>,
}

/// Tester as player 0 choosing which questions to ask, takers as the
/// other players choosing which hard questions to memorize. The tester's
/// `d` is negative here, so this form is not a valid catcher-evader game.
pub fn test_to_ce_pre_swap(spec: &TestGameSpec) -> Result<CEGame> {
    let m = spec.questions.len();
    if spec.length > m as f64 {
        return Err(Error::InvalidInput(format!("test length {} exceeds the {m} questions", spec.length)));
    }
    let sites: Vec<String> = spec.questions.iter().map(|q| q.id.clone()).collect();
    let index = |id: &str| {
        sites
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown question '{id}'")))
    };

    let mut tester = PlayerParams::new("tester", spec.length, 1.0, m);
    let mut takers = Vec::with_capacity(spec.types.len());
    for (k, ty) in spec.types.iter().enumerate() {
        let id = ty.id.clone().unwrap_or_else(|| format!("taker{}", k + 1));
        if ty.memorization > m as f64 {
            return Err(Error::InvalidInput(format!("{id} memorizes more than the {m} questions")));
        }
        let pv = ty.probability * ty.importance;
        if pv == 0.0 {
            return Err(Error::InvalidInput(format!("{id} has zero probability times importance")));
        }
        let mut e = PlayerParams::new(id, pv * ty.memorization, pv, m);
        for h in &ty.hard {
            let q = index(h)?;
            let question = &spec.questions[q];
            e.a[q] = -question.score;
            e.d[q] = question.score / pv;
            tester.b[q] += question.weight * pv;
        }
        takers.push(e);
    }
    for (q, question) in spec.questions.iter().enumerate() {
        tester.d[q] = -question.weight;
    }
    CEGame::new(sites, tester, takers)
}

/// [`test_to_ce_pre_swap`] followed by [`swap_roles`]: the tester becomes a
/// catcher choosing which questions to leave out.
pub fn test_to_ce(spec: &TestGameSpec) -> Result<CEGame> {
    test_to_ce_pre_swap(spec).map(|g| swap_roles(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{validate_game, Violation};
    use crate::profile::{player_utility, StrategyProfile};

    fn single() -> TestGameSpec {
        TestGameSpec {
            questions: vec![Question {
                id: "q".into(),
                score: 5.0,
                weight: 4.0,
            }],
            length: 1.0,
            types: vec![TakerType {
                id: None,
                probability: 1.0,
                importance: 1.0,
                hard: vec!["q".into()],
                memorization: 1.0,
            }],
        }
    }

    fn row(p: &PlayerParams) -> [f64; 4] {
        [p.a[0], p.b[0], p.c[0], p.d[0]]
    }

    #[test]
    fn single_question_rows() {
        let pre = test_to_ce_pre_swap(&single()).unwrap();
        assert_eq!(row(pre.catcher()), [0.0, 4.0, 0.0, -4.0]);
        assert_eq!(row(pre.player(1)), [-5.0, 0.0, 0.0, 5.0]);
        let post = test_to_ce(&single()).unwrap();
        assert_eq!(row(post.catcher()), [-4.0, -4.0, 4.0, 4.0]);
        assert_eq!(row(post.player(1)), [5.0, 5.0, -5.0, -5.0]);
        assert_eq!(post.catcher().resource, 0.0);
        assert!(validate_game(&post).is_empty());
    }

    #[test]
    fn easy_questions_cost_nothing() {
        let mut spec = single();
        spec.questions.push(Question {
            id: "easy".into(),
            score: 3.0,
            weight: 1.0,
        });
        let pre = test_to_ce_pre_swap(&spec).unwrap();
        assert_eq!(pre.player(1).a[1], 0.0);
        assert_eq!(pre.player(1).d[1], 0.0);
        assert_eq!(pre.catcher().b[1], 0.0);
        // The taker's zero delta on an easy question is outside the solver's
        // strict sign requirement.
        let post = test_to_ce(&spec).unwrap();
        assert!(validate_game(&post)
            .iter()
            .any(|v| matches!(v, Violation::EvaderDeltaNotNegative { .. })));
    }

    #[test]
    fn taker_utility_is_expected_score_loss() {
        // Asking q with probability x0 and memorizing it with probability
        // P means an expected loss of s * x0 * (1 - P).
        let spec = TestGameSpec {
            questions: vec![Question {
                id: "q".into(),
                score: 5.0,
                weight: 2.0,
            }],
            length: 1.0,
            types: vec![TakerType {
                id: None,
                probability: 0.5,
                importance: 0.8,
                hard: vec!["q".into()],
                memorization: 1.0,
            }],
        };
        let g = test_to_ce_pre_swap(&spec).unwrap();
        let pv = 0.4;
        for (x0, memo) in [(1.0, 0.0), (1.0, 0.5), (0.3, 0.25)] {
            let x = StrategyProfile::from_rows(vec![vec![x0], vec![pv * memo]]);
            let expected = -5.0 * x0 * (1.0 - memo);
            assert!((player_utility(&g, &x, 1) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn unknown_hard_question() {
        let mut spec = single();
        spec.types[0].hard.push("nope".into());
        assert!(test_to_ce(&spec).is_err());
    }
}
