use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{words_equal, ConfluentSystem, RewritingSystem, Rule};
use crate::alphabet::{GeneratorAlphabet, Word};
use crate::error::{Error, Result};
use crate::graph::require_geodetic;
use crate::groups::ball::{cayley_ball, evaluate_word, Evaluation, LabeledBall};
use crate::groups::GroupSpec;
use crate::iec::IecInventory;

/// Rules `u → v` with `u·v⁻¹` a rotation of the cyclic word `c` or of its
/// inverse, `|u| = n + 1` and `|v| = n` for `|c| = 2n + 1`.
pub fn rules_from_iec_word(alphabet: &GeneratorAlphabet, c: &Word) -> Result<Vec<Rule>> {
    let len = c.len();
    if len < 3 || len.is_multiple_of(2) {
        return Err(Error::InvalidCircuit(format!(
            "circuit label word must have odd length at least 3, got {len}"
        )));
    }
    if let Some(&l) = c.letters().iter().find(|&&l| l >= alphabet.len()) {
        return Err(Error::UnknownToken(format!("letter #{l}")));
    }
    let n = len / 2;
    let backward = alphabet.inverse_word(c);
    let mut rules = BTreeSet::new();
    for x in [c, &backward] {
        for r in 0..len {
            let rot: Vec<_> = x.letters()[r..].iter().chain(&x.letters()[..r]).copied().collect();
            let u = Word(rot[..=n].to_vec());
            let v = alphabet.inverse_word(&Word(rot[n + 1..].to_vec()));
            rules.insert(Rule::new(u, v));
        }
    }
    Ok(rules.into_iter().collect())
}

/// An extracted system with the circuit words it came from.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub system: RewritingSystem,
    /// Label words of the IECs through the identity, read along their
    /// canonical orientation.
    pub iec_words: Vec<Word>,
    pub warnings: Vec<String>,
}

/// Free reductions plus the rules of every IEC through the identity.
///
/// A warning is attached when such an IEC reaches the boundary sphere of
/// the ball: longer circuits could then be cut off.
pub fn extract_rws(ball: &LabeledBall, inv: &IecInventory) -> Result<Extraction> {
    require_geodetic(&ball.graph)?;
    let id = ball.identity();
    let mut rules = Vec::new();
    let mut iec_words = Vec::new();
    let mut deepest = 0;
    for theta in inv.iecs.iter().filter(|t| t.contains(id)) {
        let word = ball.read_labels(theta.canon()).ok_or_else(|| {
            Error::Precondition(format!(
                "IEC {:?} uses an edge without a generator label",
                ball.graph.render(theta.canon())
            ))
        })?;
        rules.extend(rules_from_iec_word(&ball.alphabet, &word)?);
        iec_words.push(word);
        deepest = deepest.max(theta.cycle().iter().map(|&v| ball.depth(v)).max().unwrap_or(0));
    }
    let mut warnings = Vec::new();
    if !iec_words.is_empty() && deepest >= ball.radius {
        warnings.push(format!(
            "an IEC through the identity reaches the ball boundary at radius {}; \
             longer circuits may be missing",
            ball.radius
        ));
    }
    Ok(Extraction {
        system: RewritingSystem::new(ball.alphabet.clone(), rules)?,
        iec_words,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub kind: String,
    pub word: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub radius: usize,
    pub equality_checks: usize,
    pub equality_disagreements: usize,
    pub length_checks: usize,
    pub length_mismatches: usize,
    pub soundness_failures: usize,
    /// Samples whose evaluation left the ball.
    pub skipped: Vec<String>,
    pub failures: Vec<SampleFailure>,
    pub passed: bool,
}

fn random_word<R: Rng>(rng: &mut R, letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(0..letters)).collect())
}

/// Checks the system against free-product normal forms and ball distances
/// on seeded random words of length at most `max_len`.
///
/// Each sample `w` is compared for equality with the oracle's geodesic word
/// for `w` and with an independent random word. Its normal form must
/// represent the same element and have the length of the BFS distance to
/// that element in a ball of `radius` (default `max_len`).
pub fn cross_validate(
    sys: &ConfluentSystem,
    spec: &GroupSpec,
    samples: usize,
    max_len: usize,
    seed: u64,
    radius: Option<usize>,
) -> Result<CrossValidation> {
    if sys.alphabet() != spec.alphabet() {
        return Err(Error::Precondition(
            "rewriting system and group use different alphabets".into(),
        ));
    }
    let radius = radius.unwrap_or(max_len).max(1);
    let ball = cayley_ball(spec, radius)?;
    let dist = ball.graph.distances_from(ball.identity());
    let a = spec.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrossValidation {
        samples,
        max_len,
        seed,
        radius,
        equality_checks: 0,
        equality_disagreements: 0,
        length_checks: 0,
        length_mismatches: 0,
        soundness_failures: 0,
        skipped: Vec::new(),
        failures: Vec::new(),
        passed: false,
    };
    for _ in 0..samples {
        let w = random_word(&mut rng, a.len(), max_len);
        let other = random_word(&mut rng, a.len(), max_len);
        let elem = spec.normal_form(&w);
        for partner in [spec.geodesic_word(&elem), other] {
            report.equality_checks += 1;
            let oracle = spec.normal_form(&partner) == elem;
            if words_equal(sys, &w, &partner) != oracle {
                report.equality_disagreements += 1;
                report.failures.push(SampleFailure {
                    kind: "equality".into(),
                    word: a.render(&w),
                    detail: format!("against {:?}: oracle says {oracle}", a.render(&partner)),
                });
            }
        }
        let nf = sys.normalize(&w);
        if spec.normal_form(&nf) != elem {
            report.soundness_failures += 1;
            report.failures.push(SampleFailure {
                kind: "soundness".into(),
                word: a.render(&w),
                detail: format!("normal form {:?} is a different element", a.render(&nf)),
            });
        }
        match evaluate_word(&ball, &w) {
            Evaluation::Vertex(v) => {
                report.length_checks += 1;
                let d = dist[v].map(|d| d as usize);
                if d != Some(nf.len()) {
                    report.length_mismatches += 1;
                    report.failures.push(SampleFailure {
                        kind: "length".into(),
                        word: a.render(&w),
                        detail: format!(
                            "normal form {:?} has length {}, ball distance is {d:?}",
                            a.render(&nf),
                            nf.len()
                        ),
                    });
                }
            }
            Evaluation::OutOfBall { .. } => report.skipped.push(a.render(&w)),
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}
