//! Length-reducing string rewriting over a generator alphabet.
//!
//! Every system contains the free reductions `x·x⁻¹ → ε`, and every rule
//! strictly shortens the word, so rewriting always terminates. Confluence is
//! therefore equivalent to all critical pairs rejoining.

mod extract;
mod text;

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{GeneratorAlphabet, Letter, Word};
use crate::error::{Error, Result};

pub use extract::{cross_validate, extract_rws, rules_from_iec_word, CrossValidation, Extraction, SampleFailure};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }

    fn key(&self) -> (&[Letter], &[Letter]) {
        (self.lhs.letters(), self.rhs.letters())
    }
}

/// An immutable rule list: free reductions first, then the remaining rules,
/// each group sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: GeneratorAlphabet,
    rules: Vec<Rule>,
    free_count: usize,
    /// Rule indices keyed by the first letter of their left-hand side, in
    /// rule order.
    by_first: Vec<Vec<usize>>,
    max_lhs: usize,
}

impl RewritingSystem {
    /// Adds the free reductions and orders the rules. Rules that do not
    /// shorten the word, or use letters outside the alphabet, are rejected.
    pub fn new(alphabet: GeneratorAlphabet, rules: impl IntoIterator<Item = Rule>) -> Result<Self> {
        let free: BTreeSet<Rule> = alphabet
            .letters()
            .map(|a| Rule::new(Word(vec![a, alphabet.inv(a)]), Word::empty()))
            .collect();
        let mut rest = BTreeSet::new();
        for r in rules {
            for &l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                if l >= alphabet.len() {
                    return Err(Error::UnknownToken(format!("letter #{l}")));
                }
            }
            if r.lhs.len() <= r.rhs.len() {
                return Err(Error::NotLengthReducing {
                    lhs: alphabet.render(&r.lhs),
                    rhs: alphabet.render(&r.rhs),
                });
            }
            if !free.contains(&r) {
                rest.insert(r);
            }
        }
        let mut sorted_free: Vec<Rule> = free.into_iter().collect();
        sorted_free.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut sorted_rest: Vec<Rule> = rest.into_iter().collect();
        sorted_rest.sort_by(|a, b| a.key().cmp(&b.key()));
        let free_count = sorted_free.len();
        let rules: Vec<Rule> = sorted_free.into_iter().chain(sorted_rest).collect();
        let mut by_first = vec![Vec::new(); alphabet.len()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.letters()[0]].push(i);
        }
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        Ok(RewritingSystem {
            alphabet,
            rules,
            free_count,
            by_first,
            max_lhs,
        })
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// The non-free rules.
    pub fn extra_rules(&self) -> &[Rule] {
        &self.rules[self.free_count..]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn render_rule(&self, r: &Rule) -> String {
        format!("{} -> {}", self.alphabet.render(&r.lhs), self.alphabet.render(&r.rhs))
    }

    pub fn rule_strings(&self) -> Vec<String> {
        self.rules.iter().map(|r| self.render_rule(r)).collect()
    }

    fn matches_at(&self, w: &[Letter], p: usize, rule: usize) -> bool {
        let lhs = self.rules[rule].lhs.letters();
        w.len() - p >= lhs.len() && &w[p..p + lhs.len()] == lhs
    }

    /// First rule (in rule order) whose left-hand side occurs at `p`.
    fn rule_at(&self, w: &[Letter], p: usize) -> Option<usize> {
        self.by_first[w[p]]
            .iter()
            .copied()
            .find(|&i| self.matches_at(w, p, i))
    }

    fn apply(&self, w: &mut Vec<Letter>, p: usize, rule: usize) {
        let r = &self.rules[rule];
        w.splice(p..p + r.lhs.len(), r.rhs.letters().iter().copied());
    }

    /// Leftmost-first normal form together with the number of rewrite steps.
    pub fn normalize_counted(&self, w: &Word) -> (Word, usize) {
        let mut cur = w.0.clone();
        let mut steps = 0;
        let mut p = 0;
        while p < cur.len() {
            match self.rule_at(&cur, p) {
                Some(i) => {
                    self.apply(&mut cur, p, i);
                    steps += 1;
                    // Nothing ending before p changed.
                    p = p.saturating_sub(self.max_lhs - 1);
                }
                None => p += 1,
            }
        }
        assert!(
            steps <= w.len() && w.len() - cur.len() >= steps,
            "rewriting must shorten the word at each step"
        );
        (Word(cur), steps)
    }

    /// Repeatedly rewrites at the leftmost position where some rule applies,
    /// using the first such rule.
    pub fn normalize(&self, w: &Word) -> Word {
        self.normalize_counted(w).0
    }

    /// Normalises by picking uniformly among all applicable `(position,
    /// rule)` redexes at each step.
    pub fn normalize_random<R: Rng + ?Sized>(&self, w: &Word, rng: &mut R) -> Word {
        let mut cur = w.0.clone();
        loop {
            let redexes: Vec<(usize, usize)> = (0..cur.len())
                .flat_map(|p| {
                    let cur = &cur;
                    self.by_first[cur[p]]
                        .iter()
                        .filter(move |&&i| self.matches_at(cur, p, i))
                        .map(move |&i| (p, i))
                })
                .collect();
            if redexes.is_empty() {
                return Word(cur);
            }
            let (p, i) = redexes[rng.gen_range(0..redexes.len())];
            self.apply(&mut cur, p, i);
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        (0..w.len()).all(|p| self.rule_at(w.letters(), p).is_none())
    }
}

/// A word with two distinct one-step reductions, and where they lead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub rules: (usize, usize),
    pub overlap: Word,
    pub reducts: (Word, Word),
    pub normal_forms: (Word, Word),
    pub resolved: bool,
}

fn splice(w: &[Letter], at: usize, len: usize, by: &[Letter]) -> Word {
    let mut v = w[..at].to_vec();
    v.extend_from_slice(by);
    v.extend_from_slice(&w[at + len..]);
    Word(v)
}

fn pair(sys: &RewritingSystem, rules: (usize, usize), overlap: Vec<Letter>, left: Word, right: Word) -> CriticalPair {
    let normal_forms = (sys.normalize(&left), sys.normalize(&right));
    CriticalPair {
        rules,
        overlap: Word(overlap),
        resolved: normal_forms.0 == normal_forms.1,
        reducts: (left, right),
        normal_forms,
    }
}

/// Critical pairs of rule `i` against every rule: proper overlaps where a
/// suffix of `lhs_i` is a prefix of `lhs_j`, and occurrences of `lhs_j`
/// inside `lhs_i`.
fn pairs_of(sys: &RewritingSystem, i: usize) -> Vec<CriticalPair> {
    let ri = &sys.rules[i];
    let li = ri.lhs.letters();
    let mut out = Vec::new();
    for (j, rj) in sys.rules.iter().enumerate() {
        let lj = rj.lhs.letters();
        for k in 1..li.len().min(lj.len()) {
            if li[li.len() - k..] == lj[..k] {
                let mut overlap = li.to_vec();
                overlap.extend_from_slice(&lj[k..]);
                let left = ri.rhs.concat(&Word(lj[k..].to_vec()));
                let right = splice(&overlap, li.len() - k, lj.len(), rj.rhs.letters());
                out.push(pair(sys, (i, j), overlap, left, right));
            }
        }
        if i == j || lj.len() > li.len() || (lj == li && j < i) {
            continue;
        }
        for p in 0..=li.len() - lj.len() {
            if li[p..p + lj.len()] == *lj {
                let right = splice(li, p, lj.len(), rj.rhs.letters());
                out.push(pair(sys, (i, j), li.to_vec(), ri.rhs.clone(), right));
            }
        }
    }
    out
}

/// All critical pairs, ordered by the first rule, then the second, then the
/// overlap position.
pub fn find_critical_pairs(sys: &RewritingSystem) -> Vec<CriticalPair> {
    (0..sys.rules.len())
        .into_par_iter()
        .map(|i| pairs_of(sys, i))
        .collect::<Vec<_>>()
        .concat()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedPair {
    pub rules: [String; 2],
    pub overlap: String,
    pub reducts: [String; 2],
    pub normal_forms: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub rules: usize,
    pub critical_pairs: usize,
    pub unresolved: Vec<UnresolvedPair>,
}

pub fn check_confluence(sys: &RewritingSystem) -> ConfluenceReport {
    let pairs = find_critical_pairs(sys);
    let a = sys.alphabet();
    let unresolved: Vec<UnresolvedPair> = pairs
        .iter()
        .filter(|p| !p.resolved)
        .map(|p| UnresolvedPair {
            rules: [sys.render_rule(&sys.rules[p.rules.0]), sys.render_rule(&sys.rules[p.rules.1])],
            overlap: a.render(&p.overlap),
            reducts: [a.render(&p.reducts.0), a.render(&p.reducts.1)],
            normal_forms: [a.render(&p.normal_forms.0), a.render(&p.normal_forms.1)],
        })
        .collect();
    ConfluenceReport {
        confluent: unresolved.is_empty(),
        rules: sys.len(),
        critical_pairs: pairs.len(),
        unresolved,
    }
}

/// A system whose critical pairs have all been checked to rejoin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluentSystem(RewritingSystem);

impl ConfluentSystem {
    pub fn certify(sys: RewritingSystem) -> Result<Self> {
        if check_confluence(&sys).confluent {
            Ok(ConfluentSystem(sys))
        } else {
            Err(Error::NotConfluent)
        }
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.0
    }

    pub fn into_inner(self) -> RewritingSystem {
        self.0
    }
}

impl std::ops::Deref for ConfluentSystem {
    type Target = RewritingSystem;

    fn deref(&self) -> &RewritingSystem {
        &self.0
    }
}

/// Decides equality in the presented group.
pub fn words_equal(sys: &ConfluentSystem, w1: &Word, w2: &Word) -> bool {
    sys.normalize(w1) == sys.normalize(w2)
}
