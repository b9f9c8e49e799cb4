//! Plain-text form:
//!
//! ```text
//! [alphabet]
//! a A
//! c
//! [rules]
//! a a -> A
//! a A -> 1
//! ```
//!
//! An alphabet line declares a symbol and its inverse, or a self-inverse
//! symbol. `1` is the empty word. Blank lines and `#` comments are ignored.

use super::{RewritingSystem, Rule};
use crate::alphabet::{GeneratorAlphabet, EMPTY_WORD_TOKEN};
use crate::error::{Error, Result};

#[derive(PartialEq)]
enum Section {
    None,
    Alphabet,
    Rules,
}

fn parse_error(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

impl RewritingSystem {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut section = Section::None;
        let mut pairs: Vec<(String, Option<String>)> = Vec::new();
        let mut alphabet: Option<GeneratorAlphabet> = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "[alphabet]" => {
                    if section != Section::None {
                        return Err(parse_error(n, "[alphabet] must come first and only once"));
                    }
                    section = Section::Alphabet;
                    continue;
                }
                "[rules]" => {
                    if section != Section::Alphabet {
                        return Err(parse_error(n, "[rules] must follow [alphabet]"));
                    }
                    section = Section::Rules;
                    alphabet = Some(
                        GeneratorAlphabet::from_pairs(&pairs).map_err(|e| parse_error(n, e))?,
                    );
                    continue;
                }
                _ => {}
            }
            match section {
                Section::None => return Err(parse_error(n, "expected [alphabet]")),
                Section::Alphabet => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    match tokens.as_slice() {
                        [x] => pairs.push((x.to_string(), None)),
                        [x, y] => pairs.push((x.to_string(), Some(y.to_string()))),
                        _ => return Err(parse_error(n, "alphabet lines hold one or two tokens")),
                    }
                }
                Section::Rules => {
                    let a = alphabet.as_ref().expect("set on entering [rules]");
                    let Some((l, r)) = line.split_once("->") else {
                        return Err(parse_error(n, "expected `u -> v`"));
                    };
                    if l.trim().is_empty() || r.trim().is_empty() {
                        return Err(parse_error(
                            n,
                            format!("empty side; write {EMPTY_WORD_TOKEN} for the empty word"),
                        ));
                    }
                    let lhs = a.parse_word(l).map_err(|e| parse_error(n, e))?;
                    let rhs = a.parse_word(r).map_err(|e| parse_error(n, e))?;
                    if lhs.len() <= rhs.len() {
                        return Err(Error::NotLengthReducing {
                            lhs: a.render(&lhs),
                            rhs: a.render(&rhs),
                        });
                    }
                    rules.push(Rule::new(lhs, rhs));
                }
            }
        }
        let alphabet = match (section, alphabet) {
            (Section::Rules, Some(a)) => a,
            (Section::Alphabet, _) => GeneratorAlphabet::from_pairs(&pairs)?,
            _ => return Err(Error::Parse("missing [alphabet] section".into())),
        };
        RewritingSystem::new(alphabet, rules)
    }

    /// Inverse of [`RewritingSystem::from_text`]; free reductions are written
    /// out explicitly.
    pub fn to_text(&self) -> String {
        let a = self.alphabet();
        let mut out = String::from("[alphabet]\n");
        for l in a.letters() {
            let j = a.inv(l);
            if j == l {
                out += &format!("{}\n", a.symbol(l));
            } else if l < j {
                out += &format!("{} {}\n", a.symbol(l), a.symbol(j));
            }
        }
        out += "[rules]\n";
        for s in self.rule_strings() {
            out += &s;
            out.push('\n');
        }
        out
    }
}
