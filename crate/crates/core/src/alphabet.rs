//! Generator alphabets with a formal inverse, and words over them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol in a [`GeneratorAlphabet`].
pub type Letter = usize;

/// Token reserved for the empty word in textual forms.
pub const EMPTY_WORD_TOKEN: &str = "1";

/// Ordered generator tokens closed under an involution. Fixed points model
/// generators that are their own inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAlphabet {
    symbols: Vec<String>,
    inverse: Vec<Letter>,
    index: HashMap<String, Letter>,
}

pub fn valid_token(t: &str) -> bool {
    !t.is_empty()
        && t != EMPTY_WORD_TOKEN
        && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GeneratorAlphabet {
    /// `inverse[i]` is the index of the inverse of `symbols[i]`.
    pub fn new(symbols: Vec<String>, inverse: Vec<Letter>) -> Result<Self> {
        if symbols.len() != inverse.len() {
            return Err(Error::InvalidParameter(
                "alphabet needs one inverse per symbol".into(),
            ));
        }
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if !valid_token(s) {
                return Err(Error::InvalidParameter(format!("invalid token {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate token {s:?}")));
            }
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= symbols.len() || inverse[j] != i {
                return Err(Error::InvalidParameter(format!(
                    "inverse map is not an involution at {:?}",
                    symbols[i]
                )));
            }
        }
        Ok(GeneratorAlphabet {
            symbols,
            inverse,
            index,
        })
    }

    /// Builds an alphabet from `(symbol, inverse symbol)` pairs; a pair with
    /// no inverse declares a self-inverse symbol. Symbols are ordered by first
    /// mention.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, Option<S>)]) -> Result<Self> {
        let mut symbols: Vec<String> = Vec::new();
        let mut inv: Vec<Option<Letter>> = Vec::new();
        let intern = |s: &str, symbols: &mut Vec<String>, inv: &mut Vec<Option<Letter>>| {
            match symbols.iter().position(|x| x == s) {
                Some(i) => i,
                None => {
                    symbols.push(s.to_string());
                    inv.push(None);
                    symbols.len() - 1
                }
            }
        };
        for (a, b) in pairs {
            let i = intern(a.as_ref(), &mut symbols, &mut inv);
            let j = match b {
                Some(b) => intern(b.as_ref(), &mut symbols, &mut inv),
                None => i,
            };
            for (x, y) in [(i, j), (j, i)] {
                match inv[x] {
                    Some(prev) if prev != y => {
                        return Err(Error::InvalidParameter(format!(
                            "conflicting inverses declared for {:?}",
                            symbols[x]
                        )))
                    }
                    _ => inv[x] = Some(y),
                }
            }
        }
        let inverse = inv.into_iter().map(|x| x.expect("every symbol paired")).collect();
        GeneratorAlphabet::new(symbols, inverse)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.symbols.len()
    }

    pub fn symbol(&self, l: Letter) -> &str {
        &self.symbols[l]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn inv(&self, l: Letter) -> Letter {
        self.inverse[l]
    }

    pub fn letter(&self, token: &str) -> Result<Letter> {
        self.index
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownToken(token.to_string()))
    }

    /// Parses whitespace-separated tokens; the lone token `1` is the empty
    /// word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == [EMPTY_WORD_TOKEN] {
            return Ok(Word::empty());
        }
        tokens
            .into_iter()
            .map(|t| self.letter(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return EMPTY_WORD_TOKEN.to_string();
        }
        w.0.iter()
            .map(|&l| self.symbols[l].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Formal inverse: reverse the word and invert each letter.
    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&l| self.inverse[l]).collect())
    }
}

/// A word over an alphabet; the empty word is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
