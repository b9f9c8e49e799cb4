//! Free products of finite groups: specifications, exact arithmetic through
//! the free-product normal form, Cayley balls, and graph families.

pub mod ball;
pub mod families;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{valid_token, GeneratorAlphabet, Letter, Word};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table, with the generator
/// tokens it contributes to the product alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFactor {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteFactor {
    pub fn cyclic(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidGroup(format!(
                "cyclic order must be at least 2, got {order}"
            )));
        }
        let names = (0..order)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        let mul = (0..order)
            .map(|i| (0..order).map(|j| (i + j) % order).collect())
            .collect();
        let inverse = (0..order).map(|k| (order - k) % order).collect();
        Ok(FiniteFactor {
            names,
            mul,
            identity: 0,
            inverse,
        })
    }

    /// Validates closure, identity, inverses and associativity exhaustively.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::InvalidGroup("factor must be nontrivial".into()));
        }
        if identity >= n || mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for x in 0..n {
            if mul[identity][x] != x || mul[x][identity] != x {
                return Err(Error::InvalidGroup(format!(
                    "{:?} is not a two-sided identity",
                    names[identity]
                )));
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| mul[x][y] == identity && mul[y][x] == identity) {
                Some(y) => inverse.push(y),
                None => {
                    return Err(Error::InvalidGroup(format!(
                        "{:?} has no inverse",
                        names[x]
                    )))
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({:?}, {:?}, {:?})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        Ok(FiniteFactor {
            names,
            mul,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    fn generated_by(&self, gens: &[usize]) -> bool {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A nontrivial syllable: an element of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub element: usize,
}

/// Element of a free product in normal form: adjacent syllables come from
/// distinct factors and none is a factor identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Free product of finite groups with its standard generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<FiniteFactor>,
    alphabet: GeneratorAlphabet,
    letter_value: Vec<Syllable>,
    /// Per factor, the shortlex-least geodesic word of each element.
    short_words: Vec<Vec<Vec<Letter>>>,
}

/// On-disk form: `{"factors": [{"cyclic": m, "gen": "a"} | {"table": {...}, "gens": [...]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub factors: Vec<FactorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorFile {
    Cyclic(CyclicFile),
    Table(TableFactorFile),
}

/// `C_m` generated by `gen`; the inverse token defaults to the uppercase form
/// of `gen` and is omitted for `m = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicFile {
    pub cyclic: usize,
    pub gen: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFactorFile {
    pub table: TableFile,
    pub gens: Vec<String>,
}

/// Element names double as generator tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub elements: Vec<String>,
    pub identity: String,
    pub mul: Vec<Vec<String>>,
}

impl GroupSpec {
    /// Free product of cyclic groups `C_m` with generator tokens `gens[i]`.
    pub fn cyclic_product(factors: &[(usize, &str)]) -> Result<Self> {
        GroupSpec::from_file(&GroupSpecFile {
            factors: factors
                .iter()
                .map(|&(m, g)| {
                    FactorFile::Cyclic(CyclicFile {
                        cyclic: m,
                        gen: g.to_string(),
                        inv: None,
                    })
                })
                .collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        GroupSpec::from_file(&file)
    }

    pub fn from_file(file: &GroupSpecFile) -> Result<Self> {
        if file.factors.is_empty() {
            return Err(Error::InvalidGroup("at least one factor is required".into()));
        }
        let mut factors = Vec::new();
        let mut pairs: Vec<(String, Option<String>)> = Vec::new();
        let mut values: HashMap<String, Syllable> = HashMap::new();
        let mut claim = |token: &str, value: Syllable| -> Result<()> {
            if !valid_token(token) {
                return Err(Error::InvalidGroup(format!("invalid generator token {token:?}")));
            }
            match values.insert(token.to_string(), value) {
                Some(prev) if prev != value => Err(Error::InvalidGroup(format!(
                    "token {token:?} names two different generators"
                ))),
                _ => Ok(()),
            }
        };
        for (fi, f) in file.factors.iter().enumerate() {
            match f {
                FactorFile::Cyclic(c) => {
                    let factor = FiniteFactor::cyclic(c.cyclic)?;
                    if c.cyclic == 2 {
                        if c.inv.as_ref().is_some_and(|i| i != &c.gen) {
                            return Err(Error::InvalidGroup(format!(
                                "generator {:?} of order 2 is its own inverse",
                                c.gen
                            )));
                        }
                        claim(&c.gen, Syllable { factor: fi, element: 1 })?;
                        pairs.push((c.gen.clone(), None));
                    } else {
                        let inv = match &c.inv {
                            Some(i) => i.clone(),
                            None => default_inverse_token(&c.gen)?,
                        };
                        claim(&c.gen, Syllable { factor: fi, element: 1 })?;
                        claim(&inv, Syllable { factor: fi, element: c.cyclic - 1 })?;
                        pairs.push((c.gen.clone(), Some(inv)));
                    }
                    factors.push(factor);
                }
                FactorFile::Table(t) => {
                    let lookup = |name: &str| -> Result<usize> {
                        t.table
                            .elements
                            .iter()
                            .position(|e| e == name)
                            .ok_or_else(|| {
                                Error::InvalidGroup(format!("unknown table element {name:?}"))
                            })
                    };
                    let mut sorted = t.table.elements.clone();
                    sorted.sort();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::InvalidGroup("duplicate table element".into()));
                    }
                    let identity = lookup(&t.table.identity)?;
                    let mul = t
                        .table
                        .mul
                        .iter()
                        .map(|row| row.iter().map(|x| lookup(x)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    let factor = FiniteFactor::from_table(t.table.elements.clone(), mul, identity)?;
                    let mut gens = Vec::new();
                    for g in &t.gens {
                        let x = lookup(g)?;
                        if x == identity {
                            return Err(Error::InvalidGroup(format!(
                                "identity {g:?} cannot be a generator"
                            )));
                        }
                        if gens.contains(&x) {
                            return Err(Error::InvalidGroup(format!("duplicate generator {g:?}")));
                        }
                        gens.push(x);
                    }
                    if !factor.generated_by(&gens) {
                        return Err(Error::InvalidGroup(format!(
                            "generators {:?} do not generate factor {fi}",
                            t.gens
                        )));
                    }
                    for &x in &gens {
                        let y = factor.inverse(x);
                        let (gx, gy) = (factor.names[x].clone(), factor.names[y].clone());
                        claim(&gx, Syllable { factor: fi, element: x })?;
                        claim(&gy, Syllable { factor: fi, element: y })?;
                        pairs.push((gx.clone(), (x != y).then_some(gy)));
                    }
                    factors.push(factor);
                }
            }
        }
        let alphabet = GeneratorAlphabet::from_pairs(&pairs)
            .map_err(|e| Error::InvalidGroup(e.to_string()))?;
        let letter_value = alphabet
            .symbols()
            .iter()
            .map(|s| values[s])
            .collect::<Vec<_>>();
        let short_words = (0..factors.len())
            .map(|fi| shortlex_words(&factors[fi], fi, &letter_value))
            .collect();
        Ok(GroupSpec {
            factors,
            alphabet,
            letter_value,
            short_words,
        })
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn factors(&self) -> &[FiniteFactor] {
        &self.factors
    }

    /// Factor element denoted by a generator letter.
    pub fn letter_value(&self, l: Letter) -> Syllable {
        self.letter_value[l]
    }

    /// Right-multiplies by one syllable, merging with a trailing syllable of
    /// the same factor and dropping identities.
    pub fn push_syllable(&self, elem: &mut GroupElement, s: Syllable) {
        let factor = &self.factors[s.factor];
        if s.element == factor.identity {
            return;
        }
        match elem.syllables.last_mut() {
            Some(last) if last.factor == s.factor => {
                let merged = factor.mul(last.element, s.element);
                if merged == factor.identity {
                    elem.syllables.pop();
                } else {
                    last.element = merged;
                }
            }
            _ => elem.syllables.push(s),
        }
    }

    pub fn push_letter(&self, elem: &mut GroupElement, l: Letter) {
        self.push_syllable(elem, self.letter_value[l]);
    }

    /// Left-to-right product of the letters, in normal form.
    pub fn normal_form(&self, w: &Word) -> GroupElement {
        let mut elem = GroupElement::identity();
        for &l in w.letters() {
            self.push_letter(&mut elem, l);
        }
        elem
    }

    /// [`GroupSpec::normal_form`] on tokens, rejecting unknown ones.
    pub fn normal_form_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<GroupElement> {
        let letters = tokens
            .iter()
            .map(|t| self.alphabet.letter(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normal_form(&Word(letters)))
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out = a.clone();
        for &s in &b.syllables {
            self.push_syllable(&mut out, s);
        }
        out
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            syllables: a
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    element: self.factors[s.factor].inverse(s.element),
                })
                .collect(),
        }
    }

    /// Shortlex-least geodesic word for the element: in a free product the
    /// word length is the sum of the syllable lengths in their factors.
    pub fn geodesic_word(&self, a: &GroupElement) -> Word {
        Word(
            a.syllables
                .iter()
                .flat_map(|s| self.short_words[s.factor][s.element].iter().copied())
                .collect(),
        )
    }

    /// Display name used for Cayley-ball vertices: `1` for the identity,
    /// otherwise the tokens of [`GroupSpec::geodesic_word`] joined by `.`.
    pub fn element_name(&self, a: &GroupElement) -> String {
        if a.is_identity() {
            return "1".to_string();
        }
        self.geodesic_word(a)
            .letters()
            .iter()
            .map(|&l| self.alphabet.symbol(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Renders a syllable list as `(factor:element)` pieces.
    pub fn describe(&self, a: &GroupElement) -> String {
        if a.is_identity() {
            return "1".into();
        }
        a.syllables
            .iter()
            .map(|s| {
                format!(
                    "({})",
                    self.short_words[s.factor][s.element]
                        .iter()
                        .map(|&l| self.alphabet.symbol(l))
                        .collect::<String>()
                )
            })
            .collect()
    }
}

fn default_inverse_token(gen: &str) -> Result<String> {
    let upper = gen.to_uppercase();
    if upper == gen {
        return Err(Error::InvalidGroup(format!(
            "generator {gen:?} has no lowercase letters; declare \"inv\" explicitly"
        )));
    }
    Ok(upper)
}

fn shortlex_words(factor: &FiniteFactor, fi: usize, letter_value: &[Syllable]) -> Vec<Vec<Letter>> {
    let letters: Vec<(Letter, usize)> = letter_value
        .iter()
        .enumerate()
        .filter(|(_, s)| s.factor == fi)
        .map(|(l, s)| (l, s.element))
        .collect();
    let mut words: Vec<Option<Vec<Letter>>> = vec![None; factor.order()];
    words[factor.identity] = Some(Vec::new());
    let mut queue = VecDeque::from([factor.identity]);
    while let Some(x) = queue.pop_front() {
        for &(l, g) in &letters {
            let y = factor.mul(x, g);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(l);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words.into_iter().map(|w| w.expect("generators generate the factor")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }

    #[test]
    fn c2_c3_normal_form() {
        let g = GroupSpec::cyclic_product(&[(2, "a"), (3, "b")]).unwrap();
        assert_eq!(g.alphabet().symbols(), &["a", "b", "B"]);
        let e = g.normal_form_tokens(&tokens("a b b a")).unwrap();
        assert_eq!(
            e.syllables,
            vec![
                Syllable { factor: 0, element: 1 },
                Syllable { factor: 1, element: 2 },
                Syllable { factor: 0, element: 1 },
            ]
        );
        assert_eq!(g.describe(&e), "(a)(B)(a)");
    }

    #[test]
    fn cancellation_and_c3_square() {
        let g = GroupSpec::cyclic_product(&[(3, "a"), (3, "b")]).unwrap();
        assert!(g.normal_form_tokens(&tokens("a A")).unwrap().is_identity());
        let aa = g.normal_form_tokens(&tokens("a a")).unwrap();
        assert_eq!(aa, g.normal_form_tokens(&tokens("A")).unwrap());
        assert_eq!(g.element_name(&aa), "A");
        assert_eq!(
            g.normal_form_tokens(&tokens("a z")),
            Err(Error::UnknownToken("z".into()))
        );
    }

    #[test]
    fn c4_square_name_is_shortlex() {
        let g = GroupSpec::cyclic_product(&[(4, "a"), (4, "b")]).unwrap();
        let a2 = g.normal_form_tokens(&tokens("A A")).unwrap();
        assert_eq!(g.element_name(&a2), "a.a");
        let x = g.normal_form_tokens(&tokens("a b B B a")).unwrap();
        assert_eq!(g.multiply(&x, &g.inverse(&x)), GroupElement::identity());
    }

    #[test]
    fn table_factor() {
        // S3 generated by a transposition t and a 3-cycle r.
        let text = r#"{"factors":[{"table":{
            "elements":["e","r","rr","t","tr","trr"],
            "identity":"e",
            "mul":[["e","r","rr","t","tr","trr"],
                   ["r","rr","e","trr","t","tr"],
                   ["rr","e","r","tr","trr","t"],
                   ["t","tr","trr","e","r","rr"],
                   ["tr","trr","t","rr","e","r"],
                   ["trr","t","tr","r","rr","e"]]},
            "gens":["t","r"]}]}"#;
        let g = GroupSpec::from_json(text).unwrap();
        assert_eq!(g.alphabet().symbols(), &["t", "r", "rr"]);
        assert_eq!(g.alphabet().inv(1), 2);
        assert!(g.normal_form_tokens(&tokens("r r r")).unwrap().is_identity());
        assert!(g.normal_form_tokens(&tokens("t r t r")).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GroupSpec::from_json(r#"{"factors":[]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"factors":[{"cyclic":1,"gen":"a"}]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"factors":[{"cyclic":3,"gen":"a","x":1}]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"factors":[{"cyclic":3,"gen":"a"},{"cyclic":2,"gen":"a"}]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"factors":[{"cyclic":3,"gen":"X"}]}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"factors":[{"cyclic":3,"gen":"X","inv":"Y"}]}"#).is_ok());
        // Not associative: a Latin square that is not a group table.
        let bad = r#"{"factors":[{"table":{"elements":["e","x","y"],"identity":"e",
            "mul":[["e","x","y"],["x","x","e"],["y","e","y"]]},"gens":["x"]}]}"#;
        assert!(GroupSpec::from_json(bad).is_err());
    }
}
