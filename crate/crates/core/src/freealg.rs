//! Words and polynomials in the free associative algebra k⟨X⟩.
//!
//! Generators are identified by their rank in the alphabet: rank 0 is the
//! greatest letter. Because of that convention the deg-lex order on words is
//! a property of the [`Word`] type itself (`Ord`), so polynomials can be kept
//! in ordered maps without carrying the alphabet around.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Index of a generator in its alphabet (0 = greatest).
pub type Letter = u32;

/// An ordered, duplicate-free list of generator names, greatest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    /// `names` is the descending order of the generators.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        for (rank, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::Input(format!("invalid generator name `{name}`")));
            }
            if index.insert(name.to_string(), rank as Letter).is_some() {
                return Err(Error::Input(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Alphabet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names
            .iter()
            .map(|n| self.letter(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parses `x*y*x`; `1` or the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let parts: Vec<&str> = text.split('*').map(str::trim).collect();
        self.word(&parts)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("*")
    }

    pub fn order(&self) -> DegLex {
        DegLex { size: self.len() }
    }

    /// Appends letters after the existing ones; they become the smallest generators.
    pub fn extended<S: AsRef<str>>(&self, lower: &[S]) -> Result<Alphabet> {
        let mut names = self.names.clone();
        names.extend(lower.iter().map(|s| s.as_ref().to_string()));
        Alphabet::new(&names)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// A word over an alphabet; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn deg(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`
    pub fn sandwich(&self, a: &Word, b: &Word) -> Word {
        let mut v = Vec::with_capacity(a.0.len() + self.0.len() + b.0.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Start positions of every occurrence of `pat` (which must be nonempty).
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.is_empty() || pat.deg() > self.deg() {
            return Vec::new();
        }
        self.0
            .windows(pat.deg())
            .enumerate()
            .filter_map(|(i, w)| (w == pat.0.as_slice()).then_some(i))
            .collect()
    }

    pub fn contains(&self, pat: &Word) -> bool {
        !pat.is_empty() && pat.deg() <= self.deg() && self.0.windows(pat.deg()).any(|w| w == pat.0.as_slice())
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }
}

/// Deg-lex: longer words are greater; equal lengths compare letter by letter,
/// where a smaller rank is a greater letter.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The deg-lex monomial order over an alphabet of a given size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegLex {
    size: usize,
}

impl DegLex {
    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering> {
        for w in [u, v] {
            if let Some(l) = w.max_letter() {
                if l as usize >= self.size {
                    return Err(Error::UnknownGenerator(format!("#{l}")));
                }
            }
        }
        Ok(u.cmp(v))
    }
}

/// A polynomial with exact coefficients, no stored zeros.
///
/// Terms are kept in a `BTreeMap` keyed by deg-lex, so the leading word is
/// the last key and [`Poly::terms`] iterates in descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: Scalar, word: Word) -> Self {
        let field = coeff.field();
        let mut p = Poly::zero(field);
        p.add_term(word, &coeff);
        p
    }

    pub fn word(field: Field, word: Word) -> Self {
        Poly::monomial(field.one(), word)
    }

    /// Combines like terms and drops zeros. All coefficients must be in `field`.
    pub fn from_terms<I>(field: Field, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, Word)>,
    {
        let mut p = Poly::zero(field);
        for (c, w) in raw {
            if c.field() != field {
                return Err(Error::MixedFields(field.to_string(), c.field().to_string()));
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_one())
    }

    pub fn contains_empty_word(&self) -> bool {
        self.terms.contains_key(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &Scalar) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(c * d));
        }
    }

    /// `self += c · a · other · b`
    pub fn add_sandwich(&mut self, c: &Scalar, a: &Word, other: &Poly, b: &Word) {
        for (w, d) in &other.terms {
            self.add_term(w.sandwich(a, b), &(c * d));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &self.field.one());
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-self.field.one());
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut r = Poly::zero(self.field);
        r.add_assign_scaled(self, c);
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    /// `a · self · b`
    pub fn sandwich(&self, a: &Word, b: &Word) -> Poly {
        let mut r = Poly::zero(self.field);
        r.add_sandwich(&self.field.one(), a, self, b);
        r
    }

    /// Scales so the leading coefficient is 1. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn max_deg(&self) -> usize {
        self.leading_word().map_or(0, Word::deg)
    }

    /// Canonical text: terms descending, `2*x*y - 1/3*y`, `0` for zero.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if w.is_empty() {
                let _ = write!(out, "{mag}");
            } else if mag.is_one() {
                out.push_str(&alphabet.render_word(w));
            } else {
                let _ = write!(out, "{mag}*{}", alphabet.render_word(w));
            }
        }
        out
    }
}
