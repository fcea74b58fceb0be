//! Reduction with certificates, compositions, GS-basis checks, bounded
//! completion, minimization and enumeration of irreducible words.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Poly, Word};
use crate::scalar::{Field, Scalar};

/// A named monic relation `h_u = u - f_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub poly: Poly,
}

impl Relation {
    /// The leading word `u`.
    pub fn lead(&self) -> &Word {
        self.poly.leading_word().expect("relations are nonzero")
    }

    /// `f_u`, so that `poly = u - f_u`.
    pub fn tail(&self) -> Poly {
        let mut t = self.poly.neg();
        t.add_term(self.lead().clone(), &self.poly.field().one());
        t
    }
}

/// Generators, coefficient field and a finite set of monic relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    field: Field,
    unital: bool,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Validates and stores the relations, scaling each to be monic.
    pub fn new(alphabet: Alphabet, field: Field, unital: bool, relations: Vec<(String, Poly)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut rels = Vec::with_capacity(relations.len());
        for (name, poly) in relations {
            if name.trim().is_empty() {
                return Err(Error::Input("relation name must be nonempty".into()));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Input(format!("duplicate relation name `{name}`")));
            }
            if poly.field() != field {
                return Err(Error::MixedFields(field.to_string(), poly.field().to_string()));
            }
            if poly.is_zero() {
                return Err(Error::Input(format!("relation `{name}` is zero")));
            }
            for (w, _) in poly.terms() {
                if let Some(l) = w.max_letter() {
                    if l as usize >= alphabet.len() {
                        return Err(Error::UnknownGenerator(format!("#{l} in relation `{name}`")));
                    }
                }
            }
            if !unital && poly.contains_empty_word() {
                return Err(Error::Input(format!(
                    "relation `{name}` contains the empty word in a non-unital presentation"
                )));
            }
            if poly.leading_word().is_some_and(Word::is_empty) {
                return Err(Error::Input(format!("relation `{name}` is a nonzero constant")));
            }
            rels.push(Relation { name, poly: poly.monic() });
        }
        Ok(Presentation { alphabet, field, unital, relations: rels })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unital(&self) -> bool {
        self.unital
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn max_lead_deg(&self) -> usize {
        self.relations.iter().map(|r| r.lead().deg()).max().unwrap_or(0)
    }

    pub fn with_relations(&self, relations: Vec<(String, Poly)>) -> Result<Presentation> {
        Presentation::new(self.alphabet.clone(), self.field, self.unital, relations)
    }

    fn named(&self) -> Vec<(String, Poly)> {
        self.relations.iter().map(|r| (r.name.clone(), r.poly.clone())).collect()
    }

    /// Whether `w` contains the leading word of some relation.
    pub fn is_reducible(&self, w: &Word) -> bool {
        self.relations.iter().any(|r| w.contains(r.lead()))
    }

    /// Normal form under the default strategy.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce(f, self).remainder
    }

    pub fn word_poly(&self, w: Word) -> Poly {
        Poly::word(self.field, w)
    }

    pub fn render(&self) -> String {
        self.relations
            .iter()
            .map(|r| format!("{}: {}", r.name, r.poly.render(&self.alphabet)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// One division step `coeff · left · s · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub coeff: Scalar,
    pub left: Word,
    pub relation: String,
    pub right: Word,
}

/// Certificate `input = Σ coeff·left·s·right + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Poly,
    pub steps: Vec<Step>,
    pub remainder: Poly,
}

impl ReductionTrace {
    /// Rebuilds `Σ αᵢ aᵢ sᵢ bᵢ + remainder`; equals `input` for a valid trace.
    pub fn reconstruct(&self, p: &Presentation) -> Poly {
        let mut acc = self.remainder.clone();
        for s in &self.steps {
            let rel = p.relation(&s.relation).expect("trace names a relation of the presentation");
            acc.add_sandwich(&s.coeff, &s.left, &rel.poly, &s.right);
        }
        acc
    }

    /// The largest word `a·s̄·b` used by any step.
    pub fn max_step_word(&self, p: &Presentation) -> Option<Word> {
        self.steps
            .iter()
            .map(|s| p.relation(&s.relation).unwrap().lead().sandwich(&s.left, &s.right))
            .max()
    }
}

/// Which occurrence of a reducible subword gets rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Deterministic reduction: rewrite the greatest reducible word, at its
/// leftmost occurrence, using the first matching relation by name.
pub fn reduce(f: &Poly, p: &Presentation) -> ReductionTrace {
    reduce_with(f, p, Strategy::Leftmost)
}

pub fn reduce_with(f: &Poly, p: &Presentation, strategy: Strategy) -> ReductionTrace {
    let mut by_name: Vec<&Relation> = p.relations.iter().collect();
    by_name.sort_by(|a, b| a.name.cmp(&b.name));

    let mut current = f.clone();
    let mut remainder = Poly::zero(f.field());
    let mut steps = Vec::new();
    while let Some((w, c)) = current.leading() {
        let (w, c) = (w.clone(), c.clone());
        match find_match(&w, &by_name, strategy) {
            Some((rel, pos)) => {
                let left = w.slice(0, pos);
                let right = w.slice(pos + rel.lead().deg(), w.deg());
                current.add_sandwich(&-&c, &left, &rel.poly, &right);
                steps.push(Step { coeff: c, left, relation: rel.name.clone(), right });
            }
            None => {
                current.add_term(w.clone(), &-&c);
                remainder.add_term(w, &c);
            }
        }
    }
    let trace = ReductionTrace { input: f.clone(), steps, remainder };
    debug_assert_eq!(trace.reconstruct(p), *f, "reduction trace identity");
    trace
}

fn find_match<'a>(w: &Word, rels: &[&'a Relation], strategy: Strategy) -> Option<(&'a Relation, usize)> {
    let n = w.deg();
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::Leftmost => Box::new(0..n),
        Strategy::Rightmost => Box::new((0..n).rev()),
    };
    for pos in positions {
        for rel in rels {
            let lead = rel.lead().letters();
            if pos + lead.len() <= n && &w.letters()[pos..pos + lead.len()] == lead {
                return Some((rel, pos));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionKind::Intersection => "intersection",
            CompositionKind::Inclusion => "inclusion",
        })
    }
}

/// `(f, g)_w = f·left_b − right_a·g·right_b`.
///
/// Intersection: `w = f̄·left_b = right_a·ḡ`, `right_b` empty.
/// Inclusion: `w = f̄ = right_a·ḡ·right_b`, `left_b` empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    pub left: String,
    pub right: String,
    pub w: Word,
    pub left_b: Word,
    pub right_a: Word,
    pub right_b: Word,
    pub value: Poly,
}

impl Composition {
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        format!(
            "w = {} ({}, {}; {})",
            alphabet.render_word(&self.w),
            self.left,
            self.right,
            self.kind
        )
    }

    fn sort_key(&self) -> (&Word, &str, &str, CompositionKind, &Word) {
        (&self.w, &self.left, &self.right, self.kind, &self.right_a)
    }
}

/// Every intersection and inclusion composition, including self-overlaps,
/// ordered by `w` ascending, then relation names.
pub fn compositions(p: &Presentation) -> Vec<Composition> {
    let mut out = Vec::new();
    for (i, f) in p.relations.iter().enumerate() {
        for (j, g) in p.relations.iter().enumerate() {
            let (fl, gl) = (f.lead(), g.lead());
            let (lf, lg) = (fl.deg(), gl.deg());
            for k in 1..lf.min(lg) {
                if fl.letters()[lf - k..] == gl.letters()[..k] {
                    let b = gl.slice(k, lg);
                    let a = fl.slice(0, lf - k);
                    let mut value = f.poly.sandwich(&Word::empty(), &b);
                    value.add_sandwich(&-p.field.one(), &a, &g.poly, &Word::empty());
                    out.push(Composition {
                        kind: CompositionKind::Intersection,
                        left: f.name.clone(),
                        right: g.name.clone(),
                        w: fl.concat(&b),
                        left_b: b,
                        right_a: a,
                        right_b: Word::empty(),
                        value,
                    });
                }
            }
            if i != j {
                for pos in fl.occurrences(gl) {
                    let a = fl.slice(0, pos);
                    let b = fl.slice(pos + lg, lf);
                    let mut value = f.poly.clone();
                    value.add_sandwich(&-p.field.one(), &a, &g.poly, &b);
                    out.push(Composition {
                        kind: CompositionKind::Inclusion,
                        left: f.name.clone(),
                        right: g.name.clone(),
                        w: fl.clone(),
                        left_b: Word::empty(),
                        right_a: a,
                        right_b: b,
                        value,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub composition: Composition,
    pub remainder: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsbReport {
    pub is_basis: bool,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

/// Checks that each composition is trivial modulo `(S, w)`.
pub fn is_gsb(p: &Presentation) -> GsbReport {
    let comps = compositions(p);
    let checked = comps.len();
    let failures: Vec<Failure> = comps
        .into_iter()
        .filter_map(|c| {
            let trace = reduce(&c.value, p);
            let bounded = trace.max_step_word(p).is_none_or(|m| m < c.w);
            (!trace.remainder.is_zero() || !bounded).then_some(Failure { composition: c, remainder: trace.remainder })
        })
        .collect();
    GsbReport { is_basis: failures.is_empty(), checked, failures }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    DegreeTruncated,
    IterationCapped,
}

impl fmt::Display for CompletionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompletionStatus::Complete => "complete",
            CompletionStatus::DegreeTruncated => "degree-truncated",
            CompletionStatus::IterationCapped => "iteration-capped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub presentation: Presentation,
    pub status: CompletionStatus,
    pub added: Vec<String>,
}

/// Degree-bounded completion. Each pass walks the compositions not yet
/// shown trivial in ascending order of `w`; a nonzero normal form becomes a
/// new monic relation `c<k>` immediately. `max_iter` caps the number of passes.
pub fn complete(p: &Presentation, max_deg: usize, max_iter: usize) -> Completion {
    let mut rels = p.named();
    let mut current = p.clone();
    let mut added = Vec::new();
    let mut done: BTreeSet<(String, String, CompositionKind, Word, Word)> = BTreeSet::new();
    let mut counter = 0usize;
    let mut passes = 0usize;

    loop {
        let mut truncated = false;
        let mut grew = false;
        if passes == max_iter {
            let pending = compositions(&current)
                .iter()
                .any(|c| c.w.deg() <= max_deg && !done.contains(&key(c)));
            let status = if pending {
                CompletionStatus::IterationCapped
            } else if compositions(&current).iter().any(|c| c.w.deg() > max_deg) {
                CompletionStatus::DegreeTruncated
            } else {
                CompletionStatus::Complete
            };
            return Completion { presentation: current, status, added };
        }
        passes += 1;
        for c in compositions(&current) {
            if c.w.deg() > max_deg {
                truncated = true;
                continue;
            }
            let k = key(&c);
            if done.contains(&k) {
                continue;
            }
            let rem = reduce(&c.value, &current).remainder;
            done.insert(k);
            if rem.is_zero() {
                continue;
            }
            let name = loop {
                counter += 1;
                let candidate = format!("c{counter}");
                if !rels.iter().any(|(n, _)| *n == candidate) {
                    break candidate;
                }
            };
            rels.push((name.clone(), rem.monic()));
            added.push(name);
            current = current.with_relations(rels.clone()).expect("normal forms are valid relations");
            grew = true;
        }
        if !grew {
            let status = if truncated { CompletionStatus::DegreeTruncated } else { CompletionStatus::Complete };
            return Completion { presentation: current, status, added };
        }
    }
}

fn key(c: &Composition) -> (String, String, CompositionKind, Word, Word) {
    (c.left.clone(), c.right.clone(), c.kind, c.w.clone(), c.right_a.clone())
}

fn require_gsb(p: &Presentation, what: &str) -> Result<()> {
    let report = is_gsb(p);
    if report.is_basis {
        Ok(())
    } else {
        let first = &report.failures[0];
        Err(Error::Contract(format!(
            "{what} requires a GS basis; composition {} has remainder {}",
            first.composition.describe(p.alphabet()),
            first.remainder.render(p.alphabet())
        )))
    }
}

/// Drops or inter-reduces relations until no leading word contains another.
pub fn minimize(p: &Presentation) -> Result<(Presentation, Vec<String>)> {
    require_gsb(p, "minimize")?;
    let mut rels = p.named();
    let mut removed = Vec::new();
    'outer: loop {
        for i in 0..rels.len() {
            let lead = rels[i].1.leading_word().unwrap().clone();
            let covered = rels
                .iter()
                .enumerate()
                .any(|(j, (_, g))| j != i && lead.contains(g.leading_word().unwrap()));
            if !covered {
                continue;
            }
            let others: Vec<(String, Poly)> =
                rels.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            let rest = p.with_relations(others)?;
            let nf = rest.normal_form(&rels[i].1);
            if nf.is_zero() {
                removed.push(rels.remove(i).0);
            } else {
                rels[i].1 = nf.monic();
            }
            continue 'outer;
        }
        break;
    }
    Ok((p.with_relations(rels)?, removed))
}

/// Irreducible words of degree ≤ `max_deg`, ascending. In unital mode the
/// empty word comes first.
pub fn irr(p: &Presentation, max_deg: usize) -> Result<Vec<Word>> {
    require_gsb(p, "irr")?;
    Ok(irreducible_words(p, max_deg))
}

/// Enumerates irreducible words without checking the basis property.
pub(crate) fn irreducible_words(p: &Presentation, max_deg: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if p.unital {
        out.push(Word::empty());
    }
    // every prefix of an irreducible word is irreducible
    let mut level = vec![Word::empty()];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..p.alphabet.len() as u32 {
                let cand = w.concat(&Word::letter(l));
                let suffix_hit = p.relations.iter().any(|r| {
                    let lead = r.lead().letters();
                    cand.letters().ends_with(lead)
                });
                if !suffix_hit {
                    next.push(cand);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}
