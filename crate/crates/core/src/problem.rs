//! The JSON problem-file format.
//!
//! ```json
//! {
//!   "field": "GF(5)",
//!   "alphabet": ["x"],
//!   "relations": [{"name": "u", "terms": [["1", ["x", "x"]], ["-2", ["x"]]]}],
//!   "module": {"basis": ["m"], "left": {"x": [["2"]]}, "right": {"x": [["2"]]}},
//!   "factor": {"kind": "relations", "values": {"u": ["1"]}}
//! }
//! ```
//!
//! Coefficients are strings (`"3"`, `"-1/2"`) or JSON integers. Generators
//! missing from a module's `left`/`right` maps act as zero. In finite mode
//! `algebra` replaces `alphabet`/`relations` and the factor block is a table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{Assignment, BimoduleSpec, FactorSymbol, FiniteAlgebraSpec};
use crate::freealg::{Alphabet, Poly};
use crate::linalg::{Matrix, Vector};
use crate::rewriting::Presentation;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Presentation,
    Finite,
}

fn is_default<T: Default + PartialEq>(t: &T) -> bool {
    *t == T::default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub name: String,
    pub terms: Vec<(Num, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub basis: Vec<String>,
    #[serde(default)]
    pub left: BTreeMap<String, Vec<Vec<Num>>>,
    #[serde(default)]
    pub right: BTreeMap<String, Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValue {
    pub pair: (String, String),
    pub value: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorFile {
    Symbolic,
    Relations { values: BTreeMap<String, Vec<Num>> },
    Pairs {
        #[serde(default)]
        antisymmetric: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<PairValue>>,
    },
    Table { values: Vec<Vec<Vec<Num>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    /// `products[p][q]` = coordinates of `b_p b_q`.
    pub products: Vec<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deg: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

/// The file as written, before semantic validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "is_default")]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "is_default")]
    pub unital: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Vec<(Num, Vec<String>)>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: OptionsFile,
}

/// What the factor block asks for, in engine terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    None,
    Symbolic,
    /// Concrete values keyed by relation.
    Concrete(Assignment),
    /// Pair-indexed lens; values (if any) already translated to relations.
    Pairs { antisymmetric: bool, values: Option<Assignment> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Presentation(Presentation),
    Finite(FiniteAlgebraSpec),
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub field: Field,
    pub base: Base,
    pub module: Option<BimoduleSpec>,
    pub factor: Factor,
    pub queries: Vec<Poly>,
    pub options: OptionsFile,
}

impl Problem {
    /// The presentation of `B`: the relations, or the multiplication table.
    pub fn presentation(&self) -> Result<Presentation> {
        match &self.base {
            Base::Presentation(p) => Ok(p.clone()),
            Base::Finite(spec) => spec.to_presentation(),
        }
    }
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Input(msg) => Error::Input(format!("{path}: {msg}")),
        Error::Dimension(msg) => Error::Dimension(format!("{path}: {msg}")),
        Error::UnknownGenerator(g) => Error::Input(format!("{path}: unknown generator `{g}`")),
        other => other,
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw = parse_file(text)?;
    validate(&raw)
}

/// Structural parse only; errors carry line, column and key path.
pub fn parse_file(text: &str) -> Result<ProblemFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Input(format!("line {}, column {} (at `{path}`): {inner}", inner.line(), inner.column()))
    })
}

pub fn render_file(file: &ProblemFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("problem files serialize");
    s.push('\n');
    s
}

fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|p| p.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::Input(format!("field: expected \"Q\" or \"GF(p)\", got `{text}`")))?;
    Field::prime(p).map_err(|e| at("field", e))
}

fn scalar(field: Field, n: &Num, path: &str) -> Result<Scalar> {
    match n {
        Num::Int(i) => Ok(field.from_i64(*i)),
        Num::Text(t) => field.parse(t).map_err(|e| at(path, e)),
    }
}

fn vector(field: Field, v: &[Num], len: usize, path: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Dimension(format!("{path}: expected {len} entries, got {}", v.len())));
    }
    v.iter().enumerate().map(|(i, n)| scalar(field, n, &format!("{path}[{i}]"))).collect()
}

fn poly(field: Field, alphabet: &Alphabet, terms: &[(Num, Vec<String>)], path: &str) -> Result<Poly> {
    let mut raw = Vec::new();
    for (i, (c, w)) in terms.iter().enumerate() {
        let p = format!("{path}[{i}]");
        raw.push((scalar(field, c, &p)?, alphabet.word(w).map_err(|e| at(&p, e))?));
    }
    Poly::from_terms(field, raw).map_err(|e| at(path, e))
}

fn module(field: Field, m: &ModuleFile, generators: &[String], path: &str) -> Result<BimoduleSpec> {
    let n = m.basis.len();
    let mut sides = Vec::new();
    for (side, map) in [("left", &m.left), ("right", &m.right)] {
        if let Some(bad) = map.keys().find(|k| !generators.contains(k)) {
            return Err(Error::Input(format!("{path}.{side}: unknown generator `{bad}`")));
        }
        let mut mats = Vec::new();
        for g in generators {
            let p = format!("{path}.{side}.{g}");
            let mat = match map.get(g) {
                None => Matrix::zero(field, n, n),
                Some(rows) => {
                    if rows.len() != n {
                        return Err(Error::Dimension(format!("{p}: expected {n} rows, got {}", rows.len())));
                    }
                    let rows = rows
                        .iter()
                        .enumerate()
                        .map(|(i, r)| vector(field, r, n, &format!("{p}[{i}]")))
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(field, rows).map_err(|e| at(&p, e))?
                }
            };
            mats.push(mat);
        }
        sides.push(mats);
    }
    let right = sides.pop().unwrap();
    let left = sides.pop().unwrap();
    BimoduleSpec::new(field, m.basis.clone(), left, right).map_err(|e| at(path, e))
}

/// Converts pair-indexed values into an assignment on relations via each
/// relation's two-letter leading word.
fn pairs_to_relations(
    p: &Presentation,
    values: &BTreeMap<FactorSymbol, Vector>,
    antisymmetric: bool,
    dim: usize,
) -> Result<Assignment> {
    let mut out = Assignment::new();
    for rel in p.relations() {
        let [a, b] = rel.lead().letters() else {
            return Err(Error::Input(format!(
                "factor: relation `{}` does not have a two-letter leading word",
                rel.name
            )));
        };
        let v = if let Some(v) = values.get(&FactorSymbol::Pair(*a, *b)) {
            v.clone()
        } else if antisymmetric && a == b {
            vec![p.field().zero(); dim]
        } else if let (true, Some(v)) = (antisymmetric, values.get(&FactorSymbol::Pair(*b, *a))) {
            v.iter().map(|c| -c).collect()
        } else {
            return Err(Error::Input(format!(
                "factor.values: no value for pair ({},{})",
                p.alphabet().name(*a),
                p.alphabet().name(*b)
            )));
        };
        out.insert(FactorSymbol::Relation(rel.name.clone()), v);
    }
    Ok(out)
}

pub fn validate(raw: &ProblemFile) -> Result<Problem> {
    let field = parse_field(&raw.field)?;
    match raw.mode {
        Mode::Presentation => validate_presented(raw, field),
        Mode::Finite => validate_finite(raw, field),
    }
}

fn queries(raw: &ProblemFile, field: Field, alphabet: &Alphabet) -> Result<Vec<Poly>> {
    raw.queries
        .iter()
        .enumerate()
        .map(|(i, q)| poly(field, alphabet, q, &format!("queries[{i}]")))
        .collect()
}

fn validate_presented(raw: &ProblemFile, field: Field) -> Result<Problem> {
    if raw.algebra.is_some() {
        return Err(Error::Input("algebra: only allowed in finite mode".into()));
    }
    let alphabet = Alphabet::new(&raw.alphabet).map_err(|e| at("alphabet", e))?;
    let mut rels = Vec::new();
    for (i, r) in raw.relations.iter().enumerate() {
        rels.push((r.name.clone(), poly(field, &alphabet, &r.terms, &format!("relations[{i}].terms"))?));
    }
    let p = Presentation::new(alphabet.clone(), field, raw.unital, rels).map_err(|e| at("relations", e))?;
    let module = raw.module.as_ref().map(|m| module(field, m, &raw.alphabet, "module")).transpose()?;
    let dim = module.as_ref().map_or(0, BimoduleSpec::dim);
    let factor = match &raw.factor {
        None => Factor::None,
        Some(FactorFile::Symbolic) => Factor::Symbolic,
        Some(FactorFile::Table { .. }) => return Err(Error::Input("factor: a table needs finite mode".into())),
        Some(FactorFile::Relations { values }) => {
            let mut a = Assignment::new();
            for (name, v) in values {
                let path = format!("factor.values.{name}");
                if p.relation(name).is_none() {
                    return Err(Error::Input(format!("{path}: unknown relation")));
                }
                a.insert(FactorSymbol::Relation(name.clone()), vector(field, v, dim, &path)?);
            }
            Factor::Concrete(a)
        }
        Some(FactorFile::Pairs { antisymmetric, values }) => {
            let values = match values {
                None => None,
                Some(vs) => {
                    let mut map = BTreeMap::new();
                    for (i, pv) in vs.iter().enumerate() {
                        let path = format!("factor.values[{i}]");
                        let a = alphabet.letter(&pv.pair.0).map_err(|e| at(&path, e))?;
                        let b = alphabet.letter(&pv.pair.1).map_err(|e| at(&path, e))?;
                        map.insert(FactorSymbol::Pair(a, b), vector(field, &pv.value, dim, &format!("{path}.value"))?);
                    }
                    Some(pairs_to_relations(&p, &map, *antisymmetric, dim)?)
                }
            };
            Factor::Pairs { antisymmetric: *antisymmetric, values }
        }
    };
    Ok(Problem {
        field,
        queries: queries(raw, field, &alphabet)?,
        base: Base::Presentation(p),
        module,
        factor,
        options: raw.options.clone(),
    })
}

fn validate_finite(raw: &ProblemFile, field: Field) -> Result<Problem> {
    if !raw.alphabet.is_empty() || !raw.relations.is_empty() {
        return Err(Error::Input("finite mode takes `algebra` instead of `alphabet`/`relations`".into()));
    }
    if raw.unital {
        return Err(Error::Input("unital: not supported in finite mode".into()));
    }
    let alg = raw.algebra.as_ref().ok_or_else(|| Error::Input("algebra: required in finite mode".into()))?;
    let alphabet = Alphabet::new(&alg.basis).map_err(|e| at("algebra.basis", e))?;
    let n = alg.basis.len();
    let module = match &raw.module {
        Some(m) => module(field, m, &alg.basis, "module")?,
        None => BimoduleSpec::zero(field, vec![], n),
    };
    let dim = module.dim();
    let table = |t: &Vec<Vec<Vec<Num>>>, len: usize, path: &str| -> Result<Vec<Vec<Vector>>> {
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("{path}: expected a {n}x{n} table")));
        }
        t.iter()
            .enumerate()
            .map(|(p, row)| {
                row.iter()
                    .enumerate()
                    .map(|(q, v)| vector(field, v, len, &format!("{path}[{p}][{q}]")))
                    .collect()
            })
            .collect()
    };
    let structure = table(&alg.products, n, "algebra.products")?;
    let factor = match &raw.factor {
        None => vec![vec![vec![field.zero(); dim]; n]; n],
        Some(FactorFile::Table { values }) => table(values, dim, "factor.values")?,
        Some(_) => return Err(Error::Input("factor: finite mode takes {\"kind\": \"table\"}".into())),
    };
    let spec = FiniteAlgebraSpec::new(field, alg.basis.clone(), structure, module.clone(), factor)
        .map_err(|e| at("algebra", e))?;
    Ok(Problem {
        field,
        queries: queries(raw, field, &alphabet)?,
        factor: Factor::Concrete(spec.assignment()),
        base: Base::Finite(spec),
        module: Some(module),
        options: raw.options.clone(),
    })
}

fn num(s: &Scalar) -> Num {
    Num::Text(s.to_string())
}

fn terms_of(p: &Poly, alphabet: &Alphabet) -> Vec<(Num, Vec<String>)> {
    p.terms()
        .map(|(w, c)| (num(c), w.letters().iter().map(|&l| alphabet.name(l).to_string()).collect()))
        .collect()
}

/// A presentation as a problem file.
pub fn presentation_file(p: &Presentation) -> ProblemFile {
    ProblemFile {
        field: p.field().to_string(),
        mode: Mode::Presentation,
        unital: p.unital(),
        alphabet: p.alphabet().names().to_vec(),
        relations: p
            .relations()
            .iter()
            .map(|r| RelationFile { name: r.name.clone(), terms: terms_of(&r.poly, p.alphabet()) })
            .collect(),
        algebra: None,
        module: None,
        factor: None,
        queries: vec![],
        options: OptionsFile::default(),
    }
}
