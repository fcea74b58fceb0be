//! Extension conditions for singular extensions `0 → M → A → B → 0`.
//!
//! Each composition `(h_{u1}, h_{u2})_w` of a minimal GS basis `R` of `B`
//! yields an element `g` of the free `B`-bimodule on the factor symbols
//! `(u)`, `u ∈ Λ`: reduce the composition value with a certificate
//! `Σ αᵢ aᵢ h_{uᵢ} bᵢ`, then
//!
//! ```text
//! g = Σ αᵢ aᵢ·(uᵢ)·bᵢ − ((u1)·c − d·(u2))
//! ```
//!
//! with every context word replaced by its `R`-normal form. A concrete factor
//! set is admissible iff every `g` specializes to zero in `M`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Letter, Poly, Word};
use crate::linalg::{self, Matrix, Vector};
use crate::rewriting::{self, Composition, Presentation};
use crate::scalar::{Field, Scalar};

/// Action of the generators on `M = span{m_j}`.
///
/// Column `j` of `left[x]` holds `[x m_j]`; column `j` of `right[x]` holds `[m_j x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSpec {
    field: Field,
    basis: Vec<String>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl BimoduleSpec {
    pub fn new(field: Field, basis: Vec<String>, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        let n = basis.len();
        if left.len() != right.len() {
            return Err(Error::Dimension(format!(
                "{} left actions but {} right actions",
                left.len(),
                right.len()
            )));
        }
        for (side, mats) in [("left", &left), ("right", &right)] {
            for (g, m) in mats.iter().enumerate() {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::Dimension(format!(
                        "{side} action of generator #{g} is {}x{}, expected {n}x{n}",
                        m.rows(),
                        m.cols()
                    )));
                }
                if m.field() != field {
                    return Err(Error::MixedFields(field.to_string(), m.field().to_string()));
                }
            }
        }
        Ok(BimoduleSpec { field, basis, left, right })
    }

    /// The module on which every generator acts as zero.
    pub fn zero(field: Field, basis: Vec<String>, generators: usize) -> Self {
        let n = basis.len();
        let z = Matrix::zero(field, n, n);
        BimoduleSpec { field, basis, left: vec![z.clone(); generators], right: vec![z; generators] }
    }

    /// Every generator acts on both sides by the same scalar matrix `λ·I`.
    pub fn scalar(field: Field, basis: Vec<String>, generators: usize, lambda: &Scalar) -> Self {
        let m = Matrix::scalar(field, basis.len(), lambda);
        BimoduleSpec { field, basis, left: vec![m.clone(); generators], right: vec![m; generators] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn generators(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, x: Letter) -> &Matrix {
        &self.left[x as usize]
    }

    pub fn right(&self, x: Letter) -> &Matrix {
        &self.right[x as usize]
    }

    /// Matrix of `v ↦ w·v`.
    pub fn left_word(&self, w: &Word) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim());
        for &l in w.letters() {
            acc = acc.mul(self.left(l));
        }
        acc
    }

    /// Matrix of `v ↦ v·w`.
    pub fn right_word(&self, w: &Word) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim());
        for &l in w.letters() {
            acc = self.right(l).mul(&acc);
        }
        acc
    }

    pub fn left_poly(&self, p: &Poly) -> Matrix {
        let mut acc = Matrix::zero(self.field, self.dim(), self.dim());
        for (w, c) in p.terms() {
            acc.add_scaled(&self.left_word(w), c);
        }
        acc
    }

    pub fn right_poly(&self, p: &Poly) -> Matrix {
        let mut acc = Matrix::zero(self.field, self.dim(), self.dim());
        for (w, c) in p.terms() {
            acc.add_scaled(&self.right_word(w), c);
        }
        acc
    }

    /// `a · v · b`
    pub fn act(&self, a: &Word, v: &[Scalar], b: &Word) -> Vector {
        let mut out = v.to_vec();
        for &l in b.letters() {
            out = self.right(l).mul_vec(&out);
        }
        for &l in a.letters().iter().rev() {
            out = self.left(l).mul_vec(&out);
        }
        out
    }

    pub fn basis_vector(&self, j: usize) -> Vector {
        let mut v = linalg::zero_vector(self.field, self.dim());
        v[j] = self.field.one();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleViolation {
    /// The left action does not kill the relation.
    Left(String),
    Right(String),
    /// `x·(m·y) ≠ (x·m)·y`
    Mixed { left: String, right: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleReport {
    pub violations: Vec<BimoduleViolation>,
}

impl BimoduleReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `M` is a `B`-bimodule: each relation acts as zero on either
/// side, and left and right actions commute.
pub fn check_bimodule(p: &Presentation, m: &BimoduleSpec) -> Result<BimoduleReport> {
    if m.generators() != p.alphabet().len() {
        return Err(Error::Dimension(format!(
            "module acts by {} generators, presentation has {}",
            m.generators(),
            p.alphabet().len()
        )));
    }
    if m.field() != p.field() {
        return Err(Error::MixedFields(p.field().to_string(), m.field().to_string()));
    }
    let mut violations = Vec::new();
    for r in p.relations() {
        if !m.left_poly(&r.poly).is_zero() {
            violations.push(BimoduleViolation::Left(r.name.clone()));
        }
        if !m.right_poly(&r.poly).is_zero() {
            violations.push(BimoduleViolation::Right(r.name.clone()));
        }
    }
    let n = p.alphabet().len() as Letter;
    for x in 0..n {
        for y in 0..n {
            if m.left(x).mul(m.right(y)) != m.right(y).mul(m.left(x)) {
                violations.push(BimoduleViolation::Mixed {
                    left: p.alphabet().name(x).to_string(),
                    right: p.alphabet().name(y).to_string(),
                });
            }
        }
    }
    Ok(BimoduleReport { violations })
}

/// A finite-dimensional algebra `B` with a bimodule `M` and a bilinear factor set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebraSpec {
    field: Field,
    basis: Vec<String>,
    /// `structure[p][q]` = coordinates of `[b_p b_q]`.
    structure: Vec<Vec<Vector>>,
    module: BimoduleSpec,
    /// `factor[p][q]` = `(b_p, b_q)` in the m-basis.
    factor: Vec<Vec<Vector>>,
}

impl FiniteAlgebraSpec {
    /// Validates shapes and associativity of the structure constants.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        structure: Vec<Vec<Vector>>,
        module: BimoduleSpec,
        factor: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let n = basis.len();
        let shape_ok = |t: &Vec<Vec<Vector>>, len: usize| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == len));
        if !shape_ok(&structure, n) {
            return Err(Error::Dimension(format!("structure constants must be {n}x{n}x{n}")));
        }
        if !shape_ok(&factor, module.dim()) {
            return Err(Error::Dimension(format!("factor table must be {n}x{n} vectors of length {}", module.dim())));
        }
        if module.generators() != n {
            return Err(Error::Dimension(format!(
                "module acts by {} elements, algebra has {n} basis elements",
                module.generators()
            )));
        }
        let spec = FiniteAlgebraSpec { field, basis, structure, module, factor };
        if let Some((p, q, r)) = spec.non_associative_triple() {
            return Err(Error::Input(format!(
                "structure constants are not associative at (p,q,r) = ({}, {}, {})",
                spec.basis[p], spec.basis[q], spec.basis[r]
            )));
        }
        Ok(spec)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> &BimoduleSpec {
        &self.module
    }

    pub fn structure(&self) -> &[Vec<Vector>] {
        &self.structure
    }

    pub fn factor(&self) -> &[Vec<Vector>] {
        &self.factor
    }

    pub fn with_factor(&self, factor: Vec<Vec<Vector>>) -> Result<Self> {
        FiniteAlgebraSpec::new(self.field, self.basis.clone(), self.structure.clone(), self.module.clone(), factor)
    }

    pub fn with_module(&self, module: BimoduleSpec) -> Result<Self> {
        FiniteAlgebraSpec::new(self.field, self.basis.clone(), self.structure.clone(), module, self.factor.clone())
    }

    /// Bilinear product of coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.dim());
        for (p, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (q, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                linalg::add_scaled(&mut out, &self.structure[p][q], &(a * b));
            }
        }
        out
    }

    /// `(x, y)` extended bilinearly.
    pub fn factor_of(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.module.dim());
        for (p, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (q, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                linalg::add_scaled(&mut out, &self.factor[p][q], &(a * b));
            }
        }
        out
    }

    /// `x · v` for `x ∈ B` in coordinates.
    pub fn left_act(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.module.dim());
        for (p, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            linalg::add_scaled(&mut out, &self.module.left(p as Letter).mul_vec(v), a);
        }
        out
    }

    pub fn right_act(&self, v: &[Scalar], x: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.module.dim());
        for (p, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            linalg::add_scaled(&mut out, &self.module.right(p as Letter).mul_vec(v), a);
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = linalg::zero_vector(self.field, self.dim());
        v[i] = self.field.one();
        v
    }

    fn non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let (bp, bq, br) = (self.unit(p), self.unit(q), self.unit(r));
                    if self.product(&self.product(&bp, &bq), &br) != self.product(&bp, &self.product(&bq, &br)) {
                        return Some((p, q, r));
                    }
                }
            }
        }
        None
    }

    /// Relation name for the pair `(b_p, b_q)` in [`FiniteAlgebraSpec::to_presentation`].
    pub fn pair_name(&self, p: usize, q: usize) -> String {
        format!("{},{}", self.basis[p], self.basis[q])
    }

    /// The multiplication table as a presentation: generators `b_i` and
    /// relations `b_p b_q − [b_p b_q]`, named `"b_p,b_q"`.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let alphabet = Alphabet::new(&self.basis)?;
        let mut rels = Vec::new();
        for p in 0..self.dim() {
            for q in 0..self.dim() {
                let mut poly = Poly::word(self.field, Word::new(vec![p as Letter, q as Letter]));
                for (i, c) in self.structure[p][q].iter().enumerate() {
                    poly.add_term(Word::letter(i as Letter), &-c);
                }
                rels.push((self.pair_name(p, q), poly));
            }
        }
        Presentation::new(alphabet, self.field, false, rels)
    }

    /// The factor table as an assignment on the relations of [`FiniteAlgebraSpec::to_presentation`].
    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        for p in 0..self.dim() {
            for q in 0..self.dim() {
                a.insert(FactorSymbol::Relation(self.pair_name(p, q)), self.factor[p][q].clone());
            }
        }
        a
    }
}

/// `b_p(b_q,b_r) − (b_pb_q,b_r) + (b_p,b_qb_r) − (b_p,b_q)b_r` in `M`.
pub fn cocycle_value(spec: &FiniteAlgebraSpec, p: usize, q: usize, r: usize) -> Vector {
    let one = spec.field.one();
    let (bp, bq, br) = (spec.unit(p), spec.unit(q), spec.unit(r));
    let mut v = spec.left_act(&bp, &spec.factor[q][r]);
    linalg::add_scaled(&mut v, &spec.factor_of(&spec.product(&bp, &bq), &br), &-&one);
    linalg::add_scaled(&mut v, &spec.factor_of(&bp, &spec.product(&bq, &br)), &one);
    linalg::add_scaled(&mut v, &spec.right_act(&spec.factor[p][q], &br), &-&one);
    v
}

/// Triples `(p, q, r)` at which the cocycle identity fails.
pub fn cocycle_check(spec: &FiniteAlgebraSpec) -> Vec<(usize, usize, usize)> {
    let n = spec.dim();
    let mut bad = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if !linalg::is_zero_vector(&cocycle_value(spec, p, q, r)) {
                    bad.push((p, q, r));
                }
            }
        }
    }
    bad
}

/// A factor-set symbol: `(u)` for a relation, or `(x_p, x_q)` for a pair of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSymbol {
    Relation(String),
    Pair(Letter, Letter),
}

impl FactorSymbol {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            FactorSymbol::Relation(name) => format!("({name})"),
            FactorSymbol::Pair(a, b) => format!("({},{})", alphabet.name(*a), alphabet.name(*b)),
        }
    }
}

/// Concrete values of factor symbols in `M`.
pub type Assignment = BTreeMap<FactorSymbol, Vector>;

/// Formal sum of `coeff · a·(symbol)·b`, keyed in canonical order (symbol, a, b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleExpr {
    field: Field,
    terms: BTreeMap<(FactorSymbol, Word, Word), Scalar>,
}

impl BimoduleExpr {
    pub fn zero(field: Field) -> Self {
        BimoduleExpr { field, terms: BTreeMap::new() }
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

    pub fn terms(&self) -> impl Iterator<Item = (&FactorSymbol, &Word, &Word, &Scalar)> {
        self.terms.iter().map(|((s, a, b), c)| (s, a, b, c))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &FactorSymbol> {
        self.terms.keys().map(|(s, _, _)| s)
    }

    pub fn add_term(&mut self, symbol: FactorSymbol, a: Word, b: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (symbol, a, b);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    /// Adds `coeff · a·(x, y)·b` where `x`, `y` are linear combinations of
    /// generators, expanding bilinearly into basis pairs.
    pub fn add_pair(&mut self, a: &Word, x: &Poly, y: &Poly, b: &Word, coeff: &Scalar) -> Result<()> {
        for (wx, cx) in x.terms() {
            for (wy, cy) in y.terms() {
                if wx.deg() != 1 || wy.deg() != 1 {
                    return Err(Error::Contract("pair symbols take linear combinations of generators".into()));
                }
                let sym = FactorSymbol::Pair(wx.letters()[0], wy.letters()[0]);
                self.add_term(sym, a.clone(), b.clone(), &(coeff * &(cx * cy)));
            }
        }
        Ok(())
    }

    pub fn add(&mut self, other: &BimoduleExpr, c: &Scalar) {
        for ((s, a, b), d) in &other.terms {
            self.add_term(s.clone(), a.clone(), b.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &Scalar) -> BimoduleExpr {
        let mut out = BimoduleExpr::zero(self.field);
        out.add(self, c);
        out
    }

    /// Scaled so the first stored coefficient is 1.
    pub fn canonical(&self) -> BimoduleExpr {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.inv().expect("stored coefficients are nonzero")),
            None => self.clone(),
        }
    }

    /// `Σ coeff · nf(a)·(u)·nf(b)`, expanding multi-term normal forms.
    pub fn normalize_contexts(&self, r: &Presentation) -> BimoduleExpr {
        let mut cache: HashMap<Word, Poly> = HashMap::new();
        let mut nf = |w: &Word| -> Poly {
            cache
                .entry(w.clone())
                .or_insert_with(|| r.normal_form(&Poly::word(r.field(), w.clone())))
                .clone()
        };
        let mut out = BimoduleExpr::zero(self.field);
        for ((s, a, b), c) in &self.terms {
            let (na, nb) = (nf(a), nf(b));
            for (wa, ca) in na.terms() {
                for (wb, cb) in nb.terms() {
                    out.add_term(s.clone(), wa.clone(), wb.clone(), &(c * &(ca * cb)));
                }
            }
        }
        out
    }

    /// Conventional text: `(u1)*x - x*(u1) = 0`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0 = 0".to_string();
        }
        let mut out = String::new();
        for (i, ((s, a, b), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts = Vec::new();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            if !a.is_empty() {
                parts.push(alphabet.render_word(a));
            }
            parts.push(s.render(alphabet));
            if !b.is_empty() {
                parts.push(alphabet.render_word(b));
            }
            let _ = write!(out, "{}", parts.join("*"));
        }
        out.push_str(" = 0");
        out
    }
}

/// One extension condition `g_{(u1,u2)_w} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCondition {
    pub source: Composition,
    pub expr: BimoduleExpr,
    /// The composition value in `R` was identically zero.
    pub self_overlap: bool,
}

/// Output of [`derive_conditions`].
#[derive(Clone, Debug)]
pub struct Derivation {
    /// The minimal basis the conditions refer to.
    pub presentation: Presentation,
    pub conditions: Vec<NamedCondition>,
    /// Compositions whose condition vanished identically.
    pub dropped_zero: usize,
    /// Relations removed by minimization (empty when the input was minimal).
    pub removed: Vec<String>,
}

/// Derives the symbolic extension condition of every composition of `p`.
///
/// `p` must be a GS basis. A non-minimal basis is minimized first and the
/// removed relation names are reported in [`Derivation::removed`].
pub fn derive_conditions(p: &Presentation) -> Result<Derivation> {
    let (r, removed) = rewriting::minimize(p)?;
    let one = r.field().one();
    let mut conditions = Vec::new();
    let mut dropped_zero = 0;
    for comp in rewriting::compositions(&r) {
        let trace = rewriting::reduce(&comp.value, &r);
        if !trace.remainder.is_zero() {
            return Err(Error::Contract(format!(
                "composition {} does not reduce to zero",
                comp.describe(r.alphabet())
            )));
        }
        let mut g = BimoduleExpr::zero(r.field());
        for s in &trace.steps {
            g.add_term(FactorSymbol::Relation(s.relation.clone()), s.left.clone(), s.right.clone(), &s.coeff);
        }
        // − ((u1)·c − d·(u2)·e)
        g.add_term(FactorSymbol::Relation(comp.left.clone()), Word::empty(), comp.left_b.clone(), &-&one);
        g.add_term(FactorSymbol::Relation(comp.right.clone()), comp.right_a.clone(), comp.right_b.clone(), &one);
        let g = g.normalize_contexts(&r);
        if g.is_zero() {
            dropped_zero += 1;
            continue;
        }
        conditions.push(NamedCondition {
            self_overlap: comp.value.is_zero(),
            source: comp,
            expr: g.canonical(),
        });
    }
    Ok(Derivation { presentation: r, conditions, dropped_zero, removed })
}

/// Rewrites `(u)` symbols into generator pairs and applies bilinearity plus,
/// when `antisymmetric`, the rules `(x_q,x_p) = −(x_p,x_q)` and `(x_p,x_p) = 0`.
///
/// Every relation of `p` must have a two-letter leading word `x_p x_q`; its
/// symbol becomes `(x_p, x_q)`.
pub fn expand_pair_symbols(cond: &NamedCondition, p: &Presentation, antisymmetric: bool) -> Result<NamedCondition> {
    Ok(NamedCondition {
        source: cond.source.clone(),
        expr: to_pair_symbols(&cond.expr, p, antisymmetric)?,
        self_overlap: cond.self_overlap,
    })
}

/// The expression-level version of [`expand_pair_symbols`].
pub fn to_pair_symbols(expr: &BimoduleExpr, p: &Presentation, antisymmetric: bool) -> Result<BimoduleExpr> {
    let mut out = BimoduleExpr::zero(expr.field);
    for ((s, a, b), c) in &expr.terms {
        let (x, y) = match s {
            FactorSymbol::Pair(x, y) => (*x, *y),
            FactorSymbol::Relation(name) => {
                let rel = p
                    .relation(name)
                    .ok_or_else(|| Error::Contract(format!("unknown relation `{name}`")))?;
                match rel.lead().letters() {
                    [x, y] => (*x, *y),
                    _ => {
                        return Err(Error::Contract(format!(
                            "relation `{name}` does not have a two-letter leading word"
                        )))
                    }
                }
            }
        };
        // smaller letter index = greater generator
        let (sym, coeff) = if !antisymmetric || x < y {
            (FactorSymbol::Pair(x, y), c.clone())
        } else if x == y {
            continue;
        } else {
            (FactorSymbol::Pair(y, x), -c)
        };
        out.add_term(sym, a.clone(), b.clone(), &coeff);
    }
    Ok(out)
}

/// Evaluates `expr` in `M` under a concrete assignment.
pub fn specialize(expr: &BimoduleExpr, m: &BimoduleSpec, assignment: &Assignment) -> Result<Vector> {
    let mut out = linalg::zero_vector(m.field(), m.dim());
    for ((s, a, b), c) in &expr.terms {
        let v = assignment
            .get(s)
            .ok_or_else(|| Error::Input(format!("no value assigned to symbol {s:?}")))?;
        if v.len() != m.dim() {
            return Err(Error::Dimension(format!("value of {s:?} has length {}, expected {}", v.len(), m.dim())));
        }
        linalg::add_scaled(&mut out, &m.act(a, v, b), c);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanRelation {
    Equal,
    AContainsB,
    BContainsA,
    Incomparable,
}

/// Compares the linear spans of two sets of expressions.
pub fn conditions_equal_span(a: &[BimoduleExpr], b: &[BimoduleExpr]) -> SpanRelation {
    let mut columns: BTreeMap<&(FactorSymbol, Word, Word), usize> = BTreeMap::new();
    for e in a.iter().chain(b) {
        for k in e.terms.keys() {
            let next = columns.len();
            columns.entry(k).or_insert(next);
        }
    }
    let Some(field) = a.iter().chain(b).map(|e| e.field).next() else {
        return SpanRelation::Equal;
    };
    let ncols = columns.len();
    let row = |e: &BimoduleExpr| {
        let mut r = linalg::zero_vector(field, ncols);
        for (k, c) in &e.terms {
            r[columns[k]] = c.clone();
        }
        r
    };
    let ra: Vec<Vector> = a.iter().map(row).collect();
    let rb: Vec<Vector> = b.iter().map(row).collect();
    let both: Vec<Vector> = ra.iter().chain(&rb).cloned().collect();
    let (rank_a, rank_b, rank_ab) = (linalg::rank(&ra, ncols), linalg::rank(&rb, ncols), linalg::rank(&both, ncols));
    match (rank_ab == rank_a, rank_ab == rank_b) {
        (true, true) => SpanRelation::Equal,
        (true, false) => SpanRelation::AContainsB,
        (false, true) => SpanRelation::BContainsA,
        (false, false) => SpanRelation::Incomparable,
    }
}

/// Linear map `assignment ↦ (specialize(g))_g` as a matrix over the
/// coordinates `(symbol, j)` in the order of `symbols`.
pub fn condition_matrix(
    conditions: &[NamedCondition],
    m: &BimoduleSpec,
    symbols: &[FactorSymbol],
) -> Result<Vec<Vector>> {
    let field = m.field();
    let ncols = symbols.len() * m.dim();
    let mut rows = Vec::new();
    for cond in conditions {
        let mut block = vec![linalg::zero_vector(field, ncols); m.dim()];
        for (col, (s, j)) in symbols.iter().flat_map(|s| (0..m.dim()).map(move |j| (s, j))).enumerate() {
            let mut asg = Assignment::new();
            for t in symbols {
                let v = if t == s { m.basis_vector(j) } else { linalg::zero_vector(field, m.dim()) };
                asg.insert(t.clone(), v);
            }
            let image = specialize(&cond.expr, m, &asg)?;
            for (i, x) in image.into_iter().enumerate() {
                block[i][col] = x;
            }
        }
        rows.extend(block);
    }
    Ok(rows)
}
