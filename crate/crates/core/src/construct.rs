//! The extension algebra `A = M ⊕ B` built from a factor set.
//!
//! In presentation mode `A` is presented by `S₁` over `X ∪ {m_j}`:
//! `u = f_u + (u)`, `x m_j = [x m_j]`, `m_j x = [m_j x]`, `m_j m_l = 0`,
//! with every generator greater than every `m_j`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extension::{
    self, check_bimodule, cocycle_check, derive_conditions, specialize, Assignment, BimoduleSpec,
    FactorSymbol, FiniteAlgebraSpec,
};
use crate::freealg::{Letter, Poly, Word};
use crate::linalg::{self, Vector};
use crate::rewriting::{self, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Presented(Presentation),
    Finite(FiniteAlgebraSpec),
}

/// An element `m + b` of `A`, with `b` kept in `R`-normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    pub m_part: Vector,
    pub b_part: Poly,
}

#[derive(Clone, Debug)]
pub struct ExtensionAlgebra {
    base: Base,
    r: Presentation,
    module: BimoduleSpec,
    assignment: Assignment,
    s1: Presentation,
    working_degree: usize,
}

/// `S₁` for the given data. No admissibility check is made; see [`build_extension`].
pub fn s1_presentation(r: &Presentation, module: &BimoduleSpec, assignment: &Assignment) -> Result<Presentation> {
    let field = r.field();
    let nx = r.alphabet().len();
    if let Some(clash) = module.basis().iter().find(|m| r.alphabet().letter(m).is_ok()) {
        return Err(Error::Input(format!("module basis name `{clash}` is also a generator")));
    }
    let alphabet = r.alphabet().extended(module.basis())?;
    let m = |j: usize| Word::letter((nx + j) as Letter);
    let one = field.one();
    let mut rels = Vec::new();
    for rel in r.relations() {
        let v = assignment
            .get(&FactorSymbol::Relation(rel.name.clone()))
            .ok_or_else(|| Error::Input(format!("no value assigned to relation `{}`", rel.name)))?;
        let mut poly = rel.poly.clone();
        for (j, c) in v.iter().enumerate() {
            poly.add_term(m(j), &-c);
        }
        rels.push((rel.name.clone(), poly));
    }
    for x in 0..nx as Letter {
        let xname = r.alphabet().name(x);
        for (j, mname) in module.basis().iter().enumerate() {
            let mut left = Poly::word(field, Word::letter(x).concat(&m(j)));
            let mut right = Poly::word(field, m(j).concat(&Word::letter(x)));
            for i in 0..module.dim() {
                left.add_term(m(i), &-module.left(x).get(i, j));
                right.add_term(m(i), &-module.right(x).get(i, j));
            }
            rels.push((format!("{xname}.{mname}"), left));
            rels.push((format!("{mname}.{xname}"), right));
        }
    }
    for (j, a) in module.basis().iter().enumerate() {
        for (l, b) in module.basis().iter().enumerate() {
            rels.push((format!("{a}.{b}"), Poly::monomial(one.clone(), m(j).concat(&m(l)))));
        }
    }
    Presentation::new(alphabet, field, false, rels)
}

fn check_assignment(r: &Presentation, module: &BimoduleSpec, assignment: &Assignment) -> Result<()> {
    let expected: BTreeSet<FactorSymbol> =
        r.relations().iter().map(|u| FactorSymbol::Relation(u.name.clone())).collect();
    for (sym, v) in assignment {
        if !expected.contains(sym) {
            return Err(Error::Input(format!("assignment names unknown symbol {sym:?}")));
        }
        if v.len() != module.dim() {
            return Err(Error::Dimension(format!(
                "value of {sym:?} has length {}, module has dimension {}",
                v.len(),
                module.dim()
            )));
        }
        if v.iter().any(|c| c.field() != r.field()) {
            return Err(Error::MixedFields(r.field().to_string(), "assignment".into()));
        }
    }
    if let Some(missing) = expected.iter().find(|s| !assignment.contains_key(*s)) {
        return Err(Error::Input(format!("no value assigned to {missing:?}")));
    }
    Ok(())
}

/// Builds `A` after checking the bimodule axioms and every extension
/// condition (presentation mode) or the cocycle identity (finite mode).
///
/// The base presentation must be a non-unital GS basis; it is minimized, and
/// a base from which minimization would drop relations is rejected. In finite
/// mode the assignment is taken from the factor table and `assignment` must be `None`.
pub fn build_extension(base: Base, module: BimoduleSpec, assignment: Option<Assignment>) -> Result<ExtensionAlgebra> {
    let (r, assignment) = match &base {
        Base::Presented(p) => {
            if p.unital() {
                return Err(Error::Contract("extensions are built over non-unital presentations only".into()));
            }
            let assignment =
                assignment.ok_or_else(|| Error::Input("presentation mode needs a factor assignment".into()))?;
            let derivation = derive_conditions(p)?;
            if !derivation.removed.is_empty() {
                return Err(Error::Contract(format!(
                    "base presentation is not minimal (redundant: {})",
                    derivation.removed.join(", ")
                )));
            }
            let r = derivation.presentation;
            let report = check_bimodule(&r, &module)?;
            if let Some(v) = report.violations.first() {
                return Err(Error::Input(format!("module is not a bimodule: {v:?}")));
            }
            check_assignment(&r, &module, &assignment)?;
            for cond in &derivation.conditions {
                let value = specialize(&cond.expr, &module, &assignment)?;
                if !linalg::is_zero_vector(&value) {
                    return Err(Error::Condition {
                        composition: cond.source.describe(r.alphabet()),
                        value: linalg::render_vector(&value),
                    });
                }
            }
            (r, assignment)
        }
        Base::Finite(spec) => {
            if assignment.is_some() {
                return Err(Error::Input("finite mode takes the factor set from its table".into()));
            }
            if spec.module() != &module {
                return Err(Error::Input("module differs from the finite algebra's module".into()));
            }
            let r = spec.to_presentation()?;
            let report = check_bimodule(&r, &module)?;
            if let Some(v) = report.violations.first() {
                return Err(Error::Input(format!("module is not a bimodule: {v:?}")));
            }
            if let Some(&(p, q, t)) = cocycle_check(spec).first() {
                let b = spec.basis();
                return Err(Error::Condition {
                    composition: format!("cocycle (p,q,r) = ({}, {}, {})", b[p], b[q], b[t]),
                    value: linalg::render_vector(&extension::cocycle_value(spec, p, q, t)),
                });
            }
            (r, spec.assignment())
        }
    };
    let s1 = s1_presentation(&r, &module, &assignment)?;
    let report = rewriting::is_gsb(&s1);
    if let Some(f) = report.failures.first() {
        return Err(Error::Contract(format!(
            "S1 is not a GS basis at {}: {}",
            f.composition.describe(s1.alphabet()),
            f.remainder.render(s1.alphabet())
        )));
    }
    let working_degree = 1 + 2 * r.max_lead_deg();
    let irr_s1 = rewriting::irr(&s1, working_degree)?.len();
    let irr_r = rewriting::irr(&r, working_degree)?.len();
    if irr_s1 != module.dim() + irr_r {
        return Err(Error::Contract(format!(
            "Irr(S1) has {irr_s1} words up to degree {working_degree}, expected {} + {irr_r}",
            module.dim()
        )));
    }
    Ok(ExtensionAlgebra { base, r, module, assignment, s1, working_degree })
}

impl ExtensionAlgebra {
    pub fn base(&self) -> &Base {
        &self.base
    }

    /// The minimal GS basis of `B` in use (the multiplication table in finite mode).
    pub fn r(&self) -> &Presentation {
        &self.r
    }

    pub fn module(&self) -> &BimoduleSpec {
        &self.module
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn s1(&self) -> &Presentation {
        &self.s1
    }

    pub fn working_degree(&self) -> usize {
        self.working_degree
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem { m_part: linalg::zero_vector(self.r.field(), self.module.dim()), b_part: Poly::zero(self.r.field()) }
    }

    /// `m + nf(b)`
    pub fn elem(&self, m_part: Vector, b: &Poly) -> ExtElem {
        ExtElem { m_part, b_part: self.r.normal_form(b) }
    }

    pub fn module_elem(&self, j: usize) -> ExtElem {
        ExtElem { m_part: self.module.basis_vector(j), ..self.zero() }
    }

    pub fn word_elem(&self, w: &Word) -> ExtElem {
        self.elem(linalg::zero_vector(self.r.field(), self.module.dim()), &Poly::word(self.r.field(), w.clone()))
    }

    /// Splits a polynomial over the `S₁` alphabet whose `m`-words are single letters.
    pub fn split(&self, p: &Poly) -> Result<ExtElem> {
        let nx = self.r.alphabet().len() as Letter;
        let mut out = self.zero();
        let mut b = Poly::zero(self.r.field());
        for (w, c) in p.terms() {
            match w.letters() {
                [l] if *l >= nx => out.m_part[(*l - nx) as usize] += c,
                ls if ls.iter().all(|l| *l < nx) => b.add_term(w.clone(), c),
                _ => return Err(Error::Contract(format!("word {} mixes module and algebra letters", self.s1.alphabet().render_word(w)))),
            }
        }
        out.b_part = self.r.normal_form(&b);
        Ok(out)
    }

    /// The element as a polynomial over the `S₁` alphabet.
    pub fn to_poly(&self, e: &ExtElem) -> Poly {
        let nx = self.r.alphabet().len();
        let mut p = e.b_part.clone();
        for (j, c) in e.m_part.iter().enumerate() {
            p.add_term(Word::letter((nx + j) as Letter), c);
        }
        p
    }

    pub fn render_elem(&self, e: &ExtElem) -> String {
        self.to_poly(e).render(self.s1.alphabet())
    }

    fn right_act_poly(&self, v: &[crate::Scalar], b: &Poly) -> Vector {
        let mut out = linalg::zero_vector(self.r.field(), self.module.dim());
        for (w, c) in b.terms() {
            linalg::add_scaled(&mut out, &self.module.act(&Word::empty(), v, w), c);
        }
        out
    }

    fn left_act_poly(&self, b: &Poly, v: &[crate::Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.r.field(), self.module.dim());
        for (w, c) in b.terms() {
            linalg::add_scaled(&mut out, &self.module.act(w, v, &Word::empty()), c);
        }
        out
    }

    /// `(m + b)(m' + b') = m·b' + b·m' + factor + bb'`.
    ///
    /// In presentation mode the factor term collects `α·a·(u)·b` from each
    /// reduction step of `bb'`; in finite mode it is the bilinear `(b, b')`.
    pub fn ext_mul(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        let mut m = self.right_act_poly(&x.m_part, &y.b_part);
        linalg::add_scaled(&mut m, &self.left_act_poly(&x.b_part, &y.m_part), &self.r.field().one());
        match &self.base {
            Base::Presented(_) => {
                let trace = rewriting::reduce(&x.b_part.mul(&y.b_part), &self.r);
                for s in &trace.steps {
                    let v = &self.assignment[&FactorSymbol::Relation(s.relation.clone())];
                    linalg::add_scaled(&mut m, &self.module.act(&s.left, v, &s.right), &s.coeff);
                }
                ExtElem { m_part: m, b_part: trace.remainder }
            }
            Base::Finite(spec) => {
                let (bx, by) = (self.coords(&x.b_part), self.coords(&y.b_part));
                linalg::add_scaled(&mut m, &spec.factor_of(&bx, &by), &self.r.field().one());
                ExtElem { m_part: m, b_part: self.from_coords(&spec.product(&bx, &by)) }
            }
        }
    }

    fn coords(&self, b: &Poly) -> Vector {
        let mut v = linalg::zero_vector(self.r.field(), self.r.alphabet().len());
        for (w, c) in b.terms() {
            v[w.letters()[0] as usize] = c.clone();
        }
        v
    }

    fn from_coords(&self, v: &[crate::Scalar]) -> Poly {
        let mut p = Poly::zero(self.r.field());
        for (i, c) in v.iter().enumerate() {
            p.add_term(Word::letter(i as Letter), c);
        }
        p
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Desk-scale check of the extension axioms: `M² = 0`, `M` an ideal, `A/M ≅ B`,
/// agreement with `S₁`-reduction, and associativity on basis triples of total
/// degree at most `max_deg` (module basis elements count as degree 1).
pub fn verify_extension(a: &ExtensionAlgebra, max_deg: usize) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let s1 = a.s1.alphabet();
    let d = a.module.dim();
    let fail = |rep: &mut VerifyReport, ok: bool, what: String| {
        rep.checked += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    for i in 0..d {
        for j in 0..d {
            let p = a.ext_mul(&a.module_elem(i), &a.module_elem(j));
            fail(&mut rep, p == a.zero(), format!("M^2: {}*{} = {}", s1.name(i as Letter), s1.name(j as Letter), a.render_elem(&p)));
        }
    }
    let nx = a.r.alphabet().len();
    for x in 0..nx as Letter {
        let xe = a.word_elem(&Word::letter(x));
        for j in 0..d {
            let mj = a.module_elem(j);
            let mname = &a.module.basis()[j];
            let l = a.ext_mul(&xe, &mj);
            fail(&mut rep, l.b_part.is_zero(), format!("ideal: {}*{mname} = {}", s1.name(x), a.render_elem(&l)));
            let r = a.ext_mul(&mj, &xe);
            fail(&mut rep, r.b_part.is_zero(), format!("ideal: {mname}*{} = {}", s1.name(x), a.render_elem(&r)));
        }
    }
    let words = rewriting::irr(&a.r, max_deg).unwrap_or_default();
    for v in &words {
        for w in &words {
            let p = a.ext_mul(&a.word_elem(v), &a.word_elem(w));
            let vw = v.concat(w);
            let nf = a.r.normal_form(&Poly::word(a.r.field(), vw.clone()));
            fail(&mut rep, p.b_part == nf, format!("quotient: {}*{}", s1.render_word(v), s1.render_word(w)));
            if v.deg() + w.deg() <= max_deg {
                let direct = a.s1.normal_form(&Poly::word(a.r.field(), vw));
                let ok = a.split(&direct).map(|e| e == p).unwrap_or(false);
                fail(&mut rep, ok, format!("S1 reduction: {}*{}", s1.render_word(v), s1.render_word(w)));
            }
        }
    }
    let mut basis: Vec<(usize, ExtElem)> = (0..d).map(|j| (1, a.module_elem(j))).collect();
    basis.extend(words.iter().map(|w| (w.deg(), a.word_elem(w))));
    for (dx, x) in &basis {
        for (dy, y) in &basis {
            for (dz, z) in &basis {
                if dx + dy + dz > max_deg {
                    continue;
                }
                let left = a.ext_mul(&a.ext_mul(x, y), z);
                let right = a.ext_mul(x, &a.ext_mul(y, z));
                fail(
                    &mut rep,
                    left == right,
                    format!("associativity: ({})({})({})", a.render_elem(x), a.render_elem(y), a.render_elem(z)),
                );
            }
        }
    }
    rep
}

/// Recovers `(u)` as the `M`-part of `nf_{S₁}(u) − nf_{S₁}(f_u)`.
pub fn extract_factor_set(a: &ExtensionAlgebra) -> Result<Assignment> {
    let mut out = Assignment::new();
    for rel in a.r.relations() {
        let u = a.split(&a.s1.normal_form(&Poly::word(a.r.field(), rel.lead().clone())))?;
        let fu = a.split(&a.s1.normal_form(&rel.tail()))?;
        let mut v = u.m_part;
        linalg::add_scaled(&mut v, &fu.m_part, &-a.r.field().one());
        out.insert(FactorSymbol::Relation(rel.name.clone()), v);
    }
    Ok(out)
}

/// Brute-force associativity of `M ⊕ B` under `(m+b)(m'+b') = mb' + bm' + (b,b') + bb'`.
pub fn associativity_check(spec: &FiniteAlgebraSpec) -> bool {
    let field = spec.field();
    let (n, d) = (spec.dim(), spec.module().dim());
    let mul = |x: &(Vector, Vector), y: &(Vector, Vector)| -> (Vector, Vector) {
        let one = field.one();
        let mut m = spec.right_act(&x.0, &y.1);
        linalg::add_scaled(&mut m, &spec.left_act(&x.1, &y.0), &one);
        linalg::add_scaled(&mut m, &spec.factor_of(&x.1, &y.1), &one);
        (m, spec.product(&x.1, &y.1))
    };
    let mut basis = Vec::new();
    for j in 0..d {
        basis.push((spec.module().basis_vector(j), linalg::zero_vector(field, n)));
    }
    for i in 0..n {
        basis.push((linalg::zero_vector(field, d), spec.unit(i)));
    }
    basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| basis.iter().all(|z| mul(&mul(x, y), z) == mul(x, &mul(y, z))))
    })
}
