#![allow(dead_code)]

use gsext::problem::{self, Base, Problem};
use gsext::rewriting::Presentation;
use gsext::{Field, Poly, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture(name: &str) -> Problem {
    problem::parse_problem(&fixture_text(name)).unwrap()
}

pub fn presentation(name: &str) -> Presentation {
    fixture(name).presentation().unwrap()
}

/// Same fixture with its field replaced.
pub fn presentation_over(name: &str, field: &str) -> Presentation {
    let mut raw = problem::parse_file(&fixture_text(name)).unwrap();
    raw.field = field.to_string();
    match problem::validate(&raw).unwrap().base {
        Base::Presentation(p) => p,
        Base::Finite(spec) => spec.to_presentation().unwrap(),
    }
}

pub fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> gsext::Scalar {
    match field {
        Field::Rational => field.parse(&format!("{}/{}", rng.gen_range(-6..=6), rng.gen_range(1..=4))).unwrap(),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, letters: usize, min: usize, max: usize) -> Word {
    let n = rng.gen_range(min..=max);
    Word::new((0..n).map(|_| rng.gen_range(0..letters as u32)).collect())
}

pub fn random_poly(rng: &mut ChaCha8Rng, p: &Presentation, terms: usize, max_deg: usize) -> Poly {
    let mut f = Poly::zero(p.field());
    for _ in 0..terms {
        let w = random_word(rng, p.alphabet().len(), 1, max_deg);
        f.add_term(w, &random_scalar(rng, p.field()));
    }
    f
}

/// A random element `Σ c·a·s·b` of the ideal with every term of degree at most `max_deg`.
pub fn random_ideal_element(rng: &mut ChaCha8Rng, p: &Presentation, terms: usize, max_deg: usize) -> Poly {
    let mut g = Poly::zero(p.field());
    for _ in 0..terms {
        let rel = &p.relations()[rng.gen_range(0..p.relations().len())];
        let room = max_deg.saturating_sub(rel.poly.max_deg());
        let la = rng.gen_range(0..=room);
        let lb = rng.gen_range(0..=room - la);
        let a = random_word(rng, p.alphabet().len(), la, la);
        let b = random_word(rng, p.alphabet().len(), lb, lb);
        g.add_sandwich(&random_scalar(rng, p.field()), &a, &rel.poly, &b);
    }
    g
}
