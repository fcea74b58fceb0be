//! Command dispatch and rendering for the `gsext` binary.
//!
//! Exit codes: 0 property holds / computation complete, 1 property fails,
//! 2 input error, 3 truncated by a degree or iteration cap.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde_json::json;

use crate::construct::{self, build_extension, verify_extension};
use crate::error::{Error, Result};
use crate::extension::{self, check_bimodule, derive_conditions, specialize, BimoduleExpr};
use crate::freealg::Alphabet;
use crate::linalg;
use crate::problem::{self, Base, Factor, Problem};
use crate::rewriting::{self, CompletionStatus, Presentation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    GsbCheck,
    Complete,
    Nf,
    Irr,
    ExtConditions,
    ExtCocycle,
    ExtVerify,
    ExtBuild,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub format: Format,
    pub max_deg: Option<usize>,
    pub max_iter: Option<usize>,
    /// Where `ext-build` writes the extended presentation; stdout when unset.
    pub output: Option<PathBuf>,
}

/// Parses `text`, runs `cmd` and returns the exit code and rendered output.
/// The output always ends with exactly one newline.
pub fn run_command(cmd: Command, text: &str, opts: &Options) -> (i32, String) {
    let (code, out) = match problem::parse_problem(text).and_then(|p| dispatch(cmd, &p, opts)) {
        Ok(r) => r,
        Err(e) => (exit_code(&e), render_error(&e, opts.format)),
    };
    (code, format!("{}\n", out.trim_end()))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Contract(_) | Error::Condition { .. } => EXIT_FAILS,
        _ => EXIT_INPUT,
    }
}

fn render_error(e: &Error, format: Format) -> String {
    match format {
        Format::Text => format!("error: {e}"),
        Format::Machine => json!({"error": e.to_string()}).to_string(),
    }
}

fn dispatch(cmd: Command, p: &Problem, opts: &Options) -> Result<(i32, String)> {
    let max_deg = opts.max_deg.or(p.options.max_deg);
    let max_iter = opts.max_iter.or(p.options.max_iter);
    match cmd {
        Command::GsbCheck => gsb_check(&p.presentation()?, opts.format),
        Command::Complete => complete(&p.presentation()?, max_deg, max_iter, opts.format),
        Command::Nf => nf(p, opts.format),
        Command::Irr => irr(&p.presentation()?, max_deg, opts.format),
        Command::ExtConditions => ext_conditions(p, opts.format),
        Command::ExtCocycle => ext_cocycle(p, opts.format),
        Command::ExtVerify => ext_verify(p, opts.format),
        Command::ExtBuild => ext_build(p, max_deg, opts),
    }
}

fn lines(records: Vec<serde_json::Value>) -> String {
    records.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

fn gsb_check(p: &Presentation, format: Format) -> Result<(i32, String)> {
    let report = rewriting::is_gsb(p);
    let a = p.alphabet();
    let code = if report.is_basis { EXIT_OK } else { EXIT_FAILS };
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "GS basis: {}, compositions checked: {}",
                if report.is_basis { "yes" } else { "no" },
                report.checked
            );
            for f in &report.failures {
                let _ = write!(s, "\nfailure: {}: remainder {}", f.composition.describe(a), f.remainder.render(a));
            }
            s
        }
        Format::Machine => {
            let mut recs = vec![json!({"is_basis": report.is_basis, "checked": report.checked})];
            recs.extend(report.failures.iter().map(|f| {
                json!({"failure": f.composition.describe(a), "remainder": f.remainder.render(a)})
            }));
            lines(recs)
        }
    };
    Ok((code, out))
}

fn complete(p: &Presentation, max_deg: Option<usize>, max_iter: Option<usize>, format: Format) -> Result<(i32, String)> {
    let max_deg = max_deg.unwrap_or(2 * p.max_lead_deg()).max(p.max_lead_deg());
    let c = rewriting::complete(p, max_deg, max_iter.unwrap_or(20));
    let code = if c.status == CompletionStatus::Complete { EXIT_OK } else { EXIT_TRUNCATED };
    let out = match format {
        Format::Text => {
            let mut s = format!("status: {}\nadded: {}\n", c.status, c.added.len());
            s.push_str(&c.presentation.render());
            s
        }
        Format::Machine => {
            let a = c.presentation.alphabet();
            let mut recs = vec![json!({"status": c.status.to_string(), "added": c.added})];
            recs.extend(c.presentation.relations().iter().map(|r| relation_record(&r.name, &r.poly, a)));
            lines(recs)
        }
    };
    Ok((code, out))
}

fn relation_record(name: &str, poly: &crate::Poly, a: &Alphabet) -> serde_json::Value {
    let terms: Vec<_> = poly.terms().map(|(w, c)| json!([c.to_string(), a.render_word(w)])).collect();
    json!({"relation": name, "terms": terms})
}

fn nf(p: &Problem, format: Format) -> Result<(i32, String)> {
    let pres = p.presentation()?;
    let a = pres.alphabet();
    let mut recs = Vec::new();
    let mut text = Vec::new();
    for q in &p.queries {
        let r = pres.normal_form(q);
        text.push(format!("nf({}) = {}", q.render(a), r.render(a)));
        recs.push(json!({"input": q.render(a), "normal_form": r.render(a)}));
    }
    let out = match format {
        Format::Text if text.is_empty() => "no queries".to_string(),
        Format::Text => text.join("\n"),
        Format::Machine => lines(recs),
    };
    Ok((EXIT_OK, out))
}

fn irr(p: &Presentation, max_deg: Option<usize>, format: Format) -> Result<(i32, String)> {
    let d = max_deg.unwrap_or(p.max_lead_deg());
    let words = rewriting::irr(p, d)?;
    let names: Vec<String> = words.iter().map(|w| p.alphabet().render_word(w)).collect();
    let out = match format {
        Format::Text => {
            let mut s = format!("Irr up to degree {d}: {} words", names.len());
            for n in &names {
                s.push('\n');
                s.push_str(n);
            }
            s
        }
        Format::Machine => json!({"max_deg": d, "count": names.len(), "words": names}).to_string(),
    };
    Ok((EXIT_OK, out))
}

fn expr_record(e: &BimoduleExpr, a: &Alphabet) -> serde_json::Value {
    let terms: Vec<_> = e
        .terms()
        .map(|(s, l, r, c)| json!({"a": a.render_word(l), "symbol": s.render(a), "b": a.render_word(r), "coeff": c.to_string()}))
        .collect();
    json!(terms)
}

fn ext_conditions(p: &Problem, format: Format) -> Result<(i32, String)> {
    let pres = p.presentation()?;
    let d = derive_conditions(&pres)?;
    let r = &d.presentation;
    let a = r.alphabet();
    let lens = match &p.factor {
        Factor::Pairs { antisymmetric, .. } => Some(*antisymmetric),
        _ => None,
    };
    let mut conds = Vec::new();
    for c in &d.conditions {
        let expr = match lens {
            Some(anti) => extension::expand_pair_symbols(c, r, anti)?.expr.canonical(),
            None => c.expr.clone(),
        };
        conds.push((c, expr));
    }
    let out = match format {
        Format::Text => {
            let mut s = String::new();
            if !d.removed.is_empty() {
                let _ = writeln!(s, "warning: not minimal; removed {}", d.removed.join(", "));
            }
            let _ = write!(s, "conditions: {} (vanishing: {})", conds.len(), d.dropped_zero);
            for (c, e) in &conds {
                let flag = if c.self_overlap { " [self-overlap]" } else { "" };
                let _ = write!(s, "\n{}{flag}: {}", c.source.describe(a), e.render(a));
            }
            s
        }
        Format::Machine => {
            let mut recs = vec![json!({"conditions": conds.len(), "vanishing": d.dropped_zero, "removed": d.removed})];
            recs.extend(conds.iter().map(|(c, e)| {
                json!({
                    "composition": c.source.describe(a),
                    "w": a.render_word(&c.source.w),
                    "self_overlap": c.self_overlap,
                    "terms": expr_record(e, a),
                })
            }));
            lines(recs)
        }
    };
    Ok((EXIT_OK, out))
}

fn ext_cocycle(p: &Problem, format: Format) -> Result<(i32, String)> {
    let Base::Finite(spec) = &p.base else {
        return Err(Error::Input("ext-cocycle needs a finite-mode file".into()));
    };
    let bad = extension::cocycle_check(spec);
    let assoc = construct::associativity_check(spec);
    let b = spec.basis();
    let code = if bad.is_empty() { EXIT_OK } else { EXIT_FAILS };
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "cocycle: {}, violations: {}\nassociative: {}",
                if bad.is_empty() { "yes" } else { "no" },
                bad.len(),
                if assoc { "yes" } else { "no" }
            );
            for &(i, j, k) in &bad {
                let v = extension::cocycle_value(spec, i, j, k);
                let _ = write!(s, "\nviolation at ({}, {}, {}): {}", b[i], b[j], b[k], linalg::render_vector(&v));
            }
            s
        }
        Format::Machine => {
            let mut recs = vec![json!({"cocycle": bad.is_empty(), "associative": assoc, "violations": bad.len()})];
            recs.extend(bad.iter().map(|&(i, j, k)| {
                let v = extension::cocycle_value(spec, i, j, k);
                json!({"triple": [b[i], b[j], b[k]], "value": v.iter().map(ToString::to_string).collect::<Vec<_>>()})
            }));
            lines(recs)
        }
    };
    Ok((code, out))
}

fn concrete(p: &Problem) -> Result<&extension::Assignment> {
    match &p.factor {
        Factor::Concrete(a) | Factor::Pairs { values: Some(a), .. } => Ok(a),
        _ => Err(Error::Input("factor: concrete values are required".into())),
    }
}

fn ext_verify(p: &Problem, format: Format) -> Result<(i32, String)> {
    let module = p.module.as_ref().ok_or_else(|| Error::Input("module: required".into()))?;
    if let Base::Finite(_) = p.base {
        return ext_cocycle(p, format);
    }
    let pres = p.presentation()?;
    let assignment = concrete(p)?;
    let d = derive_conditions(&pres)?;
    let r = &d.presentation;
    let a = r.alphabet();
    let bim = check_bimodule(r, module)?;
    let mut failures = Vec::new();
    for v in &bim.violations {
        failures.push((format!("bimodule: {v:?}"), String::new()));
    }
    if bim.passes() {
        for c in &d.conditions {
            let value = specialize(&c.expr, module, assignment)?;
            if !linalg::is_zero_vector(&value) {
                failures.push((c.source.describe(a), linalg::render_vector(&value)));
            }
        }
    }
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_FAILS };
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "extension conditions: {}, checked: {}, violated: {}",
                if failures.is_empty() { "hold" } else { "fail" },
                d.conditions.len(),
                failures.len()
            );
            for (what, value) in &failures {
                let _ = write!(s, "\nviolated at {what}");
                if !value.is_empty() {
                    let _ = write!(s, ": value {value}");
                }
            }
            s
        }
        Format::Machine => {
            let mut recs = vec![json!({"holds": failures.is_empty(), "checked": d.conditions.len()})];
            recs.extend(failures.iter().map(|(w, v)| json!({"violated": w, "value": v})));
            lines(recs)
        }
    };
    Ok((code, out))
}

fn ext_build(p: &Problem, max_deg: Option<usize>, opts: &Options) -> Result<(i32, String)> {
    let module = p.module.clone().ok_or_else(|| Error::Input("module: required".into()))?;
    let alg = match &p.base {
        Base::Presentation(pres) => {
            build_extension(construct::Base::Presented(pres.clone()), module, Some(concrete(p)?.clone()))?
        }
        Base::Finite(spec) => build_extension(construct::Base::Finite(spec.clone()), module, None)?,
    };
    let d = max_deg.unwrap_or(alg.working_degree());
    let report = verify_extension(&alg, d);
    if let Some(f) = report.failures.first() {
        return Err(Error::Contract(format!("verification failed: {f}")));
    }
    let file = problem::render_file(&problem::presentation_file(alg.s1()));
    let summary = format!(
        "built: {} relations over {} letters; verified {} checks up to degree {d}",
        alg.s1().relations().len(),
        alg.s1().alphabet().len(),
        report.checked
    );
    let out = match (&opts.output, opts.format) {
        (Some(path), format) => {
            std::fs::write(path, &file).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            match format {
                Format::Text => format!("{summary}\nwritten: {}", path.display()),
                Format::Machine => json!({"relations": alg.s1().relations().len(), "checks": report.checked, "max_deg": d, "written": path.display().to_string()}).to_string(),
            }
        }
        (None, _) => file,
    };
    Ok((EXIT_OK, out))
}
