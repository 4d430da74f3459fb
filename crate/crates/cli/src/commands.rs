use cstar_core::document::Document;
use cstar_core::gelfand::characters;
use cstar_core::ideals::{ideal_from_closed_set, quotient};
use cstar_core::spectral::{apply_function, apply_polynomial, classify_element, spectrum};
use cstar_core::{Complex64, Element};
use serde_json::json;

use crate::output::{complex, complex_set, pair, pairs, Report};
use crate::Failure;

pub fn load(input: Option<&str>, doc: Option<&str>) -> Result<Element, Failure> {
    let text = match (input, doc) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("cannot read {path}: {e}")))?,
        (None, Some(inline)) => inline.to_string(),
        _ => return Err(Failure::Invalid("exactly one of --input or --doc is required".into())),
    };
    Ok(Document::parse(&text)?.into_element()?)
}

pub fn spectrum_cmd(a: &Element, tol: f64, report: &mut Report) {
    let sigma = spectrum(a, tol);
    report.emit(
        || complex_set(sigma.points()),
        || json!({"kind": "spectrum", "points": pairs(sigma.points()), "radius": sigma.max_modulus()}),
    );
}

pub fn classify_cmd(a: &Element, tol: f64, report: &mut Report) {
    let r = classify_element(a, tol);
    let sigma = spectrum(a, tol);
    let rows = [
        ("self_adjoint", r.flags.self_adjoint, r.witness_tolerances.self_adjoint, r.containment.self_adjoint),
        ("unitary", r.flags.unitary, r.witness_tolerances.unitary, r.containment.unitary),
        ("projection", r.flags.projection, r.witness_tolerances.projection, r.containment.projection),
        ("positive", r.flags.positive, r.witness_tolerances.positive, r.containment.positive),
    ];
    for (class, flag, defect, containment) in rows {
        report.emit(
            || format!("{class}: {} (defect {defect:.3e}, spectrum distance {containment:.3e})", if flag { "yes" } else { "no" }),
            || json!({"kind": "class", "class": class, "flag": flag, "defect": finite(defect), "containment": containment}),
        );
    }
    report.emit(
        || format!("spectrum: {}", complex_set(sigma.points())),
        || json!({"kind": "spectrum", "points": pairs(sigma.points())}),
    );
    if let Some(z) = r.offending_value {
        report.emit(
            || format!("not positive: spectral value {}", complex(z)),
            || json!({"kind": "offending_value", "value": pair(z)}),
        );
    }
}

fn finite(x: f64) -> serde_json::Value {
    if x.is_finite() { json!(x) } else { json!(null) }
}

pub enum Calculus {
    Polynomial(Vec<Complex64>),
    Named(String),
}

pub fn parse_polynomial(text: &str) -> Result<Vec<Complex64>, Failure> {
    text.split(',')
        .map(|term| {
            let term = term.trim();
            let parsed = match term.split_once(':') {
                Some((re, im)) => re.parse().and_then(|re| im.parse().map(|im| Complex64::new(re, im))),
                None => term.parse().map(|re| Complex64::new(re, 0.0)),
            };
            parsed.map_err(|_| Failure::Invalid(format!("bad coefficient {term:?}; use re or re:im")))
        })
        .collect()
}

fn named(name: &str) -> Result<fn(Complex64) -> Complex64, Failure> {
    Ok(match name {
        "exp" => |z: Complex64| z.exp(),
        "log" => |z: Complex64| z.ln(),
        "sqrt" => |z: Complex64| z.sqrt(),
        "sin" => |z: Complex64| z.sin(),
        "cos" => |z: Complex64| z.cos(),
        "abs" => |z: Complex64| Complex64::new(z.norm(), 0.0),
        "conj" => |z: Complex64| z.conj(),
        "inv" => |z: Complex64| z.inv(),
        other => return Err(Failure::Invalid(format!("unknown function {other:?}"))),
    })
}

pub fn calculus_cmd(a: &Element, how: &Calculus, tol: f64, report: &mut Report) -> Result<(), Failure> {
    let image = match how {
        Calculus::Polynomial(p) => apply_polynomial(p, a),
        Calculus::Named(name) => apply_function(a, named(name)?)?,
    };
    let doc = Document::from_element(&image);
    let sigma = spectrum(&image, tol);
    report.emit(
        || format!("result: {}", doc.to_json()),
        || json!({"kind": "result", "document": serde_json::from_str::<serde_json::Value>(&doc.to_json()).expect("valid json")}),
    );
    report.emit(
        || format!("spectrum: {}", complex_set(sigma.points())),
        || json!({"kind": "spectrum", "points": pairs(sigma.points())}),
    );
    Ok(())
}

pub fn quotient_cmd(a: &Element, zero_set: &[String], report: &mut Report) -> Result<(), Failure> {
    let ideal = ideal_from_closed_set(a.algebra(), zero_set)?;
    let (q, pi) = quotient(&ideal)?;
    let class = pi.apply(a)?;
    let labels = q.algebra().character_labels();
    let norm = q.quotient_norm(a)?;
    report.emit(
        || format!("quotient by the ideal vanishing on {{{}}}: dimension {}", labels.labels().join(", "), q.dim()),
        || json!({"kind": "quotient", "zero_set": labels.labels(), "dim": q.dim()}),
    );
    report.emit(
        || {
            let parts: Vec<String> = labels.labels().iter().zip(class.coords()).map(|(l, &z)| format!("{l}: {}", complex(z))).collect();
            format!("class: {{{}}}, quotient norm {}", parts.join(", "), complex(Complex64::new(norm, 0.0)))
        },
        || json!({"kind": "class", "values": pairs(class.coords()), "quotient_norm": norm}),
    );
    Ok(())
}

pub fn characters_cmd(a: &Element, report: &mut Report) -> Result<(), Failure> {
    let space = characters(a.algebra());
    let labels = a.algebra().character_labels();
    for (phi, name) in space.characters().iter().zip(space.as_space().labels()) {
        let value = phi.evaluate(a)?;
        let at = labels.label(phi.index());
        report.emit(
            || format!("{name} (at {at}): {}", complex(value)),
            || json!({"kind": "character", "name": name, "at": at, "value": pair(value)}),
        );
    }
    Ok(())
}
