//! Canonical JSON for computed objects and the plain-text rendering of it.
//! Keys are sorted (serde_json's default map is a `BTreeMap`), strata come
//! out of normalization already sorted, and polynomials use their canonical
//! printed form, so equal results give equal bytes.

use dgloci::dgring::CohomologyTable;
use dgloci::dualizing::DualizingTable;
use dgloci::loci::{Conclusion, GlobalCmVerdict, GorCertificate, LengthTest, LengthVerdict, LociReport, PrimesSummary, Section};
use dgloci::modcomplex::{Length, PresentedModule};
use dgloci::polyalg::{Ideal, Matrix, Polynomial};
use dgloci::spectrum::{AmpStratum, ConstructibleSet, CoverPiece};
use serde_json::{json, Map, Value};

use crate::CliError;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

type R = Result<Value, CliError>;

fn ce(op: &str) -> impl Fn(dgloci::Error) -> CliError + '_ {
    move |e| CliError::compute(op, e)
}

pub fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

/// An ideal as its reduced Gröbner basis.
pub fn ideal(i: &Ideal) -> R {
    Ok(json!(i.canonical_strings().map_err(ce("ideal"))?))
}

pub fn matrix(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| poly(m.get(i, j))).collect())).collect();
    Value::Array(rows)
}

pub fn set(s: &ConstructibleSet) -> R {
    let strata = s
        .describe()
        .map_err(ce("constructible set"))?
        .into_iter()
        .map(|(closed, open)| json!({ "closed": closed, "open": open }))
        .collect::<Vec<_>>();
    Ok(json!({ "strata": strata }))
}

pub fn module(m: &PresentedModule) -> R {
    let length = match m.length().map_err(ce("length"))? {
        Length::Finite(n) => json!(n),
        Length::Infinite => json!("infinite"),
    };
    Ok(json!({
        "annihilator": ideal(&m.annihilator().map_err(ce("annihilator"))?)?,
        "dimension": m.dimension().map_err(ce("dimension"))?,
        "length": length,
        "generators": m.rank(),
        "relations": matrix(&m.relations()),
    }))
}

fn bounds(b: (i32, i32, i32)) -> Value {
    json!({ "inf": b.0, "sup": b.1, "amplitude": b.2 })
}

pub fn table(t: &CohomologyTable) -> R {
    let mut degrees = Vec::new();
    for &n in t.nonzero_degrees() {
        let mut entry = module(t.get(n).expect("nonzero degree is stored"))?;
        entry["degree"] = json!(n);
        degrees.push(entry);
    }
    Ok(json!({
        "bounds": bounds(t.amplitude_bounds().map_err(ce("cohomology"))?),
        "degrees": degrees,
    }))
}

pub fn dualizing(d: &DualizingTable) -> R {
    Ok(json!({
        "normalization_shift": d.normalization_shift,
        "resolution_complete": d.resolution_complete,
        "resolution_steps": d.resolution_steps,
        "cohomology": table(&d.table)?,
    }))
}

pub fn stratification(s: &[AmpStratum]) -> R {
    s.iter()
        .map(|a| {
            Ok(json!({
                "degrees": a.degrees,
                "amplitude": a.amplitude(),
                "set": set(&a.set)?,
            }))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Value::Array)
}

pub fn primes(p: &PrimesSummary) -> R {
    Ok(json!({
        "mode": p.mode,
        "primes": p.primes.iter().map(ideal).collect::<Result<Vec<_>, _>>()?,
    }))
}

pub fn cover(c: &[CoverPiece]) -> R {
    c.iter()
        .map(|p| Ok(json!({ "element": poly(&p.element), "prime": ideal(&p.prime)? })))
        .collect::<Result<Vec<_>, _>>()
        .map(Value::Array)
}

fn length_test(t: &LengthTest) -> Value {
    let verdict = match &t.verdict {
        LengthVerdict::NotGorenstein { i, left, right } => {
            json!({ "kind": "not_gorenstein", "i": i, "left": left, "right": right })
        }
        LengthVerdict::Inconclusive => json!({ "kind": "inconclusive" }),
        LengthVerdict::VaryingAmplitude => json!({ "kind": "varying_amplitude" }),
    };
    let lengths: Vec<Value> = t.lengths.iter().map(|(d, l)| json!({ "degree": d, "length": l })).collect();
    json!({ "amplitude": t.amplitude, "lengths": lengths, "verdict": verdict })
}

pub fn gor(g: &GorCertificate) -> Value {
    let e = &g.evidence;
    json!({
        "status": g.status.name(),
        "evidence": {
            "argument": e.argument,
            "piece_degree": e.piece_degree,
            "piece_rank": e.piece_rank,
            "reduction_complete": e.reduction_complete,
            "regular_sequence": polys(&e.regular_sequence),
            "sample": e.sample.as_ref().map(length_test),
        },
    })
}

fn conclusion(c: &Conclusion) -> Value {
    json!({ "tag": c.tag, "statement": c.statement })
}

pub fn verdict(v: &GlobalCmVerdict) -> Value {
    json!({
        "amp_a": v.amp_a,
        "amp_r": v.amp_r,
        "amp_equal": v.amp_equal,
        "irreducible": v.irreducible,
        "equidimensional": v.equidimensional,
        "full_bottom_support": v.full_bottom_support,
        "cm_everywhere": v.cm_everywhere,
        "conclusions": v.conclusions.iter().map(conclusion).collect::<Vec<_>>(),
    })
}

pub fn section<T>(s: &Section<T>, f: impl FnOnce(&T) -> R) -> R {
    match s {
        Section::Computed(v) => f(v),
        Section::Unavailable(reason) => Ok(json!({ "unavailable": reason })),
    }
}

pub fn report(r: &LociReport) -> R {
    let mut m = Map::new();
    m.insert("h0_ideal".into(), ideal(&r.h0_ideal)?);
    m.insert("cohomology".into(), table(&r.table_a)?);
    m.insert("dualizing".into(), dualizing(&r.dualizing)?);
    m.insert("minimal_primes".into(), section(&r.primes, primes)?);
    m.insert("cover".into(), section(&r.cover, |c| cover(c))?);
    m.insert("stratification_a".into(), stratification(&r.stratification_a)?);
    m.insert("stratification_r".into(), stratification(&r.stratification_r)?);
    m.insert("reg".into(), section(&r.reg, set)?);
    m.insert("cm_exact".into(), set(&r.cm_exact)?);
    m.insert("cm_dense_open".into(), section(&r.cm_dense_open, set)?);
    m.insert("gor".into(), section(&r.gor, |g| Ok(gor(g)))?);
    m.insert("global".into(), verdict(&r.global));
    Ok(Value::Object(m))
}

/// Serializes a command result. Both formats end with a newline.
pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(v, 0, &mut s);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| x.is_string() || x.is_number()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.len() == 1 && o.contains_key("strata") => Some(set_text(&o["strata"])),
        _ => None,
    }
}

fn ideal_text(v: &Value) -> String {
    let gens: Vec<String> = v.as_array().into_iter().flatten().filter_map(|g| g.as_str().map(str::to_string)).collect();
    format!("({})", gens.join(", "))
}

/// `V(closed) \ V(open)` pieces joined by `∪`.
fn set_text(strata: &Value) -> String {
    let parts: Vec<String> = strata
        .as_array()
        .into_iter()
        .flatten()
        .map(|s| format!("V{} \\ V{}", ideal_text(&s["closed"]), ideal_text(&s["open"])))
        .collect();
    if parts.is_empty() {
        "empty".into()
    } else {
        parts.join(" ∪ ")
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgloci::polyalg::{FieldSpec, PolyRing};

    #[test]
    fn empty_set_is_an_empty_strata_list() {
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x"]).unwrap();
        let s = ConstructibleSet::empty(&Ideal::zero(&r));
        assert_eq!(set(&s).unwrap(), json!({ "strata": [] }));
        assert_eq!(emit(&json!({ "reg": set(&s).unwrap() }), Format::Text), "reg: empty\n");
    }

    #[test]
    fn text_rendering_of_sets_and_nesting() {
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap();
        let i0 = Ideal::parse(&r, &["x*y"]).unwrap();
        let s = ConstructibleSet::basic_open(&i0, &r.parse("x").unwrap()).unwrap();
        let v = json!({ "a": { "set": set(&s).unwrap(), "n": 2 } });
        assert_eq!(emit(&v, Format::Text), "a:\n  n: 2\n  set: V(x*y) \\ V(x)\n");
        assert!(emit(&v, Format::Json).starts_with("{\n  \"a\": {\n    \"n\": 2,"));
    }
}
