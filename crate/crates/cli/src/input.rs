//! The key-value input format: `[ring]`, `[dg]`, optional `[spectrum]` and
//! `[options]` sections.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use dgloci::dgring::{BaseAlgebra, Construction, DGRing};
use dgloci::loci::{Loci, LociOptions};
use dgloci::polyalg::{FieldSpec, Ideal, MonomialOrder, PolyRing, Polynomial};
use serde::Deserialize;
use toml::Spanned;

use crate::CliError;

/// A parse or validation failure located in the input text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    /// Section (or command-line flag) the failure belongs to.
    pub section: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: [{}] {}", self.line, self.column, self.section, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DgSpec {
    TrivialExt { piece_degree: i32, piece_rank: usize },
    Koszul { elements: Vec<Polynomial> },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DocOptions {
    pub order: Option<MonomialOrder>,
    pub window: Option<usize>,
    pub shift: Option<i32>,
    pub seed: Option<u64>,
    pub candidates: Option<Vec<Polynomial>>,
}

/// A validated input: every polynomial is parsed in `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub ring: Arc<PolyRing>,
    pub ideal: Vec<Polynomial>,
    pub dg: DgSpec,
    pub minimal_primes: Option<Vec<Vec<Polynomial>>>,
    pub options: DocOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    ring: Option<RawRing>,
    dg: Option<RawDg>,
    spectrum: Option<RawSpectrum>,
    options: Option<RawOptions>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    field: Spanned<String>,
    vars: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    ideal: Vec<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDg {
    kind: Spanned<String>,
    piece_degree: Option<Spanned<i64>>,
    piece_rank: Option<Spanned<i64>>,
    elements: Option<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    minimal_primes: Vec<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    order: Option<Spanned<String>>,
    window: Option<Spanned<i64>>,
    shift: Option<Spanned<i64>>,
    seed: Option<Spanned<i64>>,
    candidates: Option<Vec<Spanned<String>>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, text[line_start..offset].chars().count() + 1)
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn at(&self, span: Range<usize>, section: &str, message: impl Into<String>) -> CliError {
        let (line, column) = line_col(self.text, span.start);
        CliError::Input(Diagnostic { line, column, section: section.into(), message: message.into() })
    }

    /// Parses a polynomial string; errors point at the offending character
    /// inside the quoted value.
    fn poly(&self, ring: &Arc<PolyRing>, s: &Spanned<String>, section: &str) -> Result<Polynomial, CliError> {
        ring.parse(s.get_ref()).map_err(|e| {
            let span = s.span();
            let raw = &self.text[span.clone()];
            let open = if raw.starts_with("\"\"\"") || raw.starts_with("'''") { 3 } else { 1 };
            match e {
                dgloci::Error::Parse { column, message } => {
                    let skip: usize =
                        s.get_ref().chars().take(column.saturating_sub(1)).map(char::len_utf8).sum();
                    let start = (span.start + open + skip).min(span.end);
                    self.at(start..span.end, section, message)
                }
                other => self.at(span, section, other.to_string()),
            }
        })
    }

    fn polys(&self, ring: &Arc<PolyRing>, list: &[Spanned<String>], section: &str) -> Result<Vec<Polynomial>, CliError> {
        list.iter().map(|s| self.poly(ring, s, section)).collect()
    }
}

pub fn parse_field(name: &str) -> Option<FieldSpec> {
    match name {
        "QQ" | "Q" => Some(FieldSpec::rationals()),
        _ => {
            let p = name.strip_prefix("GF").or_else(|| name.strip_prefix('F'))?;
            FieldSpec::prime(p.parse().ok()?).ok()
        }
    }
}

pub fn parse_order(name: &str) -> Option<MonomialOrder> {
    match name {
        "grevlex" => Some(MonomialOrder::GRevLex),
        "lex" => Some(MonomialOrder::Lex),
        _ => None,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses and validates an input file.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let src = Source { text };
    let raw: RawDoc = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        let section = section_at(text, span.start);
        src.at(span, &section, e.message().to_string())
    })?;
    let ring_sec = raw.ring.ok_or_else(|| src.at(0..0, "ring", "missing [ring] section"))?;
    let dg_sec = raw.dg.ok_or_else(|| src.at(0..0, "dg", "missing [dg] section"))?;

    let order = match raw.options.as_ref().and_then(|o| o.order.as_ref()) {
        Some(o) => Some(
            parse_order(o.get_ref())
                .ok_or_else(|| src.at(o.span(), "options", format!("unknown monomial order `{}`", o.get_ref())))?,
        ),
        None => None,
    };
    let field = parse_field(ring_sec.field.get_ref()).ok_or_else(|| {
        src.at(
            ring_sec.field.span(),
            "ring",
            format!("unknown field `{}` (expected QQ or F<prime>)", ring_sec.field.get_ref()),
        )
    })?;
    let mut names: Vec<String> = Vec::new();
    for v in ring_sec.vars.get_ref() {
        if !is_identifier(v.get_ref()) {
            return Err(src.at(v.span(), "ring", format!("`{}` is not a valid variable name", v.get_ref())));
        }
        if names.contains(v.get_ref()) {
            return Err(src.at(v.span(), "ring", format!("variable `{}` declared twice", v.get_ref())));
        }
        names.push(v.get_ref().clone());
    }
    if names.is_empty() {
        return Err(src.at(ring_sec.vars.span(), "ring", "at least one variable is required"));
    }
    let ring = PolyRing::new(field, names, order.unwrap_or(MonomialOrder::GRevLex))
        .map_err(|e| src.at(ring_sec.vars.span(), "ring", e.to_string()))?;
    let ideal = src.polys(&ring, &ring_sec.ideal, "ring")?;

    let dg = match dg_sec.kind.get_ref().as_str() {
        "trivial_ext" => {
            let deg = dg_sec
                .piece_degree
                .as_ref()
                .ok_or_else(|| src.at(dg_sec.kind.span(), "dg", "trivial_ext needs piece_degree"))?;
            let rank = dg_sec
                .piece_rank
                .as_ref()
                .ok_or_else(|| src.at(dg_sec.kind.span(), "dg", "trivial_ext needs piece_rank"))?;
            if let Some(e) = dg_sec.elements.as_ref().and_then(|e| e.first()) {
                return Err(src.at(e.span(), "dg", "elements are only allowed for kind koszul"));
            }
            let piece_degree = i32::try_from(*deg.get_ref())
                .ok()
                .filter(|&d| d < 0)
                .ok_or_else(|| src.at(deg.span(), "dg", "piece_degree must be a negative integer"))?;
            let piece_rank = usize::try_from(*rank.get_ref())
                .ok()
                .filter(|&r| r > 0)
                .ok_or_else(|| src.at(rank.span(), "dg", "piece_rank must be a positive integer"))?;
            DgSpec::TrivialExt { piece_degree, piece_rank }
        }
        "koszul" => {
            if let Some(s) = dg_sec.piece_degree.as_ref().map(|s| s.span()).or(dg_sec.piece_rank.as_ref().map(|s| s.span())) {
                return Err(src.at(s, "dg", "piece_degree/piece_rank are only allowed for kind trivial_ext"));
            }
            DgSpec::Koszul { elements: src.polys(&ring, dg_sec.elements.as_deref().unwrap_or(&[]), "dg")? }
        }
        other => {
            return Err(src.at(
                dg_sec.kind.span(),
                "dg",
                format!("unknown kind `{other}` (expected trivial_ext or koszul)"),
            ))
        }
    };

    let minimal_primes = match &raw.spectrum {
        Some(s) => Some(s.minimal_primes.iter().map(|p| src.polys(&ring, p, "spectrum")).collect::<Result<_, _>>()?),
        None => None,
    };

    let mut options = DocOptions { order, ..DocOptions::default() };
    if let Some(o) = &raw.options {
        if let Some(w) = &o.window {
            options.window = Some(
                usize::try_from(*w.get_ref())
                    .ok()
                    .filter(|&w| w > 0)
                    .ok_or_else(|| src.at(w.span(), "options", "window must be a positive integer"))?,
            );
        }
        if let Some(s) = &o.shift {
            options.shift = Some(
                i32::try_from(*s.get_ref()).map_err(|_| src.at(s.span(), "options", "shift is out of range"))?,
            );
        }
        if let Some(s) = &o.seed {
            options.seed = Some(
                u64::try_from(*s.get_ref())
                    .map_err(|_| src.at(s.span(), "options", "seed must be a non-negative integer"))?,
            );
        }
        if let Some(c) = &o.candidates {
            options.candidates = Some(src.polys(&ring, c, "options")?);
        }
    }

    Ok(InputDocument { ring, ideal, dg, minimal_primes, options })
}

/// Name of the `[section]` header governing byte `offset`.
fn section_at(text: &str, offset: usize) -> String {
    let offset = offset.min(text.len());
    text[..offset]
        .lines()
        .rev()
        .find_map(|l| {
            let l = l.trim();
            l.strip_prefix('[').and_then(|r| r.strip_suffix(']')).map(|s| s.trim().to_string())
        })
        .unwrap_or_else(|| "document".into())
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn poly_list(ps: &[Polynomial]) -> String {
    let items: Vec<String> = ps.iter().map(|p| quote(&p.to_string())).collect();
    format!("[{}]", items.join(", "))
}

/// Prints a document in the input format; `parse_input` reads it back to an
/// equal document.
pub fn print_document(doc: &InputDocument) -> String {
    let mut out = String::new();
    let vars: Vec<String> = doc.ring.var_names().iter().map(|v| quote(v)).collect();
    out.push_str("[ring]\n");
    out.push_str(&format!("field = {}\n", quote(&doc.ring.field().to_string())));
    out.push_str(&format!("vars = [{}]\n", vars.join(", ")));
    out.push_str(&format!("ideal = {}\n", poly_list(&doc.ideal)));
    out.push_str("\n[dg]\n");
    match &doc.dg {
        DgSpec::TrivialExt { piece_degree, piece_rank } => {
            out.push_str("kind = \"trivial_ext\"\n");
            out.push_str(&format!("piece_degree = {piece_degree}\npiece_rank = {piece_rank}\n"));
        }
        DgSpec::Koszul { elements } => {
            out.push_str("kind = \"koszul\"\n");
            out.push_str(&format!("elements = {}\n", poly_list(elements)));
        }
    }
    if let Some(primes) = &doc.minimal_primes {
        let items: Vec<String> = primes.iter().map(|p| poly_list(p)).collect();
        out.push_str(&format!("\n[spectrum]\nminimal_primes = [{}]\n", items.join(", ")));
    }
    let o = &doc.options;
    if *o != DocOptions::default() {
        out.push_str("\n[options]\n");
        if let Some(order) = o.order {
            out.push_str(&format!("order = {}\n", quote(&order.name())));
        }
        if let Some(w) = o.window {
            out.push_str(&format!("window = {w}\n"));
        }
        if let Some(s) = o.shift {
            out.push_str(&format!("shift = {s}\n"));
        }
        if let Some(s) = o.seed {
            out.push_str(&format!("seed = {s}\n"));
        }
        if let Some(c) = &o.candidates {
            out.push_str(&format!("candidates = {}\n", poly_list(c)));
        }
    }
    out
}

impl InputDocument {
    /// The same document over the ring with `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Result<InputDocument, CliError> {
        let ring = self.ring.with_order(order).map_err(|e| CliError::compute("order", e))?;
        let ids: Vec<usize> = (0..ring.nvars()).collect();
        let map = |ps: &[Polynomial]| -> Vec<Polynomial> { ps.iter().map(|p| p.map_into(&ring, &ids)).collect() };
        Ok(InputDocument {
            ring: ring.clone(),
            ideal: map(&self.ideal),
            dg: match &self.dg {
                DgSpec::Koszul { elements } => DgSpec::Koszul { elements: map(elements) },
                t => t.clone(),
            },
            minimal_primes: self.minimal_primes.as_ref().map(|ps| ps.iter().map(|p| map(p)).collect()),
            options: DocOptions {
                order: Some(order),
                candidates: self.options.candidates.as_ref().map(|c| map(c)),
                ..self.options.clone()
            },
        })
    }

    pub fn dg_ring(&self) -> Result<DGRing, CliError> {
        let defining = Ideal::new(&self.ring, self.ideal.clone()).map_err(|e| CliError::compute("ring", e))?;
        let base = BaseAlgebra::new(&defining).map_err(|e| CliError::compute("ring", e))?;
        let construction = match &self.dg {
            DgSpec::TrivialExt { piece_degree, piece_rank } => {
                Construction::TrivialExt { piece_degree: *piece_degree, piece_rank: *piece_rank }
            }
            DgSpec::Koszul { elements } => Construction::Koszul { elements: elements.clone() },
        };
        let Some(primes) = &self.minimal_primes else {
            return DGRing::build(base, construction).map_err(|e| CliError::compute("dg", e));
        };
        // The declared primes are those of H^0(A); when H^0(A) = B they also
        // serve the base algebra (used by reductions along regular sequences).
        let spectrum = |e| CliError::compute("spectrum", e);
        let primes = primes
            .iter()
            .map(|p| Ideal::new(&self.ring, p.clone()))
            .collect::<dgloci::Result<Vec<_>>>()
            .map_err(spectrum)?;
        let a = DGRing::build(base.clone(), construction.clone()).map_err(|e| CliError::compute("dg", e))?;
        let h0 = a.h0_ideal().map_err(spectrum)?;
        if h0.equals(&defining).map_err(spectrum)? {
            let base = base.with_declared_primes(primes).map_err(spectrum)?;
            DGRing::build(base, construction).map_err(|e| CliError::compute("dg", e))
        } else {
            a.with_h0_primes(primes).map_err(spectrum)
        }
    }

    pub fn loci(&self, parallel: bool) -> Result<Loci, CliError> {
        let opts = LociOptions {
            window: self.options.window,
            shift: self.options.shift,
            seed: self.options.seed.unwrap_or(0),
            candidates: self.options.candidates.clone(),
            parallel,
        };
        Ok(Loci::new(self.dg_ring()?, opts))
    }
}
