use std::fmt;

use dgloci::loci::{full_report, Loci};
use serde_json::{json, Value};

use crate::emit::{self, FORMAT_VERSION};
use crate::input::{parse_order, InputDocument};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmMode {
    Exact,
    DenseOpen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cohomology,
    Dualizing,
    Reg,
    Cm(CmMode),
    Gor,
    Cover,
    Report,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Cohomology => "cohomology",
            Command::Dualizing => "dualizing",
            Command::Reg => "reg",
            Command::Cm(CmMode::Exact) => "cm",
            Command::Cm(CmMode::DenseOpen) => "cm --mode dense-open",
            Command::Gor => "gor",
            Command::Cover => "cover",
            Command::Report => "report",
        };
        f.write_str(s)
    }
}

/// Command-line values that replace the document's `[options]`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<String>,
    pub window: Option<usize>,
    pub seed: Option<u64>,
    pub candidates: Option<Vec<String>>,
}

impl Overrides {
    pub fn apply(&self, doc: &InputDocument) -> Result<InputDocument, CliError> {
        let mut doc = match &self.order {
            Some(name) => {
                let order =
                    parse_order(name).ok_or_else(|| CliError::Usage(format!("--order: unknown monomial order `{name}`")))?;
                doc.with_order(order)?
            }
            None => doc.clone(),
        };
        if let Some(w) = self.window {
            if w == 0 {
                return Err(CliError::Usage("--window: must be positive".into()));
            }
            doc.options.window = Some(w);
        }
        if let Some(s) = self.seed {
            doc.options.seed = Some(s);
        }
        if let Some(cs) = &self.candidates {
            let parsed = cs
                .iter()
                .map(|c| {
                    doc.ring.parse(c).map_err(|e| CliError::Usage(format!("--candidates: `{c}`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            doc.options.candidates = Some(parsed);
        }
        Ok(doc)
    }
}

fn with_op<T>(op: &str, r: dgloci::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::compute(op, e))
}

fn result_for(loci: &Loci, cmd: Command) -> Result<Value, CliError> {
    let dg = loci.dg();
    Ok(match cmd {
        Command::Cohomology => json!({
            "h0_ideal": emit::ideal(&with_op("cohomology", loci.h0_ideal())?)?,
            "cohomology": emit::table(with_op("cohomology", dg.cohomology_table())?)?,
        }),
        Command::Dualizing => json!({ "dualizing": emit::dualizing(with_op("dualizing", loci.dualizing())?)? }),
        Command::Reg => json!({
            "concentrated_locus": emit::set(&with_op("reg", loci.concentrated_locus())?)?,
            "reg": emit::set(&with_op("reg", loci.reg_locus())?)?,
        }),
        Command::Cm(CmMode::Exact) => json!({
            "cm_exact": emit::set(with_op("cm", loci.cm_locus_exact())?)?,
            "stratification_a": emit::stratification(with_op("cm", loci.stratification_a())?)?,
            "stratification_r": emit::stratification(with_op("cm", loci.stratification_r())?)?,
        }),
        Command::Cm(CmMode::DenseOpen) => {
            let dense = with_op("cm", loci.cm_dense_open())?;
            let primes = with_op("cm", loci.minimal_primes())?;
            json!({
                "cm_dense_open": emit::set(&dense)?,
                "is_dense_open": with_op("cm", dense.is_dense_open(primes))?,
                "minimal_primes": emit::primes(&with_op("cm", loci.primes_summary())?)?,
            })
        }
        Command::Gor => json!({ "gor": emit::gor(&with_op("gor", loci.gor_certificate())?) }),
        Command::Cover => json!({
            "minimal_primes": emit::primes(&with_op("cover", loci.primes_summary())?)?,
            "cover": emit::cover(with_op("cover", loci.cover())?)?,
        }),
        Command::Report => emit::report(&with_op("report", full_report(loci))?)?,
    })
}

/// Runs `cmd` on the document and wraps the result with the command name
/// and a description of the input.
pub fn run_command(doc: &InputDocument, cmd: Command, parallel: bool) -> Result<Value, CliError> {
    let loci = doc.loci(parallel)?;
    let result = result_for(&loci, cmd)?;
    Ok(json!({
        "format_version": FORMAT_VERSION,
        "command": cmd.to_string(),
        "input": {
            "dg_ring": loci.dg().to_string(),
            "field": doc.ring.field().to_string(),
            "order": doc.ring.order().name(),
            "vars": doc.ring.var_names(),
        },
        "result": result,
    }))
}
