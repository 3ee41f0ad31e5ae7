//! The family catalog: every built-in univariate and bivariate family
//! with its operation, identity, generator, closed-form distribution
//! function and parameter constraints.

use grlmp::catalog::{bivariate_families, univariate_families};
use grlmp::DistSpec;
use serde::Serialize;

use crate::{CliError, OutputFormat};

#[derive(Serialize)]
struct CatalogEntry {
    kind: &'static str,
    name: &'static str,
    operation: &'static str,
    identity: f64,
    generator: &'static str,
    cdf: &'static str,
    constraints: &'static str,
    /// Ready-to-use spec with default parameters, accepted by `sample`,
    /// `eval` and `verify`.
    spec: DistSpec,
}

fn entries() -> Vec<CatalogEntry> {
    let mut rows = Vec::new();
    for f in univariate_families() {
        rows.push(CatalogEntry {
            kind: "univariate",
            name: f.name,
            operation: f.op_text,
            identity: f.identity,
            generator: f.generator_text,
            cdf: f.cdf_text,
            constraints: f.constraint_text,
            spec: f.default_spec(),
        });
    }
    for f in bivariate_families() {
        rows.push(CatalogEntry {
            kind: "bivariate",
            name: f.name,
            operation: f.op_text,
            identity: f.identity,
            generator: f.generator_text,
            cdf: f.cdf_text,
            constraints: f.constraint_text,
            spec: f.default_spec(),
        });
    }
    rows
}

pub fn run(format: OutputFormat) -> Result<(), CliError> {
    let rows = entries();
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&rows)?);
        }
        OutputFormat::Csv => {
            println!("kind,name,operation,identity,generator,cdf,constraints");
            for r in rows {
                println!(
                    "{},\"{}\",\"{}\",{},\"{}\",\"{}\",\"{}\"",
                    r.kind, r.name, r.operation, r.identity, r.generator, r.cdf, r.constraints
                );
            }
        }
    }
    Ok(())
}
