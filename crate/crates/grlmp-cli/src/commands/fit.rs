//! Parameter estimation from CSV data. One column selects the univariate
//! closed-form fit, two columns the bivariate moment fit.

use grlmp::{fit_bivariate, fit_univariate, AssocOp, BuiltinOpId, UpperBound};
use serde::Serialize;

use crate::io::{self, CsvData};
use crate::CliError;

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FitReport {
    Univariate {
        op: BuiltinOpId,
        #[serde(flatten)]
        fit: grlmp::UnivariateFit,
        endpoint_estimated: bool,
        warnings: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        data_provenance: Option<serde_json::Value>,
    },
    Bivariate {
        op: BuiltinOpId,
        b: f64,
        tie_tolerance: f64,
        #[serde(flatten)]
        fit: grlmp::BivariateFit,
        warnings: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        data_provenance: Option<serde_json::Value>,
    },
}

/// Sidecar left next to the data by the sampling command, when present;
/// carries the seed and spec the data came from.
fn provenance(data_path: &str) -> Option<serde_json::Value> {
    let text = std::fs::read_to_string(io::sidecar_path(data_path)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn run(
    data_path: &str,
    op_id: BuiltinOpId,
    b: Option<f64>,
    estimate_b: bool,
    tie_tolerance: f64,
    out: Option<&str>,
) -> Result<(), CliError> {
    let op = AssocOp::builtin(op_id);
    let report = match io::read_csv(data_path)? {
        CsvData::One(data) => {
            let bound = match (b, estimate_b) {
                (Some(v), false) => UpperBound::Known(v),
                (None, true) => UpperBound::Estimate,
                _ => {
                    return Err(CliError::Validation(
                        "univariate fit needs exactly one of --b or --estimate-b".into(),
                    ))
                }
            };
            let fit = fit_univariate(&data, &op, bound)?;
            let mut warnings = Vec::new();
            if matches!(bound, UpperBound::Estimate) {
                warnings.push(
                    "endpoint estimated by the sample maximum; biased low by O(1/n)".to_string(),
                );
            }
            FitReport::Univariate {
                op: op_id,
                fit,
                endpoint_estimated: estimate_b,
                warnings,
                data_provenance: provenance(data_path),
            }
        }
        CsvData::Two(pairs) => {
            let b = b.ok_or_else(|| {
                CliError::Validation("bivariate fit needs a known upper endpoint --b".into())
            })?;
            if estimate_b {
                return Err(CliError::Validation(
                    "--estimate-b is only available for univariate data".into(),
                ));
            }
            let fit = fit_bivariate(&pairs, &op, b, tie_tolerance)?;
            let mut warnings = Vec::new();
            if fit.clamped {
                warnings.push(
                    "a marginal rate fell below the shock rate and was clamped at zero"
                        .to_string(),
                );
            }
            FitReport::Bivariate {
                op: op_id,
                b,
                tie_tolerance,
                fit,
                warnings,
                data_provenance: provenance(data_path),
            }
        }
    };
    io::emit_json(out, &report)
}
