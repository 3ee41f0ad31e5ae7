//! Pointwise evaluation of distribution functions. Per-point domain
//! errors land in an error column; the command succeeds if at least one
//! point evaluated.

use grlmp::Model;
use serde::Serialize;

use crate::io::{self, CsvData};
use crate::{CliError, EvalFunction, OutputFormat};

enum Points {
    One(Vec<f64>),
    Two(Vec<(f64, f64)>),
}

#[derive(Serialize)]
struct EvalRow {
    point: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn parse_inline_point(text: &str) -> Result<Points, CliError> {
    let fields: Result<Vec<f64>, _> = text.split(',').map(|f| f.trim().parse::<f64>()).collect();
    match fields {
        Ok(v) if v.len() == 1 => Ok(Points::One(v)),
        Ok(v) if v.len() == 2 => Ok(Points::Two(vec![(v[0], v[1])])),
        _ => Err(CliError::Validation(format!(
            "inline point must be 'x' or 'x1,x2', got '{text}'"
        ))),
    }
}

fn wants_pairs(function: EvalFunction) -> bool {
    matches!(function, EvalFunction::JointCdf | EvalFunction::AcDensity)
}

pub fn run(
    spec_path: &str,
    function: EvalFunction,
    points_path: Option<&str>,
    inline: Option<&str>,
    out: Option<&str>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let spec = io::read_spec(spec_path)?;
    let model = spec.resolve()?;

    let points = match (points_path, inline) {
        (Some(path), None) => match io::read_csv(path)? {
            CsvData::One(v) => Points::One(v),
            CsvData::Two(v) => Points::Two(v),
        },
        (None, Some(text)) => parse_inline_point(text)?,
        _ => {
            return Err(CliError::Validation(
                "exactly one of --points or --point is required".into(),
            ))
        }
    };

    match (&points, wants_pairs(function)) {
        (Points::One(_), true) => {
            return Err(CliError::Validation(
                "this function takes two-coordinate points".into(),
            ))
        }
        (Points::Two(_), false) => {
            return Err(CliError::Validation(
                "this function takes one-coordinate points".into(),
            ))
        }
        _ => {}
    }

    let rows = match points {
        Points::One(xs) => eval_univariate(&model, function, &xs)?,
        Points::Two(ps) => eval_bivariate(&model, function, &ps)?,
    };

    if !rows.iter().any(|r| r.value.is_some()) {
        return Err(CliError::Validation(
            "no point evaluated successfully".into(),
        ));
    }

    match format {
        OutputFormat::Json => io::emit_json(out, &rows)?,
        OutputFormat::Csv => {
            let two = rows.first().map(|r| r.point.len() == 2).unwrap_or(false);
            let mut text = String::from(if two { "x1,x2,value,error\n" } else { "x,value,error\n" });
            for r in &rows {
                let coords: Vec<String> = r.point.iter().map(|v| format!("{v}")).collect();
                let value = r.value.map(|v| format!("{v}")).unwrap_or_default();
                let mut error = r.error.clone().unwrap_or_default();
                if error.contains(',') || error.contains('"') {
                    error = format!("\"{}\"", error.replace('"', "\"\""));
                }
                text.push_str(&format!("{},{},{}\n", coords.join(","), value, error));
            }
            io::emit_text(out, &text)?;
        }
    }
    Ok(())
}

fn eval_univariate(
    model: &Model,
    function: EvalFunction,
    xs: &[f64],
) -> Result<Vec<EvalRow>, CliError> {
    let rows = xs
        .iter()
        .map(|&x| {
            let result: Result<f64, grlmp::Error> = match (model, function) {
                (Model::Univariate(d), EvalFunction::Cdf) => Ok(d.cdf(x)),
                (Model::Univariate(d), EvalFunction::Pdf) => d.pdf(x),
                (Model::Univariate(d), EvalFunction::Quantile) => d.quantile(x),
                (Model::Univariate(d), EvalFunction::ReversedHazard) => d.reversed_hazard(x),
                (Model::TruncatedUnivariate(t), EvalFunction::Cdf) => Ok(t.cdf(x)),
                _ => {
                    return Err(CliError::Validation(
                        "function not available for this family".into(),
                    ))
                }
            };
            Ok(match result {
                Ok(v) => EvalRow {
                    point: vec![x],
                    value: Some(v),
                    error: None,
                },
                Err(e) => EvalRow {
                    point: vec![x],
                    value: None,
                    error: Some(e.to_string()),
                },
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(rows)
}

fn eval_bivariate(
    model: &Model,
    function: EvalFunction,
    ps: &[(f64, f64)],
) -> Result<Vec<EvalRow>, CliError> {
    let rows = ps
        .iter()
        .map(|&(x1, x2)| {
            let result: Result<f64, grlmp::Error> = match (model, function) {
                (Model::Bivariate(d), EvalFunction::JointCdf) => Ok(d.joint_cdf(x1, x2)),
                (Model::Bivariate(d), EvalFunction::AcDensity) => d.ac_density(x1, x2),
                (Model::TruncatedBivariate(d), EvalFunction::JointCdf) => {
                    Ok(d.truncated_joint_cdf(x1, x2))
                }
                _ => {
                    return Err(CliError::Validation(
                        "function not available for this family".into(),
                    ))
                }
            };
            Ok(match result {
                Ok(v) => EvalRow {
                    point: vec![x1, x2],
                    value: Some(v),
                    error: None,
                },
                Err(e) => EvalRow {
                    point: vec![x1, x2],
                    value: None,
                    error: Some(e.to_string()),
                },
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(rows)
}
