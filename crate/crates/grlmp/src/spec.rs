//! JSON-serializable specifications of operations and distributions.
//!
//! An operation spec is `{"op": "<builtin id>"}`; the `custom` tag is part
//! of the schema but resolves to an error — user-defined generators are
//! only available programmatically through [`AssocOp::custom`]. A
//! distribution spec is tagged by family:
//!
//! ```json
//! {"family": "univariate", "op": "multiplication", "c": 1.0, "b": 2.0}
//! {"family": "bivariate", "op": "addition",
//!  "lambda1": 1.0, "lambda2": 1.0, "lambda12": 1.0, "b": 0.0}
//! ```
//!
//! with an optional `"truncated": true` for the variants carrying atoms at
//! the identity.

use serde::{Deserialize, Serialize};

use crate::assoc_op::{AssocOp, BuiltinOpId};
use crate::bivariate::BivariateGrlmp;
use crate::error::{Error, Result};
use crate::univariate::{GrlmpDistribution, TruncatedGrlmp};

/// Standalone operation spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpSpec {
    Addition,
    Multiplication,
    ShiftedMultiplication,
    NegQuadratic,
    /// Accepted by the schema so specs can name one, but not resolvable
    /// from JSON: custom generators must be constructed in code.
    Custom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<String>,
    },
}

impl OpSpec {
    pub fn from_builtin(id: BuiltinOpId) -> Self {
        match id {
            BuiltinOpId::Addition => OpSpec::Addition,
            BuiltinOpId::Multiplication => OpSpec::Multiplication,
            BuiltinOpId::ShiftedMultiplication => OpSpec::ShiftedMultiplication,
            BuiltinOpId::NegQuadratic => OpSpec::NegQuadratic,
        }
    }

    pub fn resolve(&self) -> Result<AssocOp> {
        let id = match self {
            OpSpec::Addition => BuiltinOpId::Addition,
            OpSpec::Multiplication => BuiltinOpId::Multiplication,
            OpSpec::ShiftedMultiplication => BuiltinOpId::ShiftedMultiplication,
            OpSpec::NegQuadratic => BuiltinOpId::NegQuadratic,
            OpSpec::Custom { .. } => {
                return Err(Error::InvalidParameter(
                    "custom operations are only available programmatically".into(),
                ))
            }
        };
        Ok(AssocOp::builtin(id))
    }
}

/// Distribution spec, tagged by family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistSpec {
    Univariate {
        op: BuiltinOpId,
        c: f64,
        b: f64,
        #[serde(default)]
        truncated: bool,
    },
    Bivariate {
        op: BuiltinOpId,
        lambda1: f64,
        lambda2: f64,
        lambda12: f64,
        b: f64,
        #[serde(default)]
        truncated: bool,
    },
}

/// A resolved, validated distribution.
#[derive(Debug, Clone)]
pub enum Model {
    Univariate(GrlmpDistribution),
    TruncatedUnivariate(TruncatedGrlmp),
    Bivariate(BivariateGrlmp),
    TruncatedBivariate(BivariateGrlmp),
}

impl DistSpec {
    pub fn resolve(&self) -> Result<Model> {
        match *self {
            DistSpec::Univariate { op, c, b, truncated } => {
                let d = GrlmpDistribution::new(AssocOp::builtin(op), c, b)?;
                if truncated {
                    Ok(Model::TruncatedUnivariate(TruncatedGrlmp::new(d)?))
                } else {
                    Ok(Model::Univariate(d))
                }
            }
            DistSpec::Bivariate {
                op,
                lambda1,
                lambda2,
                lambda12,
                b,
                truncated,
            } => {
                let d = BivariateGrlmp::new(AssocOp::builtin(op), lambda1, lambda2, lambda12, b)?;
                if truncated {
                    d.supports_truncation()?;
                    Ok(Model::TruncatedBivariate(d))
                } else {
                    Ok(Model::Bivariate(d))
                }
            }
        }
    }

    pub fn is_bivariate(&self) -> bool {
        matches!(self, DistSpec::Bivariate { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_spec_roundtrip_and_custom_rejection() {
        for id in BuiltinOpId::ALL {
            let spec = OpSpec::from_builtin(id);
            let json = serde_json::to_string(&spec).unwrap();
            assert!(json.contains(id.name()), "{json}");
            let back: OpSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.resolve().unwrap().builtin_id(), Some(id));
        }
        let custom: OpSpec = serde_json::from_str(r#"{"op": "custom", "g": "2*x"}"#).unwrap();
        assert!(custom.resolve().is_err());
    }

    #[test]
    fn dist_spec_parses_and_resolves() {
        let spec: DistSpec = serde_json::from_str(
            r#"{"family": "univariate", "op": "multiplication", "c": 1.0, "b": 2.0}"#,
        )
        .unwrap();
        match spec.resolve().unwrap() {
            Model::Univariate(d) => assert!((d.cdf(1.0) - 0.5).abs() < 1e-15),
            _ => panic!("expected a univariate model"),
        }

        let spec: DistSpec = serde_json::from_str(
            r#"{"family": "univariate", "op": "multiplication", "c": 1.0, "b": 2.0,
                "truncated": true}"#,
        )
        .unwrap();
        match spec.resolve().unwrap() {
            Model::TruncatedUnivariate(t) => assert!((t.atom_mass() - 0.5).abs() < 1e-15),
            _ => panic!("expected a truncated model"),
        }

        let spec: DistSpec = serde_json::from_str(
            r#"{"family": "bivariate", "op": "addition",
                "lambda1": 1.0, "lambda2": 1.0, "lambda12": 1.0, "b": 0.0}"#,
        )
        .unwrap();
        match spec.resolve().unwrap() {
            Model::Bivariate(d) => {
                assert!((d.joint_cdf(-1.0, -2.0) - (-5.0_f64).exp()).abs() < 1e-15)
            }
            _ => panic!("expected a bivariate model"),
        }
    }

    #[test]
    fn invalid_specs_fail_resolution() {
        let bad: DistSpec = serde_json::from_str(
            r#"{"family": "univariate", "op": "multiplication", "c": -1.0, "b": 2.0}"#,
        )
        .unwrap();
        assert!(bad.resolve().is_err());
        // truncated bivariate reflected Weibull has no room above the identity
        let bad: DistSpec = serde_json::from_str(
            r#"{"family": "bivariate", "op": "neg_quadratic",
                "lambda1": 1.0, "lambda2": 1.0, "lambda12": 1.0, "b": 0.0,
                "truncated": true}"#,
        )
        .unwrap();
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = DistSpec::Bivariate {
            op: BuiltinOpId::Multiplication,
            lambda1: 1.0,
            lambda2: 2.0,
            lambda12: 0.5,
            b: 2.0,
            truncated: true,
        };
        let json = serde_json::to_string(&spec).unwrap();
        let back: DistSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
