//! Named built-in families with display formulas and default parameters.
//!
//! Serves the CLI catalog command and the JSON spec templates; each entry
//! also doubles as a parameterized constructor.

use crate::assoc_op::{AssocOp, BuiltinOpId};
use crate::bivariate::BivariateGrlmp;
use crate::error::Result;
use crate::spec::DistSpec;
use crate::univariate::GrlmpDistribution;

#[derive(Debug, Clone)]
pub struct UnivariateFamily {
    pub name: &'static str,
    pub op: BuiltinOpId,
    pub op_text: &'static str,
    pub identity: f64,
    pub generator_text: &'static str,
    pub cdf_text: &'static str,
    pub constraint_text: &'static str,
    pub default_c: f64,
    pub default_b: f64,
}

impl UnivariateFamily {
    pub fn instantiate(&self, c: f64, b: f64) -> Result<GrlmpDistribution> {
        GrlmpDistribution::new(AssocOp::builtin(self.op), c, b)
    }

    pub fn default_spec(&self) -> DistSpec {
        DistSpec::Univariate {
            op: self.op,
            c: self.default_c,
            b: self.default_b,
            truncated: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BivariateFamily {
    pub name: &'static str,
    pub op: BuiltinOpId,
    pub op_text: &'static str,
    pub identity: f64,
    pub generator_text: &'static str,
    pub cdf_text: &'static str,
    pub constraint_text: &'static str,
    pub default_lambda: (f64, f64, f64),
    pub default_b: f64,
}

impl BivariateFamily {
    pub fn instantiate(
        &self,
        lambda1: f64,
        lambda2: f64,
        lambda12: f64,
        b: f64,
    ) -> Result<BivariateGrlmp> {
        BivariateGrlmp::new(AssocOp::builtin(self.op), lambda1, lambda2, lambda12, b)
    }

    pub fn default_spec(&self) -> DistSpec {
        DistSpec::Bivariate {
            op: self.op,
            lambda1: self.default_lambda.0,
            lambda2: self.default_lambda.1,
            lambda12: self.default_lambda.2,
            b: self.default_b,
            truncated: false,
        }
    }
}

pub fn univariate_families() -> Vec<UnivariateFamily> {
    vec![
        UnivariateFamily {
            name: "reversed generalized Pareto (type 3 extreme value)",
            op: BuiltinOpId::Addition,
            op_text: "x + y",
            identity: 0.0,
            generator_text: "g(x) = x",
            cdf_text: "exp(c(x - b))",
            constraint_text: "-inf < x < b, b finite; c > 0",
            default_c: 1.0,
            default_b: 1.0,
        },
        UnivariateFamily {
            name: "power function",
            op: BuiltinOpId::Multiplication,
            op_text: "x*y",
            identity: 1.0,
            generator_text: "g(x) = log x",
            cdf_text: "(x/b)^c",
            constraint_text: "0 <= x < b, b finite; c > 0",
            default_c: 1.0,
            default_b: 2.0,
        },
        UnivariateFamily {
            name: "power function (shifted)",
            op: BuiltinOpId::ShiftedMultiplication,
            op_text: "x + y + x*y",
            identity: 0.0,
            generator_text: "g(x) = log(x + 1)",
            cdf_text: "((x+1)/(b+1))^c",
            constraint_text: "-1 <= x < b, b finite; c > 0",
            default_c: 1.0,
            default_b: 1.0,
        },
        UnivariateFamily {
            name: "reflected Weibull",
            op: BuiltinOpId::NegQuadratic,
            op_text: "-sqrt(x^2 + y^2)",
            identity: 0.0,
            generator_text: "g(x) = -x^2",
            cdf_text: "exp(-c x^2)",
            constraint_text: "x < 0, b = 0; c > 0",
            default_c: 1.0,
            default_b: 0.0,
        },
    ]
}

pub fn bivariate_families() -> Vec<BivariateFamily> {
    vec![
        BivariateFamily {
            name: "bivariate type 3 extreme value",
            op: BuiltinOpId::Addition,
            op_text: "x + y",
            identity: 0.0,
            generator_text: "g(x) = x",
            cdf_text: "exp(l1(x1 - b) + l2(x2 - b) + l12 min(x1 - b, x2 - b))",
            constraint_text: "-inf < x_i < b, b finite; l1, l2 > 0, l12 >= 0",
            default_lambda: (1.0, 1.0, 1.0),
            default_b: 1.0,
        },
        BivariateFamily {
            name: "bivariate power function",
            op: BuiltinOpId::Multiplication,
            op_text: "x*y",
            identity: 1.0,
            generator_text: "g(x) = log x",
            cdf_text: "(x1/b)^l1 (x2/b)^l2 exp(l12 min(log(x1/b), log(x2/b)))",
            constraint_text: "0 < x_i < b, b finite; l1, l2 > 0, l12 >= 0",
            default_lambda: (1.0, 1.0, 1.0),
            default_b: 2.0,
        },
        BivariateFamily {
            name: "bivariate power function (shifted)",
            op: BuiltinOpId::ShiftedMultiplication,
            op_text: "x + y + x*y",
            identity: 0.0,
            generator_text: "g(x) = log(x + 1)",
            cdf_text:
                "((x1+1)/(b+1))^l1 ((x2+1)/(b+1))^l2 exp(l12 min(log((x1+1)/(b+1)), log((x2+1)/(b+1))))",
            constraint_text: "-1 < x_i < b, b finite; l1, l2 > 0, l12 >= 0",
            default_lambda: (1.0, 1.0, 1.0),
            default_b: 1.0,
        },
        BivariateFamily {
            name: "bivariate reflected Weibull",
            op: BuiltinOpId::NegQuadratic,
            op_text: "-sqrt(x^2 + y^2)",
            identity: 0.0,
            generator_text: "g(x) = -x^2",
            cdf_text: "exp(-l1 x1^2 - l2 x2^2 + l12 min(-x1^2, -x2^2))",
            constraint_text: "-inf < x_i < 0, b = 0; l1, l2 > 0, l12 >= 0",
            default_lambda: (1.0, 1.0, 1.0),
            default_b: 0.0,
        },
    ]
}
