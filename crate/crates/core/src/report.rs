//! Serializable result records.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraId;
use crate::cohomology::H2Dims;
use crate::leibniz::Crosscheck;
use crate::rat::Rat;

/// A solved basis vector, either recognized as a named cocycle function or
/// given coordinate by coordinate as `variable → value`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisForm {
    Named(String),
    Vector(Vec<(String, Rat)>),
}

/// The `H²` record: `{algebra, lambda/a/b, N, dims, basis}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct H2Report {
    #[serde(flatten)]
    pub algebra: AlgebraId,
    pub n: i64,
    pub dims: H2Dims,
    pub basis: Vec<BasisForm>,
}

/// The Leibniz record: `{algebra, lambda/a/b, N, h2, hl2, inv, crosscheck}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Hl2Report {
    #[serde(flatten)]
    pub algebra: AlgebraId,
    pub n: i64,
    pub h2: i64,
    pub hl2: i64,
    pub inv: i64,
    pub crosscheck: bool,
}

impl Hl2Report {
    pub fn from_crosscheck(algebra: AlgebraId, n: i64, c: &Crosscheck) -> Self {
        Hl2Report {
            algebra,
            n,
            h2: c.h2,
            hl2: c.hl2,
            inv: c.inv,
            crosscheck: c.ok,
        }
    }
}

/// One pass/fail entry of a verification suite.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            counterexample: Some(counterexample.into()),
        }
    }

    pub fn of(name: impl Into<String>, ok: bool, counterexample: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, counterexample)
        }
    }
}

/// A named suite of checks.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::rat::Lambda;

    #[test]
    fn reports_roundtrip_through_json() {
        let alg = Algebra::series_a(Lambda::Finite(Rat::new(5, 7)));
        let report = H2Report {
            algebra: AlgebraId::from(&alg),
            n: 8,
            dims: H2Dims {
                vir: 1,
                ab: 0,
                mix: 1,
                total: 2,
            },
            basis: vec![
                BasisForm::Named("beta_lambda".into()),
                BasisForm::Vector(vec![("mix[0]".into(), Rat::new(-1, 2))]),
            ],
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: H2Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
