//! JSON shapes of the subcommand inputs and the shared report envelope.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::base_field::OperatorSpec;
use crate::error::{Error, Result};
use crate::jet::{BlockLowerTriangular, Jet};
use crate::matrix::{format_matrix, parse_matrix, SqMatrix};

/// Matrix as rows of expression strings.
pub type MatrixJson = Vec<Vec<String>>;

fn default_spec() -> OperatorSpec {
    OperatorSpec::shift()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetJson {
    pub order: usize,
    pub terms: Vec<MatrixJson>,
}

impl JetJson {
    pub fn parse(&self, spec: &OperatorSpec) -> Result<Jet> {
        if self.terms.len() != self.order + 1 {
            return Err(Error::Input(format!(
                "a jet of order {} needs {} terms, got {}",
                self.order,
                self.order + 1,
                self.terms.len()
            )));
        }
        let terms = self.terms.iter().map(|t| matrix(spec, t)).collect::<Result<_>>()?;
        Jet::new(terms)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JetOut {
    pub order: usize,
    pub terms: Vec<MatrixJson>,
}

impl From<&Jet> for JetOut {
    fn from(b: &Jet) -> Self {
        JetOut {
            order: b.order(),
            terms: b.terms().iter().map(format_matrix).collect(),
        }
    }
}

/// Parses a square matrix.
pub fn matrix(spec: &OperatorSpec, rows: &MatrixJson) -> Result<SqMatrix> {
    let a = parse_matrix(spec, rows)?;
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Input("matrices must be square and nonempty".into()));
    }
    Ok(a)
}

/// Block rows of the lower triangle, each row listing blocks `0..=r`.
pub fn format_blocks(b: &BlockLowerTriangular<crate::base_field::RatFunc>) -> Vec<Vec<MatrixJson>> {
    (0..=b.order())
        .map(|r| (0..=r).map(|c| format_matrix(&b.block(r, c))).collect())
        .collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProlongInput {
    #[serde(default = "default_spec")]
    pub spec: OperatorSpec,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    pub n: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    #[serde(default = "default_spec")]
    pub spec: OperatorSpec,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    pub n: usize,
    /// Adds the identity to block `(row, col)` of the prolonged matrix
    /// before checking, to exercise the failure path.
    #[serde(default)]
    pub corrupt_block: Option<[usize; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeInput {
    #[serde(default = "default_spec")]
    pub spec: OperatorSpec,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    pub l: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetsInput {
    #[serde(default = "default_spec")]
    pub spec: OperatorSpec,
    pub jets: Vec<JetJson>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvarianceInput {
    #[serde(default = "default_spec")]
    pub spec: OperatorSpec,
    pub order: usize,
    pub m: usize,
    pub generators: Vec<String>,
    pub jet: JetJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelInput {
    pub r: Vec<u32>,
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    CheckFailed,
    InvalidInput,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::InvalidInput => 2,
            Status::BudgetExceeded => 3,
        }
    }

    /// Resource limits are "could not decide"; everything else is a
    /// malformed or out-of-domain input.
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::OrderLimit { .. } => Status::BudgetExceeded,
            _ => Status::InvalidInput,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_echo: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
