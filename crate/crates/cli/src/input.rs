//! Input documents, read from TOML or JSON.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use simplecurrent::forms::Phase;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pointed,
    Unrolled,
    Gl11,
    Table,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pointed => "pointed",
            Mode::Unrolled => "unrolled",
            Mode::Gl11 => "gl11",
            Mode::Table => "table",
        })
    }
}

/// An integer or an exact rational written as a string, e.g. `3` or `"3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Text(s) => f.write_str(s),
        }
    }
}

impl Scalar {
    pub fn phase(&self, field: &str) -> Result<Phase, CliError> {
        match self {
            Scalar::Int(_) => Ok(Phase::ZERO),
            Scalar::Text(s) => s
                .parse()
                .map_err(|e| CliError::Input(format!("{field}: {e}"))),
        }
    }

    pub fn integer(&self, field: &str) -> Result<i64, CliError> {
        match self {
            Scalar::Int(n) => Ok(*n),
            Scalar::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{field}: expected an integer, got {s:?}"))),
        }
    }
}

pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointedParams {
    /// Invariant factors of `G`, each dividing the next.
    pub group: Vec<i64>,
    /// Gram matrix `B` with `q(x) = B(x, x)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Matrix>,
    /// Braiding bicharacter `β`; `q(x) = β(x, x)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<Matrix>,
    /// Linear part of the twist on each generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_linear: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnrolledParams {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizers: Option<Vec<i64>>,
    pub ell: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub muger_trivial: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gl11Input {
    pub r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociatorEntry {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilizerCocycle {
    pub label: String,
    pub entries: Vec<CocycleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableParams {
    pub labels: Vec<String>,
    /// Invariant factors of `Γ`.
    pub gamma: Vec<i64>,
    #[serde(default)]
    pub unit: usize,
    /// One permutation of label indices per generator of `Γ`.
    pub action: Vec<Vec<usize>>,
    /// `monodromy[i][x]`: double braiding of the `i`-th current with label `x`.
    pub monodromy: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associator: Option<Vec<AssociatorEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<StabilizerCocycle>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupBlock {
    #[serde(default)]
    pub generators: Matrix,
    /// gl11 only: parity of each generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parities: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub oracle: bool,
    /// Refuse pointed groups larger than this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointed: Option<PointedParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unrolled: Option<UnrolledParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gl11: Option<Gl11Input>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableParams>,
    #[serde(default)]
    pub subgroup: SubgroupBlock,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Toml,
    Json,
}

impl Format {
    /// `.json` files are JSON, everything else TOML.
    pub fn for_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Toml,
        }
    }
}

pub fn parse_input(text: &str, format: Format) -> Result<InputDocument, CliError> {
    match format {
        Format::Toml => {
            toml::from_str(text).map_err(|e| CliError::Input(e.to_string().trim_end().to_string()))
        }
        Format::Json => serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string())),
    }
}
