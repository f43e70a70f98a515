use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgroup::GroupElement;
use crate::cohomology::Cochain;

/// Tri-state answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Undecided,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An answer together with the criterion that produced it and, for `No`
/// and `Undecided`, a witness or the missing data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn yes(basis: &str) -> Self {
        Verdict {
            answer: Answer::Yes,
            basis: basis.into(),
            detail: None,
        }
    }

    pub fn no(basis: &str, detail: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::No,
            basis: basis.into(),
            detail: Some(detail.into()),
        }
    }

    pub fn undecided(basis: &str, reason: impl Into<String>) -> Self {
        Verdict {
            answer: Answer::Undecided,
            basis: basis.into(),
            detail: Some(reason.into()),
        }
    }

    pub fn from_bool(b: bool, basis: &str, witness: impl FnOnce() -> String) -> Self {
        if b {
            Verdict::yes(basis)
        } else {
            Verdict::no(basis, witness())
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// Criterion texts attached to verdicts.
pub mod basis {
    pub const EXISTS_COBOUNDARY: &str =
        "algebra exists iff the associator restricted to Gamma is a coboundary";
    pub const EXISTS_FORM: &str =
        "algebra exists iff the associator on Gamma is a coboundary, i.e. ord(g) q(g) = 0 for all g in Gamma";
    pub const EXISTS_BICHARACTER: &str =
        "braiding on Gamma is a bicharacter with trivial associator, so the algebra exists";
    pub const COMMUTATIVE: &str = "commutative iff q(g) = 0 for all g in Gamma";
    pub const RIBBON: &str = "local modules are ribbon iff theta(E_g) = 1 for all g in Gamma";
    pub const FINITE_TABLE: &str = "finitely many labels, so finitely many simple local modules";
    pub const FINITE_FULL_TABLE: &str = "finitely many labels, so finitely many simple modules";
    pub const NONDEGENERATE: &str =
        "non-degenerate iff every local simple that double braids trivially with all local simples is some E_g";
    pub const DOWNSTREAM: &str = "requires a commutative simple current algebra";
    pub const NEEDS_ALGEBRA: &str = "requires the simple current algebra to exist";
}

/// Number of objects, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u128),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<u128> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => {
                s.serialize_u64(u64::try_from(*n).map_err(serde::ser::Error::custom)?)
            }
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Count::Finite(n as u128)),
            Raw::S(s) if s == "infinite" => Ok(Count::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad count {s:?}"))),
        }
    }
}

/// One Γ-orbit of simple labels and the simple modules it contributes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleModuleClass {
    pub orbit_rep: String,
    pub orbit_size: Count,
    pub stabilizer_order: u64,
    /// Generators of the stabilizer in Γ coordinates.
    pub stabilizer: Vec<GroupElement>,
    pub irrep_count: u64,
    pub irrep_dim: u64,
    pub local: bool,
    pub is_unit: bool,
}

/// Classes plus totals. When the census is infinite, `classes` holds a
/// listing that is marked incomplete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub classes: Vec<SimpleModuleClass>,
    pub orbits: Count,
    pub simples: Count,
    pub complete: bool,
}

impl Census {
    pub fn empty() -> Self {
        Census {
            classes: vec![],
            orbits: Count::Finite(0),
            simples: Count::Finite(0),
            complete: true,
        }
    }

    pub fn from_classes(classes: Vec<SimpleModuleClass>) -> Self {
        let simples = classes.iter().map(|c| c.irrep_count as u128).sum();
        Census {
            orbits: Count::Finite(classes.len() as u128),
            simples: Count::Finite(simples),
            classes,
            complete: true,
        }
    }
}

/// Structural facts that hold for every simple current algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub artinian: Answer,
    pub frobenius: Answer,
    pub haploid: Answer,
    pub char_zero_assumed: bool,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata {
            artinian: Answer::Yes,
            frobenius: Answer::Yes,
            haploid: Answer::Yes,
            char_zero_assumed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub algebra_exists: Verdict,
    pub commutative: Verdict,
    pub ribbon: Verdict,
    pub finite_full: Verdict,
    pub finite_local: Verdict,
    pub nondegenerate: Verdict,
    pub simple_census: Census,
    pub local_census: Census,
    /// Multiplication cochain on Γ, when the algebra exists and Γ is finite.
    pub eta: Option<Cochain>,
    pub metadata: Metadata,
    pub notes: Vec<String>,
}
