//! Machine- and human-readable reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use simplecurrent::cohomology::Cochain;
use simplecurrent::engine::{AnalysisReport, Answer, Count, Metadata, SimpleModuleClass, Verdict};
use simplecurrent::forms::Phase;

use crate::input::{InputDocument, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub algebra_exists: Answer,
    pub commutative: Answer,
    pub ribbon: Answer,
    pub finite: Answer,
    pub finite_full: Answer,
    pub nondegenerate: Answer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criteria {
    pub algebra_exists: Verdict,
    pub commutative: Verdict,
    pub ribbon: Verdict,
    pub finite: Verdict,
    pub finite_full: Verdict,
    pub nondegenerate: Verdict,
}

impl Criteria {
    fn rows(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("algebra_exists", &self.algebra_exists),
            ("commutative", &self.commutative),
            ("ribbon", &self.ribbon),
            ("finite", &self.finite),
            ("finite_full", &self.finite_full),
            ("nondegenerate", &self.nondegenerate),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Listing {
    /// Every orbit of simple modules, local ones flagged.
    All,
    /// Only orbits of local modules.
    Local,
    /// Nothing listed.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub simple_count: Count,
    pub local_count: Count,
    pub listing: Listing,
    pub complete: bool,
    pub simples: Vec<SimpleModuleClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaEntry {
    pub args: Vec<String>,
    pub value: Phase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub agrees: bool,
    #[serde(default)]
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub input: serde_json::Value,
    pub library_version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub mode: Mode,
    pub verdicts: Verdicts,
    pub criteria: Criteria,
    pub census: CensusDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<EtaEntry>>,
    pub metadata: Metadata,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    pub provenance: Provenance,
}

fn eta_entries(eta: &Cochain) -> Vec<EtaEntry> {
    eta.entries()
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(args, value)| EtaEntry {
            args: args.iter().map(ToString::to_string).collect(),
            value,
        })
        .collect()
}

impl ReportDocument {
    pub fn new(doc: &InputDocument, report: AnalysisReport) -> Self {
        let listing = if report.simple_census.complete && !report.simple_census.classes.is_empty() {
            Listing::All
        } else if !report.local_census.classes.is_empty() {
            Listing::Local
        } else {
            Listing::None
        };
        let simples = match listing {
            Listing::All => report.simple_census.classes.clone(),
            Listing::Local => report.local_census.classes.clone(),
            Listing::None => vec![],
        };
        let complete = match listing {
            Listing::All => report.simple_census.complete,
            Listing::Local => report.local_census.complete,
            Listing::None => false,
        };
        let criteria = Criteria {
            algebra_exists: report.algebra_exists,
            commutative: report.commutative,
            ribbon: report.ribbon,
            finite: report.finite_local,
            finite_full: report.finite_full,
            nondegenerate: report.nondegenerate,
        };
        ReportDocument {
            mode: doc.mode,
            verdicts: Verdicts {
                algebra_exists: criteria.algebra_exists.answer,
                commutative: criteria.commutative.answer,
                ribbon: criteria.ribbon.answer,
                finite: criteria.finite.answer,
                finite_full: criteria.finite_full.answer,
                nondegenerate: criteria.nondegenerate.answer,
            },
            criteria,
            census: CensusDoc {
                simple_count: report.simple_census.simples,
                local_count: report.local_census.simples,
                listing,
                complete,
                simples,
            },
            eta: report.eta.as_ref().map(eta_entries),
            metadata: report.metadata,
            notes: report.notes,
            oracle: None,
            provenance: Provenance {
                input: serde_json::to_value(doc).expect("input documents serialize"),
                library_version: simplecurrent::VERSION.to_string(),
            },
        }
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<16}{:<11}criterion", "verdict", "answer");
        for (name, v) in self.criteria.rows() {
            let _ = write!(out, "{name:<16}{:<11}{}", v.answer.as_str(), v.basis);
            if let Some(d) = &v.detail {
                if !d.is_empty() {
                    let label = if v.answer == Answer::Undecided {
                        "missing"
                    } else {
                        "witness"
                    };
                    let _ = write!(out, " [{label}: {d}]");
                }
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "simple modules: {}, local simple modules: {}",
            self.census.simple_count, self.census.local_count
        );
        if !self.census.simples.is_empty() {
            let heading = match self.census.listing {
                Listing::All => "orbits of simple modules",
                _ => "orbits of local simple modules",
            };
            let _ = writeln!(out, "{heading}:");
            let _ = writeln!(
                out,
                "  {:<24}{:<10}{:<8}{:<8}{:<8}{:<7}unit",
                "representative", "orbit", "|stab|", "irreps", "dim", "local"
            );
            for c in &self.census.simples {
                let _ = writeln!(
                    out,
                    "  {:<24}{:<10}{:<8}{:<8}{:<8}{:<7}{}",
                    c.orbit_rep,
                    c.orbit_size.to_string(),
                    c.stabilizer_order,
                    c.irrep_count,
                    c.irrep_dim,
                    if c.local { "yes" } else { "no" },
                    if c.is_unit { "yes" } else { "no" }
                );
            }
            if !self.census.complete {
                let _ = writeln!(out, "  (listing truncated)");
            }
        }
        if let Some(eta) = &self.eta {
            let nonzero: Vec<String> = eta
                .iter()
                .map(|e| format!("eta({}) = {}", e.args.join(", "), e.value))
                .collect();
            if nonzero.is_empty() {
                let _ = writeln!(out, "multiplication: trivial cochain");
            } else {
                let _ = writeln!(out, "multiplication: {}", nonzero.join("; "));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(o) = &self.oracle {
            if o.agrees {
                let _ = writeln!(out, "oracle: agrees");
            } else {
                let _ = writeln!(out, "oracle: DISAGREES on {}", o.mismatches.join(", "));
            }
        }
        let _ = writeln!(out, "library version {}", self.provenance.library_version);
        out
    }
}
