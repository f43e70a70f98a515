//! Dispatch from input documents to the frontends.

use simplecurrent::abgroup::{FgAbGroup, SubgroupSpec};
use simplecurrent::cohomology::Cochain;
use simplecurrent::engine::{
    analyze, AnalysisReport, GammaStructure, PairwiseMonodromy, SpectrumTable,
};
use simplecurrent::forms::{Bicharacter, Phase, QuadraticForm};
use simplecurrent::gl11::{census_local, Gl11Params, LSubgroup, Parity};
use simplecurrent::pointed::{brute_force_oracle, condense, MetricGroupCategory, ORACLE_BOUND};
use simplecurrent::unrolled::{full_report, CartanDatum, Sublattice, Weight};

use crate::input::{InputDocument, Matrix, Mode, Scalar, TableParams};
use crate::report::{OracleDoc, ReportDocument};
use crate::CliError;

fn block<T>(b: &Option<T>, mode: Mode) -> Result<&T, CliError> {
    b.as_ref()
        .ok_or_else(|| CliError::Input(format!("mode {mode} requires a [{mode}] block")))
}

fn phases(row: &[Scalar], field: &str) -> Result<Vec<Phase>, CliError> {
    row.iter()
        .enumerate()
        .map(|(i, s)| s.phase(&format!("{field}[{i}]")))
        .collect()
}

fn phase_matrix(m: &Matrix, field: &str) -> Result<Vec<Vec<Phase>>, CliError> {
    m.iter()
        .enumerate()
        .map(|(i, row)| phases(row, &format!("{field}[{i}]")))
        .collect()
}

fn int_rows(m: &Matrix, field: &str) -> Result<Vec<Vec<i64>>, CliError> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| s.integer(&format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn finite_group(factors: &[i64]) -> Result<FgAbGroup, CliError> {
    Ok(FgAbGroup::new(0, factors.to_vec())?)
}

pub fn run_analysis(doc: &InputDocument) -> Result<ReportDocument, CliError> {
    if doc.options.oracle && doc.mode != Mode::Pointed {
        return Err(CliError::Unsupported(format!(
            "the brute-force oracle exists only for pointed inputs, not {}",
            doc.mode
        )));
    }
    let (report, oracle) = match doc.mode {
        Mode::Pointed => run_pointed(doc)?,
        Mode::Unrolled => (run_unrolled(doc)?, None),
        Mode::Gl11 => (run_gl11(doc)?, None),
        Mode::Table => (run_table(doc)?, None),
    };
    let mut out = ReportDocument::new(doc, report);
    out.oracle = oracle;
    Ok(out)
}

fn run_pointed(doc: &InputDocument) -> Result<(AnalysisReport, Option<OracleDoc>), CliError> {
    let p = block(&doc.pointed, Mode::Pointed)?;
    let g = finite_group(&p.group)?;
    let bound = doc
        .options
        .max_order
        .unwrap_or(ORACLE_BOUND)
        .min(ORACLE_BOUND);
    let order = g.order().expect("finite presentation");
    if order > bound {
        return Err(CliError::Unsupported(format!(
            "group of order {order} exceeds the enumeration bound {bound}"
        )));
    }
    let linear = match &p.twist_linear {
        Some(t) => phases(t, "pointed.twist_linear")?,
        None => vec![Phase::ZERO; g.ngens()],
    };
    let cat = match (&p.form, &p.braiding) {
        (Some(f), None) => MetricGroupCategory::from_form(
            QuadraticForm::new(g.clone(), phase_matrix(f, "pointed.form")?)?,
            linear,
        )?,
        (None, Some(b)) => MetricGroupCategory::new(
            Bicharacter::new(g.clone(), phase_matrix(b, "pointed.braiding")?)?,
            linear,
        )?,
        _ => {
            return Err(CliError::Input(
                "pointed: give exactly one of `form` and `braiding`".into(),
            ))
        }
    };
    let gamma = SubgroupSpec::from_rows(
        g,
        &int_rows(&doc.subgroup.generators, "subgroup.generators")?,
    )?;
    let report = condense(&cat, &gamma)?;
    let oracle = if doc.options.oracle {
        let expected = brute_force_oracle(&cat, &gamma)?;
        let mismatches = diff(&report, &expected);
        Some(OracleDoc {
            agrees: mismatches.is_empty(),
            mismatches,
        })
    } else {
        None
    };
    Ok((report, oracle))
}

fn diff(a: &AnalysisReport, b: &AnalysisReport) -> Vec<String> {
    let mut out = vec![];
    let mut check = |name: &str, same: bool| {
        if !same {
            out.push(name.to_string());
        }
    };
    check("algebra_exists", a.algebra_exists == b.algebra_exists);
    check("commutative", a.commutative == b.commutative);
    check("ribbon", a.ribbon == b.ribbon);
    check("finite_full", a.finite_full == b.finite_full);
    check("finite_local", a.finite_local == b.finite_local);
    check("nondegenerate", a.nondegenerate == b.nondegenerate);
    check("simple_census", a.simple_census == b.simple_census);
    check("local_census", a.local_census == b.local_census);
    check("eta", a.eta == b.eta);
    check("metadata", a.metadata == b.metadata);
    check("notes", a.notes == b.notes);
    out
}

fn run_unrolled(doc: &InputDocument) -> Result<AnalysisReport, CliError> {
    let p = block(&doc.unrolled, Mode::Unrolled)?;
    let n = p.cartan.len();
    let d = p.symmetrizers.clone().unwrap_or_else(|| vec![1; n]);
    let cd = CartanDatum::new(p.cartan.clone(), d, p.ell)?
        .with_ambient_muger_trivial(p.muger_trivial.unwrap_or(true));
    let gens = doc
        .subgroup
        .generators
        .iter()
        .map(|row| {
            let text: Vec<String> = row.iter().map(ToString::to_string).collect();
            text.join(",").parse::<Weight>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = gens.iter().find(|w| w.rank() != cd.rank()) {
        return Err(CliError::Input(format!(
            "subgroup.generators: weight {w} has {} coordinates, the Cartan matrix has rank {}",
            w.rank(),
            cd.rank()
        )));
    }
    let l = Sublattice::new(&cd, &gens)?;
    Ok(full_report(&cd, &l)?)
}

fn run_gl11(doc: &InputDocument) -> Result<AnalysisReport, CliError> {
    let p = block(&doc.gl11, Mode::Gl11)?;
    let params = Gl11Params::new(p.r)?;
    let rows = int_rows(&doc.subgroup.generators, "subgroup.generators")?;
    let rows = rows
        .into_iter()
        .map(|r| {
            <[i64; 2]>::try_from(r.as_slice()).map_err(|_| {
                CliError::Input(format!("subgroup.generators: {r:?} is not a pair (n, b)"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let parity = match &doc.subgroup.parities {
        None => Parity::Even,
        Some(ps) if ps.len() != rows.len() => {
            return Err(CliError::Input(format!(
                "subgroup.parities has {} entries for {} generators",
                ps.len(),
                rows.len()
            )))
        }
        Some(ps) => ps.iter().fold(Parity::Even, |acc, &b| {
            if Parity::from_bit(b) == Parity::Odd {
                Parity::Odd
            } else {
                acc
            }
        }),
    };
    Ok(census_local(params, &LSubgroup::new(rows), parity)?)
}

fn gamma_structure(t: &TableParams, g: &FgAbGroup) -> Result<GammaStructure, CliError> {
    let form = t
        .form
        .as_ref()
        .map(|f| {
            QuadraticForm::new(g.clone(), phase_matrix(f, "table.form")?).map_err(CliError::from)
        })
        .transpose()?;
    Ok(match (&t.braiding, &t.associator) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "table: give at most one of `braiding` and `associator`".into(),
            ))
        }
        (Some(b), None) => {
            if form.is_some() {
                return Err(CliError::Input(
                    "table: `form` is implied by `braiding`".into(),
                ));
            }
            GammaStructure::Bicharacter(Bicharacter::new(
                g.clone(),
                phase_matrix(b, "table.braiding")?,
            )?)
        }
        (None, Some(entries)) => {
            let mut parsed = vec![];
            for (i, e) in entries.iter().enumerate() {
                let args = [&e.x, &e.y, &e.z]
                    .into_iter()
                    .map(|c| g.element(c.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push((
                    args,
                    e.value.phase(&format!("table.associator[{i}].value"))?,
                ));
            }
            GammaStructure::Associator {
                omega: Cochain::from_entries(g.clone(), 3, &parsed)?,
                form,
            }
        }
        (None, None) => match form {
            Some(q) => GammaStructure::Form(q),
            None => GammaStructure::Unknown(g.clone()),
        },
    })
}

fn run_table(doc: &InputDocument) -> Result<AnalysisReport, CliError> {
    let t = block(&doc.table, Mode::Table)?;
    if !doc.subgroup.generators.is_empty() {
        return Err(CliError::Input(
            "table mode takes Gamma from table.gamma; remove subgroup.generators".into(),
        ));
    }
    let g = finite_group(&t.gamma)?;
    let mut spec = SpectrumTable::new(
        t.labels.clone(),
        g.clone(),
        t.action.clone(),
        phase_matrix(&t.monodromy, "table.monodromy")?,
        t.unit,
    )?;
    if let Some(tw) = &t.twist {
        spec = spec.with_twist(phases(tw, "table.twist")?)?;
    }
    if let Some(pw) = &t.pairwise {
        spec = spec.with_pairwise(PairwiseMonodromy::Table(phase_matrix(
            pw,
            "table.pairwise",
        )?))?;
    }
    for (k, c) in t.cocycles.iter().enumerate() {
        let x = t.labels.iter().position(|l| *l == c.label).ok_or_else(|| {
            CliError::Input(format!("table.cocycles[{k}]: unknown label {:?}", c.label))
        })?;
        let mut entries = vec![];
        for (i, e) in c.entries.iter().enumerate() {
            entries.push((
                (g.element(e.x.clone())?, g.element(e.y.clone())?),
                e.value
                    .phase(&format!("table.cocycles[{k}].entries[{i}].value"))?,
            ));
        }
        spec = spec.with_stabilizer_cocycle(x, &entries)?;
    }
    Ok(analyze(&gamma_structure(t, &g)?, &spec)?)
}
