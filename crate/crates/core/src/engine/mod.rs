//! Decision procedures for a simple current algebra `A = ⊕_{g∈Γ} E_g`
//! acting on a finite spectrum of simple labels.
//!
//! Frontends (pointed categories, finite tables) reduce their input to a
//! [`GammaStructure`] describing the braided structure on `Γ` and a
//! [`SpectrumTable`]; [`analyze`] produces the [`AnalysisReport`].

mod report;
mod spectrum;

use crate::abgroup::{FgAbGroup, SubgroupSpec};
use crate::cohomology::{construct_eta, solve_d3, Cochain};
use crate::forms::{Bicharacter, QuadraticForm};
use crate::projrep::{irrep_census, TwistedAlgebraSpec};
use crate::{Error, Result};

pub use report::{
    basis, AnalysisReport, Answer, Census, Count, Metadata, SimpleModuleClass, Verdict,
};
pub use spectrum::{PairwiseMonodromy, SpectrumTable};

/// Braided data on `Γ` available to decide existence and commutativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaStructure {
    /// Braiding given by a bicharacter, associator trivial.
    Bicharacter(Bicharacter),
    /// Braided structure determined by a quadratic form.
    Form(QuadraticForm),
    /// Explicit associator on `Γ`, optionally with the quadratic form of the braiding.
    Associator {
        omega: Cochain,
        form: Option<QuadraticForm>,
    },
    /// Nothing known beyond the group.
    Unknown(FgAbGroup),
}

impl GammaStructure {
    pub fn group(&self) -> &FgAbGroup {
        match self {
            GammaStructure::Bicharacter(b) => b.group(),
            GammaStructure::Form(q) => q.group(),
            GammaStructure::Associator { omega, .. } => omega.group(),
            GammaStructure::Unknown(g) => g,
        }
    }

    fn form(&self) -> Option<QuadraticForm> {
        match self {
            GammaStructure::Bicharacter(b) => Some(QuadraticForm::from_bicharacter(b)),
            GammaStructure::Form(q) => Some(q.clone()),
            GammaStructure::Associator { form, .. } => form.clone(),
            GammaStructure::Unknown(_) => None,
        }
    }
}

/// Existence verdict and, when it exists, an associative multiplication
/// cochain (before any commutativity requirement).
fn decide_existence(gs: &GammaStructure) -> Result<(Verdict, Option<Cochain>)> {
    Ok(match gs {
        GammaStructure::Bicharacter(b) => (
            Verdict::yes(basis::EXISTS_BICHARACTER),
            Some(Cochain::zero(b.group().clone(), 2)?),
        ),
        GammaStructure::Form(q) => {
            if q.normalized_bicharacter().is_some() {
                (
                    Verdict::yes(basis::EXISTS_FORM),
                    Some(Cochain::zero(q.group().clone(), 2)?),
                )
            } else {
                let g = q.group();
                let i = (0..g.ngens())
                    .find(|&i| {
                        !q.eval(&g.generator(i))
                            .scale(g.modulus(i).unwrap_or(0))
                            .is_zero()
                    })
                    .expect("some generator obstructs");
                let x = g.generator(i);
                let d = g.modulus(i).unwrap_or(0);
                (
                    Verdict::no(
                        basis::EXISTS_FORM,
                        format!("ord({x}) q({x}) = {d} * {} != 0", q.eval(&x)),
                    ),
                    None,
                )
            }
        }
        GammaStructure::Associator { omega, .. } => match solve_d3(omega)? {
            Some(eta) => (Verdict::yes(basis::EXISTS_COBOUNDARY), Some(eta)),
            None => (
                Verdict::no(
                    basis::EXISTS_COBOUNDARY,
                    "the associator on Gamma is not a coboundary",
                ),
                None,
            ),
        },
        GammaStructure::Unknown(_) => (
            Verdict::undecided(
                basis::EXISTS_COBOUNDARY,
                "neither an associator nor a braiding on Gamma was supplied",
            ),
            None,
        ),
    })
}

/// `q ≡ 0` on the subgroup generated by `gamma`: checks `q` on generators and
/// the polarization on generator pairs.
pub fn check_commutative(q: &QuadraticForm, gamma: &SubgroupSpec) -> bool {
    commutativity_witness(q, gamma.generators()).is_none()
}

fn commutativity_witness(
    q: &QuadraticForm,
    gens: &[crate::abgroup::GroupElement],
) -> Option<String> {
    let b = q.polarization();
    for (i, x) in gens.iter().enumerate() {
        let v = q.eval(x);
        if !v.is_zero() {
            return Some(format!("q({x}) = {v}"));
        }
        for y in &gens[..i] {
            let v = b.eval(y, x);
            if !v.is_zero() {
                return Some(format!("b({y}, {x}) = {v}"));
            }
        }
    }
    None
}

/// Orbits of the Γ-action, each with its simple modules.
///
/// The simple modules over an orbit with representative `X` are the
/// irreducible representations of `k^{ξ_X^op}[S_X]`, where `S_X` is the
/// stabilizer and `ξ_X` the attached cocycle (trivial when none is given).
pub fn classify_simples(spec: &SpectrumTable) -> Result<Vec<SimpleModuleClass>> {
    classify(spec, spec.orbits())
}

/// Orbits consisting of local labels only.
pub fn classify_local_simples(spec: &SpectrumTable) -> Result<Vec<SimpleModuleClass>> {
    let mut keep = vec![];
    for o in spec.orbits() {
        let local = spec.is_local(o[0]);
        if let Some(&y) = o.iter().find(|&&y| spec.is_local(y) != local) {
            return Err(Error::InvalidSpectrum(format!(
                "locality is not constant on the orbit of {}: {} differs",
                spec.labels()[o[0]],
                spec.labels()[y]
            )));
        }
        if local {
            keep.push(o);
        }
    }
    classify(spec, keep)
}

/// Labels whose double braiding with every `E_γ` is trivial.
pub fn locality_filter(spec: &SpectrumTable) -> Vec<usize> {
    (0..spec.len()).filter(|&x| spec.is_local(x)).collect()
}

fn classify(spec: &SpectrumTable, orbits: Vec<Vec<usize>>) -> Result<Vec<SimpleModuleClass>> {
    let order = spec.gamma().order().expect("finite Gamma");
    let mut out = vec![];
    for orbit in orbits {
        let rep = orbit[0];
        let stab = spec.stabilizer_of(rep)?;
        let stab_order = order / orbit.len() as u128;
        let census = if stab_order == 1 {
            None
        } else {
            let s = stab.structure()?;
            let xi = match spec.orbit_cocycle(&orbit) {
                Some(c) => c.clone(),
                None => Cochain::zero(s.group().clone(), 2)?,
            };
            Some(irrep_census(&TwistedAlgebraSpec::new(xi)?.opposite())?)
        };
        out.push(SimpleModuleClass {
            orbit_rep: spec.labels()[rep].clone(),
            orbit_size: Count::Finite(orbit.len() as u128),
            stabilizer_order: stab_order as u64,
            stabilizer: stab.generators().to_vec(),
            irrep_count: census.as_ref().map_or(1, |c| c.count),
            irrep_dim: census.as_ref().map_or(1, |c| c.dimension),
            local: spec.is_local(rep),
            is_unit: orbit.contains(&spec.unit()),
        });
    }
    Ok(out)
}

/// `θ(E_{γ_i}) = 0` for every generator, given a twist table.
pub fn check_ribbon(spec: &SpectrumTable) -> Option<Verdict> {
    let twist = spec.twist()?;
    let g = spec.gamma();
    for x in g.generators() {
        let t = twist[spec.current(&x)];
        if !t.is_zero() {
            return Some(Verdict::no(basis::RIBBON, format!("theta(E_{x}) = {t}")));
        }
    }
    Some(Verdict::yes(basis::RIBBON))
}

/// Transparent local labels must all lie in the orbit of the unit.
pub fn check_nondegenerate(spec: &SpectrumTable) -> Option<Verdict> {
    if !spec.has_pairwise() {
        return None;
    }
    let local = locality_filter(spec);
    let unit_orbit = spec.orbit(spec.unit());
    for &x in &local {
        if unit_orbit.binary_search(&x).is_ok() {
            continue;
        }
        let transparent = local
            .iter()
            .all(|&y| spec.pairwise(x, y).is_some_and(|p| p.is_zero()));
        if transparent {
            return Some(Verdict::no(
                basis::NONDEGENERATE,
                format!(
                    "{} is local, transparent, and not in the orbit of the unit",
                    spec.labels()[x]
                ),
            ));
        }
    }
    Some(Verdict::yes(basis::NONDEGENERATE))
}

fn check_form_matches(q: &QuadraticForm, spec: &SpectrumTable) -> Result<()> {
    let b = q.polarization();
    let gens = spec.gamma().generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens {
            let m = spec.monodromy(i, spec.current(y));
            if m != b.eval(x, y) {
                return Err(Error::InvalidSpectrum(format!(
                    "monodromy of E_{x} with E_{y} is {m} but the braiding on Gamma gives {}",
                    b.eval(x, y)
                )));
            }
        }
    }
    Ok(())
}

/// Full analysis of a simple current algebra over a finite spectrum.
pub fn analyze(gs: &GammaStructure, spec: &SpectrumTable) -> Result<AnalysisReport> {
    if gs.group() != spec.gamma() {
        return Err(Error::DimensionMismatch(format!(
            "braided data is on {} but the spectrum is acted on by {}",
            gs.group(),
            spec.gamma()
        )));
    }
    let form = gs.form();
    if let Some(q) = &form {
        check_form_matches(q, spec)?;
    }
    let (exists, assoc_eta) = decide_existence(gs)?;
    let mut report = AnalysisReport {
        algebra_exists: exists,
        commutative: Verdict::undecided(basis::COMMUTATIVE, ""),
        ribbon: Verdict::undecided(basis::RIBBON, ""),
        finite_full: Verdict::undecided(basis::FINITE_FULL_TABLE, ""),
        finite_local: Verdict::undecided(basis::FINITE_TABLE, ""),
        nondegenerate: Verdict::undecided(basis::NONDEGENERATE, ""),
        simple_census: Census::empty(),
        local_census: Census::empty(),
        eta: None,
        metadata: Metadata::default(),
        notes: vec![],
    };
    if !report.algebra_exists.is_yes() {
        for v in [
            &mut report.commutative,
            &mut report.ribbon,
            &mut report.finite_full,
            &mut report.finite_local,
            &mut report.nondegenerate,
        ] {
            v.detail = Some(basis::NEEDS_ALGEBRA.into());
        }
        return Ok(report);
    }
    report.finite_full = Verdict::yes(basis::FINITE_FULL_TABLE);
    report.simple_census = Census::from_classes(classify_simples(spec)?);
    report.eta = assoc_eta;

    report.commutative = match &form {
        None => Verdict::undecided(basis::COMMUTATIVE, "no braiding on Gamma was supplied"),
        Some(q) => match commutativity_witness(q, &spec.gamma().generators()) {
            None => Verdict::yes(basis::COMMUTATIVE),
            Some(w) => Verdict::no(basis::COMMUTATIVE, w),
        },
    };
    if !report.commutative.is_yes() {
        for v in [
            &mut report.ribbon,
            &mut report.finite_local,
            &mut report.nondegenerate,
        ] {
            v.detail = Some(basis::DOWNSTREAM.into());
        }
        return Ok(report);
    }
    if let GammaStructure::Bicharacter(b) = gs {
        report.eta = Some(construct_eta(b)?);
    }
    report.ribbon = check_ribbon(spec)
        .unwrap_or_else(|| Verdict::undecided(basis::RIBBON, "no twist data was supplied"));
    report.local_census = Census::from_classes(classify_local_simples(spec)?);
    report.finite_local = Verdict::yes(basis::FINITE_TABLE);
    report.nondegenerate = check_nondegenerate(spec).unwrap_or_else(|| {
        Verdict::undecided(
            basis::NONDEGENERATE,
            "no pairwise double braiding data was supplied",
        )
    });
    Ok(report)
}
