//! Pointed braided categories given by a finite metric group, and their
//! condensation along a subgroup `Γ`.
//!
//! Simple objects are the elements of `G`; `E_g ⊗ E_h = E_{g+h}`. The
//! braiding is a quadratic form `q` (or a genuine bicharacter `β` with
//! `q(x) = β(x, x)`), and the twist is `θ = q + t` with `t` a character.

use crate::abgroup::{FgAbGroup, GroupElement, SubgroupSpec};
use crate::cohomology::Cochain;
use crate::engine::{
    analyze, basis, AnalysisReport, Census, Count, GammaStructure, Metadata, PairwiseMonodromy,
    SimpleModuleClass, SpectrumTable, Verdict,
};
use crate::forms::{Bicharacter, Phase, QuadraticForm, TwistFunction};
use crate::{Error, Result};

/// Largest group the pointed paths will enumerate.
pub const ORACLE_BOUND: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGroupCategory {
    beta: Option<Bicharacter>,
    twist: TwistFunction,
}

impl MetricGroupCategory {
    /// Braiding `c(x, y) = β(x, y)` with trivial associator.
    pub fn new(beta: Bicharacter, linear: Vec<Phase>) -> Result<Self> {
        let form = QuadraticForm::from_bicharacter(&beta);
        Ok(MetricGroupCategory {
            beta: Some(beta),
            twist: TwistFunction::new(form, linear)?,
        })
    }

    /// Braided structure determined by `q` alone.
    pub fn from_form(form: QuadraticForm, linear: Vec<Phase>) -> Result<Self> {
        Ok(MetricGroupCategory {
            beta: form.as_bicharacter(),
            twist: TwistFunction::new(form, linear)?,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        self.twist.form().group()
    }

    pub fn form(&self) -> &QuadraticForm {
        self.twist.form()
    }

    /// The braiding bicharacter, when the braiding is one.
    pub fn braiding(&self) -> Option<&Bicharacter> {
        self.beta.as_ref()
    }

    pub fn twist(&self) -> &TwistFunction {
        &self.twist
    }

    /// Double braiding `b(x, y)`.
    pub fn monodromy(&self, x: &GroupElement, y: &GroupElement) -> Phase {
        self.form().polarization().eval(x, y)
    }

    fn check_size(&self) -> Result<u128> {
        let order = self.group().order().ok_or(Error::InfiniteGroup)?;
        if order > ORACLE_BOUND {
            return Err(Error::BoundExceeded {
                what: "pointed group order",
                size: order,
                bound: ORACLE_BOUND,
            });
        }
        Ok(order)
    }

    fn check_subgroup(&self, gamma: &SubgroupSpec) -> Result<()> {
        if gamma.ambient() != self.group() {
            return Err(Error::InvalidInput(format!(
                "subgroup lives in {} but the category is graded by {}",
                gamma.ambient(),
                self.group()
            )));
        }
        Ok(())
    }

    /// The spectrum of simple objects with the translation action of `Γ`.
    pub fn spectrum(&self, gamma: &SubgroupSpec) -> Result<SpectrumTable> {
        self.check_size()?;
        self.check_subgroup(gamma)?;
        let g = self.group();
        let s = gamma.structure()?;
        let elements = g.enumerate()?;
        let b = self.form().polarization();
        let mut action = vec![];
        let mut monodromy = vec![];
        for img in s.images() {
            action.push(
                elements
                    .iter()
                    .map(|x| g.index_of(&g.add(x, img)))
                    .collect(),
            );
            monodromy.push(elements.iter().map(|x| b.eval(img, x)).collect());
        }
        SpectrumTable::new(
            elements.iter().map(ToString::to_string).collect(),
            s.group().clone(),
            action,
            monodromy,
            0,
        )?
        .with_twist(elements.iter().map(|x| self.twist.eval(x)).collect())?
        .with_pairwise(PairwiseMonodromy::Form {
            form: b.clone(),
            points: elements,
        })
    }
}

/// Condenses `Γ` through the generic engine.
pub fn condense(cat: &MetricGroupCategory, gamma: &SubgroupSpec) -> Result<AnalysisReport> {
    let spec = cat.spectrum(gamma)?;
    let s = gamma.structure()?;
    let gs = match cat.braiding() {
        Some(beta) => GammaStructure::Bicharacter(beta.restrict(&s)),
        None => GammaStructure::Form(cat.form().restrict(&s)),
    };
    analyze(&gs, &spec)
}

/// Computes the condensation report by direct enumeration of group
/// elements and cosets, independently of the engine.
pub fn brute_force_oracle(
    cat: &MetricGroupCategory,
    gamma: &SubgroupSpec,
) -> Result<AnalysisReport> {
    cat.check_size()?;
    cat.check_subgroup(gamma)?;
    let g = cat.group();
    let q = cat.form();
    let s = gamma.structure()?;
    let sg = s.group();
    let elements = g.enumerate()?;
    let gam = gamma.elements()?;
    let in_gamma = |x: &GroupElement| gam.binary_search(x).is_ok();

    let mut report = AnalysisReport {
        algebra_exists: Verdict::undecided(basis::EXISTS_FORM, ""),
        commutative: Verdict::undecided(basis::COMMUTATIVE, basis::NEEDS_ALGEBRA),
        ribbon: Verdict::undecided(basis::RIBBON, basis::NEEDS_ALGEBRA),
        finite_full: Verdict::undecided(basis::FINITE_FULL_TABLE, basis::NEEDS_ALGEBRA),
        finite_local: Verdict::undecided(basis::FINITE_TABLE, basis::NEEDS_ALGEBRA),
        nondegenerate: Verdict::undecided(basis::NONDEGENERATE, basis::NEEDS_ALGEBRA),
        simple_census: Census::empty(),
        local_census: Census::empty(),
        eta: None,
        metadata: Metadata::default(),
        notes: vec![],
    };

    // existence: ord(γ) q(γ) = 0 throughout Γ
    if cat.braiding().is_some() {
        report.algebra_exists = Verdict::yes(basis::EXISTS_BICHARACTER);
    } else {
        let ok = gam.iter().all(|x| {
            q.eval(x)
                .scale(g.element_order(x).expect("finite"))
                .is_zero()
        });
        report.algebra_exists = if ok {
            Verdict::yes(basis::EXISTS_FORM)
        } else {
            let (x, d) = (0..sg.ngens())
                .map(|i| (sg.generator(i), sg.modulus(i).expect("finite")))
                .find(|(x, d)| !q.eval(&s.embed(x)).scale(*d).is_zero())
                .expect("an obstructing generator");
            let v = q.eval(&s.embed(&x));
            Verdict::no(
                basis::EXISTS_FORM,
                format!("ord({x}) q({x}) = {d} * {v} != 0"),
            )
        };
    }
    if !report.algebra_exists.is_yes() {
        return Ok(report);
    }

    let cosets = |filter: &dyn Fn(&GroupElement) -> bool| {
        let mut seen = vec![false; elements.len()];
        let mut classes = vec![];
        for (i, x) in elements.iter().enumerate() {
            if seen[i] || !filter(x) {
                continue;
            }
            for y in &gam {
                seen[g.index_of(&g.add(x, y))] = true;
            }
            classes.push(SimpleModuleClass {
                orbit_rep: x.to_string(),
                orbit_size: Count::Finite(gam.len() as u128),
                stabilizer_order: 1,
                stabilizer: vec![],
                irrep_count: 1,
                irrep_dim: 1,
                local: gam.iter().all(|y| cat.monodromy(y, x).is_zero()),
                is_unit: in_gamma(x),
            });
        }
        classes
    };
    report.finite_full = Verdict::yes(basis::FINITE_FULL_TABLE);
    report.simple_census = Census::from_classes(cosets(&|_| true));
    report.eta = Some(Cochain::zero(sg.clone(), 2)?);

    let isotropic = gam.iter().all(|x| q.eval(x).is_zero());
    if !isotropic {
        let gens: Vec<GroupElement> = s.images().to_vec();
        let mut witness = None;
        'outer: for (i, x) in gens.iter().enumerate() {
            if !q.eval(x).is_zero() {
                witness = Some(format!("q({}) = {}", sg.generator(i), q.eval(x)));
                break;
            }
            for (j, y) in gens[..i].iter().enumerate() {
                let v = cat.monodromy(y, x);
                if !v.is_zero() {
                    witness = Some(format!("b({}, {}) = {v}", sg.generator(j), sg.generator(i)));
                    break 'outer;
                }
            }
        }
        report.commutative = Verdict::no(basis::COMMUTATIVE, witness.expect("a witness"));
        for v in [
            &mut report.ribbon,
            &mut report.finite_local,
            &mut report.nondegenerate,
        ] {
            v.detail = Some(basis::DOWNSTREAM.into());
        }
        return Ok(report);
    }
    report.commutative = Verdict::yes(basis::COMMUTATIVE);

    if let Some(beta) = cat.braiding() {
        // η(x, y) = Σ_{i>j} x_i y_j β(s_i, s_j) on the structure of Γ
        let imgs = s.images();
        report.eta = Some(Cochain::from_fn(sg.clone(), 2, |a| {
            let (x, y) = (a[0].coords(), a[1].coords());
            let mut v = Phase::ZERO;
            for i in 0..imgs.len() {
                for j in 0..i {
                    v += beta.eval(&imgs[i], &imgs[j]).scale(x[i] * y[j]);
                }
            }
            v
        })?);
    }

    let theta = cat.twist();
    report.ribbon = if gam.iter().all(|x| theta.eval(x).is_zero()) {
        Verdict::yes(basis::RIBBON)
    } else {
        let x = sg
            .generators()
            .into_iter()
            .find(|x| !theta.eval(&s.embed(x)).is_zero())
            .expect("a generator with nontrivial twist");
        Verdict::no(
            basis::RIBBON,
            format!("theta(E_{x}) = {}", theta.eval(&s.embed(&x))),
        )
    };

    let perp: Vec<&GroupElement> = elements
        .iter()
        .filter(|x| gam.iter().all(|y| cat.monodromy(y, x).is_zero()))
        .collect();
    report.local_census = Census::from_classes(cosets(&|x| perp.contains(&x)));
    report.finite_local = Verdict::yes(basis::FINITE_TABLE);
    report.nondegenerate = match perp
        .iter()
        .find(|x| !in_gamma(x) && perp.iter().all(|y| cat.monodromy(x, y).is_zero()))
    {
        None => Verdict::yes(basis::NONDEGENERATE),
        Some(x) => Verdict::no(
            basis::NONDEGENERATE,
            format!("{x} is local, transparent, and not in the orbit of the unit"),
        ),
    };
    Ok(report)
}
