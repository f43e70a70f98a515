use serde::{Deserialize, Serialize};

use super::bichar::{check_square, ScaledTable};
use super::{Bicharacter, Phase};
use crate::abgroup::{FgAbGroup, GroupElement, SubgroupStructure};
use crate::{Error, Result};

/// Quadratic form `q: G → ℚ/ℤ` presented by a matrix `B` on the coordinate
/// lattice, with `q(x) = B(x̂, x̂)` for the canonical representative `x̂`.
///
/// `B` itself need not descend to a bicharacter of `G`: a metric group such as
/// `ℤ/8` with `q(x) = x²/16` has no bicharacter `β` with `β(x, x) = q(x)`. What
/// is required is that the polarization `B + Bᵀ` descends and that
/// `d_i² B_ii = 0`, which is exactly the condition for `q` to be well defined.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuadraticRepr", into = "QuadraticRepr")]
pub struct QuadraticForm {
    group: FgAbGroup,
    gram: Vec<Vec<Phase>>,
    scaled: ScaledTable,
    // upper triangular gauge: B'_ii = B_ii, B'_ij = B_ij + B_ji (i < j), 0 below
    normalized: ScaledTable,
    polar: Bicharacter,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.gram == other.gram
    }
}

impl Eq for QuadraticForm {}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    group: FgAbGroup,
    gram: Vec<Vec<Phase>>,
}

impl TryFrom<QuadraticRepr> for QuadraticForm {
    type Error = Error;
    fn try_from(r: QuadraticRepr) -> Result<Self> {
        QuadraticForm::new(r.group, r.gram)
    }
}

impl From<QuadraticForm> for QuadraticRepr {
    fn from(q: QuadraticForm) -> Self {
        QuadraticRepr {
            group: q.group,
            gram: q.gram,
        }
    }
}

impl QuadraticForm {
    pub fn new(group: FgAbGroup, gram: Vec<Vec<Phase>>) -> Result<Self> {
        check_square(&group, &gram)?;
        let n = group.ngens();
        let polar_gram: Vec<Vec<Phase>> = (0..n)
            .map(|i| (0..n).map(|j| gram[i][j] + gram[j][i]).collect())
            .collect();
        let polar = Bicharacter::new(group.clone(), polar_gram).map_err(|e| {
            Error::IllDefinedForm(format!("polarization does not descend to {group}: {e}"))
        })?;
        for (i, row) in gram.iter().enumerate() {
            if let Some(d) = group.modulus(i) {
                let v = row[i].scale(d).scale(d);
                if !v.is_zero() {
                    return Err(Error::IllDefinedForm(format!(
                        "q is not well defined: {d}^2 * {} != 0 on generator {i}",
                        row[i]
                    )));
                }
            }
        }
        let normalized_gram: Vec<Vec<Phase>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => polar.entry(i, j),
                        std::cmp::Ordering::Equal => gram[i][i],
                        std::cmp::Ordering::Greater => Phase::ZERO,
                    })
                    .collect()
            })
            .collect();
        Ok(QuadraticForm {
            scaled: ScaledTable::new(&gram),
            normalized: ScaledTable::new(&normalized_gram),
            group,
            gram,
            polar,
        })
    }

    /// `q(x) = β(x, x)` for a genuine bicharacter.
    pub fn from_bicharacter(beta: &Bicharacter) -> Self {
        QuadraticForm::new(beta.group().clone(), beta.gram().to_vec())
            .expect("bicharacter gram defines a quadratic form")
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// The presenting matrix as given.
    pub fn gram(&self) -> &[Vec<Phase>] {
        &self.gram
    }

    pub fn eval(&self, x: &GroupElement) -> Phase {
        assert_eq!(x.len(), self.group.ngens(), "element dimension");
        self.scaled.bilinear(x.coords(), x.coords())
    }

    /// `b(x, y) = q(x + y) − q(x) − q(y)`.
    pub fn polarization(&self) -> &Bicharacter {
        &self.polar
    }

    /// The presenting matrix as a bicharacter, when it descends to `G`.
    pub fn as_bicharacter(&self) -> Option<Bicharacter> {
        Bicharacter::new(self.group.clone(), self.gram.clone()).ok()
    }

    /// Braiding scalar `c(x, y)` of the pointed braided category with
    /// quadratic form `q`, in the upper-triangular gauge.
    pub fn braiding(&self, x: &GroupElement, y: &GroupElement) -> Phase {
        self.normalized.bilinear(x.coords(), y.coords())
    }

    /// Associator `ω(x, y, z)` matching [`QuadraticForm::braiding`]: the gauge
    /// form paired with the carry of `y + z`.
    pub fn associator(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Phase {
        let carry: Vec<i64> = (0..self.group.ngens())
            .map(|i| match self.group.modulus(i) {
                Some(d) if y.coords()[i] + z.coords()[i] >= d => d,
                _ => 0,
            })
            .collect();
        self.normalized.bilinear(x.coords(), &carry)
    }

    /// Restriction to a subgroup, presented in the subgroup's own generators.
    pub fn restrict(&self, s: &SubgroupStructure) -> Self {
        let imgs = s.images();
        let n = imgs.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => self.polar.eval(&imgs[i], &imgs[j]),
                        std::cmp::Ordering::Equal => self.eval(&imgs[i]),
                        std::cmp::Ordering::Greater => Phase::ZERO,
                    })
                    .collect()
            })
            .collect();
        QuadraticForm::new(s.group().clone(), gram).expect("restriction of a quadratic form")
    }

    /// A bicharacter `β` on the subgroup with `β(s, s) = q(s)`, if one exists
    /// (that is, if `ord(s) · q(s) = 0` on the subgroup).
    pub fn restrict_bicharacter(&self, s: &SubgroupStructure) -> Option<Bicharacter> {
        self.restrict(s).normalized_bicharacter()
    }

    /// The upper-triangular gauge as a bicharacter, when it descends.
    pub fn normalized_bicharacter(&self) -> Option<Bicharacter> {
        let n = self.group.ngens();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t = self.normalized.entries[i][j];
                        Phase::new(t, self.normalized.den).expect("positive denominator")
                    })
                    .collect()
            })
            .collect();
        Bicharacter::new(self.group.clone(), gram).ok()
    }
}

/// Ribbon twist `θ(x) = q(x) + t(x)` with `t` a homomorphism `G → ℚ/ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistFunction {
    form: QuadraticForm,
    linear: Vec<Phase>,
}

impl TwistFunction {
    pub fn new(form: QuadraticForm, linear: Vec<Phase>) -> Result<Self> {
        let g = form.group();
        if linear.len() != g.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "linear part has {} entries for {} generators",
                linear.len(),
                g.ngens()
            )));
        }
        for (i, t) in linear.iter().enumerate() {
            if let Some(d) = g.modulus(i) {
                if !t.scale(d).is_zero() {
                    return Err(Error::IllDefinedForm(format!(
                        "linear part {t} on generator {i} is not killed by its order {d}"
                    )));
                }
            }
        }
        Ok(TwistFunction { form, linear })
    }

    /// `θ = q`.
    pub fn from_quadratic(form: QuadraticForm) -> Self {
        let n = form.group().ngens();
        TwistFunction {
            form,
            linear: vec![Phase::ZERO; n],
        }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn linear(&self) -> &[Phase] {
        &self.linear
    }

    pub fn linear_part(&self, x: &GroupElement) -> Phase {
        x.coords()
            .iter()
            .zip(&self.linear)
            .map(|(&c, t)| t.scale(c))
            .sum()
    }

    pub fn eval(&self, x: &GroupElement) -> Phase {
        self.form.eval(x) + self.linear_part(x)
    }
}
