use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::Phase;
use crate::abgroup::{
    smith_normal_form, FgAbGroup, GroupElement, IntMatrix, Quotient, SubgroupSpec,
    SubgroupStructure,
};
use crate::{Error, Result};

/// Integer image of a phase table over a common denominator, for fast evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ScaledTable {
    pub den: i64,
    pub entries: Vec<Vec<i64>>,
}

impl ScaledTable {
    pub fn new(table: &[Vec<Phase>]) -> Self {
        let den = table
            .iter()
            .flatten()
            .fold(1i64, |acc, p| acc.lcm(&p.denom()));
        let entries = table
            .iter()
            .map(|row| row.iter().map(|p| p.numer() * (den / p.denom())).collect())
            .collect();
        ScaledTable { den, entries }
    }

    /// `Σ x_i y_j t_ij` as a phase.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Phase {
        let n = self.den as i128;
        let mut acc: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for (j, &yj) in y.iter().enumerate() {
                let t = self.entries[i][j];
                if t != 0 && yj != 0 {
                    row = (row + (yj as i128 % n) * t as i128) % n;
                }
            }
            acc = (acc + (xi as i128 % n) * row) % n;
        }
        Phase::new(acc as i64, self.den).expect("positive denominator")
    }
}

/// Bicharacter `β: G × G → ℚ/ℤ` given by its values on generator pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BicharacterRepr", into = "BicharacterRepr")]
pub struct Bicharacter {
    group: FgAbGroup,
    gram: Vec<Vec<Phase>>,
    scaled: ScaledTable,
}

impl PartialEq for Bicharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.gram == other.gram
    }
}

impl Eq for Bicharacter {}

#[derive(Serialize, Deserialize)]
struct BicharacterRepr {
    group: FgAbGroup,
    gram: Vec<Vec<Phase>>,
}

impl TryFrom<BicharacterRepr> for Bicharacter {
    type Error = Error;
    fn try_from(r: BicharacterRepr) -> Result<Self> {
        Bicharacter::new(r.group, r.gram)
    }
}

impl From<Bicharacter> for BicharacterRepr {
    fn from(b: Bicharacter) -> Self {
        BicharacterRepr {
            group: b.group,
            gram: b.gram,
        }
    }
}

pub(crate) fn check_square(group: &FgAbGroup, gram: &[Vec<Phase>]) -> Result<()> {
    let n = group.ngens();
    if gram.len() != n || gram.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "gram matrix must be {n}x{n} for {group}"
        )));
    }
    Ok(())
}

impl Bicharacter {
    /// Validates `d_i β(g_i, g_j) = 0` and `d_j β(g_i, g_j) = 0` on torsion generators.
    pub fn new(group: FgAbGroup, gram: Vec<Vec<Phase>>) -> Result<Self> {
        check_square(&group, &gram)?;
        for (i, row) in gram.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                for k in [i, j] {
                    if let Some(d) = group.modulus(k) {
                        if !v.scale(d).is_zero() {
                            return Err(Error::IllDefinedForm(format!(
                                "entry ({i},{j}) = {v} is not killed by the order {d} of generator {k}"
                            )));
                        }
                    }
                }
            }
        }
        let scaled = ScaledTable::new(&gram);
        Ok(Bicharacter {
            group,
            gram,
            scaled,
        })
    }

    pub fn zero(group: FgAbGroup) -> Self {
        let n = group.ngens();
        Bicharacter::new(group, vec![vec![Phase::ZERO; n]; n]).expect("zero form is well defined")
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<Phase>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> Phase {
        self.gram[i][j]
    }

    /// `β(x, y)`. Panics if the coordinate lengths do not match the group.
    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Phase {
        assert_eq!(x.len(), self.group.ngens(), "element dimension");
        assert_eq!(y.len(), self.group.ngens(), "element dimension");
        self.scaled.bilinear(x.coords(), y.coords())
    }

    pub fn try_eval(&self, x: &GroupElement, y: &GroupElement) -> Result<Phase> {
        let n = self.group.ngens();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "arguments of length {} and {} for a form on {n} generators",
                x.len(),
                y.len()
            )));
        }
        Ok(self.eval(x, y))
    }

    pub fn transpose(&self) -> Self {
        let n = self.group.ngens();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| self.gram[j][i]).collect())
            .collect();
        Bicharacter::new(self.group.clone(), gram).expect("transpose stays well defined")
    }

    /// `b = β + βᵀ`.
    pub fn monodromy(&self) -> Self {
        let t = self.transpose();
        let gram = self
            .gram
            .iter()
            .zip(&t.gram)
            .map(|(r, s)| r.iter().zip(s).map(|(&a, &b)| a + b).collect())
            .collect();
        Bicharacter::new(self.group.clone(), gram).expect("sum stays well defined")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.ngens();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    /// `β(x, x) = 0` for every `x`.
    pub fn is_alternating(&self) -> bool {
        let n = self.group.ngens();
        (0..n).all(|i| {
            self.gram[i][i].is_zero()
                && (0..n).all(|j| (self.gram[i][j] + self.gram[j][i]).is_zero())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.gram.iter().flatten().all(|p| p.is_zero())
    }

    /// Pullback along the embedding of a subgroup.
    pub fn restrict(&self, s: &SubgroupStructure) -> Self {
        let imgs = s.images();
        let gram = imgs
            .iter()
            .map(|x| imgs.iter().map(|y| self.eval(x, y)).collect())
            .collect();
        Bicharacter::new(s.group().clone(), gram).expect("restriction of a bicharacter")
    }
}

/// Kernel of the homomorphism `G → (ℚ/ℤ)^m` sending generator `i` to `images[i]`.
///
/// The map must be well defined on `G`. Returns generators of the kernel
/// (greedily thinned when `G` is finite).
pub fn phase_kernel(group: &FgAbGroup, images: &[Vec<Phase>]) -> Result<SubgroupSpec> {
    let n = group.ngens();
    if images.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} images for {n} generators",
            images.len()
        )));
    }
    let m = images.first().map_or(0, Vec::len);
    if images.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch("ragged image table".into()));
    }
    let scaled = ScaledTable::new(images);
    let mut rows: Vec<Vec<i64>> = scaled.entries.clone();
    for k in 0..m {
        let mut r = vec![0i64; m];
        r[k] = scaled.den;
        rows.push(r);
    }
    let mat = IntMatrix::from_i64_rows(m, &rows)?;
    let snf = smith_normal_form(&mat);
    let mut kernel = vec![];
    for i in snf.rank..mat.rows() {
        let coords: Vec<i64> = snf.u.row(i)[..n]
            .iter()
            .map(|c| {
                c.to_i64()
                    .ok_or(Error::Overflow("kernel coordinate does not fit in i64"))
            })
            .collect::<Result<_>>()?;
        let x = group.element(coords)?;
        if !x.is_zero() {
            kernel.push(x);
        }
    }
    if group.is_finite() {
        SubgroupSpec::from_elements(group.clone(), &kernel)
    } else {
        SubgroupSpec::new(group.clone(), kernel)
    }
}

/// `{x : b(x, γ) = 0 for every γ ∈ Γ}`.
pub fn orthogonal_complement(b: &Bicharacter, gamma: &SubgroupSpec) -> Result<SubgroupSpec> {
    if gamma.ambient() != b.group() {
        return Err(Error::DimensionMismatch(
            "subgroup of a different group".into(),
        ));
    }
    if !b.group().is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let images: Vec<Vec<Phase>> = b
        .group()
        .generators()
        .iter()
        .map(|e| gamma.generators().iter().map(|g| b.eval(e, g)).collect())
        .collect();
    phase_kernel(b.group(), &images)
}

/// `{x : b(x, y) = 0 for all y}`.
pub fn radical(b: &Bicharacter) -> Result<SubgroupSpec> {
    orthogonal_complement(b, &SubgroupSpec::whole(b.group().clone()))
}

/// A bicharacter descended to `Γ^⊥ / Γ`.
#[derive(Clone, Debug)]
pub struct Descent {
    form: Bicharacter,
    perp: SubgroupStructure,
    quotient: Quotient,
}

impl Descent {
    pub fn form(&self) -> &Bicharacter {
        &self.form
    }

    pub fn group(&self) -> &FgAbGroup {
        self.form.group()
    }

    /// Class of an element of `Γ^⊥`; `None` outside `Γ^⊥`.
    pub fn project(&self, x: &GroupElement) -> Option<GroupElement> {
        self.perp.pullback(x).map(|s| self.quotient.project(&s))
    }

    /// A representative in the ambient group of a quotient element.
    pub fn lift(&self, q: &GroupElement) -> GroupElement {
        self.perp.embed(&self.quotient.lift(q))
    }
}

/// Descends `b` to `Γ^⊥ / Γ`; requires `Γ ⊆ Γ^⊥` and `b(Γ, Γ^⊥) = b(Γ^⊥, Γ) = 0`.
pub fn descend(b: &Bicharacter, gamma: &SubgroupSpec, perp: &SubgroupSpec) -> Result<Descent> {
    if gamma.ambient() != b.group() || perp.ambient() != b.group() {
        return Err(Error::DimensionMismatch(
            "subgroup of a different group".into(),
        ));
    }
    for g in gamma.generators() {
        if !perp.contains(g) {
            return Err(Error::DescentUndefined(format!(
                "{g} is not in the complement"
            )));
        }
        for p in perp.generators() {
            if !b.eval(g, p).is_zero() || !b.eval(p, g).is_zero() {
                return Err(Error::DescentUndefined(format!(
                    "form does not vanish on ({g}, {p})"
                )));
            }
        }
    }
    let s = perp.structure()?;
    let gamma_s = gamma
        .generators()
        .iter()
        .map(|g| {
            s.pullback(g)
                .ok_or_else(|| Error::Internal("pullback failed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma_s = SubgroupSpec::new(s.group().clone(), gamma_s)?;
    let quotient = gamma_s.quotient()?.clone();
    let lifts: Vec<GroupElement> = (0..quotient.group().ngens())
        .map(|j| s.embed(quotient.generator_lift(j)))
        .collect();
    let gram = lifts
        .iter()
        .map(|x| lifts.iter().map(|y| b.eval(x, y)).collect())
        .collect();
    let form = Bicharacter::new(quotient.group().clone(), gram)?;
    Ok(Descent {
        form,
        perp: s,
        quotient,
    })
}
