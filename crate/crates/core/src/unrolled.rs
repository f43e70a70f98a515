//! Simple current algebras `A_{L'} = ⊕_{λ∈L'} C_λ` in weight-module
//! categories of unrolled restricted quantum groups at a root of unity.
//!
//! Weights are rational vectors `(λ(H_1), …, λ(H_n))`. With `q = e^{2πi/ℓ}`:
//!
//! * `⟨λ, μ⟩ = Σ d_i (A⁻¹)_{ij} λ(H_i) μ(H_j)`
//! * `C_λ` is invertible iff `λ(H_i) ∈ (ℓ / 2d_i) ℤ` for all `i`
//! * `β(λ, μ) = ⟨λ, μ⟩ / ℓ`, `b = 2β`, `θ(C_λ) = ⟨λ, λ + 2(1−r)ρ⟩ / ℓ`
//!
//! The Weyl vector is taken to be `ρ(H_i) = 1`. None of the verdicts depend
//! on which lattice between the root and weight lattices the `K` generators
//! are drawn from, so there is no parameter for it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abgroup::{smith_normal_form, FgAbGroup, GroupElement, IntMatrix, SubgroupSpec};
use crate::engine::{basis, AnalysisReport, Census, Count, Metadata, SimpleModuleClass, Verdict};
use crate::forms::{in_multiple_of, phase_of_power, radical, Phase, QuadraticForm};
use crate::{Error, Result};

/// Largest discriminant group whose classes are listed individually.
pub const LISTING_BOUND: u128 = 4096;

mod text {
    pub const FINITE_FULL: &str =
        "simple objects are indexed by all of h*, so there are infinitely many orbits of simples";
    pub const FINITE_LOCAL: &str = "finitely many local simples iff rank(L') = rank(P)";
    pub const COMMUTATIVE: &str =
        "commutative iff <l,l> in l*Z on a basis of L' and 2<l,m> in l*Z on basis pairs";
    pub const RIBBON: &str = "ribbon iff 2(1-r)<l,rho> in l*Z for every basis vector of L'";
    pub const NONDEGENERATE: &str =
        "non-degenerate if the induced bicharacter on (l/2)(L')*/L' has trivial radical";
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_to_i64(x: &BigRational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
fn invert(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (v, pv) in a[r].iter_mut().zip(&pivot) {
                    *v = &*v - &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// A weight `λ ∈ 𝔥*` in coordinates `λ(H_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<BigRational>);

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Weight(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![BigRational::zero(); rank])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated rationals, optionally in parentheses: `"(3/2, 0)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| {
                BigRational::from_str(t.trim())
                    .map_err(|_| Error::InvalidInput(format!("bad rational {t:?} in weight {s:?}")))
            })
            .collect::<Result<_>>()
            .map(Weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    ell: i64,
    /// `D A⁻¹`, the Gram matrix of `⟨·,·⟩` in `H`-coordinates.
    gram: Vec<Vec<BigRational>>,
    muger_trivial: bool,
}

impl CartanDatum {
    pub fn new(cartan: Vec<Vec<i64>>, symmetrizers: Vec<i64>, ell: i64) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) || symmetrizers.len() != n {
            return Err(Error::DimensionMismatch(
                "Cartan matrix must be square with one symmetrizer per row".into(),
            ));
        }
        if symmetrizers.iter().any(|&d| d <= 0) {
            return Err(Error::InvalidInput("symmetrizers must be positive".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidInput(format!(
                    "Cartan matrix diagonal entry {i} is not 2"
                )));
            }
            for j in 0..n {
                if symmetrizers[i] * cartan[i][j] != symmetrizers[j] * cartan[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "d_i A_ij != d_j A_ji at ({i}, {j})"
                    )));
                }
            }
        }
        if ell < 3 {
            return Err(Error::InvalidInput(format!(
                "root of unity order {ell} must be at least 3"
            )));
        }
        let r = if ell % 2 == 1 { ell } else { ell / 2 };
        if let Some(&d) = symmetrizers.iter().find(|&&d| r <= d) {
            return Err(Error::InvalidInput(format!(
                "ord(q^2) = {r} must exceed every symmetrizer (found {d})"
            )));
        }
        let a: Vec<Vec<BigRational>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        let inv = invert(&a).ok_or(Error::SingularCartan)?;
        let gram = (0..n)
            .map(|i| (0..n).map(|j| rat(symmetrizers[i]) * &inv[i][j]).collect())
            .collect();
        Ok(CartanDatum {
            cartan,
            d: symmetrizers,
            ell,
            gram,
            muger_trivial: true,
        })
    }

    /// Type `A_n` (that is, `sl_{n+1}`).
    pub fn type_a(n: usize, ell: i64) -> Result<Self> {
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanDatum::new(cartan, vec![1; n], ell)
    }

    /// Whether the ambient category is known to have trivial Müger center.
    pub fn with_ambient_muger_trivial(mut self, trivial: bool) -> Self {
        self.muger_trivial = trivial;
        self
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn r(&self) -> i64 {
        if self.ell % 2 == 1 {
            self.ell
        } else {
            self.ell / 2
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn rho(&self) -> Weight {
        Weight::from_integers(&vec![1; self.rank()])
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "weight {w} has {} coordinates, rank is {}",
                w.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `⟨λ, μ⟩`. Panics if the weights have the wrong length.
    pub fn pairing(&self, l: &Weight, m: &Weight) -> BigRational {
        assert!(
            l.rank() == self.rank() && m.rank() == self.rank(),
            "weight rank"
        );
        let mut s = BigRational::zero();
        for (i, li) in l.0.iter().enumerate() {
            for (j, mj) in m.0.iter().enumerate() {
                s += &self.gram[i][j] * li * mj;
            }
        }
        s
    }

    pub fn lambda_inv_member(&self, l: &Weight) -> bool {
        l.rank() == self.rank()
            && l.0.iter().zip(&self.d).all(|(x, &d)| {
                let step = BigRational::new(BigInt::from(self.ell), BigInt::from(2 * d));
                (x / step).is_integer()
            })
    }

    /// `θ(C_λ)` as a phase.
    pub fn twist(&self, l: &Weight) -> Result<Phase> {
        let shift = self.rho().scale(&rat(2 * (1 - self.r())));
        phase_of_power(&self.pairing(l, &l.add(&shift)), self.ell)
    }

    /// `q(λ) = ⟨λ, λ⟩ / ℓ` as a phase.
    pub fn quadratic(&self, l: &Weight) -> Result<Phase> {
        phase_of_power(&self.pairing(l, l), self.ell)
    }
}

/// An additive subgroup `L' ⊆ Λ_inv`, stored with a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    basis: Vec<Weight>,
}

impl Sublattice {
    /// The subgroup generated by `generators`, which must lie in `Λ_inv`.
    pub fn new(cd: &CartanDatum, generators: &[Weight]) -> Result<Self> {
        let n = cd.rank();
        let mut rows = vec![];
        for g in generators {
            cd.check(g)?;
            if !cd.lambda_inv_member(g) {
                return Err(Error::NotInvertibleWeight(format!(
                    "{g} is not in Lambda_inv: need lambda(H_i) in (l/2d_i)Z"
                )));
            }
            // integer coordinates with respect to the steps ℓ/2d_i
            let row: Vec<i64> =
                g.0.iter()
                    .zip(&cd.d)
                    .map(|(x, &d)| {
                        let m = x * BigRational::new(BigInt::from(2 * d), BigInt::from(cd.ell));
                        rational_to_i64(&m).ok_or(Error::Overflow("weight coordinate"))
                    })
                    .collect::<Result<_>>()?;
            rows.push(row);
        }
        let mut basis = vec![];
        if !rows.is_empty() {
            let m = IntMatrix::from_i64_rows(n, &rows)?;
            let snf = smith_normal_form(&m);
            for i in 0..snf.rank {
                let d = snf.d.get(i, i);
                let coeffs = snf.v_inv.row(i);
                let coords = coeffs
                    .iter()
                    .zip(&cd.d)
                    .map(|(c, &di)| {
                        BigRational::from_integer(c * d)
                            * BigRational::new(BigInt::from(cd.ell), BigInt::from(2 * di))
                    })
                    .collect();
                basis.push(Weight(coords));
            }
        }
        Ok(Sublattice { basis })
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn commutativity_witness(cd: &CartanDatum, l: &Sublattice) -> Option<String> {
    let ell = rat(cd.ell);
    let b = &l.basis;
    for i in 0..b.len() {
        let v = cd.pairing(&b[i], &b[i]);
        if !in_multiple_of(&v, &ell) {
            return Some(format!("<{0},{0}> = {v} is not in {1}Z", b[i], cd.ell));
        }
        for j in 0..i {
            let v = cd.pairing(&b[j], &b[i]) * rat(2);
            if !in_multiple_of(&v, &ell) {
                return Some(format!("2<{},{}> = {v} is not in {}Z", b[j], b[i], cd.ell));
            }
        }
    }
    None
}

/// `⟨λ, λ⟩ ∈ ℓℤ` for all `λ ∈ L'`.
pub fn check_commutative(cd: &CartanDatum, l: &Sublattice) -> bool {
    commutativity_witness(cd, l).is_none()
}

fn ribbon_witness(cd: &CartanDatum, l: &Sublattice) -> Option<String> {
    let factor = rat(2 * (1 - cd.r()));
    let ell = rat(cd.ell);
    l.basis.iter().find_map(|b| {
        let v = &factor * cd.pairing(b, &cd.rho());
        (!in_multiple_of(&v, &ell)).then(|| format!("2(1-r)<{b},rho> = {v} is not in {}Z", cd.ell))
    })
}

/// `2(1−r)⟨λ, ρ⟩ ∈ ℓℤ` for all `λ ∈ L'`; requires commutativity.
pub fn check_ribbon(cd: &CartanDatum, l: &Sublattice) -> Result<bool> {
    if let Some(w) = commutativity_witness(cd, l) {
        return Err(Error::NotCommutative(w));
    }
    Ok(ribbon_witness(cd, l).is_none())
}

/// `Λ(L') = (ℓ/2)(L')* / L'` with its descended forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    form: QuadraticForm,
    /// Rows: `(ℓ/2)`-dual basis of `L'` in weight coordinates.
    dual_basis: Vec<Weight>,
    quotient: crate::abgroup::Quotient,
}

impl Discriminant {
    pub fn group(&self) -> &FgAbGroup {
        self.form.group()
    }

    /// `q̄([γ]) = ⟨γ, γ⟩ / ℓ`.
    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    /// `b̄([γ], [μ]) = 2⟨γ, μ⟩ / ℓ`.
    pub fn bicharacter(&self) -> &crate::forms::Bicharacter {
        self.form.polarization()
    }

    pub fn order(&self) -> u128 {
        self.group().order().expect("finite discriminant")
    }

    /// Class of `γ`, or `None` if `γ ∉ (ℓ/2)(L')*`.
    pub fn class_of(&self, cd: &CartanDatum, l: &Sublattice, g: &Weight) -> Option<GroupElement> {
        let two_over_ell = BigRational::new(BigInt::from(2), BigInt::from(cd.ell));
        let y: Vec<i64> = l
            .basis
            .iter()
            .map(|b| rational_to_i64(&(cd.pairing(g, b) * &two_over_ell)))
            .collect::<Option<_>>()?;
        Some(
            self.quotient
                .project(&FgAbGroup::free(y.len()).element(y).ok()?),
        )
    }

    /// A weight representing the class `x`.
    pub fn lift(&self, x: &GroupElement) -> Weight {
        let q = self.quotient.lift(x);
        let mut w = Weight::zero(self.dual_basis.first().map_or(0, Weight::rank));
        for (c, b) in q.coords().iter().zip(&self.dual_basis) {
            w = w.add(&b.scale(&rat(*c)));
        }
        w
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscriminantGroup {
    Finite(Discriminant),
    /// `rank(L') < rank(P)`; the quotient is not finitely generated.
    Infinite {
        missing_rank: usize,
    },
}

pub fn discriminant(cd: &CartanDatum, l: &Sublattice) -> Result<DiscriminantGroup> {
    if let Some(w) = commutativity_witness(cd, l) {
        return Err(Error::NotCommutative(format!(
            "L' is not contained in (l/2)(L')*: {w}"
        )));
    }
    let n = cd.rank();
    if l.rank() < n {
        return Ok(DiscriminantGroup::Infinite {
            missing_rank: n - l.rank(),
        });
    }
    let b: Vec<Vec<BigRational>> = l.basis.iter().map(|w| w.0.clone()).collect();
    let pb = mat_mul(&cd.gram, &transpose(&b));
    let two_over_ell = BigRational::new(BigInt::from(2), BigInt::from(cd.ell));
    // K = (2/ℓ) B P Bᵀ, integral by commutativity
    let k: Vec<Vec<BigRational>> = mat_mul(&b, &pb)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * &two_over_ell).collect())
        .collect();
    let k_int: Vec<Vec<i64>> = k
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    rational_to_i64(x).ok_or_else(|| {
                        Error::Internal(format!("scaled Gram entry {x} is not integral"))
                    })
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let k_inv =
        invert(&k).ok_or_else(|| Error::Internal("Gram matrix of L' is singular".into()))?;
    // dual basis C with (2/ℓ) C P Bᵀ = I
    let c = invert(&pb)
        .ok_or_else(|| Error::Internal("L' basis is degenerate".into()))?
        .into_iter()
        .map(|r| Weight(r.into_iter().map(|x| x / &two_over_ell).collect()))
        .collect::<Vec<_>>();

    let km = IntMatrix::from_i64_rows(n, &k_int)?;
    let det = km.determinant()?.abs();
    let ambient = FgAbGroup::free(n);
    let sub = SubgroupSpec::from_rows(ambient, &k_int)?;
    let quotient = sub.quotient()?.clone();
    let group = quotient.group().clone();
    let order = group
        .order()
        .ok_or_else(|| Error::Internal("full-rank quotient is infinite".into()))?;
    if BigInt::from(order) != det {
        return Err(Error::Internal(format!(
            "|Lambda| = {order} but |det K| = {det}"
        )));
    }

    let lifts: Vec<Vec<i64>> = (0..group.ngens())
        .map(|j| quotient.generator_lift(j).coords().to_vec())
        .collect();
    let pair = |y: &[i64], z: &[i64]| -> BigRational {
        let mut s = BigRational::zero();
        for (i, &yi) in y.iter().enumerate() {
            for (j, &zj) in z.iter().enumerate() {
                s += &k_inv[i][j] * rat(yi) * rat(zj);
            }
        }
        s
    };
    let m = lifts.len();
    let mut gram = vec![vec![Phase::ZERO; m]; m];
    for i in 0..m {
        gram[i][i] = phase_of_power(&pair(&lifts[i], &lifts[i]), 2)?;
        for j in i + 1..m {
            gram[i][j] = phase_of_power(&pair(&lifts[i], &lifts[j]), 1)?;
        }
    }
    let form = QuadraticForm::new(group, gram)?;
    Ok(DiscriminantGroup::Finite(Discriminant {
        form,
        dual_basis: c,
        quotient,
    }))
}

/// Radical of `b̄` trivial gives `Yes`; otherwise `No` with a radical element.
pub fn check_nondegenerate(disc: &Discriminant) -> Result<Verdict> {
    let rad = radical(disc.bicharacter())?;
    Ok(match rad.generators().iter().find(|g| !g.is_zero()) {
        None => Verdict::yes(text::NONDEGENERATE),
        Some(g) => Verdict::no(
            text::NONDEGENERATE,
            format!("class {g} lies in the radical"),
        ),
    })
}

pub fn full_report(cd: &CartanDatum, l: &Sublattice) -> Result<AnalysisReport> {
    let mut report = AnalysisReport {
        algebra_exists: Verdict::yes(basis::EXISTS_BICHARACTER),
        commutative: Verdict::yes(text::COMMUTATIVE),
        ribbon: Verdict::undecided(text::RIBBON, basis::DOWNSTREAM),
        finite_full: Verdict::no(text::FINITE_FULL, "Irr(C) is indexed by h*"),
        finite_local: Verdict::undecided(text::FINITE_LOCAL, basis::DOWNSTREAM),
        nondegenerate: Verdict::undecided(text::NONDEGENERATE, basis::DOWNSTREAM),
        simple_census: Census {
            classes: vec![],
            orbits: Count::Infinite,
            simples: Count::Infinite,
            complete: false,
        },
        local_census: Census::empty(),
        eta: None,
        metadata: Metadata::default(),
        notes: vec!["weights are given in coordinates lambda(H_i); rho(H_i) = 1".into()],
    };
    if let Some(w) = commutativity_witness(cd, l) {
        report.commutative = Verdict::no(text::COMMUTATIVE, w);
        return Ok(report);
    }
    report.ribbon = match ribbon_witness(cd, l) {
        None => Verdict::yes(text::RIBBON),
        Some(w) => Verdict::no(text::RIBBON, w),
    };
    match discriminant(cd, l)? {
        DiscriminantGroup::Infinite { missing_rank } => {
            report.finite_local = Verdict::no(
                text::FINITE_LOCAL,
                format!("rank(L') = {} < rank(P) = {}", l.rank(), cd.rank()),
            );
            report.local_census = Census {
                classes: vec![],
                orbits: Count::Infinite,
                simples: Count::Infinite,
                complete: false,
            };
            report.nondegenerate =
                Verdict::undecided(text::NONDEGENERATE, "Lambda(L') is infinite");
            report.notes.push(format!(
                "(l/2)(L')*/L' contains a rational vector space of dimension {missing_rank}"
            ));
        }
        DiscriminantGroup::Finite(disc) => {
            report.finite_local = Verdict::yes(text::FINITE_LOCAL);
            report.nondegenerate = if cd.muger_trivial {
                check_nondegenerate(&disc)?
            } else {
                Verdict::undecided(
                    text::NONDEGENERATE,
                    "the ambient category is not flagged as having trivial Muger center",
                )
            };
            let order = disc.order();
            let classes = if order <= LISTING_BOUND {
                disc.group()
                    .enumerate()?
                    .into_iter()
                    .map(|x| SimpleModuleClass {
                        orbit_rep: format!("M{}", disc.lift(&x)),
                        orbit_size: Count::Infinite,
                        stabilizer_order: 1,
                        stabilizer: vec![],
                        irrep_count: 1,
                        irrep_dim: 1,
                        local: true,
                        is_unit: x.is_zero(),
                    })
                    .collect()
            } else {
                vec![]
            };
            report.local_census = Census {
                complete: order <= LISTING_BOUND,
                classes,
                orbits: Count::Finite(order),
                simples: Count::Finite(order),
            };
            report.notes.push(format!("Lambda(L') = {}", disc.group()));
        }
    }
    Ok(report)
}
