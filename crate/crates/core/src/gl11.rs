//! Simple current algebras in weight modules of unrolled `U_q(gl(1|1))`
//! at `q = e^{2πi/r}`.
//!
//! Simples are the one-dimensional `ε(nr/2, b)_p` and the Kac modules
//! `V(α, a)_p` with `α ∉ (r/2)ℤ`. The invertibles are exactly the
//! one-dimensional simples and form `ℤ × ℤ × ℤ/2` under addition of
//! `(n, b, p)`. Commutative simple current algebras come from `Γ = L × {0}`
//! with `L ≤ ℤ²`.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::abgroup::{FgAbGroup, GroupElement, Index, SubgroupSpec};
use crate::engine::{basis, AnalysisReport, Census, Count, Metadata, SimpleModuleClass, Verdict};
use crate::forms::{phase_of_power, Phase};
use crate::{Error, Result};

/// Largest number of local classes listed individually.
pub const LISTING_BOUND: u128 = 4096;

mod text {
    pub const EXISTS: &str =
        "ord(g) q(g) = 0 on Z x Z x Z/2, since q = 1/2 only on elements of order 2 or infinite order";
    pub const FINITE_FULL: &str =
        "Kac simples carry a continuous alpha parameter modulo (r/2)pi_n(L)";
    pub const FINITE_LOCAL: &str = "finitely many local simples iff [Z^2 : L] is finite";
    pub const COMMUTATIVE: &str = "commutative iff Gamma = L x {0}, since q(n,b,p) = p/2";
    pub const RIBBON: &str = "ribbon iff n is even for every (n,b) in L, since theta(n,b,0) = n/2";
    pub const NONDEGENERATE: &str =
        "non-degenerate iff every local transparent simple lies in the orbit of the unit";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: i64) -> Self {
        if bit.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// The root of unity `q = e^{2πi/r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gl11Params {
    r: i64,
}

impl Gl11Params {
    pub fn new(r: i64) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidInput(format!(
                "r must be at least 3, got {r}"
            )));
        }
        Ok(Gl11Params { r })
    }

    pub fn r(self) -> i64 {
        self.r
    }

    /// `θ(ε(nr/2, b)_p) = q^{-2αb+α}` with `α = nr/2`, i.e. `n/2 mod 1`.
    /// The formula does not depend on the parity `p`.
    pub fn twist(self, g: OneDim) -> Phase {
        let alpha = g.alpha(self.r);
        let exponent = -(&alpha * BigInt::from(2 * g.b)) + &alpha;
        phase_of_power(&exponent, self.r).expect("denominator divides 2r")
    }

    /// `q(n, b, p) = p/2`.
    pub fn quadratic(self, g: OneDim) -> Phase {
        Phase::frac(g.parity.bit(), 2)
    }

    /// Double braiding of `s` with the invertible `g`: trivial between
    /// one-dimensional simples, `q^{-2αb}` on a Kac module.
    pub fn monodromy_scalar(self, s: &Gl11Simple, g: OneDim) -> Phase {
        match s {
            Gl11Simple::OneDim(_) => Phase::ZERO,
            Gl11Simple::Kac(v) => {
                let exponent = -(&v.alpha * BigInt::from(2 * g.b));
                phase_of_power(&exponent, self.r).expect("alpha has an i64 denominator")
            }
        }
    }

    /// `s ⊗ g`, translating parameters and adding parities.
    pub fn tensor_with_invertible(self, s: &Gl11Simple, g: OneDim) -> Gl11Simple {
        match s {
            Gl11Simple::OneDim(h) => Gl11Simple::OneDim(*h + g),
            Gl11Simple::Kac(v) => Gl11Simple::Kac(KacModule {
                alpha: &v.alpha + g.alpha(self.r),
                a: v.a + g.b,
                parity: v.parity + g.parity,
            }),
        }
    }
}

/// `ε(nr/2, b)_p`, stored as `(n, b, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OneDim {
    pub n: i64,
    pub b: i64,
    pub parity: Parity,
}

impl OneDim {
    pub fn new(n: i64, b: i64, parity: Parity) -> Self {
        OneDim { n, b, parity }
    }

    pub fn alpha(self, r: i64) -> BigRational {
        BigRational::new(BigInt::from(self.n * r), BigInt::from(2))
    }
}

impl Add for OneDim {
    type Output = OneDim;
    fn add(self, o: OneDim) -> OneDim {
        OneDim::new(self.n + o.n, self.b + o.b, self.parity + o.parity)
    }
}

impl fmt::Display for OneDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{})_{}", self.n, self.b, self.parity)
    }
}

/// `V(α, a)_p` with `α ∉ (r/2)ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KacModule {
    alpha: BigRational,
    a: i64,
    parity: Parity,
}

impl KacModule {
    pub fn new(params: Gl11Params, alpha: BigRational, a: i64, parity: Parity) -> Result<Self> {
        let half_r = BigRational::new(BigInt::from(params.r), BigInt::from(2));
        if (&alpha / &half_r).is_integer() {
            return Err(Error::InvalidInput(format!(
                "Kac parameter alpha = {alpha} lies in (r/2)Z for r = {}",
                params.r
            )));
        }
        if alpha.denom().to_i64().is_none() {
            return Err(Error::Overflow("Kac parameter denominator exceeds i64"));
        }
        Ok(KacModule { alpha, a, parity })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

impl fmt::Display for KacModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})_{}", self.alpha, self.a, self.parity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gl11Simple {
    OneDim(OneDim),
    Kac(KacModule),
}

impl Gl11Simple {
    pub fn is_invertible(&self) -> bool {
        matches!(self, Gl11Simple::OneDim(_))
    }
}

impl fmt::Display for Gl11Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gl11Simple::OneDim(g) => g.fmt(f),
            Gl11Simple::Kac(v) => v.fmt(f),
        }
    }
}

/// Membership in the ambient Müger center `{ε(nr/2, 0)_p}`.
pub fn muger_center_contains(s: &Gl11Simple) -> bool {
    matches!(s, Gl11Simple::OneDim(g) if g.b == 0)
}

/// `L ≤ ℤ²` given by generating rows `(n, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSubgroup {
    rows: Vec<[i64; 2]>,
}

impl LSubgroup {
    pub fn new(rows: Vec<[i64; 2]>) -> Self {
        LSubgroup { rows }
    }

    pub fn rows(&self) -> &[[i64; 2]] {
        &self.rows
    }

    /// Generators as elements of `Γ = L × {0}`.
    pub fn generators(&self) -> impl Iterator<Item = OneDim> + '_ {
        self.rows
            .iter()
            .map(|&[n, b]| OneDim::new(n, b, Parity::Even))
    }

    fn spec(&self) -> Result<SubgroupSpec> {
        SubgroupSpec::from_rows(
            FgAbGroup::free(2),
            &self.rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        )
    }

    /// Nonnegative generator `d` of `π_b(L) = dℤ`.
    pub fn b_generator(&self) -> i64 {
        self.rows.iter().fold(0i64, |g, r| g.gcd(&r[1]))
    }

    pub fn index(&self) -> Result<Index> {
        self.spec()?.index()
    }
}

/// `Γ = L × {0}` unless some generator has odd parity, where `q = 1/2`.
pub fn check_commutative(_l: &LSubgroup, parity_component: Parity) -> bool {
    parity_component == Parity::Even
}

/// `π_n(L) ⊆ 2ℤ`.
pub fn check_ribbon(l: &LSubgroup) -> bool {
    l.rows.iter().all(|r| r[0] % 2 == 0)
}

/// Whether Kac modules with parameter `α` are local for `L`: with
/// `π_b(L) = dℤ`, always when `d = 0`, otherwise iff `α ∈ (r/2d)ℤ`.
pub fn kac_locality(params: Gl11Params, l: &LSubgroup, alpha: &BigRational) -> bool {
    let d = l.b_generator();
    if d == 0 {
        return true;
    }
    (alpha * BigInt::from(2 * d) / BigInt::from(params.r)).is_integer()
}

/// Orbit counts of local simples for a finite-index `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCounts {
    pub one_dim: u128,
    pub kac: u128,
}

impl LocalCounts {
    pub fn total(&self) -> u128 {
        self.one_dim + self.kac
    }
}

/// Kac parameters written `α = rk/2d`: `Γ` acts on `(k, a)` by the lattice
/// `L'' = {(nd, b)}`, which sits inside `dℤ × ℤ` with the same index as `L`
/// in `ℤ²`. The local Kac orbits are the classes of `ℤ²/L''` off `dℤ × ℤ`.
fn kac_lattice(l: &LSubgroup, d: i64) -> LSubgroup {
    LSubgroup::new(l.rows.iter().map(|&[n, b]| [n * d, b]).collect())
}

/// `None` when `[ℤ² : L]` is infinite.
pub fn local_counts(l: &LSubgroup) -> Result<Option<LocalCounts>> {
    let Index::Finite(idx) = l.index()? else {
        return Ok(None);
    };
    let d = l.b_generator();
    let Index::Finite(kac_idx) = kac_lattice(l, d).index()? else {
        return Err(Error::Internal("kac lattice lost rank".into()));
    };
    Ok(Some(LocalCounts {
        one_dim: 2 * idx,
        kac: 2 * (kac_idx - idx),
    }))
}

fn class(label: String, unit: bool) -> SimpleModuleClass {
    SimpleModuleClass {
        orbit_rep: label,
        orbit_size: Count::Infinite,
        stabilizer_order: 1,
        stabilizer: Vec::<GroupElement>::new(),
        irrep_count: 1,
        irrep_dim: 1,
        local: true,
        is_unit: unit,
    }
}

/// Orbit representatives of local simples, one-dimensional first.
pub fn local_representatives(params: Gl11Params, l: &LSubgroup) -> Result<Option<Vec<Gl11Simple>>> {
    if l.index()? == Index::Infinite {
        return Ok(None);
    }
    let parities = [Parity::Even, Parity::Odd];
    let mut out = vec![];
    let q = l.spec()?.quotient()?.clone();
    for x in q.group().enumerate()? {
        let c = q.lift(&x).into_coords();
        for p in parities {
            out.push(Gl11Simple::OneDim(OneDim::new(c[0], c[1], p)));
        }
    }
    let d = l.b_generator();
    let kq = kac_lattice(l, d).spec()?.quotient()?.clone();
    for x in kq.group().enumerate()? {
        let c = kq.lift(&x).into_coords();
        if c[0] % d == 0 {
            continue;
        }
        let alpha = BigRational::new(BigInt::from(params.r * c[0]), BigInt::from(2 * d));
        for p in parities {
            out.push(Gl11Simple::Kac(KacModule::new(
                params,
                alpha.clone(),
                c[1],
                p,
            )?));
        }
    }
    Ok(Some(out))
}

/// Full analysis of `A_Γ` for `Γ = L × {0}`, or with an odd parity
/// component when `parity` is odd.
pub fn census_local(params: Gl11Params, l: &LSubgroup, parity: Parity) -> Result<AnalysisReport> {
    let mut report = AnalysisReport {
        algebra_exists: Verdict::yes(text::EXISTS),
        commutative: Verdict::yes(text::COMMUTATIVE),
        ribbon: Verdict::undecided(text::RIBBON, basis::DOWNSTREAM),
        finite_full: Verdict::no(
            text::FINITE_FULL,
            "V(alpha,0)_0 for alpha in a continuum of classes mod (r/2)Z",
        ),
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
        notes: vec![format!("r = {}; e(n,b)_p denotes eps(nr/2,b)_p", params.r)],
    };
    if !check_commutative(l, parity) {
        report.commutative = Verdict::no(
            text::COMMUTATIVE,
            "Gamma contains an element of odd parity, q = 1/2",
        );
        return Ok(report);
    }
    report.ribbon = match l.rows.iter().find(|r| r[0] % 2 != 0) {
        None => Verdict::yes(text::RIBBON),
        Some(&[n, b]) => Verdict::no(
            text::RIBBON,
            format!(
                "theta({}) = {}",
                OneDim::new(n, b, Parity::Even),
                params.twist(OneDim::new(n, b, Parity::Even))
            ),
        ),
    };
    // The odd fermion ε(0,0)_1 centralizes everything and Γ has no odd part.
    report.nondegenerate = Verdict::no(
        text::NONDEGENERATE,
        format!(
            "{} is local, transparent, and not in the orbit of the unit",
            OneDim::new(0, 0, Parity::Odd)
        ),
    );
    let Some(counts) = local_counts(l)? else {
        let direction = if l.b_generator() == 0 { "b" } else { "n" };
        report.finite_local = Verdict::no(
            text::FINITE_LOCAL,
            format!("[Z^2 : L] is infinite; L misses a direction along {direction}"),
        );
        report.local_census = Census {
            classes: vec![],
            orbits: Count::Infinite,
            simples: Count::Infinite,
            complete: false,
        };
        return Ok(report);
    };
    report.finite_local = Verdict::yes(text::FINITE_LOCAL);
    let total = counts.total();
    report.local_census = if total <= LISTING_BOUND {
        let reps = local_representatives(params, l)?.expect("finite index");
        let unit = Gl11Simple::OneDim(OneDim::default());
        let classes = reps.into_iter().map(|s| {
            let is_unit = s == unit;
            class(s.to_string(), is_unit)
        });
        Census::from_classes(classes.collect())
    } else {
        Census {
            classes: vec![],
            orbits: Count::Finite(total),
            simples: Count::Finite(total),
            complete: false,
        }
    };
    report.notes.push(format!(
        "local orbits: {} one-dimensional, {} Kac",
        counts.one_dim, counts.kac
    ));
    Ok(report)
}

/// Parses a rational Kac parameter such as `"3/4"`.
pub fn parse_alpha(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("alpha must be an exact rational, got {s:?}"));
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
