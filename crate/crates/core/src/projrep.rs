//! Twisted group algebras `k^ξ[S]` of finite abelian groups and their
//! irreducible projective representations.
//!
//! A representation satisfies `ρ(s) ρ(t) = ξ(s, t) ρ(s + t)`. Irreducibles
//! are classified by characters of the radical `R` of the commutator pairing
//! `c(s, t) = ξ(s, t) − ξ(t, s)`; each has dimension `√[S : R]` and is built
//! by inducing a one-dimensional representation from a Lagrangian subgroup.

use serde::Serialize;

use crate::abgroup::{FgAbGroup, GroupElement, SubgroupSpec};
use crate::cohomology::{is_cocycle, solve_qz, solve_symmetric_coboundary, Cochain, Equation};
use crate::forms::{radical, Bicharacter, Phase};
use crate::{Error, Result};

/// Default bound on `|S|` for explicit construction.
pub const DEFAULT_IRREP_BOUND: u128 = 256;

/// `(S, ξ)` with `ξ` a normalized 2-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlgebraSpec {
    xi: Cochain,
}

impl TwistedAlgebraSpec {
    pub fn new(xi: Cochain) -> Result<Self> {
        if xi.arity() != 2 {
            return Err(Error::InvalidInput("multiplier must be a 2-cochain".into()));
        }
        if !xi.is_normalized() {
            return Err(Error::InvalidInput("multiplier is not normalized".into()));
        }
        if !is_cocycle(&xi)? {
            return Err(Error::InvalidInput("multiplier is not a 2-cocycle".into()));
        }
        Ok(TwistedAlgebraSpec { xi })
    }

    /// The untwisted group algebra.
    pub fn untwisted(group: FgAbGroup) -> Result<Self> {
        Ok(TwistedAlgebraSpec {
            xi: Cochain::zero(group, 2)?,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        self.xi.group()
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.xi
    }

    /// The opposite algebra, with multiplier `ξᵒᵖ(s, t) = ξ(t, s)`.
    pub fn opposite(&self) -> Self {
        TwistedAlgebraSpec {
            xi: self.xi.transpose().expect("2-cochain"),
        }
    }
}

/// Number and common dimension of the irreducible representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepCensus {
    pub count: u64,
    pub dimension: u64,
    #[serde(skip)]
    pub radical: SubgroupSpec,
}

/// `c(s, t) = ξ(s, t) − ξ(t, s)`, an alternating bicharacter.
pub fn commutator_pairing(spec: &TwistedAlgebraSpec) -> Result<Bicharacter> {
    let g = spec.group();
    let gens = g.generators();
    let xi = &spec.xi;
    let gram = gens
        .iter()
        .map(|a| {
            gens.iter()
                .map(|b| xi.get(&[a.clone(), b.clone()]) - xi.get(&[b.clone(), a.clone()]))
                .collect()
        })
        .collect();
    let c = Bicharacter::new(g.clone(), gram)
        .map_err(|e| Error::Internal(format!("commutator pairing not bilinear: {e}")))?;
    let elements = g.enumerate()?;
    for s in &elements {
        for t in &elements {
            let v = xi.get(&[s.clone(), t.clone()]) - xi.get(&[t.clone(), s.clone()]);
            if v != c.eval(s, t) {
                return Err(Error::Internal(format!(
                    "commutator pairing not bilinear at ({s}, {t})"
                )));
            }
        }
    }
    Ok(c)
}

fn isqrt(n: u128) -> Option<u128> {
    // Newton iteration from above
    if n < 2 {
        return Some(n);
    }
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    (x * x == n).then_some(x)
}

pub fn irrep_census(spec: &TwistedAlgebraSpec) -> Result<IrrepCensus> {
    let c = commutator_pairing(spec)?;
    let rad = radical(&c)?;
    let order = spec.group().order().ok_or(Error::InfiniteGroup)?;
    let r = rad.elements()?.len() as u128;
    let index = order / r;
    let dim = isqrt(index)
        .ok_or_else(|| Error::Internal(format!("index {index} of the radical is not a square")))?;
    Ok(IrrepCensus {
        count: r as u64,
        dimension: dim as u64,
        radical: rad,
    })
}

/// Monomial matrix: column `j` has the single entry `e^{2πi phases[j]}` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub phases: Vec<Phase>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            phases: vec![Phase::ZERO; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let phases = other
            .perm
            .iter()
            .zip(&other.phases)
            .map(|(&k, &p)| p + self.phases[k])
            .collect();
        MonomialMatrix { perm, phases }
    }

    pub fn scaled(&self, c: Phase) -> MonomialMatrix {
        MonomialMatrix {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|&p| p + c).collect(),
        }
    }
}

/// Irreducible projective representation by monomial matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIrrep {
    pub dim: usize,
    /// `ρ(s)` for `s` in [`FgAbGroup::enumerate`] order.
    pub matrices: Vec<MonomialMatrix>,
    /// Values of the labelling character on the radical's structure generators.
    pub character: Vec<Phase>,
}

impl MonomialIrrep {
    /// Exhaustive check of `ρ(0) = 1` and `ρ(s) ρ(t) = ξ(s, t) ρ(s + t)`.
    pub fn verify(&self, spec: &TwistedAlgebraSpec) -> bool {
        let g = spec.group();
        let Ok(elements) = g.enumerate() else {
            return false;
        };
        if self.matrices.len() != elements.len()
            || self.matrices[0] != MonomialMatrix::identity(self.dim)
        {
            return false;
        }
        for (i, s) in elements.iter().enumerate() {
            for (j, t) in elements.iter().enumerate() {
                let k = g.index_of(&g.add(s, t));
                let lhs = self.matrices[i].mul(&self.matrices[j]);
                let rhs = self.matrices[k].scaled(spec.xi.get(&[s.clone(), t.clone()]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Greedy maximal isotropic subgroup containing `rad`, trying the group
/// generators first and then all elements in order.
fn lagrangian(c: &Bicharacter, rad: &SubgroupSpec) -> Result<SubgroupSpec> {
    let g = c.group();
    let mut gens: Vec<GroupElement> = rad.generators().to_vec();
    let mut members = SubgroupSpec::new(g.clone(), gens.clone())?.elements()?;
    let candidates = g.generators().into_iter().chain(g.enumerate()?);
    for s in candidates {
        if members.binary_search(&s).is_ok() {
            continue;
        }
        if members.iter().all(|l| c.eval(&s, l).is_zero()) {
            gens.push(s);
            members = SubgroupSpec::new(g.clone(), gens.clone())?.elements()?;
        }
    }
    SubgroupSpec::new(g.clone(), gens)
}

/// All irreducible representations, one per character of the radical, in
/// the radical's element order (the trivial character first).
pub fn construct_irreps(spec: &TwistedAlgebraSpec) -> Result<Vec<MonomialIrrep>> {
    construct_irreps_bounded(spec, DEFAULT_IRREP_BOUND)
}

pub fn construct_irreps_bounded(
    spec: &TwistedAlgebraSpec,
    bound: u128,
) -> Result<Vec<MonomialIrrep>> {
    let g = spec.group().clone();
    let order = g.order().ok_or(Error::InfiniteGroup)?;
    if order > bound {
        return Err(Error::BoundExceeded {
            what: "twisted group algebra order",
            size: order,
            bound,
        });
    }
    let census = irrep_census(spec)?;
    let c = commutator_pairing(spec)?;
    let lag = lagrangian(&c, &census.radical)?;
    let lag_s = lag.structure()?;
    let lag_group = lag_s.group().clone();
    let lag_order = lag.elements()?.len() as u128;
    if lag_order * lag_order != order * census.count as u128 {
        return Err(Error::Internal(
            "isotropic subgroup is not Lagrangian".into(),
        ));
    }

    // χ₀ on L with ∂₂χ₀ = ξ|_L
    let xi_l = Cochain::from_fn(lag_group.clone(), 2, |a| {
        spec.xi.get(&[lag_s.embed(&a[0]), lag_s.embed(&a[1])])
    })?;
    let chi0 = solve_symmetric_coboundary(&xi_l)?;

    // transversal of S/L
    let quot = lag.quotient()?;
    let transversal: Vec<GroupElement> = quot
        .group()
        .enumerate()?
        .iter()
        .map(|q| quot.lift(q))
        .collect();
    let dim = transversal.len();
    debug_assert_eq!(dim as u64, census.dimension);
    let elements = g.enumerate()?;
    // decomposition x = t_k + l for every x in S
    let decomp: Vec<(usize, GroupElement)> = elements
        .iter()
        .map(|x| {
            let k = quot.group().index_of(&quot.project(x));
            let l = g.sub(x, &transversal[k]);
            let la = lag_s.pullback(&l).expect("difference lies in L");
            (k, la)
        })
        .collect();

    // characters of the radical and their extensions to L
    let rad_s = census.radical.structure()?;
    let rad_in_l: Vec<GroupElement> = rad_s
        .images()
        .iter()
        .map(|r| lag_s.pullback(r).expect("radical lies in L"))
        .collect();
    let mut irreps = Vec::with_capacity(census.count as usize);
    for k in rad_s.group().enumerate()? {
        let psi: Vec<Phase> = k
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &ki)| Phase::frac(ki, rad_s.group().modulus(i).expect("finite")))
            .collect();
        let ext = extend_character(&lag_group, &rad_in_l, &psi)?;
        let chi = |l: &GroupElement| -> Phase {
            chi0.get(std::slice::from_ref(l))
                + l.coords()
                    .iter()
                    .zip(&ext)
                    .map(|(&c, p)| p.scale(c))
                    .sum::<Phase>()
        };
        let mut matrices = Vec::with_capacity(elements.len());
        for s in &elements {
            let mut perm = vec![0; dim];
            let mut phases = vec![Phase::ZERO; dim];
            for (j, t) in transversal.iter().enumerate() {
                let st = g.add(s, t);
                let (kk, l) = &decomp[g.index_of(&st)];
                perm[j] = *kk;
                phases[j] = spec.xi.get(&[s.clone(), t.clone()])
                    - spec.xi.get(&[transversal[*kk].clone(), lag_s.embed(l)])
                    + chi(l);
            }
            matrices.push(MonomialMatrix { perm, phases });
        }
        let irrep = MonomialIrrep {
            dim,
            matrices,
            character: psi,
        };
        if !irrep.verify(spec) {
            return Err(Error::Internal(
                "constructed representation fails its relations".into(),
            ));
        }
        irreps.push(irrep);
    }
    Ok(irreps)
}

/// A homomorphism on `l_group` taking the values `psi` on the elements `rad`.
fn extend_character(
    l_group: &FgAbGroup,
    rad: &[GroupElement],
    psi: &[Phase],
) -> Result<Vec<Phase>> {
    let n = l_group.ngens();
    let mut eqs = vec![];
    for i in 0..n {
        let d = l_group.modulus(i).expect("finite group");
        eqs.push(Equation {
            terms: vec![(i, d)],
            rhs: Phase::ZERO,
        });
    }
    for (r, &v) in rad.iter().zip(psi) {
        eqs.push(Equation {
            terms: r
                .coords()
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect(),
            rhs: v,
        });
    }
    solve_qz(n, &eqs)?.ok_or_else(|| Error::Internal("character does not extend".into()))
}
