use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finitely generated abelian group `ℤ^f ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with `d_i | d_{i+1}`.
///
/// Coordinates list the free generators first, then the torsion generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator_labels: Option<Vec<String>>,
}

/// Element of an [`FgAbGroup`] in its generator basis; torsion coordinates are
/// kept in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FgAbGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<i64>) -> Result<Self> {
        for (i, &d) in invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is below 2"
                )));
            }
            if i > 0 && d % invariant_factors[i - 1] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors {:?} do not form a divisibility chain",
                    invariant_factors
                )));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors,
            generator_labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} generators",
                labels.len(),
                self.ngens()
            )));
        }
        self.generator_labels = Some(labels);
        Ok(self)
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: vec![],
            generator_labels: None,
        }
    }

    /// `ℤ/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: i64) -> Result<Self> {
        match n {
            1 => Ok(Self::trivial()),
            n => Self::new(0, vec![n]),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: vec![],
            generator_labels: None,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn generator_labels(&self) -> Option<&[String]> {
        self.generator_labels.as_deref()
    }

    /// Number of coordinates.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Order of generator `i`, `None` for free generators.
    pub fn modulus(&self, i: usize) -> Option<i64> {
        if i < self.free_rank {
            None
        } else {
            Some(self.invariant_factors[i - self.free_rank])
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// `|G|`, or `None` if infinite.
    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// Exponent (lcm of invariant factors); `None` if infinite.
    pub fn exponent(&self) -> Option<i64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.last().copied().unwrap_or(1))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.ngens()],
        }
    }

    /// Generator `i` as an element.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.ngens()];
        coords[i] = 1;
        GroupElement { coords }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// Reduces arbitrary integer coordinates into canonical form.
    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has {} generators",
                coords.len(),
                self.ngens()
            )));
        }
        Ok(self.reduce(coords))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> GroupElement {
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(d) = self.modulus(i) {
                *c = c.mod_floor(&d);
            }
        }
        GroupElement { coords }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.len() == self.ngens()
            && x.coords
                .iter()
                .enumerate()
                .all(|(i, &c)| match self.modulus(i) {
                    Some(d) => (0..d).contains(&c),
                    None => true,
                })
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        debug_assert_eq!(x.len(), self.ngens());
        debug_assert_eq!(y.len(), self.ngens());
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a.checked_add(*b).expect("group coordinate overflow"))
            .collect();
        self.reduce(coords)
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.reduce(x.coords.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, n: i64, x: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| match self.modulus(i) {
                Some(d) => ((n as i128 * c as i128).rem_euclid(d as i128)) as i64,
                None => n.checked_mul(c).expect("group coordinate overflow"),
            })
            .collect();
        GroupElement { coords }
    }

    /// Integer combination `Σ c_i x_i`.
    pub fn combination(&self, coeffs: &[i64], xs: &[GroupElement]) -> GroupElement {
        coeffs.iter().zip(xs).fold(self.zero(), |acc, (&c, x)| {
            self.add(&acc, &self.scale(c, x))
        })
    }

    /// Additive order of `x`; `None` when `x` has infinite order.
    pub fn element_order(&self, x: &GroupElement) -> Option<i64> {
        let mut ord = 1i64;
        for (i, &c) in x.coords.iter().enumerate() {
            match self.modulus(i) {
                None if c != 0 => return None,
                None => {}
                Some(d) => ord = ord.lcm(&(d / d.gcd(&c))),
            }
        }
        Some(ord)
    }

    /// All elements in lexicographic coordinate order (first coordinate most significant).
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let order = self.order().ok_or(Error::InfiniteGroup)?;
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; self.ngens()];
        loop {
            out.push(GroupElement {
                coords: cur.clone(),
            });
            let mut i = self.ngens();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.invariant_factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// One representative of every isomorphism class of abelian groups of order `n`.
    pub fn all_of_order(n: u64) -> Vec<FgAbGroup> {
        fn rec(rem: u64, prev: u64, acc: &mut Vec<i64>, out: &mut Vec<FgAbGroup>) {
            if rem == 1 {
                out.push(FgAbGroup::new(0, acc.clone()).expect("valid chain"));
                return;
            }
            for d in 2..=rem {
                if rem.is_multiple_of(d) && d.is_multiple_of(prev) {
                    acc.push(d as i64);
                    rec(rem / d, d, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = vec![];
        if n >= 1 {
            rec(n, 1, &mut vec![], &mut out);
        }
        out
    }

    /// Position of `x` in [`FgAbGroup::enumerate`] order (finite groups only).
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert!(self.is_finite());
        let mut idx = 0usize;
        for (c, &d) in x.coords.iter().zip(&self.invariant_factors) {
            idx = idx * d as usize + *c as usize;
        }
        idx
    }

    /// Inverse of [`FgAbGroup::index_of`].
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        debug_assert!(self.is_finite());
        let mut coords = vec![0; self.ngens()];
        for i in (0..self.ngens()).rev() {
            let d = self.invariant_factors[i] as usize;
            coords[i] = (idx % d) as i64;
            idx /= d;
        }
        GroupElement { coords }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}
