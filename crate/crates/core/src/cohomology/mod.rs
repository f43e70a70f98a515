//! Normalized cochains on finite abelian groups with values in ℚ/ℤ.
//!
//! Additive conventions throughout:
//!
//! * `(∂₂f)(x, y) = f(x) − f(x+y) + f(y)`
//! * `(∂₃g)(x, y, z) = g(x, y) − g(x, y+z) + g(x+y, z) − g(y, z)`

mod linear;
mod solve;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abgroup::{FgAbGroup, GroupElement};
use crate::forms::Phase;
use crate::{Error, Result};

pub use linear::{solve_dense, solve_qz, Equation};
pub use solve::{construct_eta, solve_d3, solve_symmetric_coboundary};

/// Largest table a cochain may allocate.
pub const MAX_TABLE: u128 = 1 << 24;

/// Dense normalized `n`-cochain on a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    group: FgAbGroup,
    arity: usize,
    order: usize,
    table: Vec<Phase>,
}

impl Cochain {
    pub fn zero(group: FgAbGroup, arity: usize) -> Result<Self> {
        let order = group.order().ok_or(Error::InfiniteGroup)?;
        let size = (order).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if size > MAX_TABLE {
            return Err(Error::BoundExceeded {
                what: "cochain table size",
                size,
                bound: MAX_TABLE,
            });
        }
        Ok(Cochain {
            group,
            arity,
            order: order as usize,
            table: vec![Phase::ZERO; size as usize],
        })
    }

    /// Tabulates `f`; fails if `f` is not normalized.
    pub fn from_fn<F>(group: FgAbGroup, arity: usize, f: F) -> Result<Self>
    where
        F: Fn(&[GroupElement]) -> Phase,
    {
        let mut c = Cochain::zero(group, arity)?;
        let elements = c.group.enumerate()?;
        let mut idx = vec![0usize; arity];
        let mut args: Vec<GroupElement> = vec![c.group.zero(); arity];
        for flat in 0..c.table.len() {
            c.unflatten(flat, &mut idx);
            for (a, &i) in args.iter_mut().zip(&idx) {
                *a = elements[i].clone();
            }
            let v = f(&args);
            if idx.contains(&0) && !v.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "cochain is not normalized: value {v} at {}",
                    fmt_args(&args)
                )));
            }
            c.table[flat] = v;
        }
        Ok(c)
    }

    /// Builds a cochain from explicit entries; unspecified entries are zero.
    pub fn from_entries(
        group: FgAbGroup,
        arity: usize,
        entries: &[(Vec<GroupElement>, Phase)],
    ) -> Result<Self> {
        let mut c = Cochain::zero(group, arity)?;
        for (args, v) in entries {
            if args.len() != arity || args.iter().any(|a| !c.group.contains(a)) {
                return Err(Error::InvalidInput(format!(
                    "bad cochain argument {}",
                    fmt_args(args)
                )));
            }
            if args.iter().any(GroupElement::is_zero) && !v.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "cochain is not normalized: value {v} at {}",
                    fmt_args(args)
                )));
            }
            let flat = c.flat_of(args);
            c.table[flat] = *v;
        }
        Ok(c)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn flat_of(&self, args: &[GroupElement]) -> usize {
        args.iter()
            .fold(0, |acc, a| acc * self.order + self.group.index_of(a))
    }

    fn flat_of_idx(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.order + i)
    }

    fn unflatten(&self, mut flat: usize, idx: &mut [usize]) {
        for k in (0..self.arity).rev() {
            idx[k] = flat % self.order;
            flat /= self.order;
        }
    }

    pub fn get(&self, args: &[GroupElement]) -> Phase {
        assert_eq!(args.len(), self.arity, "cochain arity");
        self.table[self.flat_of(args)]
    }

    /// Value at element indices (positions in [`FgAbGroup::enumerate`] order).
    pub fn get_idx(&self, idx: &[usize]) -> Phase {
        self.table[self.flat_of_idx(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|p| p.is_zero())
    }

    pub fn is_normalized(&self) -> bool {
        let mut idx = vec![0; self.arity];
        (0..self.table.len()).all(|flat| {
            self.unflatten(flat, &mut idx);
            !idx.contains(&0) || self.table[flat].is_zero()
        })
    }

    /// Entries as `(arguments, value)` pairs, nonzero values only.
    pub fn entries(&self) -> Vec<(Vec<GroupElement>, Phase)> {
        let elements = self.group.enumerate().expect("finite group");
        let mut idx = vec![0; self.arity];
        let mut out = vec![];
        for (flat, v) in self.table.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            self.unflatten(flat, &mut idx);
            out.push((idx.iter().map(|&i| elements[i].clone()).collect(), *v));
        }
        out
    }

    /// `(x, y) ↦ c(y, x)` for a 2-cochain.
    pub fn transpose(&self) -> Result<Self> {
        self.require_arity(2)?;
        let mut t = self.clone();
        for i in 0..self.order {
            for j in 0..self.order {
                t.table[i * self.order + j] = self.table[j * self.order + i];
            }
        }
        Ok(t)
    }

    /// Pointwise sum of cochains of equal shape.
    pub fn add(&self, other: &Cochain) -> Result<Self> {
        if self.group != other.group || self.arity != other.arity {
            return Err(Error::DimensionMismatch(
                "cochains of different shapes".into(),
            ));
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Cochain {
            table,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        Cochain {
            table: self.table.iter().map(|&a| -a).collect(),
            ..self.clone()
        }
    }

    fn require_arity(&self, n: usize) -> Result<()> {
        if self.arity != n {
            return Err(Error::DimensionMismatch(format!(
                "expected a {n}-cochain, got arity {}",
                self.arity
            )));
        }
        Ok(())
    }

    // index of g_i + g_j
    fn sum_table(&self) -> Vec<usize> {
        let els = self.group.enumerate().expect("finite group");
        let n = self.order;
        let mut t = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.group.index_of(&self.group.add(&els[i], &els[j]));
            }
        }
        t
    }
}

fn fmt_args(args: &[GroupElement]) -> String {
    let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cochain", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("arity", &self.arity)?;
        st.serialize_field("entries", &self.entries())?;
        st.end()
    }
}

/// Addition table helper shared by the coboundary maps.
struct Sums {
    n: usize,
    t: Vec<usize>,
}

impl Sums {
    fn new(c: &Cochain) -> Self {
        Sums {
            n: c.order,
            t: c.sum_table(),
        }
    }
    fn add(&self, i: usize, j: usize) -> usize {
        self.t[i * self.n + j]
    }
}

/// `(∂₂f)(x, y) = f(x) − f(x+y) + f(y)`.
pub fn coboundary_d2(f: &Cochain) -> Result<Cochain> {
    f.require_arity(1)?;
    let s = Sums::new(f);
    let mut out = Cochain::zero(f.group.clone(), 2)?;
    let n = f.order;
    for x in 0..n {
        for y in 0..n {
            out.table[x * n + y] = f.table[x] - f.table[s.add(x, y)] + f.table[y];
        }
    }
    Ok(out)
}

/// `(∂₃g)(x, y, z) = g(x, y) − g(x, y+z) + g(x+y, z) − g(y, z)`.
pub fn coboundary_d3(g: &Cochain) -> Result<Cochain> {
    g.require_arity(2)?;
    let s = Sums::new(g);
    let mut out = Cochain::zero(g.group.clone(), 3)?;
    let n = g.order;
    let at = |a: usize, b: usize| g.table[a * n + b];
    for x in 0..n {
        for y in 0..n {
            let xy = s.add(x, y);
            for z in 0..n {
                out.table[(x * n + y) * n + z] =
                    at(x, y) - at(x, s.add(y, z)) + at(xy, z) - at(y, z);
            }
        }
    }
    Ok(out)
}

/// `(∂₄w)(a, x, y, z) = w(x, y, z) − w(a+x, y, z) + w(a, x+y, z) − w(a, x, y+z) + w(a, x, y)`.
pub fn coboundary_d4(w: &Cochain) -> Result<Cochain> {
    w.require_arity(3)?;
    let s = Sums::new(w);
    let mut out = Cochain::zero(w.group.clone(), 4)?;
    let n = w.order;
    let at = |a: usize, b: usize, c: usize| w.table[(a * n + b) * n + c];
    for a in 0..n {
        for x in 0..n {
            let ax = s.add(a, x);
            for y in 0..n {
                let xy = s.add(x, y);
                for z in 0..n {
                    let yz = s.add(y, z);
                    out.table[((a * n + x) * n + y) * n + z] =
                        at(x, y, z) - at(ax, y, z) + at(a, xy, z) - at(a, x, yz) + at(a, x, y);
                }
            }
        }
    }
    Ok(out)
}

/// Exhaustive cocycle check for cochains of arity 1, 2 or 3.
pub fn is_cocycle(c: &Cochain) -> Result<bool> {
    let d = match c.arity {
        1 => coboundary_d2(c)?,
        2 => coboundary_d3(c)?,
        3 => coboundary_d4(c)?,
        n => {
            return Err(Error::InvalidInput(format!(
                "cocycle check for arity {n} is not supported"
            )))
        }
    };
    Ok(d.is_zero())
}

/// Symmetry `c(x, y) = c(y, x)` of a 2-cochain.
pub fn is_symmetric(c: &Cochain) -> Result<bool> {
    Ok(&c.transpose()? == c)
}
