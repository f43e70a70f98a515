use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{smith_normal_form, FgAbGroup, GroupElement, IntMatrix, Snf};
use crate::{Error, Result};

/// Subgroup of an [`FgAbGroup`] given by generators.
///
/// Equality is equality of subgroups, not of generator lists.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    ambient: FgAbGroup,
    generators: Vec<GroupElement>,
    quotient: OnceLock<Quotient>,
}

impl PartialEq for SubgroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }
}

impl Eq for SubgroupSpec {}

/// Index of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(u128),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

/// Cokernel presentation `G / H` with a projection homomorphism and lifts of
/// the quotient generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    ambient: FgAbGroup,
    group: FgAbGroup,
    // proj[i][j]: image of ambient generator i in quotient coordinate j
    proj: Vec<Vec<i64>>,
    lifts: Vec<GroupElement>,
}

impl Quotient {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    /// The projection `G → G/H`.
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        let mut coords = vec![0i64; self.group.ngens()];
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, c) in coords.iter_mut().enumerate() {
                let p = self.proj[i][j];
                if p != 0 {
                    let term = (xi as i128) * (p as i128);
                    let v = match self.group.modulus(j) {
                        Some(d) => (*c as i128 + term).rem_euclid(d as i128),
                        None => *c as i128 + term,
                    };
                    *c = i64::try_from(v).expect("quotient coordinate overflow");
                }
            }
        }
        self.group
            .element(coords)
            .expect("projection has quotient dimension")
    }

    /// A lift of quotient generator `j` to the ambient group.
    pub fn generator_lift(&self, j: usize) -> &GroupElement {
        &self.lifts[j]
    }

    /// A lift of an arbitrary quotient element.
    pub fn lift(&self, q: &GroupElement) -> GroupElement {
        self.ambient.combination(q.coords(), &self.lifts)
    }
}

/// Abstract structure of a subgroup: an invariant-factor group `S` together
/// with an isomorphism onto the subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupStructure {
    group: FgAbGroup,
    images: Vec<GroupElement>,
    ambient: FgAbGroup,
    ngens: usize,
    snf: Snf,
    coords: Quotient,
}

impl SubgroupStructure {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// Images of the generators of `S` in the ambient group.
    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn embed(&self, s: &GroupElement) -> GroupElement {
        self.ambient.combination(s.coords(), &self.images)
    }

    /// Coordinates in `S` of an ambient element of the subgroup; `None` if
    /// `x` is not in the subgroup.
    pub fn pullback(&self, x: &GroupElement) -> Option<GroupElement> {
        let xb: Vec<BigInt> = x.coords().iter().map(|&c| BigInt::from(c)).collect();
        let y = self.snf.v.left_apply(&xb).ok()?;
        let mut w = vec![BigInt::zero(); self.snf.u.rows()];
        for (j, yj) in y.iter().enumerate() {
            if j < self.snf.rank {
                let d = self.snf.d.get(j, j);
                if !yj.is_multiple_of(d) {
                    return None;
                }
                w[j] = yj / d;
            } else if !yj.is_zero() {
                return None;
            }
        }
        let coeffs = self.snf.u.left_apply(&w).ok()?;
        let c: Vec<i64> = coeffs[..self.ngens]
            .iter()
            .map(|v| v.to_i64())
            .collect::<Option<_>>()?;
        let free = FgAbGroup::free(self.ngens);
        let s = self.coords.project(&free.element(c).ok()?);
        Some(s)
    }
}

fn relation_rows(g: &FgAbGroup) -> Vec<Vec<i64>> {
    let n = g.ngens();
    (g.free_rank()..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            row[i] = g.modulus(i).unwrap();
            row
        })
        .collect()
}

fn stacked(g: &FgAbGroup, gens: &[GroupElement]) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = gens.iter().map(|x| x.coords().to_vec()).collect();
    rows.extend(relation_rows(g));
    IntMatrix::from_i64_rows(g.ngens(), &rows).expect("rows have ambient width")
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or(Error::Overflow("lattice coefficient does not fit in i64"))
}

/// Quotient of `g` by the subgroup generated by `gens`.
fn quotient_by(g: &FgAbGroup, gens: &[GroupElement]) -> Result<Quotient> {
    let n = g.ngens();
    let m = stacked(g, gens);
    let snf = smith_normal_form(&m);
    let mut free_cols = vec![];
    let mut torsion_cols = vec![];
    for j in 0..n {
        if j >= snf.rank {
            free_cols.push(j);
        } else {
            let d = snf.d.get(j, j);
            if !d.is_one() {
                torsion_cols.push((j, to_i64(d)?));
            }
        }
    }
    let group = FgAbGroup::new(
        free_cols.len(),
        torsion_cols.iter().map(|&(_, d)| d).collect(),
    )?;
    let cols: Vec<usize> = free_cols
        .iter()
        .copied()
        .chain(torsion_cols.iter().map(|&(j, _)| j))
        .collect();
    let mut proj = vec![vec![0i64; cols.len()]; n];
    for (i, row) in proj.iter_mut().enumerate() {
        for (q, &j) in cols.iter().enumerate() {
            let e = snf.v.get(i, j);
            let e = match group.modulus(q) {
                Some(d) => e.mod_floor(&BigInt::from(d)),
                None => e.clone(),
            };
            row[q] = to_i64(&e)?;
        }
    }
    let mut lifts = Vec::with_capacity(cols.len());
    for &j in &cols {
        let coords: Vec<i64> = snf.v_inv.row(j).iter().map(to_i64).collect::<Result<_>>()?;
        lifts.push(g.element(coords)?);
    }
    Ok(Quotient {
        ambient: g.clone(),
        group,
        proj,
        lifts,
    })
}

impl SubgroupSpec {
    pub fn new(ambient: FgAbGroup, generators: Vec<GroupElement>) -> Result<Self> {
        for (i, x) in generators.iter().enumerate() {
            if !ambient.contains(x) {
                return Err(Error::InvalidGroup(format!(
                    "generator {i} = {x} is not a canonical element of {ambient}"
                )));
            }
        }
        Ok(SubgroupSpec {
            ambient,
            generators,
            quotient: OnceLock::new(),
        })
    }

    /// Generators given as raw integer rows (reduced into the ambient group).
    pub fn from_rows(ambient: FgAbGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|r| ambient.element(r.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, gens)
    }

    pub fn trivial(ambient: FgAbGroup) -> Self {
        SubgroupSpec {
            ambient,
            generators: vec![],
            quotient: OnceLock::new(),
        }
    }

    pub fn whole(ambient: FgAbGroup) -> Self {
        let gens = ambient.generators();
        SubgroupSpec {
            ambient,
            generators: gens,
            quotient: OnceLock::new(),
        }
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Generators as the rows of an integer matrix.
    pub fn generator_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|x| x.coords().to_vec())
            .collect();
        IntMatrix::from_i64_rows(self.ambient.ngens(), &rows).expect("rows have ambient width")
    }

    /// The cokernel `ambient / self`.
    pub fn quotient(&self) -> Result<&Quotient> {
        if let Some(q) = self.quotient.get() {
            return Ok(q);
        }
        let q = quotient_by(&self.ambient, &self.generators)?;
        Ok(self.quotient.get_or_init(|| q))
    }

    pub fn index(&self) -> Result<Index> {
        let q = self.quotient()?;
        Ok(match q.group().order() {
            Some(n) => Index::Finite(n),
            None => Index::Infinite,
        })
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match self.quotient() {
            Ok(q) => q.project(x).is_zero(),
            Err(_) => false,
        }
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSpec) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(GroupElement::is_zero)
    }

    /// Abstract invariant-factor structure of the subgroup.
    pub fn structure(&self) -> Result<SubgroupStructure> {
        let g = &self.ambient;
        let m = self.generators.len();
        let mat = stacked(g, &self.generators);
        let snf = smith_normal_form(&mat);
        let free = FgAbGroup::free(m);
        let mut kernel = vec![];
        for i in snf.rank..mat.rows() {
            let coords: Vec<i64> = snf.u.row(i)[..m]
                .iter()
                .map(to_i64)
                .collect::<Result<_>>()?;
            kernel.push(free.element(coords)?);
        }
        let coords = quotient_by(&free, &kernel)?;
        let group = coords.group().clone();
        let images = (0..group.ngens())
            .map(|j| g.combination(coords.generator_lift(j).coords(), &self.generators))
            .collect();
        Ok(SubgroupStructure {
            group,
            images,
            ambient: g.clone(),
            ngens: m,
            snf,
            coords,
        })
    }

    /// All elements of the subgroup, sorted (ambient must be finite).
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if !self.ambient.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let g = &self.ambient;
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(g.zero());
        queue.push_back(g.zero());
        while let Some(x) = queue.pop_front() {
            for h in &self.generators {
                let y = g.add(&x, h);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Subgroup of a finite group generated by `elements`, with a greedy
    /// generating set taken in the given order.
    pub fn from_elements(ambient: FgAbGroup, elements: &[GroupElement]) -> Result<Self> {
        if !ambient.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let order = ambient.order().unwrap() as usize;
        let mut member = vec![false; order];
        member[ambient.index_of(&ambient.zero())] = true;
        let mut span = vec![ambient.zero()];
        let mut gens = vec![];
        for x in elements {
            if member[ambient.index_of(x)] {
                continue;
            }
            gens.push(x.clone());
            // close span under adding multiples of x
            let mut new_span = span.clone();
            let mut k = x.clone();
            while !member[ambient.index_of(&k)] {
                for h in &span {
                    let y = ambient.add(h, &k);
                    let idx = ambient.index_of(&y);
                    if !member[idx] {
                        member[idx] = true;
                        new_span.push(y);
                    }
                }
                k = ambient.add(&k, x);
            }
            span = new_span;
        }
        Self::new(ambient, gens)
    }
}

/// Quotient `G/H` (the `H.ambient` must be `G`).
pub fn quotient(g: &FgAbGroup, h: &SubgroupSpec) -> Result<Quotient> {
    if h.ambient() != g {
        return Err(Error::DimensionMismatch(
            "subgroup of a different group".into(),
        ));
    }
    Ok(h.quotient()?.clone())
}

/// `[G : H]`.
pub fn subgroup_index(g: &FgAbGroup, h: &SubgroupSpec) -> Result<Index> {
    if h.ambient() != g {
        return Err(Error::DimensionMismatch(
            "subgroup of a different group".into(),
        ));
    }
    h.index()
}

/// Every subgroup of a finite group, in breadth-first order from the trivial
/// subgroup. Each subgroup is returned once.
pub fn all_subgroups(g: &FgAbGroup) -> Result<Vec<SubgroupSpec>> {
    let elements = g.enumerate()?;
    let n = elements.len();
    let words = n.div_ceil(64);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out: Vec<(Vec<u64>, Vec<GroupElement>, Vec<usize>)> = vec![];
    let mut trivial = vec![0u64; words];
    trivial[0] |= 1;
    seen.insert(trivial.clone());
    out.push((trivial, vec![], vec![0]));
    let mut cursor = 0;
    while cursor < out.len() {
        let (bits, gens, members) = out[cursor].clone();
        cursor += 1;
        for (xi, x) in elements.iter().enumerate() {
            if bits[xi / 64] >> (xi % 64) & 1 == 1 {
                continue;
            }
            let mut nb = bits.clone();
            let mut nm = members.clone();
            let mut k = x.clone();
            loop {
                let ki = g.index_of(&k);
                if nb[ki / 64] >> (ki % 64) & 1 == 1 {
                    break;
                }
                for &h in &members {
                    let y = g.add(&elements[h], &k);
                    let yi = g.index_of(&y);
                    if nb[yi / 64] >> (yi % 64) & 1 == 0 {
                        nb[yi / 64] |= 1 << (yi % 64);
                        nm.push(yi);
                    }
                }
                k = g.add(&k, x);
            }
            if seen.insert(nb.clone()) {
                let mut ng = gens.clone();
                ng.push(x.clone());
                out.push((nb, ng, nm));
            }
        }
    }
    out.into_iter()
        .map(|(_, gens, _)| SubgroupSpec::new(g.clone(), gens))
        .collect()
}
