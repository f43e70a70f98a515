use std::collections::{BTreeMap, VecDeque};

use crate::abgroup::{FgAbGroup, GroupElement, SubgroupSpec};
use crate::cohomology::{Cochain, MAX_TABLE};
use crate::forms::{Bicharacter, Phase};
use crate::{Error, Result};

/// Double braiding between pairs of simple labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairwiseMonodromy {
    /// `table[x][y]`; zero means the double braiding is trivial.
    Table(Vec<Vec<Phase>>),
    /// Labels sit at `points` in a group carrying the monodromy bicharacter.
    Form {
        form: Bicharacter,
        points: Vec<GroupElement>,
    },
}

impl PairwiseMonodromy {
    fn get(&self, x: usize, y: usize) -> Phase {
        match self {
            PairwiseMonodromy::Table(t) => t[x][y],
            PairwiseMonodromy::Form { form, points } => form.eval(&points[x], &points[y]),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            PairwiseMonodromy::Table(t) => {
                if t.len() != n || t.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch(format!(
                        "pairwise monodromy table must be {n} x {n}"
                    )));
                }
            }
            PairwiseMonodromy::Form { form, points } => {
                if points.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "expected {n} points for the pairwise monodromy, got {}",
                        points.len()
                    )));
                }
                if let Some(p) = points.iter().find(|p| !form.group().contains(p)) {
                    return Err(Error::InvalidSpectrum(format!(
                        "point {p} is not an element of {}",
                        form.group()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Finite description of the simple objects of a category together with the
/// action of a finite group `Γ` of simple currents.
///
/// `action[i]` is the permutation `X ↦ E_{γ_i} ⊗ X` for the `i`-th
/// generator of `Γ`, and `monodromy[i][x]` is the scalar double braiding of
/// `E_{γ_i}` with label `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    labels: Vec<String>,
    gamma: FgAbGroup,
    action: Vec<Vec<usize>>,
    monodromy: Vec<Vec<Phase>>,
    unit: usize,
    twist: Option<Vec<Phase>>,
    pairwise: Option<PairwiseMonodromy>,
    cocycles: BTreeMap<usize, Cochain>,
}

impl SpectrumTable {
    pub fn new(
        labels: Vec<String>,
        gamma: FgAbGroup,
        action: Vec<Vec<usize>>,
        monodromy: Vec<Vec<Phase>>,
        unit: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let order = gamma.order().ok_or(Error::InfiniteGroup)?;
        if order.saturating_mul(n as u128) > MAX_TABLE {
            return Err(Error::BoundExceeded {
                what: "|Gamma| x number of labels",
                size: order.saturating_mul(n as u128),
                bound: MAX_TABLE,
            });
        }
        if unit >= n {
            return Err(Error::InvalidSpectrum(format!(
                "unit index {unit} out of range"
            )));
        }
        let k = gamma.ngens();
        if action.len() != k || monodromy.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "Gamma has {k} generators but {} permutations and {} monodromy rows were given",
                action.len(),
                monodromy.len()
            )));
        }
        for (i, perm) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if perm.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "permutation {i} has wrong length"
                )));
            }
            for &p in perm {
                if p >= n || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidSpectrum(format!(
                        "action of generator {i} is not a permutation"
                    )));
                }
            }
            if monodromy[i].len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "monodromy row {i} has wrong length"
                )));
            }
        }
        let table = SpectrumTable {
            labels,
            gamma,
            action,
            monodromy,
            unit,
            twist: None,
            pairwise: None,
            cocycles: BTreeMap::new(),
        };
        table.check_action()?;
        Ok(table)
    }

    fn check_action(&self) -> Result<()> {
        let n = self.labels.len();
        let k = self.gamma.ngens();
        for i in 0..k {
            for j in 0..i {
                for x in 0..n {
                    if self.action[i][self.action[j][x]] != self.action[j][self.action[i][x]] {
                        return Err(Error::InvalidSpectrum(format!(
                            "actions of generators {j} and {i} do not commute"
                        )));
                    }
                }
            }
            let d = self.gamma.modulus(i).expect("finite Gamma");
            for x in 0..n {
                if self.power(i, d, x) != x {
                    return Err(Error::InvalidSpectrum(format!(
                        "generator {i} acts with order not dividing {d}"
                    )));
                }
                if !self.monodromy[i][x].scale(d).is_zero() {
                    return Err(Error::InvalidSpectrum(format!(
                        "monodromy of generator {i} with {} has order not dividing {d}",
                        self.labels[x]
                    )));
                }
            }
        }
        let gens = self.gamma.generators();
        let e_gen: Vec<usize> = (0..k).map(|i| self.action[i][self.unit]).collect();
        for x in 0..n {
            for i in 0..k {
                // M(γ_i, γ_j·X) = M(γ_i, X) + M(γ_i, E_{γ_j})
                for (j, g) in gens.iter().enumerate() {
                    let y = self.act(g, x);
                    let expect = self.monodromy[i][x] + self.monodromy[i][e_gen[j]];
                    if self.monodromy[i][y] != expect {
                        return Err(Error::InvalidSpectrum(format!(
                            "monodromy of generator {i} is not additive along the orbit of {}",
                            self.labels[x]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn power(&self, gen: usize, times: i64, mut x: usize) -> usize {
        for _ in 0..times {
            x = self.action[gen][x];
        }
        x
    }

    pub fn with_twist(mut self, twist: Vec<Phase>) -> Result<Self> {
        if twist.len() != self.labels.len() {
            return Err(Error::DimensionMismatch(
                "twist table has wrong length".into(),
            ));
        }
        if !twist[self.unit].is_zero() {
            return Err(Error::InvalidSpectrum(
                "twist of the unit must be trivial".into(),
            ));
        }
        self.twist = Some(twist);
        Ok(self)
    }

    pub fn with_pairwise(mut self, pairwise: PairwiseMonodromy) -> Result<Self> {
        pairwise.validate(self.labels.len())?;
        self.pairwise = Some(pairwise);
        Ok(self)
    }

    /// Attaches the stabilizer 2-cocycle `ξ_X` for label `x`, given on pairs of
    /// elements of `Γ` lying in the stabilizer. Unspecified pairs are zero.
    pub fn with_stabilizer_cocycle(
        mut self,
        x: usize,
        entries: &[((GroupElement, GroupElement), Phase)],
    ) -> Result<Self> {
        if x >= self.labels.len() {
            return Err(Error::InvalidSpectrum(format!(
                "label index {x} out of range"
            )));
        }
        let stab = self.stabilizer_of(x)?;
        let st = stab.structure()?;
        let mut converted = vec![];
        for ((a, b), v) in entries {
            let (Some(sa), Some(sb)) = (st.pullback(a), st.pullback(b)) else {
                return Err(Error::InvalidSpectrum(format!(
                    "cocycle argument ({a}, {b}) is not in the stabilizer of {}",
                    self.labels[x]
                )));
            };
            converted.push((vec![sa, sb], *v));
        }
        let xi = Cochain::from_entries(st.group().clone(), 2, &converted)?;
        crate::projrep::TwistedAlgebraSpec::new(xi.clone()).map_err(|e| {
            Error::InvalidSpectrum(format!("stabilizer cocycle of {}: {e}", self.labels[x]))
        })?;
        self.cocycles.insert(x, xi);
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn gamma(&self) -> &FgAbGroup {
        &self.gamma
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn twist(&self) -> Option<&[Phase]> {
        self.twist.as_deref()
    }

    pub fn has_pairwise(&self) -> bool {
        self.pairwise.is_some()
    }

    /// Double braiding of labels `x` and `y`, if pairwise data is present.
    pub fn pairwise(&self, x: usize, y: usize) -> Option<Phase> {
        self.pairwise.as_ref().map(|p| p.get(x, y))
    }

    /// Monodromy of `E_{γ_i}` with label `x`.
    pub fn monodromy(&self, i: usize, x: usize) -> Phase {
        self.monodromy[i][x]
    }

    /// Label of `E_g ⊗ X`.
    pub fn act(&self, g: &GroupElement, mut x: usize) -> usize {
        for (i, &c) in g.coords().iter().enumerate() {
            x = self.power(i, c, x);
        }
        x
    }

    /// Label of `E_g`.
    pub fn current(&self, g: &GroupElement) -> usize {
        self.act(g, self.unit)
    }

    /// Labels in the orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = BTreeMap::new();
        let mut queue = VecDeque::from([x]);
        seen.insert(x, ());
        while let Some(y) = queue.pop_front() {
            for perm in &self.action {
                let z = perm[y];
                if seen.insert(z, ()).is_none() {
                    queue.push_back(z);
                }
            }
        }
        seen.into_keys().collect()
    }

    /// All orbits, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.labels.len()];
        let mut out = vec![];
        for x in 0..self.labels.len() {
            if done[x] {
                continue;
            }
            let o = self.orbit(x);
            for &y in &o {
                done[y] = true;
            }
            out.push(o);
        }
        out
    }

    pub fn stabilizer_of(&self, x: usize) -> Result<SubgroupSpec> {
        let order = self.gamma.order().expect("finite Gamma");
        if self.orbit(x).len() as u128 == order {
            return Ok(SubgroupSpec::trivial(self.gamma.clone()));
        }
        let fixing: Vec<GroupElement> = self
            .gamma
            .enumerate()?
            .into_iter()
            .filter(|g| self.act(g, x) == x)
            .collect();
        SubgroupSpec::from_elements(self.gamma.clone(), &fixing)
    }

    /// Stabilizer cocycle attached to some member of the orbit of `x`, in the
    /// coordinates of that member's stabilizer structure.
    pub(crate) fn orbit_cocycle(&self, orbit: &[usize]) -> Option<&Cochain> {
        orbit.iter().find_map(|y| self.cocycles.get(y))
    }

    /// Whether `E_{γ_i}` double braids trivially with `x` for every generator.
    pub fn is_local(&self, x: usize) -> bool {
        self.monodromy.iter().all(|row| row[x].is_zero())
    }

    /// Restriction to a Γ-stable set of labels, which must contain the unit.
    pub fn restrict(&self, keep: &[usize]) -> Result<SpectrumTable> {
        let n = self.labels.len();
        let mut new_index = vec![usize::MAX; n];
        for (i, &x) in keep.iter().enumerate() {
            if x >= n || new_index[x] != usize::MAX {
                return Err(Error::InvalidSpectrum("bad label subset".into()));
            }
            new_index[x] = i;
        }
        if new_index[self.unit] == usize::MAX {
            return Err(Error::InvalidSpectrum(
                "label subset must contain the unit".into(),
            ));
        }
        let mut action = vec![];
        for perm in &self.action {
            let mut p = vec![];
            for &x in keep {
                let y = new_index[perm[x]];
                if y == usize::MAX {
                    return Err(Error::InvalidSpectrum(
                        "label subset is not Gamma-stable".into(),
                    ));
                }
                p.push(y);
            }
            action.push(p);
        }
        let pick = |row: &Vec<Phase>| keep.iter().map(|&x| row[x]).collect::<Vec<_>>();
        let mut t = SpectrumTable::new(
            keep.iter().map(|&x| self.labels[x].clone()).collect(),
            self.gamma.clone(),
            action,
            self.monodromy.iter().map(pick).collect(),
            new_index[self.unit],
        )?;
        if let Some(tw) = &self.twist {
            t.twist = Some(pick(tw));
        }
        t.pairwise = self.pairwise.as_ref().map(|p| match p {
            PairwiseMonodromy::Table(tab) => {
                PairwiseMonodromy::Table(keep.iter().map(|&x| pick(&tab[x])).collect())
            }
            PairwiseMonodromy::Form { form, points } => PairwiseMonodromy::Form {
                form: form.clone(),
                points: keep.iter().map(|&x| points[x].clone()).collect(),
            },
        });
        for (x, c) in &self.cocycles {
            if new_index[*x] != usize::MAX {
                t.cocycles.insert(new_index[*x], c.clone());
            }
        }
        Ok(t)
    }
}
