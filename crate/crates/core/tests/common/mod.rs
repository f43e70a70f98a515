#![allow(dead_code)]

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use simplecurrent::abgroup::FgAbGroup;
use simplecurrent::forms::{Bicharacter, Phase, QuadraticForm};
use simplecurrent::pointed::MetricGroupCategory;

/// Finite abelian groups of every order up to `max_order`.
pub fn groups_up_to(max_order: u64) -> Vec<FgAbGroup> {
    (1..=max_order).flat_map(FgAbGroup::all_of_order).collect()
}

fn random_multiple<R: Rng>(rng: &mut R, den: i64) -> Phase {
    Phase::frac(rng.gen_range(0..den), den)
}

/// A random pre-metric group on `g`: half the time a genuine bicharacter,
/// otherwise an arbitrary quadratic form; twist gets a random character.
pub fn random_metric_group<R: Rng>(rng: &mut R, g: &FgAbGroup) -> MetricGroupCategory {
    let n = g.ngens();
    let d: Vec<i64> = (0..n).map(|i| g.modulus(i).unwrap()).collect();
    let linear: Vec<Phase> = d.iter().map(|&di| random_multiple(rng, di)).collect();
    if rng.gen_bool(0.5) {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| random_multiple(rng, d[i].gcd(&d[j])))
                    .collect()
            })
            .collect();
        let beta = Bicharacter::new(g.clone(), gram).unwrap();
        MetricGroupCategory::new(beta, linear).unwrap()
    } else {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => random_multiple(rng, d[i].gcd(&d[j])),
                        std::cmp::Ordering::Equal => {
                            random_multiple(rng, if d[i] % 2 == 0 { 2 * d[i] } else { d[i] })
                        }
                        std::cmp::Ordering::Greater => Phase::ZERO,
                    })
                    .collect()
            })
            .collect();
        let q = QuadraticForm::new(g.clone(), gram).unwrap();
        MetricGroupCategory::from_form(q, linear).unwrap()
    }
}

/// Every group of order at most `max_order` once, padded with random
/// repeats up to `count`.
pub fn sample_groups<R: Rng>(rng: &mut R, count: usize, max_order: u64) -> Vec<FgAbGroup> {
    let all = groups_up_to(max_order);
    let mut out: Vec<FgAbGroup> = all.clone();
    while out.len() < count {
        out.push(all.choose(rng).unwrap().clone());
    }
    out
}

/// Union-find over the points of a finite torus.
struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Counts local orbits on a parameter window. With `D = |det L|`, `Dℤ² ⊆ L`,
/// so one-dimensional parameters live on `(ℤ/D)²` and Kac parameters on
/// `α ∈ [0, rD/2)` with step `1/4D` times `a ∈ [0, D)`. Parity doubles both.
pub fn window_oracle(r: i64, rows: &[[i64; 2]]) -> (u128, u128) {
    let det = (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).abs();
    assert!(det > 0);
    let dd = det;

    let idx = |n: i64, b: i64| (n.rem_euclid(dd) * dd + b.rem_euclid(dd)) as usize;
    let mut one = Dsu((0..(dd * dd) as usize).collect());
    for n in 0..dd {
        for b in 0..dd {
            for g in rows {
                one.union(idx(n, b), idx(n + g[0], b + g[1]));
            }
        }
    }
    let one_orbits = (0..(dd * dd) as usize)
        .filter(|&x| one.find(x) == x)
        .count() as u128;

    // alpha = j / (4D), j in [0, 2 r D^2); shift by nr/2 is j += 2 r D n
    let span = 2 * r * dd * dd;
    let kidx = |j: i64, a: i64| (j.rem_euclid(span) * dd + a.rem_euclid(dd)) as usize;
    let is_kac = |j: i64| j % (2 * r * dd) != 0;
    let is_local = |j: i64| rows.iter().all(|g| (j * g[1]) % (2 * dd * r) == 0);
    let mut kac = Dsu((0..(span * dd) as usize).collect());
    for j in 0..span {
        for a in 0..dd {
            for g in rows {
                kac.union(kidx(j, a), kidx(j + 2 * r * dd * g[0], a + g[1]));
            }
        }
    }
    let mut kac_orbits = 0u128;
    for j in 0..span {
        for a in 0..dd {
            let x = kidx(j, a);
            if is_kac(j) && is_local(j) && kac.find(x) == x {
                kac_orbits += 1;
            }
        }
    }
    (2 * one_orbits, 2 * kac_orbits)
}

/// Hermite bases `[[a, c], [0, e]]` with `a·e ≤ 8`, plus a unimodular remix.
pub fn small_lattices() -> Vec<Vec<[i64; 2]>> {
    let mut out = vec![];
    for a in 1..=8 {
        for e in 1..=8 / a {
            for c in 0..e {
                let (u, v) = ([a, c], [0, e]);
                out.push(vec![u, v]);
                out.push(vec![
                    [u[0] + 2 * v[0], u[1] + 2 * v[1]],
                    [-v[0] - u[0], -v[1] - u[1]],
                ]);
            }
        }
    }
    out
}
