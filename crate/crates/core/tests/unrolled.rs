use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use simplecurrent::engine::{Answer, Count};
use simplecurrent::unrolled::{
    check_commutative, discriminant, full_report, CartanDatum, DiscriminantGroup, Sublattice,
    Weight,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn b2(ell: i64) -> CartanDatum {
    CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 2], ell).unwrap()
}

/// Counts `(ℓ/2)(L')*` inside the box `Π [0, m_i)` for diagonal
/// `L' = ⊕ m_i ℤ e_i` by scanning the grid `(1/den) ℤⁿ`, and the number of
/// those points pairing trivially (under `2⟨·,·⟩/ℓ`) with all the others.
fn box_oracle(cd: &CartanDatum, m: &[BigRational], den: i64) -> (usize, usize) {
    let n = m.len();
    let steps: Vec<i64> = m
        .iter()
        .map(|mi| (mi * q(den, 1)).to_integer().try_into().unwrap())
        .collect();
    let ell = q(cd.ell(), 1);
    let gens: Vec<Weight> = (0..n)
        .map(|i| {
            let mut c = vec![BigRational::zero(); n];
            c[i] = m[i].clone();
            Weight::new(c)
        })
        .collect();
    let two = q(2, 1);
    let in_dual = |g: &Weight| {
        gens.iter()
            .all(|b| (cd.pairing(g, b) * &two / &ell).is_integer())
    };
    let mut pts = vec![];
    let mut idx = vec![0i64; n];
    'outer: loop {
        let w = Weight::new(idx.iter().map(|&k| q(k, den)).collect());
        if in_dual(&w) {
            pts.push(w);
        }
        for i in 0..n {
            idx[i] += 1;
            if idx[i] < steps[i] {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    let rad = pts
        .iter()
        .filter(|x| {
            pts.iter()
                .all(|y| (cd.pairing(x, y) * &two / &ell).is_integer())
        })
        .count();
    (pts.len(), rad)
}

fn check_against_oracle(cd: &CartanDatum, m: &[BigRational], den: i64) {
    let gens: Vec<Weight> = (0..m.len())
        .map(|i| {
            let mut c = vec![BigRational::zero(); m.len()];
            c[i] = m[i].clone();
            Weight::new(c)
        })
        .collect();
    let l = Sublattice::new(cd, &gens).unwrap();
    assert!(check_commutative(cd, &l));
    let DiscriminantGroup::Finite(d) = discriminant(cd, &l).unwrap() else {
        panic!("full rank")
    };
    let (order, rad) = box_oracle(cd, m, den);
    assert_eq!(d.order(), order as u128, "ell = {} m = {m:?}", cd.ell());
    let r = full_report(cd, &l).unwrap();
    assert_eq!(r.local_census.simples, Count::Finite(order as u128));
    assert_eq!(r.nondegenerate.answer == Answer::Yes, rad == 1);
}

#[test]
fn sl3_at_ell_three() {
    let cd = CartanDatum::type_a(2, 3).unwrap();
    check_against_oracle(&cd, &[q(3, 1), q(3, 1)], 12);
    let l = Sublattice::new(
        &cd,
        &[
            Weight::from_integers(&[3, 0]),
            Weight::from_integers(&[0, 3]),
        ],
    )
    .unwrap();
    let r = full_report(&cd, &l).unwrap();
    assert_eq!(r.local_census.simples, Count::Finite(12));
    assert_eq!(r.local_census.classes.len(), 12);
    assert_eq!(
        r.local_census.classes.iter().filter(|c| c.is_unit).count(),
        1
    );
}

#[test]
fn b2_at_ell_five() {
    check_against_oracle(&b2(5), &[q(5, 1), q(5, 1)], 4);
}

#[test]
fn diagonal_sublattices_match_the_box_count() {
    let mut checked = 0;
    for cd in [
        CartanDatum::type_a(1, 3).unwrap(),
        CartanDatum::type_a(1, 4).unwrap(),
        CartanDatum::type_a(1, 6).unwrap(),
        CartanDatum::type_a(2, 3).unwrap(),
        CartanDatum::type_a(2, 4).unwrap(),
        CartanDatum::type_a(2, 5).unwrap(),
        b2(5),
        b2(6),
    ] {
        let n = cd.rank();
        let ell = cd.ell();
        let ds = cd.symmetrizers().to_vec();
        // m_i = k_i ℓ / (2 d_i) with k_i ∈ {1, 2, 3, 4}
        let ks: Vec<Vec<i64>> = if n == 1 {
            (1..=4).map(|k| vec![k]).collect()
        } else {
            (1..=4)
                .flat_map(|a| (1..=4).map(move |b| vec![a, b]))
                .collect()
        };
        for k in ks {
            let m: Vec<BigRational> = k
                .iter()
                .zip(&ds)
                .map(|(&ki, &di)| q(ki * ell, 2 * di))
                .collect();
            let gens: Vec<Weight> = (0..n)
                .map(|i| {
                    let mut c = vec![BigRational::zero(); n];
                    c[i] = m[i].clone();
                    Weight::new(c)
                })
                .collect();
            let l = Sublattice::new(&cd, &gens).unwrap();
            if !check_commutative(&cd, &l) {
                continue;
            }
            let lcm_k = k.iter().fold(1, |a, &b| num_integer::lcm(a, b));
            check_against_oracle(&cd, &m, 2 * lcm_k * ds.iter().product::<i64>());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} commutative cases");
}

#[test]
fn rank_deficient_sublattice_is_not_finite() {
    let cd = CartanDatum::type_a(2, 3).unwrap();
    let l = Sublattice::new(&cd, &[Weight::from_integers(&[3, 3])]).unwrap();
    let r = full_report(&cd, &l).unwrap();
    assert_eq!(r.finite_local.answer, Answer::No);
    assert_eq!(r.local_census.simples, Count::Infinite);
}

fn weight_strategy(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec((-12i64..12, 1i64..6), n)
        .prop_map(|v| Weight::new(v.into_iter().map(|(a, b)| q(a, b)).collect()))
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(
        a in weight_strategy(2), b in weight_strategy(2), c in weight_strategy(2), k in -5i64..5
    ) {
        let cd = b2(7);
        prop_assert_eq!(cd.pairing(&a, &b), cd.pairing(&b, &a));
        prop_assert_eq!(cd.pairing(&a.add(&b), &c), cd.pairing(&a, &c) + cd.pairing(&b, &c));
        prop_assert_eq!(cd.pairing(&a.scale(&q(k, 1)), &c), cd.pairing(&a, &c) * q(k, 1));
    }

    #[test]
    fn lambda_inv_is_closed_under_addition(x in prop::collection::vec(-20i64..20, 2), y in prop::collection::vec(-20i64..20, 2)) {
        let cd = b2(7);
        let to_w = |v: &[i64]| Weight::new(vec![q(7 * v[0], 2), q(7 * v[1], 4)]);
        let (a, b) = (to_w(&x), to_w(&y));
        prop_assert!(cd.lambda_inv_member(&a) && cd.lambda_inv_member(&b));
        prop_assert!(cd.lambda_inv_member(&a.add(&b)));
    }
}
