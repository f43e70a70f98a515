mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplecurrent::abgroup::{all_subgroups, SubgroupSpec};
use simplecurrent::cohomology::{coboundary_d3, Cochain};
use simplecurrent::engine::{Answer, Count};
use simplecurrent::forms::orthogonal_complement;
use simplecurrent::pointed::{brute_force_oracle, condense, MetricGroupCategory};

fn is_isotropic(cat: &MetricGroupCategory, gamma: &SubgroupSpec) -> bool {
    gamma
        .elements()
        .unwrap()
        .iter()
        .all(|x| cat.form().eval(x).is_zero())
}

fn order(s: &SubgroupSpec) -> u128 {
    s.elements().unwrap().len() as u128
}

#[test]
fn engine_matches_oracle_on_every_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for g in common::sample_groups(&mut rng, 120, 32) {
        let cat = common::random_metric_group(&mut rng, &g);
        for gamma in all_subgroups(&g).unwrap() {
            let engine = condense(&cat, &gamma).unwrap();
            let oracle = brute_force_oracle(&cat, &gamma).unwrap();
            assert_eq!(
                engine,
                oracle,
                "{g} with Gamma generated by {:?}",
                gamma.generators()
            );
        }
    }
}

#[test]
fn counts_match_cosets_of_the_orthogonal_complement() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for g in common::sample_groups(&mut rng, 80, 24) {
        let cat = common::random_metric_group(&mut rng, &g);
        let n = g.order().unwrap();
        let b = cat.form().polarization();
        for gamma in all_subgroups(&g).unwrap() {
            if !is_isotropic(&cat, &gamma) {
                continue;
            }
            let r = condense(&cat, &gamma).unwrap();
            let k = order(&gamma);
            let perp = orthogonal_complement(b, &gamma).unwrap();
            assert_eq!(r.simple_census.simples, Count::Finite(n / k));
            assert_eq!(r.local_census.simples, Count::Finite(order(&perp) / k));
            assert_eq!(
                r.local_census.classes.iter().filter(|c| c.is_unit).count(),
                1
            );

            // |local| · |Γ|² divides |G| · |Rad(b|_{Γ^⊥})|
            let perp_els = perp.elements().unwrap();
            let rad = perp_els
                .iter()
                .filter(|x| perp_els.iter().all(|y| b.eval(x, y).is_zero()))
                .count() as u128;
            assert_eq!((n * rad) % (order(&perp) / k * k * k), 0);
        }
    }
}

#[test]
fn eta_is_a_cocycle_antisymmetrizing_to_the_braiding() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for g in common::sample_groups(&mut rng, 60, 16) {
        let cat = common::random_metric_group(&mut rng, &g);
        let Some(beta) = cat.braiding() else { continue };
        for gamma in all_subgroups(&g).unwrap() {
            let r = condense(&cat, &gamma).unwrap();
            if r.commutative.answer != Answer::Yes {
                continue;
            }
            let s = gamma.structure().unwrap();
            let eta: &Cochain = r.eta.as_ref().unwrap();
            assert!(coboundary_d3(eta).unwrap().is_zero());
            let els = s.group().enumerate().unwrap();
            for x in &els {
                for y in &els {
                    let anti = eta.get(&[x.clone(), y.clone()]) - eta.get(&[y.clone(), x.clone()]);
                    assert_eq!(anti, beta.eval(&s.embed(x), &s.embed(y)));
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn ribbon_verdict_ignores_the_choice_of_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for g in common::sample_groups(&mut rng, 60, 32) {
        let cat = common::random_metric_group(&mut rng, &g);
        for gamma in all_subgroups(&g).unwrap() {
            if !is_isotropic(&cat, &gamma) {
                continue;
            }
            // regenerate Γ from all of its elements in shuffled order
            let mut els = gamma.elements().unwrap();
            rand::seq::SliceRandom::shuffle(els.as_mut_slice(), &mut rng);
            let regen = SubgroupSpec::new(g.clone(), els).unwrap();
            let a = condense(&cat, &gamma).unwrap();
            let b = condense(&cat, &regen).unwrap();
            assert_eq!(a.ribbon.answer, b.ribbon.answer);
            assert_eq!(a.local_census.simples, b.local_census.simples);
        }
    }
}
