use std::collections::HashSet;

use emc_core::compositions::{binomial, composition_count, enumerate, Composition, YoungDiagram};
use emc_core::emc::emc;
use emc_testkit::{random_composition, removable_cells, set_symmetric_difference};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn diagram_round_trip_and_size() {
    for s in 0..=6 {
        for n in 1..=6 {
            let mut count = 0u128;
            for c in enumerate(s, n) {
                let g = c.diagram();
                assert_eq!(g.to_composition(s, n).unwrap(), c);
                assert_eq!(g.size(), c.weighted_total());
                count += 1;
            }
            assert_eq!(count, composition_count(s, n));
            assert_eq!(binomial(s + n - 1, s), count.into());
        }
    }
}

#[test]
fn enumeration_is_strictly_increasing() {
    for s in 0..=5 {
        for n in 1..=5 {
            let all: Vec<Vec<usize>> = enumerate(s, n).map(|c| c.entries().to_vec()).collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]), "s={s} n={n}");
        }
    }
}

#[test]
fn conjugation_is_a_bijection_between_boxes() {
    for s in 0..=5 {
        for n in 1..=5 {
            let images: HashSet<Vec<usize>> = enumerate(s, n)
                .map(|c| {
                    let t = c.diagram().conjugate();
                    assert_eq!((t.max_rows(), t.max_cols()), (n - 1, s));
                    assert_eq!(t.conjugate(), c.diagram());
                    t.rows().to_vec()
                })
                .collect();
            let target: HashSet<Vec<usize>> =
                enumerate(n - 1, s + 1).map(|c| c.diagram().rows().to_vec()).collect();
            assert_eq!(images, target, "s={s} n={n}");
        }
    }
}

#[test]
fn lattice_identity() {
    for s in 0..=4 {
        for n in 1..=4 {
            let all: Vec<Composition> = enumerate(s, n).collect();
            for a in &all {
                for b in &all {
                    let (ga, gb) = (a.diagram(), b.diagram());
                    let join = ga.join(&gb).unwrap();
                    let meet = ga.meet(&gb).unwrap();
                    assert_eq!(
                        emc(&[a.clone(), b.clone()]).unwrap() as usize,
                        join.size() - meet.size()
                    );
                    assert_eq!(set_symmetric_difference(&ga, &gb), join.size() - meet.size());
                }
            }
        }
    }
}

#[test]
fn corners_match_removable_cells() {
    for s in 0..=5 {
        for n in 1..=5 {
            for c in enumerate(s, n) {
                let g = c.diagram();
                assert_eq!(g.corners(), removable_cells(&g), "{g}");
            }
        }
    }
}

#[test]
fn join_and_meet_need_a_common_box() {
    let a = YoungDiagram::new(vec![2, 1], 3, 2).unwrap();
    let b = YoungDiagram::new(vec![1], 2, 2).unwrap();
    assert!(a.join(&b).is_err());
    assert!(a.meet(&b).is_err());
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>(), s in 0usize..12, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_composition(&mut rng, s, n);
        let parsed: Composition = c.to_string().parse().unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn join_and_meet_bound_both(seed in any::<u64>(), s in 0usize..10, n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_composition(&mut rng, s, n).diagram();
        let b = random_composition(&mut rng, s, n).diagram();
        let (j, m) = (a.join(&b).unwrap(), a.meet(&b).unwrap());
        prop_assert!(j.contains(&a) && j.contains(&b));
        prop_assert!(a.contains(&m) && b.contains(&m));
        prop_assert_eq!(j.size() + m.size(), a.size() + b.size());
    }

    #[test]
    fn padding_keeps_the_diagram(seed in any::<u64>(), s in 0usize..10, n in 1usize..8, extra in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_composition(&mut rng, s, n);
        let p = c.padded_to(n + extra);
        prop_assert_eq!(p.diagram().rows().to_vec(), c.diagram().rows().to_vec());
        prop_assert_eq!(p.weighted_total(), c.weighted_total());
    }
}
