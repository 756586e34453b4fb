//! Inverse-semigroup, domain-calculus and Grigorchuk-twist laws on seeded samples.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_core::core_action::{Action, Domain, PartialMap, Point};
use thompson_core::s_structure::{SStructure, StructureKind};
use thompson_core::sampling::{random_domain, random_pattern, random_same_type, random_subdomain};
use thompson_core::semigroups::grig::GrigWord;
use thompson_core::semigroups::{make_action, ActionSpec};

const ACTIONS: &[(&str, StructureKind)] = &[
    ("V2", StructureKind::Maximal),
    ("V3", StructureKind::Maximal),
    ("QV", StructureKind::Maximal),
    ("H2", StructureKind::Maximal),
    ("ROVER", StructureKind::Rover),
    ("prod(V2,V2)", StructureKind::ProductBrin),
];

fn structure(i: usize) -> SStructure {
    let (spec, kind) = ACTIONS[i % ACTIONS.len()];
    SStructure::new(
        make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
        kind,
    )
    .unwrap()
}

/// A random element of `S`: a plain map between same-type domains, twisted for Röver.
fn random_map(ss: &SStructure, rng: &mut ChaCha8Rng) -> PartialMap {
    let a = ss.action();
    let d1 = random_domain(a, rng, 3);
    let d2 = random_same_type(ss, &d1, rng, 3);
    let plain = a.plain_map(&d1, &d2).expect("same type");
    match (&d1, &d2, ss.kind()) {
        (Domain::Cone(w1), Domain::Cone(w2), StructureKind::Rover) => {
            PartialMap::twist(GrigWord::random(rng, 6), w1.clone(), w2.clone())
        }
        _ => plain,
    }
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn inverse_semigroup_laws(seed in any::<u64>(), which in 0usize..6) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t, u) = (random_map(&ss, &mut rng), random_map(&ss, &mut rng), random_map(&ss, &mut rng));
        let left = a.compose(&s, &a.compose(&t, &u));
        let right = a.compose(&a.compose(&s, &t), &u);
        prop_assert!(left.same_as(&right), "{left} vs {right}");
        let back = a.compose(&s, &a.compose(&a.invert(&s), &s));
        prop_assert!(back.same_as(&s), "{back} vs {s}");
        let e1 = a.compose(&a.invert(&s), &s);
        prop_assert!(e1.same_as(&a.identity(&s.source())));
        let e2 = a.compose(&a.invert(&t), &t);
        prop_assert!(a.compose(&e1, &e2).same_as(&a.compose(&e2, &e1)));
        prop_assert_eq!(a.compose(&PartialMap::Zero, &s), PartialMap::Zero);
        prop_assert_eq!(a.compose(&s, &PartialMap::Zero), PartialMap::Zero);
    }

    #[test]
    fn differences_partition_the_outer_domain(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_domain(a, &mut rng, 3);
        let d = random_subdomain(a, &e, &mut rng, 3);
        let pieces = a.partition_difference(&e, &d).unwrap();
        for p in &pieces {
            prop_assert!(a.disjoint(p, &d), "{p} meets {d}");
        }
        let mut all = pieces.clone();
        all.push(d.clone());
        prop_assert!(a.is_partition_of(&e, &all), "{e} minus {d}: {pieces:?}");
    }

    #[test]
    fn maximal_partition_is_coarsest(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_domain(a, &mut rng, 3);
        let fine = random_pattern(&ss, &d, &mut rng, 6);
        let max = a.maximal_partition(&d).unwrap();
        if fine.len() > 1 {
            for p in &fine {
                prop_assert!(max.pieces.iter().any(|q| a.contains(q, p)), "{p} crosses {max}");
            }
        }
    }

    #[test]
    fn ascending_chains_are_short(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_domain(a, &mut rng, 5);
        let roots = a.root_domains();
        let bound = a.family().size(&d) + 2;
        let mut cur = d.clone();
        let mut steps = 0;
        while let Some(p) = a.parent(&cur).unwrap() {
            prop_assert!(a.contains(&p, &cur));
            cur = p;
            steps += 1;
            prop_assert!(steps <= bound, "{d} climbs more than {bound} steps");
        }
        prop_assert!(roots.contains(&cur), "{d} tops out at {cur}");
    }

    #[test]
    fn maps_carry_maximal_partitions(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_map(&ss, &mut rng);
        let mut moved: Vec<Domain> = a
            .maximal_partition(&s.source())
            .unwrap()
            .pieces
            .iter()
            .map(|p| a.translate(&s, p).unwrap())
            .collect();
        moved.sort();
        prop_assert_eq!(moved, a.maximal_partition(&s.target()).unwrap().pieces);
    }

    #[test]
    fn rover_restriction_commutes_with_evaluation(seed in any::<u64>()) {
        let ss = structure(4);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_map(&ss, &mut rng);
        let d = random_subdomain(a, &m.source(), &mut rng, 3);
        let r = a.restrict(&m, &d).unwrap();
        prop_assert!(a.legal_map(&r));
        let Domain::Cone(w) = &d else { unreachable!() };
        for _ in 0..32 {
            let mut x = w.letters().to_vec();
            let tail = 10usize.saturating_sub(x.len());
            x.extend(random_bits(&mut rng, tail));
            let x = Point::Bits(x);
            prop_assert_eq!(a.apply(&r, &x), a.apply(&m, &x));
        }
    }

    #[test]
    fn rover_maps_stay_in_the_family(seed in any::<u64>()) {
        let ss = structure(4);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (random_map(&ss, &mut rng), random_map(&ss, &mut rng));
        for m in [a.compose(&s, &t), a.invert(&s), a.restrict(&s, &random_subdomain(a, &s.source(), &mut rng, 2)).unwrap()] {
            prop_assert!(a.legal_map(&m), "{m} escapes the family");
            prop_assert!(matches!(m, PartialMap::Twist { .. } | PartialMap::Zero | PartialMap::Cone { .. }), "{m}");
        }
    }
}

#[test]
fn product_domains_are_componentwise() {
    let v: Action = make_action(&ActionSpec::V(2)).unwrap();
    let p = make_action(&ActionSpec::parse("prod(V2,V2)").unwrap()).unwrap();
    let single = v.domains_up_to(2);
    let pairs = p.domains_up_to(2);
    assert_eq!(pairs.len(), single.len() * single.len());
    for d in &pairs {
        assert!(p.legal_domain(d));
        let coords = d.coords();
        assert!(coords.iter().all(|c| single.contains(c)));
    }
}
