//! Structure groups, Brin patterns, the expansion order and the action of `Γ`.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_core::core_action::{Action, Domain};
use thompson_core::pseudovertex::{
    act, common_upper_bound, leq, make_class, simple_expansions, simple_expansions_of, ClassPair,
    Pseudovertex,
};
use thompson_core::s_structure::{SStructure, StructureKind};
use thompson_core::sampling::{random_class, random_domain, random_gamma, random_vertex};
use thompson_core::semigroups::{make_action, ActionSpec};

const STRUCTURES: &[(&str, StructureKind)] = &[
    ("V2", StructureKind::Maximal),
    ("QV", StructureKind::Maximal),
    ("ROVER", StructureKind::Rover),
    ("H2", StructureKind::Maximal),
    ("prod(V2,V2)", StructureKind::ProductBrin),
];

fn structure(i: usize) -> SStructure {
    let (spec, kind) = STRUCTURES[i % STRUCTURES.len()];
    SStructure::new(
        make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
        kind,
    )
    .unwrap()
}

/// A random vertex and a random vertex above it.
fn comparable_pair(ss: &SStructure, rng: &mut ChaCha8Rng) -> (Pseudovertex, Pseudovertex) {
    let steps = rng.gen_range(0..3);
    let low = random_vertex(ss, rng, steps);
    let mut high = low.clone();
    for _ in 0..rng.gen_range(0..3) {
        if let Some(next) = simple_expansions(ss, &high).choose(rng) {
            high = next.clone();
        }
    }
    (low, high)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structure_groups_are_groups(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_domain(a, &mut rng, 3);
        let g = ss.structure_set(&d, &d);
        let expected = if ss.kind() == StructureKind::Rover { 4 } else { 1 };
        prop_assert_eq!(g.len(), expected);
        prop_assert!(g.iter().any(|x| x.same_as(&a.identity(&d))));
        for x in &g {
            prop_assert!(g.iter().any(|y| y.same_as(&a.invert(x))));
            for y in &g {
                let c = a.compose(x, y);
                prop_assert!(g.iter().any(|z| z.same_as(&c)));
            }
        }
    }

    #[test]
    fn classes_absorb_structure_twists(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_class(&ss, &mut rng);
        for h in ss.group(b.type_id()) {
            let twisted = b.map().compose(a, &thompson_core::gamma_group::GammaElement::new(a, vec![h]).unwrap());
            prop_assert_eq!(make_class(&ss, &twisted).unwrap(), b.clone());
        }
    }

    #[test]
    fn order_is_transitive_and_graded(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v1, v2) = comparable_pair(&ss, &mut rng);
        let v3 = simple_expansions(&ss, &v2).choose(&mut rng).cloned().unwrap_or_else(|| v2.clone());
        prop_assert!(leq(&ss, &v1, &v2).unwrap());
        prop_assert!(leq(&ss, &v2, &v3).unwrap());
        prop_assert!(leq(&ss, &v1, &v3).unwrap());
        if v1.rank() < v3.rank() {
            prop_assert!(!leq(&ss, &v3, &v1).unwrap());
        }
    }

    #[test]
    fn order_is_local(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v1, v2) = comparable_pair(&ss, &mut rng);
        let keep: Vec<ClassPair> = v1.pairs().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !keep.is_empty() {
            let sub1 = Pseudovertex::new(&ss, keep).unwrap();
            let sub2 = Pseudovertex::new(&ss, v2.inside(&ss, &sub1.image())).unwrap();
            prop_assert!(leq(&ss, &sub1, &sub2).unwrap(), "{sub1} vs {sub2}");
        }
    }

    #[test]
    fn action_preserves_rank_type_and_order(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v1, v2) = comparable_pair(&ss, &mut rng);
        let g = random_gamma(&ss, &mut rng, 3);
        let (w1, w2) = (act(&ss, &g, &v1).unwrap(), act(&ss, &g, &v2).unwrap());
        prop_assert_eq!(w1.rank(), v1.rank());
        prop_assert_eq!(w1.type_vector(&ss), v1.type_vector(&ss));
        prop_assert!(leq(&ss, &w1, &w2).unwrap());
    }

    #[test]
    fn upper_bounds_are_upper_bounds(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v1 = random_vertex(&ss, &mut rng, 3);
        let v2 = random_vertex(&ss, &mut rng, 3);
        let u = common_upper_bound(&ss, &v1, &v2).unwrap();
        prop_assert!(leq(&ss, &v1, &u).unwrap() && leq(&ss, &v2, &u).unwrap());
    }

    #[test]
    fn gamma_group_laws(seed in any::<u64>(), which in 0usize..5) {
        let ss = structure(which);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, k) = (random_gamma(&ss, &mut rng, 3), random_gamma(&ss, &mut rng, 3), random_gamma(&ss, &mut rng, 3));
        prop_assert!(g.compose(a, &h.compose(a, &k)).equal(a, &g.compose(a, &h).compose(a, &k)));
        let id = thompson_core::gamma_group::GammaElement::identity(a, &a.root_domains());
        prop_assert!(g.compose(a, &g.invert(a)).equal(a, &id));
        let v = random_vertex(&ss, &mut rng, 3);
        let lhs = act(&ss, &g.compose(a, &h), &v).unwrap();
        let rhs = act(&ss, &g, &act(&ss, &h, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maximal_expansions_restrict_the_map(seed in any::<u64>()) {
        let ss = structure(0);
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_class(&ss, &mut rng);
        let base = ss.transversal(b.type_id());
        let expected: Vec<ClassPair> = {
            let mut out: Vec<ClassPair> = a
                .maximal_partition(&base)
                .unwrap()
                .pieces
                .iter()
                .map(|e| make_class(&ss, &b.map().restrict(a, e).unwrap()).unwrap())
                .collect();
            out.sort();
            out
        };
        prop_assert_eq!(simple_expansions_of(&ss, &b), vec![expected]);
    }
}

/// Brin patterns of `d` with at most `max` pieces and cut depth at most `depth`.
fn brin_patterns(a: &Action, d: &Domain, max: usize, depth: usize) -> BTreeSet<Vec<Domain>> {
    let mut out = BTreeSet::from([vec![d.clone()]]);
    for i in 0..a.arity() {
        let parts = a.split_coordinate(d, i);
        if parts.iter().any(|p| a.family().size(p.coord(i)) > depth) {
            continue;
        }
        let mut partial: Vec<Vec<Domain>> = vec![vec![]];
        for p in &parts {
            let options = brin_patterns(a, p, max, depth);
            partial = partial
                .iter()
                .flat_map(|acc| {
                    options
                        .iter()
                        .map(move |o| [acc.clone(), o.clone()].concat())
                })
                .filter(|c| c.len() < max + parts.len() - 1)
                .collect();
        }
        for mut c in partial.into_iter().filter(|c| c.len() <= max) {
            c.sort();
            out.insert(c);
        }
    }
    out
}

/// All partitions of the cover of `cells` into at most `max` members of `bricks`.
fn small_partitions(
    a: &Action,
    cells: &[Domain],
    bricks: &[Domain],
    max: usize,
) -> Vec<Vec<Domain>> {
    let masks: Vec<(u64, &Domain)> = bricks
        .iter()
        .map(|b| {
            (
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| a.contains(b, c))
                    .fold(0u64, |m, (i, _)| m | 1 << i),
                b,
            )
        })
        .collect();
    let full = u64::MAX >> (64 - cells.len());
    let mut out = Vec::new();
    fn go<'a>(
        masks: &[(u64, &'a Domain)],
        full: u64,
        covered: u64,
        left: usize,
        chosen: &mut Vec<&'a Domain>,
        out: &mut Vec<Vec<Domain>>,
    ) {
        if covered == full {
            let mut c: Vec<Domain> = chosen.iter().map(|d| (*d).clone()).collect();
            c.sort();
            out.push(c);
            return;
        }
        if left == 0 {
            return;
        }
        let low = (!covered & full).trailing_zeros();
        for (m, d) in masks {
            if m & (1 << low) != 0 && m & covered == 0 {
                chosen.push(d);
                go(masks, full, covered | m, left - 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&masks, full, 0, max, &mut Vec::new(), &mut out);
    out
}

#[test]
fn brin_recognition_matches_generation() {
    let ss = structure(4);
    let a = ss.action();
    let root = a.root_domains()[0].clone();
    let depth = 3;
    let generated = brin_patterns(a, &root, 6, depth);
    let bricks = a.domains_up_to(depth);
    let cells: Vec<Domain> = a
        .domains_up_to(depth)
        .into_iter()
        .filter(|d| d.coords().iter().all(|c| a.family().size(c) == depth))
        .collect();
    let all = small_partitions(a, &cells, &bricks, 6);
    let mut brin = 0;
    for p in &all {
        let recognized = ss.is_pattern(&root, p);
        assert_eq!(recognized, generated.contains(p), "{p:?}");
        brin += recognized as usize;
    }
    // In two dimensions every dyadic partition has a guillotine cut.
    assert_eq!(brin, generated.len());
    assert_eq!(all.len(), brin);
    assert!(brin > 1000, "only {brin} partitions enumerated");
}
