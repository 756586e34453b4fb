//! Expansion-scheme axioms, interval and descending-link topology, and the
//! connectivity engine checked against enumeration.

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_core::complex_topology::{
    descending_link, filtration_level, interval_complex, scheme_interval_link, transports, Budget,
};
use thompson_core::core_action::{Domain, PartialMap, Word};
use thompson_core::expansion_scheme::Scheme;
use thompson_core::finiteness_engine::ConnectivityTable;
use thompson_core::gamma_group::GammaElement;
use thompson_core::pseudovertex::{
    leq, make_class, simple_expansions, ClassPair, OrderOracle, Pseudovertex, TypeVector, Verdict,
};
use thompson_core::s_structure::{SStructure, StructureKind};
use thompson_core::sampling::{
    random_class, random_domain, random_same_type, random_vertex, root_vertex,
};
use thompson_core::semigroups::grig::GrigWord;
use thompson_core::semigroups::{make_action, ActionSpec};

const SCHEMES: &[(&str, StructureKind)] = &[
    ("V2", StructureKind::Maximal),
    ("ROVER", StructureKind::Rover),
    ("prod(V2,V2)", StructureKind::ProductBrin),
    ("QV", StructureKind::Maximal),
];

fn scheme(i: usize) -> Scheme {
    let (spec, kind) = SCHEMES[i % SCHEMES.len()];
    Scheme::natural(
        SStructure::new(
            make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
            kind,
        )
        .unwrap(),
    )
}

fn budget() -> Budget {
    Budget {
        max_vertices: 3_000,
        max_candidates: 50_000,
        max_simplices: 500_000,
        max_dim: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn e_sets_start_at_their_class(seed in any::<u64>(), which in 0usize..4) {
        let s = scheme(which);
        let ss = s.structure();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_class(ss, &mut rng);
        let single = Pseudovertex::single(b.clone());
        let menu = s.e_set(&b);
        prop_assert!(menu.contains(&single));
        for w in &menu {
            prop_assert!(leq(ss, &single, w).unwrap(), "{w} is not above {b}");
            prop_assert!(s.is_e_expansion(&single, w));
        }
    }

    #[test]
    fn scheme_interval_links_are_contractible(seed in any::<u64>(), which in 0usize..3) {
        let s = scheme(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_class(s.structure(), &mut rng);
        let single = Pseudovertex::single(b.clone());
        for v in s.e_set(&b).iter().filter(|v| **v != single) {
            let link = scheme_interval_link(&s, &b, v).unwrap();
            let h = link.homology(2).unwrap();
            prop_assert!(!link.is_empty() && h.is_acyclic(), "({b}, {v}]: {h}");
        }
    }

    #[test]
    fn interval_complexes_are_highly_connected(seed in any::<u64>(), which in 0usize..3) {
        let s = scheme(which);
        let ss = s.structure();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = rng.gen_range(0..3);
        let low = random_vertex(ss, &mut rng, steps);
        let mut high = low.clone();
        for _ in 0..rng.gen_range(1..4) {
            let options = simple_expansions(ss, &high);
            high = options[rng.gen_range(0..options.len())].clone();
        }
        let fragment = interval_complex(&s, &low, &high, &budget()).unwrap();
        let h = fragment.complex.homology(2).unwrap();
        prop_assert!(h.vanishes_through(2), "[{low}, {high}]: {h}");
    }

    #[test]
    fn transporters_carry_filtration_fragments(seed in any::<u64>(), which in 0usize..4) {
        let s = scheme(which);
        let ss = s.structure();
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y1 = random_domain(a, &mut rng, 3);
        let y2 = random_same_type(ss, &y1, &mut rng, 3);
        let carry = GammaElement::new(a, vec![a.plain_map(&y1, &y2).unwrap()]).unwrap();
        let f1 = filtration_level(&s, &[y1], 3, &budget()).unwrap();
        let f2 = filtration_level(&s, &[y2], 3, &budget()).unwrap();
        prop_assert_eq!(f1.fragment.vertices.len(), f2.fragment.vertices.len());
        prop_assert!(transports(&s, &carry, &f1.fragment, &f2.fragment).unwrap());
    }

    #[test]
    fn certificates_are_monotone(w in proptest::collection::vec(0usize..10, 2), n in -1i64..3, which in 0usize..2) {
        let s = [scheme(3), Scheme::natural(
            SStructure::new(make_action(&ActionSpec::parse("prod(Qbar1,V2)").unwrap()).unwrap(), StructureKind::ProductBrin).unwrap(),
        )][which].clone();
        let mut table = ConnectivityTable::for_scheme(&s).unwrap();
        let w = TypeVector(w);
        if table.stable_conn_ge(&w, n).unwrap().is_true() {
            prop_assert!(table.stable_conn_ge(&w, n - 1).unwrap().is_true());
            for i in 0..w.0.len() {
                let mut up = w.clone();
                up.0[i] += 1;
                prop_assert!(table.stable_conn_ge(&up, n).unwrap().is_true(), "{:?} at {n}", up.0);
            }
        }
    }
}

#[test]
fn base_case_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for which in [0, 3] {
        let s = scheme(which);
        let ss = s.structure();
        let mut table = ConnectivityTable::for_scheme(&s).unwrap();
        let mut seen = BTreeSet::new();
        for _ in 0..40 {
            let steps = rng.gen_range(0..5);
            let v = random_vertex(ss, &mut rng, steps);
            let w = v.type_vector(ss);
            let certified = table.stable_conn_ge(&w, -1).unwrap().is_true();
            let link = descending_link(&s, &v, &budget()).unwrap();
            assert_eq!(certified, !link.complex.is_empty(), "{v} of type {:?}", w.0);
            seen.insert(certified);
        }
        assert_eq!(seen.len(), 2, "both outcomes sampled");
    }
}

#[test]
fn v_links_match_the_rank_bound() {
    let s = scheme(0);
    let ss = s.structure();
    let mut table = ConnectivityTable::for_scheme(&s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let wide = Budget {
        max_vertices: 10_000,
        max_candidates: 50_000,
        max_simplices: 2_000_000,
        max_dim: Some(1),
    };
    for rank in [2, 3, 4, 5, 6, 6, 7, 8] {
        let v = random_vertex(ss, &mut rng, rank - 1);
        assert_eq!(v.rank(), rank);
        // Largest n with (2n + 2)·2 + 2 ≤ rank.
        let n = (rank as i64 - 2) / 4 - 1;
        assert!(table
            .stable_conn_ge(&TypeVector(vec![rank]), n)
            .unwrap()
            .is_true());
        let link = descending_link(&s, &v, &wide).unwrap().complex;
        assert!(!link.is_empty(), "rank {rank}");
        if n >= 0 {
            assert!(link.is_connected(), "rank {rank}");
            assert!(link.is_homologically_n_connected(n).unwrap());
        }
    }
}

/// `{[f|_{B_{ω0}}, B_{ω0}], [f|_{B_{ω1}}, B_{ω1}]}` replacing `b`.
fn standard_halves(ss: &SStructure, b: &ClassPair) -> Vec<ClassPair> {
    let a = ss.action();
    let Domain::Cone(w) = ss.transversal(b.type_id()) else {
        unreachable!("Röver domains are cones")
    };
    [w.child(0), w.child(1)]
        .into_iter()
        .map(|c| make_class(ss, &b.map().restrict(a, &Domain::Cone(c)).unwrap()).unwrap())
        .collect()
}

/// Every vertex reachable from `start` by the given expansions, up to `max_rank`.
fn reachable(
    start: &Pseudovertex,
    max_rank: usize,
    mut step: impl FnMut(&Pseudovertex) -> Vec<Pseudovertex>,
) -> BTreeSet<Pseudovertex> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        if v.rank() >= max_rank {
            continue;
        }
        for u in step(&v) {
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen
}

#[test]
fn rover_upper_bounds_dominate_standard_expansions() {
    let s = scheme(1);
    let ss = s.structure();
    let a = ss.action();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut classes = vec![root_vertex(ss).pairs()[0].clone()];
    classes.extend((0..2).map(|_| random_class(ss, &mut rng)));
    for b in classes {
        let Domain::Cone(w) = ss.transversal(b.type_id()) else {
            unreachable!()
        };
        let twist = PartialMap::twist(
            GrigWord::parse("a").unwrap(),
            w.clone(),
            w.concat(&Word::empty()),
        );
        let twisted = make_class(
            ss,
            &b.map()
                .compose(a, &GammaElement::new(a, vec![twist]).unwrap()),
        )
        .unwrap();
        let (x, y) = (
            Pseudovertex::single(b.clone()),
            Pseudovertex::single(twisted),
        );
        let all = reachable(&x, 5, |v| simple_expansions(ss, v));
        let standard = reachable(&x, 5, |v| {
            v.pairs()
                .iter()
                .map(|p| v.replace(p, &standard_halves(ss, p)))
                .collect()
        });
        let mut oracle = OrderOracle::new(ss);
        let below_y: Vec<&Pseudovertex> = standard
            .iter()
            .filter(|w| **w != x && oracle.compare(&y, w) == Verdict::True)
            .collect();
        let mut bounds = 0;
        for u in &all {
            if oracle.compare(&y, u) != Verdict::True {
                continue;
            }
            bounds += 1;
            assert!(
                below_y
                    .iter()
                    .any(|w| oracle.compare(w, u) == Verdict::True),
                "{u} bounds {x} and {y} but dominates no standard expansion"
            );
        }
        assert!(
            bounds > 10,
            "only {bounds} common upper bounds up to rank 5"
        );
    }
}
