//! Seeded random generators for domains, patterns and piecewise maps used by
//! the axiom verifiers and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core_action::{Action, Domain, PartialMap, Word};
use crate::gamma_group::GammaElement;
use crate::pseudovertex::{
    identity_class, make_class, simple_expansions_of, transporter, ClassPair, Pseudovertex,
};
use crate::s_structure::{SStructure, StructureKind};
use crate::semigroups::families::Family;
use crate::semigroups::grig::GrigWord;

fn random_word<R: Rng>(rng: &mut R, arity: u8, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| rng.gen_range(0..arity)).collect())
}

fn random_of_type<R: Rng>(f: Family, t: usize, rng: &mut R, max: usize) -> Domain {
    match f {
        Family::Cantor { arity } => Domain::Cone(random_word(rng, arity, max)),
        Family::Rover => Domain::Cone(random_word(rng, 2, max)),
        Family::Tree { arity } if t == 0 => Domain::Vertex(random_word(rng, arity, max)),
        Family::Tree { arity } => Domain::Subtree(random_word(rng, arity, max)),
        Family::Houghton { rays } => {
            let offset = rng.gen_range(1..=max as u64 + 1);
            if t == 0 {
                Domain::RayPoint {
                    tray: rng.gen_range(1..=rays),
                    offset,
                }
            } else {
                Domain::Ray {
                    tray: t as u32,
                    offset,
                }
            }
        }
    }
}

/// A random legal domain with every coordinate of description size at most `max`.
pub fn random_domain<R: Rng>(a: &Action, rng: &mut R, max: usize) -> Domain {
    let coords = a
        .factors()
        .iter()
        .map(|f| {
            let t = rng.gen_range(0..f.type_count());
            random_of_type(*f, t, rng, max)
        })
        .collect();
    Domain::from_coords(coords, a.arity())
}

/// A random domain of the same type as `d`.
pub fn random_same_type<R: Rng>(ss: &SStructure, d: &Domain, rng: &mut R, max: usize) -> Domain {
    let a = ss.action();
    let coords = a
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| random_of_type(*f, f.type_of(d.coord(i)).unwrap_or(0), rng, max))
        .collect();
    Domain::from_coords(coords, a.arity())
}

/// A random subdomain of `d` reached by at most `steps` random descents.
pub fn random_subdomain<R: Rng>(a: &Action, d: &Domain, rng: &mut R, steps: usize) -> Domain {
    let mut cur = d.clone();
    for _ in 0..rng.gen_range(0..=steps) {
        let i = rng.gen_range(0..a.arity());
        let parts = a.split_coordinate(&cur, i);
        cur = parts.choose(rng).expect("split is non-empty").clone();
    }
    cur
}

/// A random pattern of `d` built by at most `splits` single-coordinate maximal splits.
pub fn random_pattern(
    ss: &SStructure,
    d: &Domain,
    rng: &mut impl Rng,
    splits: usize,
) -> Vec<Domain> {
    let a = ss.action();
    let mut pieces = vec![d.clone()];
    for _ in 0..rng.gen_range(0..=splits) {
        let k = rng.gen_range(0..pieces.len());
        let i = match ss.kind() {
            StructureKind::ProductBrin => rng.gen_range(0..a.arity()),
            _ => 0,
        };
        let parts = a.split_coordinate(&pieces[k], i);
        if parts.len() > 1 {
            pieces.swap_remove(k);
            pieces.extend(parts);
        }
    }
    pieces.sort();
    pieces
}

/// The nine-brick partition of the cube with no proper coarsening, carried onto `d`.
pub fn pathological_partition(a: &Action, d: &Domain) -> Option<Vec<Domain>> {
    if a.arity() != 3
        || a.factors()
            .iter()
            .any(|f| *f != (Family::Cantor { arity: 2 }))
    {
        return None;
    }
    let root = Domain::product(vec![Domain::Cone(Word::empty()); 3]);
    let carry = a.plain_map(&root, d)?;
    pathological_bricks(1)
        .iter()
        .map(|b| a.translate(&carry, b).ok())
        .collect()
}

/// The bricks of the `n`-th pathological partition of the binary cube.
pub fn pathological_bricks(n: usize) -> Vec<Domain> {
    let c = |s: &str| Domain::Cone(Word::parse(s).expect("literal word"));
    let mut out = vec![Domain::product(vec![c("0"), c("0"), c("e")])];
    let words: Vec<Word> = (0..1usize << n)
        .map(|k| Word::from_letters((0..n).rev().map(|b| ((k >> b) & 1) as u8).collect()))
        .collect();
    for (x, y, last) in [("1", "e", 0), ("0", "1", 0), ("e", "1", 1), ("1", "0", 1)] {
        for w in &words {
            out.push(Domain::product(vec![
                c(x),
                c(y),
                Domain::Cone(w.child(last)),
            ]));
        }
    }
    out
}

/// A random partition of `d`: a pattern, or for cubes sometimes a non-pattern.
pub fn random_partition(ss: &SStructure, d: &Domain, rng: &mut impl Rng) -> Vec<Domain> {
    if rng.gen_bool(0.3) {
        if let Some(p) = pathological_partition(ss.action(), d) {
            return p;
        }
    }
    random_pattern(ss, d, rng, 5)
}

/// A random piecewise map on `d` whose pieces lie in the structure sets,
/// twisted by a random Grigorchuk element for Röver.
pub fn random_embedding(ss: &SStructure, d: &Domain, rng: &mut impl Rng) -> Vec<PartialMap> {
    let a = ss.action();
    let e = random_same_type(ss, d, rng, 3);
    let carry = a.plain_map(d, &e).expect("same type");
    let sources = random_pattern(ss, d, rng, 4);
    let mut targets: Vec<Domain> = sources
        .iter()
        .map(|p| a.translate(&carry, p).expect("inside d"))
        .collect();
    let n = targets.len();
    for i in 0..n {
        let j = rng.gen_range(0..n);
        if ss.same_domain_type(&targets[i], &targets[j]) {
            targets.swap(i, j);
        }
    }
    let mut out: Vec<PartialMap> = sources
        .iter()
        .zip(&targets)
        .map(|(s, t)| {
            let set = ss.structure_set(s, t);
            set.choose(rng)
                .cloned()
                .unwrap_or_else(|| a.plain_map(s, t).expect("same type"))
        })
        .collect();
    if ss.kind() == StructureKind::Rover && rng.gen_bool(0.5) {
        let g = GrigWord::random(rng, 6);
        let Domain::Cone(w) = d else {
            unreachable!("Röver domains are cones")
        };
        let twist = PartialMap::twist(g, w.clone(), w.clone());
        let back = twist.invert();
        out = out
            .iter()
            .map(|m| {
                let q = a.translate(&back, &m.source()).expect("inside d");
                a.compose(m, &a.restrict(&twist, &q).expect("inside d"))
            })
            .collect();
    }
    out
}

/// A random element of `𝕊(d, d')` for a random `d'` of the same type.
pub fn random_structure_map<R: Rng>(ss: &SStructure, d: &Domain, rng: &mut R) -> PartialMap {
    let e = random_same_type(ss, d, rng, 3);
    let set = ss.structure_set(d, &e);
    set.choose(rng)
        .cloned()
        .unwrap_or_else(|| ss.action().plain_map(d, &e).expect("same type"))
}

/// A random class `[f, D̂]` with `f` a random locally determined embedding.
pub fn random_class(ss: &SStructure, rng: &mut impl Rng) -> ClassPair {
    let a = ss.action();
    let t = rng.gen_range(0..ss.type_count());
    let base = ss.transversal(t);
    let f = GammaElement::new(a, random_embedding(ss, &base, rng))
        .expect("random embeddings are injective");
    make_class(ss, &f).expect("embeddings of a domain have a class")
}

/// The vertex `{[id, R]}` over the root domains.
pub fn root_vertex(ss: &SStructure) -> Pseudovertex {
    let pairs = ss
        .action()
        .root_domains()
        .iter()
        .map(|r| identity_class(ss, r).expect("root domains have a type"))
        .collect();
    Pseudovertex::new(ss, pairs).expect("root domains are disjoint")
}

/// A vertex reached from the root by `steps` random simple expansions.
pub fn random_vertex(ss: &SStructure, rng: &mut impl Rng, steps: usize) -> Pseudovertex {
    let mut v = root_vertex(ss);
    for _ in 0..steps {
        let options: Vec<(ClassPair, Vec<Vec<ClassPair>>)> = v
            .pairs()
            .iter()
            .map(|b| (b.clone(), simple_expansions_of(ss, b)))
            .filter(|(_, e)| !e.is_empty())
            .collect();
        let Some((b, kids)) = options.choose(rng) else {
            break;
        };
        let pick = kids.choose(rng).expect("filtered non-empty");
        v = v.replace(b, pick);
    }
    v
}

/// A random element of `Γ`: the transporter between two random vertices of equal type.
pub fn random_gamma(ss: &SStructure, rng: &mut impl Rng, steps: usize) -> GammaElement {
    let a = ss.action();
    for _ in 0..8 {
        let v1 = random_vertex(ss, rng, steps);
        let v2 = random_vertex(ss, rng, steps);
        if let Ok(g) = transporter(ss, &v1, &v2) {
            return g;
        }
    }
    GammaElement::identity(a, &a.root_domains())
}
