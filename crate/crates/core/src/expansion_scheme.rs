//! Expansion schemes and preschemes: the trivial, maximal-partition,
//! product-subset and Röver schemes, extension of preschemes, the scheme
//! axioms, ℰ-expansions, ℰ-chains and contracting type vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::core_action::{Domain, PartialMap};
use crate::gamma_group::GammaElement;
use crate::pseudovertex::{
    act, expand_pair, identity_class, make_class, ClassPair, OrderOracle, Pseudovertex, PvError,
    TypeVector, Verdict,
};
use crate::report::{AxiomReport, Tally};
use crate::s_structure::{SStructure, StructureKind};
use crate::sampling;
use crate::semigroups::grig::{GrigWord, A};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("scheme {scheme} needs a different structure than {structure}")]
    Illegal { scheme: String, structure: String },
    #[error("unknown scheme {0:?}")]
    Unknown(String),
    #[error("the prescheme has no entry for domain type {0}")]
    MissingType(usize),
    #[error("prescheme axiom {axiom} fails: {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("more than {0} predecessors")]
    Budget(usize),
    #[error(transparent)]
    Pseudovertex(#[from] PvError),
}

/// `ℰ′` on the transversal: domain type ↦ pseudovertices with image `D̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prescheme {
    table: BTreeMap<usize, Vec<Pseudovertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Trivial,
    MaxPartition,
    ProductSubsets,
    Rover,
    FromPrescheme(Prescheme),
}

impl SchemeKind {
    /// Parses the built-in kinds: `trivial`, `maxpart`, `prodsub`, `rover`.
    pub fn parse(s: &str) -> Result<SchemeKind, SchemeError> {
        match s {
            "trivial" => Ok(SchemeKind::Trivial),
            "maxpart" => Ok(SchemeKind::MaxPartition),
            "prodsub" => Ok(SchemeKind::ProductSubsets),
            "rover" => Ok(SchemeKind::Rover),
            _ => Err(SchemeError::Unknown(s.to_string())),
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Trivial => "trivial",
            SchemeKind::MaxPartition => "maxpart",
            SchemeKind::ProductSubsets => "prodsub",
            SchemeKind::Rover => "rover",
            SchemeKind::FromPrescheme(_) => "prescheme",
        })
    }
}

/// Deliberate defects used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeCorruption {
    /// Removes the members with a non-identity class from `ℰ([id, R])` for root domains `R`.
    DropNonstandard,
}

#[derive(Clone, Debug)]
pub struct Scheme {
    structure: SStructure,
    kind: SchemeKind,
    declared_n_connected: bool,
    corruption: Option<SchemeCorruption>,
    templates: OnceLock<Vec<Template>>,
}

/// A non-trivial member of `ℰ(b̂)` on a transversal, prepared for contraction search.
#[derive(Clone, Debug)]
struct Template {
    vector: TypeVector,
    /// `(type, f⁻¹)` for each pair `[f, E]` of the member.
    pairs: Vec<(usize, GammaElement)>,
}

impl Scheme {
    pub fn new(structure: SStructure, kind: SchemeKind) -> Result<Scheme, SchemeError> {
        let sk = structure.kind();
        let ok = match &kind {
            SchemeKind::Trivial => true,
            SchemeKind::MaxPartition => sk == StructureKind::Maximal,
            SchemeKind::ProductSubsets => sk == StructureKind::ProductBrin,
            SchemeKind::Rover => sk == StructureKind::Rover,
            SchemeKind::FromPrescheme(p) => {
                if let Some(t) = (0..structure.type_count()).find(|t| !p.table.contains_key(t)) {
                    return Err(SchemeError::MissingType(t));
                }
                true
            }
        };
        if !ok {
            return Err(SchemeError::Illegal {
                scheme: kind.to_string(),
                structure: sk.to_string(),
            });
        }
        let declared_n_connected = matches!(
            kind,
            SchemeKind::MaxPartition | SchemeKind::ProductSubsets | SchemeKind::Rover
        );
        Ok(Scheme {
            structure,
            kind,
            declared_n_connected,
            corruption: None,
            templates: OnceLock::new(),
        })
    }

    /// The built-in scheme matching the structure's kind.
    pub fn natural(structure: SStructure) -> Scheme {
        let kind = match structure.kind() {
            StructureKind::Maximal => SchemeKind::MaxPartition,
            StructureKind::Rover => SchemeKind::Rover,
            StructureKind::ProductBrin => SchemeKind::ProductSubsets,
        };
        Scheme::new(structure, kind).expect("natural schemes are legal")
    }

    pub fn corrupted(mut self, c: SchemeCorruption) -> Scheme {
        self.corruption = Some(c);
        self.templates = OnceLock::new();
        self
    }

    pub fn structure(&self) -> &SStructure {
        &self.structure
    }

    pub fn kind(&self) -> &SchemeKind {
        &self.kind
    }

    /// Whether the scheme is known to be n-connected for all n. Recorded, not computed.
    pub fn declared_n_connected(&self) -> bool {
        self.declared_n_connected
    }

    /// `ℰ(b)`, sorted and without repeats.
    pub fn e_set(&self, b: &ClassPair) -> Vec<Pseudovertex> {
        let ss = &self.structure;
        let a = ss.action();
        let base = ss.transversal(b.type_id());
        let id = a.identity(&base);
        let single = Pseudovertex::single(b.clone());
        let expand = |pattern: &[Domain]| {
            Pseudovertex::from_pairs(
                expand_pair(ss, b, &id, pattern).expect("maximal splits are patterns"),
            )
        };
        let mut out: BTreeSet<Pseudovertex> = BTreeSet::new();
        out.insert(single.clone());
        match &self.kind {
            SchemeKind::Trivial => {}
            SchemeKind::MaxPartition => {
                let p = a.split_coordinate(&base, 0);
                if p.len() > 1 {
                    out.insert(expand(&p));
                }
            }
            SchemeKind::ProductSubsets => {
                for u in 1u32..(1 << a.arity()) {
                    let mut cells = vec![base.clone()];
                    for i in (0..a.arity()).filter(|i| u & (1 << i) != 0) {
                        cells = cells
                            .iter()
                            .flat_map(|c| a.split_coordinate(c, i))
                            .collect();
                    }
                    if cells.len() > 1 {
                        out.insert(expand(&cells));
                    }
                }
            }
            SchemeKind::Rover => {
                let Domain::Cone(w) = &base else {
                    unreachable!("Röver domains are cones")
                };
                let (w0, w1) = (w.child(0), w.child(1));
                let halves = a.split_coordinate(&base, 0);
                out.insert(expand(&halves));
                let twist = PartialMap::twist(GrigWord::generator(A), w0.clone(), w0.clone());
                let fa = b
                    .map()
                    .compose(a, &GammaElement::from_disjoint(a, vec![twist]));
                let right = GammaElement::from_disjoint(
                    a,
                    b.map().restrict_pieces(a, &Domain::Cone(w1.clone())),
                );
                let nonstandard = [fa, right]
                    .iter()
                    .map(|g| make_class(ss, g))
                    .collect::<Result<Vec<_>, _>>();
                out.insert(Pseudovertex::from_pairs(
                    nonstandard.expect("restrictions of a class are classes"),
                ));
                let quarters = vec![
                    Domain::Cone(w0.child(0)),
                    Domain::Cone(w0.child(1)),
                    Domain::Cone(w1),
                ];
                out.insert(expand(&quarters));
            }
            SchemeKind::FromPrescheme(p) => {
                for w in &p.table[&b.type_id()] {
                    out.insert(
                        act(ss, b.map(), w).expect("prescheme members lie in the transversal"),
                    );
                }
            }
        }
        if self.corruption == Some(SchemeCorruption::DropNonstandard) && self.is_root_identity(b) {
            out.retain(|v| v.pairs().iter().all(|p| self.is_identity_class(p)));
        }
        out.into_iter().collect()
    }

    fn is_identity_class(&self, p: &ClassPair) -> bool {
        let ss = &self.structure;
        match ss.action().region_as_domain(&p.image()) {
            Some(d) => identity_class(ss, &d).map(|c| c == *p).unwrap_or(false),
            None => false,
        }
    }

    fn is_root_identity(&self, b: &ClassPair) -> bool {
        let roots = self.structure.action().root_domains();
        self.is_identity_class(b) && b.image().len() == 1 && roots.contains(&b.image()[0])
    }

    /// All ℰ-expansions of `v`: unions of one member of `ℰ(b)` per pair `b`.
    pub fn e_expansions(&self, v: &Pseudovertex) -> impl Iterator<Item = Pseudovertex> {
        let menus: Vec<Vec<Pseudovertex>> = v.pairs().iter().map(|b| self.e_set(b)).collect();
        let total: usize = menus.iter().map(Vec::len).product();
        (0..total).map(move |mut k| {
            let parts: Vec<Pseudovertex> = menus
                .iter()
                .map(|m| {
                    let pick = m[k % m.len()].clone();
                    k /= m.len();
                    pick
                })
                .collect();
            Pseudovertex::union(&parts)
        })
    }

    /// Whether `w` results from an ℰ-expansion of `v`.
    pub fn is_e_expansion(&self, v: &Pseudovertex, w: &Pseudovertex) -> bool {
        let mut used = 0;
        for b in v.pairs() {
            let inside = w.inside(&self.structure, &b.image());
            if inside.is_empty() {
                return false;
            }
            used += inside.len();
            if !self.e_set(b).contains(&Pseudovertex::from_pairs(inside)) {
                return false;
            }
        }
        used == w.rank()
    }

    /// Whether `chain` is an ℰ-chain: strictly increasing, each member an
    /// ℰ-expansion of the first.
    pub fn is_e_chain(&self, chain: &[Pseudovertex]) -> bool {
        let Some(first) = chain.first() else {
            return false;
        };
        if chain.windows(2).any(|w| w[0].rank() >= w[1].rank()) {
            return false;
        }
        if !chain[1..].iter().all(|w| self.is_e_expansion(first, w)) {
            return false;
        }
        let mut oracle = OrderOracle::new(&self.structure);
        chain
            .windows(2)
            .all(|w| oracle.compare(&w[0], &w[1]) == Verdict::True)
    }

    /// Type vectors of `ℰ(b̂) − {b̂}` over the transversal.
    pub fn contracting_vectors(&self) -> BTreeSet<TypeVector> {
        let ss = &self.structure;
        let mut out = BTreeSet::new();
        for t in 0..ss.type_count() {
            let b =
                identity_class(ss, &ss.transversal(t)).expect("transversal domains have classes");
            for w in self.e_set(&b) {
                if w.rank() > 1 || w.pairs()[0] != b {
                    out.insert(w.type_vector(ss));
                }
            }
        }
        out
    }

    pub fn is_contracting(&self, p: &Pseudovertex) -> bool {
        self.contracting_vectors()
            .contains(&p.type_vector(&self.structure))
    }

    /// The least `C1` such that every type vector of total at least `C1`
    /// dominates a contracting vector, or `None` when no such constant exists.
    pub fn rich_constant(&self) -> Option<usize> {
        let k = self.structure.type_count();
        rich_constant_of(&self.contracting_vectors(), k)
    }

    fn templates(&self) -> &[Template] {
        self.templates.get_or_init(|| {
            let ss = &self.structure;
            let a = ss.action();
            let mut out = Vec::new();
            for t in 0..ss.type_count() {
                let b = identity_class(ss, &ss.transversal(t))
                    .expect("transversal domains have classes");
                for w in self.e_set(&b) {
                    if w.rank() < 2 {
                        continue;
                    }
                    let pairs = w
                        .pairs()
                        .iter()
                        .map(|p| (p.type_id(), p.map().invert(a)))
                        .collect();
                    out.push(Template {
                        vector: w.type_vector(ss),
                        pairs,
                    });
                }
            }
            out
        })
    }

    /// Upper bound on the number of candidate maps [`Scheme::contractions`] tries for `p`.
    fn contraction_work(&self, p: &Pseudovertex) -> usize {
        let ss = &self.structure;
        let tv = p.type_vector(ss);
        self.templates()
            .iter()
            .filter(|m| m.vector == tv)
            .map(|m| {
                let perms: usize = tv.0.iter().map(|&k| (1..=k).product::<usize>()).product();
                let twists: usize = m.pairs.iter().map(|(t, _)| ss.group(*t).len()).product();
                perms.saturating_mul(twists)
            })
            .sum()
    }

    /// All classes `b` with `p ∈ ℰ(b)`, for `p` of rank at least 2.
    ///
    /// If `p = f · m` for a member `m` of `ℰ(b̂)`, then on the image of each
    /// pair `[g, E]` of `m` the map `f` is `p_j ∘ h ∘ g⁻¹` for the matching
    /// pair `p_j` of `p` and some `h` in the structure group of its type.
    pub fn contractions(&self, p: &Pseudovertex) -> Vec<ClassPair> {
        let ss = &self.structure;
        let a = ss.action();
        let tv = p.type_vector(ss);
        let mut out = BTreeSet::new();
        for m in self.templates().iter().filter(|m| m.vector == tv) {
            let mut stack: Vec<(usize, Vec<bool>, Vec<PartialMap>)> =
                vec![(0, vec![false; p.rank()], Vec::new())];
            while let Some((i, used, pieces)) = stack.pop() {
                if i == m.pairs.len() {
                    if let Ok(f) = GammaElement::new(a, pieces) {
                        if let Ok(b) = make_class(ss, &f) {
                            out.insert(b);
                        }
                    }
                    continue;
                }
                let (t, inv) = &m.pairs[i];
                for (j, q) in p.pairs().iter().enumerate() {
                    if used[j] || q.type_id() != *t {
                        continue;
                    }
                    for h in ss.group(*t) {
                        let qh = q.map().compose(a, &GammaElement::from_disjoint(a, vec![h]));
                        let mut next = pieces.clone();
                        next.extend(qh.compose(a, inv).pieces().iter().cloned());
                        let mut u = used.clone();
                        u[j] = true;
                        stack.push((i + 1, u, next));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// All `w ≠ v` such that `v` is an ℰ-expansion of `w`, failing beyond `max` results.
    pub fn e_predecessors(
        &self,
        v: &Pseudovertex,
        max: usize,
    ) -> Result<Vec<Pseudovertex>, SchemeError> {
        let ss = &self.structure;
        let vectors: BTreeSet<TypeVector> =
            self.templates().iter().map(|m| m.vector.clone()).collect();
        let sizes: BTreeSet<usize> = vectors.iter().map(TypeVector::rank).collect();
        let pairs = v.pairs();
        let n = pairs.len();
        let mut memo: BTreeMap<Vec<usize>, Vec<ClassPair>> = BTreeMap::new();
        let mut out = BTreeSet::new();
        // Each frame: next pair index, assignment mask, merged classes so far.
        let mut stack: Vec<(usize, Vec<bool>, Vec<ClassPair>)> =
            vec![(0, vec![false; n], Vec::new())];
        while let Some((i, taken, merged)) = stack.pop() {
            let Some(x) = (i..n).find(|&k| !taken[k]) else {
                if !merged.is_empty() {
                    let mut w: Vec<ClassPair> = (0..n)
                        .filter(|&k| !taken[k])
                        .map(|k| pairs[k].clone())
                        .collect();
                    w.extend(merged);
                    out.insert(Pseudovertex::from_pairs(w));
                    if out.len() > max {
                        return Err(SchemeError::Budget(max));
                    }
                }
                continue;
            };
            stack.push((x + 1, taken.clone(), merged.clone()));
            let free: Vec<usize> = (x + 1..n).filter(|&k| !taken[k]).collect();
            for &size in sizes.iter().filter(|&&s| s >= 2 && s - 1 <= free.len()) {
                for rest in combinations(&free, size - 1) {
                    let mut idx = vec![x];
                    idx.extend(rest);
                    let p =
                        Pseudovertex::from_pairs(idx.iter().map(|&k| pairs[k].clone()).collect());
                    if !vectors.contains(&p.type_vector(ss)) {
                        continue;
                    }
                    if !memo.contains_key(&idx) {
                        if self.contraction_work(&p) > max.saturating_mul(64) {
                            return Err(SchemeError::Budget(max));
                        }
                        memo.insert(idx.clone(), self.contractions(&p));
                    }
                    for b in &memo[&idx] {
                        let mut t = taken.clone();
                        for &k in &idx {
                            t[k] = true;
                        }
                        let mut m = merged.clone();
                        m.push(b.clone());
                        stack.push((x + 1, t, m));
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Checks the scheme axioms on sampled classes and acting elements.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> AxiomReport {
        let ss = &self.structure;
        let a = ss.action();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cases: Vec<(ClassPair, GammaElement)> = Vec::new();
        let roots = a.root_domains();
        for r in &roots {
            for h in ss.structure_set(r, r) {
                let mut pieces: Vec<PartialMap> = roots
                    .iter()
                    .filter(|x| *x != r)
                    .map(|x| a.identity(x))
                    .collect();
                pieces.push(h);
                let s = GammaElement::new(a, pieces).expect("structure maps fix their root");
                cases.push((identity_class(ss, r).expect("roots have classes"), s));
            }
        }
        while cases.len() < samples {
            let b = if rng.gen_bool(0.5) {
                sampling::random_class(ss, &mut rng)
            } else {
                let v = sampling::random_vertex(ss, &mut rng, 4);
                v.pairs()[rng.gen_range(0..v.rank())].clone()
            };
            cases.push((b, sampling::random_gamma(ss, &mut rng, 3)));
        }
        let mut tallies: Vec<Tally> = ["E1", "E2", "E3", "E4"]
            .iter()
            .map(|n| Tally::new(n))
            .collect();
        let mut oracle = OrderOracle::new(ss);
        for (b, s) in cases.iter().take(samples.max(1)) {
            let menu = self.e_set(b);
            let single = Pseudovertex::single(b.clone());
            let bad = menu
                .iter()
                .find(|w| oracle.compare(&single, w) != Verdict::True);
            tallies[0].record(bad.is_none(), || {
                format!("{{{b}}} is not below {}", bad.unwrap())
            });
            tallies[1].record(menu.contains(&single), || {
                format!("{{{b}}} missing from its own set")
            });
            let moved = act(ss, s, &single).map(|m| m.pairs()[0].clone());
            let lhs: Result<BTreeSet<Pseudovertex>, PvError> =
                menu.iter().map(|w| act(ss, s, w)).collect();
            let (ok, witness) = match (moved, lhs) {
                (Ok(sb), Ok(lhs)) => {
                    let rhs: BTreeSet<Pseudovertex> = self.e_set(&sb).into_iter().collect();
                    let diff: Vec<String> = lhs
                        .symmetric_difference(&rhs)
                        .map(|v| v.to_string())
                        .collect();
                    (
                        diff.is_empty(),
                        format!("b = {b}, s = {s}: sets differ at {}", diff.join(", ")),
                    )
                }
                (Err(e), _) | (_, Err(e)) => (false, format!("b = {b}, s = {s}: {e}")),
            };
            tallies[2].record(ok, || witness);
            let mut failure = None;
            for w1 in &menu {
                for w2 in &menu {
                    if w1 != w2
                        && oracle.compare(w1, w2) == Verdict::True
                        && !self.is_e_expansion(w1, w2)
                    {
                        failure.get_or_insert_with(|| format!("{w1} <= {w2} without an expansion"));
                    }
                }
            }
            tallies[3].record(failure.is_none(), || failure.unwrap());
        }
        AxiomReport {
            checks: tallies.into_iter().map(Tally::finish).collect(),
        }
    }
}

/// Exact rich constant over the lattice of type vectors with `k` coordinates.
pub fn rich_constant_of(contracting: &BTreeSet<TypeVector>, k: usize) -> Option<usize> {
    let mut bounds = Vec::with_capacity(k);
    for i in 0..k {
        let pure = contracting
            .iter()
            .filter(|c| c.0.iter().enumerate().all(|(j, &x)| j == i || x == 0))
            .map(|c| c.0[i])
            .min()?;
        bounds.push(pure.max(1));
    }
    let mut best = 0;
    let mut w = vec![0usize; k];
    loop {
        let tv = TypeVector(w.clone());
        if !contracting.iter().any(|c| tv.dominates(c)) {
            best = best.max(tv.rank());
        }
        let mut i = 0;
        loop {
            if i == k {
                return Some(best + 1);
            }
            w[i] += 1;
            if w[i] < bounds[i] {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

impl Prescheme {
    pub fn new(table: BTreeMap<usize, Vec<Pseudovertex>>) -> Prescheme {
        Prescheme { table }
    }

    /// The restriction of a scheme to the transversal classes `[id, D̂]`.
    pub fn of(scheme: &Scheme) -> Prescheme {
        let ss = scheme.structure();
        let table = (0..ss.type_count())
            .map(|t| {
                let b = identity_class(ss, &ss.transversal(t))
                    .expect("transversal domains have classes");
                (t, scheme.e_set(&b))
            })
            .collect();
        Prescheme { table }
    }

    /// The trivial prescheme `ℰ′([id, D̂]) = {{[id, D̂]}}`.
    pub fn trivial(ss: &SStructure) -> Prescheme {
        let table = (0..ss.type_count())
            .map(|t| {
                let b = identity_class(ss, &ss.transversal(t))
                    .expect("transversal domains have classes");
                (t, vec![Pseudovertex::single(b)])
            })
            .collect();
        Prescheme { table }
    }

    pub fn table(&self) -> &BTreeMap<usize, Vec<Pseudovertex>> {
        &self.table
    }

    /// Exhaustive checks of the prescheme axioms; the sets and structure groups are finite.
    pub fn verify(&self, ss: &SStructure) -> AxiomReport {
        let a = ss.action();
        let mut tallies: Vec<Tally> = ["E'1", "E'2", "E'3", "E'4"]
            .iter()
            .map(|n| Tally::new(n))
            .collect();
        let extended = Scheme {
            structure: ss.clone(),
            kind: SchemeKind::FromPrescheme(self.clone()),
            declared_n_connected: false,
            corruption: None,
            templates: OnceLock::new(),
        };
        let mut oracle = OrderOracle::new(ss);
        for t in 0..ss.type_count() {
            let base = ss.transversal(t);
            let b = identity_class(ss, &base).expect("transversal domains have classes");
            let single = Pseudovertex::single(b.clone());
            let Some(menu) = self.table.get(&t) else {
                tallies[1].record(false, || format!("no entry for type {t}"));
                continue;
            };
            let bad = menu
                .iter()
                .find(|w| oracle.compare(&single, w) != Verdict::True);
            tallies[0].record(bad.is_none(), || {
                format!("{single} is not below {}", bad.unwrap())
            });
            tallies[1].record(menu.contains(&single), || {
                format!("{single} missing for type {t}")
            });
            let set: BTreeSet<&Pseudovertex> = menu.iter().collect();
            for h in ss.group(t) {
                let g = GammaElement::from_disjoint(a, vec![h.clone()]);
                let moved: Result<BTreeSet<Pseudovertex>, PvError> =
                    menu.iter().map(|w| act(ss, &g, w)).collect();
                let ok = moved
                    .as_ref()
                    .map(|m| m.iter().collect::<BTreeSet<_>>() == set)
                    .unwrap_or(false);
                tallies[2].record(ok, || format!("{h} does not preserve the set of type {t}"));
            }
            for w1 in menu {
                for w2 in menu {
                    if w1 != w2 && oracle.compare(w1, w2) == Verdict::True {
                        let ok = extended.is_e_expansion(w1, w2);
                        tallies[3].record(ok, || format!("{w1} <= {w2} without an expansion"));
                    }
                }
            }
        }
        AxiomReport {
            checks: tallies.into_iter().map(Tally::finish).collect(),
        }
    }
}

/// The scheme `ℰ([f, D]) = f · ℰ′([id, D̂])` generated by a prescheme.
pub fn extend_prescheme(ss: &SStructure, p: Prescheme) -> Result<Scheme, SchemeError> {
    let report = p.verify(ss);
    if let Some(bad) = report.failures().next() {
        return Err(SchemeError::Axiom {
            axiom: bad.axiom.clone(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    Scheme::new(ss.clone(), SchemeKind::FromPrescheme(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudovertex::parse_class;
    use crate::semigroups::{make_action, ActionSpec};

    fn scheme(spec: &str, kind: StructureKind) -> Scheme {
        let ss = SStructure::new(
            make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
            kind,
        )
        .unwrap();
        Scheme::natural(ss)
    }

    fn pv(s: &Scheme, t: &str) -> Pseudovertex {
        Pseudovertex::parse(s.structure(), t).unwrap()
    }

    #[test]
    fn rover_set_at_the_root() {
        let r = scheme("ROVER", StructureKind::Rover);
        let b = parse_class(r.structure(), "sig e->e").unwrap();
        let texts: Vec<String> = r.e_set(&b).iter().map(|v| v.to_string()).collect();
        assert_eq!(
            texts,
            vec![
                "{ rov[a] e->0 ; sig e->1 }",
                "{ sig e->0 ; sig e->1 }",
                "{ sig e->00 ; sig e->01 ; sig e->1 }",
                "{ sig e->e }",
            ]
        );
    }

    #[test]
    fn collapsed_and_product_sets() {
        let q = scheme("QV", StructureKind::Maximal);
        let pt = parse_class(q.structure(), "tau e->0").unwrap();
        assert_eq!(q.e_set(&pt).len(), 1);
        let p = scheme("prod(V2,V2)", StructureKind::ProductBrin);
        let b = parse_class(p.structure(), "tup(sig e->0|sig e->1)").unwrap();
        assert_eq!(p.e_set(&b).len(), 4);
    }

    #[test]
    fn expansions_and_chains() {
        let v = scheme("V2", StructureKind::Maximal);
        let two = pv(&v, "{ sig e->0 ; sig e->1 }");
        assert_eq!(v.e_expansions(&two).count(), 4);
        let top = pv(&v, "{ sig e->e }");
        let three = pv(&v, "{ sig e->00 ; sig e->01 ; sig e->1 }");
        assert!(v.is_e_chain(std::slice::from_ref(&top)));
        assert!(v.is_e_chain(&[top.clone(), two.clone()]));
        assert!(!v.is_e_chain(&[top, three.clone()]));
        assert!(v.is_e_chain(&[two, three]));
    }

    #[test]
    fn contracting_vectors_and_constants() {
        let tv = |x: &[usize]| TypeVector(x.to_vec());
        let q = scheme("QV", StructureKind::Maximal);
        assert_eq!(q.contracting_vectors(), [tv(&[1, 2])].into_iter().collect());
        assert_eq!(q.rich_constant(), None);
        assert_eq!(
            scheme("V2", StructureKind::Maximal).rich_constant(),
            Some(2)
        );
        assert_eq!(
            scheme("V4", StructureKind::Maximal).rich_constant(),
            Some(4)
        );
        let r = scheme("ROVER", StructureKind::Rover);
        assert_eq!(
            r.contracting_vectors(),
            [tv(&[2]), tv(&[3])].into_iter().collect()
        );
        assert_eq!(r.rich_constant(), Some(2));
    }

    #[test]
    fn prescheme_extension_matches_closed_form() {
        let r = scheme("ROVER", StructureKind::Rover);
        let ext = extend_prescheme(r.structure(), Prescheme::of(&r)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let b = sampling::random_class(r.structure(), &mut rng);
            assert_eq!(r.e_set(&b), ext.e_set(&b), "at {b}");
        }
        let triv = extend_prescheme(r.structure(), Prescheme::trivial(r.structure())).unwrap();
        let b = sampling::random_class(r.structure(), &mut rng);
        assert_eq!(triv.e_set(&b), vec![Pseudovertex::single(b)]);
    }

    #[test]
    fn contractions_and_predecessors() {
        let v = scheme("V2", StructureKind::Maximal);
        let two = pv(&v, "{ sig e->0 ; sig e->1 }");
        let merged: Vec<String> = v.contractions(&two).iter().map(|b| b.to_string()).collect();
        assert_eq!(merged.len(), 2, "{merged:?}");
        assert!(merged.contains(&"sig e->e".to_string()));
        assert_eq!(v.e_predecessors(&two, 100).unwrap().len(), 2);
        let three = pv(&v, "{ sig e->00 ; sig e->01 ; sig e->1 }");
        assert_eq!(v.e_predecessors(&three, 100).unwrap().len(), 6);
        let four = pv(&v, "{ sig e->00 ; sig e->01 ; sig e->10 ; sig e->11 }");
        assert_eq!(v.e_predecessors(&four, 100).unwrap().len(), 12 + 12);
        assert!(matches!(
            v.e_predecessors(&four, 5),
            Err(SchemeError::Budget(5))
        ));
        let r = scheme("ROVER", StructureKind::Rover);
        let top = pv(&r, "{ sig e->e }");
        for w in r.e_set(&top.pairs()[0]).iter().filter(|w| w.rank() > 1) {
            let preds = r.e_predecessors(w, 1000).unwrap();
            assert_eq!(preds.len(), if w.rank() == 2 { 16 } else { 144 });
            assert!(preds.contains(&top), "{w}: {preds:?}");
            for u in &preds {
                assert!(r.is_e_expansion(u, w));
            }
        }
    }

    #[test]
    fn axioms_and_negative_control() {
        let r = scheme("ROVER", StructureKind::Rover);
        let rep = r.verify_axioms(40, 1);
        assert!(rep.passed(), "{rep:?}");
        let bad = r
            .clone()
            .corrupted(SchemeCorruption::DropNonstandard)
            .verify_axioms(40, 1);
        assert!(!bad.passed());
        assert!(Scheme::new(r.structure().clone(), SchemeKind::MaxPartition).is_err());
    }
}
