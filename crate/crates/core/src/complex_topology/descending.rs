//! Finite fragments of the complex whose simplices are ℰ-chains: descending
//! links and stars, their partitioned versions, standard covers, intervals
//! and filtration levels.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{
    nerve, simplicial_product, HomologyProfile, PosetComplex, SimplicialComplex, TopologyError,
};
use crate::core_action::Domain;
use crate::expansion_scheme::{Scheme, SchemeError};
use crate::gamma_group::GammaElement;
use crate::pseudovertex::{
    act, identity_class, simple_expansions, ClassPair, OrderOracle, Pseudovertex, Verdict,
};

/// Caps for every enumeration; exceeding one is an error, never a silent cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_vertices: usize,
    /// Predecessors enumerated before any filtering by a partition.
    pub max_candidates: usize,
    pub max_simplices: usize,
    /// Build only this skeleton.
    pub max_dim: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 5_000,
            max_candidates: 50_000,
            max_simplices: 500_000,
            max_dim: None,
        }
    }
}

impl TopologyError {
    /// Whether the failure is an exhausted budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            TopologyError::Budget(_)
                | TopologyError::Scheme(SchemeError::Budget(_))
                | TopologyError::Pseudovertex(crate::pseudovertex::PvError::Budget(_))
        )
    }
}

/// A complex whose vertices are pseudovertices, labelled by their text.
#[derive(Clone, Debug)]
pub struct Fragment {
    pub vertices: Vec<Pseudovertex>,
    pub complex: SimplicialComplex,
}

impl Fragment {
    pub fn index_of(&self, v: &Pseudovertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }
}

/// The relation "`w2` is an ℰ-expansion of `w1` and `w2 ≠ w1`", with memoized ℰ-sets.
pub struct ExpansionRelation<'a> {
    scheme: &'a Scheme,
    sets: HashMap<ClassPair, BTreeSet<Pseudovertex>>,
}

impl<'a> ExpansionRelation<'a> {
    pub fn new(scheme: &'a Scheme) -> ExpansionRelation<'a> {
        ExpansionRelation {
            scheme,
            sets: HashMap::new(),
        }
    }

    pub fn holds(&mut self, w1: &Pseudovertex, w2: &Pseudovertex) -> bool {
        if w1.rank() >= w2.rank() {
            return false;
        }
        let ss = self.scheme.structure();
        let mut used = 0;
        for b in w1.pairs() {
            if w2.contains(b) {
                used += 1;
                continue;
            }
            let inside = w2.inside(ss, &b.image());
            if inside.is_empty() {
                return false;
            }
            used += inside.len();
            let scheme = self.scheme;
            let set = self
                .sets
                .entry(b.clone())
                .or_insert_with(|| scheme.e_set(b).into_iter().collect());
            if !set.contains(&Pseudovertex::from_pairs(inside)) {
                return false;
            }
        }
        used == w2.rank()
    }
}

/// The clique complex of the ℰ-expansion relation on `vertices`.
pub fn e_complex(
    scheme: &Scheme,
    vertices: Vec<Pseudovertex>,
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    if vertices.len() > budget.max_vertices {
        return Err(TopologyError::Budget(format!(
            "more than {} vertices",
            budget.max_vertices
        )));
    }
    let mut rel = ExpansionRelation::new(scheme);
    let n = vertices.len();
    let mut adjacent = vec![BTreeSet::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rel.holds(&vertices[i], &vertices[j]) {
                adjacent[i].insert(j);
                adjacent[j].insert(i);
            }
        }
    }
    let labels = vertices.iter().map(Pseudovertex::to_string).collect();
    let complex =
        SimplicialComplex::from_cliques(labels, &adjacent, budget.max_dim, budget.max_simplices)?;
    Ok(Fragment { vertices, complex })
}

fn predecessors(
    scheme: &Scheme,
    v: &Pseudovertex,
    budget: &Budget,
) -> Result<Vec<Pseudovertex>, TopologyError> {
    scheme
        .e_predecessors(v, budget.max_candidates)
        .map_err(|e| match e {
            SchemeError::Budget(n) => {
                TopologyError::Budget(format!("more than {n} predecessors of {v}"))
            }
            other => other.into(),
        })
}

/// `lk↓(v)`: the ℰ-predecessors of `v` and the ℰ-chains among them.
pub fn descending_link(
    scheme: &Scheme,
    v: &Pseudovertex,
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    e_complex(scheme, predecessors(scheme, v, budget)?, budget)
}

/// `st↓(v)`: the descending link coned off by `v`.
pub fn descending_star(
    scheme: &Scheme,
    v: &Pseudovertex,
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    let mut vertices = predecessors(scheme, v, budget)?;
    vertices.push(v.clone());
    e_complex(scheme, vertices, budget)
}

/// Every `w` that reaches `v` through ℰ-expansions, with the ℰ-chains among them.
pub fn complex_below(
    scheme: &Scheme,
    v: &Pseudovertex,
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    let mut seen: BTreeSet<Pseudovertex> = BTreeSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(w) = queue.pop_front() {
        for u in predecessors(scheme, &w, budget)? {
            if seen.insert(u.clone()) {
                if seen.len() > budget.max_vertices {
                    return Err(TopologyError::Budget(format!(
                        "more than {} vertices below {v}",
                        budget.max_vertices
                    )));
                }
                queue.push_back(u);
            }
        }
    }
    e_complex(scheme, seen.into_iter().collect(), budget)
}

/// Checks that `parts` partition the pairs of `v`.
fn check_parts(v: &Pseudovertex, parts: &[Pseudovertex]) -> Result<(), TopologyError> {
    let mut seen = BTreeSet::new();
    for p in parts {
        for b in p.pairs() {
            if !v.contains(b) {
                return Err(TopologyError::InvalidPart(format!(
                    "{b} is not a pair of {v}"
                )));
            }
            if !seen.insert(b.clone()) {
                return Err(TopologyError::InvalidPart(format!("{b} lies in two parts")));
            }
        }
    }
    if seen.len() != v.rank() {
        return Err(TopologyError::InvalidPart(format!(
            "the parts miss pairs of {v}"
        )));
    }
    Ok(())
}

/// Whether every pair of `w` lies inside the image of a single part.
fn respects(scheme: &Scheme, w: &Pseudovertex, parts: &[Pseudovertex]) -> bool {
    let a = scheme.structure().action();
    let images: Vec<Vec<Domain>> = parts.iter().map(Pseudovertex::image).collect();
    w.pairs()
        .iter()
        .all(|b| images.iter().any(|im| a.region_subset(&b.image(), im)))
}

/// `lk↓(v_𝒫)`: predecessors of `v` that contract inside the parts of `𝒫`.
pub fn partitioned_descending_link(
    scheme: &Scheme,
    v: &Pseudovertex,
    parts: &[Pseudovertex],
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    check_parts(v, parts)?;
    let kept = predecessors(scheme, v, budget)?
        .into_iter()
        .filter(|w| respects(scheme, w, parts))
        .collect();
    e_complex(scheme, kept, budget)
}

/// `st↓(v_𝒫)`: the partitioned link coned off by `v`.
pub fn partitioned_descending_star(
    scheme: &Scheme,
    v: &Pseudovertex,
    parts: &[Pseudovertex],
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    check_parts(v, parts)?;
    let mut kept: Vec<Pseudovertex> = predecessors(scheme, v, budget)?
        .into_iter()
        .filter(|w| respects(scheme, w, parts))
        .collect();
    kept.push(v.clone());
    e_complex(scheme, kept, budget)
}

/// The expansion order restricted to a fragment's vertices.
fn order_matrix(
    scheme: &Scheme,
    vertices: &[Pseudovertex],
) -> Result<Vec<Vec<bool>>, TopologyError> {
    let mut oracle = OrderOracle::new(scheme.structure());
    let n = vertices.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j
                || (vertices[i].rank() < vertices[j].rank()
                    && oracle.leq(&vertices[i], &vertices[j])?);
        }
    }
    Ok(leq)
}

/// Outcome of comparing `st↓(v_𝒫)` with `∏ st↓(p_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    /// `φ(t_1, ..., t_k) = ⋃ t_i` carries product simplices to star simplices.
    pub forward: bool,
    /// `ψ(w) = (w ∩ im p_1, ..., w ∩ im p_k)` carries star simplices to product simplices.
    pub backward: bool,
    /// `ψ ∘ φ` and `φ ∘ ψ` are identities on vertices.
    pub inverse: bool,
    pub star_simplices: usize,
    pub product_simplices: usize,
    /// Homology of `lk↓(v_𝒫)` equals homology of the join of the factor links.
    pub join_homology: bool,
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.backward && self.inverse && self.join_homology
    }
}

/// Builds both sides of the product decomposition and compares them.
pub fn product_check(
    scheme: &Scheme,
    v: &Pseudovertex,
    parts: &[Pseudovertex],
    max_dim: usize,
    budget: &Budget,
) -> Result<ProductCheck, TopologyError> {
    let ss = scheme.structure();
    let star = partitioned_descending_star(scheme, v, parts, budget)?;
    let mut factors = Vec::new();
    let mut factor_links = Vec::new();
    for p in parts {
        let s = descending_star(scheme, p, budget)?;
        let leq = order_matrix(scheme, &s.vertices)?;
        factors.push((
            s.vertices.clone(),
            PosetComplex {
                complex: s.complex.clone(),
                leq,
            },
        ));
        factor_links.push(descending_link(scheme, p, budget)?.complex);
    }
    let posets: Vec<PosetComplex> = factors.iter().map(|(_, f)| f.clone()).collect();
    let product = simplicial_product(&posets);
    // Product vertices are labelled "(l_1 | ... | l_k)"; map each to the union.
    let mut phi: HashMap<String, String> = HashMap::new();
    let mut tuple: Vec<usize> = vec![0; factors.len()];
    loop {
        let parts_text: Vec<String> = tuple
            .iter()
            .zip(&factors)
            .map(|(&i, (vs, _))| vs[i].to_string())
            .collect();
        let union: Vec<Pseudovertex> = tuple
            .iter()
            .zip(&factors)
            .map(|(&i, (vs, _))| vs[i].clone())
            .collect();
        phi.insert(
            format!("({})", parts_text.join(" | ")),
            Pseudovertex::union(&union).to_string(),
        );
        let mut k = 0;
        while k < tuple.len() {
            tuple[k] += 1;
            if tuple[k] < factors[k].0.len() {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
        if k == tuple.len() {
            break;
        }
    }
    let mapped = product.relabel(|l| phi[l].clone());
    let (image, star_set) = (
        mapped.labelled_simplices(),
        star.complex.labelled_simplices(),
    );
    let forward =
        image.is_subset(&star_set) && phi.values().collect::<BTreeSet<_>>().len() == phi.len();
    let backward = star_set.is_subset(&image);
    let mut inverse = true;
    for w in &star.vertices {
        let pieces: Vec<Pseudovertex> = parts
            .iter()
            .map(|p| Pseudovertex::from_pairs(w.inside(ss, &p.image())))
            .collect();
        let in_factors = pieces
            .iter()
            .zip(&factors)
            .all(|(x, (vs, _))| vs.contains(x));
        inverse &= in_factors && Pseudovertex::union(&pieces) == *w;
    }
    let link = star.complex.induced(|_, l| l != v.to_string());
    let joined = factor_links
        .iter()
        .fold(None::<SimplicialComplex>, |acc, l| match acc {
            None => Some(l.clone()),
            Some(j) => Some(j.join(l)),
        });
    let joined = joined.unwrap_or_else(SimplicialComplex::empty);
    let join_homology = link.homology(max_dim)? == joined.homology(max_dim)?;
    Ok(ProductCheck {
        forward,
        backward,
        inverse,
        star_simplices: star_set.len(),
        product_simplices: product.simplex_count(),
        join_homology,
    })
}

/// The common refinement of two partitions of the same pseudovertex.
pub fn meet_parts(p1: &[Pseudovertex], p2: &[Pseudovertex]) -> Vec<Pseudovertex> {
    let mut out = Vec::new();
    for x in p1 {
        for y in p2 {
            let common: Vec<ClassPair> = x
                .pairs()
                .iter()
                .filter(|b| y.contains(b))
                .cloned()
                .collect();
            if !common.is_empty() {
                out.push(Pseudovertex::from_pairs(common));
            }
        }
    }
    out.sort();
    out
}

/// Whether `lk↓(v_𝒫1) ∩ lk↓(v_𝒫2) = lk↓(v_{𝒫1 ∧ 𝒫2})` as labelled simplex sets.
pub fn intersection_law(
    scheme: &Scheme,
    v: &Pseudovertex,
    p1: &[Pseudovertex],
    p2: &[Pseudovertex],
    budget: &Budget,
) -> Result<bool, TopologyError> {
    let l1 = partitioned_descending_link(scheme, v, p1, budget)?.complex;
    let l2 = partitioned_descending_link(scheme, v, p2, budget)?.complex;
    let meet = partitioned_descending_link(scheme, v, &meet_parts(p1, p2), budget)?.complex;
    let both: BTreeSet<Vec<String>> = l1
        .labelled_simplices()
        .intersection(&l2.labelled_simplices())
        .cloned()
        .collect();
    Ok(both == meet.labelled_simplices())
}

/// One member of the standard cover: the contracting `p ⊆ v` and `lk↓(v_{p, v−p})`.
#[derive(Clone, Debug)]
pub struct CoverMember {
    pub contracting: Pseudovertex,
    pub link: SimplicialComplex,
}

/// The standard cover of `lk↓(v)`, indexed by contracting sub-pseudovertices with a contraction.
pub fn standard_cover(
    scheme: &Scheme,
    v: &Pseudovertex,
    budget: &Budget,
) -> Result<Vec<CoverMember>, TopologyError> {
    let ss = scheme.structure();
    let vectors = scheme.contracting_vectors();
    let sizes: BTreeSet<usize> = vectors.iter().map(|t| t.rank()).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << v.rank().min(63)) {
        let size = mask.count_ones() as usize;
        if !sizes.contains(&size) || size < 2 {
            continue;
        }
        let (mut inside, mut rest) = (Vec::new(), Vec::new());
        for (i, b) in v.pairs().iter().enumerate() {
            if mask & (1 << i) != 0 {
                inside.push(b.clone());
            } else {
                rest.push(b.clone());
            }
        }
        let p = Pseudovertex::from_pairs(inside);
        if !vectors.contains(&p.type_vector(ss)) || scheme.contractions(&p).is_empty() {
            continue;
        }
        let mut parts = vec![p.clone()];
        if !rest.is_empty() {
            parts.push(Pseudovertex::from_pairs(rest));
        }
        let link = partitioned_descending_link(scheme, v, &parts, budget)?.complex;
        out.push(CoverMember {
            contracting: p,
            link,
        });
        if out.len() > budget.max_vertices {
            return Err(TopologyError::Budget(format!(
                "more than {} cover members",
                budget.max_vertices
            )));
        }
    }
    Ok(out)
}

/// Whether the members' simplices together are exactly those of `lk↓(v)`.
pub fn cover_is_exact(link: &SimplicialComplex, cover: &[CoverMember]) -> bool {
    let mut union = BTreeSet::new();
    for m in cover {
        union.extend(m.link.labelled_simplices());
    }
    union == link.labelled_simplices()
}

/// The nerve of the standard cover.
pub fn cover_nerve(cover: &[CoverMember], max_dim: Option<usize>) -> SimplicialComplex {
    let members: Vec<SimplicialComplex> = cover.iter().map(|m| m.link.clone()).collect();
    nerve(&members, max_dim)
}

/// `Δ^E_{[a,b]}`: the vertices between `a` and `b` in the expansion order.
pub fn interval_complex(
    scheme: &Scheme,
    a: &Pseudovertex,
    b: &Pseudovertex,
    budget: &Budget,
) -> Result<Fragment, TopologyError> {
    let ss = scheme.structure();
    let mut oracle = OrderOracle::new(ss);
    if !oracle.leq(a, b)? {
        return Ok(Fragment {
            vertices: vec![],
            complex: SimplicialComplex::empty(),
        });
    }
    let mut seen: BTreeSet<Pseudovertex> = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(w) = queue.pop_front() {
        if w.rank() >= b.rank() {
            continue;
        }
        for u in simple_expansions(ss, &w) {
            if !seen.contains(&u) && oracle.leq(&u, b)? {
                seen.insert(u.clone());
                if seen.len() > budget.max_vertices {
                    return Err(TopologyError::Budget(format!(
                        "more than {} vertices in [{a}, {b}]",
                        budget.max_vertices
                    )));
                }
                queue.push_back(u);
            }
        }
    }
    e_complex(scheme, seen.into_iter().collect(), budget)
}

/// The order complex of `{w ∈ ℰ(b) : {b} < w ≤ v}`.
pub fn scheme_interval_link(
    scheme: &Scheme,
    b: &ClassPair,
    v: &Pseudovertex,
) -> Result<SimplicialComplex, TopologyError> {
    let mut oracle = OrderOracle::new(scheme.structure());
    let single = Pseudovertex::single(b.clone());
    let mut members = Vec::new();
    for w in scheme.e_set(b) {
        if w != single && oracle.leq(&w, v)? {
            members.push(w);
        }
    }
    let n = members.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j
                || (members[i].rank() < members[j].rank()
                    && oracle.leq(&members[i], &members[j])?);
        }
    }
    let labels = members.iter().map(Pseudovertex::to_string).collect();
    Ok(PosetComplex::order_complex(labels, leq).complex)
}

/// A filtration level `Δ^E(𝒫𝒱_Y)_n` grown from the identity vertex on `Y`.
#[derive(Clone, Debug)]
pub struct FiltrationLevel {
    pub fragment: Fragment,
    /// Some vertex has an ℰ-predecessor outside the fragment, so only part of its orbit is present.
    pub orbit_truncated: bool,
}

pub fn filtration_level(
    scheme: &Scheme,
    region: &[Domain],
    n: usize,
    budget: &Budget,
) -> Result<FiltrationLevel, TopologyError> {
    let ss = scheme.structure();
    let start = Pseudovertex::new(
        ss,
        region
            .iter()
            .map(|d| identity_class(ss, d))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    let mut seen: BTreeSet<Pseudovertex> = BTreeSet::new();
    let mut queue = VecDeque::new();
    if start.rank() <= n {
        seen.insert(start.clone());
        queue.push_back(start);
    }
    while let Some(w) = queue.pop_front() {
        for u in scheme.e_expansions(&w) {
            if u.rank() <= n && !seen.contains(&u) {
                seen.insert(u.clone());
                if seen.len() > budget.max_vertices {
                    return Err(TopologyError::Budget(format!(
                        "more than {} vertices at level {n}",
                        budget.max_vertices
                    )));
                }
                queue.push_back(u);
            }
        }
    }
    let mut orbit_truncated = false;
    for w in seen.iter().filter(|w| w.rank() > 1) {
        if predecessors(scheme, w, budget)?
            .iter()
            .any(|u| !seen.contains(u))
        {
            orbit_truncated = true;
            break;
        }
    }
    let fragment = e_complex(scheme, seen.into_iter().collect(), budget)?;
    Ok(FiltrationLevel {
        fragment,
        orbit_truncated,
    })
}

/// Whether `s` carries `from` onto `to` as a labelled simplicial isomorphism.
pub fn transports(
    scheme: &Scheme,
    s: &GammaElement,
    from: &Fragment,
    to: &Fragment,
) -> Result<bool, TopologyError> {
    let ss = scheme.structure();
    let mut names = HashMap::new();
    for w in &from.vertices {
        names.insert(w.to_string(), act(ss, s, w)?.to_string());
    }
    if names.values().collect::<BTreeSet<_>>().len() != names.len() {
        return Ok(false);
    }
    Ok(from
        .complex
        .relabel(|l| names[l].clone())
        .same_labelled(&to.complex))
}

/// Homology of a fragment with a labelled summary.
pub fn fragment_homology(f: &Fragment, max_dim: usize) -> Result<HomologyProfile, TopologyError> {
    f.complex.homology(max_dim)
}

/// Whether `v` compares above each member of `ws`.
pub fn dominates_all(scheme: &Scheme, v: &Pseudovertex, ws: &[Pseudovertex]) -> bool {
    let mut oracle = OrderOracle::new(scheme.structure());
    ws.iter().all(|w| oracle.compare(w, v) == Verdict::True)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::s_structure::{SStructure, StructureKind};
    use crate::semigroups::{make_action, ActionSpec};

    fn scheme(spec: &str, kind: StructureKind) -> Scheme {
        let a = make_action(&ActionSpec::parse(spec).unwrap()).unwrap();
        Scheme::natural(SStructure::new(a, kind).unwrap())
    }

    fn pv(s: &Scheme, t: &str) -> Pseudovertex {
        Pseudovertex::parse(s.structure(), t).unwrap()
    }

    #[test]
    fn rank_two_link_in_v() {
        let s = scheme("V2", StructureKind::Maximal);
        let v = pv(&s, "{ sig e->0 ; sig e->1 }");
        let link = descending_link(&s, &v, &Budget::default()).unwrap();
        assert_eq!(link.complex.vertex_count(), 2);
        assert_eq!(link.complex.simplex_count(), 2);
        let below = complex_below(&s, &v, &Budget::default()).unwrap();
        assert_eq!(below.complex.vertex_count(), 3);
        assert_eq!(below.complex.euler_characteristic(), 1);
    }

    #[test]
    fn rank_three_link_in_v() {
        let s = scheme("V2", StructureKind::Maximal);
        let v = pv(&s, "{ sig e->00 ; sig e->01 ; sig e->1 }");
        let link = descending_link(&s, &v, &Budget::default()).unwrap();
        assert_eq!(link.complex.vertex_count(), 6);
        assert_eq!(link.complex.faces(1).len(), 0);
        let cover = standard_cover(&s, &v, &Budget::default()).unwrap();
        assert_eq!(cover.len(), 3);
        assert!(cover_is_exact(&link.complex, &cover));
    }

    #[test]
    fn partitioned_links_split_as_products() {
        let s = scheme("V2", StructureKind::Maximal);
        let v = pv(&s, "{ sig e->00 ; sig e->01 ; sig e->10 ; sig e->11 }");
        let parts = vec![
            pv(&s, "{ sig e->00 ; sig e->01 }"),
            pv(&s, "{ sig e->10 ; sig e->11 }"),
        ];
        let check = product_check(&s, &v, &parts, 2, &Budget::default()).unwrap();
        assert!(check.holds(), "{check:?}");
        let whole = vec![v.clone()];
        let full = partitioned_descending_link(&s, &v, &whole, &Budget::default()).unwrap();
        let plain = descending_link(&s, &v, &Budget::default()).unwrap();
        assert!(full.complex.same_labelled(&plain.complex));
        let other = vec![
            pv(&s, "{ sig e->00 ; sig e->10 }"),
            pv(&s, "{ sig e->01 ; sig e->11 }"),
        ];
        assert!(intersection_law(&s, &v, &parts, &other, &Budget::default()).unwrap());
        assert!(partitioned_descending_link(&s, &v, &parts[..1], &Budget::default()).is_err());
    }

    #[test]
    fn filtration_levels() {
        let s = scheme("V2", StructureKind::Maximal);
        let root = s.structure().action().root_domains();
        let one = filtration_level(&s, &root, 1, &Budget::default()).unwrap();
        assert_eq!(one.fragment.complex.faces(1).len(), 0);
        let two = filtration_level(&s, &root, 2, &Budget::default()).unwrap();
        assert_eq!(two.fragment.vertices.len(), 2);
        assert_eq!(two.fragment.complex.faces(1).len(), 1);
        assert!(two.orbit_truncated);
    }

    #[test]
    fn budgets_fail_loudly() {
        let s = scheme("V2", StructureKind::Maximal);
        let v = pv(&s, "{ sig e->00 ; sig e->01 ; sig e->10 ; sig e->11 }");
        let tight = Budget {
            max_vertices: 3,
            ..Budget::default()
        };
        let err = descending_link(&s, &v, &tight).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn qv_pure_tree_vertices_have_empty_links() {
        let s = scheme("QV", StructureKind::Maximal);
        for text in [
            "{ tau e->0 ; tau e->1 }",
            "{ tau e->0 ; tau e->10 ; tau e->11 }",
        ] {
            let link = descending_link(&s, &pv(&s, text), &Budget::default()).unwrap();
            assert!(link.complex.is_empty());
        }
    }
}
