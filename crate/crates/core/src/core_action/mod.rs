//! Inverse semigroup actions by partial bijections and the domain calculus.

mod domain;
mod map;
mod text;
mod word;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use domain::Domain;
pub use map::PartialMap;
pub(crate) use text::split_top as text_split;
pub use text::{parse_domain, parse_map};
pub use word::Word;

use crate::semigroups::families::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{domain} is not a subdomain of the source of {map}")]
    NotSubdomain { map: String, domain: String },
    #[error("{inner} is not contained in {outer}")]
    NotNested { inner: String, outer: String },
    #[error("action {0} lacks the compact ultrametric property")]
    NotCup(String),
    #[error("{0} is not a domain of this action")]
    IllegalDomain(String),
    #[error("{0} is not a map of this action")]
    IllegalMap(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("maps from different actions: {0} and {1}")]
    Mismatch(String, String),
}

/// A point of the acted-on set, truncated to finite depth for Cantor spaces.
/// Used by evaluation oracles only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Bits(Vec<u8>),
    Node(Vec<u8>),
    Ray(u32, u64),
    Tuple(Vec<Point>),
}

/// A finite partition of `base` into non-empty domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    #[serde(serialize_with = "ser_display")]
    pub base: Domain,
    #[serde(serialize_with = "ser_display_vec")]
    pub pieces: Vec<Domain>,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<S: serde::Serializer, T: fmt::Display>(
    v: &[T],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Partition {
    pub fn new(base: Domain, mut pieces: Vec<Domain>) -> Partition {
        pieces.sort();
        pieces.dedup();
        Partition { base, pieces }
    }

    pub fn trivial(base: Domain) -> Partition {
        Partition {
            pieces: vec![base.clone()],
            base,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0] == self.base
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            write!(f, "{}{p}", if i > 0 { " ; " } else { " " })?;
        }
        write!(f, " }}")
    }
}

/// Result of checking the compact ultrametric property on small domains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupReport {
    pub passed: bool,
    pub domains_checked: usize,
    /// Two intersecting domains, neither containing the other.
    pub witness: Option<(String, String)>,
}

/// A registered action: one family per coordinate; several coordinates form a
/// product action with Rees-quotient semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    name: String,
    factors: Vec<Family>,
}

impl Action {
    pub fn new(name: impl Into<String>, factors: Vec<Family>) -> Action {
        assert!(
            !factors.is_empty(),
            "an action needs at least one coordinate"
        );
        Action {
            name: name.into(),
            factors,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn factors(&self) -> &[Family] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn family(&self) -> Family {
        self.factors[0]
    }

    pub fn has_cup(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn legal_domain(&self, d: &Domain) -> bool {
        match d {
            Domain::Empty => true,
            Domain::Product(c) if self.arity() > 1 => {
                c.len() == self.arity()
                    && c.iter().zip(&self.factors).all(|(d, f)| f.legal_domain(d))
            }
            _ if self.arity() == 1 => self.family().legal_domain(d),
            _ => false,
        }
    }

    pub fn legal_map(&self, m: &PartialMap) -> bool {
        match m {
            PartialMap::Zero => true,
            PartialMap::Tuple(c) if self.arity() > 1 => {
                c.len() == self.arity() && c.iter().zip(&self.factors).all(|(m, f)| f.legal_map(m))
            }
            _ if self.arity() == 1 => self.family().legal_map(m),
            _ => false,
        }
    }

    /// The designated top domains partitioning the whole space.
    pub fn root_domains(&self) -> Vec<Domain> {
        let mut acc: Vec<Vec<Domain>> = vec![vec![]];
        for f in &self.factors {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    f.roots().into_iter().map(move |r| {
                        let mut p = prefix.clone();
                        p.push(r);
                        p
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|c| Domain::from_coords(c, self.arity()))
            .collect()
    }

    /// Whether `inner ⊆ outer`.
    pub fn contains(&self, outer: &Domain, inner: &Domain) -> bool {
        match (outer, inner) {
            (_, Domain::Empty) => true,
            (Domain::Empty, _) => false,
            _ => {
                (0..self.arity()).all(|i| self.factors[i].contains(outer.coord(i), inner.coord(i)))
            }
        }
    }

    pub fn intersect(&self, a: &Domain, b: &Domain) -> Domain {
        if a.is_empty() || b.is_empty() {
            return Domain::Empty;
        }
        let coords = (0..self.arity())
            .map(|i| self.factors[i].intersect(a.coord(i), b.coord(i)))
            .collect();
        Domain::from_coords(coords, self.arity())
    }

    pub fn disjoint(&self, a: &Domain, b: &Domain) -> bool {
        self.intersect(a, b).is_empty()
    }

    pub fn identity(&self, d: &Domain) -> PartialMap {
        if d.is_empty() {
            return PartialMap::Zero;
        }
        let comps = (0..self.arity())
            .map(|i| {
                self.factors[i]
                    .identity(d.coord(i))
                    .expect("identity on a legal domain")
            })
            .collect();
        PartialMap::from_components(comps, self.arity())
    }

    /// The unique untwisted map between two domains of the same shape.
    pub fn plain_map(&self, d1: &Domain, d2: &Domain) -> Option<PartialMap> {
        let comps = (0..self.arity())
            .map(|i| self.factors[i].plain_map(d1.coord(i), d2.coord(i)))
            .collect::<Option<Vec<_>>>()?;
        Some(PartialMap::from_components(comps, self.arity()))
    }

    pub fn restrict(&self, m: &PartialMap, d: &Domain) -> Result<PartialMap, ActionError> {
        if d.is_empty() {
            return Ok(PartialMap::Zero);
        }
        let err = || ActionError::NotSubdomain {
            map: m.to_string(),
            domain: d.to_string(),
        };
        if m.is_zero() {
            return Err(err());
        }
        let comps = m.components();
        let out = (0..self.arity())
            .map(|i| self.factors[i].restrict(&comps[i], d.coord(i)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(err)?;
        Ok(PartialMap::from_components(out, self.arity()))
    }

    pub fn translate(&self, m: &PartialMap, d: &Domain) -> Result<Domain, ActionError> {
        Ok(self.restrict(m, d)?.target())
    }

    pub fn invert(&self, m: &PartialMap) -> PartialMap {
        m.invert()
    }

    /// `s ∘ t`, defined on `t⁻¹(im t ∩ dom s)`.
    pub fn compose(&self, s: &PartialMap, t: &PartialMap) -> PartialMap {
        if s.is_zero() || t.is_zero() {
            return PartialMap::Zero;
        }
        let mid = self.intersect(&t.target(), &s.source());
        if mid.is_empty() {
            return PartialMap::Zero;
        }
        let s2 = self
            .restrict(s, &mid)
            .expect("intersection lies in the source");
        let t_inv = t.invert();
        let pre = self
            .translate(&t_inv, &mid)
            .expect("intersection lies in the image");
        let t2 = self.restrict(t, &pre).expect("preimage lies in the source");
        let (sc, tc) = (s2.components(), t2.components());
        let out = (0..self.arity())
            .map(|i| {
                self.factors[i]
                    .chain(&sc[i], &tc[i])
                    .expect("matching endpoints chain")
            })
            .collect();
        PartialMap::from_components(out, self.arity())
    }

    /// Checked composition rejecting maps foreign to this action.
    pub fn try_compose(&self, s: &PartialMap, t: &PartialMap) -> Result<PartialMap, ActionError> {
        if !self.legal_map(s) || !self.legal_map(t) {
            return Err(ActionError::Mismatch(s.to_string(), t.to_string()));
        }
        Ok(self.compose(s, t))
    }

    /// Splits coordinate `i` of a brick by its maximal partition.
    pub fn split_coordinate(&self, d: &Domain, i: usize) -> Vec<Domain> {
        let coords = d.coords();
        self.factors[i]
            .children(&coords[i])
            .into_iter()
            .map(|c| {
                let mut cs = coords.clone();
                cs[i] = c;
                Domain::from_coords(cs, self.arity())
            })
            .collect()
    }

    pub fn maximal_partition(&self, d: &Domain) -> Result<Partition, ActionError> {
        if !self.has_cup() {
            return Err(ActionError::NotCup(self.name.clone()));
        }
        Ok(Partition::new(d.clone(), self.family().children(d)))
    }

    pub fn parent(&self, d: &Domain) -> Result<Option<Domain>, ActionError> {
        if !self.has_cup() {
            return Err(ActionError::NotCup(self.name.clone()));
        }
        Ok(self.family().parent(d))
    }

    /// The peeling partition of `e − d` along the nesting chain.
    pub fn partition_difference(&self, e: &Domain, d: &Domain) -> Result<Vec<Domain>, ActionError> {
        if !self.has_cup() {
            return Err(ActionError::NotCup(self.name.clone()));
        }
        family_difference(self.family(), e, d)
    }

    /// Length of the longest chain of domains from `d` up to `e`.
    pub fn depth_of(&self, d: &Domain, e: &Domain) -> Result<usize, ActionError> {
        if !self.has_cup() {
            return Err(ActionError::NotCup(self.name.clone()));
        }
        if !self.contains(e, d) || d.is_empty() {
            return Err(ActionError::NotNested {
                inner: d.to_string(),
                outer: e.to_string(),
            });
        }
        let mut depth = 1;
        let mut cur = d.clone();
        while cur != *e {
            cur = self
                .family()
                .parent(&cur)
                .expect("nested domains have a path");
            depth += 1;
        }
        Ok(depth)
    }

    /// All domains whose every coordinate has description size at most `max`.
    pub fn domains_up_to(&self, max: usize) -> Vec<Domain> {
        let mut acc: Vec<Vec<Domain>> = vec![vec![]];
        for f in &self.factors {
            let layer = f.domains_up_to(max);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    layer.iter().map(move |d| {
                        let mut p = prefix.clone();
                        p.push(d.clone());
                        p
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|c| Domain::from_coords(c, self.arity()))
            .collect()
    }

    /// Exhaustively checks nesting and finite complementation on small domains.
    pub fn verify_cup(&self, depth_bound: usize) -> CupReport {
        let doms = self.domains_up_to(depth_bound);
        for (i, a) in doms.iter().enumerate() {
            for b in &doms[i + 1..] {
                let meet = self.intersect(a, b);
                if !meet.is_empty() && meet != *a && meet != *b {
                    return CupReport {
                        passed: false,
                        domains_checked: doms.len(),
                        witness: Some((a.to_string(), b.to_string())),
                    };
                }
                if meet == *a && self.has_cup() {
                    let pieces = self.partition_difference(b, a).expect("nested pair");
                    let mut all = pieces.clone();
                    all.push(a.clone());
                    if !self.is_partition_of(b, &all) {
                        return CupReport {
                            passed: false,
                            domains_checked: doms.len(),
                            witness: Some((a.to_string(), b.to_string())),
                        };
                    }
                }
            }
        }
        CupReport {
            passed: true,
            domains_checked: doms.len(),
            witness: None,
        }
    }

    /// Whether `inner` is covered by the union of `cover`.
    pub fn covered_by(&self, inner: &Domain, cover: &[Domain]) -> bool {
        if inner.is_empty() {
            return true;
        }
        let hits: Vec<Domain> = cover
            .iter()
            .map(|c| self.intersect(inner, c))
            .filter(|d| !d.is_empty())
            .collect();
        if hits.is_empty() {
            return false;
        }
        if hits.iter().any(|h| h == inner) {
            return true;
        }
        let axis = (0..self.arity())
            .find(|&i| hits.iter().any(|h| h.coord(i) != inner.coord(i)))
            .expect("a proper subdomain differs in some coordinate");
        let parts = self.split_coordinate(inner, axis);
        if parts.len() == 1 {
            return false;
        }
        parts.iter().all(|p| self.covered_by(p, &hits))
    }

    pub fn region_subset(&self, a: &[Domain], b: &[Domain]) -> bool {
        a.iter().all(|d| self.covered_by(d, b))
    }

    pub fn region_eq(&self, a: &[Domain], b: &[Domain]) -> bool {
        self.region_subset(a, b) && self.region_subset(b, a)
    }

    pub fn pairwise_disjoint(&self, ds: &[Domain]) -> bool {
        ds.iter()
            .enumerate()
            .all(|(i, a)| ds[i + 1..].iter().all(|b| self.disjoint(a, b)))
    }

    /// Pieces are non-empty, pairwise disjoint, inside `base` and cover it.
    pub fn is_partition_of(&self, base: &Domain, pieces: &[Domain]) -> bool {
        !pieces.is_empty()
            && pieces
                .iter()
                .all(|p| !p.is_empty() && self.contains(base, p))
            && self.pairwise_disjoint(pieces)
            && self.covered_by(base, pieces)
    }

    /// Every partition of the union of `pieces` into members of `candidates`
    /// that are themselves unions of pieces, found by exact cover.
    pub fn coarsenings(&self, pieces: &[Domain], candidates: &[Domain]) -> Vec<Vec<Domain>> {
        assert!(pieces.len() <= 64, "at most 64 pieces");
        let saturated: Vec<(u64, &Domain)> = candidates
            .iter()
            .filter_map(|c| {
                let mut mask = 0u64;
                for (i, p) in pieces.iter().enumerate() {
                    if self.contains(c, p) {
                        mask |= 1 << i;
                    } else if !self.disjoint(c, p) {
                        return None;
                    }
                }
                (mask != 0 && self.covered_by(c, pieces)).then_some((mask, c))
            })
            .collect();
        let full = if pieces.len() == 64 {
            u64::MAX
        } else {
            (1u64 << pieces.len()) - 1
        };
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        exact_covers(&saturated, full, 0, &mut chosen, &mut out);
        out
    }

    /// The single domain equal to the union of `region`, if there is one.
    pub fn region_as_domain(&self, region: &[Domain]) -> Option<Domain> {
        let first = region.first()?;
        let mut coords = first.coords();
        for d in &region[1..] {
            for (i, c) in coords.iter_mut().enumerate() {
                *c = self.factors[i].join(c, d.coord(i))?;
            }
        }
        let j = Domain::from_coords(coords, self.arity());
        self.covered_by(&j, region).then_some(j)
    }

    pub fn apply(&self, m: &PartialMap, x: &Point) -> Option<Point> {
        match (m, x) {
            (PartialMap::Zero, _) => None,
            (PartialMap::Tuple(c), Point::Tuple(p)) => c
                .iter()
                .zip(p)
                .zip(&self.factors)
                .map(|((m, x), f)| f.apply(m, x))
                .collect::<Option<Vec<_>>>()
                .map(Point::Tuple),
            _ => self.family().apply(m, x),
        }
    }

    pub fn member(&self, d: &Domain, x: &Point) -> bool {
        match (d, x) {
            (Domain::Product(c), Point::Tuple(p)) => c
                .iter()
                .zip(p)
                .zip(&self.factors)
                .all(|((d, x), f)| f.member(d, x)),
            (Domain::Empty, _) => false,
            _ => self.family().member(d, x),
        }
    }
}

fn exact_covers<'a>(
    sets: &[(u64, &'a Domain)],
    full: u64,
    covered: u64,
    chosen: &mut Vec<&'a Domain>,
    out: &mut Vec<Vec<Domain>>,
) {
    if covered == full {
        let mut cover: Vec<Domain> = chosen.iter().map(|d| (*d).clone()).collect();
        cover.sort();
        out.push(cover);
        return;
    }
    let lowest = (!covered & full).trailing_zeros();
    for (mask, d) in sets {
        if mask & (1 << lowest) != 0 && mask & covered == 0 {
            chosen.push(d);
            exact_covers(sets, full, covered | mask, chosen, out);
            chosen.pop();
        }
    }
}

/// Peels maximal partitions along the path from `e` down to `d`.
pub(crate) fn family_difference(
    f: Family,
    e: &Domain,
    d: &Domain,
) -> Result<Vec<Domain>, ActionError> {
    if !f.contains(e, d) || d.is_empty() {
        return Err(ActionError::NotNested {
            inner: d.to_string(),
            outer: e.to_string(),
        });
    }
    let mut path = vec![d.clone()];
    while path.last() != Some(e) {
        let p = f
            .parent(path.last().expect("non-empty path"))
            .expect("nested domains have a path");
        path.push(p);
    }
    let mut out = Vec::new();
    for w in path.windows(2).rev() {
        let (child, node) = (&w[0], &w[1]);
        out.extend(f.children(node).into_iter().filter(|c| c != child));
    }
    Ok(out)
}

/// Refines a family of nested-or-disjoint domains of one coordinate into the
/// coarsest pairwise-disjoint family with the same union refining every member.
pub(crate) fn family_atoms(f: Family, domains: &[Domain]) -> Vec<Domain> {
    let mut set: BTreeSet<Domain> = domains.iter().filter(|d| !d.is_empty()).cloned().collect();
    loop {
        let found = set.iter().find_map(|a| {
            set.iter()
                .find(|b| *b != a && f.contains(a, b))
                .map(|b| (a.clone(), b.clone()))
        });
        let Some((outer, inner)) = found else { break };
        set.remove(&outer);
        set.extend(family_difference(f, &outer, &inner).expect("nested"));
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroups::{make_action, ActionSpec};

    fn v2() -> Action {
        make_action(&ActionSpec::V(2)).unwrap()
    }

    fn dom(a: &Action, s: &str) -> Domain {
        parse_domain(a, s).unwrap()
    }

    fn map(a: &Action, s: &str) -> PartialMap {
        parse_map(a, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let a = v2();
        let id1 = a.compose(&map(&a, "sig 01->1"), &map(&a, "sig 1->01"));
        assert_eq!(id1, a.identity(&dom(&a, "B:1")));
        assert_eq!(
            a.compose(&map(&a, "sig 0->e"), &map(&a, "sig e->00")),
            map(&a, "sig e->0")
        );
        assert_eq!(
            a.compose(&map(&a, "sig 0->0"), &map(&a, "sig 1->1")),
            PartialMap::Zero
        );
        assert_eq!(a.invert(&map(&a, "sig 01->1")), map(&a, "sig 1->01"));
    }

    #[test]
    fn coarsenings_of_quarters() {
        let a = v2();
        let quarters: Vec<Domain> = ["B:00", "B:01", "B:10", "B:11"]
            .iter()
            .map(|s| dom(&a, s))
            .collect();
        let covers = a.coarsenings(&quarters, &a.domains_up_to(3));
        // Each half is either kept whole or split: 4 covers, plus the whole cone.
        assert_eq!(covers.len(), 5);
        assert!(covers.contains(&vec![dom(&a, "B:e")]));
    }

    #[test]
    fn restrict_examples() {
        let r = make_action(&ActionSpec::Rover).unwrap();
        assert_eq!(
            r.restrict(&map(&r, "rov[b] e->e"), &dom(&r, "B:0"))
                .unwrap(),
            map(&r, "rov[a] 0->0")
        );
        assert_eq!(
            r.restrict(&map(&r, "rov[b] e->e"), &dom(&r, "B:1"))
                .unwrap(),
            map(&r, "rov[c] 1->1")
        );
        assert_eq!(
            r.restrict(&map(&r, "rov[d] e->e"), &dom(&r, "B:0"))
                .unwrap(),
            map(&r, "sig 0->0")
        );
        assert_eq!(
            r.translate(&map(&r, "rov[a] e->e"), &dom(&r, "B:0"))
                .unwrap(),
            dom(&r, "B:1")
        );
        let a = v2();
        assert_eq!(
            a.restrict(&map(&a, "sig e->e"), &dom(&a, "B:0110"))
                .unwrap(),
            map(&a, "sig 0110->0110")
        );
        assert_eq!(
            a.translate(&map(&a, "sig 0->11"), &dom(&a, "B:01"))
                .unwrap(),
            dom(&a, "B:111")
        );
        let h = make_action(&ActionSpec::Houghton(2)).unwrap();
        assert_eq!(
            h.restrict(&map(&h, "shift 1:3->7"), &dom(&h, "R:1,5"))
                .unwrap(),
            map(&h, "shift 1:5->9")
        );
        assert!(a.restrict(&map(&a, "sig 0->1"), &dom(&a, "B:1")).is_err());
    }

    #[test]
    fn intersections() {
        let a = v2();
        assert_eq!(
            a.intersect(&dom(&a, "B:01"), &dom(&a, "B:011")),
            dom(&a, "B:011")
        );
        assert_eq!(a.intersect(&dom(&a, "B:0"), &dom(&a, "B:1")), Domain::Empty);
        let p = make_action(&ActionSpec::Product(vec![
            ActionSpec::V(2),
            ActionSpec::V(2),
        ]))
        .unwrap();
        assert_eq!(
            p.intersect(&dom(&p, "(B:0xB:e)"), &dom(&p, "(B:exB:1)")),
            dom(&p, "(B:0xB:1)")
        );
    }

    #[test]
    fn maximal_partitions_and_differences() {
        let a = v2();
        assert_eq!(
            a.maximal_partition(&dom(&a, "B:01")).unwrap().pieces,
            vec![dom(&a, "B:010"), dom(&a, "B:011")]
        );
        let h = make_action(&ActionSpec::Houghton(2)).unwrap();
        assert_eq!(
            h.maximal_partition(&dom(&h, "R:2,5")).unwrap().pieces,
            vec![dom(&h, "R:2,6"), dom(&h, "P:2,5")]
        );
        let q = make_action(&ActionSpec::TreeBar(2)).unwrap();
        assert!(q
            .maximal_partition(&dom(&q, "Pt:011"))
            .unwrap()
            .is_trivial());
        let mut d = q
            .partition_difference(&dom(&q, "T:e"), &dom(&q, "T:01"))
            .unwrap();
        d.sort();
        let mut expect = vec![
            dom(&q, "T:00"),
            dom(&q, "T:1"),
            dom(&q, "Pt:e"),
            dom(&q, "Pt:0"),
        ];
        expect.sort();
        assert_eq!(d, expect);
        let mut d = h
            .partition_difference(&dom(&h, "R:1,2"), &dom(&h, "R:1,5"))
            .unwrap();
        d.sort();
        assert_eq!(
            d,
            vec![dom(&h, "P:1,2"), dom(&h, "P:1,3"), dom(&h, "P:1,4")]
        );
        assert_eq!(
            a.partition_difference(&dom(&a, "B:e"), &dom(&a, "B:0"))
                .unwrap(),
            vec![dom(&a, "B:1")]
        );
    }

    #[test]
    fn depths() {
        let a = v2();
        assert_eq!(a.depth_of(&dom(&a, "B:e"), &dom(&a, "B:e")).unwrap(), 1);
        assert_eq!(a.depth_of(&dom(&a, "B:0110"), &dom(&a, "B:e")).unwrap(), 5);
        let h = make_action(&ActionSpec::Houghton(1)).unwrap();
        assert_eq!(h.depth_of(&dom(&h, "P:1,7"), &dom(&h, "R:1,4")).unwrap(), 5);
        assert!(a.depth_of(&dom(&a, "B:0"), &dom(&a, "B:1")).is_err());
    }

    #[test]
    fn cup_checks() {
        assert!(v2().verify_cup(4).passed);
        assert!(
            make_action(&ActionSpec::Houghton(2))
                .unwrap()
                .verify_cup(4)
                .passed
        );
        assert!(
            make_action(&ActionSpec::TreeBar(2))
                .unwrap()
                .verify_cup(3)
                .passed
        );
        let p = make_action(&ActionSpec::Product(vec![
            ActionSpec::V(2),
            ActionSpec::V(2),
        ]))
        .unwrap();
        let r = p.verify_cup(2);
        assert!(!r.passed);
        let (x, y) = r.witness.unwrap();
        let (x, y) = (dom(&p, &x), dom(&p, &y));
        let m = p.intersect(&x, &y);
        assert!(!m.is_empty() && m != x && m != y);
        let (x, y) = (dom(&p, "(B:exB:0)"), dom(&p, "(B:1xB:e)"));
        let m = p.intersect(&x, &y);
        assert!(!m.is_empty() && m != x && m != y);
    }

    #[test]
    fn coverage_and_region_domains() {
        let q = make_action(&ActionSpec::TreeBar(2)).unwrap();
        let parts = vec![dom(&q, "T:00"), dom(&q, "T:01"), dom(&q, "Pt:0")];
        assert_eq!(q.region_as_domain(&parts), Some(dom(&q, "T:0")));
        assert_eq!(q.region_as_domain(&parts[..2]), None);
        let h = make_action(&ActionSpec::Houghton(1)).unwrap();
        assert!(!h.covered_by(&dom(&h, "R:1,1"), &[dom(&h, "P:1,1"), dom(&h, "P:1,2")]));
        let p = make_action(&ActionSpec::Product(vec![
            ActionSpec::V(2),
            ActionSpec::V(2),
        ]))
        .unwrap();
        let bricks = vec![
            dom(&p, "(B:0xB:e)"),
            dom(&p, "(B:1xB:0)"),
            dom(&p, "(B:1xB:1)"),
        ];
        assert!(p.is_partition_of(&dom(&p, "(B:exB:e)"), &bricks));
        assert!(!p.is_partition_of(&dom(&p, "(B:exB:e)"), &bricks[..2]));
    }
}
