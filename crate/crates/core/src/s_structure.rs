//! Structure sets and pattern functions: the maximal, Röver and product-with-Brin
//! structures, with domain types, transversals and axiom verifiers.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::core_action::{family_atoms, Action, Domain, PartialMap, Partition};
use crate::report::{AxiomReport, Tally};
use crate::sampling;
use crate::semigroups::families::Family;
use crate::semigroups::grig::{GrigWord, B, C, D};

/// Split depth after which the generation witness search gives up.
const WITNESS_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure {kind} is not available on action {action}")]
    Illegal { kind: String, action: String },
    #[error("unknown structure {0:?}")]
    Unknown(String),
    #[error("{0} has no domain type")]
    NoType(String),
    #[error("partition base mismatch: {0} vs {1}")]
    BaseMismatch(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Maximal,
    Rover,
    ProductBrin,
}

impl StructureKind {
    pub fn parse(s: &str) -> Result<StructureKind, StructureError> {
        match s {
            "maximal" => Ok(StructureKind::Maximal),
            "rover" => Ok(StructureKind::Rover),
            "brin" => Ok(StructureKind::ProductBrin),
            _ => Err(StructureError::Unknown(s.to_string())),
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Maximal => "maximal",
            StructureKind::Rover => "rover",
            StructureKind::ProductBrin => "brin",
        })
    }
}

/// Deliberate defects used as negative controls for the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureCorruption {
    /// Removes the identity from every `𝕊(D, D)`.
    DropIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SStructure {
    action: Action,
    kind: StructureKind,
    corruption: Option<StructureCorruption>,
}

impl SStructure {
    pub fn new(action: Action, kind: StructureKind) -> Result<SStructure, StructureError> {
        let rover = action.factors().contains(&Family::Rover);
        let ok = match kind {
            StructureKind::Maximal => action.has_cup() && !rover,
            StructureKind::Rover => action.has_cup() && rover,
            StructureKind::ProductBrin => !action.has_cup() && !rover,
        };
        if !ok {
            return Err(StructureError::Illegal {
                kind: kind.to_string(),
                action: action.name().to_string(),
            });
        }
        Ok(SStructure {
            action,
            kind,
            corruption: None,
        })
    }

    /// The structure the registered families come with.
    pub fn natural(action: Action) -> Result<SStructure, StructureError> {
        let kind = if !action.has_cup() {
            StructureKind::ProductBrin
        } else if action.family() == Family::Rover {
            StructureKind::Rover
        } else {
            StructureKind::Maximal
        };
        SStructure::new(action, kind)
    }

    pub fn corrupted(mut self, c: StructureCorruption) -> SStructure {
        self.corruption = Some(c);
        self
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn type_count(&self) -> usize {
        match self.kind {
            StructureKind::Rover => 1,
            _ => self
                .action
                .factors()
                .iter()
                .map(Family::type_count)
                .product(),
        }
    }

    pub fn domain_type_id(&self, d: &Domain) -> Result<usize, StructureError> {
        if d.is_empty() || !self.action.legal_domain(d) {
            return Err(StructureError::NoType(d.to_string()));
        }
        let mut id = 0;
        for (i, f) in self.action.factors().iter().enumerate() {
            let t = f
                .type_of(d.coord(i))
                .ok_or_else(|| StructureError::NoType(d.to_string()))?;
            id = id * f.type_count() + t;
        }
        Ok(id)
    }

    /// Per-coordinate types of a mixed-radix type id (first coordinate most significant).
    pub fn type_coords(&self, mut t: usize) -> Vec<usize> {
        let mut out = vec![0; self.action.arity()];
        for (i, f) in self.action.factors().iter().enumerate().rev() {
            out[i] = t % f.type_count();
            t /= f.type_count();
        }
        out
    }

    /// The least domain of type `t`.
    pub fn transversal(&self, t: usize) -> Domain {
        let coords = self
            .type_coords(t)
            .iter()
            .zip(self.action.factors())
            .map(|(&ti, f)| f.transversal(ti))
            .collect();
        Domain::from_coords(coords, self.action.arity())
    }

    /// `𝕊(d1, d2)`, with the untwisted map first.
    pub fn structure_set(&self, d1: &Domain, d2: &Domain) -> Vec<PartialMap> {
        let Some(plain) = self.action.plain_map(d1, d2) else {
            return vec![];
        };
        let mut out = match (self.kind, &plain) {
            (StructureKind::Rover, PartialMap::Twist { from, to, .. }) => {
                [None, Some(B), Some(C), Some(D)]
                    .iter()
                    .map(|g| PartialMap::Twist {
                        g: g.map(GrigWord::generator).unwrap_or_default(),
                        from: from.clone(),
                        to: to.clone(),
                    })
                    .collect()
            }
            _ => vec![plain],
        };
        if self.corruption == Some(StructureCorruption::DropIdentity) && d1 == d2 {
            out.retain(|m| !m.is_identity());
        }
        out
    }

    /// `𝕊(D̂, D̂)` for the transversal domain of type `t`.
    pub fn group(&self, t: usize) -> Vec<PartialMap> {
        let d = self.transversal(t);
        self.structure_set(&d, &d)
    }

    /// The chosen element of `𝕊(D̂, d)` used to move classes onto the transversal.
    pub fn transport(&self, d: &Domain) -> Result<PartialMap, StructureError> {
        let t = self.domain_type_id(d)?;
        self.action
            .plain_map(&self.transversal(t), d)
            .ok_or_else(|| StructureError::NoType(d.to_string()))
    }

    pub fn contains_map(&self, m: &PartialMap) -> bool {
        !m.is_zero()
            && self
                .structure_set(&m.source(), &m.target())
                .iter()
                .any(|s| s.same_as(m))
    }

    pub fn same_domain_type(&self, d1: &Domain, d2: &Domain) -> bool {
        matches!((self.domain_type_id(d1), self.domain_type_id(d2)), (Ok(a), Ok(b)) if a == b)
    }

    /// Whether `pieces` (assumed a partition of `base`) is a pattern.
    pub fn is_pattern(&self, base: &Domain, pieces: &[Domain]) -> bool {
        match self.kind {
            StructureKind::Maximal | StructureKind::Rover => true,
            StructureKind::ProductBrin => self.brin(base, pieces),
        }
    }

    pub fn is_pattern_partition(&self, p: &Partition) -> bool {
        self.action.is_partition_of(&p.base, &p.pieces) && self.is_pattern(&p.base, &p.pieces)
    }

    fn brin(&self, base: &Domain, pieces: &[Domain]) -> bool {
        if pieces.len() == 1 {
            return pieces[0] == *base;
        }
        for i in 0..self.action.arity() {
            let parts = self.action.split_coordinate(base, i);
            if parts.len() == 1 {
                continue;
            }
            let mut groups: Vec<Vec<Domain>> = vec![Vec::new(); parts.len()];
            let fits = pieces.iter().all(|p| {
                match parts.iter().position(|q| self.action.contains(q, p)) {
                    Some(k) => {
                        groups[k].push(p.clone());
                        true
                    }
                    None => false,
                }
            });
            if fits {
                return parts
                    .iter()
                    .zip(&groups)
                    .all(|(q, g)| !g.is_empty() && self.brin(q, g));
            }
        }
        false
    }

    /// A pattern refining the given partition: the partition itself when it is
    /// already a pattern, otherwise the grid of all coordinate cuts.
    pub fn refine_to_pattern(&self, base: &Domain, pieces: &[Domain]) -> Vec<Domain> {
        if self.is_pattern(base, pieces) {
            return pieces.to_vec();
        }
        self.grid(base, pieces)
    }

    /// The product of the per-coordinate atoms of the pieces' projections.
    pub fn grid(&self, base: &Domain, pieces: &[Domain]) -> Vec<Domain> {
        let arity = self.action.arity();
        let atoms: Vec<Vec<Domain>> = (0..arity)
            .map(|i| {
                let proj: Vec<Domain> = pieces.iter().map(|p| p.coord(i).clone()).collect();
                family_atoms(self.action.factors()[i], &proj)
                    .into_iter()
                    .filter(|a| self.action.factors()[i].contains(base.coord(i), a))
                    .collect()
            })
            .collect();
        let mut cells: Vec<Vec<Domain>> = vec![vec![]];
        for layer in &atoms {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    layer.iter().map(move |a| {
                        let mut c = c.clone();
                        c.push(a.clone());
                        c
                    })
                })
                .collect();
        }
        cells
            .into_iter()
            .map(|c| Domain::from_coords(c, arity))
            .collect()
    }

    /// Non-trivial patterns produced by a single maximal split.
    pub fn simple_patterns(&self, d: &Domain) -> Vec<Vec<Domain>> {
        let coords: Vec<usize> = match self.kind {
            StructureKind::ProductBrin => (0..self.action.arity()).collect(),
            _ => vec![0],
        };
        coords
            .into_iter()
            .map(|i| self.action.split_coordinate(d, i))
            .filter(|p| p.len() > 1)
            .collect()
    }

    pub fn meet(&self, p1: &Partition, p2: &Partition) -> Result<Partition, StructureError> {
        if p1.base != p2.base {
            return Err(StructureError::BaseMismatch(
                p1.base.to_string(),
                p2.base.to_string(),
            ));
        }
        let pieces = p1
            .pieces
            .iter()
            .flat_map(|a| p2.pieces.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.action.intersect(a, b))
            .filter(|d| !d.is_empty())
            .collect();
        Ok(Partition::new(p1.base.clone(), pieces))
    }

    pub fn restrict_partition(
        &self,
        p: &Partition,
        y: &Domain,
    ) -> Result<Partition, StructureError> {
        if !self.action.contains(&p.base, y) {
            return Err(StructureError::BaseMismatch(
                p.base.to_string(),
                y.to_string(),
            ));
        }
        let pieces = p
            .pieces
            .iter()
            .map(|a| self.action.intersect(a, y))
            .filter(|d| !d.is_empty())
            .collect();
        Ok(Partition::new(y.clone(), pieces))
    }

    /// For a piecewise map on `d`, a pattern of `d` on whose pieces every
    /// restriction lies in the structure sets.
    pub fn generation_witness(&self, d: &Domain, pieces: &[PartialMap]) -> Option<Vec<PartialMap>> {
        let sources: Vec<Domain> = pieces.iter().map(PartialMap::source).collect();
        let cells = self.refine_to_pattern(d, &sources);
        let mut out = Vec::new();
        let mut stack: Vec<(PartialMap, usize)> = cells
            .iter()
            .map(|c| {
                let m = pieces
                    .iter()
                    .find(|m| self.action.contains(&m.source(), c))?;
                Some((self.action.restrict(m, c).ok()?, 0))
            })
            .collect::<Option<Vec<_>>>()?;
        while let Some((m, depth)) = stack.pop() {
            if self.contains_map(&m) {
                out.push(m);
                continue;
            }
            if depth >= WITNESS_DEPTH {
                return None;
            }
            let parts = self.simple_patterns(&m.source()).into_iter().next()?;
            for p in parts {
                stack.push((self.action.restrict(&m, &p).ok()?, depth + 1));
            }
        }
        Some(out)
    }

    /// Randomized and small exhaustive checks of P1–P5 and S1–S6.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> AxiomReport {
        let a = &self.action;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t: Vec<Tally> = [
            "P1", "P2", "P3", "P4", "P5", "S1", "S2", "S3", "S4", "S5", "S6",
        ]
        .iter()
        .map(|s| Tally::new(s))
        .collect();
        let small = a.domains_up_to(if a.arity() > 1 { 1 } else { 2 });
        for d in &small {
            t[0].record(self.is_pattern(d, std::slice::from_ref(d)), || {
                format!("{{{d}}} is not a pattern")
            });
            t[6].record(
                self.structure_set(d, d).iter().any(PartialMap::is_identity),
                || format!("id on {d} missing"),
            );
        }
        for _ in 0..samples {
            let d = sampling::random_domain(a, &mut rng, 3);
            t[0].record(self.is_pattern(&d, std::slice::from_ref(&d)), || {
                format!("{{{d}}} is not a pattern")
            });

            let pat = sampling::random_pattern(self, &d, &mut rng, 4);
            t[1].record(a.is_partition_of(&d, &pat), || {
                format!("{pat:?} does not partition {d}")
            });

            let e = sampling::random_subdomain(a, &d, &mut rng, 3);
            let restricted: Vec<Domain> = pat
                .iter()
                .map(|p| a.intersect(p, &e))
                .filter(|x| !x.is_empty())
                .collect();
            t[2].record(self.is_pattern(&e, &restricted), || {
                format!("restriction of {pat:?} to {e}")
            });

            let mut patched = Vec::new();
            for p in &pat {
                patched.extend(sampling::random_pattern(self, p, &mut rng, 2));
            }
            t[3].record(
                a.is_partition_of(&d, &patched) && self.is_pattern(&d, &patched),
                || format!("patchwork {patched:?} of {d}"),
            );

            let coarse = sampling::random_partition(self, &d, &mut rng);
            let fine = self.refine_to_pattern(&d, &coarse);
            let refines = fine.iter().all(|f| coarse.iter().any(|c| a.contains(c, f)));
            t[4].record(
                refines && a.is_partition_of(&d, &fine) && self.is_pattern(&d, &fine),
                || format!("no pattern refinement of {coarse:?}"),
            );

            let d2 = sampling::random_same_type(self, &d, &mut rng, 3);
            let d3 = sampling::random_same_type(self, &d, &mut rng, 3);
            let s12 = self.structure_set(&d, &d2);
            let s23 = self.structure_set(&d2, &d3);
            t[5].record(
                !s12.is_empty() && s12.iter().all(|s| s.source() == d && s.target() == d2),
                || format!("structure set ({d}, {d2}) has wrong endpoints or is empty"),
            );
            let id = a.identity(&d);
            t[6].record(
                self.structure_set(&d, &d).iter().any(|s| s.same_as(&id)),
                || format!("{id} not in S({d},{d})"),
            );
            let inv_ok = s12.iter().all(|s| {
                self.structure_set(&d2, &d)
                    .iter()
                    .any(|x| x.same_as(&s.invert()))
            });
            t[7].record(inv_ok, || format!("inverse missing for S({d},{d2})"));
            let comp_ok = s12.iter().all(|s| {
                s23.iter().all(|r| {
                    let c = a.compose(r, s);
                    self.structure_set(&d, &d3).iter().any(|x| x.same_as(&c))
                })
            });
            t[8].record(comp_ok, || {
                format!("composition S({d2},{d3})∘S({d},{d2}) escapes")
            });

            let f = sampling::random_embedding(self, &d, &mut rng);
            let wit = self.generation_witness(&d, &f);
            let gen_ok = wit.as_ref().is_some_and(|w| {
                let src: Vec<Domain> = w.iter().map(PartialMap::source).collect();
                a.is_partition_of(&d, &src)
                    && self.is_pattern(&d, &src)
                    && w.iter().all(|m| self.contains_map(m))
                    && w.iter().all(|m| {
                        f.iter()
                            .any(|p| a.restrict(p, &m.source()).is_ok_and(|r| r.same_as(m)))
                    })
            });
            t[9].record(gen_ok, || format!("no generation witness for {f:?}"));

            if let Some(s) = s12.choose(&mut rng) {
                let image: Option<Vec<Domain>> =
                    pat.iter().map(|p| a.translate(s, p).ok()).collect();
                t[10].record(image.is_some_and(|im| self.is_pattern(&d2, &im)), || {
                    format!("{s} moves {pat:?} off patterns")
                });
            }
        }
        let _ = rng.gen::<u8>();
        AxiomReport {
            checks: t.into_iter().map(Tally::finish).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_action::{parse_domain, parse_map};
    use crate::semigroups::{make_action, ActionSpec};

    fn ss(spec: &str, kind: StructureKind) -> SStructure {
        SStructure::new(
            make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
            kind,
        )
        .unwrap()
    }

    fn dom(s: &SStructure, t: &str) -> Domain {
        parse_domain(s.action(), t).unwrap()
    }

    #[test]
    fn structure_sets() {
        let r = ss("ROVER", StructureKind::Rover);
        let set: Vec<String> = r
            .structure_set(&dom(&r, "B:0"), &dom(&r, "B:11"))
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            set,
            ["sig 0->11", "rov[b] 0->11", "rov[c] 0->11", "rov[d] 0->11"]
        );
        let q = ss("QV", StructureKind::Maximal);
        assert!(q
            .structure_set(&dom(&q, "Pt:0"), &dom(&q, "T:1"))
            .is_empty());
        let h = ss("H2", StructureKind::Maximal);
        let set = h.structure_set(&dom(&h, "R:1,2"), &dom(&h, "R:1,9"));
        assert_eq!(set, vec![parse_map(h.action(), "shift 1:2->9").unwrap()]);
    }

    #[test]
    fn type_counts() {
        for n in 2..=4 {
            assert_eq!(
                ss(&format!("H{n}"), StructureKind::Maximal).type_count(),
                n + 1
            );
        }
        assert_eq!(ss("QV", StructureKind::Maximal).type_count(), 2);
        assert_eq!(ss("V2", StructureKind::Maximal).type_count(), 1);
        assert_eq!(ss("V3", StructureKind::Maximal).type_count(), 1);
        assert_eq!(ss("ROVER", StructureKind::Rover).type_count(), 1);
        assert_eq!(
            ss("prod(Qbar1,V2)", StructureKind::ProductBrin).type_count(),
            2
        );
        let q = ss("QV", StructureKind::Maximal);
        assert_eq!(
            q.domain_type_id(&dom(&q, "Pt:0110")),
            q.domain_type_id(&dom(&q, "Pt:e"))
        );
        assert_ne!(
            q.domain_type_id(&dom(&q, "Pt:e")),
            q.domain_type_id(&dom(&q, "T:e"))
        );
        assert_eq!(q.transversal(0), dom(&q, "Pt:e"));
    }

    #[test]
    fn illegal_kinds_rejected() {
        let rover = make_action(&ActionSpec::Rover).unwrap();
        assert!(SStructure::new(rover, StructureKind::Maximal).is_err());
        let v = make_action(&ActionSpec::V(2)).unwrap();
        assert!(SStructure::new(v.clone(), StructureKind::Rover).is_err());
        assert!(SStructure::new(v, StructureKind::ProductBrin).is_err());
    }

    #[test]
    fn brin_recognition() {
        let p = ss("prod(V2,V2)", StructureKind::ProductBrin);
        let base = dom(&p, "(B:exB:e)");
        let pieces = vec![
            dom(&p, "(B:0xB:e)"),
            dom(&p, "(B:1xB:0)"),
            dom(&p, "(B:1xB:1)"),
        ];
        assert!(p.is_pattern(&base, &pieces));
        assert_eq!(p.refine_to_pattern(&base, &pieces), pieces);
        assert!(p.is_pattern(&base, std::slice::from_ref(&base)));
    }

    #[test]
    fn meets_and_restrictions() {
        let v = ss("V2", StructureKind::Maximal);
        let d = |t: &str| dom(&v, t);
        let half = Partition::new(d("B:e"), vec![d("B:0"), d("B:1")]);
        assert_eq!(v.meet(&half, &half).unwrap(), half);
        let three = Partition::new(d("B:e"), vec![d("B:00"), d("B:01"), d("B:1")]);
        assert_eq!(
            v.meet(&Partition::trivial(d("B:e")), &three).unwrap(),
            three
        );
        assert_eq!(
            v.restrict_partition(&three, &d("B:0")).unwrap().pieces,
            vec![d("B:00"), d("B:01")]
        );
    }

    #[test]
    fn rover_structure_not_closed_under_restriction() {
        let r = ss("ROVER", StructureKind::Rover);
        let b = parse_map(r.action(), "rov[b] e->e").unwrap();
        let res = r.action().restrict(&b, &dom(&r, "B:0")).unwrap();
        assert_eq!(res.to_string(), "rov[a] 0->0");
        assert!(!r.contains_map(&res));
        let v = ss("V2", StructureKind::Maximal);
        let s = parse_map(v.action(), "sig 0->11").unwrap();
        assert!(v.contains_map(&v.action().restrict(&s, &dom(&v, "B:01")).unwrap()));
    }

    #[test]
    fn structure_groups() {
        let r = ss("ROVER", StructureKind::Rover);
        let g = r.group(0);
        assert_eq!(g.len(), 4);
        for x in &g {
            for y in &g {
                let c = r.action().compose(x, y);
                assert!(g.iter().any(|z| z.same_as(&c)));
            }
        }
        assert_eq!(ss("QV", StructureKind::Maximal).group(1).len(), 1);
    }

    #[test]
    fn axioms_and_negative_control() {
        let v = ss("V2", StructureKind::Maximal);
        let rep = v.verify_axioms(40, 3);
        assert!(rep.passed(), "{rep:?}");
        let bad = v
            .corrupted(StructureCorruption::DropIdentity)
            .verify_axioms(10, 3);
        assert!(bad.check("S2").unwrap().witness.is_some());
    }
}
