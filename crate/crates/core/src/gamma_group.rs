//! Arithmetic in the group locally determined by an action and in its
//! semigroup of finite disjoint unions of pieces.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::core_action::{
    family_atoms, parse_map, text_split, Action, ActionError, Domain, PartialMap, Point,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("piece {0} is not a map of this action")]
    IllegalPiece(String),
    #[error("sources overlap: {0} and {1}")]
    OverlappingSources(String, String),
    #[error("targets overlap: {0} and {1}")]
    OverlappingTargets(String, String),
    #[error("{0} is not inside the domain of the element")]
    OutsideDomain(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A finite disjoint union of pieces with pairwise disjoint images, kept in
/// canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement {
    pieces: Vec<PartialMap>,
}

impl GammaElement {
    pub fn new(a: &Action, pieces: Vec<PartialMap>) -> Result<GammaElement, GammaError> {
        let pieces: Vec<PartialMap> = pieces.into_iter().filter(|p| !p.is_zero()).collect();
        for p in &pieces {
            if !a.legal_map(p) {
                return Err(GammaError::IllegalPiece(p.to_string()));
            }
        }
        for (i, p) in pieces.iter().enumerate() {
            for q in &pieces[i + 1..] {
                if !a.disjoint(&p.source(), &q.source()) {
                    return Err(GammaError::OverlappingSources(p.to_string(), q.to_string()));
                }
                if !a.disjoint(&p.target(), &q.target()) {
                    return Err(GammaError::OverlappingTargets(p.to_string(), q.to_string()));
                }
            }
        }
        Ok(GammaElement {
            pieces: canonical_pieces(a, pieces),
        })
    }

    /// Builds from pieces already known to be disjoint, skipping validation.
    pub(crate) fn from_disjoint(a: &Action, pieces: Vec<PartialMap>) -> GammaElement {
        GammaElement {
            pieces: canonical_pieces(a, pieces.into_iter().filter(|p| !p.is_zero()).collect()),
        }
    }

    pub fn identity(a: &Action, region: &[Domain]) -> GammaElement {
        GammaElement::from_disjoint(a, region.iter().map(|d| a.identity(d)).collect())
    }

    pub fn pieces(&self) -> &[PartialMap] {
        &self.pieces
    }

    pub fn sources(&self) -> Vec<Domain> {
        self.pieces.iter().map(PartialMap::source).collect()
    }

    pub fn targets(&self) -> Vec<Domain> {
        self.pieces.iter().map(PartialMap::target).collect()
    }

    /// Whether both the domain and the image are the whole space.
    pub fn is_total(&self, a: &Action) -> bool {
        let roots = a.root_domains();
        a.region_eq(&self.sources(), &roots) && a.region_eq(&self.targets(), &roots)
    }

    /// `self ∘ other`, defined where `other` lands in the domain of `self`.
    pub fn compose(&self, a: &Action, other: &GammaElement) -> GammaElement {
        let mut out = Vec::new();
        for t in &other.pieces {
            for s in &self.pieces {
                let c = a.compose(s, t);
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
        GammaElement::from_disjoint(a, out)
    }

    pub fn invert(&self, a: &Action) -> GammaElement {
        GammaElement::from_disjoint(a, self.pieces.iter().map(PartialMap::invert).collect())
    }

    /// Restriction to a single domain inside the element's domain.
    pub fn restrict(&self, a: &Action, d: &Domain) -> Result<GammaElement, GammaError> {
        if !a.covered_by(d, &self.sources()) {
            return Err(GammaError::OutsideDomain(d.to_string()));
        }
        Ok(GammaElement::from_disjoint(a, self.restrict_pieces(a, d)))
    }

    /// Pieces of the restriction to `d`, without canonicalizing.
    pub(crate) fn restrict_pieces(&self, a: &Action, d: &Domain) -> Vec<PartialMap> {
        self.pieces
            .iter()
            .filter_map(|p| {
                let meet = a.intersect(&p.source(), d);
                (!meet.is_empty()).then(|| a.restrict(p, &meet).expect("meet lies in the source"))
            })
            .collect()
    }

    /// The image of a domain covered by a single piece.
    pub fn translate(&self, a: &Action, d: &Domain) -> Option<Domain> {
        let p = self.pieces.iter().find(|p| a.contains(&p.source(), d))?;
        a.translate(p, d).ok()
    }

    /// Equality of maps: same domain and agreement on the common refinement,
    /// with Grigorchuk pieces compared by the oracle.
    pub fn equal(&self, a: &Action, other: &GammaElement) -> bool {
        if !a.region_eq(&self.sources(), &other.sources()) {
            return false;
        }
        let cells = common_cells(a, &self.sources(), &other.sources());
        cells.iter().all(|c| {
            let x = self.pieces.iter().find(|p| a.contains(&p.source(), c));
            let y = other.pieces.iter().find(|p| a.contains(&p.source(), c));
            match (x, y) {
                (Some(x), Some(y)) => a
                    .restrict(x, c)
                    .expect("cell in source")
                    .same_as(&a.restrict(y, c).expect("cell in source")),
                _ => false,
            }
        })
    }

    pub fn apply(&self, a: &Action, x: &Point) -> Option<Point> {
        self.pieces.iter().find_map(|p| a.apply(p, x))
    }

    pub fn parse(a: &Action, s: &str) -> Result<GammaElement, GammaError> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ActionError::Parse(s.to_string()))?;
        let pieces = text_split(body, ';')
            .into_iter()
            .filter(|p| !p.trim().is_empty())
            .map(|p| parse_map(a, p))
            .collect::<Result<Vec<_>, _>>()?;
        GammaElement::new(a, pieces)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.pieces.iter().map(|p| p.to_string()).collect()
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            write!(f, "{}{p}", if i > 0 { " ; " } else { " " })?;
        }
        write!(f, " }}")
    }
}

/// Non-empty pairwise intersections of two families of disjoint domains.
pub(crate) fn common_cells(a: &Action, x: &[Domain], y: &[Domain]) -> Vec<Domain> {
    x.iter()
        .flat_map(|p| y.iter().map(move |q| a.intersect(p, q)))
        .filter(|d| !d.is_empty())
        .collect()
}

/// Merges maps on the bricks obtained by splitting `parent` along coordinate `i`
/// (in split order) into one map on `parent`, if they agree elsewhere.
pub(crate) fn merge_along(
    a: &Action,
    parent: &Domain,
    i: usize,
    maps: &[PartialMap],
) -> Option<PartialMap> {
    let comps: Vec<Vec<PartialMap>> = maps.iter().map(PartialMap::components).collect();
    let first = &comps[0];
    for c in &comps[1..] {
        for j in 0..a.arity() {
            if j != i && !c[j].same_as(&first[j]) {
                return None;
            }
        }
    }
    let column: Vec<PartialMap> = comps.iter().map(|c| c[i].clone()).collect();
    let merged = a.factors()[i].merge(parent.coord(i), &column)?;
    let mut out = first.clone();
    out[i] = merged;
    Some(PartialMap::from_components(out, a.arity()))
}

/// Canonical pieces: restrict to the grid of all coordinate cuts, drop every
/// cut that merges across all rows, then merge remaining siblings greedily.
fn canonical_pieces(a: &Action, pieces: Vec<PartialMap>) -> Vec<PartialMap> {
    if pieces.is_empty() {
        return pieces;
    }
    let arity = a.arity();
    let sources: Vec<Domain> = pieces.iter().map(PartialMap::source).collect();
    let mut atoms: Vec<Vec<Domain>> = (0..arity)
        .map(|i| {
            let proj: Vec<Domain> = sources.iter().map(|s| s.coord(i).clone()).collect();
            family_atoms(a.factors()[i], &proj)
        })
        .collect();
    let mut cells: BTreeMap<Vec<Domain>, PartialMap> = BTreeMap::new();
    for p in &pieces {
        let src = p.source();
        let mut rows: Vec<Vec<Domain>> = vec![vec![]];
        for (i, layer) in atoms.iter().enumerate() {
            let f = a.factors()[i];
            let inside: Vec<&Domain> = layer
                .iter()
                .filter(|d| f.contains(src.coord(i), d))
                .collect();
            rows = rows
                .into_iter()
                .flat_map(|r| {
                    inside.iter().map(move |d| {
                        let mut r = r.clone();
                        r.push((*d).clone());
                        r
                    })
                })
                .collect();
        }
        for r in rows {
            let brick = Domain::from_coords(r.clone(), arity);
            cells.insert(r, a.restrict(p, &brick).expect("cell inside piece"));
        }
    }
    if arity > 1 {
        while let Some((i, parent, merged)) = removable_cut(a, &atoms, &cells) {
            let kids = a.factors()[i].children(&parent);
            atoms[i].retain(|d| !kids.contains(d));
            atoms[i].push(parent);
            atoms[i].sort();
            cells = merged;
        }
    }
    let mut bag: BTreeMap<Domain, PartialMap> = cells
        .into_iter()
        .map(|(k, m)| (Domain::from_coords(k, arity), m))
        .collect();
    'outer: loop {
        let keys: Vec<Domain> = bag.keys().cloned().collect();
        for d in &keys {
            if !bag.contains_key(d) {
                continue;
            }
            for i in 0..arity {
                let Some(p) = a.factors()[i].parent(d.coord(i)) else {
                    continue;
                };
                let mut pc = d.coords();
                pc[i] = p;
                let parent = Domain::from_coords(pc, arity);
                let kids = a.split_coordinate(&parent, i);
                let Some(maps) = kids
                    .iter()
                    .map(|k| bag.get(k).cloned())
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                if let Some(m) = merge_along(a, &parent, i, &maps) {
                    for k in &kids {
                        bag.remove(k);
                    }
                    bag.insert(parent, m);
                    continue 'outer;
                }
            }
        }
        break;
    }
    bag.into_values().collect()
}

type Cells = BTreeMap<Vec<Domain>, PartialMap>;

/// Finds a cut in some coordinate whose removal merges every affected row.
fn removable_cut(
    a: &Action,
    atoms: &[Vec<Domain>],
    cells: &Cells,
) -> Option<(usize, Domain, Cells)> {
    for (i, layer) in atoms.iter().enumerate() {
        let f = a.factors()[i];
        let parents: Vec<Domain> = layer.iter().filter_map(|d| f.parent(d)).collect();
        'parent: for p in parents {
            let kids = f.children(&p);
            if kids.len() < 2 || !kids.iter().all(|k| layer.contains(k)) {
                continue;
            }
            let mut rows: BTreeMap<Vec<Domain>, Vec<Option<PartialMap>>> = BTreeMap::new();
            for (key, m) in cells {
                if let Some(pos) = kids.iter().position(|k| *k == key[i]) {
                    let mut row = key.clone();
                    row[i] = p.clone();
                    rows.entry(row).or_insert_with(|| vec![None; kids.len()])[pos] =
                        Some(m.clone());
                }
            }
            let mut next: Cells = cells
                .iter()
                .filter(|(k, _)| !kids.contains(&k[i]))
                .map(|(k, m)| (k.clone(), m.clone()))
                .collect();
            for (row, maps) in rows {
                let Some(maps) = maps.into_iter().collect::<Option<Vec<_>>>() else {
                    continue 'parent;
                };
                let parent = Domain::from_coords(row.clone(), a.arity());
                let Some(m) = merge_along(a, &parent, i, &maps) else {
                    continue 'parent;
                };
                next.insert(row, m);
            }
            return Some((i, p, next));
        }
    }
    None
}
