//! Equivalence classes `[f, D]`, pseudovertices, the expansion order, the
//! action by locally determined maps, type vectors and transporters.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::core_action::{parse_map, text_split, ActionError, Domain, PartialMap};
use crate::gamma_group::{GammaElement, GammaError};
use crate::s_structure::{SStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvError {
    #[error("the zero map has no class")]
    ZeroMap,
    #[error("the source of {0} is not a single domain")]
    NotADomain(String),
    #[error("images overlap: {0} and {1}")]
    OverlappingImages(String, String),
    #[error("a pair occurs twice")]
    RepeatedPair,
    #[error("a pseudovertex needs at least one pair")]
    Empty,
    #[error("{0} is not a pair of the pseudovertex")]
    NotAPair(String),
    #[error("the pattern is trivial")]
    TrivialPattern,
    #[error("{0} is not a pattern of the transversal domain")]
    NotAPattern(String),
    #[error("{0} is not in the structure group")]
    NotInStructureGroup(String),
    #[error("images differ: {0} vs {1}")]
    ImageMismatch(String, String),
    #[error("type vectors differ: {0:?} vs {1:?}")]
    TypeMismatch(Vec<usize>, Vec<usize>),
    #[error("the image of {0} escapes the domain of the acting map")]
    Escapes(String),
    #[error("order search exceeded its budget of {0} nodes")]
    Budget(usize),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A canonical class `[f, D]`: `f` is stored with source the transversal of
/// its type, minimized over the structure group of that transversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassPair {
    text: String,
    type_id: usize,
    map: GammaElement,
}

impl ClassPair {
    pub fn type_id(&self) -> usize {
        self.type_id
    }

    pub fn map(&self) -> &GammaElement {
        &self.map
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// The image `f(D)` as disjoint domains.
    pub fn image(&self) -> Vec<Domain> {
        self.map.targets()
    }
}

impl PartialOrd for ClassPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClassPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.text.cmp(&other.text)
    }
}

impl fmt::Display for ClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn map_text(g: &GammaElement) -> String {
    match g.pieces() {
        [one] => one.to_string(),
        many => format!(
            "pw({})",
            many.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("|")
        ),
    }
}

fn class_key(g: &GammaElement) -> (usize, String) {
    let t = map_text(g);
    (t.len(), t)
}

/// The class of a locally determined embedding `f` whose domain is a single domain.
pub fn make_class(ss: &SStructure, f: &GammaElement) -> Result<ClassPair, PvError> {
    let a = ss.action();
    if f.pieces().is_empty() {
        return Err(PvError::ZeroMap);
    }
    let d = a
        .region_as_domain(&f.sources())
        .ok_or_else(|| PvError::NotADomain(f.to_string()))?;
    let type_id = ss.domain_type_id(&d)?;
    let carry = GammaElement::from_disjoint(a, vec![ss.transport(&d)?]);
    let base = f.compose(a, &carry);
    let best = ss
        .group(type_id)
        .into_iter()
        .map(|h| base.compose(a, &GammaElement::from_disjoint(a, vec![h])))
        .min_by_key(class_key)
        .expect("structure groups contain the identity");
    Ok(ClassPair {
        text: map_text(&best),
        type_id,
        map: best,
    })
}

/// The class of a single map of the action.
pub fn class_of_map(ss: &SStructure, m: &PartialMap) -> Result<ClassPair, PvError> {
    if m.is_zero() {
        return Err(PvError::ZeroMap);
    }
    make_class(ss, &GammaElement::new(ss.action(), vec![m.clone()])?)
}

/// `[id_D, D]`.
pub fn identity_class(ss: &SStructure, d: &Domain) -> Result<ClassPair, PvError> {
    class_of_map(ss, &ss.action().identity(d))
}

/// Parses a class: a single map or `pw(m1|m2|...)`.
pub fn parse_class(ss: &SStructure, s: &str) -> Result<ClassPair, PvError> {
    let s = s.trim();
    let a = ss.action();
    let pieces = match s.strip_prefix("pw(").and_then(|t| t.strip_suffix(')')) {
        Some(body) => text_split(body, '|')
            .into_iter()
            .map(|p| parse_map(a, p))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![parse_map(a, s)?],
    };
    make_class(ss, &GammaElement::new(a, pieces)?)
}

/// A finite set of classes with pairwise disjoint images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pseudovertex {
    pairs: Vec<ClassPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeVector(pub Vec<usize>);

impl TypeVector {
    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    /// Coordinatewise `self ≽ other`.
    pub fn dominates(&self, other: &TypeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Pseudovertex {
    pub fn new(ss: &SStructure, pairs: Vec<ClassPair>) -> Result<Pseudovertex, PvError> {
        let a = ss.action();
        if pairs.is_empty() {
            return Err(PvError::Empty);
        }
        let n = pairs.len();
        let set: BTreeSet<ClassPair> = pairs.into_iter().collect();
        let pairs: Vec<ClassPair> = set.into_iter().collect();
        if pairs.len() < n {
            return Err(PvError::RepeatedPair);
        }
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[i + 1..] {
                let overlap = p
                    .image()
                    .iter()
                    .any(|x| q.image().iter().any(|y| !a.disjoint(x, y)));
                if overlap {
                    return Err(PvError::OverlappingImages(p.to_string(), q.to_string()));
                }
            }
        }
        Ok(Pseudovertex { pairs })
    }

    /// Builds from classes already known to have disjoint images.
    pub(crate) fn from_pairs(pairs: Vec<ClassPair>) -> Pseudovertex {
        let set: BTreeSet<ClassPair> = pairs.into_iter().collect();
        Pseudovertex {
            pairs: set.into_iter().collect(),
        }
    }

    pub fn single(b: ClassPair) -> Pseudovertex {
        Pseudovertex { pairs: vec![b] }
    }

    pub fn parse(ss: &SStructure, s: &str) -> Result<Pseudovertex, PvError> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ActionError::Parse(s.to_string()))?;
        let pairs = text_split(body, ';')
            .into_iter()
            .filter(|p| !p.trim().is_empty())
            .map(|p| parse_class(ss, p))
            .collect::<Result<Vec<_>, _>>()?;
        Pseudovertex::new(ss, pairs)
    }

    pub fn pairs(&self) -> &[ClassPair] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn image(&self) -> Vec<Domain> {
        self.pairs.iter().flat_map(ClassPair::image).collect()
    }

    pub fn contains(&self, b: &ClassPair) -> bool {
        self.pairs.binary_search(b).is_ok()
    }

    pub fn type_vector(&self, ss: &SStructure) -> TypeVector {
        let mut v = vec![0; ss.type_count()];
        for p in &self.pairs {
            v[p.type_id] += 1;
        }
        TypeVector(v)
    }

    pub fn same_type(&self, ss: &SStructure, other: &Pseudovertex) -> bool {
        self.type_vector(ss) == other.type_vector(ss)
    }

    /// Pairs whose images lie inside `region`.
    pub fn inside(&self, ss: &SStructure, region: &[Domain]) -> Vec<ClassPair> {
        self.pairs
            .iter()
            .filter(|p| ss.action().region_subset(&p.image(), region))
            .cloned()
            .collect()
    }

    /// Replaces `at` by the given classes.
    pub fn replace(&self, at: &ClassPair, with: &[ClassPair]) -> Pseudovertex {
        let mut pairs: Vec<ClassPair> = self.pairs.iter().filter(|p| *p != at).cloned().collect();
        pairs.extend(with.iter().cloned());
        Pseudovertex::from_pairs(pairs)
    }

    /// Union of pseudovertices with disjoint images.
    pub fn union(parts: &[Pseudovertex]) -> Pseudovertex {
        Pseudovertex::from_pairs(parts.iter().flat_map(|p| p.pairs.iter().cloned()).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.pairs.iter().map(|p| p.text.clone()).collect()
    }
}

impl fmt::Display for Pseudovertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            write!(f, "{}{p}", if i > 0 { " ; " } else { " " })?;
        }
        write!(f, " }}")
    }
}

/// The classes `[f h, E]` for `E` in `pattern`, a pattern of the transversal of `b`.
pub fn expand_pair(
    ss: &SStructure,
    b: &ClassPair,
    h: &PartialMap,
    pattern: &[Domain],
) -> Result<Vec<ClassPair>, PvError> {
    let a = ss.action();
    let base = ss.transversal(b.type_id);
    if pattern.len() < 2 {
        return Err(PvError::TrivialPattern);
    }
    if !a.is_partition_of(&base, pattern) || !ss.is_pattern(&base, pattern) {
        return Err(PvError::NotAPattern(format!("{pattern:?}")));
    }
    if !ss.group(b.type_id).iter().any(|g| g.same_as(h)) {
        return Err(PvError::NotInStructureGroup(h.to_string()));
    }
    let fh = b
        .map
        .compose(a, &GammaElement::from_disjoint(a, vec![h.clone()]));
    pattern
        .iter()
        .map(|e| {
            make_class(
                ss,
                &GammaElement::from_disjoint(a, fh.restrict_pieces(a, e)),
            )
        })
        .collect()
}

/// An expansion of `v` at `at`.
pub fn expand(
    ss: &SStructure,
    v: &Pseudovertex,
    at: &ClassPair,
    h: &PartialMap,
    pattern: &[Domain],
) -> Result<Pseudovertex, PvError> {
    if !v.contains(at) {
        return Err(PvError::NotAPair(at.to_string()));
    }
    Ok(v.replace(at, &expand_pair(ss, at, h, pattern)?))
}

/// The distinct simple expansions of a single class, each as its replacing classes.
pub fn simple_expansions_of(ss: &SStructure, b: &ClassPair) -> Vec<Vec<ClassPair>> {
    let base = ss.transversal(b.type_id);
    let mut out: BTreeSet<Vec<ClassPair>> = BTreeSet::new();
    for pattern in ss.simple_patterns(&base) {
        for h in ss.group(b.type_id) {
            let mut kids = expand_pair(ss, b, &h, &pattern).expect("simple patterns are legal");
            kids.sort();
            out.insert(kids);
        }
    }
    out.into_iter().collect()
}

/// All simple expansions of `v`, deduplicated.
pub fn simple_expansions(ss: &SStructure, v: &Pseudovertex) -> Vec<Pseudovertex> {
    let set: BTreeSet<Pseudovertex> = v
        .pairs
        .iter()
        .flat_map(|b| {
            simple_expansions_of(ss, b)
                .into_iter()
                .map(move |kids| v.replace(b, &kids))
        })
        .collect();
    set.into_iter().collect()
}

/// Outcome of a budgeted order query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

pub const DEFAULT_ORDER_BUDGET: usize = 200_000;

/// Decides the expansion order with caller-local memo tables.
pub struct OrderOracle<'a> {
    ss: &'a SStructure,
    budget: usize,
    spent: usize,
    simple: HashMap<ClassPair, Rc<Vec<Vec<ClassPair>>>>,
    memo: HashMap<(ClassPair, Vec<ClassPair>), bool>,
}

impl<'a> OrderOracle<'a> {
    pub fn new(ss: &'a SStructure) -> OrderOracle<'a> {
        OrderOracle::with_budget(ss, DEFAULT_ORDER_BUDGET)
    }

    pub fn with_budget(ss: &'a SStructure, budget: usize) -> OrderOracle<'a> {
        OrderOracle {
            ss,
            budget,
            spent: 0,
            simple: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    pub fn structure(&self) -> &'a SStructure {
        self.ss
    }

    pub fn simple_of(&mut self, b: &ClassPair) -> Rc<Vec<Vec<ClassPair>>> {
        if let Some(s) = self.simple.get(b) {
            return s.clone();
        }
        let s = Rc::new(simple_expansions_of(self.ss, b));
        self.simple.insert(b.clone(), s.clone());
        s
    }

    /// Whether `v1 ≤ v2`: each pair of `v1` must expand to the pairs of `v2`
    /// inside its image, decided through simple expansions.
    pub fn compare(&mut self, v1: &Pseudovertex, v2: &Pseudovertex) -> Verdict {
        let a = self.ss.action();
        if v1.rank() > v2.rank() || !a.region_eq(&v1.image(), &v2.image()) {
            return Verdict::False;
        }
        let mut used = 0;
        let mut parts = Vec::new();
        for b in &v1.pairs {
            let w = v2.inside(self.ss, &b.image());
            if w.is_empty()
                || !a.region_eq(&b.image(), &Pseudovertex::from_pairs(w.clone()).image())
            {
                return Verdict::False;
            }
            used += w.len();
            parts.push((b.clone(), w));
        }
        if used != v2.rank() {
            return Verdict::False;
        }
        for (b, w) in parts {
            match self.below(&b, w) {
                Some(true) => {}
                Some(false) => return Verdict::False,
                None => return Verdict::Unknown,
            }
        }
        Verdict::True
    }

    pub fn leq(&mut self, v1: &Pseudovertex, v2: &Pseudovertex) -> Result<bool, PvError> {
        match self.compare(v1, v2) {
            Verdict::True => Ok(true),
            Verdict::False => Ok(false),
            Verdict::Unknown => Err(PvError::Budget(self.budget)),
        }
    }

    /// Whether `{b} ≤ w`, given that the images agree.
    fn below(&mut self, b: &ClassPair, mut w: Vec<ClassPair>) -> Option<bool> {
        if w.len() == 1 {
            return Some(w[0] == *b);
        }
        w.sort();
        let key = (b.clone(), w.clone());
        if let Some(&r) = self.memo.get(&key) {
            return Some(r);
        }
        self.spent += 1;
        if self.spent > self.budget {
            return None;
        }
        let a = self.ss.action();
        let options = self.simple_of(b);
        let mut found = false;
        'option: for kids in options.iter() {
            if kids.len() > w.len() {
                continue;
            }
            let mut groups = Vec::new();
            let mut used = 0;
            for c in kids {
                let wc: Vec<ClassPair> = w
                    .iter()
                    .filter(|x| a.region_subset(&x.image(), &c.image()))
                    .cloned()
                    .collect();
                if wc.is_empty() {
                    continue 'option;
                }
                used += wc.len();
                groups.push((c.clone(), wc));
            }
            if used != w.len() {
                continue;
            }
            for (c, wc) in &groups {
                let img: Vec<Domain> = wc.iter().flat_map(ClassPair::image).collect();
                if !a.region_eq(&c.image(), &img) {
                    continue 'option;
                }
            }
            let mut all = true;
            for (c, wc) in groups {
                match self.below(&c, wc) {
                    Some(true) => {}
                    Some(false) => {
                        all = false;
                        break;
                    }
                    None => return None,
                }
            }
            if all {
                found = true;
                break;
            }
        }
        self.memo.insert(key, found);
        Some(found)
    }
}

/// `v1 ≤ v2` with a fresh oracle and the default budget.
pub fn leq(ss: &SStructure, v1: &Pseudovertex, v2: &Pseudovertex) -> Result<bool, PvError> {
    OrderOracle::new(ss).leq(v1, v2)
}

/// Domains `E` such that `{b} ≤ {[id_E, E]}`: a pattern on whose pieces `f`
/// restricts into the structure sets.
pub fn identity_form(ss: &SStructure, b: &ClassPair) -> Result<Vec<Domain>, PvError> {
    let base = ss.transversal(b.type_id);
    let witness = ss
        .generation_witness(&base, b.map.pieces())
        .ok_or_else(|| PvError::NotAPattern(b.to_string()))?;
    Ok(witness.iter().map(PartialMap::target).collect())
}

/// A common upper bound of two pseudovertices with the same image.
pub fn common_upper_bound(
    ss: &SStructure,
    v1: &Pseudovertex,
    v2: &Pseudovertex,
) -> Result<Pseudovertex, PvError> {
    let a = ss.action();
    if !a.region_eq(&v1.image(), &v2.image()) {
        return Err(PvError::ImageMismatch(v1.to_string(), v2.to_string()));
    }
    if v1 == v2 {
        return Ok(v1.clone());
    }
    let mut oracle = OrderOracle::new(ss);
    if oracle.compare(v1, v2) == Verdict::True {
        return Ok(v2.clone());
    }
    if oracle.compare(v2, v1) == Verdict::True {
        return Ok(v1.clone());
    }
    let mut forms = Vec::new();
    for v in [v1, v2] {
        let mut blocks = Vec::new();
        for b in &v.pairs {
            blocks.push(identity_form(ss, b)?);
        }
        forms.push(blocks);
    }
    let flat = |f: &Vec<Vec<Domain>>| f.iter().flatten().cloned().collect::<Vec<_>>();
    let mut cells = crate::gamma_group::common_cells(a, &flat(&forms[0]), &flat(&forms[1]));
    for form in &forms {
        for block in form.iter().flatten() {
            let inside: Vec<Domain> = cells
                .iter()
                .filter(|c| a.contains(block, c))
                .cloned()
                .collect();
            let refined = ss.refine_to_pattern(block, &inside);
            cells.retain(|c| !a.contains(block, c));
            cells.extend(refined);
        }
    }
    let pairs = cells
        .iter()
        .map(|c| identity_class(ss, c))
        .collect::<Result<Vec<_>, _>>()?;
    let u = Pseudovertex::new(ss, pairs)?;
    Ok(u)
}

/// `ŝ · v`, postcomposing every class.
pub fn act(ss: &SStructure, s: &GammaElement, v: &Pseudovertex) -> Result<Pseudovertex, PvError> {
    let a = ss.action();
    let pairs = v
        .pairs
        .iter()
        .map(|b| {
            if !a.region_subset(&b.image(), &s.sources()) {
                return Err(PvError::Escapes(b.to_string()));
            }
            make_class(ss, &s.compose(a, &b.map))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Pseudovertex::from_pairs(pairs))
}

/// A locally determined map carrying `v1` onto `v2`, for pseudovertices of the same type.
pub fn transporter(
    ss: &SStructure,
    v1: &Pseudovertex,
    v2: &Pseudovertex,
) -> Result<GammaElement, PvError> {
    let (t1, t2) = (v1.type_vector(ss), v2.type_vector(ss));
    if t1 != t2 {
        return Err(PvError::TypeMismatch(t1.0, t2.0));
    }
    let a = ss.action();
    let sorted = |v: &Pseudovertex| {
        let mut p = v.pairs.clone();
        p.sort_by(|x, y| x.type_id.cmp(&y.type_id).then_with(|| x.cmp(y)));
        p
    };
    let mut pieces = Vec::new();
    for (f, g) in sorted(v1).iter().zip(sorted(v2).iter()) {
        pieces.extend(g.map.compose(a, &f.map.invert(a)).pieces().iter().cloned());
    }
    Ok(GammaElement::new(a, pieces)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::s_structure::StructureKind;
    use crate::semigroups::{make_action, ActionSpec};

    fn ss(spec: &str, kind: StructureKind) -> SStructure {
        SStructure::new(
            make_action(&ActionSpec::parse(spec).unwrap()).unwrap(),
            kind,
        )
        .unwrap()
    }

    fn pv(s: &SStructure, t: &str) -> Pseudovertex {
        Pseudovertex::parse(s, t).unwrap()
    }

    fn class(s: &SStructure, t: &str) -> ClassPair {
        parse_class(s, t).unwrap()
    }

    #[test]
    fn classes_are_canonical() {
        let v = ss("V2", StructureKind::Maximal);
        assert_eq!(class(&v, "sig 0->1"), class(&v, "sig 0->1"));
        assert_eq!(class(&v, "sig 0->1").text(), "sig e->1");
        let r = ss("ROVER", StructureKind::Rover);
        let b = class(&r, "rov[b] e->0");
        let s = class(&r, "sig e->0");
        assert_eq!(b.image(), s.image());
        let a = class(&r, "rov[a] e->0");
        assert_ne!(a, s);
        let cd = make_class(
            &r,
            &GammaElement::new(
                r.action(),
                vec![parse_map(r.action(), "rov[cd] e->0").unwrap()],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(cd, b);
        assert_eq!(b, s, "b lies in the structure group, so [b,e] = [id,e]");
    }

    #[test]
    fn simple_expansion_counts() {
        let v = ss("V2", StructureKind::Maximal);
        assert_eq!(simple_expansions(&v, &pv(&v, "{ sig e->e }")).len(), 1);
        let r = ss("ROVER", StructureKind::Rover);
        let ex = simple_expansions(&r, &pv(&r, "{ sig e->e }"));
        assert_eq!(ex.len(), 2);
        let texts: Vec<String> = ex.iter().map(|p| p.to_string()).collect();
        assert!(
            texts.contains(&"{ rov[a] e->0 ; sig e->1 }".to_string()),
            "{texts:?}"
        );
        assert!(
            texts.contains(&"{ sig e->0 ; sig e->1 }".to_string()),
            "{texts:?}"
        );
        let h = ss("H2", StructureKind::Maximal);
        assert!(simple_expansions(&h, &pv(&h, "{ tau 1,1->1,3 }")).is_empty());
    }

    #[test]
    fn order_examples() {
        let v = ss("V2", StructureKind::Maximal);
        let top = pv(&v, "{ sig e->e }");
        let three = pv(&v, "{ sig e->00 ; sig e->01 ; sig e->1 }");
        assert!(leq(&v, &top, &top).unwrap());
        assert!(leq(&v, &top, &three).unwrap());
        assert!(!leq(&v, &three, &top).unwrap());
        let swapped = pv(&v, "{ pw(sig 0->1|sig 1->0) }");
        assert!(!leq(&v, &top, &pv(&v, "{ sig e->0 ; sig e->1 }")).unwrap() || swapped != top);
        let r = ss("ROVER", StructureKind::Rover);
        let rt = pv(&r, "{ sig e->e }");
        assert!(leq(&r, &rt, &pv(&r, "{ rov[a] e->0 ; sig e->1 }")).unwrap());
        assert!(!leq(&r, &rt, &pv(&r, "{ rov[a] e->0 ; rov[a] e->1 }")).unwrap());
    }

    #[test]
    fn type_vectors() {
        let q = ss("QV", StructureKind::Maximal);
        assert_eq!(
            pv(&q, "{ sig e->e }").type_vector(&q),
            TypeVector(vec![0, 1])
        );
        let x = pv(&q, "{ sig e->0 ; sig e->1 ; tau e->e }");
        assert_eq!(x.type_vector(&q), TypeVector(vec![1, 2]));
        assert!(leq(&q, &pv(&q, "{ sig e->e }"), &x).unwrap());
    }

    #[test]
    fn upper_bounds_and_transporters() {
        let v = ss("V2", StructureKind::Maximal);
        let x = pv(&v, "{ sig e->0 ; sig e->1 }");
        let y = pv(&v, "{ sig e->00 ; sig e->01 ; sig e->1 }");
        assert_eq!(common_upper_bound(&v, &x, &y).unwrap(), y);
        let z = pv(&v, "{ sig e->0 ; sig e->10 ; sig e->11 }");
        let u = common_upper_bound(&v, &y, &z).unwrap();
        assert!(leq(&v, &y, &u).unwrap() && leq(&v, &z, &u).unwrap());
        let g = transporter(&v, &y, &z).unwrap();
        assert!(g.is_total(v.action()));
        assert_eq!(act(&v, &g, &y).unwrap(), z);
    }

    #[test]
    fn expansion_errors() {
        let q = ss("QV", StructureKind::Maximal);
        let p = pv(&q, "{ tau e->e }");
        let b = p.pairs()[0].clone();
        let base = q.transversal(b.type_id());
        let id = q.action().identity(&base);
        assert_eq!(
            expand(&q, &p, &b, &id, &[base]),
            Err(PvError::TrivialPattern)
        );
    }
}
