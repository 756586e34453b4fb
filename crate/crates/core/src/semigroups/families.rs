//! Per-coordinate domain and map calculus for each registered family.

use crate::core_action::{Domain, PartialMap, Point, Word};
use crate::semigroups::grig::GrigWord;

/// One coordinate of an action: a single registered inverse semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Prefix replacement on `n`-ary Cantor space.
    Cantor { arity: u8 },
    /// Subtree and vertex maps on the vertices of the `n`-ary rooted tree.
    Tree { arity: u8 },
    /// Point moves and shifts on `n` rays of naturals.
    Houghton { rays: u32 },
    /// Grigorchuk-twisted prefix replacement on binary Cantor space.
    Rover,
}

fn suffix(w: &Word, prefix: &Word) -> Option<Word> {
    w.strip_prefix(prefix)
}

fn all_words(arity: u8, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..arity {
                next.push(w.child(x));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl Family {
    pub fn arity(&self) -> u8 {
        match self {
            Family::Cantor { arity } | Family::Tree { arity } => *arity,
            Family::Rover => 2,
            Family::Houghton { .. } => 0,
        }
    }

    fn word_ok(&self, w: &Word) -> bool {
        w.max_letter().is_none_or(|m| m < self.arity())
    }

    pub fn legal_domain(&self, d: &Domain) -> bool {
        match (self, d) {
            (Family::Cantor { .. } | Family::Rover, Domain::Cone(w)) => self.word_ok(w),
            (Family::Tree { .. }, Domain::Subtree(w) | Domain::Vertex(w)) => self.word_ok(w),
            (
                Family::Houghton { rays },
                Domain::Ray { tray, offset } | Domain::RayPoint { tray, offset },
            ) => *tray >= 1 && tray <= rays && *offset >= 1,
            _ => false,
        }
    }

    pub fn legal_map(&self, m: &PartialMap) -> bool {
        let shape = matches!(
            (self, m),
            (Family::Cantor { .. }, PartialMap::Cone { .. })
                | (Family::Rover, PartialMap::Twist { .. })
                | (Family::Tree { .. }, PartialMap::Subtree { .. })
                | (
                    Family::Tree { .. },
                    PartialMap::Singleton {
                        from: Domain::Vertex(_),
                        to: Domain::Vertex(_),
                    },
                )
                | (Family::Houghton { .. }, PartialMap::Shift { .. })
                | (
                    Family::Houghton { .. },
                    PartialMap::Singleton {
                        from: Domain::RayPoint { .. },
                        to: Domain::RayPoint { .. },
                    },
                )
        );
        shape && self.legal_domain(&m.source()) && self.legal_domain(&m.target())
    }

    /// Designated top domains whose disjoint union is the whole space.
    pub fn roots(&self) -> Vec<Domain> {
        match self {
            Family::Cantor { .. } | Family::Rover => vec![Domain::Cone(Word::empty())],
            Family::Tree { .. } => vec![Domain::Subtree(Word::empty())],
            Family::Houghton { rays } => (1..=*rays)
                .map(|tray| Domain::Ray { tray, offset: 1 })
                .collect(),
        }
    }

    /// Whether `inner ⊆ outer`.
    pub fn contains(&self, outer: &Domain, inner: &Domain) -> bool {
        match (outer, inner) {
            (Domain::Cone(a), Domain::Cone(b)) => a.is_prefix_of(b),
            (Domain::Subtree(a), Domain::Subtree(b) | Domain::Vertex(b)) => a.is_prefix_of(b),
            (Domain::Vertex(a), Domain::Vertex(b)) => a == b,
            (
                Domain::Ray { tray: j, offset: k },
                Domain::Ray {
                    tray: j2,
                    offset: k2,
                },
            )
            | (
                Domain::Ray { tray: j, offset: k },
                Domain::RayPoint {
                    tray: j2,
                    offset: k2,
                },
            ) => j == j2 && k2 >= k,
            (Domain::RayPoint { .. }, Domain::RayPoint { .. }) => outer == inner,
            (_, Domain::Empty) => true,
            _ => false,
        }
    }

    /// Intersection; domains are nested or disjoint.
    pub fn intersect(&self, a: &Domain, b: &Domain) -> Domain {
        if self.contains(a, b) {
            b.clone()
        } else if self.contains(b, a) {
            a.clone()
        } else {
            Domain::Empty
        }
    }

    /// The maximal partition; `[d]` when `d` has no proper subdomain.
    pub fn children(&self, d: &Domain) -> Vec<Domain> {
        match d {
            Domain::Cone(w) => (0..self.arity())
                .map(|x| Domain::Cone(w.child(x)))
                .collect(),
            Domain::Subtree(w) => {
                let mut out = vec![Domain::Vertex(w.clone())];
                out.extend((0..self.arity()).map(|x| Domain::Subtree(w.child(x))));
                out
            }
            Domain::Ray { tray, offset } => vec![
                Domain::RayPoint {
                    tray: *tray,
                    offset: *offset,
                },
                Domain::Ray {
                    tray: *tray,
                    offset: offset + 1,
                },
            ],
            other => vec![other.clone()],
        }
    }

    /// The least domain strictly containing `d`, if any.
    pub fn parent(&self, d: &Domain) -> Option<Domain> {
        match d {
            Domain::Cone(w) => w.parent().map(Domain::Cone),
            Domain::Subtree(w) => w.parent().map(Domain::Subtree),
            Domain::Vertex(w) => Some(Domain::Subtree(w.clone())),
            Domain::Ray { tray, offset } if *offset > 1 => Some(Domain::Ray {
                tray: *tray,
                offset: offset - 1,
            }),
            Domain::RayPoint { tray, offset } => Some(Domain::Ray {
                tray: *tray,
                offset: *offset,
            }),
            _ => None,
        }
    }

    /// Least domain containing both, if any.
    pub fn join(&self, a: &Domain, b: &Domain) -> Option<Domain> {
        if self.contains(a, b) {
            return Some(a.clone());
        }
        if self.contains(b, a) {
            return Some(b.clone());
        }
        match (a, b) {
            (Domain::Cone(x), Domain::Cone(y)) => Some(Domain::Cone(x.common_prefix(y))),
            (Domain::Subtree(x) | Domain::Vertex(x), Domain::Subtree(y) | Domain::Vertex(y)) => {
                Some(Domain::Subtree(x.common_prefix(y)))
            }
            (
                Domain::Ray { tray: j, offset: k } | Domain::RayPoint { tray: j, offset: k },
                Domain::Ray {
                    tray: j2,
                    offset: k2,
                }
                | Domain::RayPoint {
                    tray: j2,
                    offset: k2,
                },
            ) if j == j2 => Some(Domain::Ray {
                tray: *j,
                offset: (*k).min(*k2),
            }),
            _ => None,
        }
    }

    /// Description size: word length, or offset minus one.
    pub fn size(&self, d: &Domain) -> usize {
        match d {
            Domain::Cone(w) | Domain::Subtree(w) | Domain::Vertex(w) => w.len(),
            Domain::Ray { offset, .. } | Domain::RayPoint { offset, .. } => (*offset - 1) as usize,
            _ => 0,
        }
    }

    /// All domains of description size at most `max`.
    pub fn domains_up_to(&self, max: usize) -> Vec<Domain> {
        match self {
            Family::Cantor { arity } => all_words(*arity, max)
                .into_iter()
                .map(Domain::Cone)
                .collect(),
            Family::Rover => all_words(2, max).into_iter().map(Domain::Cone).collect(),
            Family::Tree { arity } => all_words(*arity, max)
                .into_iter()
                .flat_map(|w| [Domain::Vertex(w.clone()), Domain::Subtree(w)])
                .collect(),
            Family::Houghton { rays } => (1..=*rays)
                .flat_map(|tray| {
                    (1..=max as u64 + 1).flat_map(move |offset| {
                        [
                            Domain::RayPoint { tray, offset },
                            Domain::Ray { tray, offset },
                        ]
                    })
                })
                .collect(),
        }
    }

    pub fn type_count(&self) -> usize {
        match self {
            Family::Cantor { .. } | Family::Rover => 1,
            Family::Tree { .. } => 2,
            Family::Houghton { rays } => *rays as usize + 1,
        }
    }

    /// Domain type under the maximal structure; points come first.
    pub fn type_of(&self, d: &Domain) -> Option<usize> {
        match d {
            Domain::Cone(_) | Domain::Vertex(_) | Domain::RayPoint { .. } => Some(0),
            Domain::Subtree(_) => Some(1),
            Domain::Ray { tray, .. } => Some(*tray as usize),
            _ => None,
        }
    }

    pub fn transversal(&self, t: usize) -> Domain {
        match self {
            Family::Cantor { .. } | Family::Rover => Domain::Cone(Word::empty()),
            Family::Tree { .. } if t == 0 => Domain::Vertex(Word::empty()),
            Family::Tree { .. } => Domain::Subtree(Word::empty()),
            Family::Houghton { .. } if t == 0 => Domain::RayPoint { tray: 1, offset: 1 },
            Family::Houghton { .. } => Domain::Ray {
                tray: t as u32,
                offset: 1,
            },
        }
    }

    /// The unique untwisted map between two domains of the same type.
    pub fn plain_map(&self, d1: &Domain, d2: &Domain) -> Option<PartialMap> {
        match (self, d1, d2) {
            (Family::Cantor { .. }, Domain::Cone(u), Domain::Cone(p)) => Some(PartialMap::Cone {
                from: u.clone(),
                to: p.clone(),
            }),
            (Family::Rover, Domain::Cone(u), Domain::Cone(p)) => Some(PartialMap::Twist {
                g: GrigWord::identity(),
                from: u.clone(),
                to: p.clone(),
            }),
            (Family::Tree { .. }, Domain::Subtree(u), Domain::Subtree(p)) => {
                Some(PartialMap::Subtree {
                    from: u.clone(),
                    to: p.clone(),
                })
            }
            (Family::Tree { .. }, Domain::Vertex(_), Domain::Vertex(_))
            | (Family::Houghton { .. }, Domain::RayPoint { .. }, Domain::RayPoint { .. }) => {
                Some(PartialMap::Singleton {
                    from: d1.clone(),
                    to: d2.clone(),
                })
            }
            (
                Family::Houghton { .. },
                Domain::Ray { tray, offset: k },
                Domain::Ray {
                    tray: tray2,
                    offset: k2,
                },
            ) if tray == tray2 => Some(PartialMap::Shift {
                tray: *tray,
                from: *k,
                to: *k2,
            }),
            _ => None,
        }
    }

    pub fn identity(&self, d: &Domain) -> Option<PartialMap> {
        self.plain_map(d, d)
    }

    /// Restriction of `m` to `d ⊆ source(m)`.
    pub fn restrict(&self, m: &PartialMap, d: &Domain) -> Option<PartialMap> {
        match (m, d) {
            (_, Domain::Empty) => Some(PartialMap::Zero),
            (PartialMap::Cone { from, to }, Domain::Cone(w)) => {
                suffix(w, from).map(|r| PartialMap::Cone {
                    from: w.clone(),
                    to: to.concat(&r),
                })
            }
            (PartialMap::Subtree { from, to }, Domain::Subtree(w)) => {
                suffix(w, from).map(|r| PartialMap::Subtree {
                    from: w.clone(),
                    to: to.concat(&r),
                })
            }
            (PartialMap::Subtree { from, to }, Domain::Vertex(w)) => {
                suffix(w, from).map(|r| PartialMap::Singleton {
                    from: d.clone(),
                    to: Domain::Vertex(to.concat(&r)),
                })
            }
            (PartialMap::Singleton { from, .. }, _) if from == d => Some(m.clone()),
            (PartialMap::Shift { tray, from, to }, Domain::Ray { tray: j, offset })
                if j == tray && offset >= from =>
            {
                Some(PartialMap::Shift {
                    tray: *tray,
                    from: *offset,
                    to: offset + to - from,
                })
            }
            (PartialMap::Shift { tray, from, to }, Domain::RayPoint { tray: j, offset })
                if j == tray && offset >= from =>
            {
                Some(PartialMap::Singleton {
                    from: d.clone(),
                    to: Domain::RayPoint {
                        tray: *tray,
                        offset: offset + to - from,
                    },
                })
            }
            (PartialMap::Twist { g, from, to }, Domain::Cone(w)) => suffix(w, from).map(|r| {
                let (sec, img) = g.section_path(r.letters());
                PartialMap::twist(sec, w.clone(), to.concat(&Word::from_letters(img)))
            }),
            _ => None,
        }
    }

    /// `s ∘ t` when `target(t) = source(s)`.
    pub fn chain(&self, s: &PartialMap, t: &PartialMap) -> Option<PartialMap> {
        match (s, t) {
            (PartialMap::Cone { from: a, to }, PartialMap::Cone { from, to: b }) if a == b => {
                Some(PartialMap::Cone {
                    from: from.clone(),
                    to: to.clone(),
                })
            }
            (PartialMap::Subtree { from: a, to }, PartialMap::Subtree { from, to: b })
                if a == b =>
            {
                Some(PartialMap::Subtree {
                    from: from.clone(),
                    to: to.clone(),
                })
            }
            (PartialMap::Singleton { from: a, to }, PartialMap::Singleton { from, to: b })
                if a == b =>
            {
                Some(PartialMap::Singleton {
                    from: from.clone(),
                    to: to.clone(),
                })
            }
            (
                PartialMap::Shift { tray, from: a, to },
                PartialMap::Shift {
                    tray: j,
                    from,
                    to: b,
                },
            ) if tray == j && a == b => Some(PartialMap::Shift {
                tray: *tray,
                from: *from,
                to: *to,
            }),
            (PartialMap::Twist { g, from: a, to }, PartialMap::Twist { g: h, from, to: b })
                if a == b =>
            {
                Some(PartialMap::twist(g.multiply(h), from.clone(), to.clone()))
            }
            _ => None,
        }
    }

    /// Merges maps on the maximal partition of `parent` (in [`Family::children`]
    /// order) into a single map on `parent`, when one exists.
    pub fn merge(&self, parent: &Domain, maps: &[PartialMap]) -> Option<PartialMap> {
        match (self, parent) {
            (Family::Cantor { .. }, Domain::Cone(u)) => {
                let mut base: Option<Word> = None;
                for (x, m) in maps.iter().enumerate() {
                    let PartialMap::Cone { to, .. } = m else {
                        return None;
                    };
                    if to.last() != Some(x as u8) {
                        return None;
                    }
                    let p = to.parent()?;
                    if base.get_or_insert_with(|| p.clone()) != &p {
                        return None;
                    }
                }
                Some(PartialMap::Cone {
                    from: u.clone(),
                    to: base?,
                })
            }
            (Family::Tree { .. }, Domain::Subtree(u)) => {
                let PartialMap::Singleton {
                    to: Domain::Vertex(p),
                    ..
                } = &maps[0]
                else {
                    return None;
                };
                for (x, m) in maps[1..].iter().enumerate() {
                    let PartialMap::Subtree { to, .. } = m else {
                        return None;
                    };
                    if *to != p.child(x as u8) {
                        return None;
                    }
                }
                Some(PartialMap::Subtree {
                    from: u.clone(),
                    to: p.clone(),
                })
            }
            (Family::Houghton { .. }, Domain::Ray { tray, offset }) => {
                let PartialMap::Singleton {
                    to: Domain::RayPoint { tray: j, offset: k },
                    ..
                } = &maps[0]
                else {
                    return None;
                };
                let PartialMap::Shift { to, .. } = &maps[1] else {
                    return None;
                };
                (j == tray && *to == k + 1).then_some(PartialMap::Shift {
                    tray: *tray,
                    from: *offset,
                    to: *k,
                })
            }
            (Family::Rover, Domain::Cone(u)) => {
                let (
                    PartialMap::Twist { g: g0, to: t0, .. },
                    PartialMap::Twist { g: g1, to: t1, .. },
                ) = (&maps[0], &maps[1])
                else {
                    return None;
                };
                let p = t0.parent()?;
                if t1.parent().as_ref() != Some(&p) || t0 == t1 {
                    return None;
                }
                let swap = t0.last() == Some(1);
                let h = GrigWord::lift(swap, g0, g1)?;
                Some(PartialMap::twist(h, u.clone(), p))
            }
            _ => None,
        }
    }

    /// Image of a point under `m`, or `None` outside the source.
    pub fn apply(&self, m: &PartialMap, x: &Point) -> Option<Point> {
        match (m, x) {
            (PartialMap::Cone { from, to }, Point::Bits(b)) => {
                let rest = b.strip_prefix(from.letters())?;
                let mut out = to.letters().to_vec();
                out.extend_from_slice(rest);
                Some(Point::Bits(out))
            }
            (PartialMap::Twist { g, from, to }, Point::Bits(b)) => {
                let rest = b.strip_prefix(from.letters())?;
                let mut out = to.letters().to_vec();
                out.extend(g.apply(rest));
                Some(Point::Bits(out))
            }
            (PartialMap::Subtree { from, to }, Point::Node(v)) => {
                let rest = v.strip_prefix(from.letters())?;
                let mut out = to.letters().to_vec();
                out.extend_from_slice(rest);
                Some(Point::Node(out))
            }
            (
                PartialMap::Singleton {
                    from: Domain::Vertex(a),
                    to: Domain::Vertex(b),
                },
                Point::Node(v),
            ) => (a.letters() == v.as_slice()).then(|| Point::Node(b.letters().to_vec())),
            (
                PartialMap::Singleton {
                    from: Domain::RayPoint { tray, offset },
                    to: Domain::RayPoint { tray: j, offset: k },
                },
                Point::Ray(t, o),
            ) => (tray == t && offset == o).then_some(Point::Ray(*j, *k)),
            (PartialMap::Shift { tray, from, to }, Point::Ray(t, o)) => {
                (tray == t && o >= from).then(|| Point::Ray(*t, o + to - from))
            }
            _ => None,
        }
    }

    /// Whether the point lies in the domain.
    pub fn member(&self, d: &Domain, x: &Point) -> bool {
        match (d, x) {
            (Domain::Cone(w), Point::Bits(b)) => b.starts_with(w.letters()),
            (Domain::Subtree(w), Point::Node(v)) => v.starts_with(w.letters()),
            (Domain::Vertex(w), Point::Node(v)) => w.letters() == v.as_slice(),
            (Domain::Ray { tray, offset }, Point::Ray(t, o)) => tray == t && o >= offset,
            (Domain::RayPoint { tray, offset }, Point::Ray(t, o)) => tray == t && o == offset,
            _ => false,
        }
    }
}
