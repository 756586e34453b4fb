use std::fmt;

use super::domain::Domain;
use super::word::Word;
use crate::semigroups::grig::GrigWord;

/// An element of the inverse semigroup: a bijection between two domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartialMap {
    Zero,
    /// Cone prefix replacement `from·x ↦ to·x`.
    Cone {
        from: Word,
        to: Word,
    },
    /// Subtree prefix replacement on tree vertices.
    Subtree {
        from: Word,
        to: Word,
    },
    /// A map between two single points (tree vertices or ray points).
    Singleton {
        from: Domain,
        to: Domain,
    },
    /// `(tray, k + m) ↦ (tray, k' + m)` for `m >= 0`.
    Shift {
        tray: u32,
        from: u64,
        to: u64,
    },
    /// `from·x ↦ to·g(x)`; `g` is kept in canonical form.
    Twist {
        g: GrigWord,
        from: Word,
        to: Word,
    },
    Tuple(Vec<PartialMap>),
}

impl PartialMap {
    pub fn twist(g: GrigWord, from: Word, to: Word) -> PartialMap {
        PartialMap::Twist {
            g: g.canonical(),
            from,
            to,
        }
    }

    /// Builds a tuple, collapsing to `Zero` if any component is zero.
    pub fn tuple(components: Vec<PartialMap>) -> PartialMap {
        if components.iter().any(PartialMap::is_zero) {
            PartialMap::Zero
        } else {
            PartialMap::Tuple(components)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PartialMap::Zero)
    }

    pub fn source(&self) -> Domain {
        match self {
            PartialMap::Zero => Domain::Empty,
            PartialMap::Cone { from, .. } | PartialMap::Twist { from, .. } => {
                Domain::Cone(from.clone())
            }
            PartialMap::Subtree { from, .. } => Domain::Subtree(from.clone()),
            PartialMap::Singleton { from, .. } => from.clone(),
            PartialMap::Shift { tray, from, .. } => Domain::Ray {
                tray: *tray,
                offset: *from,
            },
            PartialMap::Tuple(c) => Domain::product(c.iter().map(PartialMap::source).collect()),
        }
    }

    pub fn target(&self) -> Domain {
        match self {
            PartialMap::Zero => Domain::Empty,
            PartialMap::Cone { to, .. } | PartialMap::Twist { to, .. } => Domain::Cone(to.clone()),
            PartialMap::Subtree { to, .. } => Domain::Subtree(to.clone()),
            PartialMap::Singleton { to, .. } => to.clone(),
            PartialMap::Shift { tray, to, .. } => Domain::Ray {
                tray: *tray,
                offset: *to,
            },
            PartialMap::Tuple(c) => Domain::product(c.iter().map(PartialMap::target).collect()),
        }
    }

    pub fn components(&self) -> Vec<PartialMap> {
        match self {
            PartialMap::Tuple(c) => c.clone(),
            m => vec![m.clone()],
        }
    }

    pub fn from_components(mut comps: Vec<PartialMap>, arity: usize) -> PartialMap {
        if arity == 1 {
            comps.pop().unwrap_or(PartialMap::Zero)
        } else {
            PartialMap::tuple(comps)
        }
    }

    pub fn invert(&self) -> PartialMap {
        match self {
            PartialMap::Zero => PartialMap::Zero,
            PartialMap::Cone { from, to } => PartialMap::Cone {
                from: to.clone(),
                to: from.clone(),
            },
            PartialMap::Subtree { from, to } => PartialMap::Subtree {
                from: to.clone(),
                to: from.clone(),
            },
            PartialMap::Singleton { from, to } => PartialMap::Singleton {
                from: to.clone(),
                to: from.clone(),
            },
            PartialMap::Shift { tray, from, to } => PartialMap::Shift {
                tray: *tray,
                from: *to,
                to: *from,
            },
            PartialMap::Twist { g, from, to } => {
                PartialMap::twist(g.inverse(), to.clone(), from.clone())
            }
            PartialMap::Tuple(c) => PartialMap::Tuple(c.iter().map(PartialMap::invert).collect()),
        }
    }

    /// Whether this is the identity map on its source.
    pub fn is_identity(&self) -> bool {
        match self {
            PartialMap::Zero => true,
            PartialMap::Cone { from, to } | PartialMap::Subtree { from, to } => from == to,
            PartialMap::Singleton { from, to } => from == to,
            PartialMap::Shift { from, to, .. } => from == to,
            PartialMap::Twist { g, from, to } => from == to && g.is_identity(),
            PartialMap::Tuple(c) => c.iter().all(PartialMap::is_identity),
        }
    }

    /// Equality deciding Grigorchuk words with the oracle rather than by spelling.
    pub fn same_as(&self, other: &PartialMap) -> bool {
        match (self, other) {
            (
                PartialMap::Twist { g, from, to },
                PartialMap::Twist {
                    g: h,
                    from: f2,
                    to: t2,
                },
            ) => from == f2 && to == t2 && g.equals(h),
            (PartialMap::Tuple(a), PartialMap::Tuple(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_as(y))
            }
            (a, b) => a == b,
        }
    }
}

fn fmt_point(d: &Domain, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match d {
        Domain::Vertex(w) => write!(f, "{w}"),
        Domain::RayPoint { tray, offset } => write!(f, "{tray},{offset}"),
        other => write!(f, "{other}"),
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialMap::Zero => write!(f, "ZERO"),
            PartialMap::Cone { from, to } | PartialMap::Subtree { from, to } => {
                write!(f, "sig {from}->{to}")
            }
            PartialMap::Singleton { from, to } => {
                write!(f, "tau ")?;
                fmt_point(from, f)?;
                write!(f, "->")?;
                fmt_point(to, f)
            }
            PartialMap::Shift { tray, from, to } => write!(f, "shift {tray}:{from}->{to}"),
            PartialMap::Twist { g, from, to } => {
                if g.is_empty() {
                    write!(f, "sig {from}->{to}")
                } else {
                    write!(f, "rov[{g}] {from}->{to}")
                }
            }
            PartialMap::Tuple(c) => {
                write!(f, "tup(")?;
                for (i, m) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, ")")
            }
        }
    }
}
