use std::fmt;

use super::word::Word;

/// A symbolic subset of the acted-on set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Empty,
    /// All infinite strings with the given prefix.
    Cone(Word),
    /// Tree vertices having the given vertex as ancestor (inclusive).
    Subtree(Word),
    /// A single tree vertex.
    Vertex(Word),
    /// Points `(tray, k)` with `k >= offset`.
    Ray {
        tray: u32,
        offset: u64,
    },
    /// The single point `(tray, offset)`.
    RayPoint {
        tray: u32,
        offset: u64,
    },
    /// A brick of a product action; components are never `Empty`.
    Product(Vec<Domain>),
}

impl Domain {
    pub fn is_empty(&self) -> bool {
        matches!(self, Domain::Empty)
    }

    /// Builds a product brick, collapsing to `Empty` if any component is empty.
    pub fn product(components: Vec<Domain>) -> Domain {
        if components.iter().any(Domain::is_empty) {
            Domain::Empty
        } else {
            Domain::Product(components)
        }
    }

    /// Coordinates of a brick: the components of a product, or the domain itself.
    pub fn coords(&self) -> Vec<Domain> {
        match self {
            Domain::Product(c) => c.clone(),
            d => vec![d.clone()],
        }
    }

    pub fn coord(&self, i: usize) -> &Domain {
        match self {
            Domain::Product(c) => &c[i],
            d => {
                debug_assert_eq!(i, 0);
                d
            }
        }
    }

    /// Inverse of [`Domain::coords`] for an action with `arity` coordinates.
    pub fn from_coords(mut coords: Vec<Domain>, arity: usize) -> Domain {
        if arity == 1 {
            coords.pop().unwrap_or(Domain::Empty)
        } else {
            Domain::product(coords)
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Empty => write!(f, "EMPTY"),
            Domain::Cone(w) => write!(f, "B:{w}"),
            Domain::Subtree(w) => write!(f, "T:{w}"),
            Domain::Vertex(w) => write!(f, "Pt:{w}"),
            Domain::Ray { tray, offset } => write!(f, "R:{tray},{offset}"),
            Domain::RayPoint { tray, offset } => write!(f, "P:{tray},{offset}"),
            Domain::Product(c) => {
                write!(f, "(")?;
                for (i, d) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
        }
    }
}
