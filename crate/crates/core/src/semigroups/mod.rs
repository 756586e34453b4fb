//! The registered actions and the Grigorchuk word oracle.

pub mod families;
pub mod grig;

use std::fmt;

use thiserror::Error;

use crate::core_action::Action;
use families::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unknown action {0:?}")]
    Unknown(String),
    #[error("invalid parameter in {0}")]
    Invalid(String),
    #[error("invalid signature: {0}")]
    Sigma(String),
}

/// Which registered action to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionSpec {
    /// Higman–Thompson `V_n` on `n`-ary Cantor space.
    V(u8),
    /// Vertex-and-subtree action on the `n`-ary tree; `TreeBar(2)` is `QV`.
    TreeBar(u8),
    /// Houghton action on `n` rays.
    Houghton(u32),
    /// Röver's group.
    Rover,
    Product(Vec<ActionSpec>),
}

impl ActionSpec {
    pub fn parse(s: &str) -> Result<ActionSpec, SpecError> {
        let s = s.trim();
        let unknown = || SpecError::Unknown(s.to_string());
        if s == "ROVER" {
            return Ok(ActionSpec::Rover);
        }
        if s == "QV" {
            return Ok(ActionSpec::TreeBar(2));
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|t| t.strip_suffix(')')) {
            let parts = crate::core_action::text_split(inner, ',');
            let specs = parts
                .iter()
                .map(|p| ActionSpec::parse(p))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ActionSpec::Product(specs));
        }
        let num = |t: &str| t.parse::<u32>().map_err(|_| unknown());
        if let Some(n) = s.strip_prefix("Qbar") {
            return Ok(ActionSpec::TreeBar(
                num(n)?.try_into().map_err(|_| unknown())?,
            ));
        }
        if let Some(n) = s.strip_prefix('V') {
            return Ok(ActionSpec::V(num(n)?.try_into().map_err(|_| unknown())?));
        }
        if let Some(n) = s.strip_prefix('H') {
            return Ok(ActionSpec::Houghton(num(n)?));
        }
        Err(unknown())
    }

    fn flatten(&self, out: &mut Vec<ActionSpec>) {
        match self {
            ActionSpec::Product(v) => v.iter().for_each(|s| s.flatten(out)),
            s => out.push(s.clone()),
        }
    }

    fn family(&self) -> Result<Family, SpecError> {
        match self {
            ActionSpec::V(n) if (2..=10).contains(n) => Ok(Family::Cantor { arity: *n }),
            ActionSpec::TreeBar(n) if (1..=10).contains(n) => Ok(Family::Tree { arity: *n }),
            ActionSpec::Houghton(n) if *n >= 1 => Ok(Family::Houghton { rays: *n }),
            ActionSpec::Rover => Ok(Family::Rover),
            s => Err(SpecError::Invalid(s.to_string())),
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::V(n) => write!(f, "V{n}"),
            ActionSpec::TreeBar(2) => write!(f, "QV"),
            ActionSpec::TreeBar(n) => write!(f, "Qbar{n}"),
            ActionSpec::Houghton(n) => write!(f, "H{n}"),
            ActionSpec::Rover => write!(f, "ROVER"),
            ActionSpec::Product(v) => {
                write!(f, "prod(")?;
                for (i, s) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Registers an action. Nested products are flattened.
pub fn make_action(spec: &ActionSpec) -> Result<Action, SpecError> {
    let mut flat = Vec::new();
    spec.flatten(&mut flat);
    if flat.is_empty() {
        return Err(SpecError::Invalid(spec.to_string()));
    }
    let factors = flat
        .iter()
        .map(ActionSpec::family)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Action::new(spec.to_string(), factors))
}

/// A product signature: barred entries (tree factors) then unbarred entries
/// (Cantor factors), each block sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sigma {
    pub barred: Vec<u8>,
    pub unbarred: Vec<u8>,
}

impl Sigma {
    pub fn new(mut barred: Vec<u8>, mut unbarred: Vec<u8>) -> Result<Sigma, SpecError> {
        if barred.is_empty() && unbarred.is_empty() {
            return Err(SpecError::Sigma("no entries".into()));
        }
        if barred.iter().any(|&a| a < 1) || unbarred.iter().any(|&a| a < 2) {
            return Err(SpecError::Sigma("entry below its minimum".into()));
        }
        barred.sort_unstable();
        unbarred.sort_unstable();
        Ok(Sigma { barred, unbarred })
    }

    /// Reads a product of tree and Cantor factors as a signature.
    pub fn from_spec(spec: &ActionSpec) -> Option<Sigma> {
        let mut flat = Vec::new();
        spec.flatten(&mut flat);
        let (mut barred, mut unbarred) = (Vec::new(), Vec::new());
        for s in flat {
            match s {
                ActionSpec::TreeBar(n) => barred.push(n),
                ActionSpec::V(n) => unbarred.push(n),
                _ => return None,
            }
        }
        Sigma::new(barred, unbarred).ok()
    }

    pub fn to_spec(&self) -> ActionSpec {
        let mut v: Vec<ActionSpec> = self
            .barred
            .iter()
            .map(|&n| ActionSpec::TreeBar(n))
            .collect();
        v.extend(self.unbarred.iter().map(|&n| ActionSpec::V(n)));
        if v.len() == 1 {
            v.pop().expect("one entry")
        } else {
            ActionSpec::Product(v)
        }
    }

    /// The rank bound `(a_{j+1} − 1)·2^j + 1` guaranteeing a contraction, where
    /// `j` is the number of barred entries; `None` without unbarred entries.
    pub fn rich_bound(&self) -> Option<u64> {
        let a = *self.unbarred.first()? as u64;
        Some((a - 1) * (1u64 << self.barred.len()) + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_names_round_trip() {
        for s in [
            "V2",
            "V3",
            "QV",
            "Qbar3",
            "H2",
            "H3",
            "ROVER",
            "prod(V2,V2)",
            "prod(Qbar1,V2)",
        ] {
            assert_eq!(ActionSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(ActionSpec::parse("W2").is_err());
        assert!(make_action(&ActionSpec::V(1)).is_err());
        assert!(make_action(&ActionSpec::Houghton(0)).is_err());
    }

    #[test]
    fn cup_flags() {
        assert!(make_action(&ActionSpec::V(2)).unwrap().has_cup());
        assert!(!make_action(&ActionSpec::parse("prod(V2,V2)").unwrap())
            .unwrap()
            .has_cup());
    }

    #[test]
    fn sigma_bounds() {
        let s = Sigma::from_spec(&ActionSpec::parse("prod(Qbar1,V2)").unwrap()).unwrap();
        assert_eq!(s.rich_bound(), Some(3));
        assert_eq!(Sigma::new(vec![], vec![3]).unwrap().rich_bound(), Some(3));
        assert_eq!(
            Sigma::new(vec![], vec![2, 2]).unwrap().rich_bound(),
            Some(2)
        );
        assert_eq!(Sigma::new(vec![2], vec![]).unwrap().rich_bound(), None);
        assert!(Sigma::new(vec![0], vec![2]).is_err());
    }
}
