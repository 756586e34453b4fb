use super::{Action, ActionError, Domain, PartialMap, Word};
use crate::semigroups::families::Family;
use crate::semigroups::grig::GrigWord;

/// Splits on `sep` at bracket depth zero.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn perr(s: &str) -> ActionError {
    ActionError::Parse(s.to_string())
}

fn parse_pair(s: &str) -> Option<(u32, u64)> {
    let (j, k) = s.split_once(',')?;
    Some((j.trim().parse().ok()?, k.trim().parse().ok()?))
}

fn parse_family_domain(f: Family, s: &str) -> Result<Domain, ActionError> {
    let s = s.trim();
    let (tag, body) = s.split_once(':').ok_or_else(|| perr(s))?;
    let d = match tag {
        "B" => Domain::Cone(Word::parse(body).ok_or_else(|| perr(s))?),
        "T" => Domain::Subtree(Word::parse(body).ok_or_else(|| perr(s))?),
        "Pt" => Domain::Vertex(Word::parse(body).ok_or_else(|| perr(s))?),
        "R" => {
            let (tray, offset) = parse_pair(body).ok_or_else(|| perr(s))?;
            Domain::Ray { tray, offset }
        }
        "P" => {
            let (tray, offset) = parse_pair(body).ok_or_else(|| perr(s))?;
            Domain::RayPoint { tray, offset }
        }
        _ => return Err(perr(s)),
    };
    if f.legal_domain(&d) {
        Ok(d)
    } else {
        Err(ActionError::IllegalDomain(s.to_string()))
    }
}

/// Parses the canonical domain text for the given action.
pub fn parse_domain(a: &Action, s: &str) -> Result<Domain, ActionError> {
    let s = s.trim();
    if s == "EMPTY" {
        return Ok(Domain::Empty);
    }
    if a.arity() == 1 {
        return parse_family_domain(a.family(), s);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(s))?;
    let parts = split_top(inner, 'x');
    if parts.len() != a.arity() {
        return Err(ActionError::IllegalDomain(s.to_string()));
    }
    let comps = parts
        .iter()
        .zip(a.factors())
        .map(|(p, f)| parse_family_domain(*f, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Domain::product(comps))
}

fn parse_arrow(s: &str) -> Option<(&str, &str)> {
    let (a, b) = s.split_once("->")?;
    Some((a.trim(), b.trim()))
}

fn parse_family_map(f: Family, s: &str) -> Result<PartialMap, ActionError> {
    let s = s.trim();
    let (head, body) = s.split_once(' ').ok_or_else(|| perr(s))?;
    let body = body.trim();
    let word = |t: &str| Word::parse(t).ok_or_else(|| perr(s));
    let m = match head {
        "sig" => {
            let (u, p) = parse_arrow(body).ok_or_else(|| perr(s))?;
            let (u, p) = (word(u)?, word(p)?);
            match f {
                Family::Cantor { .. } => PartialMap::Cone { from: u, to: p },
                Family::Tree { .. } => PartialMap::Subtree { from: u, to: p },
                Family::Rover => PartialMap::Twist {
                    g: GrigWord::identity(),
                    from: u,
                    to: p,
                },
                Family::Houghton { .. } => return Err(ActionError::IllegalMap(s.to_string())),
            }
        }
        "tau" => {
            let (u, p) = parse_arrow(body).ok_or_else(|| perr(s))?;
            match f {
                Family::Tree { .. } => PartialMap::Singleton {
                    from: Domain::Vertex(word(u)?),
                    to: Domain::Vertex(word(p)?),
                },
                Family::Houghton { .. } => {
                    let (j, k) = parse_pair(u).ok_or_else(|| perr(s))?;
                    let (j2, k2) = parse_pair(p).ok_or_else(|| perr(s))?;
                    PartialMap::Singleton {
                        from: Domain::RayPoint { tray: j, offset: k },
                        to: Domain::RayPoint {
                            tray: j2,
                            offset: k2,
                        },
                    }
                }
                _ => return Err(ActionError::IllegalMap(s.to_string())),
            }
        }
        "shift" => {
            let (j, rest) = body.split_once(':').ok_or_else(|| perr(s))?;
            let (k, k2) = parse_arrow(rest).ok_or_else(|| perr(s))?;
            PartialMap::Shift {
                tray: j.trim().parse().map_err(|_| perr(s))?,
                from: k.parse().map_err(|_| perr(s))?,
                to: k2.parse().map_err(|_| perr(s))?,
            }
        }
        h if h.starts_with("rov[") && h.ends_with(']') => {
            let g = GrigWord::parse(&h[4..h.len() - 1]).ok_or_else(|| perr(s))?;
            let (u, p) = parse_arrow(body).ok_or_else(|| perr(s))?;
            PartialMap::twist(g, word(u)?, word(p)?)
        }
        _ => return Err(perr(s)),
    };
    if f.legal_map(&m) {
        Ok(m)
    } else {
        Err(ActionError::IllegalMap(s.to_string()))
    }
}

/// Parses the canonical map text for the given action.
pub fn parse_map(a: &Action, s: &str) -> Result<PartialMap, ActionError> {
    let s = s.trim();
    if s == "ZERO" {
        return Ok(PartialMap::Zero);
    }
    if a.arity() == 1 {
        return parse_family_map(a.family(), s);
    }
    let inner = s
        .strip_prefix("tup(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(s))?;
    let parts = split_top(inner, '|');
    if parts.len() != a.arity() {
        return Err(ActionError::IllegalMap(s.to_string()));
    }
    let comps = parts
        .iter()
        .zip(a.factors())
        .map(|(p, f)| parse_family_map(*f, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartialMap::tuple(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroups::{make_action, ActionSpec};

    #[test]
    fn round_trips() {
        let cases = [
            (ActionSpec::V(2), vec!["sig 0->11", "sig e->e"]),
            (ActionSpec::TreeBar(2), vec!["sig 0->11", "tau 01->e"]),
            (
                ActionSpec::Houghton(2),
                vec!["shift 1:2->9", "tau 1,3->2,1"],
            ),
            (ActionSpec::Rover, vec!["rov[ab] 0->11", "sig e->1"]),
            (
                ActionSpec::Product(vec![ActionSpec::V(2), ActionSpec::V(2)]),
                vec!["tup(sig 0->1|sig e->e)"],
            ),
        ];
        for (spec, maps) in cases {
            let a = make_action(&spec).unwrap();
            for m in maps {
                assert_eq!(parse_map(&a, m).unwrap().to_string(), m);
            }
        }
        let p = make_action(&ActionSpec::Product(vec![
            ActionSpec::TreeBar(1),
            ActionSpec::V(2),
        ]))
        .unwrap();
        assert_eq!(
            parse_domain(&p, "(Pt:00xB:1)").unwrap().to_string(),
            "(Pt:00xB:1)"
        );
    }

    #[test]
    fn rejects_foreign_shapes() {
        let a = make_action(&ActionSpec::V(2)).unwrap();
        assert!(parse_domain(&a, "T:0").is_err());
        assert!(parse_domain(&a, "B:2").is_err());
        assert!(parse_map(&a, "shift 1:1->2").is_err());
        let h = make_action(&ActionSpec::Houghton(2)).unwrap();
        assert!(parse_domain(&h, "R:3,1").is_err());
        assert!(parse_map(&h, "shift 1:0->2").is_err());
    }
}
