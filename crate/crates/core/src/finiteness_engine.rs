//! Type-vector calculus for finiteness properties: stable connectivity
//! lengths by the contracting-vector recursion, achievable type vectors and
//! the hypothesis checklists for type `F_∞` and type `F_n`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expansion_scheme::Scheme;
use crate::pseudovertex::{identity_class, TypeVector};
use crate::sampling::root_vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinitenessError {
    #[error("there are no contracting vectors")]
    EmptyContracting,
    #[error("type vector has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
}

/// A one-sided answer: the recursion either certifies the bound or says nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    True,
    Unknown,
}

impl Certificate {
    pub fn is_true(self) -> bool {
        self == Certificate::True
    }
}

/// Memoized certificates for `ℓ_sc(w) ≥ n`.
///
/// A query is answered for the clipped vector: subtraction along any branch of
/// the recursion from level `n` removes at most `2n + 3` contracting vectors,
/// so coordinates beyond `(2n + 4)·max c_i` behave identically.
#[derive(Clone, Debug)]
pub struct ConnectivityTable {
    contracting: Vec<TypeVector>,
    types: usize,
    max_entry: Vec<usize>,
    memo: HashMap<(Vec<usize>, i64), bool>,
}

impl ConnectivityTable {
    pub fn new(
        contracting: &BTreeSet<TypeVector>,
        types: usize,
    ) -> Result<ConnectivityTable, FinitenessError> {
        if contracting.is_empty() {
            return Err(FinitenessError::EmptyContracting);
        }
        if let Some(c) = contracting.iter().find(|c| c.0.len() != types) {
            return Err(FinitenessError::Length {
                expected: types,
                got: c.0.len(),
            });
        }
        let max_entry = (0..types)
            .map(|i| contracting.iter().map(|c| c.0[i]).max().unwrap_or(0))
            .collect();
        Ok(ConnectivityTable {
            contracting: contracting.iter().cloned().collect(),
            types,
            max_entry,
            memo: HashMap::new(),
        })
    }

    pub fn for_scheme(scheme: &Scheme) -> Result<ConnectivityTable, FinitenessError> {
        ConnectivityTable::new(
            &scheme.contracting_vectors(),
            scheme.structure().type_count(),
        )
    }

    pub fn contracting(&self) -> &[TypeVector] {
        &self.contracting
    }

    pub fn types(&self) -> usize {
        self.types
    }

    /// Coordinate caps at level `n`.
    pub fn caps(&self, n: i64) -> Vec<usize> {
        let k = (2 * n.max(-1) + 4) as usize;
        self.max_entry.iter().map(|m| m * k).collect()
    }

    fn clip(&self, w: &[usize], n: i64) -> Vec<usize> {
        w.iter().zip(self.caps(n)).map(|(&x, c)| x.min(c)).collect()
    }

    /// Whether the recursion certifies `ℓ_sc(w) ≥ n`; `n = −1` asks for a contracting vector below `w`.
    pub fn stable_conn_ge(
        &mut self,
        w: &TypeVector,
        n: i64,
    ) -> Result<Certificate, FinitenessError> {
        if w.0.len() != self.types {
            return Err(FinitenessError::Length {
                expected: self.types,
                got: w.0.len(),
            });
        }
        Ok(if self.closure(&w.0, n) {
            Certificate::True
        } else {
            Certificate::Unknown
        })
    }

    /// Certified at `w` or at some vector below it.
    fn closure(&mut self, w: &[usize], n: i64) -> bool {
        if n < -1 {
            return true;
        }
        let w = self.clip(w, n);
        if let Some(&r) = self.memo.get(&(w.clone(), n)) {
            return r;
        }
        let mut ok = self.certify(&w, n);
        if !ok {
            for i in 0..w.len() {
                if w[i] > 0 {
                    let mut u = w.clone();
                    u[i] -= 1;
                    if self.closure(&u, n) {
                        ok = true;
                        break;
                    }
                }
            }
        }
        self.memo.insert((w, n), ok);
        ok
    }

    fn certify(&mut self, w: &[usize], n: i64) -> bool {
        let below: Vec<TypeVector> = self
            .contracting
            .iter()
            .filter(|c| c.0.iter().zip(w).all(|(a, b)| a <= b))
            .cloned()
            .collect();
        if below.is_empty() {
            return false;
        }
        if n == -1 {
            return true;
        }
        for c in &below {
            if !self.closure(&minus(w, &[c]), n - 1) {
                return false;
            }
        }
        for j in 2..=(n + 2) as usize {
            for pick in multisets(below.len(), j) {
                let cs: Vec<&TypeVector> = pick.iter().map(|&i| &below[i]).collect();
                if !self.closure(&minus(w, &cs), n - j as i64 + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// The minimal vectors certified at level `n`.
    pub fn minimal_certified(&mut self, n: i64) -> Vec<TypeVector> {
        let caps = self.caps(n);
        let mut certified = Vec::new();
        let mut w = vec![0; self.types];
        loop {
            if self.closure(&w, n) {
                certified.push(w.clone());
            }
            let mut k = 0;
            while k < w.len() {
                w[k] += 1;
                if w[k] <= caps[k] {
                    break;
                }
                w[k] = 0;
                k += 1;
            }
            if k == w.len() {
                break;
            }
        }
        let minimal: Vec<TypeVector> = certified
            .iter()
            .filter(|u| {
                !certified
                    .iter()
                    .any(|x| x != *u && x.iter().zip(u.iter()).all(|(a, b)| a <= b))
            })
            .map(|u| TypeVector(u.clone()))
            .collect();
        minimal
    }
}

/// `w − Σ cs`, negative entries read as zero.
fn minus(w: &[usize], cs: &[&TypeVector]) -> Vec<usize> {
    let mut out: Vec<i64> = w.iter().map(|&x| x as i64).collect();
    for c in cs {
        for (o, &x) in out.iter_mut().zip(&c.0) {
            *o -= x as i64;
        }
    }
    out.into_iter().map(|x| x.max(0) as usize).collect()
}

/// Non-decreasing index lists of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Replacement rules `type ↦ contracting vector` read off the scheme on the transversals.
pub fn replacement_rules(scheme: &Scheme) -> Vec<(usize, TypeVector)> {
    let ss = scheme.structure();
    let mut rules = BTreeSet::new();
    for t in 0..ss.type_count() {
        let b = identity_class(ss, &ss.transversal(t)).expect("transversal domains have classes");
        for w in scheme.e_set(&b) {
            if w.rank() > 1 {
                rules.insert((t, w.type_vector(ss)));
            }
        }
    }
    rules.into_iter().collect()
}

/// Type vectors reachable from the root vertex by ℰ-expansions, up to total `max_total`.
pub fn achievable_vectors(scheme: &Scheme, max_total: usize) -> BTreeSet<TypeVector> {
    let rules = replacement_rules(scheme);
    let start = root_vertex(scheme.structure()).type_vector(scheme.structure());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    if start.rank() <= max_total {
        seen.insert(start.clone());
        queue.push_back(start);
    }
    while let Some(w) = queue.pop_front() {
        for (t, c) in &rules {
            if w.0[*t] == 0 {
                continue;
            }
            let mut u = w.0.clone();
            u[*t] -= 1;
            for (x, y) in u.iter_mut().zip(&c.0) {
                *x += y;
            }
            let u = TypeVector(u);
            if u.rank() <= max_total && seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tier", content = "n", rename_all = "snake_case")]
pub enum Conclusion {
    FInfinity,
    Fn(usize),
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::FInfinity => write!(f, "type F_infinity"),
            Conclusion::Fn(n) => write!(f, "type F_{n}"),
            Conclusion::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// The stable-connectivity part of an `F_n` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    /// Level `m` in `ℓ_sc ≥ m`.
    pub level: i64,
    /// Minimal type vectors certified at `level`.
    pub witness_vectors: Vec<TypeVector>,
    /// Largest total among the witness vectors.
    pub witness_c: Option<usize>,
    /// Least rank from which every achievable vector checked is certified.
    pub rank_c: Option<usize>,
    /// Achievable vectors were checked up to this total.
    pub horizon: usize,
    /// Achievable vectors below `rank_c`'s window that fail, for the record.
    pub uncertified_examples: Vec<TypeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub action: String,
    pub scheme: String,
    pub hypotheses: Vec<Hypothesis>,
    pub type_count: usize,
    pub structure_group_orders: Vec<usize>,
    pub contracting_vectors: Vec<TypeVector>,
    /// Largest rank of a contracting vector.
    pub c0: Option<usize>,
    /// Rich-in-contractions constant.
    pub c1: Option<usize>,
    pub threshold: Option<Threshold>,
    pub conclusion: Conclusion,
}

impl FinitenessReport {
    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

fn common_hypotheses(scheme: &Scheme) -> (Vec<Hypothesis>, Vec<usize>, BTreeSet<TypeVector>) {
    let ss = scheme.structure();
    let k = ss.type_count();
    let orders: Vec<usize> = (0..k).map(|t| ss.group(t).len()).collect();
    let sizes: Vec<usize> = (0..k)
        .map(|t| {
            scheme
                .e_set(&identity_class(ss, &ss.transversal(t)).expect("transversal classes"))
                .len()
        })
        .collect();
    let contracting = scheme.contracting_vectors();
    let hyps = vec![
        Hypothesis {
            name: "finitely_many_types".into(),
            status: Status::Pass,
            detail: format!("{k} domain types"),
        },
        Hypothesis {
            name: "structure_groups_finite".into(),
            status: Status::Pass,
            detail: format!("group orders {orders:?}"),
        },
        Hypothesis {
            name: "scheme_n_connected".into(),
            status: if scheme.declared_n_connected() {
                Status::Pass
            } else {
                Status::Unknown
            },
            detail: format!(
                "declared {} for scheme {}",
                scheme.declared_n_connected(),
                scheme.kind()
            ),
        },
        Hypothesis {
            name: "e_sets_finite".into(),
            status: Status::Pass,
            detail: format!("set sizes on transversals {sizes:?}"),
        },
    ];
    (hyps, orders, contracting)
}

/// Evaluates the hypotheses for type `F_∞` through richness in contractions.
pub fn f_infinity_checklist(scheme: &Scheme) -> FinitenessReport {
    let ss = scheme.structure();
    let (mut hyps, orders, contracting) = common_hypotheses(scheme);
    let c1 = scheme.rich_constant();
    hyps.push(Hypothesis {
        name: "rich_in_contractions".into(),
        status: if c1.is_some() {
            Status::Pass
        } else {
            Status::Fail
        },
        detail: match c1 {
            Some(c) => format!("C1 = {c}"),
            None => "some type vectors of arbitrary rank dominate no contracting vector".into(),
        },
    });
    let conclusion = if hyps.iter().all(|h| h.status == Status::Pass) {
        Conclusion::FInfinity
    } else {
        Conclusion::Inconclusive
    };
    FinitenessReport {
        action: ss.action().name().to_string(),
        scheme: scheme.kind().to_string(),
        hypotheses: hyps,
        type_count: ss.type_count(),
        structure_group_orders: orders,
        c0: contracting.iter().map(TypeVector::rank).max(),
        contracting_vectors: contracting.into_iter().collect(),
        c1,
        threshold: None,
        conclusion,
    }
}

/// Certifies `ℓ_sc ≥ level` and finds the rank threshold over achievable vectors up to `horizon`.
pub fn threshold(
    scheme: &Scheme,
    level: i64,
    search_cap: usize,
    horizon: usize,
) -> Option<Threshold> {
    let mut table = ConnectivityTable::for_scheme(scheme).ok()?;
    let witness_vectors = table.minimal_certified(level);
    let witness_c = witness_vectors.iter().map(TypeVector::rank).max();
    let achievable = achievable_vectors(scheme, horizon);
    let mut failing: Vec<TypeVector> = achievable
        .iter()
        .filter(|w| {
            !table
                .stable_conn_ge(w, level)
                .map(Certificate::is_true)
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    failing.sort_by_key(|w| (w.rank(), w.clone()));
    let worst = failing.iter().map(TypeVector::rank).max();
    let rank_c = match worst {
        None => achievable.iter().map(TypeVector::rank).min(),
        Some(r) if r < horizon && r < search_cap => Some(r + 1),
        Some(_) => None,
    };
    let uncertified_examples = failing.into_iter().rev().take(3).collect();
    Some(Threshold {
        level,
        witness_vectors,
        witness_c,
        rank_c,
        horizon,
        uncertified_examples,
    })
}

/// Evaluates the hypotheses for type `F_n` through the stable connectivity recursion at level `n − 1`.
pub fn f_n_checklist(scheme: &Scheme, n: usize, search_cap: usize) -> FinitenessReport {
    let ss = scheme.structure();
    let (mut hyps, orders, contracting) = common_hypotheses(scheme);
    let level = n as i64 - 1;
    let horizon = 2 * search_cap;
    let th = threshold(scheme, level, search_cap, horizon);
    let status = match &th {
        Some(t) if t.rank_c.is_some() => Status::Pass,
        _ => Status::Unknown,
    };
    hyps.push(Hypothesis {
        name: "stable_connectivity_threshold".into(),
        status,
        detail: match &th {
            None => "no contracting vectors".into(),
            Some(t) => match t.rank_c {
                Some(c) => {
                    format!("every achievable vector of rank {c}..={horizon} has l_sc >= {level}")
                }
                None => format!("no threshold at most {search_cap} certifies l_sc >= {level}"),
            },
        },
    });
    let conclusion = if hyps.iter().all(|h| h.status == Status::Pass) {
        Conclusion::Fn(n)
    } else {
        Conclusion::Inconclusive
    };
    FinitenessReport {
        action: ss.action().name().to_string(),
        scheme: scheme.kind().to_string(),
        hypotheses: hyps,
        type_count: ss.type_count(),
        structure_group_orders: orders,
        c0: contracting.iter().map(TypeVector::rank).max(),
        contracting_vectors: contracting.into_iter().collect(),
        c1: scheme.rich_constant(),
        threshold: th,
        conclusion,
    }
}
