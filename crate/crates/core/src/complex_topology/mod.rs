//! Finite simplicial complexes: clique and order complexes, joins, simplicial
//! products, nerves, integer homology and the descending-link fragments of
//! the expansion-scheme complexes.

mod descending;
mod homology;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::expansion_scheme::SchemeError;
use crate::pseudovertex::PvError;

pub use descending::*;
pub use homology::{HomologyGroup, HomologyProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("enumeration exceeded its budget: {0}")]
    Budget(String),
    #[error("homology in dimension {wanted} needs the {needed}-skeleton, only the {have}-skeleton was built")]
    Dimension {
        wanted: usize,
        needed: usize,
        have: usize,
    },
    #[error("invalid part: {0}")]
    InvalidPart(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Pseudovertex(#[from] PvError),
}

/// A finite abstract simplicial complex on labelled vertices, stored by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Vec<Vec<usize>>>,
    skeleton: Option<usize>,
}

/// JSON shape: `{vertices: [label], simplices: [[idx]]}`.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexExport {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// The closure of the given simplices under non-empty subsets.
    pub fn new(
        labels: Vec<String>,
        simplices: impl IntoIterator<Item = Vec<usize>>,
    ) -> SimplicialComplex {
        let mut sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            add_with_faces(&mut sets, s);
        }
        for v in 0..labels.len() {
            add_with_faces(&mut sets, vec![v]);
        }
        SimplicialComplex::from_sets(labels, sets, None)
    }

    fn from_sets(
        labels: Vec<String>,
        sets: Vec<BTreeSet<Vec<usize>>>,
        skeleton: Option<usize>,
    ) -> SimplicialComplex {
        let mut faces: Vec<Vec<Vec<usize>>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        SimplicialComplex {
            labels,
            faces,
            skeleton,
        }
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            labels: vec![],
            faces: vec![],
            skeleton: None,
        }
    }

    pub fn point(label: &str) -> SimplicialComplex {
        SimplicialComplex::new(vec![label.to_string()], [])
    }

    /// The full simplex on the given labels.
    pub fn simplex(labels: Vec<String>) -> SimplicialComplex {
        let all: Vec<usize> = (0..labels.len()).collect();
        SimplicialComplex::new(labels, [all])
    }

    /// The clique complex of a graph: simplices are the complete subgraphs.
    /// With `max_dim`, only the `max_dim`-skeleton is built; `max_simplices` caps the total.
    pub fn from_cliques(
        labels: Vec<String>,
        adjacent: &[BTreeSet<usize>],
        max_dim: Option<usize>,
        max_simplices: usize,
    ) -> Result<SimplicialComplex, TopologyError> {
        let n = labels.len();
        let mut faces: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
        let mut count = n;
        let mut truncated = false;
        // Extend each clique by larger common neighbours only, so each clique appears once.
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                (
                    vec![v],
                    adjacent[v].iter().copied().filter(|&u| u > v).collect(),
                )
            })
            .collect();
        let mut dim = 0;
        while !frontier.is_empty() {
            if max_dim == Some(dim) {
                truncated = frontier.iter().any(|(_, c)| !c.is_empty());
                break;
            }
            let mut next = Vec::new();
            let mut layer = Vec::new();
            for (clique, cands) in &frontier {
                for (k, &u) in cands.iter().enumerate() {
                    let mut c = clique.clone();
                    c.push(u);
                    let rest: Vec<usize> = cands[k + 1..]
                        .iter()
                        .copied()
                        .filter(|w| adjacent[u].contains(w))
                        .collect();
                    layer.push(c.clone());
                    next.push((c, rest));
                    count += 1;
                    if count > max_simplices {
                        return Err(TopologyError::Budget(format!(
                            "more than {max_simplices} simplices"
                        )));
                    }
                }
            }
            if layer.is_empty() {
                break;
            }
            layer.sort();
            faces.push(layer);
            frontier = next;
            dim += 1;
        }
        if n == 0 {
            faces.clear();
        }
        Ok(SimplicialComplex {
            labels,
            faces,
            skeleton: if truncated { max_dim } else { None },
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Top dimension, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// `Some(k)` when only the `k`-skeleton was built.
    pub fn skeleton(&self) -> Option<usize> {
        self.skeleton
    }

    pub fn faces(&self, dim: usize) -> &[Vec<usize>] {
        self.faces.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn simplex_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        !s.is_empty() && self.faces(s.len() - 1).binary_search(&s).is_ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| {
                if d % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }

    /// Number of connected components, by union-find on the edges.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.labels.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut count = self.labels.len();
        for e in self.faces(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// Simplices as sorted label lists; the comparison key for labelled equality.
    pub fn labelled_simplices(&self) -> BTreeSet<Vec<String>> {
        self.simplices()
            .map(|s| {
                let mut l: Vec<String> = s.iter().map(|&v| self.labels[v].clone()).collect();
                l.sort();
                l
            })
            .collect()
    }

    /// Equality of labelled simplex sets.
    pub fn same_labelled(&self, other: &SimplicialComplex) -> bool {
        self.labelled_simplices() == other.labelled_simplices()
    }

    /// Relabels through `f`; labels must stay distinct.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> SimplicialComplex {
        SimplicialComplex {
            labels: self.labels.iter().map(|l| f(l)).collect(),
            ..self.clone()
        }
    }

    /// The full subcomplex on the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(usize, &str) -> bool) -> SimplicialComplex {
        let kept: Vec<usize> = (0..self.labels.len())
            .filter(|&v| keep(v, &self.labels[v]))
            .collect();
        let index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let faces: Vec<Vec<Vec<usize>>> = self
            .faces
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .filter(|s| s.iter().all(|v| index.contains_key(v)))
                    .map(|s| s.iter().map(|v| index[v]).collect())
                    .collect()
            })
            .collect();
        let sets = faces
            .into_iter()
            .map(|l: Vec<Vec<usize>>| l.into_iter().collect())
            .collect();
        SimplicialComplex::from_sets(labels, sets, self.skeleton)
    }

    /// Removes vertex `v` and every simplex containing it.
    pub fn delete_vertex(&self, v: usize) -> SimplicialComplex {
        self.induced(|u, _| u != v)
    }

    /// `lk(v)`: simplices `S` with `v ∉ S` and `S ∪ {v}` a simplex.
    pub fn link(&self, v: usize) -> SimplicialComplex {
        let simplices: Vec<Vec<usize>> = self
            .simplices()
            .filter(|s| s.len() > 1 && s.contains(&v))
            .map(|s| s.iter().copied().filter(|&u| u != v).collect())
            .collect();
        let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
        let sub = SimplicialComplex::new(self.labels.clone(), simplices);
        let mut out = sub.induced(|u, _| used.contains(&u));
        out.skeleton = self.skeleton.map(|k| k.saturating_sub(1));
        out
    }

    /// Common simplices, matched by label.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mine = self.labelled_simplices();
        let common: Vec<Vec<String>> = other
            .labelled_simplices()
            .into_iter()
            .filter(|s| mine.contains(s))
            .collect();
        from_labelled(common)
    }

    /// The join: all `σ ⊔ τ` with `σ`, `τ` simplices or empty.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.labels.len();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("L:{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("R:{l}")));
        let mut simplices: Vec<Vec<usize>> = Vec::new();
        for s in self.simplices() {
            for t in other.simplices() {
                let mut u = s.clone();
                u.extend(t.iter().map(|x| x + n));
                simplices.push(u);
            }
        }
        simplices.extend(self.simplices().cloned());
        simplices.extend(other.simplices().map(|t| t.iter().map(|x| x + n).collect()));
        SimplicialComplex::new(labels, simplices)
    }

    /// The cone with apex `label`.
    pub fn cone(&self, label: &str) -> SimplicialComplex {
        let apex = self.labels.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut simplices: Vec<Vec<usize>> = self.simplices().cloned().collect();
        simplices.extend(self.simplices().map(|s| {
            let mut s = s.clone();
            s.push(apex);
            s
        }));
        simplices.push(vec![apex]);
        SimplicialComplex::new(labels, simplices)
    }

    pub fn export(&self) -> ComplexExport {
        ComplexExport {
            vertices: self.labels.clone(),
            simplices: self.simplices().cloned().collect(),
        }
    }

    /// The 1-skeleton in DOT format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for e in self.faces(1) {
            let _ = writeln!(out, "  v{} -- v{};", e[0], e[1]);
        }
        out.push_str("}\n");
        out
    }

    /// Reduced integer homology in dimensions `0..=max_dim`.
    pub fn homology(&self, max_dim: usize) -> Result<HomologyProfile, TopologyError> {
        if let Some(k) = self.skeleton {
            if k < max_dim + 1 {
                return Err(TopologyError::Dimension {
                    wanted: max_dim,
                    needed: max_dim + 1,
                    have: k,
                });
            }
        }
        Ok(homology::reduced_homology(self, max_dim))
    }

    /// Non-empty, path-connected and `H̃_i = 0` for `1 ≤ i ≤ n`. `n = -1` asks for non-emptiness.
    pub fn is_homologically_n_connected(&self, n: i64) -> Result<bool, TopologyError> {
        if self.is_empty() {
            return Ok(false);
        }
        if n < 0 {
            return Ok(true);
        }
        if !self.is_connected() {
            return Ok(false);
        }
        if n == 0 {
            return Ok(true);
        }
        Ok(self.homology(n as usize)?.vanishes_through(n as usize))
    }
}

fn add_with_faces(sets: &mut Vec<BTreeSet<Vec<usize>>>, s: Vec<usize>) {
    let d = s.len() - 1;
    if sets.len() <= d {
        sets.resize_with(d + 1, BTreeSet::new);
    }
    if sets[d].contains(&s) {
        return;
    }
    if s.len() > 1 {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            add_with_faces(sets, f);
        }
    }
    sets[d].insert(s);
}

/// Builds a complex from simplices given as label sets.
pub fn from_labelled(simplices: impl IntoIterator<Item = Vec<String>>) -> SimplicialComplex {
    let simplices: Vec<Vec<String>> = simplices.into_iter().collect();
    let pool: BTreeSet<String> = simplices.iter().flatten().cloned().collect();
    let labels: Vec<String> = pool.into_iter().collect();
    let index: BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let idx: Vec<Vec<usize>> = simplices
        .iter()
        .map(|s| s.iter().map(|l| index[l.as_str()]).collect())
        .collect();
    SimplicialComplex::new(labels, idx)
}

/// A complex on a poset: `leq[i][j]` says vertex `i` is below vertex `j`.
#[derive(Clone, Debug)]
pub struct PosetComplex {
    pub complex: SimplicialComplex,
    pub leq: Vec<Vec<bool>>,
}

impl PosetComplex {
    /// The order complex of a finite poset.
    pub fn order_complex(labels: Vec<String>, leq: Vec<Vec<bool>>) -> PosetComplex {
        let n = labels.len();
        let adjacent: Vec<BTreeSet<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| i != j && (leq[i][j] || leq[j][i]))
                    .collect()
            })
            .collect();
        let complex =
            SimplicialComplex::from_cliques(labels, &adjacent, None, usize::MAX).expect("no cap");
        PosetComplex { complex, leq }
    }
}

/// The simplicial product: chains in the product order whose projections are simplices.
pub fn simplicial_product(factors: &[PosetComplex]) -> SimplicialComplex {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for f in factors {
        let n = f.complex.vertex_count();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .zip(factors)
                .map(|(&v, f)| f.complex.labels()[v].as_str())
                .collect();
            format!("({})", parts.join(" | "))
        })
        .collect();
    let below = |x: &[usize], y: &[usize]| {
        x.iter()
            .zip(y)
            .zip(factors)
            .all(|((&a, &b), f)| a == b || f.leq[a][b])
    };
    let projects = |chain: &[usize]| {
        factors.iter().enumerate().all(|(j, f)| {
            let mut p: Vec<usize> = chain.iter().map(|&c| tuples[c][j]).collect();
            p.sort_unstable();
            p.dedup();
            f.complex.contains(&p)
        })
    };
    let n = tuples.len();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().expect("non-empty chain");
        for y in 0..n {
            if y != top && below(&tuples[top], &tuples[y]) {
                let mut c = chain.clone();
                c.push(y);
                if projects(&c) {
                    stack.push(c);
                }
            }
        }
        simplices.push(chain);
    }
    SimplicialComplex::new(labels, simplices)
}

/// The nerve of a cover whose members share vertices by label; empty members are skipped.
pub fn nerve(cover: &[SimplicialComplex], max_dim: Option<usize>) -> SimplicialComplex {
    let members: Vec<usize> = (0..cover.len()).filter(|&i| !cover[i].is_empty()).collect();
    let mut by_vertex: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (k, &i) in members.iter().enumerate() {
        for l in cover[i].labels() {
            by_vertex.entry(l.as_str()).or_default().push(k);
        }
    }
    let labels: Vec<String> = members.iter().map(|i| format!("C{i}")).collect();
    let facets: BTreeSet<Vec<usize>> = by_vertex.into_values().collect();
    match max_dim {
        None => SimplicialComplex::new(labels, facets),
        Some(d) => {
            let mut sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
            for f in facets {
                for s in subsets_up_to(&f, d + 1) {
                    let k = s.len() - 1;
                    if sets.len() <= k {
                        sets.resize_with(k + 1, BTreeSet::new);
                    }
                    sets[k].insert(s);
                }
            }
            let mut out = SimplicialComplex::from_sets(labels, sets, Some(d));
            if out.dimension().is_some_and(|top| top < d) {
                out.skeleton = None;
            }
            out
        }
    }
}

fn subsets_up_to(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
    while let Some((i, cur)) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            continue;
        }
        for (j, &item) in items.iter().enumerate().skip(i) {
            let mut c = cur.clone();
            c.push(item);
            stack.push((j + 1, c));
        }
    }
    out
}
