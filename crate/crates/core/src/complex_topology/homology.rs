//! Reduced integer homology by unit-pivot elimination followed by a dense
//! Smith normal form of whatever is left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SimplicialComplex;

/// `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology in dimensions `0..groups.len()`; `empty` marks `H̃_{-1} = Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub empty: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Non-empty with `H̃_i = 0` for `0 ≤ i ≤ n`.
    pub fn vanishes_through(&self, n: usize) -> bool {
        !self.empty
            && self
                .groups
                .iter()
                .take(n + 1)
                .all(HomologyGroup::is_trivial)
    }

    pub fn is_acyclic(&self) -> bool {
        !self.empty && self.groups.iter().all(HomologyGroup::is_trivial)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "empty (H~-1 = Z)");
        }
        let parts: Vec<String> = self
            .groups
            .iter()
            .enumerate()
            .map(|(d, g)| format!("H~{d} = {g}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Rank and the elementary divisors above one.
struct Reduction {
    rank: usize,
    torsion: Vec<BigInt>,
}

pub(super) fn reduced_homology(k: &SimplicialComplex, max_dim: usize) -> HomologyProfile {
    if k.is_empty() {
        let groups = (0..=max_dim)
            .map(|_| HomologyGroup {
                betti: 0,
                torsion: vec![],
            })
            .collect();
        return HomologyProfile {
            empty: true,
            groups,
        };
    }
    // reductions[d] is the boundary from dimension d to d - 1; d = 0 is the augmentation.
    let mut reductions = vec![Reduction {
        rank: 1,
        torsion: vec![],
    }];
    for d in 1..=max_dim + 1 {
        reductions.push(reduce(boundary(k, d)));
    }
    let groups = (0..=max_dim)
        .map(|d| HomologyGroup {
            betti: k.faces(d).len() - reductions[d].rank - reductions[d + 1].rank,
            torsion: reductions[d + 1]
                .torsion
                .iter()
                .map(BigInt::to_string)
                .collect(),
        })
        .collect();
    HomologyProfile {
        empty: false,
        groups,
    }
}

/// Columns of the boundary map from `d`-simplices, as sparse `(row, coefficient)` lists.
fn boundary(k: &SimplicialComplex, d: usize) -> Vec<Vec<(usize, i128)>> {
    let lower = k.faces(d - 1);
    k.faces(d)
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i128)> = (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    let row = lower.binary_search(&f).expect("closed under faces");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

fn reduce(columns: Vec<Vec<(usize, i128)>>) -> Reduction {
    let mut cols: BTreeMap<usize, Vec<(usize, i128)>> = columns
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .collect();
    let mut by_row: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (&c, col) in &cols {
        for &(r, _) in col {
            by_row.entry(r).or_default().insert(c);
        }
    }
    let mut rank = 0;
    // Columns queued by length so short pivots go first.
    let mut queue: BTreeSet<(usize, usize)> = cols.iter().map(|(&c, col)| (col.len(), c)).collect();
    'outer: while let Some((len, c)) = queue.pop_first() {
        let Some(col) = cols.get(&c) else { continue };
        if col.len() != len {
            queue.insert((col.len(), c));
            continue;
        }
        let Some(&(r, p)) = col
            .iter()
            .filter(|(_, a)| a.abs() == 1)
            .min_by_key(|(r, _)| by_row[r].len())
        else {
            continue;
        };
        let pivot = col.clone();
        let others: Vec<usize> = by_row[&r].iter().copied().filter(|&o| o != c).collect();
        let mut updated = Vec::with_capacity(others.len());
        for &o in &others {
            let target = &cols[&o];
            let a = target.iter().find(|(row, _)| *row == r).expect("indexed").1;
            match axpy(target, &pivot, -(a * p)) {
                Some(new) => updated.push((o, new)),
                None => break 'outer,
            }
        }
        for (o, new) in updated {
            let old = cols.remove(&o).expect("present");
            for (row, _) in &old {
                by_row.get_mut(row).expect("indexed").remove(&o);
            }
            for (row, _) in &new {
                by_row.entry(*row).or_default().insert(o);
            }
            if !new.is_empty() {
                queue.insert((new.len(), o));
                cols.insert(o, new);
            }
        }
        for (row, _) in &pivot {
            by_row.get_mut(row).expect("indexed").remove(&c);
        }
        by_row.remove(&r);
        cols.remove(&c);
        rank += 1;
    }
    // Row r of each pivot is now zero outside its column, so the residual is the rest.
    let residual: Vec<Vec<(usize, i128)>> = cols.into_values().collect();
    let (extra, torsion) = dense_divisors(&residual);
    Reduction {
        rank: rank + extra,
        torsion,
    }
}

/// `target + factor * pivot` on sparse columns; `None` on overflow.
fn axpy(
    target: &[(usize, i128)],
    pivot: &[(usize, i128)],
    factor: i128,
) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let take_t = j >= pivot.len() || (i < target.len() && target[i].0 < pivot[j].0);
        let take_p = i >= target.len() || (j < pivot.len() && pivot[j].0 < target[i].0);
        if take_t {
            out.push(target[i]);
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, pivot[j].1.checked_mul(factor)?));
            j += 1;
        } else {
            let v = target[i].1.checked_add(pivot[j].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Rank and invariant factors above one of a sparse integer matrix, by dense Smith form.
fn dense_divisors(columns: &[Vec<(usize, i128)>]) -> (usize, Vec<BigInt>) {
    if columns.is_empty() {
        return (0, vec![]);
    }
    let rows: BTreeSet<usize> = columns.iter().flatten().map(|(r, _)| *r).collect();
    let row_index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut m = vec![vec![BigInt::zero(); columns.len()]; rows.len()];
    for (c, col) in columns.iter().enumerate() {
        for &(r, a) in col {
            m[row_index[&r]][c] = BigInt::from(a);
        }
    }
    let diagonal = smith_diagonal(m);
    let rank = diagonal.len();
    let torsion = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    (rank, torsion)
}

/// The non-zero invariant factors, positive and in divisibility order.
pub(crate) fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest non-zero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (top, bottom) = m.split_at_mut(i);
                for (x, p) in bottom[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                    *x -= p * &q;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                    if m[i][t].abs() < m[t][t].abs() {
                        m.swap(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                    if m[t][j].abs() < m[t][t].abs() {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row with a non-multiple into the pivot row.
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let (top, bottom) = m.split_at_mut(i);
                    for (p, x) in top[t][t..cols].iter_mut().zip(&bottom[0][t..cols]) {
                        *p += x;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}
