//! Sparse exact row reduction over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Q;

/// Sparse vector keyed by column index.
pub type SparseVec = BTreeMap<usize, Q>;

/// Incrementally built row-echelon basis.
///
/// Columns are eliminated in *descending* index order: the pivot of a row is
/// its largest column. Callers number columns so that the monomials they want
/// eliminated first get the largest indices; the non-pivot columns then form a
/// complement basis made of the smallest columns.
///
/// With `track` enabled every stored row remembers which combination of the
/// inserted generators produced it, so membership queries can return
/// coefficients.
#[derive(Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `v` against the basis. Returns the remainder and, when
    /// tracking, the combination `c` of generators with `v - remainder = sum c_i g_i`.
    pub fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut combo = SparseVec::new();
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.keys().next_back().copied(),
                Some(c) => v.range(..c).next_back().map(|(k, _)| *k),
            };
            let Some(col) = next else { break };
            cursor = Some(col);
            if let Some((row, rc)) = self.rows.get(&col) {
                let factor = v[&col].clone() / &row[&col];
                axpy(&mut v, &factor, row);
                if self.track {
                    axpy_add(&mut combo, &factor, rc);
                }
            }
        }
        (v, combo)
    }

    /// Inserts a generator; returns true if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        let Some((&piv, _)) = rem.iter().next_back() else {
            return false;
        };
        let mut history = SparseVec::new();
        if self.track {
            // rem = v - sum combo_i g_i
            history.insert(id, Q::one());
            for (k, c) in combo {
                let e = history.entry(k).or_insert_with(Q::zero);
                *e -= c;
                if e.is_zero() {
                    history.remove(&k);
                }
            }
        }
        self.rows.insert(piv, (rem, history));
        true
    }

    /// If `v` lies in the span, the generator combination producing it.
    pub fn solve(&self, v: SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce(v);
        rem.is_empty().then_some(combo)
    }
}

/// v -= factor * row
fn axpy(v: &mut SparseVec, factor: &Q, row: &SparseVec) {
    for (k, x) in row {
        let e = v.entry(*k).or_insert_with(Q::zero);
        *e -= factor * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// v += factor * row
fn axpy_add(v: &mut SparseVec, factor: &Q, row: &SparseVec) {
    for (k, x) in row {
        let e = v.entry(*k).or_insert_with(Q::zero);
        *e += factor * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Rank of a dense rational matrix.
pub fn rank(m: Vec<Vec<Q>>) -> usize {
    let mut e = Echelon::new(false);
    for row in m {
        let v: SparseVec = row.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        e.insert(v);
    }
    e.rank()
}

/// Inverse of a dense square matrix, or `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
