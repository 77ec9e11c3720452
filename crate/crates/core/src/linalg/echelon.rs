//! Row reduction to reduced row-echelon form.
//!
//! The forward pass is fraction-free (Bareiss): each update multiplies by the
//! current pivot and divides exactly by the previous one, which keeps integer
//! inputs integral until the final normalization pass.

use crate::exactmath::Scalar;

/// A matrix in reduced row-echelon form with its pivot columns.
///
/// Zero rows are dropped, every pivot is 1, and pivot columns are otherwise
/// zero. This form is unique for a given row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<S> {
    pub rows: Vec<Vec<S>>,
    pub pivots: Vec<usize>,
}

#[allow(clippy::needless_range_loop)]
pub fn row_reduce<S: Scalar>(mut m: Vec<Vec<S>>, ncols: usize) -> Echelon<S> {
    let nrows = m.len();
    let mut prev = S::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..nrows {
            let f = m[i][c].clone();
            for j in c..ncols {
                let updated = if f.is_zero() {
                    piv.clone() * m[i][j].clone()
                } else {
                    piv.clone() * m[i][j].clone() - f.clone() * m[r][j].clone()
                };
                m[i][j] = updated / prev.clone();
            }
            // entries left of c are already zero
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    for k in (0..r).rev() {
        let pc = pivots[k];
        let inv = m[k][pc].inv().expect("pivot is nonzero");
        for x in m[k].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..k {
            let f = m[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..ncols {
                let t = m[k][j].clone();
                if !t.is_zero() {
                    m[i][j] = m[i][j].clone() - f.clone() * t;
                }
            }
        }
    }
    Echelon { rows: m, pivots }
}

/// Reduces `v` against a reduced echelon basis, returning the remainder.
pub fn reduce_against<S: Scalar>(basis: &[Vec<S>], pivots: &[usize], v: &[S]) -> Vec<S> {
    let mut v = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        let f = v[p].clone();
        if f.is_zero() {
            continue;
        }
        for (x, b) in v.iter_mut().zip(row).skip(p) {
            if !b.is_zero() {
                *x = x.clone() - f.clone() * b.clone();
            }
        }
    }
    v
}

/// Null space of the row-reduced system, one basis vector per free column.
pub fn null_space<S: Scalar>(e: &Echelon<S>, ncols: usize) -> Vec<Vec<S>> {
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Incrementally grown echelon basis, kept fully reduced after every insert.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    len: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        reduce_against(&self.rows, &self.pivots, v)
            .iter()
            .all(S::is_zero)
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.len, "vector length does not match basis");
        let mut rem = reduce_against(&self.rows, &self.pivots, v);
        let Some(p) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = rem[p].inv().unwrap();
        for x in rem.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, b) in row.iter_mut().zip(&rem).skip(p) {
                *x = x.clone() - f.clone() * b.clone();
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, rem);
        true
    }

    pub fn into_echelon(self) -> Echelon<S> {
        Echelon {
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}
