//! Dense matrices over [`Scalar`]: the carrier for every linear map in the
//! crate (actions, derivations, embeddings, projections).
//!
//! Entries are stored row-major. A `LinMap` with `cols == n` maps column
//! vectors of length `n` to column vectors of length `rows`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination: the reduced matrix plus the pivot
/// column of each nonzero row.
pub struct Echelon {
    pub mat: LinMap,
    pub pivots: Vec<usize>,
}

impl LinMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinMap {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinMap::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        LinMap {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        LinMap {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<Scalar>>) -> Self {
        LinMap::from_rows(cols).transpose()
    }

    /// Integer-literal constructor, mostly for tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        LinMap::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for r in 0..self.rows {
            self[(r, c)] = v[r].clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * s)
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinMap::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] + &other[(r, c)])
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinMap::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] - &other[(r, c)])
    }

    pub fn neg(&self) -> LinMap {
        LinMap::from_fn(self.rows, self.cols, |r, c| -&self[(r, c)])
    }

    /// Matrix-vector application.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc += &self[(r, c)] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Composition `self ∘ other`; inner dimensions must agree.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.cols, other.rows, "composition dimension mismatch");
        let mut out = LinMap::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = &self[(r, k)];
                if lhs.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let rhs = &other[(k, c)];
                    if !rhs.is_zero() {
                        out[(r, c)] += lhs * rhs;
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.rows, other.rows);
        LinMap::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.cols, other.cols);
        LinMap::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }

    /// Block-diagonal assembly of two maps.
    pub fn block_diag(a: &LinMap, b: &LinMap) -> LinMap {
        LinMap::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a[(r, c)].clone()
            } else if r >= a.rows && c >= a.cols {
                b[(r - a.rows, c - a.cols)].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Kronecker product; with column-major vectorization this realizes
    /// `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        LinMap::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let (ra, rb) = (r / other.rows, r % other.rows);
                let (ca, cb) = (c / other.cols, c % other.cols);
                &self[(ra, ca)] * &other[(rb, cb)]
            },
        )
    }

    /// Gauss-Jordan elimination to reduced row-echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(r, c)] - &(&factor * &m[(row, c)]);
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for LinMap {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for LinMap {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.entries[r * self.cols + c]
    }
}

impl Mul for &LinMap {
    type Output = LinMap;
    fn mul(self, rhs: &LinMap) -> LinMap {
        self.compose(rhs)
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinMap {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Flatten a matrix into column-major coordinates: entry `(r, c)` lands at
/// index `c * rows + r`. This is the coordinate convention for every space
/// of linear maps in the crate (hom-modules, derivation spaces, centralizer
/// pairs).
pub fn vec_of_map(m: &LinMap) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            v.push(m[(r, c)].clone());
        }
    }
    v
}

/// Inverse of [`vec_of_map`].
pub fn map_of_vec(rows: usize, cols: usize, v: &[Scalar]) -> LinMap {
    assert_eq!(v.len(), rows * cols);
    LinMap::from_fn(rows, cols, |r, c| v[c * rows + r].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_identity() {
        let m = LinMap::from_ints(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(&LinMap::identity(3) * &m, m);
        assert_eq!(&m * &LinMap::identity(2), m);
    }

    #[test]
    fn rref_canonical() {
        let m = LinMap::from_ints(&[&[2, 2], &[4, 4]]);
        let e = m.rref();
        assert_eq!(e.mat, LinMap::from_ints(&[&[1, 1], &[0, 0]]));
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(LinMap::zeros(2, 3).rank(), 0);
        assert_eq!(LinMap::identity(4).rank(), 4);
    }

    #[test]
    fn vec_of_map_is_column_major() {
        let m = LinMap::from_ints(&[&[1, 2], &[3, 4]]);
        let v = vec_of_map(&m);
        let ints: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(ints, ["1", "3", "2", "4"]);
        assert_eq!(map_of_vec(2, 2, &v), m);
    }

    #[test]
    fn kron_against_vectorization() {
        // vec(A X B) = (Bᵀ ⊗ A) vec(X)
        let a = LinMap::from_ints(&[&[1, 2], &[0, 1]]);
        let x = LinMap::from_ints(&[&[3, 0], &[1, 2]]);
        let b = LinMap::from_ints(&[&[1, 1], &[2, 0]]);
        let lhs = vec_of_map(&(&(&a * &x) * &b));
        let rhs = b.transpose().kron(&a).apply(&vec_of_map(&x));
        assert_eq!(lhs, rhs);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinMap> {
        proptest::collection::vec(-6i64..6, rows * cols).prop_map(move |v| {
            LinMap::from_fn(rows, cols, |r, c| Scalar::from(v[r * cols + c]))
        })
    }

    proptest! {
        #[test]
        fn composition_associative(
            a in arb_matrix(3, 4),
            b in arb_matrix(4, 2),
            c in arb_matrix(2, 3),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn rref_idempotent(a in arb_matrix(4, 5)) {
            let e = a.rref();
            let e2 = e.mat.rref();
            prop_assert_eq!(&e.mat, &e2.mat);
            prop_assert_eq!(e.pivots, e2.pivots);
        }
    }
}
