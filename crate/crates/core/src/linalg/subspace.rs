//! Subspaces of based rational vector spaces in canonical form.
//!
//! A [`Subspace`] stores a reduced-row-echelon basis, so two subspaces are
//! equal as sets if and only if they compare equal structurally. Every
//! operation that produces a subspace canonicalizes its result.

use super::linmap::LinMap;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows; pairwise-distinct pivot columns, each pivot entry 1 and
    /// alone in its column.
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, LinMap::identity(ambient).row_vecs())
    }

    /// Canonicalized span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let echelon = LinMap::from_rows(vectors).rref();
        let dim = echelon.pivots.len();
        Subspace {
            ambient,
            basis: (0..dim).map(|r| echelon.mat.row(r).to_vec()).collect(),
            pivots: echelon.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the basis; the remainder is zero exactly when `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for c in 0..self.ambient {
                if !row[c].is_zero() {
                    let t = &w[c] - &(&factor * &row[c]);
                    w[c] = t;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, when `v` is a member.
    /// With an RREF basis these are just the pivot entries.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Ambient vector with the given basis coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.ambient {
                if !row[i].is_zero() {
                    let t = &v[i] + &(c * &row[i]);
                    v[i] = t;
                }
            }
        }
        v
    }

    /// Matrix whose columns are the basis vectors (ambient × dim).
    pub fn basis_matrix(&self) -> LinMap {
        LinMap::from_cols(self.basis.clone())
    }

    /// Matrix extracting coordinates of members (dim × ambient): picks out
    /// the pivot entries.
    pub fn coordinate_matrix(&self) -> LinMap {
        let mut m = LinMap::zeros(self.dim(), self.ambient);
        for (r, &p) in self.pivots.iter().enumerate() {
            m[(r, p)] = Scalar::one();
        }
        m
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, vs)
    }

    /// Largest subspace contained in both.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve u·A = v·B by taking the kernel of [Aᵀ | -Bᵀ]; the u-part of
        // each solution spans the intersection.
        let a_t = self.basis_matrix();
        let b_t = other.basis_matrix();
        let stacked = a_t.hstack(&b_t.neg());
        let ker = stacked.kernel();
        let vs = ker
            .basis()
            .iter()
            .map(|uv| a_t.apply(&uv[..self.dim()]))
            .collect();
        Subspace::span(self.ambient, vs)
    }

    /// Image of this subspace under a linear map.
    pub fn map_by(&self, m: &LinMap) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// Restrict an ambient operator to this subspace, expressed in basis
    /// coordinates. `None` when the operator does not preserve the subspace.
    pub fn restrict_map(&self, m: &LinMap) -> Option<LinMap> {
        assert_eq!(m.rows(), self.ambient);
        assert_eq!(m.cols(), self.ambient);
        let mut out = LinMap::zeros(self.dim(), self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            let image = m.apply(b);
            let coords = self.coordinates_of(&image)?;
            out.set_col(j, &coords);
        }
        Some(out)
    }

    /// The quotient of the ambient space by this subspace.
    pub fn quotient(&self) -> Quotient {
        let free: Vec<usize> = (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let qdim = free.len();
        // projection row j: reads coordinate free[j] of (x reduced mod basis)
        let mut projection = LinMap::zeros(qdim, self.ambient);
        for (j, &f) in free.iter().enumerate() {
            projection[(j, f)] = Scalar::one();
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                projection[(j, p)] = -&row[f];
            }
        }
        let mut section = LinMap::zeros(self.ambient, qdim);
        for (j, &f) in free.iter().enumerate() {
            section[(f, j)] = Scalar::one();
        }
        Quotient {
            sub: self.clone(),
            projection,
            section,
        }
    }
}

/// A quotient of a based space by a subspace, carried by an explicit
/// surjection with a chosen linear section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sub: Subspace,
    /// Surjection ambient → quotient with kernel exactly `sub`.
    pub projection: LinMap,
    /// Right inverse of `projection`.
    pub section: LinMap,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient(&self) -> usize {
        self.projection.cols()
    }

    /// Push an ambient endomorphism down to the quotient. `None` when the
    /// operator does not preserve the subspace (the induced map would not be
    /// well defined).
    pub fn induce(&self, m: &LinMap) -> Option<LinMap> {
        for b in self.sub.basis() {
            if !self.sub.contains(&m.apply(b)) {
                return None;
            }
        }
        Some(&(&self.projection * m) * &self.section)
    }
}

impl LinMap {
    /// Null space `{v | m·v = 0}` with canonical basis.
    pub fn kernel(&self) -> Subspace {
        let echelon = self.rref();
        let pivots = &echelon.pivots;
        let free: Vec<usize> = (0..self.cols()).filter(|c| !pivots.contains(c)).collect();
        let mut vs = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols()];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&echelon.mat[(r, f)];
            }
            vs.push(v);
        }
        Subspace::span(self.cols(), vs)
    }

    /// Column span with canonical basis.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows(), self.col_vecs())
    }

    /// Full solution set of `m·x = target`, or `None` when inconsistent.
    pub fn solve_affine(&self, target: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(target.len(), self.rows(), "target length mismatch");
        let augmented = self.hstack(&LinMap::from_cols(vec![target.to_vec()]));
        let echelon = augmented.rref();
        if echelon.pivots.contains(&self.cols()) {
            return None; // pivot in the target column: inconsistent
        }
        let mut particular = vec![Scalar::zero(); self.cols()];
        for (r, &p) in echelon.pivots.iter().enumerate() {
            particular[p] = echelon.mat[(r, self.cols())].clone();
        }
        Some(AffineSolution {
            particular,
            homogeneous: self.kernel(),
        })
    }
}

/// A particular solution together with the homogeneous solution space.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub homogeneous: Subspace,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.homogeneous.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&n| Scalar::from(n)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(LinMap::identity(3).kernel(), Subspace::zero(3));
    }

    #[test]
    fn kernel_of_zero_map_is_full() {
        let k = LinMap::zeros(2, 3).kernel();
        assert_eq!(k, Subspace::full(3));
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn kernel_hand_example() {
        // [[1,1],[2,2]] kills (1,-1)
        let m = LinMap::from_ints(&[&[1, 1], &[2, 2]]);
        let k = m.kernel();
        assert_eq!(k, Subspace::span(2, vecs(&[&[1, -1]])));
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn image_examples() {
        assert_eq!(LinMap::identity(3).image(), Subspace::full(3));
        assert_eq!(LinMap::zeros(3, 2).image(), Subspace::zero(3));
        let m = LinMap::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.image(), Subspace::span(2, vecs(&[&[1, 2]])));
    }

    #[test]
    fn solve_affine_examples() {
        let id = LinMap::identity(2);
        let t = vecs(&[&[5, 7]]).remove(0);
        let sol = id.solve_affine(&t).unwrap();
        assert_eq!(sol.particular, t);
        assert!(sol.is_unique());

        let zero = LinMap::zeros(2, 2);
        assert!(zero.solve_affine(&t).is_none());

        let m = LinMap::from_ints(&[&[1, 1], &[2, 2]]);
        let t = vecs(&[&[1, 2]]).remove(0);
        let sol = m.solve_affine(&t).unwrap();
        assert_eq!(sol.particular, vecs(&[&[1, 0]]).remove(0));
        assert_eq!(m.apply(&sol.particular), t);
        assert_eq!(sol.homogeneous, Subspace::span(2, vecs(&[&[1, -1]])));
    }

    #[test]
    fn quotient_examples() {
        let q0 = Subspace::zero(3).quotient();
        assert_eq!(q0.projection, LinMap::identity(3));

        let qfull = Subspace::full(2).quotient();
        assert_eq!(qfull.dim(), 0);

        let sub = Subspace::span(2, vecs(&[&[1, -1]]));
        let q = sub.quotient();
        assert_eq!(q.dim(), 1);
        assert!(q
            .projection
            .apply(&vecs(&[&[1, -1]])[0])
            .iter()
            .all(Scalar::is_zero));
        assert_eq!(q.projection.kernel(), sub);
        assert_eq!(&q.projection * &q.section, LinMap::identity(1));
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(2, vecs(&[&[1, 0], &[0, 1]]));
        let b = Subspace::span(2, vecs(&[&[1, 1]]));
        assert_eq!(a.intersect(&b), b);
        assert_eq!(b.intersect(&b), b);
        assert_eq!(b.intersect(&Subspace::zero(2)), Subspace::zero(2));

        let c = Subspace::span(3, vecs(&[&[1, 0, 0], &[0, 1, 0]]));
        let d = Subspace::span(3, vecs(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(c.intersect(&d), Subspace::span(3, vecs(&[&[0, 1, 0]])));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(3, vecs(&[&[1, 2, 0], &[0, 0, 1]]));
        let v = s.lift(&[Scalar::from(3), Scalar::from(-1)]);
        assert_eq!(
            s.coordinates_of(&v).unwrap(),
            vec![Scalar::from(3), Scalar::from(-1)]
        );
        assert_eq!(s.coordinates_of(&vecs(&[&[1, 0, 0]])[0]), None);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinMap> {
        proptest::collection::vec(-5i64..5, rows * cols).prop_map(move |v| {
            LinMap::from_fn(rows, cols, |r, c| Scalar::from(v[r * cols + c]))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(4, 6)) {
            prop_assert_eq!(m.kernel().dim() + m.image().dim(), m.cols());
        }

        #[test]
        fn span_is_canonical(m in arb_matrix(3, 4), scale in 1i64..5) {
            // Spanning sets that differ by scaling and row shuffling give
            // the identical representation.
            let s1 = Subspace::span(4, m.row_vecs());
            let mut rows = m.row_vecs();
            rows.reverse();
            let scaled: Vec<Vec<Scalar>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x * Scalar::from(scale)).collect())
                .collect();
            let s2 = Subspace::span(4, scaled);
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn quotient_kills_exactly_sub(m in arb_matrix(3, 4)) {
            let sub = Subspace::span(4, m.row_vecs());
            let q = sub.quotient();
            prop_assert_eq!(q.projection.kernel(), sub.clone());
            prop_assert_eq!(q.dim(), 4 - sub.dim());
            for b in sub.basis() {
                prop_assert!(q.projection.apply(b).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn intersection_contained_in_both(a in arb_matrix(3, 5), b in arb_matrix(2, 5)) {
            let sa = Subspace::span(5, a.row_vecs());
            let sb = Subspace::span(5, b.row_vecs());
            let i = sa.intersect(&sb);
            prop_assert!(sa.contains_subspace(&i));
            prop_assert!(sb.contains_subspace(&i));
            // dim formula: dim(a) + dim(b) = dim(a+b) + dim(a∩b)
            prop_assert_eq!(sa.dim() + sb.dim(), sa.sum(&sb).dim() + i.dim());
        }
    }
}
