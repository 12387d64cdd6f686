//! Bimodules over a finite-dimensional algebra: commuting left and right
//! actions given by one matrix per algebra basis element, with duals,
//! annihilators, restriction along an envelope, submodule quotients, and the
//! smallest annihilator-free quotient.

use std::sync::Arc;

use crate::algebra::{Algebra, Envelope};
use crate::error::{Error, Result, Side};
use crate::linalg::{LinMap, Quotient, Scalar, Subspace};

/// A bimodule `X` over an algebra `A`.
///
/// `left[i]` is the matrix of `x ↦ e_i.x` and `right[i]` the matrix of
/// `x ↦ x.e_i`. Construction checks, exhaustively and exactly, that the left
/// action is a homomorphism, the right action an anti-homomorphism in
/// composition order, and that the two commute.
#[derive(Clone, PartialEq, Debug)]
pub struct Bimodule {
    alg: Arc<Algebra>,
    dim: usize,
    left: Vec<LinMap>,
    right: Vec<LinMap>,
}

impl Bimodule {
    pub fn new(
        alg: Arc<Algebra>,
        dim: usize,
        left: Vec<LinMap>,
        right: Vec<LinMap>,
    ) -> Result<Self> {
        let n = alg.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::Shape(format!("need {n} action matrices per side")));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("action matrices must be {dim}x{dim}")));
            }
        }
        let x = Bimodule {
            alg,
            dim,
            left,
            right,
        };
        x.check_axioms()?;
        Ok(x)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.alg.dim();
        for i in 0..n {
            for j in 0..n {
                // λ(e_i·e_j) = λ(i)∘λ(j)
                if self.left_of(self.alg.mult_basis(i, j)) != &self.left[i] * &self.left[j] {
                    return Err(Error::NotLeftAction { i, j });
                }
                // ρ(e_i·e_j) = ρ(j)∘ρ(i)
                if self.right_of(self.alg.mult_basis(i, j)) != &self.right[j] * &self.right[i] {
                    return Err(Error::NotRightAction { i, j });
                }
                if &self.left[i] * &self.right[j] != &self.right[j] * &self.left[i] {
                    return Err(Error::ActionsDontCommute { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self, i: usize) -> &LinMap {
        &self.left[i]
    }

    pub fn right_action(&self, i: usize) -> &LinMap {
        &self.right[i]
    }

    /// Action matrix of an arbitrary algebra element on the left.
    pub fn left_of(&self, a: &[Scalar]) -> LinMap {
        let mut m = LinMap::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left[i].scale(c));
            }
        }
        m
    }

    /// Action matrix of an arbitrary algebra element on the right.
    pub fn right_of(&self, a: &[Scalar]) -> LinMap {
        let mut m = LinMap::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.right[i].scale(c));
            }
        }
        m
    }

    // ---- stock modules --------------------------------------------------

    /// The algebra acting on itself by multiplication.
    pub fn regular(alg: &Arc<Algebra>) -> Self {
        let n = alg.dim();
        let left = (0..n).map(|i| alg.left_regular(i)).collect();
        let right = (0..n).map(|i| alg.right_regular(i)).collect();
        Bimodule::new(alg.clone(), n, left, right).expect("regular actions satisfy the axioms")
    }

    /// Zero actions on a space of the given dimension.
    pub fn zero_action(alg: &Arc<Algebra>, dim: usize) -> Self {
        let n = alg.dim();
        Bimodule::new(
            alg.clone(),
            dim,
            vec![LinMap::zeros(dim, dim); n],
            vec![LinMap::zeros(dim, dim); n],
        )
        .expect("zero actions satisfy the axioms")
    }

    /// `A ⊗ A` with outer actions: `a.(u⊗v) = au⊗v`, `(u⊗v).a = u⊗va`.
    pub fn outer_square(alg: &Arc<Algebra>) -> Self {
        let n = alg.dim();
        let id = LinMap::identity(n);
        // coordinates (u,v) ↦ u*n + v, so "act on u" is kron(act, id)
        let left = (0..n).map(|i| alg.left_regular(i).kron(&id)).collect();
        let right = (0..n).map(|i| id.kron(&alg.right_regular(i))).collect();
        Bimodule::new(alg.clone(), n * n, left, right).expect("outer actions satisfy the axioms")
    }

    /// The dual module: `(a.f)(ξ) = f(ξ.a)` and `(f.a)(ξ) = f(a.ξ)`, so the
    /// action matrices swap sides and transpose.
    pub fn dual(&self) -> Self {
        let left = self.right.iter().map(LinMap::transpose).collect();
        let right = self.left.iter().map(LinMap::transpose).collect();
        Bimodule::new(self.alg.clone(), self.dim, left, right)
            .expect("dual actions satisfy the axioms")
    }

    /// View a module over the ambient algebra of an envelope as a module
    /// over the sub-algebra, through the embedding.
    pub fn restrict_through(&self, env: &Envelope) -> Result<Self> {
        if *self.alg != **env.amb() {
            return Err(Error::Shape(
                "module is not over the envelope's ambient algebra".into(),
            ));
        }
        let n = env.sub().dim();
        let left = (0..n)
            .map(|i| self.left_of(&env.embedding().col(i)))
            .collect();
        let right = (0..n)
            .map(|i| self.right_of(&env.embedding().col(i)))
            .collect();
        Bimodule::new(env.sub().clone(), self.dim, left, right)
    }

    /// Extend by extra coordinates on which the algebra acts as zero;
    /// returns the extension and the inclusion map.
    pub fn zero_extension(&self, extra: usize) -> (Bimodule, LinMap) {
        let dim = self.dim + extra;
        let pad = |m: &LinMap| {
            LinMap::from_fn(dim, dim, |r, c| {
                if r < self.dim && c < self.dim {
                    m[(r, c)].clone()
                } else {
                    Scalar::zero()
                }
            })
        };
        let left = self.left.iter().map(&pad).collect();
        let right = self.right.iter().map(&pad).collect();
        let module = Bimodule::new(self.alg.clone(), dim, left, right)
            .expect("zero extension satisfies the axioms");
        let mut j = LinMap::zeros(dim, self.dim);
        for i in 0..self.dim {
            j[(i, i)] = Scalar::one();
        }
        (module, j)
    }

    // ---- annihilators ---------------------------------------------------

    /// `{x | A.x = 0}`.
    pub fn ann_left(&self) -> Subspace {
        self.common_kernel(&self.left)
    }

    /// `{x | x.A = 0}`.
    pub fn ann_right(&self) -> Subspace {
        self.common_kernel(&self.right)
    }

    /// Two-sided annihilator `ann X = ann_l X ∩ ann_r X`.
    pub fn ann(&self) -> Subspace {
        self.ann_left().intersect(&self.ann_right())
    }

    fn common_kernel(&self, mats: &[LinMap]) -> Subspace {
        let mut k = Subspace::full(self.dim);
        for m in mats {
            k = k.intersect(&m.kernel());
        }
        k
    }

    // ---- quotients ------------------------------------------------------

    /// Quotient by an invariant subspace, together with the quotient data.
    /// Fails with `NotClosed` when the subspace is not a submodule.
    pub fn quotient_by(&self, sub: &Subspace) -> Result<(Bimodule, Quotient)> {
        let q = sub.quotient();
        let mut left = Vec::with_capacity(self.alg.dim());
        let mut right = Vec::with_capacity(self.alg.dim());
        for m in &self.left {
            left.push(q.induce(m).ok_or(Error::NotClosed)?);
        }
        for m in &self.right {
            right.push(q.induce(m).ok_or(Error::NotClosed)?);
        }
        let module = Bimodule::new(self.alg.clone(), q.dim(), left, right)?;
        Ok((module, q))
    }

    /// The smallest submodule `N` such that `X/N` has trivial annihilator on
    /// the requested side, built by iterating `N ↦ N : A = {x | A.x ⊆ N}`
    /// (and/or the right-handed analogue) from `{0}` until stable. The chain
    /// strictly increases until it stabilizes, so at most `dim X` steps are
    /// taken.
    pub fn annihilator_free_quotient(&self, side: Side) -> AnnFreeQuotient {
        let mut stages = vec![Subspace::zero(self.dim)];
        loop {
            let current = stages.last().unwrap();
            let next = self.colon(current, side);
            if next == *current {
                break;
            }
            stages.push(next);
        }
        let n = stages.last().unwrap().clone();
        let (quotient, q) = self
            .quotient_by(&n)
            .expect("stable stage is a submodule by construction");
        AnnFreeQuotient {
            stages,
            n,
            quotient,
            projection: q.projection,
        }
    }

    /// `N : A` on the requested side: vectors whose action image lies in `N`.
    fn colon(&self, n: &Subspace, side: Side) -> Subspace {
        let proj = n.quotient().projection;
        let mut result = Subspace::full(self.dim);
        let mats: Vec<&LinMap> = match side {
            Side::Left => self.left.iter().collect(),
            Side::Right => self.right.iter().collect(),
            Side::TwoSided => self.left.iter().chain(&self.right).collect(),
        };
        for m in mats {
            result = result.intersect(&(&proj * m).kernel());
        }
        result
    }
}

/// Output of [`Bimodule::annihilator_free_quotient`].
#[derive(Clone, Debug)]
pub struct AnnFreeQuotient {
    /// The increasing chain `{0} = N_0 ⊆ N_1 ⊆ … ⊆ N`, last entry stable.
    pub stages: Vec<Subspace>,
    pub n: Subspace,
    pub quotient: Bimodule,
    pub projection: LinMap,
}

impl AnnFreeQuotient {
    pub fn quotient_ann(&self, side: Side) -> Subspace {
        match side {
            Side::Left => self.quotient.ann_left(),
            Side::Right => self.quotient.ann_right(),
            Side::TwoSided => self.quotient.ann(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vec;

    #[test]
    fn regular_bimodule_valid_for_stock_algebras() {
        for alg in [
            Algebra::field(),
            Algebra::null("n2", 1),
            Algebra::strictly_upper_triangular(3),
            Algebra::upper_triangular(2),
            Algebra::matrix(2),
        ] {
            let x = Bimodule::regular(&alg);
            assert_eq!(x.dim(), alg.dim());
        }
    }

    #[test]
    fn invalid_action_rejected() {
        // over M2, a 1-dim module with λ(e11) = 1 and 0 elsewhere breaks the
        // homomorphism law at (e11, e12): e11·e12 = e12 but λ(e11)λ(e12) = 0.
        let m2 = Algebra::matrix(2);
        let mut left = vec![LinMap::zeros(1, 1); 4];
        left[0] = LinMap::identity(1);
        let right = vec![LinMap::zeros(1, 1); 4];
        let err = Bimodule::new(m2.clone(), 1, left, right).unwrap_err();
        assert!(matches!(err, Error::NotLeftAction { .. }));

        // zero actions are always fine
        assert_eq!(Bimodule::zero_action(&m2, 1).dim(), 1);
    }

    #[test]
    fn dual_is_an_involution() {
        let n3 = Algebra::strictly_upper_triangular(3);
        let x = Bimodule::regular(&n3);
        let xdd = x.dual().dual();
        assert_eq!(x, xdd);
    }

    #[test]
    fn dual_of_zero_action_module_is_itself() {
        let m2 = Algebra::matrix(2);
        let z = Bimodule::zero_action(&m2, 3);
        assert_eq!(z.dual(), z);
    }

    #[test]
    fn annihilators_of_stock_modules() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        assert!(x.ann_left().is_zero());
        assert!(x.ann_right().is_zero());
        assert!(x.ann().is_zero());

        let z = Bimodule::zero_action(&m2, 3);
        assert!(z.ann().is_full());

        let n2 = Algebra::null("n2", 1);
        let r = Bimodule::regular(&n2);
        assert!(r.ann().is_full());
    }

    #[test]
    fn annihilator_of_regular_n3() {
        let n3 = Algebra::strictly_upper_triangular(3);
        let x = Bimodule::regular(&n3);
        // A·e12 = A·e13 = 0; e13·A = e23·A = 0; common: e13
        assert_eq!(
            x.ann_left(),
            Subspace::span(3, vec![basis_vec(3, 0), basis_vec(3, 1)])
        );
        assert_eq!(
            x.ann_right(),
            Subspace::span(3, vec![basis_vec(3, 1), basis_vec(3, 2)])
        );
        assert_eq!(x.ann(), Subspace::span(3, vec![basis_vec(3, 1)]));
    }

    #[test]
    fn ann_free_quotient_trivial_cases() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        let afq = x.annihilator_free_quotient(Side::TwoSided);
        assert!(afq.n.is_zero());
        assert_eq!(afq.quotient.dim(), 4);

        let z = Bimodule::zero_action(&m2, 2);
        let afq = z.annihilator_free_quotient(Side::Left);
        assert!(afq.n.is_full());
        assert_eq!(afq.quotient.dim(), 0);
    }

    #[test]
    fn ann_free_quotient_regular_n3() {
        let n3 = Algebra::strictly_upper_triangular(3);
        let x = Bimodule::regular(&n3);
        for side in [Side::Left, Side::Right, Side::TwoSided] {
            let afq = x.annihilator_free_quotient(side);
            assert!(afq.stages.len() <= x.dim() + 1);
            assert!(afq.quotient_ann(side).is_zero() || afq.quotient.dim() == 0);
            // idempotence
            let again = afq.quotient.annihilator_free_quotient(side);
            assert!(again.n.is_zero());
        }
    }

    #[test]
    fn restriction_through_envelope() {
        let n3 = Algebra::strictly_upper_triangular(3);
        let t3 = Algebra::upper_triangular(3);
        let mut emb = LinMap::zeros(6, 3);
        emb[(1, 0)] = Scalar::one();
        emb[(2, 1)] = Scalar::one();
        emb[(4, 2)] = Scalar::one();
        let env = Envelope::new(n3, t3.clone(), emb).unwrap();
        let x_b = Bimodule::regular(&t3);
        let x_a = x_b.restrict_through(&env).unwrap();
        assert_eq!(x_a.dim(), 6);
        assert_eq!(x_a.algebra().name(), "n3");
    }
}
