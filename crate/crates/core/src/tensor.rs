//! Balanced tensor products `X ⊗_A Y`: the quotient of the coordinate tensor
//! square by the balancing relations `x.a ⊗ y − x ⊗ a.y`, carrying the
//! induced bimodule structure (left action on the X factor, right action on
//! the Y factor). Also the induced-module and self-induced tests built on it.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{LinMap, Quotient, Scalar, Subspace};
use std::sync::Arc;

/// `X ⊗_A Y` together with the projection from raw tensor coordinates.
///
/// Raw coordinates are ordered lexicographically with the X index major:
/// `(u, v) ↦ u·dim(Y) + v`. That fixes the projection matrix bit-exactly.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    x_dim: usize,
    y_dim: usize,
    /// Balancing relation span inside the raw tensor square.
    pub relations: Subspace,
    pub quotient: Quotient,
    /// The quotient as a bimodule: `a.(x⊗y) = (a.x)⊗y`, `(x⊗y).a = x⊗(y.a)`.
    pub module: Bimodule,
}

impl BalancedTensor {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn raw_dim(&self) -> usize {
        self.x_dim * self.y_dim
    }

    pub fn raw_index(&self, u: usize, v: usize) -> usize {
        u * self.y_dim + v
    }

    /// Projection of the raw basis tensor `x_u ⊗ y_v`.
    pub fn project_basis(&self, u: usize, v: usize) -> Vec<Scalar> {
        let mut raw = vec![Scalar::zero(); self.raw_dim()];
        raw[self.raw_index(u, v)] = Scalar::one();
        self.quotient.projection.apply(&raw)
    }
}

/// Build `X ⊗_A Y`. Both modules must be over the same algebra.
pub fn balanced_tensor(x: &Bimodule, y: &Bimodule) -> Result<BalancedTensor> {
    if **x.algebra() != **y.algebra() {
        return Err(Error::Shape(
            "balanced tensor factors live over different algebras".into(),
        ));
    }
    let alg = x.algebra().clone();
    let (mx, my, n) = (x.dim(), y.dim(), alg.dim());
    let raw = mx * my;
    let idx = |u: usize, v: usize| u * my + v;

    // generators (x_u.e_i) ⊗ y_v − x_u ⊗ (e_i.y_v)
    let mut gens = Vec::with_capacity(mx * my * n);
    for u in 0..mx {
        for v in 0..my {
            for i in 0..n {
                let xu_a = x.right_action(i).col(u);
                let a_yv = y.left_action(i).col(v);
                let mut g = vec![Scalar::zero(); raw];
                for (w, c) in xu_a.iter().enumerate() {
                    if !c.is_zero() {
                        let t = &g[idx(w, v)] + c;
                        g[idx(w, v)] = t;
                    }
                }
                for (w, c) in a_yv.iter().enumerate() {
                    if !c.is_zero() {
                        let t = &g[idx(u, w)] - c;
                        g[idx(u, w)] = t;
                    }
                }
                if g.iter().any(|s| !s.is_zero()) {
                    gens.push(g);
                }
            }
        }
    }
    let relations = Subspace::span(raw, gens);
    let quotient = relations.quotient();

    let idm = LinMap::identity(my);
    let idx_m = LinMap::identity(mx);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        // act on the X factor / Y factor of the raw square, then descend
        let raw_left = x.left_action(i).kron(&idm);
        let raw_right = idx_m.kron(y.right_action(i));
        left.push(quotient.induce(&raw_left).ok_or(Error::NotClosed)?);
        right.push(quotient.induce(&raw_right).ok_or(Error::NotClosed)?);
    }
    let module = Bimodule::new(alg, quotient.dim(), left, right)?;
    Ok(BalancedTensor {
        x_dim: mx,
        y_dim: my,
        relations,
        quotient,
        module,
    })
}

/// The multiplication map `A ⊗_A A → A` on quotient coordinates.
pub fn multiplication_map(alg: &Arc<Algebra>, tensor: &BalancedTensor) -> LinMap {
    let n = alg.dim();
    // raw (i,j) ↦ e_i·e_j, then compose with the section
    let raw = LinMap::from_cols(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| alg.mult_basis(i, j).to_vec()))
            .collect(),
    );
    &raw * &tensor.quotient.section
}

/// Is multiplication `A ⊗_A A → A` bijective?
pub fn is_self_induced(alg: &Arc<Algebra>) -> Result<bool> {
    let reg = Bimodule::regular(alg);
    let t = balanced_tensor(&reg, &reg)?;
    let mu = multiplication_map(alg, &t);
    Ok(t.dim() == alg.dim() && mu.rank() == alg.dim())
}

/// Exterior multiplication `A ⊗_A X ⊗_A A → X` on quotient coordinates,
/// associating as `(A ⊗_A X) ⊗_A A`.
pub struct ExteriorData {
    pub tensor: BalancedTensor,
    pub inner: BalancedTensor,
    /// The map `a ⊗ x ⊗ a' ↦ a.x.a'` from `tensor` coordinates to `X`.
    pub exterior: LinMap,
}

pub fn exterior_triple(x: &Bimodule) -> Result<ExteriorData> {
    let alg = x.algebra().clone();
    let reg = Bimodule::regular(&alg);
    let inner = balanced_tensor(&reg, x)?; // A ⊗_A X
    let tensor = balanced_tensor(&inner.module, &reg)?; // (A ⊗_A X) ⊗_A A
    let (n, m) = (alg.dim(), x.dim());

    // raw (i, u, j) ↦ e_i.x_u.e_j on the n·m·n coordinate cube
    let mut cols = Vec::with_capacity(n * m * n);
    for i in 0..n {
        for u in 0..m {
            for j in 0..n {
                let v = x.right_action(j).apply(&x.left_action(i).col(u));
                cols.push(v);
            }
        }
    }
    let raw3 = LinMap::from_cols(cols);
    // tensor coords → (A⊗X)-coords × A-coords → raw cube coords
    let lift1 = inner.quotient.section.kron(&LinMap::identity(n));
    let exterior = &(&raw3 * &lift1) * &tensor.quotient.section;
    Ok(ExteriorData {
        tensor,
        inner,
        exterior,
    })
}

/// Does exterior multiplication give a bijection `A ⊗_A X ⊗_A A → X`?
/// Returns the witness map alongside the verdict.
pub fn is_induced(x: &Bimodule) -> Result<(bool, ExteriorData)> {
    let data = exterior_triple(x)?;
    let ok = data.tensor.dim() == x.dim() && data.exterior.rank() == x.dim();
    Ok((ok, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_tensor_of_unital_algebra_collapses_to_algebra() {
        for alg in [Algebra::field(), Algebra::matrix(2), Algebra::upper_triangular(2)] {
            let reg = Bimodule::regular(&alg);
            let t = balanced_tensor(&reg, &reg).unwrap();
            assert_eq!(t.dim(), alg.dim());
            let mu = multiplication_map(&alg, &t);
            assert_eq!(mu.rank(), alg.dim());
        }
    }

    #[test]
    fn zero_dimensional_module_gives_zero_tensor() {
        let m2 = Algebra::matrix(2);
        let z = Bimodule::zero_action(&m2, 0);
        let reg = Bimodule::regular(&m2);
        let t = balanced_tensor(&z, &reg).unwrap();
        assert_eq!(t.dim(), 0);
    }

    #[test]
    fn zero_action_factor_kills_acted_side() {
        // X zero-action: relations give x ⊗ (a.y) = 0, so the quotient is
        // X ⊗ (Y / span A.Y). For Y regular over M2, span A.Y = Y, so 0.
        let m2 = Algebra::matrix(2);
        let z = Bimodule::zero_action(&m2, 2);
        let reg = Bimodule::regular(&m2);
        let t = balanced_tensor(&z, &reg).unwrap();
        // direct construction of X ⊗ (Y / A.Y)
        let ay = {
            let mut vs = Vec::new();
            for i in 0..4 {
                vs.extend(reg.left_action(i).col_vecs());
            }
            Subspace::span(4, vs)
        };
        assert_eq!(t.dim(), 2 * (4 - ay.dim()));
        assert_eq!(t.dim(), 0);
    }

    #[test]
    fn balancing_generators_are_killed() {
        let t3 = Algebra::upper_triangular(3);
        let reg = Bimodule::regular(&t3);
        let t = balanced_tensor(&reg, &reg).unwrap();
        for g in t.relations.basis() {
            assert!(t.quotient.projection.apply(g).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn self_induced_examples() {
        assert!(is_self_induced(&Algebra::field()).unwrap());
        assert!(is_self_induced(&Algebra::matrix(2)).unwrap());
        assert!(!is_self_induced(&Algebra::null("n2", 1)).unwrap());
        assert!(!is_self_induced(&Algebra::strictly_upper_triangular(3)).unwrap());
    }

    #[test]
    fn induced_examples() {
        let m2 = Algebra::matrix(2);
        let (ok, _) = is_induced(&Bimodule::regular(&m2)).unwrap();
        assert!(ok, "regular module of a unital algebra is induced");

        let (ok, data) = is_induced(&Bimodule::zero_action(&m2, 2)).unwrap();
        assert!(!ok, "zero-action module of positive dimension is not induced");
        assert!(data.exterior.is_zero());

        let n3 = Algebra::strictly_upper_triangular(3);
        let (ok, data) = is_induced(&Bimodule::regular(&n3)).unwrap();
        assert!(!ok);
        assert!(data.exterior.rank() < 3);
    }

    #[test]
    fn outer_square_is_induced_for_unital() {
        let alg = Algebra::upper_triangular(2);
        let x = Bimodule::outer_square(&alg);
        let (ok, _) = is_induced(&x).unwrap();
        assert!(ok);
    }
}
