//! The predual realization of the double centralizer of a dual module:
//! `ΔC(X*)` is the dual of `(A ⊗_A X ⊕ X ⊗_A A) / N` with
//! `N = span{(a ⊗ x.α, −a.x ⊗ α)}`, the identification going through the
//! hom-tensor pairing. Alongside it, the factorization `q*∘ι_{X*} = μ*`
//! and the equivalence "ι_{X*} injective ⇔ μ surjective".

use crate::bimodule::Bimodule;
use crate::centralizer::{double_centralizer, CentralizerModule};
use crate::error::{Error, Result};
use crate::linalg::{LinMap, Quotient, Scalar, Subspace};
use crate::tensor::{balanced_tensor, is_induced, BalancedTensor};

/// The spaces and maps of the predual construction for a module `X`.
pub struct PredualData {
    /// `A ⊗_A X`.
    pub left: BalancedTensor,
    /// `X ⊗_A A`.
    pub right: BalancedTensor,
    /// `N` inside the direct sum of the two tensor quotients.
    pub n_sub: Subspace,
    /// Quotient of the direct sum by `N`.
    pub quotient: Quotient,
    /// The quotient as a bimodule.
    pub q_module: Bimodule,
    /// `μ: A⊗_A X ⊕ X⊗_A A → X`, `(a⊗x, x'⊗a') ↦ a.x + x'.a'`, on direct-sum
    /// coordinates.
    pub mu: LinMap,
}

impl PredualData {
    /// `N ⊆ ker μ`, checked exactly on the stored basis.
    pub fn n_inside_ker_mu(&self) -> bool {
        self.n_sub
            .basis()
            .iter()
            .all(|g| self.mu.apply(g).iter().all(Scalar::is_zero))
    }
}

/// Build both balanced tensors, `N`, the quotient with its bimodule
/// structure, and `μ`.
pub fn build_predual(x: &Bimodule) -> Result<PredualData> {
    let alg = x.algebra().clone();
    let reg = Bimodule::regular(&alg);
    let left = balanced_tensor(&reg, x)?; // raw (i,u) = i·m + u
    let right = balanced_tensor(x, &reg)?; // raw (u,j) = u·n + j
    let (n, m) = (alg.dim(), x.dim());
    let (dl, dr) = (left.dim(), right.dim());
    let dsum = dl + dr;

    // generators (a ⊗ x.α, −a.x ⊗ α) over all basis triples
    let mut gens = Vec::with_capacity(n * m * n);
    for i in 0..n {
        for u in 0..m {
            for j in 0..n {
                let mut raw_l = vec![Scalar::zero(); n * m];
                for (w, c) in x.right_action(j).col(u).iter().enumerate() {
                    if !c.is_zero() {
                        raw_l[i * m + w] = c.clone();
                    }
                }
                let mut raw_r = vec![Scalar::zero(); m * n];
                for (w, c) in x.left_action(i).col(u).iter().enumerate() {
                    if !c.is_zero() {
                        raw_r[w * n + j] = -c;
                    }
                }
                let mut g = left.quotient.projection.apply(&raw_l);
                g.extend(right.quotient.projection.apply(&raw_r));
                if g.iter().any(|s| !s.is_zero()) {
                    gens.push(g);
                }
            }
        }
    }
    let n_sub = Subspace::span(dsum, gens);
    let quotient = n_sub.quotient();

    // direct-sum bimodule, then its quotient by N
    let mut q_left = Vec::with_capacity(n);
    let mut q_right = Vec::with_capacity(n);
    for i in 0..n {
        let l = LinMap::block_diag(left.module.left_action(i), right.module.left_action(i));
        let r = LinMap::block_diag(left.module.right_action(i), right.module.right_action(i));
        q_left.push(quotient.induce(&l).ok_or(Error::NotClosed)?);
        q_right.push(quotient.induce(&r).ok_or(Error::NotClosed)?);
    }
    let q_module = Bimodule::new(alg, quotient.dim(), q_left, q_right)?;

    // μ on direct-sum coordinates
    let e_l = LinMap::from_cols(
        (0..n)
            .flat_map(|i| (0..m).map(move |u| x.left_action(i).col(u)))
            .collect(),
    );
    let e_r = LinMap::from_cols(
        (0..m)
            .flat_map(|u| (0..n).map(move |j| x.right_action(j).col(u)))
            .collect(),
    );
    let mu_l = &e_l * &left.quotient.section;
    let mu_r = &e_r * &right.quotient.section;
    let mu = mu_l.hstack(&mu_r);

    Ok(PredualData {
        left,
        right,
        n_sub,
        quotient,
        q_module,
        mu,
    })
}

/// Everything needed to compare `ΔC(X*)` with the dual of the predual.
pub struct DualIso {
    pub dc_star: CentralizerModule,
    pub predual: PredualData,
    /// `θ: ΔC(X*) → ((A⊗_A X ⊕ X⊗_A A)/N)*` through the hom-tensor pairing.
    pub theta: LinMap,
    pub is_isomorphism: bool,
}

/// Build `ΔC(X*)` directly and the predual quotient, and check that the
/// hom-tensor pairing `⟨a⊗x, Φ⟩ = ⟨x, S(a)⟩` (and its mirror on the other
/// summand) induces a bimodule isomorphism between them.
pub fn dual_iso(x: &Bimodule) -> Result<DualIso> {
    let xstar = x.dual();
    let dc_star = double_centralizer(&xstar)?;
    let predual = build_predual(x)?;
    let (n, m) = (x.algebra().dim(), x.dim());
    let dq = predual.quotient.dim();
    let (dl, dr) = (predual.left.dim(), predual.right.dim());

    let theta = LinMap::from_fn(dq, dc_star.dim(), |t, k| {
        let pair = dc_star.basis_pair(k); // S, T: m × n (maps A → X*)
        let rep = predual.quotient.section.col(t);
        let raw_l = predual.left.quotient.section.apply(&rep[..dl]);
        let raw_r = predual.right.quotient.section.apply(&rep[dl..dl + dr]);
        let mut acc = Scalar::zero();
        for i in 0..n {
            for u in 0..m {
                let c = &raw_l[i * m + u];
                if !c.is_zero() {
                    acc += c * &pair.s[(u, i)];
                }
            }
        }
        for u in 0..m {
            for j in 0..n {
                let c = &raw_r[u * n + j];
                if !c.is_zero() {
                    acc += c * &pair.t[(u, j)];
                }
            }
        }
        acc
    });

    let qdual = predual.q_module.dual();
    let dims_match = dc_star.dim() == dq;
    let bijective = dims_match && theta.rank() == dq;
    let intertwines = bijective
        && (0..n).all(|i| {
            &theta * dc_star.a_module().left_action(i) == qdual.left_action(i) * &theta
                && &theta * dc_star.a_module().right_action(i) == qdual.right_action(i) * &theta
        });

    Ok(DualIso {
        dc_star,
        predual,
        theta,
        is_isomorphism: intertwines,
    })
}

/// `ΔC(X*) ≅ ((A⊗_A X ⊕ X⊗_A A)/N)*` as bimodules, via the pairing.
pub fn dual_iso_check(x: &Bimodule) -> Result<bool> {
    Ok(dual_iso(x)?.is_isomorphism)
}

/// `q* ∘ ι_{X*} = μ*` as an exact matrix identity (with `ι_{X*}` read inside
/// the predual dual through `θ`).
pub fn factorization_check(x: &Bimodule) -> Result<bool> {
    let iso = dual_iso(x)?;
    let lhs = &iso.predual.quotient.projection.transpose() * &(&iso.theta * iso.dc_star.iota());
    let rhs = iso.predual.mu.transpose();
    Ok(lhs == rhs)
}

/// `ι_{X*}` is injective if and only if `μ` is surjective; returns whether
/// the biconditional holds for this instance.
pub fn injectivity_surjectivity_check(x: &Bimodule) -> Result<bool> {
    let iso = dual_iso(x)?;
    let injective = iso.dc_star.iota().kernel().is_zero();
    let surjective = iso.predual.mu.rank() == x.dim();
    Ok(injective == surjective)
}

/// For induced `X`: `ι_{X*}` is bijective and `ker μ ⊆ N`. Refuses on
/// non-induced input.
pub fn induced_dual_iso_check(x: &Bimodule) -> Result<bool> {
    let (induced, _) = is_induced(x)?;
    if !induced {
        return Err(Error::NotInduced);
    }
    let iso = dual_iso(x)?;
    let iota = iso.dc_star.iota();
    let bijective = iota.kernel().is_zero() && iota.rank() == iso.dc_star.dim();
    let ker_mu_in_n = iso
        .predual
        .mu
        .kernel()
        .basis()
        .iter()
        .all(|v| iso.predual.n_sub.contains(v));
    Ok(bijective && ker_mu_in_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn predual_on_ground_field() {
        let k = Algebra::field();
        let x = Bimodule::regular(&k);
        let p = build_predual(&x).unwrap();
        assert!(p.n_inside_ker_mu());
        assert_eq!(p.mu.rank(), 1, "unital: μ is surjective");
        assert!(dual_iso_check(&x).unwrap());
        assert!(factorization_check(&x).unwrap());
        assert!(injectivity_surjectivity_check(&x).unwrap());
    }

    #[test]
    fn predual_on_zero_action_module() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::zero_action(&m2, 2);
        let p = build_predual(&x).unwrap();
        assert!(p.mu.is_zero());
        assert!(p.n_inside_ker_mu());
        assert!(injectivity_surjectivity_check(&x).unwrap());
        assert!(factorization_check(&x).unwrap());
    }

    #[test]
    fn predual_of_zero_dimensional_module() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::zero_action(&m2, 0);
        let p = build_predual(&x).unwrap();
        assert_eq!(p.quotient.dim(), 0);
        assert!(p.mu.is_zero());
        assert!(dual_iso_check(&x).unwrap());
        assert!(factorization_check(&x).unwrap());
        assert!(injectivity_surjectivity_check(&x).unwrap());
    }

    #[test]
    fn dual_iso_on_m2_regular() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        let iso = dual_iso(&x).unwrap();
        assert_eq!(iso.dc_star.dim(), 4);
        assert_eq!(iso.predual.quotient.dim(), 4);
        assert!(iso.is_isomorphism);
        assert!(factorization_check(&x).unwrap());
        assert!(injectivity_surjectivity_check(&x).unwrap());
    }

    #[test]
    fn dual_iso_on_n2_regular() {
        let n2 = Algebra::null("n2", 1);
        let x = Bimodule::regular(&n2);
        let iso = dual_iso(&x).unwrap();
        // all constraints vanish: ΔC(X*) is the full pair space, and N = 0
        assert_eq!(iso.dc_star.dim(), 2);
        assert_eq!(iso.predual.quotient.dim(), 2);
        assert!(iso.is_isomorphism);
        assert!(injectivity_surjectivity_check(&x).unwrap());
    }

    #[test]
    fn dual_iso_on_n3_regular() {
        let n3 = Algebra::strictly_upper_triangular(3);
        let x = Bimodule::regular(&n3);
        assert!(dual_iso_check(&x).unwrap());
        assert!(factorization_check(&x).unwrap());
        assert!(injectivity_surjectivity_check(&x).unwrap());
    }

    #[test]
    fn induced_modules_have_dual_iso() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        assert!(induced_dual_iso_check(&x).unwrap());

        let outer = Bimodule::outer_square(&m2);
        assert!(induced_dual_iso_check(&outer).unwrap());

        let n3 = Algebra::strictly_upper_triangular(3);
        let bad = Bimodule::regular(&n3);
        assert!(matches!(
            induced_dual_iso_check(&bad).unwrap_err(),
            Error::NotInduced
        ));
    }
}
