//! Derivation spaces, inner derivations and first Hochschild cohomology,
//! plus the push-out of a derivation along an envelope: `D: A → X` extends to
//! `D̃: B → ΔC(X)` by `D̃(b) = (a ↦ D(ba) − b.D(a), a ↦ D(ab) − D(a).b)`,
//! with the commuting square `D̃∘ι = ι_X∘D`. Uniqueness of `D̃` and the
//! pull-back of inner `D̃` both need the products of `A` to span `A`.

use crate::algebra::{Algebra, Envelope};
use crate::bimodule::Bimodule;
use crate::centralizer::{double_centralizer, CentralizerModule, CentralizerPair};
use crate::error::{Error, Result};
use crate::hom::constraint_matrix;
use crate::linalg::{vec_of_map, LinMap, Scalar, Subspace};
use std::sync::Arc;

/// A derivation `D: A → X`: linear with `D(ab) = a.D(b) + D(a).b`, checked
/// exhaustively at construction.
#[derive(Clone, PartialEq, Debug)]
pub struct Derivation {
    module: Bimodule,
    map: LinMap,
}

impl Derivation {
    pub fn new(module: Bimodule, map: LinMap) -> Result<Self> {
        let n = module.algebra().dim();
        let m = module.dim();
        if map.rows() != m || map.cols() != n {
            return Err(Error::Shape(format!("derivation matrix must be {m}x{n}")));
        }
        if let Some((i, j)) = derivation_defect(&module, &map) {
            return Err(Error::NotDerivation { i, j });
        }
        Ok(Derivation { module, map })
    }

    pub fn zero(module: Bimodule) -> Self {
        let map = LinMap::zeros(module.dim(), module.algebra().dim());
        Derivation { module, map }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// First basis pair on which the derivation rule fails, if any.
fn derivation_defect(x: &Bimodule, d: &LinMap) -> Option<(usize, usize)> {
    let alg = x.algebra();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let mut lhs = vec![Scalar::zero(); x.dim()];
            for (k, c) in alg.mult_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    for (r, v) in d.col(k).iter().enumerate() {
                        let t = &lhs[r] + &(c * v);
                        lhs[r] = t;
                    }
                }
            }
            let mut rhs = x.left_action(i).apply(&d.col(j));
            for (r, v) in x.right_action(j).apply(&d.col(i)).iter().enumerate() {
                let t = &rhs[r] + v;
                rhs[r] = t;
            }
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// `Z¹(A, X)` as a subspace of column-major `dim X × dim A` matrices.
pub fn derivation_space(x: &Bimodule) -> Subspace {
    let alg = x.algebra();
    let (n, m) = (alg.dim(), x.dim());
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // D(e_i e_j) − e_i.D(e_j) − D(e_i).e_j = 0
            for r in 0..m {
                let mut row = vec![Scalar::zero(); m * n];
                for (k, c) in alg.mult_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        let t = &row[k * m + r] + c;
                        row[k * m + r] = t;
                    }
                }
                for s in 0..m {
                    let l = &x.left_action(i)[(r, s)];
                    if !l.is_zero() {
                        let t = &row[j * m + s] - l;
                        row[j * m + s] = t;
                    }
                    let rr = &x.right_action(j)[(r, s)];
                    if !rr.is_zero() {
                        let t = &row[i * m + s] - rr;
                        row[i * m + s] = t;
                    }
                }
                rows.push(row);
            }
        }
    }
    constraint_matrix(rows, m * n).kernel()
}

/// The map `X → Hom(A, X)`, `x ↦ (a ↦ a.x − x.a)`, in flat coordinates.
pub fn inner_map(x: &Bimodule) -> LinMap {
    let alg = x.algebra();
    let (n, m) = (alg.dim(), x.dim());
    LinMap::from_fn(m * n, m, |row, u| {
        let (i, r) = (row / m, row % m);
        &x.left_action(i)[(r, u)] - &x.right_action(i)[(r, u)]
    })
}

/// `B¹(A, X)`: the image of [`inner_map`].
pub fn inner_derivations(x: &Bimodule) -> Subspace {
    inner_map(x).image()
}

/// Dimensions `(dim Z¹, dim B¹, dim H¹)`; `B¹ ⊆ Z¹` is asserted.
pub fn h1(x: &Bimodule) -> (usize, usize, usize) {
    let z1 = derivation_space(x);
    let b1 = inner_derivations(x);
    assert!(
        z1.contains_subspace(&b1),
        "inner derivations must be derivations"
    );
    (z1.dim(), b1.dim(), z1.dim() - b1.dim())
}

/// Witness `x` with `D(a) = a.x − x.a`, when one exists.
pub fn is_inner(d: &Derivation) -> Option<Vec<Scalar>> {
    let witness = inner_map(d.module())
        .solve_affine(&vec_of_map(d.map()))?
        .particular;
    Some(witness)
}

/// The push-out of a derivation along an envelope, with the proof
/// obligations of the construction recorded as booleans (they are exact
/// checks, not trusted conclusions).
#[derive(Clone, Debug)]
pub struct Pushout {
    /// `ΔC(X)` with the ambient actions attached.
    pub dc: CentralizerModule,
    /// `D̃: B → ΔC(X)` in coordinates.
    pub d_tilde: LinMap,
    /// Every `D̃(b)` solved the centralizer conditions.
    pub membership: bool,
    /// `D̃` satisfies the derivation rule over `B`.
    pub derivation_rule: bool,
    /// `D̃∘ι = ι_X∘D` exactly.
    pub diagram: bool,
}

impl Pushout {
    pub fn all_ok(&self) -> bool {
        self.membership && self.derivation_rule && self.diagram
    }

    /// `D̃` as a checked derivation over the ambient algebra.
    pub fn d_tilde_derivation(&self) -> Result<Derivation> {
        let b_mod = self
            .dc
            .b_module()
            .expect("pushout always attaches an envelope")
            .clone();
        Derivation::new(b_mod, self.d_tilde.clone())
    }
}

/// Everything fixed by the envelope and the ambient module: the restriction
/// of the module, `ΔC` with its ambient actions, and the commuting-square
/// embedding. Building this once lets many derivations be pushed through it.
#[derive(Clone, Debug)]
pub struct PushoutContext {
    env: Envelope,
    x_b: Bimodule,
    /// The module as an `A`-bimodule.
    pub x: Bimodule,
    /// `ΔC(X)` with ambient actions attached.
    pub dc: CentralizerModule,
}

impl PushoutContext {
    pub fn new(env: &Envelope, x_b: &Bimodule) -> Result<Self> {
        let x = x_b.restrict_through(env)?;
        let dc = double_centralizer(&x)?.attach_envelope(env, x_b)?;
        Ok(PushoutContext {
            env: env.clone(),
            x_b: x_b.clone(),
            x,
            dc,
        })
    }

    pub fn envelope(&self) -> &Envelope {
        &self.env
    }

    /// Push a derivation of the sub-algebra out to the ambient algebra.
    pub fn push(&self, d: &Derivation) -> Result<Pushout> {
        if *d.module() != self.x {
            return Err(Error::RestrictionMismatch);
        }
        let nb = self.env.amb().dim();
        let dmat = d.map();
        let mut membership = true;
        let mut cols = Vec::with_capacity(nb);
        for beta in 0..nb {
            // 𝓛(b) = D(b·) − b.D(·),  𝓡(b) = D(·b) − D(·).b
            let l_ba = self.env.left_mult_on_sub(beta)?;
            let r_ab = self.env.right_mult_on_sub(beta)?;
            let s = (dmat * &l_ba).sub(&(self.x_b.left_action(beta) * dmat));
            let t = (dmat * &r_ab).sub(&(self.x_b.right_action(beta) * dmat));
            let pair = CentralizerPair { s, t };
            match self.dc.encode(&pair) {
                Some(coords) => cols.push(coords),
                None => {
                    membership = false;
                    cols.push(vec![Scalar::zero(); self.dc.dim()]);
                }
            }
        }
        let d_tilde = if nb == 0 {
            LinMap::zeros(self.dc.dim(), 0)
        } else {
            LinMap::from_cols(cols)
        };

        let b_mod = self.dc.b_module().expect("context attaches the envelope");
        let derivation_rule = membership && derivation_defect(b_mod, &d_tilde).is_none();
        let diagram = &d_tilde * self.env.embedding() == self.dc.iota() * dmat;

        Ok(Pushout {
            dc: self.dc.clone(),
            d_tilde,
            membership,
            derivation_rule,
            diagram,
        })
    }

    /// Solve for all derivations `Δ: B → ΔC(X)` making the square commute
    /// and report whether `D̃` is the unique one. Refuses when products of
    /// `A` do not span `A` (then uniqueness genuinely may fail).
    pub fn unique(&self, d: &Derivation) -> Result<bool> {
        if !self.env.sub().square_span().is_full() {
            return Err(Error::SquareSpanDeficient);
        }
        let po = self.push(d)?;
        let b_mod = self.dc.b_module().expect("context attaches the envelope");
        let z1_b = derivation_space(b_mod);

        // affine condition: Δ∘ι = ι_X∘D, on flat coordinates of Δ
        let target_map = self.dc.iota() * d.map();
        let system = self
            .env
            .embedding()
            .transpose()
            .kron(&LinMap::identity(self.dc.dim()));
        let Some(sol) = system.solve_affine(&vec_of_map(&target_map)) else {
            return Ok(false);
        };
        // solution set = (affine solutions) ∩ Z¹(B, ΔC); it is {D̃} exactly
        // when D̃ solves both parts and the direction space is trivial
        let d_tilde_flat = vec_of_map(&po.d_tilde);
        let shift: Vec<Scalar> = d_tilde_flat
            .iter()
            .zip(&sol.particular)
            .map(|(a, b)| a - b)
            .collect();
        let d_tilde_commutes = sol.homogeneous.contains(&shift);
        let directions = sol.homogeneous.intersect(&z1_b);
        Ok(d_tilde_commutes && z1_b.contains(&d_tilde_flat) && directions.is_zero())
    }

    /// If `D̃` is inner in the ambient bimodule `ΔC(X)`, pull it back: a
    /// pair `(S, T) ∈ ΔC(X)` with `D(a) = S(a) − T(a)` exactly. `None` when
    /// `D̃` is not inner. Refuses when products of `A` do not span `A`.
    pub fn pull_back_inner(&self, d: &Derivation) -> Result<Option<CentralizerPair>> {
        if !self.env.sub().square_span().is_full() {
            return Err(Error::SquareSpanDeficient);
        }
        let po = self.push(d)?;
        let dtd = po.d_tilde_derivation()?;
        let Some(witness) = is_inner(&dtd) else {
            return Ok(None);
        };
        // D̃(b) = b.w − w.b; with (S,T) = −w the identity D = S − T follows
        // (the product-span condition transports it from pairs to elements)
        let pair = self.dc.decode(&witness).neg();
        let diff = pair.s.sub(&pair.t);
        if diff != *d.map() {
            // the construction guarantees this; failing here is an internal bug
            return Err(Error::NotClosed);
        }
        Ok(Some(pair))
    }
}

/// One-shot push-out; see [`PushoutContext`] for the reusable form.
pub fn pushout(env: &Envelope, x_b: &Bimodule, d: &Derivation) -> Result<Pushout> {
    PushoutContext::new(env, x_b)?.push(d)
}

/// One-shot uniqueness check of the push-out.
pub fn pushout_unique(env: &Envelope, x_b: &Bimodule, d: &Derivation) -> Result<bool> {
    PushoutContext::new(env, x_b)?.unique(d)
}

/// One-shot pull-back of an inner push-out.
pub fn pull_back_inner(
    env: &Envelope,
    x_b: &Bimodule,
    d: &Derivation,
) -> Result<Option<CentralizerPair>> {
    PushoutContext::new(env, x_b)?.pull_back_inner(d)
}

/// The derivation `a ↦ S(a) − T(a)` determined by a centralizer pair,
/// validated against the derivation rule.
pub fn pair_to_derivation(x: &Bimodule, pair: &CentralizerPair) -> Result<Derivation> {
    Derivation::new(x.clone(), pair.s.sub(&pair.t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vec;
    use crate::linalg::map_of_vec;

    fn n3_in_t3() -> (Envelope, Bimodule) {
        let n3 = Algebra::strictly_upper_triangular(3);
        let t3 = Algebra::upper_triangular(3);
        let mut emb = LinMap::zeros(6, 3);
        emb[(1, 0)] = Scalar::one();
        emb[(2, 1)] = Scalar::one();
        emb[(4, 2)] = Scalar::one();
        let env = Envelope::new(n3, t3.clone(), emb).unwrap();
        let x_b = Bimodule::regular(&t3);
        (env, x_b)
    }

    #[test]
    fn z1_of_ground_field_is_zero() {
        let k = Algebra::field();
        let x = Bimodule::regular(&k);
        assert_eq!(h1(&x), (0, 0, 0));
    }

    #[test]
    fn z1_of_null_algebra_is_everything() {
        let n2 = Algebra::null("n2", 1);
        let x = Bimodule::regular(&n2);
        assert_eq!(h1(&x), (1, 0, 1));
    }

    #[test]
    fn h1_of_m2_regular_vanishes() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        assert_eq!(h1(&x), (3, 3, 0));
    }

    #[test]
    fn inner_examples() {
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        // the inner derivation with witness e12
        let w = basis_vec(4, 1);
        let dmat = map_of_vec(4, 4, &inner_map(&x).apply(&w));
        let d = Derivation::new(x.clone(), dmat).unwrap();
        let found = is_inner(&d).expect("inner by construction");
        let again = map_of_vec(4, 4, &inner_map(&x).apply(&found));
        assert_eq!(again, *d.map());

        // zero derivation is inner with witness 0
        let z = Derivation::zero(x);
        assert!(is_inner(&z).is_some());

        // the nonzero derivation of N2 into itself is not inner
        let n2 = Algebra::null("n2", 1);
        let xr = Bimodule::regular(&n2);
        let d = Derivation::new(xr, LinMap::identity(1)).unwrap();
        assert!(is_inner(&d).is_none());
    }

    #[test]
    fn symmetric_module_has_no_inner_derivations() {
        let env = Envelope::unitization(Algebra::null("n2", 1));
        let b = env.amb(); // commutative
        let x = Bimodule::regular(b);
        assert!(inner_derivations(&x).is_zero());
        // same for zero actions
        let z = Bimodule::zero_action(&Algebra::matrix(2), 2);
        assert!(inner_derivations(&z).is_zero());
    }

    #[test]
    fn pushout_identity_envelope() {
        let m2 = Algebra::matrix(2);
        let env = Envelope::identity(m2.clone());
        let x = Bimodule::regular(&m2);
        let z1 = derivation_space(&x);
        assert_eq!(z1.dim(), 3);
        for b in z1.basis() {
            let d = Derivation::new(x.clone(), map_of_vec(4, 4, b)).unwrap();
            let po = pushout(&env, &x, &d).unwrap();
            assert!(po.all_ok(), "pushout checks must pass");
        }
    }

    #[test]
    fn pushout_n3_in_t3() {
        let (env, x_b) = n3_in_t3();
        let x = x_b.restrict_through(&env).unwrap();
        let z1 = derivation_space(&x);
        assert!(z1.dim() > 0);
        for b in z1.basis() {
            let d = Derivation::new(x.clone(), map_of_vec(6, 3, b)).unwrap();
            let po = pushout(&env, &x_b, &d).unwrap();
            assert!(po.all_ok());
        }
    }

    #[test]
    fn pushout_unique_on_m2() {
        let m2 = Algebra::matrix(2);
        let env = Envelope::identity(m2.clone());
        let x = Bimodule::regular(&m2);
        let z1 = derivation_space(&x);
        for b in z1.basis() {
            let d = Derivation::new(x.clone(), map_of_vec(4, 4, b)).unwrap();
            assert!(pushout_unique(&env, &x, &d).unwrap());
        }
    }

    #[test]
    fn pushout_unique_refuses_deficient_square_span() {
        let n2 = Algebra::null("n2", 1);
        let env = Envelope::unitization(n2);
        let x_b = Bimodule::regular(env.amb());
        let x = x_b.restrict_through(&env).unwrap();
        let d = Derivation::zero(x);
        let err = pushout_unique(&env, &x_b, &d).unwrap_err();
        assert!(matches!(err, Error::SquareSpanDeficient));
        let err = pull_back_inner(&env, &x_b, &d).unwrap_err();
        assert!(matches!(err, Error::SquareSpanDeficient));
    }

    #[test]
    fn pull_back_on_m2() {
        let m2 = Algebra::matrix(2);
        let env = Envelope::identity(m2.clone());
        let x = Bimodule::regular(&m2);
        let z1 = derivation_space(&x);
        for b in z1.basis() {
            let d = Derivation::new(x.clone(), map_of_vec(4, 4, b)).unwrap();
            let pair = pull_back_inner(&env, &x, &d)
                .unwrap()
                .expect("all derivations of M2 are inner");
            assert_eq!(pair.s.sub(&pair.t), *d.map());
        }
    }

    #[test]
    fn pushout_of_inner_derivation_is_inner_with_embedded_witness() {
        // D(a) = a.x − x.a pushes out to D̃(b) = b.ι(x) − ι(x).b
        let (env, x_b) = n3_in_t3();
        let ctx = PushoutContext::new(&env, &x_b).unwrap();
        let b_mod = ctx.dc.b_module().unwrap();
        for u in 0..ctx.x.dim() {
            let w = basis_vec(ctx.x.dim(), u);
            let dmat = map_of_vec(ctx.x.dim(), 3, &inner_map(&ctx.x).apply(&w));
            let d = Derivation::new(ctx.x.clone(), dmat).unwrap();
            let po = ctx.push(&d).unwrap();
            let iota_w = ctx.dc.iota().apply(&w);
            for beta in 0..env.amb().dim() {
                let expect: Vec<Scalar> = b_mod
                    .left_action(beta)
                    .apply(&iota_w)
                    .iter()
                    .zip(b_mod.right_action(beta).apply(&iota_w))
                    .map(|(l, r)| l - &r)
                    .collect();
                assert_eq!(po.d_tilde.col(beta), expect);
            }
        }
    }

    #[test]
    fn non_inner_pushout_pulls_back_to_nothing() {
        // A = B = the unitization of N2, X = A*: H¹ is nonzero, so the
        // nonzero derivation has a non-inner push-out
        let env = Envelope::unitization(Algebra::null("n2", 1));
        let b = env.amb().clone();
        let env = Envelope::identity(b.clone());
        let x_b = Bimodule::regular(&b).dual();
        let ctx = PushoutContext::new(&env, &x_b).unwrap();
        let z1 = derivation_space(&ctx.x);
        assert_eq!(z1.dim(), 1);
        let d = Derivation::new(
            ctx.x.clone(),
            map_of_vec(2, 2, &z1.basis()[0]),
        )
        .unwrap();
        assert!(ctx.pull_back_inner(&d).unwrap().is_none());
    }

    #[test]
    fn pair_induced_derivation_is_negated_inner() {
        // (L_x, R_x) induces a ↦ x.a − a.x, the negative of the inner
        // derivation with witness x; both lie in B¹.
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        let w = basis_vec(4, 2);
        let s = LinMap::from_cols((0..4).map(|j| x.right_action(j).apply(&w)).collect());
        let t = LinMap::from_cols((0..4).map(|j| x.left_action(j).apply(&w)).collect());
        let induced = s.sub(&t);
        let inner = map_of_vec(4, 4, &inner_map(&x).apply(&w));
        assert_eq!(induced, inner.neg());
        assert!(inner_derivations(&x).contains(&vec_of_map(&induced)));
    }

    #[test]
    fn pair_to_derivation_rule_holds() {
        // every basis pair of ΔC determines a derivation a ↦ S(a) − T(a)
        let m2 = Algebra::matrix(2);
        let x = Bimodule::regular(&m2);
        let dc = double_centralizer(&x).unwrap();
        for k in 0..dc.dim() {
            let p = dc.basis_pair(k);
            assert!(pair_to_derivation(&x, &p).is_ok());
        }
    }
}
