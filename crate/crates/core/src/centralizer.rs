//! The double-centralizer bimodule of a module `X` over `A`: pairs `(S, T)`
//! of a right-module map and a left-module map `A → X` satisfying
//! `a.S(α) = T(a).α`, together with the canonical embedding
//! `ι_X: x ↦ (L_x, R_x)`, the ambient-algebra actions coming from an
//! envelope, and the universal property of `(ι_X, ΔC(X))`.

use crate::algebra::{basis_vec, Envelope};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result, Side};
use crate::hom::{constraint_matrix, module_map_rows};
use crate::linalg::{map_of_vec, vec_of_map, LinMap, Scalar, Subspace};

/// One double centralizer: `s` is a right-module map, `t` a left-module map,
/// and `a.s(α) = t(a).α` for all `a, α`.
#[derive(Clone, PartialEq, Debug)]
pub struct CentralizerPair {
    pub s: LinMap,
    pub t: LinMap,
}

impl CentralizerPair {
    /// Flatten into pair coordinates: all of `S` (column-major), then all
    /// of `T`.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut v = vec_of_map(&self.s);
        v.extend(vec_of_map(&self.t));
        v
    }

    pub fn unflatten(m: usize, n: usize, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), 2 * m * n);
        CentralizerPair {
            s: map_of_vec(m, n, &v[..m * n]),
            t: map_of_vec(m, n, &v[m * n..]),
        }
    }

    pub fn neg(&self) -> Self {
        CentralizerPair {
            s: self.s.neg(),
            t: self.t.neg(),
        }
    }
}

/// `ΔC(X)` as a based space of centralizer pairs, with its `A`-bimodule
/// structure and, once an envelope is attached, a `B`-bimodule structure.
#[derive(Clone, Debug)]
pub struct CentralizerModule {
    x: Bimodule,
    /// Solution subspace of the three condition families, inside the
    /// `2·dim(X)·dim(A)`-dimensional pair coordinate space.
    space: Subspace,
    /// `A`-actions expressed on the basis coordinates of `space`.
    module: Bimodule,
    /// `ι_X` in coordinates: `dim ΔC × dim X`.
    iota: LinMap,
    b_structure: Option<BStructure>,
}

/// Ambient-algebra module structure on `ΔC(X)` coming from an envelope.
#[derive(Clone, Debug)]
pub struct BStructure {
    pub env: Envelope,
    /// The module `X` as a bimodule over the ambient algebra.
    pub x_b: Bimodule,
    /// `B`-actions on `ΔC(X)` coordinates.
    pub module: Bimodule,
}

/// Solve the double-centralizer conditions for `X` and package the solution
/// space with its bimodule structure and the embedding `ι_X`.
pub fn double_centralizer(x: &Bimodule) -> Result<CentralizerModule> {
    let alg = x.algebra().clone();
    let (n, m) = (alg.dim(), x.dim());
    let width = 2 * m * n;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // S is a right-module map; conditions live in the S block.
    let mut s_rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            module_map_rows(&mut s_rows, m, n, alg.mult_basis(i, j), x.right_action(j), i);
        }
    }
    for r in s_rows {
        let mut row = r;
        row.extend(vec![Scalar::zero(); m * n]);
        rows.push(row);
    }
    // T is a left-module map; conditions live in the T block.
    let mut t_rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            module_map_rows(&mut t_rows, m, n, alg.mult_basis(i, j), x.left_action(i), j);
        }
    }
    for r in t_rows {
        let mut row = vec![Scalar::zero(); m * n];
        row.extend(r);
        rows.push(row);
    }
    // centralizer identity: e_i.S(e_j) = T(e_i).e_j crosses the blocks
    for i in 0..n {
        for j in 0..n {
            let lam = x.left_action(i);
            let rho = x.right_action(j);
            for r in 0..m {
                let mut row = vec![Scalar::zero(); width];
                for s in 0..m {
                    if !lam[(r, s)].is_zero() {
                        let t = &row[j * m + s] + &lam[(r, s)];
                        row[j * m + s] = t;
                    }
                    if !rho[(r, s)].is_zero() {
                        let t = &row[m * n + i * m + s] - &rho[(r, s)];
                        row[m * n + i * m + s] = t;
                    }
                }
                rows.push(row);
            }
        }
    }

    let space = constraint_matrix(rows, width).kernel();

    // A-actions on raw pair coordinates, restricted to the solution space:
    //   a.(S,T) = (λ_X(a)·S, T·ρ_A(a)),  (S,T).a = (S·λ_A(a), ρ_X(a)·T)
    let id_m = LinMap::identity(m);
    let id_n = LinMap::identity(n);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        let l = block_diag(
            &id_n.kron(x.left_action(i)),
            &alg.right_regular(i).transpose().kron(&id_m),
        );
        let r = block_diag(
            &alg.left_regular(i).transpose().kron(&id_m),
            &id_n.kron(x.right_action(i)),
        );
        left.push(space.restrict_map(&l).ok_or(Error::NotClosed)?);
        right.push(space.restrict_map(&r).ok_or(Error::NotClosed)?);
    }
    let module = Bimodule::new(alg, space.dim(), left, right)?;

    // ι_X: x ↦ (L_x, R_x)
    let mut iota_cols = Vec::with_capacity(m);
    for u in 0..m {
        let pair = iota_pair_raw(x, &basis_vec(m, u));
        let coords = space.coordinates_of(&pair).ok_or(Error::NotClosed)?;
        iota_cols.push(coords);
    }
    let iota = if m == 0 {
        LinMap::zeros(space.dim(), 0)
    } else {
        LinMap::from_cols(iota_cols)
    };

    Ok(CentralizerModule {
        x: x.clone(),
        space,
        module,
        iota,
        b_structure: None,
    })
}

/// Raw pair coordinates of `(L_x, R_x)` where `L_x: a ↦ x.a`, `R_x: a ↦ a.x`.
pub fn iota_pair_raw(x: &Bimodule, v: &[Scalar]) -> Vec<Scalar> {
    let n = x.algebra().dim();
    let s = LinMap::from_cols(
        (0..n)
            .map(|j| x.right_action(j).apply(v))
            .collect::<Vec<_>>(),
    );
    let t = LinMap::from_cols(
        (0..n)
            .map(|j| x.left_action(j).apply(v))
            .collect::<Vec<_>>(),
    );
    let pair = CentralizerPair { s, t };
    pair.flatten()
}

fn block_diag(a: &LinMap, b: &LinMap) -> LinMap {
    LinMap::block_diag(a, b)
}

impl CentralizerModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn underlying(&self) -> &Bimodule {
        &self.x
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// `ΔC(X)` as an `A`-bimodule on its own coordinates.
    pub fn a_module(&self) -> &Bimodule {
        &self.module
    }

    /// `ι_X` in coordinates.
    pub fn iota(&self) -> &LinMap {
        &self.iota
    }

    pub fn b_structure(&self) -> Option<&BStructure> {
        self.b_structure.as_ref()
    }

    /// `ΔC(X)` as a `B`-bimodule; requires an attached envelope.
    pub fn b_module(&self) -> Option<&Bimodule> {
        self.b_structure.as_ref().map(|b| &b.module)
    }

    pub fn decode(&self, coords: &[Scalar]) -> CentralizerPair {
        let raw = self.space.lift(coords);
        CentralizerPair::unflatten(self.x.dim(), self.x.algebra().dim(), &raw)
    }

    pub fn basis_pair(&self, k: usize) -> CentralizerPair {
        CentralizerPair::unflatten(
            self.x.dim(),
            self.x.algebra().dim(),
            &self.space.basis()[k],
        )
    }

    pub fn encode(&self, pair: &CentralizerPair) -> Option<Vec<Scalar>> {
        self.space.coordinates_of(&pair.flatten())
    }

    /// Install the ambient-algebra actions
    /// `b.(L,R) = (b.L(·), R(·b))` and `(L,R).b = (L(b·), R(·).b)`
    /// coming from an envelope, after checking that `x_b` really restricts
    /// to the module `ΔC` was built from.
    pub fn attach_envelope(&self, env: &Envelope, x_b: &Bimodule) -> Result<CentralizerModule> {
        let restricted = x_b.restrict_through(env)?;
        if restricted != self.x {
            return Err(Error::RestrictionMismatch);
        }
        let (n, m) = (env.sub().dim(), self.x.dim());
        let nb = env.amb().dim();
        let id_m = LinMap::identity(m);
        let id_n = LinMap::identity(n);
        let mut left = Vec::with_capacity(nb);
        let mut right = Vec::with_capacity(nb);
        for beta in 0..nb {
            let r_ab = env.right_mult_on_sub(beta)?; // a ↦ a·b on A
            let l_ba = env.left_mult_on_sub(beta)?; // a ↦ b·a on A
            // b.(S,T) = (λ_X^B(b)·S, T·r_ab)
            let l = block_diag(
                &id_n.kron(x_b.left_action(beta)),
                &r_ab.transpose().kron(&id_m),
            );
            // (S,T).b = (S·l_ba, ρ_X^B(b)·T)
            let r = block_diag(
                &l_ba.transpose().kron(&id_m),
                &id_n.kron(x_b.right_action(beta)),
            );
            left.push(self.space.restrict_map(&l).ok_or(Error::NotClosed)?);
            right.push(self.space.restrict_map(&r).ok_or(Error::NotClosed)?);
        }
        let b_module = Bimodule::new(env.amb().clone(), self.dim(), left, right)?;

        // the B-actions must restrict back to the A-actions
        for i in 0..n {
            let col = env.embedding().col(i);
            if b_module.left_of(&col) != *self.module.left_action(i)
                || b_module.right_of(&col) != *self.module.right_action(i)
            {
                return Err(Error::RestrictionMismatch);
            }
        }

        Ok(CentralizerModule {
            x: self.x.clone(),
            space: self.space.clone(),
            module: self.module.clone(),
            iota: self.iota.clone(),
            b_structure: Some(BStructure {
                env: env.clone(),
                x_b: x_b.clone(),
                module: b_module,
            }),
        })
    }

    /// Exhaustive re-check of the defining conditions on every basis pair;
    /// used by the verification driver.
    pub fn verify_membership(&self) -> bool {
        let alg = self.x.algebra();
        let n = alg.dim();
        (0..self.dim()).all(|k| {
            let p = self.basis_pair(k);
            (0..n).all(|i| {
                (0..n).all(|j| {
                    // S(e_i e_j) = S(e_i).e_j
                    let lhs_s = {
                        let mut acc = vec![Scalar::zero(); self.x.dim()];
                        for (kk, c) in alg.mult_basis(i, j).iter().enumerate() {
                            if !c.is_zero() {
                                for (r, val) in p.s.col(kk).iter().enumerate() {
                                    let t = &acc[r] + &(c * val);
                                    acc[r] = t;
                                }
                            }
                        }
                        acc
                    };
                    let rhs_s = self.x.right_action(j).apply(&p.s.col(i));
                    // T(e_i e_j) = e_i.T(e_j)
                    let lhs_t = {
                        let mut acc = vec![Scalar::zero(); self.x.dim()];
                        for (kk, c) in alg.mult_basis(i, j).iter().enumerate() {
                            if !c.is_zero() {
                                for (r, val) in p.t.col(kk).iter().enumerate() {
                                    let t = &acc[r] + &(c * val);
                                    acc[r] = t;
                                }
                            }
                        }
                        acc
                    };
                    let rhs_t = self.x.left_action(i).apply(&p.t.col(j));
                    // e_i.S(e_j) = T(e_i).e_j
                    let cent_l = self.x.left_action(i).apply(&p.s.col(j));
                    let cent_r = self.x.right_action(j).apply(&p.t.col(i));
                    lhs_s == rhs_s && lhs_t == rhs_t && cent_l == cent_r
                })
            })
        })
    }

    /// Exact identities `a.(S,T) = (L_{Ta}, R_{Ta})` and
    /// `(S,T).a = (L_{Sa}, R_{Sa})` on every basis pair.
    pub fn verify_action_identities(&self) -> bool {
        let n = self.x.algebra().dim();
        (0..self.dim()).all(|k| {
            let coords = basis_vec(self.dim(), k);
            let pair = self.basis_pair(k);
            (0..n).all(|i| {
                let acted_l = self.module.left_action(i).apply(&coords);
                let expect_l = self
                    .space
                    .coordinates_of(&iota_pair_raw(&self.x, &pair.t.col(i)));
                let acted_r = self.module.right_action(i).apply(&coords);
                let expect_r = self
                    .space
                    .coordinates_of(&iota_pair_raw(&self.x, &pair.s.col(i)));
                expect_l.as_deref() == Some(&acted_l[..])
                    && expect_r.as_deref() == Some(&acted_r[..])
            })
        })
    }

    /// `A.ΔC(X) + ΔC(X).A ⊆ ι_X(X)`, as subspaces of the coordinate space.
    pub fn verify_absorption_into_iota(&self) -> bool {
        let n = self.x.algebra().dim();
        let image = self.iota.image();
        let full = Subspace::full(self.dim());
        let mut acted = Subspace::zero(self.dim());
        for i in 0..n {
            acted = acted.sum(&full.map_by(self.module.left_action(i)));
            acted = acted.sum(&full.map_by(self.module.right_action(i)));
        }
        image.contains_subspace(&acted)
    }
}

/// The factoring map of the universal property, with its uniqueness record.
#[derive(Clone, Debug)]
pub struct UniversalMap {
    /// `ĵ : X̃ → ΔC(X)` in coordinates.
    pub j_hat: LinMap,
    /// `ι_X = ĵ ∘ j` holds exactly.
    pub factors: bool,
    /// The affine system for all bimodule maps `g` with `g∘j = ι_X` has the
    /// single solution `ĵ`.
    pub unique: bool,
}

/// Given an injective bimodule map `j: X → X̃` whose cokernel is annihilated
/// (`A.X̃ + X̃.A ⊆ j(X)`), produce the unique `ĵ: X̃ → ΔC(X)` with
/// `ι_X = ĵ∘j`. Requires `ann X = 0`.
pub fn universal_map(
    dc: &CentralizerModule,
    j: &LinMap,
    x_tilde: &Bimodule,
) -> Result<UniversalMap> {
    let x = dc.underlying();
    let alg = x.algebra();
    let n = alg.dim();
    let (m, mt) = (x.dim(), x_tilde.dim());
    if !x.ann().is_zero() {
        return Err(Error::AnnihilatorNonzero);
    }
    if j.rows() != mt || j.cols() != m {
        return Err(Error::Shape(format!("j must be {mt}x{m}")));
    }
    if j.rank() != m {
        return Err(Error::NotInjective);
    }
    for i in 0..n {
        if x_tilde.left_action(i) * j != j * x.left_action(i)
            || x_tilde.right_action(i) * j != j * x.right_action(i)
        {
            return Err(Error::Shape("j is not a bimodule map".into()));
        }
    }
    // absorption (*): actions of A on X̃ land in j(X)
    let jimage = j.image();
    for i in 0..n {
        if !jimage.contains_subspace(&x_tilde.left_action(i).image()) {
            return Err(Error::AbsorptionFails {
                side: Side::Left,
                index: i,
            });
        }
        if !jimage.contains_subspace(&x_tilde.right_action(i).image()) {
            return Err(Error::AbsorptionFails {
                side: Side::Right,
                index: i,
            });
        }
    }

    // ĵ(x̃) = (j⁻¹∘L_x̃, j⁻¹∘R_x̃)
    let mut cols = Vec::with_capacity(mt);
    for w in 0..mt {
        let ew = basis_vec(mt, w);
        let mut s = LinMap::zeros(m, n);
        let mut t = LinMap::zeros(m, n);
        for i in 0..n {
            let l = x_tilde.right_action(i).apply(&ew); // x̃.e_i
            let r = x_tilde.left_action(i).apply(&ew); // e_i.x̃
            s.set_col(i, &j.solve_affine(&l).ok_or(Error::NotClosed)?.particular);
            t.set_col(i, &j.solve_affine(&r).ok_or(Error::NotClosed)?.particular);
        }
        let pair = CentralizerPair { s, t };
        cols.push(dc.encode(&pair).ok_or(Error::NotClosed)?);
    }
    let j_hat = if mt == 0 {
        LinMap::zeros(dc.dim(), 0)
    } else {
        LinMap::from_cols(cols)
    };

    let factors = &j_hat * j == *dc.iota();

    // uniqueness by solving for all bimodule homomorphisms g: X̃ → ΔC(X)
    // with g∘j = ι_X, in vectorized unknowns (column-major, d·mt entries)
    let d = dc.dim();
    let id_d = LinMap::identity(d);
    let id_mt = LinMap::identity(mt);
    let mut system = j.transpose().kron(&id_d); // (G·j) flattened
    let mut target = vec_of_map(dc.iota());
    for i in 0..n {
        let comm_l = x_tilde
            .left_action(i)
            .transpose()
            .kron(&id_d)
            .sub(&id_mt.kron(dc.a_module().left_action(i)));
        let comm_r = x_tilde
            .right_action(i)
            .transpose()
            .kron(&id_d)
            .sub(&id_mt.kron(dc.a_module().right_action(i)));
        system = system.vstack(&comm_l).vstack(&comm_r);
        target.extend(vec![Scalar::zero(); 2 * d * mt]);
    }
    let unique = match system.solve_affine(&target) {
        None => false,
        Some(sol) => sol.is_unique() && sol.particular == vec_of_map(&j_hat),
    };

    Ok(UniversalMap {
        j_hat,
        factors,
        unique,
    })
}
