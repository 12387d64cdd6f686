//! Spaces of one-sided module maps `A → X`, materialized as subspaces of
//! matrix coordinates so that they can carry bimodule structure and be fed to
//! further constructions. Also the hom-tensor duality pairing
//! `(A ⊗_A X)* ≅ h_A(A, X*)` and its mirror, checked instance by instance.

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{map_of_vec, vec_of_map, LinMap, Scalar, Subspace};
use crate::tensor::{balanced_tensor, BalancedTensor};

/// A space of linear maps `A → X` cut out by linear conditions, as a based
/// bimodule. Map matrices are `dim X × dim A`, flattened column-major.
#[derive(Clone, Debug)]
pub struct HomModule {
    /// Solution subspace inside the flat coordinate space.
    pub space: Subspace,
    /// The same space as an abstract bimodule on its basis coordinates.
    pub module: Bimodule,
    pub map_rows: usize,
    pub map_cols: usize,
}

impl HomModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The map matrix of the `k`-th basis element.
    pub fn basis_map(&self, k: usize) -> LinMap {
        map_of_vec(self.map_rows, self.map_cols, &self.space.basis()[k])
    }

    pub fn decode(&self, coords: &[Scalar]) -> LinMap {
        map_of_vec(self.map_rows, self.map_cols, &self.space.lift(coords))
    }

    pub fn encode(&self, map: &LinMap) -> Option<Vec<Scalar>> {
        self.space.coordinates_of(&vec_of_map(map))
    }
}

pub(crate) fn constraint_matrix(rows: Vec<Vec<Scalar>>, width: usize) -> LinMap {
    if rows.is_empty() {
        LinMap::zeros(0, width)
    } else {
        LinMap::from_rows(rows)
    }
}

/// Append the flat-coordinate rows of the condition
/// `Σ_k coeffs[k]·M(:,k) − action·M(:,j0) = 0` on an `m × n` unknown matrix.
pub(crate) fn module_map_rows(
    rows: &mut Vec<Vec<Scalar>>,
    m: usize,
    n: usize,
    coeffs: &[Scalar],
    action: &LinMap,
    j0: usize,
) {
    for r in 0..m {
        let mut row = vec![Scalar::zero(); m * n];
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let t = &row[k * m + r] + c;
                row[k * m + r] = t;
            }
        }
        for s in 0..m {
            let a = &action[(r, s)];
            if !a.is_zero() {
                let t = &row[j0 * m + s] - a;
                row[j0 * m + s] = t;
            }
        }
        rows.push(row);
    }
}

/// `h_A(A, X)`: right-module maps `S(αa) = S(α).a`, a bimodule under
/// `a.S = a.S(·)` and `S.a = S(a·)`.
pub fn hom_right(x: &Bimodule) -> Result<HomModule> {
    let alg = x.algebra().clone();
    let (n, m) = (alg.dim(), x.dim());
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // S(e_i·e_j) = S(e_i).e_j
            module_map_rows(&mut rows, m, n, alg.mult_basis(i, j), x.right_action(j), i);
        }
    }
    let space = constraint_matrix(rows, m * n).kernel();
    let id_m = LinMap::identity(m);
    let id_n = LinMap::identity(n);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        // a.S = λ_X(a)·S  ⇒ flat I_n ⊗ λ_X(a)
        let flat_l = id_n.kron(x.left_action(i));
        // S.a = S·λ_A(a)  ⇒ flat λ_A(a)ᵀ ⊗ I_m
        let flat_r = alg.left_regular(i).transpose().kron(&id_m);
        left.push(space.restrict_map(&flat_l).ok_or(Error::NotClosed)?);
        right.push(space.restrict_map(&flat_r).ok_or(Error::NotClosed)?);
    }
    let module = Bimodule::new(alg, space.dim(), left, right)?;
    Ok(HomModule {
        space,
        module,
        map_rows: m,
        map_cols: n,
    })
}

/// `_Ah(A, X)`: left-module maps `T(aα) = a.T(α)`, a bimodule under
/// `a.T = T(·a)` and `T.a = T(·).a`.
pub fn hom_left(x: &Bimodule) -> Result<HomModule> {
    let alg = x.algebra().clone();
    let (n, m) = (alg.dim(), x.dim());
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // T(e_i·e_j) = e_i.T(e_j)
            module_map_rows(&mut rows, m, n, alg.mult_basis(i, j), x.left_action(i), j);
        }
    }
    let space = constraint_matrix(rows, m * n).kernel();
    let id_m = LinMap::identity(m);
    let id_n = LinMap::identity(n);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        // a.T = T·ρ_A(a)  ⇒ flat ρ_A(a)ᵀ ⊗ I_m
        let flat_l = alg.right_regular(i).transpose().kron(&id_m);
        // T.a = ρ_X(a)·T  ⇒ flat I_n ⊗ ρ_X(a)
        let flat_r = id_n.kron(x.right_action(i));
        left.push(space.restrict_map(&flat_l).ok_or(Error::NotClosed)?);
        right.push(space.restrict_map(&flat_r).ok_or(Error::NotClosed)?);
    }
    let module = Bimodule::new(alg, space.dim(), left, right)?;
    Ok(HomModule {
        space,
        module,
        map_rows: m,
        map_cols: n,
    })
}

/// The pairing matrix `θ: H → T*` for a tensor factor, where `H` is a hom
/// module over `X*` and `T` a balanced tensor with section `σ`:
/// `θ(S)_t = Σ_raw σ(e_t)[raw] · S[u][i]` with `raw ↦ (i,u)` chosen by
/// `raw_entry`.
fn pairing_matrix(
    hom: &HomModule,
    tensor_dim: usize,
    section: &LinMap,
    raw_entry: impl Fn(&LinMap, usize) -> Scalar,
) -> LinMap {
    LinMap::from_fn(tensor_dim, hom.dim(), |t, s| {
        let smat = hom.basis_map(s);
        let mut acc = Scalar::zero();
        for raw in 0..section.rows() {
            let c = &section[(raw, t)];
            if !c.is_zero() {
                acc += c * &raw_entry(&smat, raw);
            }
        }
        acc
    })
}

/// Outcome of the duality check for one side.
pub struct DualityPairing {
    pub tensor: BalancedTensor,
    pub hom: HomModule,
    /// `θ: hom → tensor*` in coordinates.
    pub theta: LinMap,
    pub is_isomorphism: bool,
}

/// Check `(A ⊗_A X)* ≅ h_A(A, X*)` through `⟨a⊗x, Φ⟩ = ⟨x, S(a)⟩`.
pub fn duality_left_tensor(x: &Bimodule) -> Result<DualityPairing> {
    let alg = x.algebra().clone();
    let reg = Bimodule::regular(&alg);
    let tensor = balanced_tensor(&reg, x)?; // A ⊗_A X, raw (i,u) = i·m + u
    let hom = hom_right(&x.dual())?;
    let m = x.dim();
    let theta = pairing_matrix(&hom, tensor.dim(), &tensor.quotient.section, |smat, raw| {
        let (i, u) = (raw / m, raw % m);
        smat[(u, i)].clone()
    });
    let is_isomorphism = check_intertwining(&tensor, &hom, &theta);
    Ok(DualityPairing {
        tensor,
        hom,
        theta,
        is_isomorphism,
    })
}

/// Check the mirror `(X ⊗_A A)* ≅ _Ah(A, X*)` through `⟨x⊗a, Ψ⟩ = ⟨x, T(a)⟩`.
pub fn duality_right_tensor(x: &Bimodule) -> Result<DualityPairing> {
    let alg = x.algebra().clone();
    let reg = Bimodule::regular(&alg);
    let tensor = balanced_tensor(x, &reg)?; // X ⊗_A A, raw (u,j) = u·n + j
    let hom = hom_left(&x.dual())?;
    let n = alg.dim();
    let theta = pairing_matrix(&hom, tensor.dim(), &tensor.quotient.section, |tmat, raw| {
        let (u, j) = (raw / n, raw % n);
        tmat[(u, j)].clone()
    });
    let is_isomorphism = check_intertwining(&tensor, &hom, &theta);
    Ok(DualityPairing {
        tensor,
        hom,
        theta,
        is_isomorphism,
    })
}

fn check_intertwining(tensor: &BalancedTensor, hom: &HomModule, theta: &LinMap) -> bool {
    if hom.dim() != tensor.dim() || theta.rank() != tensor.dim() {
        return false;
    }
    let dual = tensor.module.dual();
    let n = dual.algebra().dim();
    (0..n).all(|i| {
        theta * hom.module.left_action(i) == dual.left_action(i) * theta
            && theta * hom.module.right_action(i) == dual.right_action(i) * theta
    })
}

/// Both hom-tensor duality identities at once.
pub fn hom_tensor_duality_check(x: &Bimodule) -> Result<bool> {
    Ok(duality_left_tensor(x)?.is_isomorphism && duality_right_tensor(x)?.is_isomorphism)
}
