//! Finite-dimensional associative algebras presented by structure constants,
//! and envelopes: ideal embeddings into larger algebras.

use std::sync::Arc;

use crate::error::{Error, Result, Side};
use crate::linalg::{LinMap, Scalar, Subspace};

/// An associative algebra of finite dimension over the rationals, given by
/// structure constants: `e_i · e_j = Σ_k mult[i][j][k] e_k`.
///
/// Associativity is checked exhaustively at construction; everything
/// downstream may assume it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    name: String,
    basis: Vec<String>,
    mult: Vec<Vec<Vec<Scalar>>>,
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let dim = basis.len();
        if mult.len() != dim
            || mult
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Shape(format!(
                "structure constants must be {dim}x{dim}x{dim}"
            )));
        }
        let alg = Algebra {
            name: name.into(),
            basis,
            mult,
        };
        alg.check_associativity()?;
        Ok(alg)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mult_basis(i, j).to_vec();
                for k in 0..n {
                    let jk = self.mult_basis(j, k);
                    // (e_i e_j) e_k vs e_i (e_j e_k)
                    let mut lhs = vec![Scalar::zero(); n];
                    for (m, c) in ij.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for l in 0..n {
                            let t = &lhs[l] + &(c * &self.mult[m][k][l]);
                            lhs[l] = t;
                        }
                    }
                    let mut rhs = vec![Scalar::zero(); n];
                    for (m, c) in jk.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for l in 0..n {
                            let t = &rhs[l] + &(c * &self.mult[i][m][l]);
                            rhs[l] = t;
                        }
                    }
                    if let Some(l) = (0..n).find(|&l| lhs[l] != rhs[l]) {
                        return Err(Error::NotAssociative { i, j, k, l });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.mult
    }

    /// Coefficient vector of `e_i · e_j`.
    pub fn mult_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    /// Product of arbitrary elements in basis coordinates.
    pub fn mult_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        assert_eq!(u.len(), n);
        assert_eq!(v.len(), n);
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..n {
                    let c = &self.mult[i][j][k];
                    if !c.is_zero() {
                        let t = &out[k] + &(&uv * c);
                        out[k] = t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i · x`.
    pub fn left_regular(&self, i: usize) -> LinMap {
        let n = self.dim();
        LinMap::from_fn(n, n, |k, j| self.mult[i][j][k].clone())
    }

    /// Matrix of `x ↦ x · e_i`.
    pub fn right_regular(&self, i: usize) -> LinMap {
        let n = self.dim();
        LinMap::from_fn(n, n, |k, j| self.mult[j][i][k].clone())
    }

    /// Matrix of `x ↦ a · x` for an arbitrary element.
    pub fn left_mult(&self, a: &[Scalar]) -> LinMap {
        let n = self.dim();
        let mut m = LinMap::zeros(n, n);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left_regular(i).scale(c));
            }
        }
        m
    }

    /// Matrix of `x ↦ x · a` for an arbitrary element.
    pub fn right_mult(&self, a: &[Scalar]) -> LinMap {
        let n = self.dim();
        let mut m = LinMap::zeros(n, n);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.right_regular(i).scale(c));
            }
        }
        m
    }

    /// Span of all products `e_i · e_j`.
    pub fn square_span(&self) -> Subspace {
        let n = self.dim();
        let mut vs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                vs.push(self.mult_basis(i, j).to_vec());
            }
        }
        Subspace::span(n, vs)
    }

    /// The two-sided identity element, when one exists.
    pub fn unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        if n == 0 {
            return None;
        }
        // u with u·e_j = e_j and e_j·u = e_j for all j: linear in u.
        let mut rows = Vec::new();
        let mut target = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.mult[i][j][k].clone()).collect());
                target.push(if j == k { Scalar::one() } else { Scalar::zero() });
                rows.push((0..n).map(|i| self.mult[j][i][k].clone()).collect());
                target.push(if j == k { Scalar::one() } else { Scalar::zero() });
            }
        }
        LinMap::from_rows(rows)
            .solve_affine(&target)
            .map(|s| s.particular)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mult_basis(i, j) == self.mult_basis(j, i)))
    }

    // ---- stock algebras -------------------------------------------------

    /// The ground field as a one-dimensional algebra.
    pub fn field() -> Arc<Self> {
        Arc::new(
            Algebra::new(
                "k",
                vec!["1".into()],
                vec![vec![vec![Scalar::one()]]],
            )
            .expect("field is associative"),
        )
    }

    /// Zero multiplication on `dim` generators.
    pub fn null(name: impl Into<String>, dim: usize) -> Arc<Self> {
        let basis = (0..dim).map(|i| format!("n{}", i + 1)).collect();
        let mult = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        Arc::new(Algebra::new(name, basis, mult).expect("zero multiplication is associative"))
    }

    /// Full matrix algebra on `n×n` matrix units.
    pub fn matrix(n: usize) -> Arc<Self> {
        let dim = n * n;
        let idx = |p: usize, q: usize| p * n + q;
        let basis = (0..n)
            .flat_map(|p| (0..n).map(move |q| format!("e{}{}", p + 1, q + 1)))
            .collect();
        let mut mult = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        if q == r {
                            mult[idx(p, q)][idx(r, s)][idx(p, s)] = Scalar::one();
                        }
                    }
                }
            }
        }
        Arc::new(Algebra::new(format!("m{n}"), basis, mult).expect("matrix units associate"))
    }

    /// Upper-triangular `n×n` matrices.
    pub fn upper_triangular(n: usize) -> Arc<Self> {
        Arc::new(Self::triangular(format!("t{n}"), n, false))
    }

    /// Strictly upper-triangular `n×n` matrices.
    pub fn strictly_upper_triangular(n: usize) -> Arc<Self> {
        Arc::new(Self::triangular(format!("n{n}"), n, true))
    }

    fn triangular(name: String, n: usize, strict: bool) -> Self {
        let mut units = Vec::new();
        for p in 0..n {
            for q in p..n {
                if strict && p == q {
                    continue;
                }
                units.push((p, q));
            }
        }
        let dim = units.len();
        let basis = units
            .iter()
            .map(|&(p, q)| format!("e{}{}", p + 1, q + 1))
            .collect();
        let mut mult = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (a, &(p, q)) in units.iter().enumerate() {
            for (b, &(r, s)) in units.iter().enumerate() {
                if q == r {
                    if let Some(c) = units.iter().position(|&(x, y)| (x, y) == (p, s)) {
                        mult[a][b][c] = Scalar::one();
                    }
                }
            }
        }
        Algebra::new(name, basis, mult).expect("matrix units associate")
    }

    /// Direct sum with componentwise multiplication.
    pub fn direct_sum(name: impl Into<String>, a: &Algebra, b: &Algebra) -> Arc<Self> {
        let (na, nb) = (a.dim(), b.dim());
        let dim = na + nb;
        let mut basis: Vec<String> = a.basis.iter().map(|s| format!("{s}-l")).collect();
        basis.extend(b.basis.iter().map(|s| format!("{s}-r")));
        let mut mult = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..na {
            for j in 0..na {
                for k in 0..na {
                    mult[i][j][k] = a.mult[i][j][k].clone();
                }
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    mult[na + i][na + j][na + k] = b.mult[i][j][k].clone();
                }
            }
        }
        Arc::new(Algebra::new(name, basis, mult).expect("direct sum of associative algebras"))
    }
}

/// An algebra `A` realized as a two-sided ideal of an ambient algebra `B`
/// through an injective multiplicative embedding.
#[derive(Clone, Debug)]
pub struct Envelope {
    sub: Arc<Algebra>,
    amb: Arc<Algebra>,
    /// `amb.dim() × sub.dim()` matrix of the embedding.
    embedding: LinMap,
}

impl Envelope {
    pub fn new(sub: Arc<Algebra>, amb: Arc<Algebra>, embedding: LinMap) -> Result<Self> {
        if embedding.rows() != amb.dim() || embedding.cols() != sub.dim() {
            return Err(Error::Shape(format!(
                "embedding must be {}x{}",
                amb.dim(),
                sub.dim()
            )));
        }
        if embedding.rank() != sub.dim() {
            return Err(Error::NotInjective);
        }
        let env = Envelope {
            sub,
            amb,
            embedding,
        };
        env.check_multiplicative()?;
        env.check_ideal()?;
        Ok(env)
    }

    fn check_multiplicative(&self) -> Result<()> {
        let n = self.sub.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.embedding.apply(self.sub.mult_basis(i, j));
                let rhs = self
                    .amb
                    .mult_vec(&self.embedding.col(i), &self.embedding.col(j));
                if lhs != rhs {
                    return Err(Error::NotMultiplicative { i, j });
                }
            }
        }
        Ok(())
    }

    fn check_ideal(&self) -> Result<()> {
        let image = self.embedding.image();
        for b in 0..self.amb.dim() {
            let eb: Vec<Scalar> = (0..self.amb.dim())
                .map(|k| {
                    if k == b {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect();
            for a in 0..self.sub.dim() {
                let ia = self.embedding.col(a);
                if !image.contains(&self.amb.mult_vec(&eb, &ia)) {
                    return Err(Error::NotIdeal {
                        side: Side::Left,
                        b_index: b,
                        a_index: a,
                    });
                }
                if !image.contains(&self.amb.mult_vec(&ia, &eb)) {
                    return Err(Error::NotIdeal {
                        side: Side::Right,
                        b_index: b,
                        a_index: a,
                    });
                }
            }
        }
        Ok(())
    }

    /// The trivial envelope `A ⊆ A`.
    pub fn identity(alg: Arc<Algebra>) -> Self {
        let n = alg.dim();
        Envelope::new(alg.clone(), alg, LinMap::identity(n)).expect("identity envelope is valid")
    }

    /// Adjoin a unit: `A ⊆ A ⊕ k·1` with `1` acting as two-sided identity.
    pub fn unitization(alg: Arc<Algebra>) -> Self {
        let n = alg.dim();
        let dim = n + 1;
        let mut basis: Vec<String> = alg.basis.clone();
        basis.push("1".into());
        let mut mult = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult[i][j][k] = alg.mult[i][j][k].clone();
                }
            }
        }
        for i in 0..dim {
            mult[i][n][i] = Scalar::one();
            mult[n][i][i] = Scalar::one();
        }
        let amb = Arc::new(
            Algebra::new(format!("{}u", alg.name()), basis, mult)
                .expect("unitization is associative"),
        );
        let mut embedding = LinMap::zeros(dim, n);
        for i in 0..n {
            embedding[(i, i)] = Scalar::one();
        }
        Envelope::new(alg, amb, embedding).expect("unitization embeds as an ideal")
    }

    pub fn sub(&self) -> &Arc<Algebra> {
        &self.sub
    }

    pub fn amb(&self) -> &Arc<Algebra> {
        &self.amb
    }

    pub fn embedding(&self) -> &LinMap {
        &self.embedding
    }

    pub fn is_identity(&self) -> bool {
        self.sub.dim() == self.amb.dim() && *self.embedding() == LinMap::identity(self.sub.dim())
    }

    /// Coordinates in `A` of an ambient element lying in the embedded image.
    pub fn pull_back(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.embedding
            .solve_affine(v)
            .map(|s| s.particular)
            .ok_or(Error::NotClosed)
    }

    /// Matrix on `A` of `a ↦ ι⁻¹(b · ι(a))` for the ambient basis element `β`.
    pub fn left_mult_on_sub(&self, beta: usize) -> Result<LinMap> {
        let n = self.sub.dim();
        let eb = basis_vec(self.amb.dim(), beta);
        let mut m = LinMap::zeros(n, n);
        for a in 0..n {
            let prod = self.amb.mult_vec(&eb, &self.embedding.col(a));
            m.set_col(a, &self.pull_back(&prod)?);
        }
        Ok(m)
    }

    /// Matrix on `A` of `a ↦ ι⁻¹(ι(a) · b)` for the ambient basis element `β`.
    pub fn right_mult_on_sub(&self, beta: usize) -> Result<LinMap> {
        let n = self.sub.dim();
        let eb = basis_vec(self.amb.dim(), beta);
        let mut m = LinMap::zeros(n, n);
        for a in 0..n {
            let prod = self.amb.mult_vec(&self.embedding.col(a), &eb);
            m.set_col(a, &self.pull_back(&prod)?);
        }
        Ok(m)
    }
}

/// Standard basis vector.
pub fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}
