use std::collections::BTreeMap;

use num_traits::Zero;

use crate::connections::{unipotent_inverse, InvariantConnection, LaurentMatrix, LoopAlgebra};
use crate::scalar_series::{LaurentSeries, Rational};

use super::linalg::{identity, is_zero, mat_mul, mat_sub, rank, zeros, RatMatrix};
use super::space::GradedSpace;
use super::BundleError;

/// A flat equisingular bundle stored by its graded space and the matrices
/// `β_n : E_m → E_{m+n}`, `n ≥ 1`, of a graded Lie algebra representation.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleObject {
    space: GradedSpace,
    beta: BTreeMap<u32, RatMatrix>,
}

fn check_shape(m: &RatMatrix, rows: usize, cols: usize) -> Result<(), BundleError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(BundleError::Shape { rows, cols });
    }
    Ok(())
}

/// Builds an object from a graded space and matrices on it.
pub fn object_from_rep(
    space: GradedSpace,
    beta: impl IntoIterator<Item = (u32, RatMatrix)>,
) -> Result<BundleObject, BundleError> {
    let dim = space.total_dim();
    let degs = space.basis_degrees();
    let mut out = BTreeMap::new();
    for (n, m) in beta {
        check_shape(&m, dim, dim)?;
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() && (n == 0 || degs[i] != degs[j] + n as i32) {
                    return Err(BundleError::NotFiltrationCompatible { n, row: i, col: j });
                }
            }
        }
        if is_zero(&m) {
            continue;
        }
        let slot = out.entry(n).or_insert_with(|| zeros(dim, dim));
        *slot = slot.iter().zip(&m).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
    }
    Ok(BundleObject { space, beta: out })
}

/// `Q(n)`: one dimension in degree `n` with the trivial connection.
pub fn qn_object(n: i32) -> BundleObject {
    BundleObject { space: GradedSpace::new([(n, 1)]), beta: BTreeMap::new() }
}

impl BundleObject {
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn beta(&self) -> &BTreeMap<u32, RatMatrix> {
        &self.beta
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn beta_matrix(&self, n: u32) -> RatMatrix {
        self.beta.get(&n).cloned().unwrap_or_else(|| zeros(self.dim(), self.dim()))
    }

    /// `Σ_n β_n` as a graded matrix.
    pub fn beta_total(&self) -> LaurentMatrix {
        let degs = self.space.basis_degrees();
        self.beta.values().fold(LaurentMatrix::zero(degs.clone()), |acc, m| {
            acc.add(&LaurentMatrix::from_rational(degs.clone(), m).expect("β raises degree"))
        })
    }

    /// The matrix connection of the class `β`.
    pub fn connection(&self) -> InvariantConnection<LaurentMatrix> {
        InvariantConnection::from_beta(&self.beta_total())
    }

    /// Reads the matrices `β_n` back from a graded matrix with constant entries.
    pub fn from_beta_matrix(space: GradedSpace, beta: &LaurentMatrix) -> Result<BundleObject, BundleError> {
        let dim = space.total_dim();
        let mut parts: BTreeMap<u32, RatMatrix> = BTreeMap::new();
        let degs = space.basis_degrees();
        for i in 0..dim {
            for j in 0..dim {
                let c = beta.entry(i, j);
                if c.is_zero() {
                    continue;
                }
                let r = Some(c)
                    .filter(|c| c.is_exact() && c.terms().all(|(k, _)| k == 0))
                    .and_then(|c| c.constant_term().as_rational())
                    .ok_or_else(|| BundleError::NotConstant(c.to_string()))?;
                let n = degs[i] - degs[j];
                if n <= 0 {
                    return Err(BundleError::NotFiltrationCompatible { n: 0, row: i, col: j });
                }
                parts.entry(n as u32).or_insert_with(|| zeros(dim, dim))[i][j] = r;
            }
        }
        object_from_rep(space, parts)
    }

    pub fn direct_sum(&self, other: &BundleObject) -> BundleObject {
        let space = self.space.direct_sum(&other.space);
        let (p, q) = embeddings(&self.space, &other.space, &space);
        let dim = space.total_dim();
        let mut beta = BTreeMap::new();
        for n in self.beta.keys().chain(other.beta.keys()) {
            let mut m = zeros(dim, dim);
            for (src, emb) in [(self, &p), (other, &q)] {
                let b = src.beta_matrix(*n);
                for (i, row) in b.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        m[emb[i]][emb[j]] = c.clone();
                    }
                }
            }
            beta.insert(*n, m);
        }
        BundleObject { space, beta }
    }
}

/// Basis positions of the two summands inside the direct sum, which keeps
/// the first summand's vectors ahead of the second's within each degree.
fn embeddings(a: &GradedSpace, b: &GradedSpace, sum: &GradedSpace) -> (Vec<usize>, Vec<usize>) {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (&n, &d) in a.dims() {
        p.extend((0..d).map(|i| sum.offset(n) + i));
    }
    for (&n, &d) in b.dims() {
        q.extend((0..d).map(|i| sum.offset(n) + a.dim(n) + i));
    }
    (p, q)
}

/// A degree-preserving linear map `T : E → E′`, as a `dim E′ × dim E` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub matrix: RatMatrix,
}

impl Morphism {
    pub fn zero(source: &BundleObject, target: &BundleObject) -> Self {
        Morphism { matrix: zeros(target.dim(), source.dim()) }
    }

    pub fn identity(object: &BundleObject) -> Self {
        Morphism { matrix: identity(object.dim()) }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism { matrix: mat_mul(&self.matrix, &first.matrix) }
    }

    /// Fails unless the shape matches and `T` maps `E_n` into `E′_n`.
    pub fn check_degrees(&self, source: &GradedSpace, target: &GradedSpace) -> Result<(), BundleError> {
        check_shape(&self.matrix, target.total_dim(), source.total_dim())?;
        let (ds, dt) = (source.basis_degrees(), target.basis_degrees());
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() && dt[i] != ds[j] {
                    return Err(BundleError::NotDegreeCompatible { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// The block `E_n → E′_n`.
    pub fn block(&self, source: &GradedSpace, target: &GradedSpace, n: i32) -> RatMatrix {
        let (r0, c0) = (target.offset(n), source.offset(n));
        (0..target.dim(n)).map(|i| (0..source.dim(n)).map(|j| self.matrix[r0 + i][c0 + j].clone()).collect()).collect()
    }
}

/// Block matrix on `E′ ⊕ E` (target first) with the given blocks.
fn block_matrix(
    target_degs: &[i32],
    source_degs: &[i32],
    tt: &LaurentMatrix,
    ss: &LaurentMatrix,
    off: &[Vec<LaurentSeries>],
) -> LaurentMatrix {
    let n1 = target_degs.len();
    let degs: Vec<i32> = target_degs.iter().chain(source_degs).copied().collect();
    let mut out = LaurentMatrix::zero(degs.clone());
    for i in 0..degs.len() {
        for j in 0..degs.len() {
            let v = match (i < n1, j < n1) {
                (true, true) => tt.entry(i, j).clone(),
                (false, false) => ss.entry(i - n1, j - n1).clone(),
                (true, false) => off[i][j - n1].clone(),
                (false, true) => LaurentSeries::zero(),
            };
            out.set(i, j, v);
        }
    }
    out
}

/// `T x − x′ T` for matrices `x` on `E` and `x′` on `E′`.
fn twisted(t: &RatMatrix, x: &LaurentMatrix, x_prime: &LaurentMatrix) -> Vec<Vec<LaurentSeries>> {
    let (rows, cols) = (x_prime.dim(), x.dim());
    let mut out = vec![vec![LaurentSeries::zero(); cols]; rows];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = LaurentSeries::zero();
            for k in 0..cols {
                if !t[i][k].is_zero() {
                    acc = &acc + &x.entry(k, j).scale(&t[i][k]);
                }
            }
            for k in 0..rows {
                if !t[k][j].is_zero() {
                    acc = &acc - &x_prime.entry(i, k).scale(&t[k][j]);
                }
            }
            *cell = acc;
        }
    }
    out
}

/// The two connections on `E′ ⊕ E`: `∇₁` with off-diagonal block
/// `T∇ − ∇′T`, and the block-diagonal `∇₂`.
pub fn morphism_connections(
    nabla: &InvariantConnection<LaurentMatrix>,
    nabla_prime: &InvariantConnection<LaurentMatrix>,
    t: &Morphism,
) -> (InvariantConnection<LaurentMatrix>, InvariantConnection<LaurentMatrix>) {
    let (ds, dt) = (nabla.a.degs().to_vec(), nabla_prime.a.degs().to_vec());
    let zero_off = vec![vec![LaurentSeries::zero(); ds.len()]; dt.len()];
    let build = |x: &LaurentMatrix, xp: &LaurentMatrix, twist: bool| {
        let off = if twist { twisted(&t.matrix, x, xp) } else { zero_off.clone() };
        block_matrix(&dt, &ds, xp, x, &off)
    };
    let first = InvariantConnection::new(build(&nabla.a, &nabla_prime.a, true), build(&nabla.b, &nabla_prime.b, true));
    let second =
        InvariantConnection::new(build(&nabla.a, &nabla_prime.a, false), build(&nabla.b, &nabla_prime.b, false));
    (first, second)
}

/// Decides `∇₁ ∼ ∇₂` for arbitrary representatives of the two objects. The
/// candidate automorphism is `h = γ₁⁻¹γ₂` built from the equivariant
/// solutions; it is unipotent, and the connections are W-equivalent iff it
/// is regular.
pub fn morphism_check_connections(
    nabla: &InvariantConnection<LaurentMatrix>,
    nabla_prime: &InvariantConnection<LaurentMatrix>,
    source: &GradedSpace,
    target: &GradedSpace,
    t: &Morphism,
) -> Result<bool, BundleError> {
    t.check_degrees(source, target)?;
    let (first, second) = morphism_connections(nabla, nabla_prime, t);
    let g1 = first.canonical_solution();
    let g2 = second.canonical_solution();
    let h = unipotent_inverse(&g1).mul(&g2);
    if !crate::connections::is_regular(&h) {
        return Ok(false);
    }
    if !first.gauge_act(&h).agrees(&second) {
        return Err(BundleError::Internal("regular gauge does not conjugate the block connections".into()));
    }
    Ok(true)
}

/// Whether `T` is a morphism `Θ → Θ′`, deciding Eq. `∇₁ ∼ ∇₂` on the
/// connections built from the `β` data.
pub fn morphism_check(source: &BundleObject, target: &BundleObject, t: &Morphism) -> Result<bool, BundleError> {
    morphism_check_connections(&source.connection(), &target.connection(), &source.space, &target.space, t)
}

/// `T β_n = β′_n T` for every `n`.
pub fn intertwines(source: &BundleObject, target: &BundleObject, t: &Morphism) -> bool {
    source
        .beta
        .keys()
        .chain(target.beta.keys())
        .all(|&n| is_zero(&mat_sub(&mat_mul(&t.matrix, &source.beta_matrix(n)), &mat_mul(&target.beta_matrix(n), &t.matrix))))
}

/// `dim Hom(Θ, Θ′)`: degree-preserving `T` with `T β_n = β′_n T`, solved by
/// Gaussian elimination.
pub fn hom_dimension(source: &BundleObject, target: &BundleObject) -> usize {
    let (ds, dt) = (source.space.basis_degrees(), target.space.basis_degrees());
    let unknowns: Vec<(usize, usize)> =
        (0..dt.len()).flat_map(|i| (0..ds.len()).map(move |j| (i, j))).filter(|&(i, j)| dt[i] == ds[j]).collect();
    let col: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut rows: RatMatrix = Vec::new();
    let keys: Vec<u32> = source.beta.keys().chain(target.beta.keys()).copied().collect();
    for n in keys {
        let (b, bp) = (source.beta_matrix(n), target.beta_matrix(n));
        for k in 0..dt.len() {
            for l in 0..ds.len() {
                let mut row = vec![Rational::zero(); unknowns.len()];
                for j in 0..ds.len() {
                    if let Some(&c) = col.get(&(k, j)) {
                        row[c] += &b[j][l];
                    }
                }
                for i in 0..dt.len() {
                    if let Some(&c) = col.get(&(i, l)) {
                        row[c] -= &bp[k][i];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns.len() - rank(rows)
}

/// `ω(Θ) = ⊕ ω_n(Θ)` with `ω_n(Θ) = Hom(Q(n), Gr^W_{−n}Θ)`: the graded pieces.
pub fn fiber_functor(object: &BundleObject) -> BTreeMap<i32, usize> {
    object.space.dims().clone()
}

/// The maps `ω_n(T) : E_n → E′_n`.
pub fn fiber_map(source: &BundleObject, target: &BundleObject, t: &Morphism) -> BTreeMap<i32, RatMatrix> {
    source.space.dims().keys().map(|&n| (n, t.block(&source.space, &target.space, n))).collect()
}
