//! Exact spectral oracle: walk matrix, Laplacian, their spectra, and the
//! small matrix facts the analysis of the tester leans on.
//!
//! Everything here is offline (no oracle charges) and dense, so it refuses
//! graphs above [`DENSE_GUARD`](crate::linalg::DENSE_GUARD) vertices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::linalg::{decompose_with, eigenvalues, EigenMethod, SymMatrix, DENSE_GUARD};
use crate::scalar::{dot, norm_sq, Scalar};
use crate::walks::{center, exact_distribution};

fn dense_guard(g: &Graph) -> Result<()> {
    if g.n() > DENSE_GUARD {
        return Err(Error::GuardExceeded { what: "dense spectral oracle", limit: DENSE_GUARD, got: g.n() });
    }
    Ok(())
}

/// Lazy walk matrix `M`: `A_uv / (2d)` off the diagonal, `1 - deg(v)/(2d)` on it.
pub fn walk_matrix<T: Scalar>(g: &Graph) -> Result<SymMatrix<T>> {
    dense_guard(g)?;
    let inv = T::one() / T::of_usize(2 * g.d());
    let mut m = SymMatrix::zeros(g.n());
    for v in 0..g.n() {
        m.set(v, v, T::one() - T::of_usize(g.degree(v)) * inv);
        for &w in g.neighbors(v) {
            m.set(v, w, inv);
        }
    }
    Ok(m)
}

/// `L = 2I - 2M`, which equals `(D - A)/d`.
pub fn laplacian<T: Scalar>(g: &Graph) -> Result<SymMatrix<T>> {
    dense_guard(g)?;
    let inv = T::one() / T::of_usize(g.d());
    let mut l = SymMatrix::zeros(g.n());
    for v in 0..g.n() {
        l.set(v, v, T::of_usize(g.degree(v)) * inv);
        for &w in g.neighbors(v) {
            l.set(v, w, -inv);
        }
    }
    Ok(l)
}

/// Spectrum of the Laplacian: `0 = lambda_1 <= ... <= lambda_n <= 2`, with
/// the walk-matrix eigenvalues `nu_i = 1 - lambda_i / 2` alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub lambdas: Vec<T>,
    /// `vectors[i]` is the unit eigenvector for `lambdas[i]`.
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn of_graph(g: &Graph) -> Result<Self> {
        let e = decompose_with(&laplacian::<T>(g)?, EigenMethod::for_order(g.n()), true)?;
        Ok(Spectrum { lambdas: e.values, vectors: e.vectors })
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    /// `nu_i` for the 0-based index `i` (so `nu(0) = 1` up to rounding).
    pub fn nu(&self, i: usize) -> T {
        T::one() - self.lambdas[i] / T::of(2.0)
    }

    pub fn nus(&self) -> Vec<T> {
        (0..self.n()).map(|i| self.nu(i)).collect()
    }

    /// `lambda_2`, or zero for a single vertex.
    pub fn lambda2(&self) -> T {
        self.lambdas.get(1).copied().unwrap_or_else(T::zero)
    }
}

/// Laplacian eigenvalues only; cheaper than [`Spectrum::of_graph`].
pub fn laplacian_eigenvalues<T: Scalar>(g: &Graph) -> Result<Vec<T>> {
    Ok(decompose_with(&laplacian::<T>(g)?, EigenMethod::for_order(g.n()), false)?.values)
}

/// Orthogonal projection of `x` onto the span of the eigenvectors whose
/// walk eigenvalue `nu_i` is strictly above `nu_threshold`.
pub fn project_heavy<T: Scalar>(s: &Spectrum<T>, nu_threshold: T, x: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); x.len()];
    for (i, v) in s.vectors.iter().enumerate() {
        if s.nu(i) > nu_threshold {
            let c = dot(v, x);
            for (o, &vi) in out.iter_mut().zip(v) {
                *o += c * vi;
            }
        }
    }
    out
}

/// The Gram matrix of two vectors and its eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Gram2<T> {
    pub entries: [[T; 2]; 2],
    pub eig_min: T,
    pub eig_max: T,
}

impl<T: Scalar> Gram2<T> {
    /// From the entries `[[aa, ab], [ab, bb]]` of any symmetric 2x2 matrix.
    pub fn from_entries(aa: T, ab: T, bb: T) -> Self {
        let (eig_min, eig_max) = sym2_eigenvalues(aa, ab, bb);
        Gram2 { entries: [[aa, ab], [ab, bb]], eig_min, eig_max }
    }
}

/// Eigenvalues of `[[a, b], [b, c]]` as `(mid - r, mid + r)`.
pub fn sym2_eigenvalues<T: Scalar>(a: T, b: T, c: T) -> (T, T) {
    let two = T::of(2.0);
    let mid = (a + c) / two;
    let r = ((a - c) / two).hypot(b);
    (mid - r, mid + r)
}

pub fn gram2<T: Scalar>(a: &[T], b: &[T]) -> Result<Gram2<T>> {
    if a.len() != b.len() {
        return Err(Error::precondition("gram2 needs vectors of equal length"));
    }
    Ok(Gram2::from_entries(norm_sq(a), dot(a, b), norm_sq(b)))
}

/// Singular values `(kappa_1, kappa_2)` of the two-column matrix `[a b]`,
/// by one-sided Jacobi: rotate the columns until orthogonal, then take
/// their norms.
pub fn two_column_singular_values<T: Scalar>(a: &[T], b: &[T]) -> (T, T) {
    let alpha = norm_sq(a);
    let beta = norm_sq(b);
    let gamma = dot(a, b);
    let (c, s) = if gamma == T::zero() {
        (T::one(), T::zero())
    } else {
        let zeta = (beta - alpha) / (T::of(2.0) * gamma);
        let sign = if zeta < T::zero() { -T::one() } else { T::one() };
        let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
        let c = T::one() / (T::one() + t * t).sqrt();
        (c, c * t)
    };
    let mut n1 = T::zero();
    let mut n2 = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        let p = c * x - s * y;
        let q = s * x + c * y;
        n1 += p * p;
        n2 += q * q;
    }
    let (n1, n2) = (n1.sqrt(), n2.sqrt());
    if n1 >= n2 {
        (n1, n2)
    } else {
        (n2, n1)
    }
}

/// Largest eigenvalue displacement between two symmetric matrices, and
/// the Frobenius norm of their difference.
pub fn weyl_gap<T: Scalar>(b: &SymMatrix<T>, b_perturbed: &SymMatrix<T>) -> Result<(T, T)> {
    let frob = b.frobenius_distance(b_perturbed)?;
    let tol = T::of(crate::linalg::JACOBI_TOL);
    let mu = eigenvalues(b, tol)?;
    let mu_t = eigenvalues(b_perturbed, tol)?;
    let gap = mu.iter().zip(&mu_t).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max);
    Ok((gap, frob))
}

/// Whether every sorted eigenvalue moves by at most `||B - B'||_F` (plus 1e-10).
pub fn weyl_check<T: Scalar>(b: &SymMatrix<T>, b_perturbed: &SymMatrix<T>) -> Result<bool> {
    let (gap, frob) = weyl_gap(b, b_perturbed)?;
    Ok(gap <= frob + T::of(1e-10))
}

/// Worst-case slack `nu_3^{2t} - eig_min(A_uv)` over `pairs`, where
/// `A_uv` is the exact Gram matrix of `q_u^t, q_v^t`. `None` when `n < 3`
/// (there is no third eigenvalue to compare against).
pub fn interlacing_margin(g: &Graph, t: usize, pairs: &[(Vertex, Vertex)]) -> Result<Option<f64>> {
    dense_guard(g)?;
    if g.n() < 3 {
        return Ok(None);
    }
    let lambdas = laplacian_eigenvalues::<f64>(g)?;
    let nu3 = 1.0 - lambdas[2] / 2.0;
    let bound = nu3.powi(2 * t as i32);
    let mut needed: Vec<Vertex> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    needed.sort_unstable();
    needed.dedup();
    let mut q: Vec<Option<Vec<f64>>> = vec![None; g.n()];
    let computed = needed
        .par_iter()
        .map(|&u| Ok((u, center(&exact_distribution::<f64>(g, u, t)?).coords)))
        .collect::<Result<Vec<_>>>()?;
    for (u, qu) in computed {
        q[u] = Some(qu);
    }
    let mut worst = f64::INFINITY;
    for &(u, v) in pairs {
        let (qu, qv) = (q[u].as_deref().expect("computed"), q[v].as_deref().expect("computed"));
        worst = worst.min(bound - gram2(qu, qv)?.eig_min);
    }
    Ok(Some(worst))
}

/// Cauchy interlacing for the 2x2 principal minors of `(M - J/n)^{2t}`:
/// every `eig_min(A_uv) <= nu_3^{2t}` (within 1e-10). Vacuously true for `n < 3`.
pub fn interlacing_check(g: &Graph, t: usize, pairs: &[(Vertex, Vertex)]) -> Result<bool> {
    Ok(interlacing_margin(g, t, pairs)?.is_none_or(|m| m >= -1e-10))
}

/// Conductance bracket `(lambda_2 / 2, sqrt(2 lambda_2))` from the
/// Laplacian spectrum.
pub fn cheeger_bounds<T: Scalar>(lambdas: &[T]) -> (T, T) {
    let l2 = lambdas.get(1).copied().unwrap_or_else(T::zero).max(T::zero());
    (l2 / T::of(2.0), (T::of(2.0) * l2).sqrt())
}
