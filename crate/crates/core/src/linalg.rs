//! Dense symmetric matrices and two eigensolvers: cyclic Jacobi for small
//! orders, Householder tridiagonalization with implicit QL for larger ones.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest order accepted by the dense spectral routines.
pub const DENSE_GUARD: usize = 4096;

/// Default stopping threshold on the off-diagonal Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Largest order [`EigenMethod::for_order`] hands to Jacobi.
pub const JACOBI_MAX_ORDER: usize = 64;

const QL_MAX_ITERATIONS: usize = 60;

/// Dense symmetric matrix, stored in full row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.data[i * m.n + i] = x;
        }
        m
    }

    /// Builds from rows, checking squareness and symmetry to within `1e-12`.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::precondition("matrix is not square"));
        }
        let tol = T::of(1e-12);
        for i in 0..n {
            for j in i + 1..n {
                let gap = (rows[i][j] - rows[j][i]).abs();
                if gap > tol {
                    return Err(Error::NotSymmetric { i, j, gap: gap.as_f64() });
                }
            }
        }
        Ok(SymMatrix { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    /// Sets `a[i][j]` and `a[j][i]`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[T]>::to_vec).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// `||self - other||_F`.
    pub fn frobenius_distance(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::precondition("shape mismatch"));
        }
        Ok(self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b) * (a - b)).sum::<T>().sqrt())
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let x = self.get(i, j);
                    s += x * x;
                }
            }
        }
        s.sqrt()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n).map(|i| crate::scalar::dot(self.row(i), x)).collect()
    }

    /// Entrywise `a * self + b * other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Self {
        assert_eq!(self.n, other.n);
        SymMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&x, &y)| a * x + b * y).collect() }
    }
}

/// Eigenpairs in ascending order of eigenvalue; `vectors[i]` belongs to
/// `values[i]`. Vectors are orthonormal, with their first clearly nonzero
/// coordinate positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `tol` (or nothing representable is left to rotate).
pub fn eigendecompose<T: Scalar>(a: &SymMatrix<T>, tol: T) -> Result<EigenDecomposition<T>> {
    jacobi(a, tol, true)
}

/// As [`eigendecompose`] but without accumulating eigenvectors.
pub fn eigenvalues<T: Scalar>(a: &SymMatrix<T>, tol: T) -> Result<Vec<T>> {
    jacobi(a, tol, false).map(|e| e.values)
}

fn jacobi<T: Scalar>(a: &SymMatrix<T>, tol: T, want_vectors: bool) -> Result<EigenDecomposition<T>> {
    let n = a.n;
    if n > DENSE_GUARD {
        return Err(Error::GuardExceeded { what: "dense eigensolver", limit: DENSE_GUARD, got: n });
    }
    let mut m = a.data.clone();
    // Rows of `vt` are the eigenvectors being accumulated.
    let mut vt = if want_vectors { SymMatrix::<T>::identity(n).data } else { Vec::new() };

    let hundred = T::of(100.0);
    let half = T::of(0.5);
    let mut sweeps = 0;
    loop {
        let off = off_norm(&m, n);
        if off <= tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off: off.as_f64() });
        }
        sweeps += 1;
        // Early sweeps skip small entries; see Numerical Recipes, sec. 11.1.
        let thresh = if sweeps < 4 { T::of(0.2) * off / T::of_usize(n * n) } else { T::zero() };
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let g = hundred * apq.abs();
                if sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    m[p * n + q] = T::zero();
                    m[q * n + p] = T::zero();
                    continue;
                }
                if apq.abs() <= thresh || apq == T::zero() {
                    continue;
                }
                rotated = true;
                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = half * h / apq;
                    let t = T::one() / (theta.abs() + (T::one() + theta * theta).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let tau = s / (T::one() + c);
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let gk = m[p * n + k];
                    let hk = m[q * n + k];
                    let new_p = gk - s * (hk + gk * tau);
                    let new_q = hk + s * (gk - hk * tau);
                    m[p * n + k] = new_p;
                    m[q * n + k] = new_q;
                    m[k * n + p] = new_p;
                    m[k * n + q] = new_q;
                }
                if want_vectors {
                    let (lo, hi) = vt.split_at_mut(q * n);
                    let vp = &mut lo[p * n..(p + 1) * n];
                    let vq = &mut hi[..n];
                    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
                        let gk = *x;
                        let hk = *y;
                        *x = gk - s * (hk + gk * tau);
                        *y = hk + s * (gk - hk * tau);
                    }
                }
            }
        }
        if !rotated && sweeps > 4 {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].partial_cmp(&m[j * n + j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = if want_vectors {
        order
            .iter()
            .map(|&i| {
                let mut v = vt[i * n..(i + 1) * n].to_vec();
                canonical_sign(&mut v);
                v
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(EigenDecomposition { values, vectors, sweeps })
}

/// Which dense eigensolver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Jacobi,
    HouseholderQl,
}

impl EigenMethod {
    /// Jacobi up to [`JACOBI_MAX_ORDER`], where its accuracy on tiny
    /// eigenvalues is worth the cubic-per-sweep cost, and QL beyond.
    pub fn for_order(n: usize) -> Self {
        if n <= JACOBI_MAX_ORDER {
            EigenMethod::Jacobi
        } else {
            EigenMethod::HouseholderQl
        }
    }
}

/// Eigen-decomposition with an explicit solver choice. `sweeps` counts
/// Jacobi sweeps or QL iterations.
pub fn decompose_with<T: Scalar>(
    a: &SymMatrix<T>,
    method: EigenMethod,
    want_vectors: bool,
) -> Result<EigenDecomposition<T>> {
    match method {
        EigenMethod::Jacobi => jacobi(a, T::of(JACOBI_TOL), want_vectors),
        EigenMethod::HouseholderQl => householder_ql(a, want_vectors),
    }
}

/// Householder reduction to tridiagonal form followed by the implicit QL
/// algorithm (the EISPACK `tred2`/`tql2` pair).
pub fn householder_ql<T: Scalar>(a: &SymMatrix<T>, want_vectors: bool) -> Result<EigenDecomposition<T>> {
    let n = a.n;
    if n > DENSE_GUARD {
        return Err(Error::GuardExceeded { what: "dense eigensolver", limit: DENSE_GUARD, got: n });
    }
    if n == 0 {
        return Ok(EigenDecomposition { values: Vec::new(), vectors: Vec::new(), sweeps: 0 });
    }
    let mut v = a.data.clone();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut v, &mut d, &mut e, n, want_vectors);
    // Rows of `z` are eigenvector slots (columns of the accumulated transform).
    let mut z = if want_vectors {
        let mut z = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                z[i * n + k] = v[k * n + i];
            }
        }
        z
    } else {
        Vec::new()
    };
    let iterations = tql2(&mut d, &mut e, &mut z, n, want_vectors)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = if want_vectors {
        order
            .iter()
            .map(|&i| {
                let mut x = z[i * n..(i + 1) * n].to_vec();
                canonical_sign(&mut x);
                x
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(EigenDecomposition { values, vectors, sweeps: iterations })
}

fn tred2<T: Scalar>(v: &mut [T], d: &mut [T], e: &mut [T], n: usize, accumulate: bool) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for x in e.iter_mut().take(i) {
                *x = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for j in 0..n {
            d[j] = v[at(j, j)];
        }
        e[0] = T::zero();
        return;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    v[at(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

fn tql2<T: Scalar>(d: &mut [T], e: &mut [T], z: &mut [T], n: usize, vectors: bool) -> Result<usize> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let eps = T::epsilon();
    let two = T::of(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let mut total = 0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_MAX_ITERATIONS {
                    return Err(Error::NoConvergence { sweeps: total, off: e[l].abs().as_f64() });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d.iter_mut().skip(l + 2) {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if vectors {
                        let (lo, hi) = z.split_at_mut((i + 1) * n);
                        let zi = &mut lo[i * n..];
                        for (a, b) in zi.iter_mut().zip(hi[..n].iter_mut()) {
                            let hk = *b;
                            *b = s * *a + c * hk;
                            *a = c * *a - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
            total += iter;
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(total)
}

fn off_norm<T: Scalar>(m: &[T], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let x = m[i * n + j];
            s += x * x;
        }
    }
    (s + s).sqrt()
}

/// Flip `v` so that its first coordinate of non-negligible size is positive.
fn canonical_sign<T: Scalar>(v: &mut [T]) {
    let floor = T::epsilon().sqrt();
    if let Some(&first) = v.iter().find(|x| x.abs() > floor) {
        if first < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &SymMatrix<f64>, e: &EigenDecomposition<f64>) -> f64 {
        e.values
            .iter()
            .zip(&e.vectors)
            .map(|(&l, v)| {
                let av = a.mul_vec(v);
                av.iter().zip(v).map(|(x, y)| (x - l * y).powi(2)).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn two_by_two() {
        let a = SymMatrix::from_rows(&[vec![2.0f64, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = eigendecompose(&a, 1e-10).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12 && (e.values[1] - 3.0).abs() < 1e-12);
        assert!(residual(&a, &e) < 1e-12);
    }

    #[test]
    fn identity_is_already_diagonal() {
        let e = eigendecompose(&SymMatrix::<f64>::identity(5), 1e-10).unwrap();
        assert_eq!(e.values, vec![1.0; 5]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let err = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn random_matrix_is_diagonalized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let n = 30;
        let mut a = SymMatrix::<f64>::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let e = eigendecompose(&a, 1e-10).unwrap();
        assert!(residual(&a, &e) < 1e-9);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..n {
            for j in 0..n {
                let d = crate::scalar::dot(&e.vectors[i], &e.vectors[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9);
            }
        }
        let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
        assert!((trace - e.values.iter().sum::<f64>()).abs() < 1e-9);
        assert_eq!(eigenvalues(&a, 1e-10).unwrap(), e.values);
    }

    #[test]
    fn single_precision_terminates() {
        let a =
            SymMatrix::<f32>::from_rows(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.25], vec![0.5, 0.25, 1.0]]).unwrap();
        let e = eigendecompose(&a, 1e-10f32).unwrap();
        let trace = 8.0f32;
        assert!((e.values.iter().sum::<f32>() - trace).abs() < 1e-5);
    }

    #[test]
    fn householder_ql_agrees_with_jacobi() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for n in [1, 2, 3, 17, 40] {
            let mut a = SymMatrix::<f64>::zeros(n);
            for i in 0..n {
                for j in i..n {
                    a.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            let j = decompose_with(&a, EigenMethod::Jacobi, true).unwrap();
            let q = decompose_with(&a, EigenMethod::HouseholderQl, true).unwrap();
            for (x, y) in j.values.iter().zip(&q.values) {
                assert!((x - y).abs() < 1e-10, "n = {n}");
            }
            assert!(residual(&a, &q) < 1e-10);
            let values_only = householder_ql(&a, false).unwrap().values;
            for (x, y) in values_only.iter().zip(&q.values) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn householder_ql_on_degenerate_spectrum() {
        let a = SymMatrix::<f64>::diagonal(&[2.0, 2.0, 2.0, 1.0]);
        let e = householder_ql(&a, true).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 2.0, 2.0]);
        assert!(residual(&a, &e) < 1e-14);
        assert_eq!(EigenMethod::for_order(64), EigenMethod::Jacobi);
        assert_eq!(EigenMethod::for_order(65), EigenMethod::HouseholderQl);
    }

    #[test]
    fn guard() {
        let a = SymMatrix::<f64>::zeros(DENSE_GUARD + 1);
        assert!(eigendecompose(&a, 1e-10).unwrap_err().is_guard());
    }
}
