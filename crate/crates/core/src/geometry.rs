//! How far two vectors are from lying on a common line through the origin.
//!
//! Two vectors are `eps`-close to collinear when each can be moved by at
//! most `eps` so that both land on one line through the origin. The
//! antipodal variant additionally puts the origin between the moved
//! points, the podal variant does not. Being far from both is the same as
//! being far from collinear.
//!
//! The tester only ever needs sound "far" certificates, which come from
//! the segment functional `min_{alpha in [0,1]} ||alpha a + (1-alpha) b||`:
//! it lower-bounds the antipodal distance, and the same with `b` negated
//! lower-bounds the podal one.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{dot, norm_sq, Scalar};
use crate::spectral::two_column_singular_values;

/// Largest family accepted by [`count_far_pairs`].
pub const FAR_PAIR_GUARD: usize = 5000;

const ANGLE_GRID: usize = 1024;
const ANGLE_REFINEMENTS: usize = 60;

/// `(min_{alpha in [0,1]} ||alpha a + (1-alpha) b||, alpha*)`.
///
/// `alpha* = clamp(<b, b - a> / ||a - b||^2, 0, 1)`, and `0` when `a = b`.
pub fn min_segment_norm<T: Scalar>(a: &[T], b: &[T]) -> (T, T) {
    segment_min_from_gram(norm_sq(a), dot(a, b), norm_sq(b))
}

/// [`min_segment_norm`] from the Gram entries `<a,a>, <a,b>, <b,b>` alone.
pub fn segment_min_from_gram<T: Scalar>(aa: T, ab: T, bb: T) -> (T, T) {
    let diff = aa - ab - ab + bb;
    let alpha = if diff > T::zero() { ((bb - ab) / diff).max(T::zero()).min(T::one()) } else { T::zero() };
    let beta = T::one() - alpha;
    let sq = alpha * alpha * aa + (alpha + alpha) * beta * ab + beta * beta * bb;
    (sq.max(T::zero()).sqrt(), alpha)
}

/// Sound certificate that `a, b` are `eps`-far from antipodal.
pub fn antipodal_far<T: Scalar>(a: &[T], b: &[T], eps: T) -> bool {
    min_segment_norm(a, b).0 > eps
}

/// Sound certificate that `a, b` are `eps`-far from podal.
pub fn podal_far<T: Scalar>(a: &[T], b: &[T], eps: T) -> bool {
    segment_min_from_gram(norm_sq(a), -dot(a, b), norm_sq(b)).0 > eps
}

/// Exact distance to collinear: the minimum over lines through the origin
/// of the larger of the two point-to-line distances.
///
/// The optimal line lies in `span{a, b}`, so the search runs over the
/// angle of a line in that plane: a 1024-point grid, then a ternary search
/// around every grid-local minimum (the objective is quasiconvex on each
/// such bracket).
pub fn collinear_distance_exact<T: Scalar>(a: &[T], b: &[T]) -> T {
    let (pa, pb) = planar_coordinates(a, b);
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        (pa.0 * s - pa.1 * c).abs().max((pb.0 * s - pb.1 * c).abs())
    };
    let pi = std::f64::consts::PI;
    let h = pi / ANGLE_GRID as f64;
    let grid: Vec<f64> = (0..ANGLE_GRID).map(|i| f(i as f64 * h)).collect();
    let mut best = f64::INFINITY;
    for i in 0..ANGLE_GRID {
        let prev = grid[(i + ANGLE_GRID - 1) % ANGLE_GRID];
        let next = grid[(i + 1) % ANGLE_GRID];
        if grid[i] > prev || grid[i] > next {
            continue;
        }
        let (mut lo, mut hi) = ((i as f64 - 1.0) * h, (i as f64 + 1.0) * h);
        for _ in 0..ANGLE_REFINEMENTS {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1) <= f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(f(0.5 * (lo + hi))).min(grid[i]);
    }
    T::of(best)
}

/// Coordinates of `a` and `b` in an orthonormal basis of their span.
fn planar_coordinates<T: Scalar>(a: &[T], b: &[T]) -> ((f64, f64), (f64, f64)) {
    let a: Vec<f64> = a.iter().map(|x| x.as_f64()).collect();
    let b: Vec<f64> = b.iter().map(|x| x.as_f64()).collect();
    let (na, nb) = (norm_sq(&a).sqrt(), norm_sq(&b).sqrt());
    // First basis vector along the longer input.
    let (long, short, swapped) = if na >= nb { (&a, &b, false) } else { (&b, &a, true) };
    let nl = na.max(nb);
    if nl == 0.0 {
        return ((0.0, 0.0), (0.0, 0.0));
    }
    let along = dot(short, long) / nl;
    // Explicit residual vector: subtracting squared norms would cancel badly
    // for nearly collinear inputs.
    let perp: Vec<f64> = short.iter().zip(long).map(|(s, l)| s - along * l / nl).collect();
    let pl = (nl, 0.0);
    let ps = (along, norm_sq(&perp).sqrt());
    if swapped {
        (ps, pl)
    } else {
        (pl, ps)
    }
}

/// Everything known about how collinear a pair is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollinearityCertificate<T> {
    /// Smaller singular value of `[a b]`.
    pub kappa2: T,
    pub m_anti: T,
    pub m_podal: T,
    pub dist_exact: Option<T>,
}

impl<T: Scalar> CollinearityCertificate<T> {
    pub fn new(a: &[T], b: &[T], with_exact: bool) -> Self {
        let (aa, ab, bb) = (norm_sq(a), dot(a, b), norm_sq(b));
        CollinearityCertificate {
            kappa2: two_column_singular_values(a, b).1,
            m_anti: segment_min_from_gram(aa, ab, bb).0,
            m_podal: segment_min_from_gram(aa, -ab, bb).0,
            dist_exact: with_exact.then(|| collinear_distance_exact(a, b)),
        }
    }

    /// Certified `eps`-far from collinear (far from both modes).
    pub fn far_from_collinear(&self, eps: T) -> bool {
        self.m_anti > eps && self.m_podal > eps
    }
}

/// Unordered pairs `(u, v)`, `u < v`, certified `eps`-far from both
/// antipodal and podal, listed in lexicographic order.
pub fn count_far_pairs<T: Scalar>(vectors: &[Vec<T>], eps: T) -> Result<(usize, Vec<(usize, usize)>)> {
    if vectors.len() > FAR_PAIR_GUARD {
        return Err(Error::GuardExceeded { what: "far-pair count", limit: FAR_PAIR_GUARD, got: vectors.len() });
    }
    let norms: Vec<T> = vectors.iter().map(|v| norm_sq(v)).collect();
    let pairs: Vec<(usize, usize)> = (0..vectors.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let (vectors, norms) = (&vectors, &norms);
            (u + 1..vectors.len()).filter_map(move |v| {
                let ab = dot(&vectors[u], &vectors[v]);
                let anti = segment_min_from_gram(norms[u], ab, norms[v]).0;
                let podal = segment_min_from_gram(norms[u], -ab, norms[v]).0;
                (anti > eps && podal > eps).then_some((u, v))
            })
        })
        .collect();
    Ok((pairs.len(), pairs))
}
