//! Dense complex eigensolver for small matrices.
//!
//! This is the matrix route used to cross-check every closed-form branch
//! energy: reduce to upper Hessenberg form with complex Householder
//! reflections, then run explicitly shifted QR iterations (complex Givens
//! rotations, Wilkinson shifts, deflation of converged 1×1 and 2×2
//! trailing blocks). Eigenvectors come from inverse iteration with a
//! partially pivoted LU solve. Everything is deterministic and written
//! directly against the definitions, so it shares no code path with the
//! closed forms it validates.

// Index-based loops mirror the textbook statements of these algorithms,
// where one index simultaneously addresses a vector and a matrix block;
// iterator rewrites would obscure that correspondence.
#![allow(clippy::needless_range_loop)]

use super::OracleError;
use crate::C64;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    /// Number of rows = number of columns.
    pub dim: usize,
    /// Row-major entries, `dim × dim`.
    pub data: Vec<C64>,
}

impl CMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![C64::from(0.0); dim * dim] }
    }

    /// Builds from nested rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, OracleError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(OracleError::Dimension { what: "matrix rows are not square".into() });
        }
        Ok(CMatrix { dim, data: rows.iter().flatten().copied().collect() })
    }

    /// Entry (row, col).
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    fn at_mut(&mut self, r: usize, c: usize) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }

    /// Largest entry modulus; a cheap scale for thresholds.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.at(r, c) * v[c]).sum())
            .collect()
    }
}

/// Complex Givens rotation [[c, s], [−conj(s), c]] with real c ≥ 0 that
/// maps (f, g) to (r, 0).
fn givens(f: C64, g: C64) -> (f64, C64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C64::from(0.0));
    }
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let r = fn_.hypot(gn);
    let c = fn_ / r;
    let s = (f / fn_) * g.conj() / r;
    (c, s)
}

/// In-place reduction to upper Hessenberg form by Householder similarity.
fn hessenberg(h: &mut CMatrix) {
    let n = h.dim;
    for j in 0..n.saturating_sub(2) {
        // Reflect column j below the subdiagonal onto the subdiagonal.
        let mut xnorm_sq = 0.0;
        for i in (j + 1)..n {
            xnorm_sq += h.at(i, j).norm_sqr();
        }
        let xnorm = xnorm_sq.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h.at(j + 1, j);
        let phase = if x0.norm() == 0.0 { C64::from(1.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        // v = x − α·e₁; τ = 2 / (vᴴv).
        let mut v = vec![C64::from(0.0); n];
        v[j + 1] = x0 - alpha;
        for i in (j + 2)..n {
            v[i] = h.at(i, j);
        }
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;
        // Left: H ← (I − τ v vᴴ) H.
        for c in 0..n {
            let mut dot = C64::from(0.0);
            for i in (j + 1)..n {
                dot += v[i].conj() * h.at(i, c);
            }
            let dot = dot * tau;
            for i in (j + 1)..n {
                *h.at_mut(i, c) -= v[i] * dot;
            }
        }
        // Right: H ← H (I − τ v vᴴ).
        for r in 0..n {
            let mut dot = C64::from(0.0);
            for i in (j + 1)..n {
                dot += h.at(r, i) * v[i];
            }
            let dot = dot * tau;
            for i in (j + 1)..n {
                *h.at_mut(r, i) -= dot * v[i].conj();
            }
        }
        // Zero out the annihilated entries explicitly.
        *h.at_mut(j + 1, j) = alpha;
        for i in (j + 2)..n {
            *h.at_mut(i, j) = C64::from(0.0);
        }
    }
}

/// Both eigenvalues of [[a, b], [c, d]], computed with the root-product
/// trick to avoid cancellation.
fn eig_2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let t = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = (t * t - det).sqrt();
    // Pick the sign that grows |t ± disc|.
    let lam1 = if (t + disc).norm() >= (t - disc).norm() { t + disc } else { t - disc };
    if lam1.norm() == 0.0 {
        (C64::from(0.0), C64::from(0.0))
    } else {
        (lam1, det / lam1)
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2×2 block closest to
/// its bottom-right entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let (l1, l2) = eig_2x2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the active Hessenberg block
/// `lo..=hi`: factor (B − σI) = QR with Givens rotations, then form
/// RQ + σI in place.
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, sigma: C64) {
    let m = hi - lo + 1;
    for i in lo..=hi {
        *h.at_mut(i, i) -= sigma;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(m - 1);
    for i in lo..hi {
        let (c, s) = givens(h.at(i, i), h.at(i + 1, i));
        // Apply from the left to rows i, i+1 over columns i..=hi.
        for col in i..=hi {
            let top = h.at(i, col);
            let bot = h.at(i + 1, col);
            *h.at_mut(i, col) = c * top + s * bot;
            *h.at_mut(i + 1, col) = -s.conj() * top + c * bot;
        }
        rots.push((c, s));
    }
    for (idx, (c, s)) in rots.iter().enumerate() {
        let i = lo + idx;
        // Apply Gᴴ from the right to columns i, i+1 over rows lo..=i+1.
        for row in lo..=(i + 1).min(hi) {
            let left = h.at(row, i);
            let right = h.at(row, i + 1);
            *h.at_mut(row, i) = left * c + right * s.conj();
            *h.at_mut(row, i + 1) = -left * *s + right * c;
        }
    }
    for i in lo..=hi {
        *h.at_mut(i, i) += sigma;
    }
}

/// All eigenvalues of a small dense complex matrix, sorted by (Re, Im)
/// ascending. Fails if the QR iteration does not deflate within the
/// iteration budget.
pub fn eig_small_complex(m: &CMatrix) -> Result<Vec<C64>, OracleError> {
    let n = m.dim;
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(OracleError::Dimension { what: "matrix has non-finite entries".into() });
    }
    let mut h = m.clone();
    hessenberg(&mut h);
    let eps = f64::EPSILON;
    let mut eigs: Vec<C64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters_at_hi = 0usize;
    let mut total_iters = 0usize;
    let budget = 60 * n.max(4);
    loop {
        // Annihilate negligible subdiagonals.
        for i in 1..=hi {
            let sub = h.at(i, i - 1).norm();
            let thr = eps * (h.at(i - 1, i - 1).norm() + h.at(i, i).norm());
            if sub <= thr || sub < 1e-300 {
                *h.at_mut(i, i - 1) = C64::from(0.0);
            }
        }
        if hi == 0 {
            eigs.push(h.at(0, 0));
            break;
        }
        if h.at(hi, hi - 1).norm() == 0.0 {
            // 1×1 block converged.
            eigs.push(h.at(hi, hi));
            hi -= 1;
            iters_at_hi = 0;
            continue;
        }
        if hi == 1 || h.at(hi - 1, hi - 2).norm() == 0.0 {
            // Trailing 2×2 block: solve exactly.
            let (l1, l2) = eig_2x2(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            );
            eigs.push(l1);
            eigs.push(l2);
            if hi == 1 {
                break;
            }
            hi -= 2;
            iters_at_hi = 0;
            continue;
        }
        // Active irreducible block lo..=hi.
        let mut lo = hi;
        while lo > 0 && h.at(lo, lo - 1).norm() != 0.0 {
            lo -= 1;
        }
        total_iters += 1;
        iters_at_hi += 1;
        if total_iters > budget {
            return Err(OracleError::IterationFailure { iterations: total_iters });
        }
        let sigma = if iters_at_hi % 12 == 0 {
            // Exceptional shift to break symmetric stalls.
            h.at(hi, hi) + 0.75 * h.at(hi, hi - 1).norm()
        } else {
            wilkinson_shift(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            )
        };
        qr_sweep(&mut h, lo, hi, sigma);
    }
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)));
    Ok(eigs)
}

/// Solves A·x = b by LU with partial pivoting, in place on copies.
/// Near-singular pivots are nudged, which is exactly what inverse
/// iteration wants.
fn solve_lu(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>, OracleError> {
    let n = a.dim;
    let mut lu = a.clone();
    let mut x: Vec<C64> = b.to_vec();
    let scale = lu.max_abs().max(1e-300);
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        // Pivot search.
        let mut best = col;
        for r in (col + 1)..n {
            if lu.at(perm[r], col).norm() > lu.at(perm[best], col).norm() {
                best = r;
            }
        }
        perm.swap(col, best);
        let mut pivot = lu.at(perm[col], col);
        if pivot.norm() < 1e-14 * scale {
            pivot = C64::from(1e-14 * scale);
            *lu.at_mut(perm[col], col) = pivot;
        }
        for r in (col + 1)..n {
            let factor = lu.at(perm[r], col) / pivot;
            *lu.at_mut(perm[r], col) = factor;
            for c in (col + 1)..n {
                let sub = factor * lu.at(perm[col], c);
                *lu.at_mut(perm[r], c) -= sub;
            }
        }
    }
    // Forward substitution (L has unit diagonal).
    let mut y = vec![C64::from(0.0); n];
    for r in 0..n {
        let mut acc = x[perm[r]];
        for c in 0..r {
            acc -= lu.at(perm[r], c) * y[c];
        }
        y[r] = acc;
    }
    // Back substitution.
    for r in (0..n).rev() {
        let mut acc = y[r];
        for c in (r + 1)..n {
            acc -= lu.at(perm[r], c) * x[c];
        }
        x[r] = acc / lu.at(perm[r], r);
    }
    Ok(x)
}

/// Unit-norm eigenvector for a known eigenvalue, by inverse iteration.
pub fn eigenvector_for(m: &CMatrix, lambda: C64) -> Result<Vec<C64>, OracleError> {
    let n = m.dim;
    if n == 0 {
        return Err(OracleError::Dimension { what: "empty matrix".into() });
    }
    let mut shifted = m.clone();
    for i in 0..n {
        *shifted.at_mut(i, i) -= lambda;
    }
    // Deterministic, mildly irregular start vector.
    let mut x: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + 0.25 * ((i % 5) as f64), 0.125 * ((i % 3) as f64)))
        .collect();
    normalize(&mut x);
    for _ in 0..4 {
        let y = solve_lu(&shifted, &x)?;
        x = y;
        normalize(&mut x);
    }
    Ok(x)
}

fn normalize(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}
