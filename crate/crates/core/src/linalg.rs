//! Dense rank-revealing factorization for the small stacked systems of the
//! commutant computation.

use alloc::vec;
use alloc::vec::Vec;

/// Row-major dense matrix with `cols` columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Dense { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn push_row(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }
}

/// Singular values (descending) and the matching right singular vectors.
#[derive(Clone, Debug)]
pub struct Svd {
    pub sigma: Vec<f64>,
    /// `vt[k]` is the right singular vector belonging to `sigma[k]`.
    pub vt: Vec<Vec<f64>>,
}

impl Svd {
    /// Number of singular values above `rtol * sigma_max`.
    pub fn rank(&self, rtol: f64) -> usize {
        let top = self.sigma.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        self.sigma.iter().filter(|&&s| s > rtol * top).count()
    }

    /// Orthonormal basis of the numerical null space.
    pub fn null_space(&self, rtol: f64) -> Vec<Vec<f64>> {
        let r = self.rank(rtol);
        self.vt[r..].to_vec()
    }
}

/// One-sided Jacobi SVD.
///
/// Columns of `A V` are orthogonalized by plane rotations until every pair
/// has cosine below machine precision; their norms are the singular values.
/// Works on `A` directly, so small singular values keep full relative
/// accuracy instead of being squared away as in `AᵀA`.
pub fn svd(a: &Dense) -> Svd {
    let (m, n) = (a.rows, a.cols);
    // column-major working copy of A and the accumulated V
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let eps = f64::EPSILON;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for (x, y) in u[p].iter().zip(&u[q]) {
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || gamma.abs() <= eps * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| (libm::sqrt(u[j].iter().map(|x| x * x).sum::<f64>()), v[j].clone()))
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (sigma, vt) = pairs.into_iter().unzip();
    Svd { sigma, vt }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}
