//! Small dense complex linear algebra used by the capacity and selection code.
//!
//! Matrices here are at most a few dozen rows, so everything is a flat
//! row-major `Vec<Complex64>` with an explicit dimension.

use num_complex::Complex64;

use crate::channel::ChannelMatrix;

/// `I + rho * G`, where `G` is the Gram matrix of the smaller side of `h`:
/// `H H^H` when `h` has no more rows than columns, `H^H H` otherwise. Both
/// have the same nonzero spectrum, so either gives the same determinant.
pub(crate) fn regularized_gram(h: &ChannelMatrix, rho: f64) -> (usize, Vec<Complex64>) {
    let (nr, nt) = (h.nr(), h.nt());
    if nr <= nt {
        let mut m = vec![Complex64::new(0.0, 0.0); nr * nr];
        for a in 0..nr {
            let ra = h.row(a);
            for b in a..nr {
                let rb = h.row(b);
                let dot: Complex64 = ra.iter().zip(rb).map(|(x, y)| x * y.conj()).sum();
                m[a * nr + b] = dot * rho;
                m[b * nr + a] = (dot * rho).conj();
            }
            m[a * nr + a] += 1.0;
        }
        (nr, m)
    } else {
        let mut m = vec![Complex64::new(0.0, 0.0); nt * nt];
        for row in h.rows() {
            accumulate_outer(&mut m, nt, row, rho);
        }
        for a in 0..nt {
            m[a * nt + a] += 1.0;
        }
        (nt, m)
    }
}

/// `m += rho * r^H r` for a row vector `r`.
fn accumulate_outer(m: &mut [Complex64], n: usize, r: &[Complex64], rho: f64) {
    for a in 0..n {
        let ca = r[a].conj() * rho;
        for b in 0..n {
            m[a * n + b] += ca * r[b];
        }
    }
}

/// `log2 det(a)` for a Hermitian positive-definite `a` via Cholesky.
/// Returns `None` if a pivot is not strictly positive.
pub(crate) fn cholesky_log2_det(a: &[Complex64], n: usize) -> Option<f64> {
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let djj = d.sqrt();
        l[j * n + j] = Complex64::new(djj, 0.0);
        log_det += d.log2();
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / djj;
        }
    }
    Some(log_det)
}

/// Inverse of `B = I + rho * sum_i r_i^H r_i`, maintained under rank-one
/// additions with the Sherman-Morrison formula.
#[derive(Clone, Debug)]
pub(crate) struct GramInverse {
    n: usize,
    rho: f64,
    inv: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl GramInverse {
    pub(crate) fn identity(n: usize, rho: f64) -> Self {
        let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
        for a in 0..n {
            inv[a * n + a] = Complex64::new(1.0, 0.0);
        }
        Self {
            n,
            rho,
            inv,
            scratch: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// `r B^{-1} r^H`, real and nonnegative up to rounding.
    pub(crate) fn quad_form(&self, r: &[Complex64]) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for a in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for b in 0..n {
                s += self.inv[a * n + b] * r[b].conj();
            }
            acc += (r[a] * s).re;
        }
        acc.max(0.0)
    }

    /// `log2(1 + rho * r B^{-1} r^H)`: capacity gained by adding row `r`.
    pub(crate) fn gain(&self, r: &[Complex64]) -> f64 {
        (self.rho * self.quad_form(r)).ln_1p() / std::f64::consts::LN_2
    }

    /// Replaces `B` by `B + rho r^H r`.
    pub(crate) fn add_row(&mut self, r: &[Complex64]) {
        let n = self.n;
        // v = B^{-1} r^H
        for a in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for b in 0..n {
                s += self.inv[a * n + b] * r[b].conj();
            }
            self.scratch[a] = s;
        }
        let q: f64 = (0..n).map(|a| (r[a] * self.scratch[a]).re).sum();
        let scale = self.rho / (1.0 + self.rho * q.max(0.0));
        for a in 0..n {
            let va = self.scratch[a] * scale;
            for b in 0..n {
                self.inv[a * n + b] -= va * self.scratch[b].conj();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_channel;
    use crate::rng::derive_stream;

    #[test]
    fn cholesky_on_diagonal() {
        let a = vec![
            Complex64::new(4.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        assert!((cholesky_log2_det(&a, 2).unwrap() - 3.0).abs() < 1e-15);
        let neg = vec![Complex64::new(-1.0, 0.0)];
        assert!(cholesky_log2_det(&neg, 1).is_none());
    }

    #[test]
    fn sherman_morrison_tracks_direct_inverse() {
        let h = sample_channel(&mut derive_stream(5, 0), 6, 3).unwrap();
        let rho = 2.5;
        let mut inv = GramInverse::identity(3, rho);
        let mut total = 0.0;
        for r in h.rows() {
            total += inv.gain(r);
            inv.add_row(r);
        }
        let (n, g) = regularized_gram(&h, rho);
        let direct = cholesky_log2_det(&g, n).unwrap();
        assert!((total - direct).abs() < 1e-10, "{total} vs {direct}");
    }
}
