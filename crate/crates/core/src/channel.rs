//! Channel matrices and row-subset extraction.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::RngStream;

/// An `nr x nt` matrix of complex channel gains, stored row-major.
///
/// Row `i` holds the gains from every transmit antenna to receive antenna `i`,
/// so selecting receive antennas means selecting rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelMatrix {
    nr: usize,
    nt: usize,
    entries: Vec<Complex64>,
}

impl ChannelMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let nr = rows.len();
        if nr == 0 {
            return invalid("channel matrix needs at least one row");
        }
        let nt = rows[0].len();
        if nt == 0 {
            return invalid("channel matrix needs at least one column");
        }
        if rows.iter().any(|r| r.len() != nt) {
            return invalid("channel matrix rows have unequal lengths");
        }
        Ok(Self {
            nr,
            nt,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a matrix with purely real entries, handy for small hand-made cases.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn nr(&self) -> usize {
        self.nr
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.nt..(i + 1) * self.nt]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.nt + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks_exact(self.nt)
    }
}

/// Draws an `nr x nt` matrix of i.i.d. CN(0, 1) entries (real and imaginary
/// parts each N(0, 1/2)).
pub fn sample_channel(rng: &mut RngStream, nr: usize, nt: usize) -> Result<ChannelMatrix> {
    if nr == 0 || nt == 0 {
        return invalid(format!("channel dimensions must be positive, got {nr}x{nt}"));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let entries = (0..nr * nt)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    Ok(ChannelMatrix { nr, nt, entries })
}

/// Extracts the rows listed in `indices`, in that order.
pub fn row_subset(h: &ChannelMatrix, indices: &[usize]) -> Result<ChannelMatrix> {
    if indices.is_empty() {
        return invalid("row subset must not be empty");
    }
    let mut seen = vec![false; h.nr];
    for &i in indices {
        if i >= h.nr {
            return invalid(format!("row index {i} out of range for {} rows", h.nr));
        }
        if std::mem::replace(&mut seen[i], true) {
            return invalid(format!("duplicate row index {i}"));
        }
    }
    let mut entries = Vec::with_capacity(indices.len() * h.nt);
    for &i in indices {
        entries.extend_from_slice(h.row(i));
    }
    Ok(ChannelMatrix {
        nr: indices.len(),
        nt: h.nt,
        entries,
    })
}

/// Squared Euclidean norm of every row.
pub fn row_norms_sq(h: &ChannelMatrix) -> Vec<f64> {
    h.rows().map(|r| r.iter().map(|z| z.norm_sqr()).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    #[test]
    fn unit_variance_entries() {
        let mut rng = derive_stream(11, 0);
        let n = 100_000;
        let mut power = 0.0;
        let mut re_sum = 0.0;
        let mut re_sq = 0.0;
        for _ in 0..n {
            let z = sample_channel(&mut rng, 1, 1).unwrap().get(0, 0);
            power += z.norm_sqr();
            re_sum += z.re;
            re_sq += z.re * z.re;
        }
        let n = n as f64;
        assert!((power / n - 1.0).abs() < 0.02);
        let mean = re_sum / n;
        assert!(mean.abs() < 0.01);
        let var = re_sq / n - mean * mean;
        assert!((var - 0.5).abs() < 0.02, "real-part variance {var}");
    }

    #[test]
    fn shapes_and_errors() {
        let mut rng = derive_stream(7, 5);
        let h = sample_channel(&mut rng, 128, 8).unwrap();
        assert_eq!((h.nr(), h.nt(), h.entries().len()), (128, 8, 1024));
        assert!(sample_channel(&mut rng, 0, 4).is_err());
        assert!(sample_channel(&mut rng, 4, 0).is_err());
    }

    #[test]
    fn reproducible_from_seed() {
        let a = sample_channel(&mut derive_stream(3, 9), 6, 3).unwrap();
        let b = sample_channel(&mut derive_stream(3, 9), 6, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subset_rows() {
        let h = ChannelMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]])
            .unwrap();
        let s = row_subset(&h, &[0, 2]).unwrap();
        assert_eq!(s, ChannelMatrix::from_real_rows(&[vec![1.0, 2.0], vec![5.0, 6.0]]).unwrap());
        assert_eq!(row_subset(&h, &[0, 1, 2]).unwrap(), h);
        assert!(row_subset(&h, &[5]).is_err());
        assert!(row_subset(&h, &[1, 1]).is_err());
        assert!(row_subset(&h, &[]).is_err());
    }

    #[test]
    fn subset_composes() {
        let h = sample_channel(&mut derive_stream(1, 1), 5, 2).unwrap();
        let outer = row_subset(&h, &[3, 1]).unwrap();
        assert_eq!(row_subset(&outer, &[1]).unwrap(), row_subset(&h, &[1]).unwrap());
    }

    #[test]
    fn norms() {
        let h = ChannelMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0], vec![0.0, 0.0]])
            .unwrap();
        assert_eq!(row_norms_sq(&h), vec![1.0, 4.0, 0.0]);

        let h = sample_channel(&mut derive_stream(2, 2), 128, 8).unwrap();
        let norms = row_norms_sq(&h);
        for i in 0..h.nr() {
            let mut direct = 0.0;
            for j in 0..h.nt() {
                let z = h.get(i, j);
                direct += z.re * z.re + z.im * z.im;
            }
            assert!((norms[i] - direct).abs() < 1e-12);
        }
    }
}
