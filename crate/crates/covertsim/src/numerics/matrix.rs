//! Dense complex matrices sized for link-level simulation.
//!
//! Everything in the simulator is at most a few hundred entries (codewords,
//! channel matrices, received blocks), so the arithmetic here is plain
//! row-major storage with direct loops, plus the two small solves the
//! detectors need: a right pseudo-inverse and a nearest-unitary projection.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Condition-estimate guard for the Gram-matrix solves.
const SINGULARITY_CONDITION_LIMIT: f64 = 1e12;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)` for every entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from nested row slices.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix literal"
        );
        ComplexMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Flat row-major view of the entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix dimension mismatch in multiply: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, cur + a * rhs.get(k, c));
                }
            }
        }
        out
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Squared Frobenius norm.
    pub fn frob_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        self.frob_norm_sq().sqrt()
    }

    /// Squared Frobenius distance `‖self − rhs‖²` without allocating.
    pub fn frob_dist_sq(&self, rhs: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum()
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Horizontal concatenation of equally tall blocks.
    pub fn hstack(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
        assert!(!blocks.is_empty(), "hstack of zero blocks");
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ComplexMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, offset + c, b.get(r, c));
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Column block `[start, start+width)` as a new matrix.
    pub fn col_block(&self, start: usize, width: usize) -> ComplexMatrix {
        assert!(start + width <= self.cols, "column block out of range");
        ComplexMatrix::from_fn(self.rows, width, |r, c| self.get(r, start + c))
    }

    /// Right pseudo-inverse `Aᴴ(AAᴴ)⁻¹` for a full-row-rank matrix.
    ///
    /// Fails with a singularity error when the Gram matrix `AAᴴ` has an
    /// estimated condition number beyond 1e12.
    pub fn pseudo_inverse(&self) -> Result<ComplexMatrix> {
        if self.rows > self.cols {
            return Err(Error::Parameter(format!(
                "pseudo-inverse needs rows <= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        let gram = self.mul(&self.hermitian());
        let gram_inv = gram.lu_inverse()?;
        let out = self.hermitian().mul(&gram_inv);
        if !out.is_finite() {
            return Err(Error::Singular("pseudo-inverse produced non-finite entries".into()));
        }
        Ok(out)
    }

    /// Inverse of a small square matrix via LU with partial pivoting.
    pub fn lu_inverse(&self) -> Result<ComplexMatrix> {
        assert_eq!(self.rows, self.cols, "lu_inverse needs a square matrix");
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        let mut max_pivot: f64 = 0.0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu.get(k, k).norm();
            for r in k + 1..n {
                let mag = lu.get(r, k).norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag == 0.0 {
                return Err(Error::Singular("exact zero pivot in LU factorization".into()));
            }
            if pivot_row != k {
                for c in 0..n {
                    let tmp = lu.get(k, c);
                    lu.set(k, c, lu.get(pivot_row, c));
                    lu.set(pivot_row, c, tmp);
                }
                perm.swap(k, pivot_row);
            }
            max_pivot = max_pivot.max(pivot_mag);
            min_pivot = min_pivot.min(pivot_mag);
            let pivot = lu.get(k, k);
            for r in k + 1..n {
                let factor = lu.get(r, k) / pivot;
                lu.set(r, k, factor);
                for c in k + 1..n {
                    let cur = lu.get(r, c);
                    lu.set(r, c, cur - factor * lu.get(k, c));
                }
            }
        }
        if max_pivot / min_pivot > SINGULARITY_CONDITION_LIMIT {
            return Err(Error::Singular(format!(
                "condition estimate {:.3e} beyond limit",
                max_pivot / min_pivot
            )));
        }

        // Solve LU x = e_j for each unit vector, undoing the row permutation.
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for (r, slot) in col.iter_mut().enumerate() {
                *slot = if perm[r] == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
            }
            for r in 1..n {
                for k in 0..r {
                    let f = lu.get(r, k);
                    col[r] = col[r] - f * col[k];
                }
            }
            for r in (0..n).rev() {
                for k in r + 1..n {
                    let f = lu.get(r, k);
                    col[r] = col[r] - f * col[k];
                }
                col[r] /= lu.get(r, r);
            }
            for r in 0..n {
                inv.set(r, j, col[r]);
            }
        }
        Ok(inv)
    }

    /// Nearest unitary matrix (polar factor) via Newton iteration.
    ///
    /// Intended for inputs already close to unitary, where two or three
    /// iterations reach machine precision.
    pub fn nearest_unitary(&self) -> Result<ComplexMatrix> {
        assert_eq!(self.rows, self.cols, "nearest_unitary needs a square matrix");
        let n = self.rows;
        let identity = ComplexMatrix::identity(n);
        let mut u = self.clone();
        for _ in 0..20 {
            let inv_h = u.lu_inverse()?.hermitian();
            u = u.add(&inv_h).scale(Complex64::new(0.5, 0.0));
            let drift = u.hermitian().mul(&u).frob_dist_sq(&identity);
            if drift < 1e-30 {
                break;
            }
        }
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{derive_stream, sample_complex_gaussian};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiply_against_hand_computation() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 0.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]]);
        let b = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(0.0, 2.0)]]);
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 0), c(1.0, 5.0));
        assert_eq!(ab.get(1, 0), c(0.0, 1.0));
    }

    #[test]
    fn pseudo_inverse_of_identity_is_identity() {
        let eye = ComplexMatrix::identity(2);
        let pinv = eye.pseudo_inverse().unwrap();
        assert!(pinv.frob_dist_sq(&eye) < 1e-24);
    }

    #[test]
    fn pseudo_inverse_of_scalar() {
        let a = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0)]]);
        let pinv = a.pseudo_inverse().unwrap();
        assert_abs_diff_eq!(pinv.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pinv.get(0, 0).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn pseudo_inverse_residual_on_wide_matrix() {
        let mut stream = derive_stream(7, "pinv-test", 0);
        let a = sample_complex_gaussian(&mut stream, 2, 6, 1.0).unwrap();
        let pinv = a.pseudo_inverse().unwrap();
        let residual = a.mul(&pinv).frob_dist_sq(&ComplexMatrix::identity(2));
        assert!(residual.sqrt() < 1e-10, "residual {residual}");
    }

    #[test]
    fn pseudo_inverse_rejects_rank_deficient_input() {
        let row = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let a = ComplexMatrix::from_rows(&[row.clone(), row]);
        assert!(matches!(a.pseudo_inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn pseudo_inverse_rejects_tall_matrix() {
        let a = ComplexMatrix::zeros(3, 2);
        assert!(matches!(a.pseudo_inverse(), Err(Error::Parameter(_))));
    }

    #[test]
    fn lu_inverse_matches_hand_inverse() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]);
        let inv = a.lu_inverse().unwrap();
        let expected = ComplexMatrix::from_rows(&[vec![c(-2.0, 0.0), c(1.0, 0.0)], vec![c(1.5, 0.0), c(-0.5, 0.0)]]);
        assert!(inv.frob_dist_sq(&expected) < 1e-24);
    }

    #[test]
    fn nearest_unitary_restores_perturbed_rotation() {
        let theta = 0.7_f64;
        let rot = ComplexMatrix::from_rows(&[
            vec![c(theta.cos(), 0.0), c(-theta.sin(), 0.0)],
            vec![c(theta.sin(), 0.0), c(theta.cos(), 0.0)],
        ]);
        let perturbed = rot.scale(c(1.0 + 1e-6, 0.0));
        let u = perturbed.nearest_unitary().unwrap();
        let gram = u.hermitian().mul(&u);
        assert!(gram.frob_dist_sq(&ComplexMatrix::identity(2)) < 1e-24);
        assert!(u.frob_dist_sq(&rot) < 1e-10);
    }

    proptest! {
        #[test]
        fn random_wide_matrices_satisfy_pinv_residual(seed in 0u64..500, rows in 1usize..4, extra in 0usize..5) {
            let cols = rows + extra;
            let mut stream = derive_stream(seed, "pinv-prop", 0);
            let a = sample_complex_gaussian(&mut stream, rows, cols, 1.0).unwrap();
            let pinv = a.pseudo_inverse().unwrap();
            let residual = a.mul(&pinv).frob_dist_sq(&ComplexMatrix::identity(rows)).sqrt();
            prop_assert!(residual < 1e-10);
        }
    }
}
