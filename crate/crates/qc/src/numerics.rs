//! Dense complex-matrix arithmetic and the equivalence predicates the rest
//! of the crate is built on.
//!
//! Matrices are square, row-major and double precision. Everything here is a
//! pure function over immutable values; all comparisons are elementwise in
//! absolute value.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix dimension any operation will produce (2^20).
pub const MAX_DIM: usize = 1 << 20;

/// Default comparison tolerance for unitarity and equivalence checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dense square matrix of complex numbers, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Outcome of a phase-aware matrix comparison.
///
/// `phase` is the global phase `φ` in `(−π, π]` that best aligns the two
/// operands; `max_abs_deviation` is the largest elementwise residual after
/// applying it. `equivalent` is true only when that residual is within the
/// tolerance supplied to the check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub phase: f64,
    pub max_abs_deviation: f64,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects empty dimensions,
    /// entry counts that do not match `dim * dim`, and non-finite values.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from nested row slices; all rows must have the same
    /// length as there are rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Standard matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: block `(r, c)` of the result is `self[r][c] * other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self
            .dim
            .checked_mul(other.dim)
            .filter(|&d| d <= MAX_DIM)
            .ok_or(Error::Capacity {
                requested: self.dim.saturating_mul(other.dim),
                limit: MAX_DIM,
            })?;
        let m = other.dim;
        let mut out = Self::zeros(dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let a = self.get(r, c);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i in 0..m {
                    for j in 0..m {
                        out.set(r * m + i, c * m + j, a * other.get(i, j));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    /// True iff `self * self†` deviates from the identity by at most `tol`
    /// in every entry.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let product = self
            .matmul(&self.dagger())
            .expect("dimensions match by construction");
        product.max_abs_diff(&Self::identity(self.dim)).unwrap() <= tol
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Elementwise scaling by a complex factor.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest elementwise absolute difference between two matrices.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// True iff every off-diagonal entry has magnitude at most `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c && self.get(r, c).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Compares `a` and `b` modulo a global phase.
///
/// The candidate phase is taken from the normalized trace of `a† b`: if
/// `b = e^{iφ} a` the trace of `a† b` is `e^{iφ} · dim` for unitary `a`.
/// When that trace has negligible modulus there is no well-defined phase and
/// the operands are reported as not equivalent.
pub fn equal_up_to_global_phase(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<EquivalenceReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    let trace = a.dagger().matmul(b)?.trace();
    if trace.norm() < 1e-12 {
        return Ok(EquivalenceReport {
            equivalent: false,
            phase: 0.0,
            max_abs_deviation: a.max_abs_diff(b)?,
        });
    }
    let phase = (trace / a.dim() as f64).arg();
    let rotated = a.scale(Complex64::from_polar(1.0, phase));
    let max_abs_deviation = rotated.max_abs_diff(b)?;
    Ok(EquivalenceReport {
        equivalent: max_abs_deviation <= tol,
        phase,
        max_abs_deviation,
    })
}

/// Maps an angle into `(−π, π]`.
pub fn normalize_angle(angle: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = angle.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}
