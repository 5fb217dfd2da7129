//! Dense tensor engine on `(ℂⁿ)^{⊗k}`.
//!
//! All symmetric-group operators are real permutation matrices, so projectors
//! and multiplicity bases are stored as real matrices. Complex arithmetic only
//! enters through the matrix arguments of the functionals in [`phi`].

pub mod gt;
pub mod haar;
pub mod phi;
pub mod projector;
pub mod sixj;
pub mod words;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::Spectrum;

pub use haar::{haar_expectation_check, haar_unitary, orbit_sample, HaarReport};
pub use phi::{phi_pair, phi_triple, PairFunctional, TripleFunctional};
pub use projector::{isotypic_projector, q_left, q_right, sixj_full, BlockProjector, IsotypicProjector, ProjectorNorms};
pub use sixj::{all_groups, sixj_group, CacheStats, SixJEngine, SixJRecord};

/// Largest tensor dimension `n^k` the dense engine accepts by default.
pub const DEFAULT_DIM_CAP: u128 = 20_000;

pub fn check_cap(n: usize, k: usize, cap: u128) -> Result<()> {
    let dim = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(())
}

/// Complex Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

const HERMITIAN_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

impl HermitianMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidParameter("matrix is not square".into()));
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if (&m - m.adjoint()).iter().any(|z| z.norm() > HERMITIAN_TOL * scale) {
            return Err(Error::InvalidParameter("matrix is not Hermitian".into()));
        }
        Ok(Self((&m + m.adjoint()) * Complex64::new(0.5, 0.0)))
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|v| Complex64::new(v, 0.0)))
    }

    pub fn diagonal(x: &[f64]) -> Self {
        let n = x.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(x[i], 0.0) } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    /// `U diag(x) U†`.
    pub fn conjugated(x: &[f64], u: &DMatrix<Complex64>) -> Self {
        let d = Self::diagonal(x);
        let m = u * &d.0 * u.adjoint();
        Self((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.0.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_unsorted(self.eigenvalues())
    }

    pub fn is_psd(&self) -> bool {
        self.eigenvalues().last().is_none_or(|&m| m >= -PSD_TOL)
    }

    pub fn check_psd(&self) -> Result<()> {
        if self.is_psd() {
            Ok(())
        } else {
            Err(Error::Negative(self.eigenvalues().last().copied().unwrap_or(0.0)))
        }
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::SizeMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(Self(&self.0 + &other.0))
    }

    pub fn scaled(&self, s: f64) -> HermitianMatrix {
        Self(&self.0 * Complex64::new(s, 0.0))
    }
}

impl std::ops::Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix(&self.0 + &rhs.0)
    }
}

/// Six partitions `(α,β,γ,δ,ε,φ)` labelling a 6j symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixJLabel {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
    pub delta: Partition,
    pub epsilon: Partition,
    pub phi: Partition,
}

impl SixJLabel {
    pub fn new(
        alpha: Partition,
        beta: Partition,
        gamma: Partition,
        delta: Partition,
        epsilon: Partition,
        phi: Partition,
    ) -> Self {
        Self { alpha, beta, gamma, delta, epsilon, phi }
    }

    /// `|α|+|β|=|γ|`, `|β|+|δ|=|φ|`, `|α|+|φ|=|ε|`, `|γ|+|δ|=|ε|`.
    pub fn size_conditions(&self) -> bool {
        let (a, b, c, d, e, f) = self.sizes();
        a + b == c && b + d == f && a + f == e && c + d == e
    }

    fn sizes(&self) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.alpha.size(),
            self.beta.size(),
            self.gamma.size(),
            self.delta.size(),
            self.epsilon.size(),
            self.phi.size(),
        )
    }

    pub fn degree(&self) -> usize {
        self.epsilon.size()
    }

    pub fn max_depth(&self) -> usize {
        self.parts().iter().map(|p| p.depth()).max().unwrap_or(0)
    }

    /// Slots in the order `α, β, γ, δ, ε, φ`.
    pub fn parts(&self) -> [&Partition; 6] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta, &self.epsilon, &self.phi]
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if !self.size_conditions() {
            return Err(Error::InvalidParameter(format!("label {self} violates the size conditions")));
        }
        let depth = self.max_depth();
        if depth > n {
            return Err(Error::DepthExceeded { depth, n });
        }
        Ok(())
    }
}

impl fmt::Display for SixJLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.parts();
        write!(f, "{};{};{};{};{};{}", p[0], p[1], p[2], p[3], p[4], p[5])
    }
}

impl FromStr for SixJLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let items: Vec<&str> = s.split(';').collect();
        if items.len() != 6 {
            return Err(Error::Parse(format!("expected six ';'-separated partitions, got {}", items.len())));
        }
        let p: Vec<Partition> = items.iter().map(|t| t.trim().parse()).collect::<Result<_>>()?;
        let mut it = p.into_iter();
        let mut next = || it.next().unwrap();
        Ok(Self::new(next(), next(), next(), next(), next(), next()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        let l: SixJLabel = "[1];[1];[2];[1];[3];[2]".parse().unwrap();
        assert!(l.size_conditions());
        assert_eq!(l.to_string(), "[1];[1];[2];[1];[3];[2]");
        let bad: SixJLabel = "[1];[1];[2];[1];[3];[1]".parse().unwrap();
        assert!(!bad.size_conditions());
        assert!("[1];[1]".parse::<SixJLabel>().is_err());
    }

    #[test]
    fn hermitian_validation() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 1.0]);
        assert!(HermitianMatrix::from_real(&m).is_err());
        let h = HermitianMatrix::from_real(&DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        let ev = h.eigenvalues();
        assert!((ev[0] - 3.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
        assert!(h.is_psd());
    }

    #[test]
    fn cap_guard() {
        assert!(check_cap(2, 14, DEFAULT_DIM_CAP).is_ok());
        assert!(check_cap(2, 15, DEFAULT_DIM_CAP).is_err());
    }
}
