//! Finite distributions, the Schur–Weyl distribution and the spectrum
//! estimation and separation bounds.

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, ln_factorial, Partition};
use crate::symfunc::{ln_phi, Spectrum};

const NORMALIZED_TOL: f64 = 1e-12;

/// Non-negative weights on `0..len`, normalized or with a recorded total.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    weights: Vec<f64>,
    total: f64,
}

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(&w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::Negative(w));
        }
        let total = weights.iter().sum();
        Ok(Self { weights, total })
    }

    /// Rescales to total mass one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let d = Self::new(weights)?;
        if d.total <= 0.0 {
            return Err(Error::ZeroTrace);
        }
        let t = d.total;
        Ok(Self { weights: d.weights.into_iter().map(|w| w / t).collect(), total: 1.0 })
    }

    /// `x / Tr x`.
    pub fn from_spectrum(x: &Spectrum) -> Result<Self> {
        x.check_nonnegative()?;
        Self::normalized(x.values().to_vec())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        (self.total - 1.0).abs() <= NORMALIZED_TOL
    }
}

fn same_support(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { expected: p.len(), got: q.len() });
    }
    Ok(())
}

/// `½‖p − q‖₁`.
pub fn kolmogorov(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_support(p, q)?;
    Ok(0.5 * p.weights.iter().zip(&q.weights).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// `Σ √(p_i q_i)`; unnormalized inputs must share their total.
pub fn bhattacharyya(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_support(p, q)?;
    if (p.total - q.total).abs() > 1e-9 * p.total.abs().max(q.total.abs()).max(1.0) {
        return Err(Error::TraceMismatch(format!("totals {} and {} differ", p.total, q.total)));
    }
    Ok(p.weights.iter().zip(&q.weights).map(|(a, b)| (a * b).sqrt()).sum())
}

/// `Σ p_i ln(p_i/q_i)`, with `0·ln(0/q) = 0` and `+∞` when `p_i > 0 = q_i`.
pub fn kl(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_support(p, q)?;
    let mut s = 0.0;
    for (&a, &b) in p.weights.iter().zip(&q.weights) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        s += a * (a / b).ln();
    }
    Ok(s.max(0.0))
}

/// `SW_x` over the partitions of `k` with at most `len(x)` rows.
#[derive(Clone, Debug)]
pub struct SchurWeylDist {
    pub k: usize,
    pub partitions: Vec<Partition>,
    pub dist: Distribution,
}

impl SchurWeylDist {
    pub fn prob(&self, lambda: &Partition) -> f64 {
        self.partitions.iter().position(|p| p == lambda).map_or(0.0, |i| self.dist.weights[i])
    }
}

/// `SW_x(λ) = (k!/Tr[x]^k) φ_λ(x)`, evaluated in the log domain.
pub fn schur_weyl_dist(x: &Spectrum, k: usize) -> Result<SchurWeylDist> {
    x.check_nonnegative()?;
    let tr = x.trace();
    if tr <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let partitions = enumerate_partitions(k, x.len());
    let log_norm = ln_factorial(k) - k as f64 * tr.ln();
    let weights = partitions
        .iter()
        .map(|lam| Ok((ln_phi(lam, x)? + log_norm).exp()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchurWeylDist { k, partitions, dist: Distribution::new(weights)? })
}

/// `(k+1)^{n(n−1)/2}`.
pub fn poly_prefactor(k: usize, n: usize) -> f64 {
    ((k + 1) as f64).powf((n * n.saturating_sub(1) / 2) as f64)
}

/// `(k+1)^{n(n−1)/2} exp(−k KL(λ/k ‖ x/Tr x))` with `k = |λ|`.
pub fn eig_est_bound(lambda: &Partition, x: &Spectrum, n: usize) -> Result<f64> {
    let k = lambda.size();
    let p_lambda = Distribution::normalized(lambda.padded(x.len())?.into_iter().map(f64::from).collect())
        .unwrap_or_else(|_| Distribution { weights: vec![0.0; x.len()], total: 1.0 });
    let p_x = Distribution::from_spectrum(x)?;
    let d = kl(&p_lambda, &p_x)?;
    Ok(poly_prefactor(k, n) * (-(k as f64) * d).exp())
}

fn check_equal_traces(x: &Spectrum, y: &Spectrum) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    let (tx, ty) = (x.trace(), y.trace());
    if (tx - ty).abs() > 1e-9 * tx.abs().max(ty.abs()).max(1.0) {
        return Err(Error::TraceMismatch(format!("Tr x = {tx} but Tr y = {ty}")));
    }
    Ok(())
}

/// `(k+1)^{n(n−1)/2} BC(p^x, p^y)^k`.
pub fn eig_sep_bound(x: &Spectrum, y: &Spectrum, k: usize, n: usize) -> Result<f64> {
    check_equal_traces(x, y)?;
    let bc = bhattacharyya(&Distribution::from_spectrum(x)?, &Distribution::from_spectrum(y)?)?;
    Ok(poly_prefactor(k, n) * bc.powi(k as i32))
}

/// Exact `BC(SW_x, SW_y)` at degree `k`.
pub fn sw_bhattacharyya(x: &Spectrum, y: &Spectrum, k: usize) -> Result<f64> {
    check_equal_traces(x, y)?;
    bhattacharyya(&schur_weyl_dist(x, k)?.dist, &schur_weyl_dist(y, k)?.dist)
}

/// Right side of `√(φ_λ(x)φ_λ(y)) ≤ (k+1)^{n(n−1)/2} BC(x,y)^k / k!` with the
/// unnormalized coefficient `BC(x,y) = Σ √(x_i y_i)`.
pub fn weak_eig_sep_rhs(x: &Spectrum, y: &Spectrum, k: usize, n: usize) -> Result<f64> {
    check_equal_traces(x, y)?;
    let bc: f64 = x.values().iter().zip(y.values()).map(|(a, b)| (a * b).max(0.0).sqrt()).sum();
    Ok((poly_prefactor(k, n).ln() + k as f64 * bc.ln() - ln_factorial(k)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_weyl_two_qubits() {
        let d = schur_weyl_dist(&s(&[1.0, 1.0]), 2).unwrap();
        assert!((d.prob(&Partition::row(2)) - 0.75).abs() < 1e-14);
        assert!((d.prob(&Partition::new(vec![1, 1]).unwrap()) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn rank_one_concentrates() {
        let d = schur_weyl_dist(&s(&[3.0, 0.0, 0.0]), 5).unwrap();
        assert!((d.prob(&Partition::row(5)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn functionals_on_disjoint_support() {
        let p = Distribution::new(vec![1.0, 0.0]).unwrap();
        let q = Distribution::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(bhattacharyya(&p, &q).unwrap(), 0.0);
        assert_eq!(kolmogorov(&p, &q).unwrap(), 1.0);
        assert_eq!(kl(&p, &q).unwrap(), f64::INFINITY);
        assert_eq!(kl(&p, &p).unwrap(), 0.0);
        assert!(kolmogorov(&p, &Distribution::new(vec![1.0]).unwrap()).is_err());
    }

    #[test]
    fn eig_est_at_proportional_point() {
        let lam = Partition::new(vec![6, 4]).unwrap();
        let b = eig_est_bound(&lam, &s(&[0.6, 0.4]), 2).unwrap();
        assert!((b - 11.0).abs() < 1e-12);
    }

    #[test]
    fn eig_sep_example() {
        let (x, y) = (s(&[1.0, 0.0]), s(&[0.5, 0.5]));
        let bc = sw_bhattacharyya(&x, &y, 10).unwrap();
        assert!(bc <= eig_sep_bound(&x, &y, 10, 2).unwrap());
        assert!(eig_sep_bound(&x, &s(&[2.0, 0.0]), 3, 2).is_err());
    }
}
