//! Haar-random unitaries and the orbit average of `φ^{αβδ}_{γεφ}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::phi::TripleFunctional;
use super::sixj::sixj_group;
use super::{HermitianMatrix, SixJLabel};
use crate::error::{Error, Result};
use crate::partitions::weyl_dim_f64;
use crate::symfunc::{phi, Spectrum};

/// QR of a complex Gaussian matrix with the phases of `R`'s diagonal moved
/// into `Q`, which makes `Q` Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `U diag(x) U†` with `U` Haar distributed.
pub fn orbit_sample<R: Rng + ?Sized>(x: &Spectrum, rng: &mut R) -> HermitianMatrix {
    let u = haar_unitary(x.len(), rng);
    HermitianMatrix::conjugated(x.values(), &u)
}

#[derive(Clone, Debug)]
pub struct HaarReport {
    pub label: SixJLabel,
    pub samples: usize,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub imag_mean: f64,
    pub target: f64,
    pub two_norm_sq: f64,
    pub rel_error: f64,
}

impl HaarReport {
    /// Relative error within `rel_tol`; a zero target instead requires the
    /// estimate to sit within five standard errors of zero.
    pub fn passed(&self, rel_tol: f64) -> bool {
        if self.target == 0.0 {
            self.estimate.abs() <= 5.0 * self.std_error + 1e-12
        } else {
            self.rel_error <= rel_tol
        }
    }
}

/// Monte-Carlo estimate of `E[φ^L(X,Y,Z)] / dim V_ε` over orbit-uniform
/// `X ~ O_a, Y ~ O_b, Z ~ O_d`, against `‖6j‖₂² Π φ_λ(x)/dim V_λ`.
pub fn haar_expectation_check(
    label: &SixJLabel,
    a: &Spectrum,
    b: &Spectrum,
    d: &Spectrum,
    samples: usize,
    seed: u64,
    cap: u128,
) -> Result<HaarReport> {
    let n = a.len();
    if b.len() != n || d.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: b.len().max(d.len()) });
    }
    for s in [a, b, d] {
        s.check_nonnegative()?;
    }
    label.check(n)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample is required".into()));
    }
    let two_norm_sq = sixj_group(&label.alpha, &label.beta, &label.delta, &label.epsilon, n, cap)?
        .into_iter()
        .find(|r| &r.label == label)
        .map_or(0.0, |r| r.two_norm_sq);
    let mut target = two_norm_sq;
    for (lam, x) in [(&label.alpha, a), (&label.beta, b), (&label.delta, d)] {
        target *= phi(lam, x)? / weyl_dim_f64(lam, n)?;
    }
    let dim_eps = weyl_dim_f64(&label.epsilon, n)?;
    let f = TripleFunctional::new(&label.alpha, &label.beta, &label.delta, n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq, mut sum_im) = (0.0, 0.0, 0.0);
    for _ in 0..samples {
        let x = orbit_sample(a, &mut rng);
        let y = orbit_sample(b, &mut rng);
        let z = orbit_sample(d, &mut rng);
        let v = f
            .evaluate(&x, &y, &z)?
            .into_iter()
            .find(|(l, _)| l == label)
            .map_or(Complex64::new(0.0, 0.0), |(_, v)| v)
            / dim_eps;
        sum += v.re;
        sum_sq += v.re * v.re;
        sum_im += v.im;
    }
    let m = samples as f64;
    let estimate = sum / m;
    let var = if samples > 1 { ((sum_sq - m * estimate * estimate) / (m - 1.0)).max(0.0) } else { 0.0 };
    let rel_error = if target != 0.0 { (estimate - target).abs() / target.abs() } else { f64::INFINITY };
    Ok(HaarReport {
        label: label.clone(),
        samples,
        seed,
        estimate,
        std_error: (var / m).sqrt(),
        imag_mean: sum_im / m,
        target,
        two_norm_sq,
        rel_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(3, &mut rng);
        let id = DMatrix::<Complex64>::identity(3, 3);
        assert!((u.adjoint() * &u - id).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn scalar_case_is_exact() {
        let l: SixJLabel = "[1];[1];[2];[1];[3];[2]".parse().unwrap();
        let x = Spectrum::new(vec![2.0]).unwrap();
        let r = haar_expectation_check(&l, &x, &x, &x, 3, 0, 1 << 20).unwrap();
        assert!((r.estimate - r.target).abs() < 1e-12 * r.target);
        assert_eq!(r.std_error, 0.0);
    }
}
