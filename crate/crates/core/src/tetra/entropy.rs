use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::asymptotics::Witness;
use super::SpectrumTuple;
use crate::error::{Error, Result};
use crate::partitions::{dim_sym_irrep_f64, ln_factorial, weyl_dim_f64, Partition};
use crate::schurweyl::HermitianMatrix;
use crate::symfunc::{unnormalized_entropy, Spectrum};

/// `s(c) + s(f) − s(b) − s(e)` with `s(x) = −Σ x_i ln x_i`.
pub fn entropic_check(t: &SpectrumTuple) -> Result<f64> {
    t.check_nonnegative()?;
    Ok(unnormalized_entropy(&t.c)? + unnormalized_entropy(&t.f)? - unnormalized_entropy(&t.b)? - unnormalized_entropy(&t.e)?)
}

/// `|dim V_λ / n^{|λ|} − (dim W_λ / |λ|!) Π_{(i,j)∈λ} (1 + (j−i)/n)|`.
pub fn hook_ratio_identity(lambda: &Partition, n: usize) -> Result<f64> {
    if lambda.depth() > n {
        return Err(Error::DepthExceeded { depth: lambda.depth(), n });
    }
    let k = lambda.size();
    let lhs = (weyl_dim_f64(lambda, n)?.ln() - k as f64 * (n as f64).ln()).exp();
    let prod: f64 = lambda.contents().iter().map(|&c| 1.0 + c as f64 / n as f64).product();
    let rhs = (dim_sym_irrep_f64(lambda).ln() - ln_factorial(k)).exp() * prod;
    Ok((lhs - rhs).abs())
}

/// A tuple together with PSD matrices realizing it.
#[derive(Clone, Debug)]
pub struct TetraSample {
    pub tuple: SpectrumTuple,
    pub witness: Witness,
}

/// `G G†` for a complex Gaussian `G`.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    HermitianMatrix::new(&g * g.adjoint()).expect("G G† is Hermitian")
}

fn clamp(x: &Spectrum) -> Spectrum {
    Spectrum::from_unsorted(x.values().iter().map(|v| v.max(0.0)).collect())
}

/// Draws PSD `A, B, D` and returns the spectra of `(A,B,A+B,D,A+B+D,B+D)`.
/// Round-off negatives are clamped to zero.
pub fn random_tetra_sample_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TetraSample> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let (x, y, z) = (random_psd(n, rng), random_psd(n, rng), random_psd(n, rng));
    let t = SpectrumTuple::from_matrices(&x, &y, &z)?;
    Ok(TetraSample { tuple: t.map(clamp), witness: Witness { x, y, z } })
}

pub fn random_tetra_sample(n: usize, seed: u64) -> Result<TetraSample> {
    random_tetra_sample_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn scalar_margin() {
        let t = SpectrumTuple::new([s(&[1.0]), s(&[0.0]), s(&[1.0]), s(&[1.0]), s(&[2.0]), s(&[1.0])]).unwrap();
        assert!((entropic_check(&t).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn hook_identity_single_row() {
        for n in 1..6 {
            for m in 0..7 {
                assert!(hook_ratio_identity(&Partition::row(m), n).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn samples_are_trace_valid() {
        for seed in 0..5 {
            let smp = random_tetra_sample(3, seed).unwrap();
            assert!(smp.tuple.is_trace_valid());
            assert!(smp.tuple.is_nonnegative());
        }
    }
}
