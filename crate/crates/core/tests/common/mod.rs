//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use tetra_horn::partitions::{dim_sym_irrep_f64, factorial, sym_character, Partition};
use tetra_horn::schurweyl::SixJLabel;
use tetra_horn::{Spectrum, SpectrumTuple};

pub fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

pub fn s(v: &[f64]) -> Spectrum {
    Spectrum::new(v.to_vec()).unwrap()
}

/// Tuple of traceless `n = 2` spectra `(ℓ, −ℓ)`.
pub fn traceless2(l: [f64; 6]) -> SpectrumTuple {
    SpectrumTuple::new(l.map(|x| s(&[x, -x]))).unwrap()
}

/// Edge lengths of the stored Cayley–Menger-violating tuple: every face is a
/// valid triangle but no tetrahedron exists.
pub const STORED_NONMEMBER: [f64; 6] = [5.0, 5.0, 9.0, 5.0, 5.0, 9.0];

fn fact(n: i64) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

fn delta(a: f64, b: f64, c: f64) -> f64 {
    let t = |x: f64| x.round() as i64;
    (fact(t(a + b - c)) * fact(t(a - b + c)) * fact(t(-a + b + c)) / fact(t(a + b + c + 1.0))).sqrt()
}

fn triangle(a: f64, b: f64, c: f64) -> bool {
    c <= a + b + 1e-9 && c >= (a - b).abs() - 1e-9 && ((a + b + c).round() - (a + b + c)).abs() < 1e-9
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}` by the Racah sum.
pub fn wigner6j(j1: f64, j2: f64, j3: f64, j4: f64, j5: f64, j6: f64) -> f64 {
    if !(triangle(j1, j2, j3) && triangle(j1, j5, j6) && triangle(j4, j2, j6) && triangle(j4, j5, j3)) {
        return 0.0;
    }
    let pre = delta(j1, j2, j3) * delta(j1, j5, j6) * delta(j4, j2, j6) * delta(j4, j5, j3);
    let a = [j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3].map(|x| x.round() as i64);
    let b = [j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4].map(|x| x.round() as i64);
    let lo = *a.iter().max().unwrap();
    let hi = *b.iter().min().unwrap();
    let mut sum = 0.0;
    for t in lo..=hi {
        let den: f64 = a.iter().map(|&x| fact(t - x)).product::<f64>() * b.iter().map(|&x| fact(x - t)).product::<f64>();
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * fact(t + 1) / den;
    }
    pre * sum
}

fn spin(l: &Partition) -> f64 {
    (l.part(0) as f64 - l.part(1) as f64) / 2.0
}

/// `n = 2` operator norm predicted by recoupling theory:
/// `√((2j_γ+1)(2j_φ+1)) · |{j_α j_β j_γ; j_δ j_ε j_φ}|`.
pub fn racah_norm(l: &SixJLabel) -> f64 {
    let [a, b, c, d, e, f] = [&l.alpha, &l.beta, &l.gamma, &l.delta, &l.epsilon, &l.phi].map(spin);
    ((2.0 * c + 1.0) * (2.0 * f + 1.0)).sqrt() * wigner6j(a, b, c, d, e, f).abs()
}

/// All permutations of `0..k` (as images of each position).
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for i in 0..perm.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    Partition::from_unsorted(lens)
}

/// `Π^λ = (dim W_λ / k!) Σ_σ χ_λ(σ) ρ(σ)` on `(ℂⁿ)^{⊗k}`, words encoded
/// big-endian in base `n`.
pub fn character_projector(lambda: &Partition, n: usize) -> DMatrix<f64> {
    let k = lambda.size();
    let dim = n.pow(k as u32);
    let mut out = DMatrix::zeros(dim, dim);
    let scale = dim_sym_irrep_f64(lambda) / factorial(k);
    for sigma in permutations(k) {
        let chi = sym_character(lambda, &cycle_type(&sigma)).unwrap() as f64;
        if chi == 0.0 {
            continue;
        }
        for code in 0..dim {
            let mut word = vec![0usize; k];
            let mut c = code;
            for j in (0..k).rev() {
                word[j] = c % n;
                c /= n;
            }
            let image = (0..k).fold(0, |acc, j| acc * n + word[sigma[j]]);
            out[(image, code)] += scale * chi;
        }
    }
    out
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}
