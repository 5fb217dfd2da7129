//! Upper bounds on `D` by local search over `(A, B, D)`.
//!
//! `orbit` mode keeps `A = diag(a)` and moves `B = V_b diag(b) V_b†`,
//! `D = V_d diag(d) V_d†` along `V ← exp(iK) V`. `free` mode starts from the
//! best orbit witness and moves the three matrices as arbitrary Hermitian
//! matrices. Each restart minimizes the squared-`ℓ₂` residual first and then
//! the smoothed `ℓ₁` objective `Σ_s (Σ_i √(u_i² + η²) − η)²` while `η` is
//! annealed.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SpectrumTuple;
use crate::error::{Error, Result};
use crate::schurweyl::{haar_unitary, HermitianMatrix};
use crate::symfunc::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Orbit,
    Free,
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMode::Orbit => "orbit",
            DistanceMode::Free => "free",
        })
    }
}

impl FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orbit" => Ok(DistanceMode::Orbit),
            "free" => Ok(DistanceMode::Free),
            _ => Err(Error::Parse(format!("unknown distance mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    pub restarts: usize,
    /// Iteration cap of each stage.
    pub iters: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { restarts: 8, iters: 2000, seed: 0 }
    }
}

const ETAS: [f64; 4] = [1e-2, 1e-4, 1e-6, 1e-8];
const GRAD_TOL: f64 = 1e-12;
const ZERO_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct DistanceCertificate {
    pub mode: DistanceMode,
    /// `[Σ_s ‖x_s − eig X_s‖₁²]^{1/2}` at the witness.
    pub objective: f64,
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub d: HermitianMatrix,
    /// `‖x_s − eig X_s‖₁` for the slots `a..f`.
    pub residuals: [f64; 6],
    pub converged: bool,
    pub restarts: usize,
}

impl DistanceCertificate {
    pub fn witness_tuple(&self) -> SpectrumTuple {
        SpectrumTuple::from_matrices(&self.a, &self.b, &self.d).expect("witness matrices share a size")
    }
}

/// Slot matrices `(A, B, A+B, D, A+B+D, B+D)`.
fn slot_matrices(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, d: &DMatrix<Complex64>) -> [DMatrix<Complex64>; 6] {
    let c = a + b;
    let e = &c + d;
    let f = b + d;
    [a.clone(), b.clone(), c, d.clone(), e, f]
}

/// Descending eigenvalues and matching eigenvectors (as columns).
fn eigh(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let se = h.symmetric_eigen();
    let mut idx: Vec<usize> = (0..se.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| se.eigenvalues[j].total_cmp(&se.eigenvalues[i]));
    let vals = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| se.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

#[derive(Clone, Copy)]
enum Loss {
    L2,
    SmoothL1(f64),
}

/// Objective and its gradient with respect to each slot matrix.
fn loss_and_grads(targets: &[Spectrum; 6], mats: &[DMatrix<Complex64>; 6], loss: Loss, active: [bool; 6]) -> (f64, [DMatrix<Complex64>; 6]) {
    let n = mats[0].nrows();
    let mut total = 0.0;
    let grads = std::array::from_fn(|s| {
        if !active[s] {
            return DMatrix::zeros(n, n);
        }
        let (lam, v) = eigh(&mats[s]);
        let u: Vec<f64> = targets[s].values().iter().zip(&lam).map(|(x, l)| x - l).collect();
        // d(loss)/d(lambda_i)
        let w: Vec<f64> = match loss {
            Loss::L2 => {
                total += u.iter().map(|x| x * x).sum::<f64>();
                u.iter().map(|x| -2.0 * x).collect()
            }
            Loss::SmoothL1(eta) => {
                let h: f64 = u.iter().map(|x| (x * x + eta * eta).sqrt() - eta).sum();
                total += h * h;
                u.iter().map(|x| -2.0 * h * x / (x * x + eta * eta).sqrt()).collect()
            }
        };
        let scaled = DMatrix::from_fn(n, n, |r, c| v[(r, c)] * w[c]);
        scaled * v.adjoint()
    });
    (total, grads)
}

fn exact_residuals(targets: &[Spectrum; 6], mats: &[DMatrix<Complex64>; 6]) -> [f64; 6] {
    std::array::from_fn(|s| {
        let (lam, _) = eigh(&mats[s]);
        targets[s].values().iter().zip(&lam).map(|(x, l)| (x - l).abs()).sum()
    })
}

fn objective_of(res: &[f64; 6]) -> f64 {
    res.iter().map(|r| r * r).sum::<f64>().sqrt()
}

/// `exp(iK)` for Hermitian `K`.
fn unitary_exp(k: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let h = (k + k.adjoint()) * Complex64::new(0.5, 0.0);
    let se = h.symmetric_eigen();
    let n = k.nrows();
    let phases = DVector::from_fn(n, |i, _| Complex64::from_polar(1.0, se.eigenvalues[i]));
    let q = &se.eigenvectors;
    DMatrix::from_fn(n, n, |r, c| q[(r, c)] * phases[c]) * q.adjoint()
}

fn diag(x: &Spectrum) -> DMatrix<Complex64> {
    HermitianMatrix::diagonal(x.values()).into_matrix()
}

fn conj(v: &DMatrix<Complex64>, x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    v * x * v.adjoint()
}

struct Problem<'a> {
    targets: &'a [Spectrum; 6],
    da: DMatrix<Complex64>,
    db: DMatrix<Complex64>,
    dd: DMatrix<Complex64>,
}

impl Problem<'_> {
    fn orbit_state(&self, vb: &DMatrix<Complex64>, vd: &DMatrix<Complex64>) -> [DMatrix<Complex64>; 6] {
        slot_matrices(&self.da, &conj(vb, &self.db), &conj(vd, &self.dd))
    }

    fn orbit_eval(&self, v: &[DMatrix<Complex64>; 2], loss: Loss) -> (f64, Vec<DMatrix<Complex64>>) {
        let i = Complex64::new(0.0, 1.0);
        let b = conj(&v[0], &self.db);
        let d = conj(&v[1], &self.dd);
        let (f, g) = loss_and_grads(self.targets, &slot_matrices(&self.da, &b, &d), loss, [false, false, true, false, true, true]);
        let gb = &g[2] + &g[4] + &g[5];
        let gd = &g[4] + &g[5];
        // f(exp(iK)V) changes by Tr(K · i[X, G]) to first order
        let kb = (&b * &gb - &gb * &b) * (-i);
        let kd = (&d * &gd - &gd * &d) * (-i);
        (f, vec![kb, kd])
    }

    /// One annealing stage on the unitary orbit parameters.
    fn orbit_stage(&self, v: &mut [DMatrix<Complex64>; 2], loss: Loss, iters: usize) -> bool {
        descend(
            v,
            |v| self.orbit_eval(v, loss),
            |v, dirs, t| {
                let c = Complex64::new(t, 0.0);
                [unitary_exp(&(&dirs[0] * c)) * &v[0], unitary_exp(&(&dirs[1] * c)) * &v[1]]
            },
            iters,
        )
    }

    fn free_eval(&self, m: &[DMatrix<Complex64>; 3], loss: Loss) -> (f64, Vec<DMatrix<Complex64>>) {
        let (f, g) = loss_and_grads(self.targets, &slot_matrices(&m[0], &m[1], &m[2]), loss, [true; 6]);
        let ga = &g[0] + &g[2] + &g[4];
        let gb = &g[1] + &g[2] + &g[4] + &g[5];
        let gd = &g[3] + &g[4] + &g[5];
        (f, vec![-ga, -gb, -gd])
    }

    /// One annealing stage on unconstrained Hermitian `(A, B, D)`.
    fn free_stage(&self, m: &mut [DMatrix<Complex64>; 3], loss: Loss, iters: usize) -> bool {
        descend(
            m,
            |m| self.free_eval(m, loss),
            |m, dirs, t| {
                let c = Complex64::new(t, 0.0);
                [&m[0] + &dirs[0] * c, &m[1] + &dirs[1] * c, &m[2] + &dirs[2] * c]
            },
            iters,
        )
    }
}

fn inner(x: &[DMatrix<Complex64>], y: &[DMatrix<Complex64>]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a.iter().zip(b.iter()).map(|(u, v)| (u.conj() * v).re).sum::<f64>()).sum()
}

/// Descent along `dirs` (the negative gradient) with Barzilai–Borwein trial
/// steps and Armijo backtracking. Returns whether a stopping test was met
/// before the iteration cap.
fn descend<S>(
    state: &mut S,
    eval: impl Fn(&S) -> (f64, Vec<DMatrix<Complex64>>),
    advance: impl Fn(&S, &[DMatrix<Complex64>], f64) -> S,
    iters: usize,
) -> bool {
    let (mut f, mut dirs) = eval(state);
    let mut step = 1.0;
    for _ in 0..iters {
        let gn = inner(&dirs, &dirs);
        if gn < GRAD_TOL * GRAD_TOL || f < ZERO_TOL {
            return true;
        }
        let mut t = step;
        loop {
            let next = advance(state, &dirs, t);
            let (nf, nd) = eval(&next);
            if nf <= f - 1e-4 * t * gn {
                let denom = gn - inner(&dirs, &nd);
                step = if denom > 0.0 { (t * gn / denom).clamp(1e-12, 1e12) } else { (2.0 * t).min(1e12) };
                *state = next;
                f = nf;
                dirs = nd;
                break;
            }
            t *= 0.5;
            if t < 1e-20 {
                return true;
            }
        }
    }
    false
}

fn stages() -> impl Iterator<Item = Loss> {
    std::iter::once(Loss::L2).chain(ETAS.iter().map(|&e| Loss::SmoothL1(e)))
}

fn orbit_search(targets: &[Spectrum; 6], budget: &Budget) -> (DMatrix<Complex64>, DMatrix<Complex64>, DMatrix<Complex64>, [f64; 6], bool) {
    let n = targets[0].len();
    let p = Problem { targets, da: diag(&targets[0]), db: diag(&targets[1]), dd: diag(&targets[3]) };
    let runs: Vec<_> = (0..budget.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_mul(1_000_003).wrapping_add(r as u64));
            let mut v = [haar_unitary(n, &mut rng), haar_unitary(n, &mut rng)];
            let mut converged = true;
            for loss in stages() {
                converged = p.orbit_stage(&mut v, loss, budget.iters);
            }
            let mats = p.orbit_state(&v[0], &v[1]);
            let res = exact_residuals(targets, &mats);
            (objective_of(&res), mats, res, converged)
        })
        .collect();
    let (_, mats, res, converged) = runs.into_iter().min_by(|x, y| x.0.total_cmp(&y.0)).expect("at least one restart");
    let [a, b, _, d, _, _] = mats;
    (a, b, d, res, converged)
}

/// Best-found upper bound on `D(t)` in the requested mode.
pub fn distance_d(t: &SpectrumTuple, mode: DistanceMode, budget: &Budget) -> Result<DistanceCertificate> {
    t.check_trace_valid()?;
    if t.n() == 0 {
        return Err(Error::InvalidParameter("empty spectra".into()));
    }
    let targets: [Spectrum; 6] = t.clone().into_slots();
    let (mut a, mut b, mut d, mut res, mut converged) = orbit_search(&targets, budget);
    if mode == DistanceMode::Free {
        let p = Problem { targets: &targets, da: a.clone(), db: b.clone(), dd: d.clone() };
        let mut m = [a.clone(), b.clone(), d.clone()];
        for loss in stages() {
            converged = p.free_stage(&mut m, loss, budget.iters);
        }
        let mats = slot_matrices(&m[0], &m[1], &m[2]);
        let free_res = exact_residuals(&targets, &mats);
        if objective_of(&free_res) <= objective_of(&res) {
            [a, b, d] = m;
            res = free_res;
        }
    }
    let herm = |m: DMatrix<Complex64>| HermitianMatrix::new(m).expect("iterates stay Hermitian");
    Ok(DistanceCertificate {
        mode,
        objective: objective_of(&res),
        a: herm(a),
        b: herm(b),
        d: herm(d),
        residuals: res,
        converged,
        restarts: budget.restarts.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unitary_exp_is_unitary() {
        let k = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.3, 0.0), Complex64::new(0.1, 0.4),
            Complex64::new(0.1, -0.4), Complex64::new(-0.7, 0.0),
        ]);
        let u = unitary_exp(&k);
        assert!((u.adjoint() * &u - DMatrix::identity(2, 2)).iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn commuting_member_reaches_zero() {
        let t = SpectrumTuple::new([s(&[2.0, 0.0]), s(&[1.0, 0.0]), s(&[3.0, 0.0]), s(&[0.5, 0.0]), s(&[3.5, 0.0]), s(&[1.5, 0.0])]).unwrap();
        let c = distance_d(&t, DistanceMode::Orbit, &Budget { restarts: 4, ..Budget::default() }).unwrap();
        assert!(c.objective < 1e-6, "{}", c.objective);
        let w = c.witness_tuple();
        assert!(w.c.l1_distance(&t.c) < 1e-6);
    }

    #[test]
    fn scalar_tuple_objective_is_exact() {
        let t = SpectrumTuple::new([s(&[1.0]), s(&[1.0]), s(&[3.0]), s(&[1.0]), s(&[3.0]), s(&[2.0])]).unwrap();
        assert!(!t.is_trace_valid());
        let t = SpectrumTuple::new([s(&[1.0]), s(&[1.0]), s(&[2.0]), s(&[1.0]), s(&[3.0]), s(&[2.0])]).unwrap();
        let c = distance_d(&t, DistanceMode::Free, &Budget::default()).unwrap();
        assert!(c.objective < 1e-12);
    }
}
