//! Schur polynomials on eigenvalue lists, rescaled characters, multinomial
//! weights and the unnormalized entropy.
//!
//! Schur polynomials use the branching rule
//! `s_λ(x_1..x_m) = Σ_{μ ≺ λ} x_m^{|λ|-|μ|} s_μ(x_1..x_{m-1})`, whose summands
//! are all non-negative on non-negative inputs. Degenerate spectra need no
//! special handling.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, interlacing, ln_factorial, ln_hook_product, Partition};

/// Eigenvalues sorted in descending order.
#[derive(Clone, PartialEq, Default)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("non-finite eigenvalue".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDescending);
        }
        Ok(Spectrum(values))
    }

    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum(values)
    }

    pub fn zeros(n: usize) -> Self {
        Spectrum(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.0.last().copied().unwrap_or(0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0.0)
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.0.iter().find(|&&v| v < 0.0) {
            Some(&v) => Err(Error::Negative(v)),
            None => Ok(()),
        }
    }

    /// Number of nonzero eigenvalues.
    pub fn rank(&self, tol: f64) -> usize {
        self.0.iter().filter(|v| v.abs() > tol).count()
    }

    pub fn scaled(&self, s: f64) -> Spectrum {
        if s >= 0.0 {
            Spectrum(self.0.iter().map(|v| v * s).collect())
        } else {
            Spectrum::from_unsorted(self.0.iter().map(|v| v * s).collect())
        }
    }

    pub fn shifted(&self, t: f64) -> Spectrum {
        Spectrum(self.0.iter().map(|v| v + t).collect())
    }

    /// `x* = (-x_n, …, -x_1)`.
    pub fn star(&self) -> Spectrum {
        Spectrum(self.0.iter().rev().map(|v| -v).collect())
    }

    pub fn l1_distance(&self, other: &Spectrum) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if v.fract() == 0.0 && v.abs() < 1e15 {
                write!(f, "{v:.1}")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("spectrum must be bracketed: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Spectrum(Vec::new()));
        }
        let values = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad eigenvalue {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(values)
    }
}

fn check_domain(lambda: &Partition, x: &[f64]) -> Result<()> {
    if lambda.depth() > x.len() {
        return Err(Error::DepthExceeded { depth: lambda.depth(), n: x.len() });
    }
    if let Some(&v) = x.iter().find(|&&v| v < 0.0) {
        return Err(Error::Negative(v));
    }
    Ok(())
}

/// Memoized Schur evaluation at a fixed point, reusable across many shapes.
pub struct SchurEvaluator {
    x: Vec<f64>,
    ln_x: Vec<f64>,
    memo: HashMap<(Partition, usize), f64>,
    ln_memo: HashMap<(Partition, usize), f64>,
}

impl SchurEvaluator {
    pub fn new(x: &[f64]) -> Result<Self> {
        if let Some(&v) = x.iter().find(|&&v| v < 0.0) {
            return Err(Error::Negative(v));
        }
        Ok(Self {
            x: x.to_vec(),
            ln_x: x.iter().map(|v| v.ln()).collect(),
            memo: HashMap::new(),
            ln_memo: HashMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn schur(&mut self, lambda: &Partition) -> Result<f64> {
        check_domain(lambda, &self.x)?;
        Ok(self.eval(lambda, self.x.len()))
    }

    /// `ln s_λ(x)`, `-inf` when the polynomial vanishes.
    pub fn ln_schur(&mut self, lambda: &Partition) -> Result<f64> {
        check_domain(lambda, &self.x)?;
        Ok(self.ln_eval(lambda, self.x.len()))
    }

    pub fn phi(&mut self, lambda: &Partition) -> Result<f64> {
        Ok(self.schur(lambda)? * (-ln_hook_product(lambda)).exp())
    }

    pub fn ln_phi(&mut self, lambda: &Partition) -> Result<f64> {
        Ok(self.ln_schur(lambda)? - ln_hook_product(lambda))
    }

    fn eval(&mut self, lambda: &Partition, m: usize) -> f64 {
        if lambda.is_empty() {
            return 1.0;
        }
        if lambda.depth() > m {
            return 0.0;
        }
        if m == 1 {
            return self.x[0].powi(lambda.part(0) as i32);
        }
        let key = (lambda.clone(), m);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let xm = self.x[m - 1];
        let size = lambda.size();
        let mut total = 0.0;
        for mu in interlacing(lambda, m - 1) {
            let e = (size - mu.size()) as i32;
            if xm == 0.0 && e > 0 {
                continue;
            }
            total += xm.powi(e) * self.eval(&mu, m - 1);
        }
        self.memo.insert(key, total);
        total
    }

    fn ln_eval(&mut self, lambda: &Partition, m: usize) -> f64 {
        if lambda.is_empty() {
            return 0.0;
        }
        if lambda.depth() > m {
            return f64::NEG_INFINITY;
        }
        if m == 1 {
            let p = lambda.part(0) as f64;
            return p * self.ln_x[0];
        }
        let key = (lambda.clone(), m);
        if let Some(&v) = self.ln_memo.get(&key) {
            return v;
        }
        let lxm = self.ln_x[m - 1];
        let size = lambda.size();
        let terms: Vec<f64> = interlacing(lambda, m - 1)
            .into_iter()
            .map(|mu| {
                let e = (size - mu.size()) as f64;
                let head = if e == 0.0 { 0.0 } else { e * lxm };
                head + self.ln_eval(&mu, m - 1)
            })
            .collect();
        let v = log_sum_exp(&terms);
        self.ln_memo.insert(key, v);
        v
    }
}

pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

pub fn schur(lambda: &Partition, x: &Spectrum) -> Result<f64> {
    SchurEvaluator::new(x.values())?.schur(lambda)
}

/// Rescaled character `s_λ(x) / H_λ`.
pub fn phi(lambda: &Partition, x: &Spectrum) -> Result<f64> {
    SchurEvaluator::new(x.values())?.phi(lambda)
}

pub fn ln_phi(lambda: &Partition, x: &Spectrum) -> Result<f64> {
    SchurEvaluator::new(x.values())?.ln_phi(lambda)
}

/// Multinomial probability of the composition `λ` under `x / Tr x`.
pub fn multinomial_weight(lambda: &Partition, x: &Spectrum) -> Result<f64> {
    let t = x.trace();
    if t <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    check_domain(lambda, x.values())?;
    let k = lambda.size();
    let mut ln = ln_factorial(k);
    for (i, &xi) in x.values().iter().enumerate() {
        let li = lambda.part(i) as usize;
        if li == 0 {
            continue;
        }
        if xi == 0.0 {
            return Ok(0.0);
        }
        ln += li as f64 * (xi / t).ln() - ln_factorial(li);
    }
    Ok(ln.exp())
}

/// `-Σ x_i ln x_i` with `0 ln 0 = 0`.
pub fn unnormalized_entropy(x: &Spectrum) -> Result<f64> {
    x.check_nonnegative()?;
    Ok(x.values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum())
}

/// `Σ_{λ ⊢ k, depth ≤ n} φ_λ(x)`, which equals `(Tr x)^k / k!`.
pub fn phi_sum(x: &Spectrum, k: usize) -> Result<f64> {
    let mut ev = SchurEvaluator::new(x.values())?;
    enumerate_partitions(k, x.len())
        .iter()
        .map(|l| ev.phi(l))
        .sum()
}
