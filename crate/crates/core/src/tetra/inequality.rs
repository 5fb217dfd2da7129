use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::schurweyl::{all_groups, SixJEngine, SixJLabel};
use crate::symfunc::{log_sum_exp, SchurEvaluator};

use super::SpectrumTuple;

/// Relative slack below which an inequality counts as violated.
pub const SLACK_TOL: f64 = 1e-9;

/// One `(α,β,δ)` inequality. `lhs` and `rhs` are natural logarithms of the
/// two sides after rescaling the tuple to `Tr e = k`.
#[derive(Clone, Debug)]
pub struct TripleRecord {
    pub alpha: Partition,
    pub beta: Partition,
    pub delta: Partition,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    /// `(rhs − lhs) / max(lhs, rhs)`, in `[−1, 1]`.
    pub slack: f64,
    /// Label contributing the most to the right side.
    pub dominant: Option<SixJLabel>,
}

impl TripleRecord {
    pub fn violated(&self) -> bool {
        self.slack < -SLACK_TOL
    }
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub k: usize,
    pub n: usize,
    pub records: Vec<TripleRecord>,
    pub min_slack: f64,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.min_slack >= -SLACK_TOL
    }

    pub fn violations(&self) -> impl Iterator<Item = &TripleRecord> {
        self.records.iter().filter(|r| r.violated())
    }

    pub fn worst(&self) -> Option<&TripleRecord> {
        self.records.iter().min_by(|x, y| x.slack.total_cmp(&y.slack))
    }
}

fn relative_slack(ln_lhs: f64, ln_rhs: f64) -> f64 {
    match (ln_lhs == f64::NEG_INFINITY, ln_rhs == f64::NEG_INFINITY) {
        (true, _) => 1.0,
        (false, true) => -1.0,
        _ if ln_lhs <= ln_rhs => 1.0 - (ln_lhs - ln_rhs).exp(),
        _ => (ln_rhs - ln_lhs).exp() - 1.0,
    }
}

struct LnPhi {
    per_slot: [std::collections::HashMap<Partition, f64>; 6],
}

impl LnPhi {
    fn new(t: &SpectrumTuple, k: usize) -> Result<Self> {
        let n = t.n();
        let mut per_slot: [std::collections::HashMap<Partition, f64>; 6] = Default::default();
        for (slot, x) in t.slots().iter().enumerate() {
            let mut ev = SchurEvaluator::new(x.values())?;
            for m in 0..=k {
                for lam in enumerate_partitions(m, n) {
                    let v = ev.ln_phi(&lam)?;
                    per_slot[slot].insert(lam, v);
                }
            }
        }
        Ok(Self { per_slot })
    }

    fn get(&self, slot: usize, lam: &Partition) -> f64 {
        self.per_slot[slot][lam]
    }
}

/// Evaluates every degree-`k` inequality of the character criterion.
pub fn tet_inequality_check(t: &SpectrumTuple, k: usize, engine: &SixJEngine) -> Result<InequalityReport> {
    t.check_nonnegative()?;
    t.check_trace_valid()?;
    let n = t.n();
    if engine.n() != n {
        return Err(Error::SizeMismatch { expected: engine.n(), got: n });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    crate::schurweyl::check_cap(n, k, engine.cap())?;
    let tr_e = t.e.trace();
    if tr_e <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let scaled = t.map(|x| x.scaled(k as f64 / tr_e));
    let lp = LnPhi::new(&scaled, k)?;
    engine.prefetch(&all_groups(k, n))?;

    let mut triples = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            for alpha in enumerate_partitions(a, n) {
                for beta in enumerate_partitions(b, n) {
                    for delta in enumerate_partitions(k - a - b, n) {
                        triples.push((alpha.clone(), beta.clone(), delta));
                    }
                }
            }
        }
    }
    let epsilons = enumerate_partitions(k, n);
    let mut records = triples
        .into_par_iter()
        .map(|(alpha, beta, delta)| {
            let ln_lhs = 2.0 / 3.0 * lp.get(0, &alpha) + lp.get(1, &beta) + 2.0 / 3.0 * lp.get(3, &delta);
            let mut terms = Vec::new();
            let mut best: Option<(f64, SixJLabel)> = None;
            for eps in &epsilons {
                for rec in engine.group(&alpha, &beta, &delta, eps)? {
                    if rec.inf_norm <= 0.0 {
                        continue;
                    }
                    let l = &rec.label;
                    let v = rec.inf_norm.ln() + (lp.get(5, &l.phi) + lp.get(2, &l.gamma) + lp.get(4, &l.epsilon)) / 3.0;
                    if best.as_ref().is_none_or(|(b, _)| v > *b) {
                        best = Some((v, l.clone()));
                    }
                    terms.push(v);
                }
            }
            let ln_rhs = if terms.is_empty() { f64::NEG_INFINITY } else { log_sum_exp(&terms) };
            Ok(TripleRecord {
                slack: relative_slack(ln_lhs, ln_rhs),
                alpha,
                beta,
                delta,
                ln_lhs,
                ln_rhs,
                dominant: best.map(|(_, l)| l),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|x, y| (x.alpha.size(), x.beta.size(), &x.alpha, &x.beta, &x.delta).cmp(&(y.alpha.size(), y.beta.size(), &y.alpha, &y.beta, &y.delta)));
    let min_slack = records.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    Ok(InequalityReport { k, n, records, min_slack })
}

/// Smallest `k ≤ k_max` with a violated inequality, with its report.
pub fn first_tet_violation(t: &SpectrumTuple, k_max: usize, engine: &SixJEngine) -> Result<Option<InequalityReport>> {
    for k in 1..=k_max {
        let r = tet_inequality_check(t, k, engine)?;
        if !r.passed() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// `6√3 · n · √(ln(k+1)/k)`.
pub fn tet_distance_bound(k: usize, n: usize) -> f64 {
    let k = k.max(1) as f64;
    6.0 * 3f64.sqrt() * n as f64 * ((k + 1.0).ln() / k).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schurweyl::DEFAULT_DIM_CAP;
    use crate::symfunc::Spectrum;

    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn slack_signs() {
        assert_eq!(relative_slack(0.0, 0.0), 0.0);
        assert!(relative_slack(1.0, 0.0) < 0.0);
        assert!(relative_slack(0.0, 1.0) > 0.0);
        assert_eq!(relative_slack(f64::NEG_INFINITY, f64::NEG_INFINITY), 1.0);
    }

    #[test]
    fn zero_b_holds() {
        let a = s(&[2.0, 1.0]);
        let d = s(&[1.5, 0.5]);
        let t = SpectrumTuple::new([a.clone(), Spectrum::zeros(2), a, d.clone(), s(&[3.5, 1.5]), d]).unwrap();
        let engine = SixJEngine::new(2, DEFAULT_DIM_CAP);
        for k in 1..=4 {
            assert!(tet_inequality_check(&t, k, &engine).unwrap().passed());
        }
    }

    #[test]
    fn distance_bound_formula() {
        assert!((tet_distance_bound(1, 1) - 6.0 * 3f64.sqrt() * 2f64.ln().sqrt()).abs() < 1e-14);
        assert!((tet_distance_bound(9, 3) - 3.0 * tet_distance_bound(9, 1)).abs() < 1e-12);
    }
}
