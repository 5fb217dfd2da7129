use rayon::prelude::*;

use super::SpectrumTuple;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::probability::{kl, Distribution};
use crate::schurweyl::{check_cap, HermitianMatrix, SixJEngine, SixJLabel, TripleFunctional};
use crate::symfunc::SchurEvaluator;

/// Relative threshold under which an eigenvalue of `e` counts as zero.
pub const RANK_TOL: f64 = 1e-9;

/// Largest-remainder rounding of non-negative quotas to integers with the
/// given total. Ties go to the earlier index, so descending quotas give a
/// weakly descending result.
fn largest_remainder(quotas: &[f64], total: u32) -> Vec<u32> {
    let mut out: Vec<u32> = quotas.iter().map(|q| q.max(0.0).floor() as u32).collect();
    let assigned: u32 = out.iter().sum();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&i, &j| {
        let ri = quotas[i] - quotas[i].floor();
        let rj = quotas[j] - quotas[j].floor();
        rj.total_cmp(&ri).then(i.cmp(&j))
    });
    let mut missing = total.saturating_sub(assigned) as usize;
    for &i in order.iter().cycle() {
        if missing == 0 {
            break;
        }
        out[i] += 1;
        missing -= 1;
    }
    out
}

fn proportional_partition(x: &[f64], size: u32) -> Partition {
    let tr: f64 = x.iter().sum();
    let quotas: Vec<f64> = if tr > 0.0 {
        x.iter().map(|v| size as f64 * v / tr).collect()
    } else {
        let mut q = vec![0.0; x.len()];
        q[0] = size as f64;
        q
    };
    Partition::from_unsorted(largest_remainder(&quotas, size))
}

/// Integer label of degree `k` approximating `k·t/Tr e`.
///
/// The sizes `(|α|,|β|,|δ|)` are rounded first, which fixes the other three
/// through the size conditions; each slot is then rounded to its size.
pub fn sequence_weights(t: &SpectrumTuple, k: usize) -> Result<SixJLabel> {
    t.check_nonnegative()?;
    t.check_trace_valid()?;
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let tr_e = t.e.trace();
    if tr_e <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let kf = k as f64;
    let sizes = largest_remainder(&[kf * t.a.trace() / tr_e, kf * t.b.trace() / tr_e, kf * t.d.trace() / tr_e], k as u32);
    let (sa, sb, sd) = (sizes[0], sizes[1], sizes[2]);
    let part = |x: &crate::symfunc::Spectrum, s: u32| proportional_partition(x.values(), s);
    let label = SixJLabel::new(
        part(&t.a, sa),
        part(&t.b, sb),
        part(&t.c, sa + sb),
        part(&t.d, sd),
        part(&t.e, k as u32),
        part(&t.f, sb + sd),
    );
    if !label.size_conditions() {
        return Err(Error::Numerical(format!("rounded label {label} breaks the size conditions")));
    }
    Ok(label)
}

/// `‖label/k − t/Tr e‖₁` summed over the six slots.
pub fn rounding_error(t: &SpectrumTuple, label: &SixJLabel) -> Result<f64> {
    let k = label.degree() as f64;
    let tr_e = t.e.trace();
    let mut err = 0.0;
    for (lam, x) in label.parts().iter().zip(t.slots()) {
        let p = lam.padded(x.len())?;
        err += p.iter().zip(x.values()).map(|(&l, v)| (l as f64 / k - v / tr_e).abs()).sum::<f64>();
    }
    Ok(err)
}

fn joint(parts: &[&Partition], n: usize, k: usize) -> Result<Distribution> {
    let mut w = Vec::new();
    for p in parts {
        w.extend(p.padded(n)?.into_iter().map(|v| v as f64 / k as f64));
    }
    Distribution::new(w)
}

fn joint_spectra(xs: &[&crate::symfunc::Spectrum], tr: f64) -> Result<Distribution> {
    Distribution::new(xs.iter().flat_map(|x| x.values().iter().map(|v| (v / tr).max(0.0))).collect())
}

/// `R = ¼[KL(αβδ‖abd) + KL(γδ‖cd) + KL(αφ‖af) + KL(ε‖e)]`, labels divided by
/// `k = |ε|` and spectra by `Tr e`.
pub fn divergence_r(t: &SpectrumTuple, l: &SixJLabel) -> Result<f64> {
    if !l.size_conditions() {
        return Err(Error::InvalidParameter(format!("label {l} violates the size conditions")));
    }
    t.check_nonnegative()?;
    let (n, k) = (t.n(), l.degree());
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let tr = t.e.trace();
    if tr <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let terms = [
        kl(&joint(&[&l.alpha, &l.beta, &l.delta], n, k)?, &joint_spectra(&[&t.a, &t.b, &t.d], tr)?)?,
        kl(&joint(&[&l.gamma, &l.delta], n, k)?, &joint_spectra(&[&t.c, &t.d], tr)?)?,
        kl(&joint(&[&l.alpha, &l.phi], n, k)?, &joint_spectra(&[&t.a, &t.f], tr)?)?,
        kl(&joint(&[&l.epsilon], n, k)?, &joint_spectra(&[&t.e], tr)?)?,
    ];
    Ok(0.25 * terms.iter().sum::<f64>())
}

/// Matrices `(X, Y, Z)` realizing a member tuple.
#[derive(Clone, Debug)]
pub struct Witness {
    pub x: HermitianMatrix,
    pub y: HermitianMatrix,
    pub z: HermitianMatrix,
}

impl Witness {
    pub fn tuple(&self) -> Result<SpectrumTuple> {
        SpectrumTuple::from_matrices(&self.x, &self.y, &self.z)
    }
}

/// Label maximizing `|φ^{αβδ}_{γεφ}(X,Y,Z)|` at degree `k`.
#[derive(Clone, Debug)]
pub struct MaxLabel {
    pub label: SixJLabel,
    /// `(k!/Tr e^k)·|φ^L(X,Y,Z)|`.
    pub weight: f64,
    /// `(α,β,δ)` triples whose functional had to be evaluated.
    pub evaluated: usize,
    pub triples: usize,
}

/// Branch and bound over `(α,β,δ)`. Since `‖6j‖_∞ ≤ 1`,
/// `|φ^L| ≤ P^{1/2} Q^{1/2}` with
/// `P ≤ min(φ_α(a)φ_φ(f), φ_α(a)φ_β(b)φ_δ(d), φ_ε(e))` and
/// `Q ≤ min(φ_γ(c)φ_δ(d), φ_α(a)φ_β(b)φ_δ(d), φ_ε(e))`; a triple is skipped
/// once this bound, maximized over its labels, cannot beat the best value.
pub fn max_label(w: &Witness, k: usize, cap: u128) -> Result<MaxLabel> {
    let t = w.tuple()?;
    let n = t.n();
    check_cap(n, k, cap)?;
    let tr = t.e.trace();
    if tr <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    let scaled = t.map(|x| x.scaled(k as f64 / tr));
    let mut lp: Vec<std::collections::HashMap<Partition, f64>> = Vec::new();
    for x in scaled.slots() {
        let mut ev = SchurEvaluator::new(&x.values().iter().map(|v| v.max(0.0)).collect::<Vec<_>>())?;
        let mut m = std::collections::HashMap::new();
        for size in 0..=k {
            for lam in enumerate_partitions(size, n) {
                let v = ev.ln_phi(&lam)?;
                m.insert(lam, v);
            }
        }
        lp.push(m);
    }
    // ln(k!/k^k) rescales φ-values of the tuple scaled to trace k
    let norm = crate::partitions::ln_factorial(k) - k as f64 * (k as f64).ln();
    let mut triples: Vec<(f64, Partition, Partition, Partition)> = Vec::new();
    let epsilons = enumerate_partitions(k, n);
    for a in 0..=k {
        for b in 0..=k - a {
            let d = k - a - b;
            let gammas = enumerate_partitions(a + b, n);
            let phis = enumerate_partitions(b + d, n);
            for alpha in enumerate_partitions(a, n) {
                for beta in enumerate_partitions(b, n) {
                    for delta in enumerate_partitions(d, n) {
                        let abd = lp[0][&alpha] + lp[1][&beta] + lp[3][&delta];
                        let emax = epsilons.iter().map(|e| lp[4][e]).fold(f64::NEG_INFINITY, f64::max);
                        let pmax = phis.iter().map(|f| (lp[0][&alpha] + lp[5][f]).min(abd).min(emax)).fold(f64::NEG_INFINITY, f64::max);
                        let qmax = gammas.iter().map(|g| (lp[2][g] + lp[3][&delta]).min(abd).min(emax)).fold(f64::NEG_INFINITY, f64::max);
                        triples.push((0.5 * (pmax + qmax) + norm, alpha.clone(), beta.clone(), delta.clone()));
                    }
                }
            }
        }
    }
    triples.sort_by(|x, y| y.0.total_cmp(&x.0).then_with(|| (&x.1, &x.2, &x.3).cmp(&(&y.1, &y.2, &y.3))));
    let total = triples.len();
    let (wx, wy, wz) = (w.x.scaled(k as f64 / tr), w.y.scaled(k as f64 / tr), w.z.scaled(k as f64 / tr));
    let mut best: Option<(f64, SixJLabel)> = None;
    let mut evaluated = 0;
    for (bound, alpha, beta, delta) in triples {
        if let Some((b, _)) = &best {
            if bound.exp() <= *b * (1.0 + 1e-12) {
                break;
            }
        }
        evaluated += 1;
        let f = TripleFunctional::new(&alpha, &beta, &delta, n, cap)?;
        for (label, v) in f.evaluate(&wx, &wy, &wz)? {
            let val = v.norm() * norm.exp();
            if best.as_ref().is_none_or(|(b, _)| val > *b) {
                best = Some((val, label));
            }
        }
    }
    let (weight, label) = best.ok_or_else(|| Error::Numerical("no label with a nonzero functional".into()))?;
    Ok(MaxLabel { label, weight, evaluated, triples: total })
}

#[derive(Clone, Debug)]
pub struct AsymptoticsRow {
    pub k: usize,
    pub rounded: SixJLabel,
    pub rounded_norm: f64,
    pub best: Option<(MaxLabel, f64)>,
}

#[derive(Clone, Debug)]
pub struct AsymptoticsReport {
    pub rank_e: usize,
    pub rows: Vec<AsymptoticsRow>,
    /// Least-squares slope of `ln‖6j‖_∞` against `k` along the rounded
    /// sequence, zero-norm points excluded.
    pub raw_slope: Option<f64>,
    /// Same with `6·rank(e)·ln(k+1)` added.
    pub compensated_slope: Option<f64>,
    /// Points left out of the fit because the norm vanished.
    pub zero_norm_ks: Vec<usize>,
}

impl AsymptoticsRow {
    pub fn scaled(norm: f64, k: usize, rank_e: usize) -> f64 {
        norm * ((k + 1) as f64).powi(6 * rank_e as i32)
    }
}

pub fn rank_of_e(t: &SpectrumTuple) -> usize {
    let scale = t.e.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    t.e.rank(RANK_TOL * scale.max(f64::MIN_POSITIVE))
}

fn ls_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `‖6j‖_∞` along the rounded sequence, and at the maximizing label when a
/// witness is supplied.
pub fn asymptotics_scan(t: &SpectrumTuple, ks: &[usize], engine: &SixJEngine, witness: Option<&Witness>) -> Result<AsymptoticsReport> {
    let n = t.n();
    if engine.n() != n {
        return Err(Error::SizeMismatch { expected: engine.n(), got: n });
    }
    for &k in ks {
        check_cap(n, k, engine.cap())?;
    }
    let rank_e = rank_of_e(t);
    let rows = ks
        .par_iter()
        .map(|&k| {
            let rounded = sequence_weights(t, k)?;
            let rounded_norm = engine.inf_norm(&rounded)?;
            let best = match witness {
                Some(w) => {
                    let m = max_label(w, k, engine.cap())?;
                    let norm = engine.inf_norm(&m.label)?;
                    Some((m, norm))
                }
                None => None,
            };
            Ok(AsymptoticsRow { k, rounded, rounded_norm, best })
        })
        .collect::<Result<Vec<_>>>()?;
    let live: Vec<&AsymptoticsRow> = rows.iter().filter(|r| r.rounded_norm > 0.0).collect();
    let raw: Vec<(f64, f64)> = live.iter().map(|r| (r.k as f64, r.rounded_norm.ln())).collect();
    let comp: Vec<(f64, f64)> = live
        .iter()
        .map(|r| (r.k as f64, r.rounded_norm.ln() + 6.0 * rank_e as f64 * ((r.k + 1) as f64).ln()))
        .collect();
    Ok(AsymptoticsReport {
        rank_e,
        raw_slope: ls_slope(&raw),
        compensated_slope: ls_slope(&comp),
        zero_norm_ks: rows.iter().filter(|r| r.rounded_norm <= 0.0).map(|r| r.k).collect(),
        rows,
    })
}
