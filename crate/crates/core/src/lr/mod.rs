//! Littlewood–Richardson coefficients, coupling tables for triples of
//! spectra and the row/column character inequalities for eigenvalues of sums.

mod flow;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub use flow::FlowNetwork;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, ln_factorial, Partition};
use crate::symfunc::{SchurEvaluator, Spectrum};

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Multiplicity of `V_γ` in `V_α ⊗ V_β`.
pub fn lr_coeff(alpha: &Partition, beta: &Partition, gamma: &Partition) -> u64 {
    if alpha.size() + beta.size() != gamma.size() {
        return 0;
    }
    if !alpha.is_contained_in(gamma) || !beta.is_contained_in(gamma) {
        return 0;
    }
    if alpha.is_empty() {
        return (beta == gamma) as u64;
    }
    if beta.is_empty() {
        return (alpha == gamma) as u64;
    }
    if alpha.depth() <= 2 && beta.depth() <= 2 && gamma.depth() <= 2 {
        return two_row_lr(alpha, beta, gamma);
    }
    // c^γ_{αβ} = c^γ_{βα}; fill the skew shape with the shorter content
    let (outer, content) = if beta.depth() <= alpha.depth() { (alpha, beta) } else { (beta, alpha) };
    let key = (outer.clone(), content.clone(), gamma.clone());
    if let Some(&v) = lr_cache().lock().unwrap().get(&key) {
        return v;
    }
    let v = count_lr_tableaux(outer, content, gamma);
    lr_cache().lock().unwrap().insert(key, v);
    v
}

fn two_row_lr(alpha: &Partition, beta: &Partition, gamma: &Partition) -> u64 {
    let (a1, a2) = (alpha.part(0) as i64, alpha.part(1) as i64);
    let (b1, b2) = (beta.part(0) as i64, beta.part(1) as i64);
    let t = a1 + b1 - gamma.part(0) as i64;
    (t >= 0 && t <= (a1 - a2).min(b1 - b2) && gamma.part(1) as i64 == a2 + b2 + t) as u64
}

// Skew tableaux of shape γ/α and content β, rows weakly increasing, columns
// strictly increasing, with a lattice reverse reading word.
fn count_lr_tableaux(alpha: &Partition, beta: &Partition, gamma: &Partition) -> u64 {
    struct State<'a> {
        alpha: &'a Partition,
        gamma: &'a Partition,
        beta: Vec<u32>,
        counts: Vec<u32>,
        rows: Vec<Vec<u32>>,
        total: u64,
    }

    fn row_cells(st: &State, i: usize) -> (usize, usize) {
        (st.alpha.part(i) as usize, st.gamma.part(i) as usize)
    }

    fn fill_row(st: &mut State, i: usize, pos: usize, row: &mut Vec<u32>, row_counts: &mut Vec<u32>) {
        let (lo, hi) = row_cells(st, i);
        if lo + pos == hi {
            for j in 0..st.beta.len().saturating_sub(1) {
                if st.counts[j + 1] + row_counts[j + 1] > st.counts[j] {
                    return;
                }
            }
            for (c, r) in st.counts.iter_mut().zip(row_counts.iter()) {
                *c += r;
            }
            st.rows.push(row.clone());
            descend(st, i + 1);
            st.rows.pop();
            for (c, r) in st.counts.iter_mut().zip(row_counts.iter()) {
                *c -= r;
            }
            return;
        }
        let col = lo + pos;
        let mut min_letter = row.last().copied().unwrap_or(0);
        if i > 0 {
            let (alo, ahi) = row_cells(st, i - 1);
            if col >= alo && col < ahi {
                let above = st.rows[i - 1][col - alo];
                min_letter = min_letter.max(above + 1);
            }
        }
        let max_letter = (st.beta.len() as u32).min(i as u32 + 1);
        for letter in min_letter..max_letter {
            let l = letter as usize;
            if st.counts[l] + row_counts[l] >= st.beta[l] {
                continue;
            }
            row.push(letter);
            row_counts[l] += 1;
            fill_row(st, i, pos + 1, row, row_counts);
            row_counts[l] -= 1;
            row.pop();
        }
    }

    fn descend(st: &mut State, i: usize) {
        if i == st.gamma.depth() {
            if st.counts == st.beta {
                st.total += 1;
            }
            return;
        }
        let mut row = Vec::new();
        let mut rc = vec![0u32; st.beta.len()];
        fill_row(st, i, 0, &mut row, &mut rc);
    }

    let mut st = State {
        alpha,
        gamma,
        beta: beta.parts().to_vec(),
        counts: vec![0; beta.depth()],
        rows: Vec::new(),
        total: 0,
    };
    descend(&mut st, 0);
    st.total
}

/// Ordered pairs `(α, β)` with `|α| + |β| = k` and depths at most `n`.
pub fn pairs_of_size(k: usize, n: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for s in (0..=k).rev() {
        let left = enumerate_partitions(s, n);
        let right = enumerate_partitions(k - s, n);
        for a in &left {
            for b in &right {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn check_triple(a: &Spectrum, b: &Spectrum, c: &Spectrum) -> Result<usize> {
    let n = c.len();
    for x in [a, b] {
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.len() });
        }
    }
    for x in [a, b, c] {
        x.check_nonnegative()?;
    }
    let (ta, tb, tc) = (a.trace(), b.trace(), c.trace());
    if (tc - ta - tb).abs() > 1e-9 * tc.abs().max(1.0) {
        return Err(Error::TraceMismatch(format!("Tr c = {tc} but Tr a + Tr b = {}", ta + tb)));
    }
    if tc <= 0.0 {
        return Err(Error::ZeroTrace);
    }
    Ok(n)
}

/// Normalized row and column data of the degree-`k` transportation problem.
struct Marginals {
    pairs: Vec<(Partition, Partition)>,
    row: Vec<f64>,
    gammas: Vec<Partition>,
    col: Vec<f64>,
}

// All values are multiplied by k!/Tr[c]^k so that both marginals sum to one.
fn marginals(a: &Spectrum, b: &Spectrum, c: &Spectrum, k: usize) -> Result<Marginals> {
    let n = c.len();
    let shift = ln_factorial(k) - k as f64 * c.trace().ln();
    let mut ea = SchurEvaluator::new(a.values())?;
    let mut eb = SchurEvaluator::new(b.values())?;
    let mut ec = SchurEvaluator::new(c.values())?;
    let pairs = pairs_of_size(k, n);
    let row = pairs
        .iter()
        .map(|(al, be)| Ok((ea.ln_phi(al)? + eb.ln_phi(be)? + shift).exp()))
        .collect::<Result<Vec<_>>>()?;
    let gammas = enumerate_partitions(k, n);
    let col = gammas
        .iter()
        .map(|g| Ok((ec.ln_phi(g)? + shift).exp()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Marginals { pairs, row, gammas, col })
}

/// Non-negative table `Γ^γ_{αβ}` supported where `c^γ_{αβ} > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingTable {
    pub degree: usize,
    pub entries: Vec<((Partition, Partition, Partition), f64)>,
}

impl CouplingTable {
    pub fn row_sum(&self, alpha: &Partition, beta: &Partition) -> f64 {
        self.entries
            .iter()
            .filter(|((a, b, _), _)| a == alpha && b == beta)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn col_sum(&self, gamma: &Partition) -> f64 {
        self.entries.iter().filter(|((_, _, g), _)| g == gamma).map(|(_, v)| v).sum()
    }
}

#[derive(Clone, Debug)]
pub struct CouplingVerdict {
    pub feasible: bool,
    /// Total normalized flow; equals 1 exactly when feasible.
    pub flow: f64,
    /// Entries scaled back to the unnormalized `φ` values.
    pub table: Option<CouplingTable>,
}

/// Decides whether a coupling table with the character marginals of `(a, b, c)` exists.
pub fn coupling_feasible(a: &Spectrum, b: &Spectrum, c: &Spectrum, k: usize) -> Result<CouplingVerdict> {
    check_triple(a, b, c)?;
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let m = marginals(a, b, c, k)?;
    let np = m.pairs.len();
    let ng = m.gammas.len();
    let (src, sink) = (np + ng, np + ng + 1);
    let mut g = FlowNetwork::new(np + ng + 2);
    for (i, &r) in m.row.iter().enumerate() {
        g.add_arc(src, i, r);
    }
    for (j, &cv) in m.col.iter().enumerate() {
        g.add_arc(np + j, sink, cv);
    }
    let mut cells = Vec::new();
    for (i, (al, be)) in m.pairs.iter().enumerate() {
        for (j, ga) in m.gammas.iter().enumerate() {
            if lr_coeff(al, be, ga) > 0 {
                let id = g.add_arc(i, np + j, f64::INFINITY);
                cells.push((i, j, id));
            }
        }
    }
    let flow = g.max_flow(src, sink, 1e-300);
    let target: f64 = m.col.iter().sum();
    let feasible = (target - flow).abs() <= 1e-9 * target.max(f64::MIN_POSITIVE);
    let table = feasible.then(|| {
        let scale = (k as f64 * c.trace().ln() - ln_factorial(k)).exp();
        CouplingTable {
            degree: k,
            entries: cells
                .iter()
                .filter(|&&(_, _, id)| g.flow_on(id) > 0.0)
                .map(|&(i, j, id)| {
                    let (al, be) = m.pairs[i].clone();
                    ((al, be, m.gammas[j].clone()), g.flow_on(id) * scale)
                })
                .collect(),
        }
    });
    Ok(CouplingVerdict { feasible, flow, table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Row,
    Col,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Row => "row",
            Family::Col => "col",
        })
    }
}

/// One inequality; values are normalized by `k!/Tr[c]^k`.
#[derive(Clone, Debug)]
pub struct HornRow {
    pub k: usize,
    pub family: Family,
    /// `None` for the column family.
    pub alpha: Option<Partition>,
    /// `β` for the row family, `γ` for the column family.
    pub beta_or_gamma: Partition,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl HornRow {
    pub fn violated(&self) -> bool {
        self.slack < -HORN_REL_TOL * self.lhs.max(self.rhs)
    }
}

pub const HORN_REL_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct HornReport {
    pub k: usize,
    pub rows: Vec<HornRow>,
    pub min_slack: f64,
    pub violator: Option<usize>,
}

impl HornReport {
    pub fn passed(&self) -> bool {
        self.violator.is_none()
    }
}

/// Evaluates both families of degree-`k` inequalities for `(a, b, c)`.
pub fn horn_row_col_check(a: &Spectrum, b: &Spectrum, c: &Spectrum, k: usize) -> Result<HornReport> {
    check_triple(a, b, c)?;
    let m = marginals(a, b, c, k)?;
    let gidx: HashMap<&Partition, usize> = m.gammas.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut col_rhs = vec![0.0; m.gammas.len()];
    let mut rows = Vec::with_capacity(m.pairs.len() + m.gammas.len());
    for ((al, be), &lhs) in m.pairs.iter().zip(&m.row) {
        let support = lr_support(al, be, k, c.len());
        let mut rhs = 0.0;
        for g in &support {
            let j = gidx[g];
            rhs += m.col[j];
            col_rhs[j] += lhs;
        }
        rows.push(HornRow {
            k,
            family: Family::Row,
            alpha: Some(al.clone()),
            beta_or_gamma: be.clone(),
            lhs,
            rhs,
            slack: rhs - lhs,
        });
    }
    for (j, g) in m.gammas.iter().enumerate() {
        rows.push(HornRow {
            k,
            family: Family::Col,
            alpha: None,
            beta_or_gamma: g.clone(),
            lhs: m.col[j],
            rhs: col_rhs[j],
            slack: col_rhs[j] - m.col[j],
        });
    }
    let min_slack = rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let violator = rows.iter().position(HornRow::violated);
    Ok(HornReport { k, rows, min_slack, violator })
}

/// All `γ` of depth at most `n` with `c^γ_{αβ} > 0`.
pub fn lr_support(alpha: &Partition, beta: &Partition, k: usize, n: usize) -> Vec<Partition> {
    if n <= 2 && alpha.depth() <= 2 && beta.depth() <= 2 {
        let (a1, a2) = (alpha.part(0), alpha.part(1));
        let (b1, b2) = (beta.part(0), beta.part(1));
        let tmax = (a1 - a2).min(b1 - b2);
        return (0..=tmax)
            .map(|t| Partition::from_unsorted(vec![a1 + b1 - t, a2 + b2 + t]))
            .filter(|g| g.depth() <= n)
            .collect();
    }
    enumerate_partitions(k, n)
        .into_iter()
        .filter(|g| lr_coeff(alpha, beta, g) > 0)
        .collect()
}

/// First degree in `1..=k_max` with a violated row or column inequality.
pub fn first_horn_violation(a: &Spectrum, b: &Spectrum, c: &Spectrum, k_max: usize) -> Result<Option<HornReport>> {
    for k in 1..=k_max {
        let rep = horn_row_col_check(a, b, c, k)?;
        if !rep.passed() {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

/// Default scan cap for violation searches.
pub fn default_k_scan(n: usize) -> usize {
    if n <= 2 {
        200
    } else {
        40
    }
}

/// `2√5 · n · √(ln(k+1)/k)`.
pub fn horn_distance_bound(k: usize, n: usize) -> f64 {
    let k = k as f64;
    2.0 * 5f64.sqrt() * n as f64 * ((k + 1.0).ln() / k).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coeff(&p(&[2]), &p(&[1, 1]), &p(&[3, 1])), 1);
        assert_eq!(lr_coeff(&p(&[2]), &p(&[1, 1]), &p(&[2, 2])), 0);
        assert_eq!(lr_coeff(&p(&[2, 1]), &Partition::empty(), &p(&[2, 1])), 1);
        assert_eq!(lr_coeff(&p(&[2, 1]), &Partition::empty(), &p(&[3])), 0);
        assert_eq!(lr_coeff(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coeff(&p(&[1]), &p(&[1]), &p(&[3])), 0);
    }

    #[test]
    fn general_path_agrees_with_two_row_formula() {
        for k in 0..=8 {
            for (al, be) in pairs_of_size(k, 2) {
                for g in enumerate_partitions(k, 2) {
                    let fast = two_row_lr(&al, &be, &g);
                    let slow = if al.is_empty() || be.is_empty() {
                        lr_coeff(&al, &be, &g)
                    } else {
                        count_lr_tableaux(&al, &be, &g)
                    };
                    assert_eq!(fast, slow, "{al} {be} {g}");
                }
            }
        }
    }

    #[test]
    fn coupling_examples() {
        let v = coupling_feasible(&s(&[1.0, 0.0]), &s(&[1.0, 0.0]), &s(&[2.0, 0.0]), 2).unwrap();
        assert!(v.feasible);
        let t = v.table.unwrap();
        let total: f64 = t.entries.iter().map(|e| e.1).sum();
        assert!((total - 2.0).abs() < 1e-12);
        let v = coupling_feasible(&s(&[1.0, 0.0]), &s(&[1.0, 0.0]), &s(&[1.0, 1.0]), 2).unwrap();
        assert!(v.feasible);
        assert!(coupling_feasible(&s(&[1.0, 0.0]), &s(&[1.0, 0.0]), &s(&[3.0, 0.0]), 2).is_err());
    }

    #[test]
    fn vacuous_degree() {
        let rep = horn_row_col_check(&s(&[1.0]), &s(&[0.0]), &s(&[1.0]), 3).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn distance_bound_formula() {
        assert!((horn_distance_bound(1, 1) - 2.0 * 5f64.sqrt() * 2f64.ln().sqrt()).abs() < 1e-14);
        assert!((horn_distance_bound(9, 4) - 2.0 * horn_distance_bound(9, 2)).abs() < 1e-12);
    }
}
