//! Isotypic decompositions of invariant subspaces of word spaces, driven by
//! the spectra of Jucys–Murphy elements.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use super::words::WordSpace;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

const EIG_TOL: f64 = 1e-6;

/// Symmetric eigen-decomposition of `W^T A W`.
fn restricted_eigen(w: &DMatrix<f64>, aw: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let m = w.transpose() * aw;
    let m = (&m + m.transpose()) * 0.5;
    let eig = m.symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

fn select_columns(w: &DMatrix<f64>, u: &DMatrix<f64>, cols: &[usize]) -> DMatrix<f64> {
    let mut sub = DMatrix::zeros(u.nrows(), cols.len());
    for (t, &c) in cols.iter().enumerate() {
        sub.set_column(t, &u.column(c));
    }
    w * sub
}

fn hstack(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.columns_mut(at, b.ncols()).copy_from(b);
        at += b.ncols();
    }
    out
}

/// Splits `span(w)` (orthonormal columns, invariant under permutations of
/// the slots `lo..hi`) into isotypic components labelled by partitions of
/// depth at most `n`. Only the component `wanted` is returned when given.
pub fn central_split(
    space: &WordSpace,
    w: &DMatrix<f64>,
    lo: usize,
    hi: usize,
    n: usize,
    wanted: Option<&Partition>,
) -> Result<Vec<(Partition, DMatrix<f64>)>> {
    let m = hi - lo;
    let candidates = enumerate_partitions(m, n);
    let keep = |c: &[Partition]| wanted.is_none_or(|t| c.contains(t));
    let mut out = Vec::new();
    if w.ncols() == 0 {
        return Ok(out);
    }
    let mut stack = vec![(w.clone(), candidates, 1u32)];
    while let Some((basis, cands, r)) = stack.pop() {
        if cands.len() == 1 {
            if keep(&cands) {
                out.push((cands[0].clone(), basis));
            }
            continue;
        }
        if r as usize > m + 1 {
            return Err(Error::Numerical("content power sums failed to separate shapes".into()));
        }
        let zw = space.apply_power_sum(r, lo, hi, &basis);
        let (vals, vecs) = restricted_eigen(&basis, &zw);
        let targets: Vec<f64> = cands.iter().map(|c| c.content_power_sum(r)).collect();
        let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &v) in vals.iter().enumerate() {
            let (best, dist) = targets
                .iter()
                .map(|t| (*t, (v - t).abs()))
                .fold((f64::NAN, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
            if dist > EIG_TOL * (1.0 + best.abs()) {
                return Err(Error::Numerical(format!(
                    "eigenvalue {v} of a central element matches no shape (nearest {best})"
                )));
            }
            groups.entry(best.round() as i64).or_default().push(i);
        }
        for (t, cols) in groups {
            let sub: Vec<Partition> = cands
                .iter()
                .zip(&targets)
                .filter(|(_, &tv)| tv.round() as i64 == t)
                .map(|(c, _)| c.clone())
                .collect();
            if !keep(&sub) {
                continue;
            }
            stack.push((select_columns(&basis, &vecs, &cols), sub, r + 1));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Sequential Gelfand–Tsetlin refinement of the whole word space under the
/// slots `lo..hi`, merging paths by shape. Returns orthonormal bases of the
/// isotypic components (restricted to shapes contained in `target` if given).
pub fn refine_isotypic(
    space: &WordSpace,
    lo: usize,
    hi: usize,
    n: usize,
    target: Option<&Partition>,
) -> Result<Vec<(Partition, DMatrix<f64>)>> {
    let dim = space.dim();
    if hi <= lo {
        return Ok(vec![(Partition::empty(), DMatrix::identity(dim, dim))]);
    }
    let mut layer: Vec<(Partition, DMatrix<f64>)> = vec![(Partition::row(1), DMatrix::identity(dim, dim))];
    for j in lo + 1..hi {
        let mut next: HashMap<Partition, Vec<DMatrix<f64>>> = HashMap::new();
        for (mu, w) in &layer {
            let xw = space.apply_jm(j, lo, w);
            let (vals, vecs) = restricted_eigen(w, &xw);
            let mut by_row: HashMap<usize, Vec<usize>> = HashMap::new();
            let rows = mu.addable_rows();
            for (i, &v) in vals.iter().enumerate() {
                let hit = rows.iter().find(|&&r| (v - (mu.part(r) as f64 - r as f64)).abs() < EIG_TOL);
                match hit {
                    Some(&r) => by_row.entry(r).or_default().push(i),
                    None => {
                        return Err(Error::Numerical(format!("Jucys–Murphy eigenvalue {v} is not an addable content of {mu}")))
                    }
                }
            }
            for (r, cols) in by_row {
                let nu = mu.with_box_in_row(r);
                if nu.depth() > n || target.is_some_and(|t| !nu.is_contained_in(t)) {
                    continue;
                }
                next.entry(nu).or_default().push(select_columns(w, &vecs, &cols));
            }
        }
        layer = next.into_iter().map(|(nu, blocks)| (nu, hstack(&blocks))).collect();
    }
    layer.retain(|(nu, _)| target.is_none_or(|t| nu == t));
    layer.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(layer)
}

/// Content of each box of the row-reading standard tableau of `lambda`.
pub fn row_reading_contents(lambda: &Partition) -> Vec<i64> {
    lambda.boxes().map(|(i, j)| j as i64 - i as i64).collect()
}

/// Orthonormal vectors inside the words of a fixed weight.
#[derive(Clone, Debug)]
pub struct FactorBasis {
    pub codes: Vec<usize>,
    pub vectors: DMatrix<f64>,
}

impl FactorBasis {
    pub fn rank(&self) -> usize {
        self.vectors.ncols()
    }
}

type FactorKey = (bool, usize, Partition, Vec<u32>);
type FactorCache = Mutex<HashMap<FactorKey, Arc<FactorBasis>>>;

fn factor_cache() -> &'static FactorCache {
    static CACHE: OnceLock<FactorCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: FactorKey, build: impl FnOnce() -> Result<FactorBasis>) -> Result<Arc<FactorBasis>> {
    if let Some(b) = factor_cache().lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(build()?);
    factor_cache().lock().unwrap().insert(key, b.clone());
    Ok(b)
}

/// Weight-`weight` vectors of the Gelfand–Tsetlin line of the row-reading
/// tableau of `lambda`: one copy of the weight space of `V_λ`.
pub fn tableau_basis(lambda: &Partition, weight: &[u32], n: usize) -> Result<Arc<FactorBasis>> {
    cached((true, n, lambda.clone(), weight.to_vec()), || compute_tableau_basis(lambda, weight, n))
}

/// Weight-`weight` part of the whole `λ`-isotypic component (`W_λ ⊗ V_λ`).
pub fn isotypic_weight_basis(lambda: &Partition, weight: &[u32], n: usize) -> Result<Arc<FactorBasis>> {
    cached((false, n, lambda.clone(), weight.to_vec()), || {
        let space = WordSpace::weight(n, weight);
        let k = space.k();
        let vectors = if lambda.size() != k {
            DMatrix::zeros(space.dim(), 0)
        } else {
            refine_isotypic(&space, 0, k, n, Some(lambda))?
                .pop()
                .map_or_else(|| DMatrix::zeros(space.dim(), 0), |(_, b)| b)
        };
        Ok(FactorBasis { codes: space.codes().to_vec(), vectors })
    })
}

fn compute_tableau_basis(lambda: &Partition, weight: &[u32], n: usize) -> Result<FactorBasis> {
    let a = lambda.size();
    let space = WordSpace::weight(n, weight);
    if space.k() != a {
        return Ok(FactorBasis { codes: space.codes().to_vec(), vectors: DMatrix::zeros(space.dim(), 0) });
    }
    if a == 0 {
        return Ok(FactorBasis { codes: space.codes().to_vec(), vectors: DMatrix::identity(1, 1) });
    }
    // dominance: the weight must be dominated by λ for a nonzero weight space
    let mut sorted = weight.to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let mut acc_w = 0u32;
    let mut acc_l = 0u32;
    for (i, &w) in sorted.iter().enumerate() {
        acc_w += w;
        acc_l += lambda.part(i);
        if acc_w > acc_l {
            return Ok(FactorBasis { codes: space.codes().to_vec(), vectors: DMatrix::zeros(space.dim(), 0) });
        }
    }
    // start from vectors symmetric in the first row's slots
    let first = lambda.part(0) as usize;
    let mut orbits: BTreeMap<(Vec<u32>, usize), Vec<usize>> = BTreeMap::new();
    let tail_pow = super::words::pow_usize(n, a - first);
    for (row, &c) in space.codes().iter().enumerate() {
        let head = super::words::decode(c / tail_pow, n, first);
        let key = (super::words::weight_of(&head, n), c % tail_pow);
        orbits.entry(key).or_default().push(row);
    }
    let mut w = DMatrix::zeros(space.dim(), orbits.len());
    for (col, rows) in orbits.values().enumerate() {
        let v = 1.0 / (rows.len() as f64).sqrt();
        for &r in rows {
            w[(r, col)] = v;
        }
    }
    let contents = row_reading_contents(lambda);
    for (j, &c) in contents.iter().enumerate().take(a).skip(first) {
        if w.ncols() == 0 {
            break;
        }
        let xw = space.apply_jm(j, 0, &w);
        let (vals, vecs) = restricted_eigen(&w, &xw);
        let c = c as f64;
        let cols: Vec<usize> = (0..vals.len()).filter(|&i| (vals[i] - c).abs() < 0.5).collect();
        w = select_columns(&w, &vecs, &cols);
    }
    Ok(FactorBasis { codes: space.codes().to_vec(), vectors: w })
}
