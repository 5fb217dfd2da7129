//! Projectors on the full tensor power, stored block-diagonally over
//! weight spaces or slot-permutation orbits.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::gt::{central_split, isotypic_weight_basis, refine_isotypic, FactorBasis};
use super::words::{compositions, decode, pow_usize, weight_of, WordSpace};
use super::{check_cap, SixJLabel};
use crate::error::{Error, Result};
use crate::partitions::{dim_sym_irrep_f64, weyl_dim_f64, Partition};

/// Orthonormal columns supported on the words `codes`.
#[derive(Clone, Debug)]
pub struct Block {
    pub codes: Vec<usize>,
    pub basis: DMatrix<f64>,
}

/// The projector `Σ_blocks B Bᵀ` on `(ℂⁿ)^{⊗k}`.
#[derive(Clone, Debug)]
pub struct BlockProjector {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Block>,
}

impl BlockProjector {
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.ncols()).sum()
    }

    pub fn full_dim(&self) -> usize {
        pow_usize(self.n, self.k)
    }

    /// Orthonormal basis of the image in word coordinates.
    pub fn basis_dense(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.full_dim(), self.rank());
        let mut col = 0;
        for b in &self.blocks {
            for c in 0..b.basis.ncols() {
                for (r, &code) in b.codes.iter().enumerate() {
                    out[(code, col)] = b.basis[(r, c)];
                }
                col += 1;
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.full_dim();
        let mut out = DMatrix::zeros(dim, dim);
        for b in &self.blocks {
            let p = &b.basis * b.basis.transpose();
            for (i, &ci) in b.codes.iter().enumerate() {
                for (j, &cj) in b.codes.iter().enumerate() {
                    out[(ci, cj)] += p[(i, j)];
                }
            }
        }
        out
    }
}

/// `Π^λ` acting on the slots `range` of `(ℂⁿ)^{⊗k}`.
#[derive(Clone, Debug)]
pub struct IsotypicProjector {
    pub label: Partition,
    pub range: Range<usize>,
    pub projector: BlockProjector,
}

impl IsotypicProjector {
    pub fn rank(&self) -> usize {
        self.projector.rank()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.projector.to_dense()
    }

    /// `dim W_λ · dim V_λ · n^{k - |range|}`.
    pub fn expected_rank(&self) -> f64 {
        let n = self.projector.n;
        let outside = self.projector.k - self.range.len();
        dim_sym_irrep_f64(&self.label) * weyl_dim_f64(&self.label, n).unwrap_or(0.0) * (n as f64).powi(outside as i32)
    }
}

/// Isotypic projector built by Gelfand–Tsetlin refinement on each orbit of
/// the slot permutations of `range`.
pub fn isotypic_projector(lambda: &Partition, range: Range<usize>, n: usize, k: usize, cap: u128) -> Result<IsotypicProjector> {
    check_cap(n, k, cap)?;
    if range.end > k || range.start > range.end {
        return Err(Error::InvalidParameter(format!("slot range {range:?} outside 0..{k}")));
    }
    if lambda.size() != range.len() {
        return Err(Error::SizeMismatch { expected: range.len(), got: lambda.size() });
    }
    if lambda.depth() > n {
        return Err(Error::DepthExceeded { depth: lambda.depth(), n });
    }
    let (lo, hi) = (range.start, range.end);
    let mut orbits: BTreeMap<(Vec<u32>, usize), Vec<usize>> = BTreeMap::new();
    let powers: Vec<usize> = (0..k).map(|j| pow_usize(n, k - 1 - j)).collect();
    for code in 0..pow_usize(n, k) {
        let word = decode(code, n, k);
        let inside = weight_of(&word[lo..hi], n);
        let outside: usize = code - (lo..hi).map(|j| word[j] as usize * powers[j]).sum::<usize>();
        orbits.entry((inside, outside)).or_default().push(code);
    }
    let blocks = orbits
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|codes| {
            let space = WordSpace::from_codes(n, k, codes, lo, hi);
            let basis = refine_isotypic(&space, lo, hi, n, Some(lambda))?
                .pop()
                .map_or_else(|| DMatrix::zeros(space.dim(), 0), |(_, b)| b);
            Ok(Block { codes: space.codes().to_vec(), basis })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IsotypicProjector { label: lambda.clone(), range, projector: BlockProjector { n, k, blocks } })
}

/// Tensor products of per-factor vectors inside the weight space `space`.
/// `provider(λ, w)` returns vectors on the words of weight `w` for slot block `λ`.
pub(crate) fn tensor_blocks<F>(space: &WordSpace, factors: [&Partition; 3], total: &[u32], provider: F) -> Result<DMatrix<f64>>
where
    F: Fn(&Partition, &[u32]) -> Result<Arc<FactorBasis>>,
{
    let n = space.n();
    let [fa, fb, fd] = factors;
    let (b, d) = (fb.size(), fd.size());
    let (pb, pd) = (pow_usize(n, b + d), pow_usize(n, d));
    let mut columns: Vec<Vec<(usize, f64)>> = Vec::new();
    for wa in compositions(fa.size() as u32, n, Some(total)) {
        let rest: Vec<u32> = total.iter().zip(&wa).map(|(t, x)| t - x).collect();
        let ba = provider(fa, &wa)?;
        if ba.rank() == 0 {
            continue;
        }
        for wb in compositions(b as u32, n, Some(&rest)) {
            let wd: Vec<u32> = rest.iter().zip(&wb).map(|(t, x)| t - x).collect();
            let bb = provider(fb, &wb)?;
            let bd = provider(fd, &wd)?;
            if bb.rank() == 0 || bd.rank() == 0 {
                continue;
            }
            for i in 0..ba.rank() {
                for j in 0..bb.rank() {
                    for l in 0..bd.rank() {
                        let mut col = Vec::new();
                        for (ra, &ca) in ba.codes.iter().enumerate() {
                            let va = ba.vectors[(ra, i)];
                            if va == 0.0 {
                                continue;
                            }
                            for (rb, &cb) in bb.codes.iter().enumerate() {
                                let vab = va * bb.vectors[(rb, j)];
                                if vab == 0.0 {
                                    continue;
                                }
                                for (rd, &cd) in bd.codes.iter().enumerate() {
                                    let v = vab * bd.vectors[(rd, l)];
                                    if v != 0.0 {
                                        let code = ca * pb + cb * pd + cd;
                                        let pos = space.position(code).ok_or_else(|| {
                                            Error::Numerical("factor word outside the weight space".into())
                                        })?;
                                        col.push((pos, v));
                                    }
                                }
                            }
                        }
                        columns.push(col);
                    }
                }
            }
        }
    }
    let mut out = DMatrix::zeros(space.dim(), columns.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            out[(r, c)] = v;
        }
    }
    Ok(out)
}

/// Image of `Π^α ⊗ Π^β ⊗ Π^δ` inside one weight space.
pub(crate) fn factor_image(space: &WordSpace, alpha: &Partition, beta: &Partition, delta: &Partition, weight: &[u32]) -> Result<DMatrix<f64>> {
    let n = space.n();
    tensor_blocks(space, [alpha, beta, delta], weight, |lam, w| isotypic_weight_basis(lam, w, n))
}

pub(crate) fn pick(
    space: &WordSpace,
    w: &DMatrix<f64>,
    range: Range<usize>,
    n: usize,
    lambda: &Partition,
) -> Result<DMatrix<f64>> {
    Ok(central_split(space, w, range.start, range.end, n, Some(lambda))?
        .pop()
        .map_or_else(|| DMatrix::zeros(space.dim(), 0), |(_, b)| b))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn chain(label: &SixJLabel, n: usize, cap: u128, side: Side) -> Result<BlockProjector> {
    let k = label.degree();
    check_cap(n, k, cap)?;
    let depth = label.max_depth();
    if depth > n {
        return Err(Error::DepthExceeded { depth, n });
    }
    if !label.size_conditions() {
        return Ok(BlockProjector { n, k, blocks: Vec::new() });
    }
    let (a, b) = (label.alpha.size(), label.beta.size());
    let blocks = compositions(k as u32, n, None)
        .into_par_iter()
        .map(|w| {
            let space = WordSpace::weight(n, &w);
            let f = factor_image(&space, &label.alpha, &label.beta, &label.delta, &w)?;
            let e = pick(&space, &f, 0..k, n, &label.epsilon)?;
            let basis = match side {
                Side::Left => pick(&space, &e, 0..a + b, n, &label.gamma)?,
                Side::Right => pick(&space, &e, a..k, n, &label.phi)?,
            };
            Ok(Block { codes: space.codes().to_vec(), basis })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockProjector { n, k, blocks })
}

/// `Π^ε Π^γ_{[0,|α|+|β|)} (Π^α ⊗ Π^β ⊗ Π^δ)`; zero when the sizes are incompatible.
pub fn q_left(label: &SixJLabel, n: usize, cap: u128) -> Result<BlockProjector> {
    chain(label, n, cap, Side::Left)
}

/// `Π^ε Π^φ_{[|α|,k)} (Π^α ⊗ Π^β ⊗ Π^δ)`.
pub fn q_right(label: &SixJLabel, n: usize, cap: u128) -> Result<BlockProjector> {
    chain(label, n, cap, Side::Right)
}

/// Norms of `q_left · q_right` computed on the whole tensor power.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorNorms {
    pub inf_norm: f64,
    pub two_norm_sq: f64,
    pub rank_left: usize,
    pub rank_right: usize,
}

pub fn sixj_full(label: &SixJLabel, n: usize, cap: u128) -> Result<ProjectorNorms> {
    let left = q_left(label, n, cap)?;
    let right = q_right(label, n, cap)?;
    let mut inf_norm: f64 = 0.0;
    let mut trace = 0.0;
    for (l, r) in left.blocks.iter().zip(&right.blocks) {
        if l.basis.ncols() == 0 || r.basis.ncols() == 0 {
            continue;
        }
        let s = l.basis.transpose() * &r.basis;
        trace += s.norm_squared();
        inf_norm = inf_norm.max(s.singular_values().max());
    }
    let dims = [&label.alpha, &label.beta, &label.delta].iter().map(|p| dim_sym_irrep_f64(p)).product::<f64>()
        * weyl_dim_f64(&label.epsilon, n)?;
    Ok(ProjectorNorms {
        inf_norm,
        two_norm_sq: if label.size_conditions() { trace / dims } else { 0.0 },
        rank_left: left.rank(),
        rank_right: right.rank(),
    })
}
