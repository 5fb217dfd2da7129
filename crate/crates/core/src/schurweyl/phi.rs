//! The functionals `φ^{αβ}_γ(X,Y)` and `φ^{αβδ}_{γεφ}(X,Y,Z)`.
//!
//! Every projector involved preserves the total weight of a word, so traces
//! only need the diagonal weight blocks of `X^{⊗|α|} ⊗ Y^{⊗|β|} ⊗ Z^{⊗|δ|}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::gt::central_split;
use super::projector::factor_image;
use super::words::{compositions, decode, WordSpace};
use super::{check_cap, HermitianMatrix, SixJLabel};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, factorial, Partition};

/// `T[x,y] = Π_j M_{s(j)}[x_j, y_j]` on the words of one weight space.
fn block_operator(space: &WordSpace, slot_mats: &[&DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let (n, k) = (space.n(), space.k());
    let words: Vec<Vec<u8>> = space.codes().iter().map(|&c| decode(c, n, k)).collect();
    let dim = words.len();
    DMatrix::from_fn(dim, dim, |r, c| {
        let (x, y) = (&words[r], &words[c]);
        let mut acc = Complex64::new(1.0, 0.0);
        for j in 0..k {
            acc *= slot_mats[j][(x[j] as usize, y[j] as usize)];
            if acc.norm_sqr() == 0.0 {
                break;
            }
        }
        acc
    })
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|v| Complex64::new(v, 0.0))
}

fn slot_matrices<'a>(sizes: &[usize], mats: &[&'a HermitianMatrix]) -> Vec<&'a DMatrix<Complex64>> {
    sizes.iter().zip(mats).flat_map(|(&s, m)| std::iter::repeat_n(m.matrix(), s)).collect()
}

fn check_inputs(mats: &[&HermitianMatrix], n: usize) -> Result<()> {
    for m in mats {
        if m.dim() != n {
            return Err(Error::SizeMismatch { expected: n, got: m.dim() });
        }
        m.check_psd()?;
    }
    Ok(())
}

struct PairBlock {
    space: WordSpace,
    parts: Vec<(Partition, DMatrix<Complex64>)>,
}

/// Multiplicity bases for `φ^{αβ}_γ`, reusable across matrix arguments.
pub struct PairFunctional {
    n: usize,
    alpha: Partition,
    beta: Partition,
    blocks: Vec<PairBlock>,
}

impl PairFunctional {
    pub fn new(alpha: &Partition, beta: &Partition, n: usize, cap: u128) -> Result<Self> {
        let m = alpha.size() + beta.size();
        check_cap(n, m, cap)?;
        let empty = Partition::empty();
        let blocks = compositions(m as u32, n, None)
            .into_par_iter()
            .map(|w| {
                let space = WordSpace::weight(n, &w);
                let f = factor_image(&space, alpha, beta, &empty, &w)?;
                let parts = central_split(&space, &f, 0, m, n, None)?
                    .into_iter()
                    .map(|(g, b)| (g, complexify(&b)))
                    .collect();
                Ok(PairBlock { space, parts })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, alpha: alpha.clone(), beta: beta.clone(), blocks })
    }

    /// `φ^{αβ}_γ(X,Y)` for every `γ ⊢ |α|+|β|` of depth at most `n`.
    pub fn evaluate(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Vec<(Partition, f64)>> {
        check_inputs(&[x, y], self.n)?;
        let (a, b) = (self.alpha.size(), self.beta.size());
        let mats = slot_matrices(&[a, b], &[x, y]);
        let norm = factorial(a) * factorial(b);
        let gammas = enumerate_partitions(a + b, self.n);
        let mut acc = vec![0.0; gammas.len()];
        for blk in &self.blocks {
            if blk.parts.iter().all(|(_, l)| l.ncols() == 0) {
                continue;
            }
            let t = block_operator(&blk.space, &mats);
            for (g, l) in &blk.parts {
                if l.ncols() == 0 {
                    continue;
                }
                let i = gammas.iter().position(|x| x == g).expect("split shape is enumerated");
                acc[i] += (l.adjoint() * &t * l).trace().re;
            }
        }
        Ok(gammas.into_iter().zip(acc).map(|(g, v)| (g, v / norm)).collect())
    }
}

pub fn phi_pair(alpha: &Partition, beta: &Partition, gamma: &Partition, x: &HermitianMatrix, y: &HermitianMatrix, cap: u128) -> Result<f64> {
    let n = x.dim();
    if gamma.size() != alpha.size() + beta.size() {
        return Ok(0.0);
    }
    let f = PairFunctional::new(alpha, beta, n, cap)?;
    Ok(f.evaluate(x, y)?.into_iter().find(|(g, _)| g == gamma).map_or(0.0, |(_, v)| v))
}

struct TripleSplit {
    epsilon: Partition,
    lefts: Vec<(Partition, DMatrix<Complex64>)>,
    rights: Vec<(Partition, DMatrix<Complex64>)>,
    overlaps: Vec<Vec<DMatrix<Complex64>>>,
}

struct TripleBlock {
    space: WordSpace,
    splits: Vec<TripleSplit>,
}

/// Multiplicity bases for every `φ^{αβδ}_{γεφ}` with fixed `(α,β,δ)`.
pub struct TripleFunctional {
    n: usize,
    alpha: Partition,
    beta: Partition,
    delta: Partition,
    blocks: Vec<TripleBlock>,
}

impl TripleFunctional {
    pub fn new(alpha: &Partition, beta: &Partition, delta: &Partition, n: usize, cap: u128) -> Result<Self> {
        let (a, b, d) = (alpha.size(), beta.size(), delta.size());
        let k = a + b + d;
        check_cap(n, k, cap)?;
        let blocks = compositions(k as u32, n, None)
            .into_par_iter()
            .map(|w| {
                let space = WordSpace::weight(n, &w);
                let f = factor_image(&space, alpha, beta, delta, &w)?;
                let mut splits = Vec::new();
                for (epsilon, e) in central_split(&space, &f, 0, k, n, None)? {
                    let lefts: Vec<_> = central_split(&space, &e, 0, a + b, n, None)?;
                    let rights: Vec<_> = central_split(&space, &e, a, k, n, None)?;
                    let overlaps = lefts
                        .iter()
                        .map(|(_, l)| rights.iter().map(|(_, r)| complexify(&(l.transpose() * r))).collect())
                        .collect();
                    splits.push(TripleSplit {
                        epsilon,
                        lefts: lefts.into_iter().map(|(g, l)| (g, complexify(&l))).collect(),
                        rights: rights.into_iter().map(|(p, r)| (p, complexify(&r))).collect(),
                        overlaps,
                    });
                }
                Ok(TripleBlock { space, splits })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, alpha: alpha.clone(), beta: beta.clone(), delta: delta.clone(), blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `φ^{αβδ}_{γεφ}(X,Y,Z)` for every label with this `(α,β,δ)` whose
    /// projectors are nonzero, sorted by label.
    pub fn evaluate(&self, x: &HermitianMatrix, y: &HermitianMatrix, z: &HermitianMatrix) -> Result<Vec<(SixJLabel, Complex64)>> {
        check_inputs(&[x, y, z], self.n)?;
        let (a, b, d) = (self.alpha.size(), self.beta.size(), self.delta.size());
        let mats = slot_matrices(&[a, b, d], &[x, y, z]);
        let norm = factorial(a) * factorial(b) * factorial(d);
        let mut acc: std::collections::BTreeMap<SixJLabel, Complex64> = Default::default();
        for blk in &self.blocks {
            if blk.splits.is_empty() {
                continue;
            }
            let t = block_operator(&blk.space, &mats);
            for s in &blk.splits {
                for (i, (gamma, l)) in s.lefts.iter().enumerate() {
                    let tl = &t * l;
                    for (j, (phi, r)) in s.rights.iter().enumerate() {
                        let m = r.adjoint() * &tl;
                        let v = (m * &s.overlaps[i][j]).trace();
                        let label = SixJLabel::new(
                            self.alpha.clone(),
                            self.beta.clone(),
                            gamma.clone(),
                            self.delta.clone(),
                            s.epsilon.clone(),
                            phi.clone(),
                        );
                        *acc.entry(label).or_default() += v;
                    }
                }
            }
        }
        Ok(acc.into_iter().map(|(l, v)| (l, v / norm)).collect())
    }
}

pub fn phi_triple(label: &SixJLabel, x: &HermitianMatrix, y: &HermitianMatrix, z: &HermitianMatrix, cap: u128) -> Result<Complex64> {
    let n = x.dim();
    label.check(n)?;
    let f = TripleFunctional::new(&label.alpha, &label.beta, &label.delta, n, cap)?;
    Ok(f.evaluate(x, y, z)?.into_iter().find(|(l, _)| l == label).map_or(Complex64::new(0.0, 0.0), |(_, v)| v))
}
