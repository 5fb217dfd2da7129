//! Word bases of tensor powers and the action of slot transpositions on them.
//!
//! A word `w_0 w_1 … w_{k-1}` over `{0..n}` is identified with the standard
//! basis vector of `(ℂⁿ)^{⊗k}` whose index is the base-`n` number
//! `Σ w_j n^{k-1-j}`.

use std::collections::HashMap;

use nalgebra::DMatrix;

pub fn pow_usize(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, _| acc * n)
}

pub fn decode(code: usize, n: usize, k: usize) -> Vec<u8> {
    let mut w = vec![0u8; k];
    let mut c = code;
    for j in (0..k).rev() {
        w[j] = (c % n) as u8;
        c /= n;
    }
    w
}

pub fn encode(word: &[u8], n: usize) -> usize {
    word.iter().fold(0usize, |acc, &l| acc * n + l as usize)
}

/// Letter counts of a word.
pub fn weight_of(word: &[u8], n: usize) -> Vec<u32> {
    let mut w = vec![0u32; n];
    for &l in word {
        w[l as usize] += 1;
    }
    w
}

/// All compositions of `total` into `parts` non-negative entries bounded by `bound`.
pub fn compositions(total: u32, parts: usize, bound: Option<&[u32]>) -> Vec<Vec<u32>> {
    fn rec(rem: u32, i: usize, cur: &mut Vec<u32>, bound: Option<&[u32]>, out: &mut Vec<Vec<u32>>) {
        let parts = cur.len();
        if i == parts - 1 {
            if bound.is_none_or(|b| rem <= b[i]) {
                cur[i] = rem;
                out.push(cur.clone());
            }
            return;
        }
        let hi = bound.map_or(rem, |b| b[i].min(rem));
        for v in (0..=hi).rev() {
            cur[i] = v;
            rec(rem - v, i + 1, cur, bound, out);
        }
    }
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(total, 0, &mut vec![0; parts], bound, &mut out);
    out
}

/// A set of words closed under the transpositions of a slot range, with
/// precomputed permutation tables for those transpositions.
#[derive(Clone, Debug)]
pub struct WordSpace {
    n: usize,
    k: usize,
    codes: Vec<usize>,
    index: HashMap<usize, usize>,
    lo: usize,
    hi: usize,
    swaps: Vec<Vec<u32>>,
}

impl WordSpace {
    /// Words with the given letter counts; transpositions of all `k` slots.
    pub fn weight(n: usize, weight: &[u32]) -> Self {
        let k: u32 = weight.iter().sum();
        let k = k as usize;
        let mut codes = Vec::new();
        let mut word = vec![0u8; k];
        let mut left = weight.to_vec();
        fn rec(pos: usize, word: &mut Vec<u8>, left: &mut Vec<u32>, n: usize, codes: &mut Vec<usize>) {
            if pos == word.len() {
                codes.push(encode(word, n));
                return;
            }
            for l in 0..left.len() {
                if left[l] > 0 {
                    left[l] -= 1;
                    word[pos] = l as u8;
                    rec(pos + 1, word, left, n, codes);
                    left[l] += 1;
                }
            }
        }
        rec(0, &mut word, &mut left, n, &mut codes);
        Self::from_codes(n, k, codes, 0, k)
    }

    /// An arbitrary set of words, closed under transpositions inside `lo..hi`.
    pub fn from_codes(n: usize, k: usize, codes: Vec<usize>, lo: usize, hi: usize) -> Self {
        let index: HashMap<usize, usize> = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut swaps = Vec::new();
        let powers: Vec<usize> = (0..k).map(|j| pow_usize(n, k - 1 - j)).collect();
        for j in lo..hi {
            for i in lo..j {
                let table = codes
                    .iter()
                    .map(|&c| {
                        let di = (c / powers[i]) % n;
                        let dj = (c / powers[j]) % n;
                        let swapped = c - di * powers[i] - dj * powers[j] + dj * powers[i] + di * powers[j];
                        index[&swapped] as u32
                    })
                    .collect();
                swaps.push(table);
            }
        }
        Self { n, k, codes, index, lo, hi, swaps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[usize] {
        &self.codes
    }

    pub fn position(&self, code: usize) -> Option<usize> {
        self.index.get(&code).copied()
    }

    fn swap_table(&self, i: usize, j: usize) -> &[u32] {
        debug_assert!(self.lo <= i && i < j && j < self.hi);
        let (ri, rj) = (i - self.lo, j - self.lo);
        &self.swaps[rj * (rj - 1) / 2 + ri]
    }

    /// Adds `(i j) · v` to `out`.
    fn add_swap(&self, i: usize, j: usize, v: &DMatrix<f64>, out: &mut DMatrix<f64>) {
        let t = self.swap_table(i, j);
        for c in 0..v.ncols() {
            let src = v.column(c);
            let mut dst = out.column_mut(c);
            for (r, &p) in t.iter().enumerate() {
                dst[r] += src[p as usize];
            }
        }
    }

    pub fn apply_swap(&self, i: usize, j: usize, v: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(v.nrows(), v.ncols());
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.add_swap(i, j, v, &mut out);
        out
    }

    /// Jucys–Murphy element `X_j = Σ_{lo ≤ i < j} (i j)` applied to `v`.
    pub fn apply_jm(&self, j: usize, lo: usize, v: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(v.nrows(), v.ncols());
        for i in lo..j {
            self.add_swap(i, j, v, &mut out);
        }
        out
    }

    /// Central element `Σ_{lo<j<hi} X_j^r` applied to `v`.
    pub fn apply_power_sum(&self, r: u32, lo: usize, hi: usize, v: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(v.nrows(), v.ncols());
        if r == 1 {
            for j in lo + 1..hi {
                for i in lo..j {
                    self.add_swap(i, j, v, &mut out);
                }
            }
            return out;
        }
        for j in lo + 1..hi {
            let mut y = v.clone();
            for _ in 0..r {
                y = self.apply_jm(j, lo, &y);
            }
            out += y;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_space_size() {
        let s = WordSpace::weight(3, &[2, 1, 1]);
        assert_eq!(s.dim(), 12);
        for &c in s.codes() {
            assert_eq!(weight_of(&decode(c, 3, 4), 3), vec![2, 1, 1]);
        }
    }

    #[test]
    fn swap_is_involution() {
        let s = WordSpace::weight(2, &[2, 2]);
        let v = DMatrix::from_fn(s.dim(), 2, |r, c| (r * 3 + c) as f64);
        let w = s.apply_swap(0, 3, &s.apply_swap(0, 3, &v));
        assert_eq!(v, w);
    }

    #[test]
    fn transposition_class_sum_on_symmetric_vector() {
        // all-ones vector is symmetric: each transposition fixes it
        let s = WordSpace::weight(2, &[3, 2]);
        let v = DMatrix::from_element(s.dim(), 1, 1.0);
        let z = s.apply_power_sum(1, 0, 5, &v);
        assert!((z - v * 10.0).norm() < 1e-12);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2, None).len(), 4);
        assert_eq!(compositions(3, 2, Some(&[1, 5])).len(), 2);
        assert_eq!(compositions(0, 0, None), vec![Vec::<u32>::new()]);
    }
}
