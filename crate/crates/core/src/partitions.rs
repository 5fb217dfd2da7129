//! Young diagrams and the integer data attached to them: hook products,
//! dimensions of symmetric-group and unitary-group irreducibles, symmetric
//! group characters and enumeration.
//!
//! A [`Partition`] never stores trailing zeros. Functions that need a number
//! of rows `n` take it explicitly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

/// Cycle lengths of a permutation, sorted descending.
pub type CycleType = Partition;

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts.iter().map(|&p| p as i64).collect()));
        }
        Ok(Self::trimmed(parts))
    }

    /// Sorts the input into weakly decreasing order first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::trimmed(parts)
    }

    fn trimmed(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(m: u32) -> Self {
        Self::trimmed(vec![m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the depth.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.depth() > n {
            return Err(Error::DepthExceeded { depth: self.depth(), n });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let parts = (0..first)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Boxes as `(row, column)`, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Contents `column - row` of all boxes.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().map(|(i, j)| j as i64 - i as i64).collect()
    }

    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(i, j)| (self.0[i] - j as u32) + (conj.0[j] - i as u32) - 1)
            .collect()
    }

    /// Whether every box of `self` is also a box of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.depth() <= other.depth() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Rows where a box can be added while keeping a partition.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.depth())
            .filter(|&i| i == 0 || self.part(i) < self.part(i - 1))
            .collect()
    }

    pub fn with_box_in_row(&self, row: usize) -> Partition {
        let mut v = self.0.clone();
        if row == v.len() {
            v.push(1);
        } else {
            v[row] += 1;
        }
        Partition(v)
    }

    /// Power sum `sum c^r` over the contents of all boxes.
    pub fn content_power_sum(&self, r: u32) -> f64 {
        self.contents().iter().map(|&c| (c as f64).powi(r as i32)).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("partition must be bracketed: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::from_unsorted(parts.to_vec())
    }
}

fn factorial_big(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Product of all hook lengths.
pub fn hook_product(lambda: &Partition) -> BigUint {
    lambda
        .hook_lengths()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h)
}

pub fn hook_product_f64(lambda: &Partition) -> f64 {
    lambda.hook_lengths().into_iter().map(f64::from).product()
}

pub fn ln_hook_product(lambda: &Partition) -> f64 {
    lambda.hook_lengths().into_iter().map(|h| f64::from(h).ln()).sum()
}

/// Dimension of the symmetric-group irreducible, `|λ|! / H_λ`.
pub fn dim_sym_irrep(lambda: &Partition) -> BigUint {
    let num = factorial_big(lambda.size());
    let den = hook_product(lambda);
    let q = &num / &den;
    assert!(&q * &den == num, "hook product does not divide |λ|! for {lambda}");
    q
}

pub fn dim_sym_irrep_f64(lambda: &Partition) -> f64 {
    dim_sym_irrep(lambda).to_f64().unwrap_or(f64::INFINITY)
}

/// Dimension of the U(n) irreducible with highest weight `λ`.
pub fn weyl_dim(lambda: &Partition, n: usize) -> Result<BigUint> {
    let l = lambda.padded(n)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (l[i] as u64 - l[j] as u64) + (j - i) as u64;
            den *= (j - i) as u64;
        }
    }
    Ok(num / den)
}

pub fn weyl_dim_f64(lambda: &Partition, n: usize) -> Result<f64> {
    Ok(weyl_dim(lambda, n)?.to_f64().unwrap_or(f64::INFINITY))
}

/// All partitions of `k` with at most `max_rows` rows, lexicographically decreasing.
pub fn enumerate_partitions(k: usize, max_rows: usize) -> Vec<Partition> {
    fn rec(rem: u32, max_part: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k as u32, k as u32, max_rows, &mut Vec::new(), &mut out);
    out
}

/// Partitions `μ` with `λ_{i+1} ≤ μ_i ≤ λ_i`, one row fewer than `λ`.
pub fn branching_predecessors(lambda: &Partition) -> Vec<Partition> {
    let m = lambda.depth();
    if m == 0 {
        return Vec::new();
    }
    interlacing(lambda, m - 1)
}

/// Partitions `μ` with at most `rows` rows and `λ_{i+1} ≤ μ_i ≤ λ_i` for `i < rows`.
/// Requires `depth(λ) ≤ rows + 1`.
pub fn interlacing(lambda: &Partition, rows: usize) -> Vec<Partition> {
    if lambda.depth() > rows + 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; rows];
    fn rec(i: usize, lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            out.push(Partition::trimmed(cur.clone()));
            return;
        }
        let hi = lambda.part(i);
        let lo = lambda.part(i + 1);
        for v in (lo..=hi).rev() {
            cur[i] = v;
            rec(i + 1, lambda, cur, out);
        }
    }
    rec(0, lambda, &mut cur, &mut out);
    out
}

/// Order of the centralizer of a permutation with the given cycle type.
pub fn centralizer_order(cycle_type: &CycleType) -> BigUint {
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for &c in cycle_type.parts() {
        *counts.entry(c).or_default() += 1;
    }
    counts.into_iter().fold(BigUint::one(), |acc, (len, m)| {
        let mut acc = acc;
        for i in 1..=m {
            acc *= len as u64 * i;
        }
        acc
    })
}

/// Number of permutations of the given cycle type.
pub fn class_size(cycle_type: &CycleType) -> BigUint {
    factorial_big(cycle_type.size()) / centralizer_order(cycle_type)
}

type CharKey = (Vec<u32>, Vec<u32>);

fn char_cache() -> &'static Mutex<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character `χ_λ` on the class of the given cycle type.
pub fn sym_character(lambda: &Partition, cycle_type: &CycleType) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), got: cycle_type.size() });
    }
    Ok(mn_character(lambda.parts(), cycle_type.parts()))
}

// Murnaghan–Nakayama on beta-numbers: removing a rim hook of length r moves a
// bead from b to b - r, with sign (-1)^(beads strictly in between).
fn mn_character(lambda: &[u32], cycles: &[u32]) -> i64 {
    if cycles.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), cycles.to_vec());
    if let Some(&v) = char_cache().lock().unwrap().get(&key) {
        return v;
    }
    let r = cycles[0] as i64;
    let rest = &cycles[1..];
    let len = lambda.len();
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        let t = b - r;
        if t < 0 || beta.contains(&t) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > t && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = t;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let l = nb.len();
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (l - 1 - i) as i64) as u32)
            .collect();
        let mu = Partition::trimmed(parts);
        total += sign * mn_character(mu.parts(), rest);
    }
    char_cache().lock().unwrap().insert(key, total);
    total
}
