//! 6j norms from the multiplicity spaces of a single highest-weight line.
//!
//! Fixing one Gelfand–Tsetlin vector in each of `W_α, W_β, W_δ` and the
//! weight `ε` leaves a space on which `Π^ε` cuts out
//! `⊕_γ C^γ_{αβ} ⊗ C^ε_{γδ} ≅ ⊕_φ C^ε_{αφ} ⊗ C^φ_{βδ}`. The two splittings
//! come from the central elements of the slot ranges `[0,|α|+|β|)` and
//! `[|α|,k)`, and the overlap matrices between them are the 6j blocks.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::gt::{central_split, tableau_basis};
use super::projector::{pick, tensor_blocks};
use super::words::WordSpace;
use super::{check_cap, SixJLabel};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// Norms of one 6j symbol. Ranks are the dimensions of the two multiplicity
/// spaces `⊕ C^γ_{αβ}⊗C^ε_{γδ}` restricted to this `γ` (left) and `φ` (right).
#[derive(Clone, Debug, PartialEq)]
pub struct SixJRecord {
    pub n: usize,
    pub label: SixJLabel,
    pub inf_norm: f64,
    pub two_norm_sq: f64,
    pub rank_left: usize,
    pub rank_right: usize,
}

impl SixJRecord {
    fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "label": self.label.to_string(),
            "inf_norm": self.inf_norm,
            "two_norm_sq": self.two_norm_sq,
            "rank_left": self.rank_left,
            "rank_right": self.rank_right,
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed cache record {v}"));
        let uint = |key: &str| v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(bad);
        let real = |key: &str| v.get(key).and_then(Value::as_f64).ok_or_else(bad);
        Ok(Self {
            n: uint("n")?,
            label: v.get("label").and_then(Value::as_str).ok_or_else(bad)?.parse()?,
            inf_norm: real("inf_norm")?,
            two_norm_sq: real("two_norm_sq")?,
            rank_left: uint("rank_left")?,
            rank_right: uint("rank_right")?,
        })
    }
}

/// All labels `(α,β,γ,δ,ε,φ)` sharing `(α,β,δ,ε)`, over every admissible
/// `γ ⊢ |α|+|β|` and `φ ⊢ |β|+|δ|` of depth at most `n`.
pub fn sixj_group(
    alpha: &Partition,
    beta: &Partition,
    delta: &Partition,
    epsilon: &Partition,
    n: usize,
    cap: u128,
) -> Result<Vec<SixJRecord>> {
    let (a, b, d) = (alpha.size(), beta.size(), delta.size());
    let k = a + b + d;
    if epsilon.size() != k {
        return Err(Error::SizeMismatch { expected: k, got: epsilon.size() });
    }
    for p in [alpha, beta, delta, epsilon] {
        if p.depth() > n {
            return Err(Error::DepthExceeded { depth: p.depth(), n });
        }
    }
    check_cap(n, k, cap)?;
    let weight = epsilon.padded(n)?;
    let space = WordSpace::weight(n, &weight);
    let m = tensor_blocks(&space, [alpha, beta, delta], &weight, |lam, w| tableau_basis(lam, w, n))?;
    let e = pick(&space, &m, 0..k, n, epsilon)?;
    let lefts: HashMap<Partition, DMatrix<f64>> = central_split(&space, &e, 0, a + b, n, None)?.into_iter().collect();
    let rights: HashMap<Partition, DMatrix<f64>> = central_split(&space, &e, a, k, n, None)?.into_iter().collect();
    let mut out = Vec::new();
    for gamma in enumerate_partitions(a + b, n) {
        for phi in enumerate_partitions(b + d, n) {
            let l = lefts.get(&gamma);
            let r = rights.get(&phi);
            let (inf_norm, two_norm_sq) = match (l, r) {
                (Some(l), Some(r)) if l.ncols() > 0 && r.ncols() > 0 => {
                    let s = l.transpose() * r;
                    (s.singular_values().max().min(1.0), s.norm_squared())
                }
                _ => (0.0, 0.0),
            };
            out.push(SixJRecord {
                n,
                label: SixJLabel::new(alpha.clone(), beta.clone(), gamma.clone(), delta.clone(), epsilon.clone(), phi),
                inf_norm,
                two_norm_sq,
                rank_left: l.map_or(0, |x| x.ncols()),
                rank_right: r.map_or(0, |x| x.ncols()),
            });
        }
    }
    Ok(out)
}

type GroupKey = (Partition, Partition, Partition, Partition);

fn group_key(l: &SixJLabel) -> GroupKey {
    (l.alpha.clone(), l.beta.clone(), l.delta.clone(), l.epsilon.clone())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
    pub loaded: usize,
}

/// Memoizing front end for [`sixj_group`], optionally backed by a JSON-lines
/// file `<dir>/sixj-n{n}.jsonl`.
pub struct SixJEngine {
    n: usize,
    cap: u128,
    records: Mutex<HashMap<SixJLabel, SixJRecord>>,
    groups: Mutex<HashSet<GroupKey>>,
    file: Option<Mutex<File>>,
    path: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
    loaded: usize,
}

impl SixJEngine {
    pub fn new(n: usize, cap: u128) -> Self {
        Self {
            n,
            cap,
            records: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashSet::new()),
            file: None,
            path: None,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            loaded: 0,
        }
    }

    pub fn with_cache_dir(n: usize, cap: u128, dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("sixj-n{n}.jsonl"));
        let mut engine = Self::new(n, cap);
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            let mut records = engine.records.lock().unwrap();
            let mut groups = engine.groups.lock().unwrap();
            for line in reader.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                // a torn final line from an interrupted run is skipped
                let Ok(v) = serde_json::from_str::<Value>(&line) else { continue };
                let rec = SixJRecord::from_json(&v)?;
                if rec.n != n {
                    continue;
                }
                groups.insert(group_key(&rec.label));
                records.insert(rec.label.clone(), rec);
            }
            engine.loaded = records.len();
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        engine.file = Some(Mutex::new(file));
        engine.path = Some(path);
        Ok(engine)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn cache_path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.records.lock().unwrap().len(),
            loaded: self.loaded,
        }
    }

    fn ensure_group(&self, key: &GroupKey) -> Result<bool> {
        if self.groups.lock().unwrap().contains(key) {
            return Ok(true);
        }
        let (alpha, beta, delta, epsilon) = key;
        let recs = sixj_group(alpha, beta, delta, epsilon, self.n, self.cap)?;
        if let Some(file) = &self.file {
            let mut buf = String::new();
            for r in &recs {
                buf.push_str(&r.to_json().to_string());
                buf.push('\n');
            }
            let mut f = file.lock().unwrap();
            f.write_all(buf.as_bytes())?;
            f.flush()?;
        }
        let mut records = self.records.lock().unwrap();
        for r in recs {
            records.entry(r.label.clone()).or_insert(r);
        }
        self.groups.lock().unwrap().insert(key.clone());
        Ok(false)
    }

    pub fn get(&self, label: &SixJLabel) -> Result<SixJRecord> {
        label.check(self.n)?;
        let hit = self.ensure_group(&group_key(label))?;
        let counter = if hit { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        self.records
            .lock()
            .unwrap()
            .get(label)
            .cloned()
            .ok_or_else(|| Error::Numerical(format!("label {label} missing from its computed group")))
    }

    pub fn inf_norm(&self, label: &SixJLabel) -> Result<f64> {
        Ok(self.get(label)?.inf_norm)
    }

    /// All records of the group `(α,β,δ,ε)`.
    pub fn group(&self, alpha: &Partition, beta: &Partition, delta: &Partition, epsilon: &Partition) -> Result<Vec<SixJRecord>> {
        let key = (alpha.clone(), beta.clone(), delta.clone(), epsilon.clone());
        let hit = self.ensure_group(&key)?;
        let counter = if hit { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        let records = self.records.lock().unwrap();
        let mut out = Vec::new();
        for gamma in enumerate_partitions(alpha.size() + beta.size(), self.n) {
            for phi in enumerate_partitions(beta.size() + delta.size(), self.n) {
                let l = SixJLabel::new(alpha.clone(), beta.clone(), gamma.clone(), delta.clone(), epsilon.clone(), phi);
                if let Some(r) = records.get(&l) {
                    out.push(r.clone());
                }
            }
        }
        Ok(out)
    }

    /// Computes the given groups in parallel.
    pub fn prefetch(&self, keys: &[(Partition, Partition, Partition, Partition)]) -> Result<()> {
        keys.par_iter().try_for_each(|k| self.ensure_group(k).map(|_| ()))
    }
}

/// Every `(α,β,δ,ε)` with `|α|+|β|+|δ| = |ε| = k` and depths at most `n`.
pub fn all_groups(k: usize, n: usize) -> Vec<(Partition, Partition, Partition, Partition)> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            let d = k - a - b;
            for alpha in enumerate_partitions(a, n) {
                for beta in enumerate_partitions(b, n) {
                    for delta in enumerate_partitions(d, n) {
                        for eps in enumerate_partitions(k, n) {
                            out.push((alpha.clone(), beta.clone(), delta.clone(), eps));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schurweyl::projector::sixj_full;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_row_labels_have_unit_norm() {
        let recs = sixj_group(&p(&[2]), &p(&[1]), &p(&[1]), &p(&[4]), 1, 1 << 20).unwrap();
        assert_eq!(recs.len(), 1);
        assert!((recs[0].inf_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_and_full_routes_agree() {
        for key in all_groups(4, 2) {
            let recs = sixj_group(&key.0, &key.1, &key.2, &key.3, 2, 1 << 20).unwrap();
            for r in recs {
                let full = sixj_full(&r.label, 2, 1 << 20).unwrap();
                assert!((full.inf_norm - r.inf_norm).abs() < 1e-9, "{} {} {}", r.label, full.inf_norm, r.inf_norm);
                assert!((full.two_norm_sq - r.two_norm_sq).abs() < 1e-9, "{}", r.label);
            }
        }
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let l: SixJLabel = "[1];[1];[2];[1];[3];[2]".parse().unwrap();
        let first = {
            let e = SixJEngine::with_cache_dir(2, 1 << 20, dir.path()).unwrap();
            let r = e.get(&l).unwrap();
            assert_eq!(e.stats().misses, 1);
            r
        };
        let e = SixJEngine::with_cache_dir(2, 1 << 20, dir.path()).unwrap();
        assert!(e.stats().loaded > 0);
        assert_eq!(e.get(&l).unwrap(), first);
        assert_eq!(e.stats().hits, 1);
    }
}
