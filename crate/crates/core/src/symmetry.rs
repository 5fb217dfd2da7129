//! Signed-permutation, shifting, scaling and traceless symmetries of
//! tetrahedral tuples.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::tetra::SpectrumTuple;

const SLOT_NAMES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// Slot `i` of `g(t)` is `t[perm[i]]`, inverted when `star[i]` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    pub perm: [usize; 6],
    pub star: [bool; 6],
}

impl SignedPermutation {
    pub const IDENTITY: Self = Self { perm: [0, 1, 2, 3, 4, 5], star: [false; 6] };

    /// `(a,b,c,d,e,f) ↦ (a, f, e, d*, c, b)`.
    pub const T1: Self = Self { perm: [0, 5, 4, 3, 2, 1], star: [false, false, false, true, false, false] };

    /// `(a,b,c,d,e,f) ↦ (c, e*, d*, f, b, a*)`.
    pub const T2: Self = Self { perm: [2, 4, 3, 5, 1, 0], star: [false, true, true, false, false, true] };

    pub fn new(perm: [usize; 6], star: [bool; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &p in &perm {
            if p >= 6 || seen[p] {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation of six slots")));
            }
            seen[p] = true;
        }
        Ok(Self { perm, star })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut perm = [0; 6];
        let mut star = [false; 6];
        for i in 0..6 {
            perm[i] = other.perm[self.perm[i]];
            star[i] = self.star[i] ^ other.star[self.perm[i]];
        }
        Self { perm, star }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_unsigned(&self) -> bool {
        self.star.iter().all(|s| !s)
    }

    pub fn apply(&self, t: &SpectrumTuple) -> SpectrumTuple {
        let src = t.slots();
        let slots = std::array::from_fn(|i| {
            let s = src[self.perm[i]];
            if self.star[i] {
                s.star()
            } else {
                s.clone()
            }
        });
        SpectrumTuple::new(slots).expect("slots keep their common length")
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..6 {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", SLOT_NAMES[self.perm[i]], if self.star[i] { "*" } else { "" })?;
        }
        write!(f, ")")
    }
}

/// Closure of `{T₁, T₂}`, sorted, after checking the order and the relations
/// `T₁², T₂⁴, (T₁T₂)⁶, (T₂T₁T₂T₁T₂)²`.
pub fn generate_group() -> Result<Vec<SignedPermutation>> {
    let gens = [SignedPermutation::T1, SignedPermutation::T2];
    let mut seen: HashSet<SignedPermutation> = HashSet::from([SignedPermutation::IDENTITY]);
    let mut queue = VecDeque::from([SignedPermutation::IDENTITY]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let x = h.compose(&g);
            if seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    if seen.len() != 48 {
        return Err(Error::Numerical(format!("generated group has order {}, expected 48", seen.len())));
    }
    for (name, ok) in relations() {
        if !ok {
            return Err(Error::Numerical(format!("relation {name} fails")));
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The four presentation relations and whether each reduces to the identity.
pub fn relations() -> [(&'static str, bool); 4] {
    let (t1, t2) = (SignedPermutation::T1, SignedPermutation::T2);
    let w = t2.compose(&t1).compose(&t2).compose(&t1).compose(&t2);
    [
        ("T1^2", t1.pow(2).is_identity()),
        ("T2^4", t2.pow(4).is_identity()),
        ("(T1T2)^6", t1.compose(&t2).pow(6).is_identity()),
        ("(T2T1T2T1T2)^2", w.pow(2).is_identity()),
    ]
}

/// Adds `(x, y, x+y, z, x+y+z, y+z)` slot-wise.
pub fn shift(t: &SpectrumTuple, x: f64, y: f64, z: f64) -> SpectrumTuple {
    let amounts = [x, y, x + y, z, x + y + z, y + z];
    let s = t.slots();
    SpectrumTuple::new(std::array::from_fn(|i| s[i].shifted(amounts[i]))).expect("same lengths")
}

pub fn scale(t: &SpectrumTuple, s: f64) -> Result<SpectrumTuple> {
    if !(s > 0.0) {
        return Err(Error::NotPositive(format!("scale factor {s}")));
    }
    Ok(t.map(|x| x.scaled(s)))
}

/// Each slot shifted by `−Tr x / n`.
pub fn to_traceless(t: &SpectrumTuple) -> SpectrumTuple {
    let n = t.n().max(1) as f64;
    t.map(|x| x.shifted(-x.trace() / n))
}

/// Necessary conditions `c_n ≥ a_n + b_n`, `f_n ≥ b_n + d_n`,
/// `e_n ≥ d_n + c_n`, `e_n ≥ a_n + f_n`; returns the violated ones.
pub fn min_eig_violations(t: &SpectrumTuple, tol: f64) -> Vec<&'static str> {
    let [a, b, c, d, e, f] = t.slots().map(|s| s.min());
    let checks = [
        ("c_n >= a_n + b_n", c - a - b),
        ("f_n >= b_n + d_n", f - b - d),
        ("e_n >= d_n + c_n", e - d - c),
        ("e_n >= a_n + f_n", e - a - f),
    ];
    checks.iter().filter(|(_, m)| *m < -tol).map(|(name, _)| *name).collect()
}

#[derive(Clone, Debug)]
pub struct NonnegativeShift {
    pub tuple: SpectrumTuple,
    pub shift: (f64, f64, f64),
    pub violations: Vec<&'static str>,
}

impl NonnegativeShift {
    pub fn passes_filter(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Smallest shift with `x ≥ −a_n`, `y ≥ −b_n`, `z ≥ −d_n` (zero where a slot
/// is already non-negative), together with the minimum-eigenvalue filter.
pub fn to_nonnegative(t: &SpectrumTuple) -> Result<NonnegativeShift> {
    t.check_trace_valid()?;
    let x = (-t.a.min()).max(0.0);
    let y = (-t.b.min()).max(0.0);
    let z = (-t.d.min()).max(0.0);
    let scale = t.slots().iter().flat_map(|s| s.values()).fold(1.0f64, |m, v| m.max(v.abs()));
    Ok(NonnegativeShift { tuple: shift(t, x, y, z), shift: (x, y, z), violations: min_eig_violations(t, 1e-12 * scale) })
}
