use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::schurweyl::HermitianMatrix;
use crate::symfunc::Spectrum;

pub const TRACE_TOL: f64 = 1e-9;

/// Six spectra `(a,b,c,d,e,f)` of equal length.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTuple {
    pub a: Spectrum,
    pub b: Spectrum,
    pub c: Spectrum,
    pub d: Spectrum,
    pub e: Spectrum,
    pub f: Spectrum,
}

impl SpectrumTuple {
    pub fn new(slots: [Spectrum; 6]) -> Result<Self> {
        let n = slots[0].len();
        if let Some(s) = slots.iter().find(|s| s.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: s.len() });
        }
        let [a, b, c, d, e, f] = slots;
        Ok(Self { a, b, c, d, e, f })
    }

    /// Spectra of `(A, B, A+B, D, A+B+D, B+D)`.
    pub fn from_matrices(a: &HermitianMatrix, b: &HermitianMatrix, d: &HermitianMatrix) -> Result<Self> {
        let c = a.add(b)?;
        let f = b.add(d)?;
        let e = c.add(d)?;
        Self::new([a.spectrum(), b.spectrum(), c.spectrum(), d.spectrum(), e.spectrum(), f.spectrum()])
    }

    pub fn slots(&self) -> [&Spectrum; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
    }

    pub fn into_slots(self) -> [Spectrum; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn map(&self, g: impl Fn(&Spectrum) -> Spectrum) -> Self {
        let s = self.slots();
        Self { a: g(s[0]), b: g(s[1]), c: g(s[2]), d: g(s[3]), e: g(s[4]), f: g(s[5]) }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn traces(&self) -> [f64; 6] {
        self.slots().map(|s| s.trace())
    }

    /// Largest violation among `Tr c = Tr a + Tr b`, `Tr f = Tr b + Tr d`,
    /// `Tr e = Tr a + Tr f`, `Tr e = Tr c + Tr d`.
    pub fn trace_residual(&self) -> f64 {
        let [a, b, c, d, e, f] = self.traces();
        [c - a - b, f - b - d, e - a - f, e - c - d].iter().map(|r| r.abs()).fold(0.0, f64::max)
    }

    fn trace_scale(&self) -> f64 {
        self.traces().iter().map(|t| t.abs()).fold(1.0, f64::max)
    }

    pub fn is_trace_valid(&self) -> bool {
        self.trace_residual() <= TRACE_TOL * self.trace_scale()
    }

    pub fn check_trace_valid(&self) -> Result<()> {
        if self.is_trace_valid() {
            Ok(())
        } else {
            Err(Error::TraceMismatch(format!("trace conditions violated by {:.3e}", self.trace_residual())))
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.slots().iter().map(|s| s.min()).fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.slots().iter().all(|s| s.is_nonnegative())
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        self.slots().iter().try_for_each(|s| s.check_nonnegative())
    }
}

impl fmt::Display for SpectrumTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.slots() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Six non-empty lines, one spectrum each, in slot order `a..f`.
impl FromStr for SpectrumTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if lines.len() != 6 {
            return Err(Error::Parse(format!("a tuple needs six spectra, found {}", lines.len())));
        }
        let spectra: Vec<Spectrum> = lines.iter().map(|l| l.parse()).collect::<Result<_>>()?;
        let slots: [Spectrum; 6] = spectra.try_into().expect("six entries");
        Self::new(slots)
    }
}
