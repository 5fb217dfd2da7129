//! The `n = 2` case: traceless `2×2` Hermitian matrices are vectors in ℝ³, so
//! a tuple is realizable exactly when its six half-gaps are the edge lengths
//! of a Euclidean tetrahedron.
//!
//! Vertices are placed so that `A = v₁−v₀`, `B = v₂−v₁`, `D = v₃−v₂`; then
//! `|v₀v₁| = ℓ_a`, `|v₁v₂| = ℓ_b`, `|v₀v₂| = ℓ_c`, `|v₂v₃| = ℓ_d`,
//! `|v₀v₃| = ℓ_e`, `|v₁v₃| = ℓ_f`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tetra::SpectrumTuple;

/// Strictness tolerance on the Cayley–Menger sign, relative to `max ℓ⁶`.
pub const CM_TOL: f64 = 1e-12;
const TRIANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeLengths(pub [f64; 6]);

impl EdgeLengths {
    pub fn new(l: [f64; 6]) -> Result<Self> {
        if let Some(&v) = l.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::Negative(v));
        }
        Ok(Self(l))
    }

    pub fn a(&self) -> f64 {
        self.0[0]
    }
    pub fn b(&self) -> f64 {
        self.0[1]
    }
    pub fn c(&self) -> f64 {
        self.0[2]
    }
    pub fn d(&self) -> f64 {
        self.0[3]
    }
    pub fn e(&self) -> f64 {
        self.0[4]
    }
    pub fn f(&self) -> f64 {
        self.0[5]
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// The faces `(a,b,c)`, `(a,f,e)`, `(c,d,e)`, `(b,d,f)`.
    pub fn faces(&self) -> [[f64; 3]; 4] {
        let [a, b, c, d, e, f] = self.0;
        [[a, b, c], [a, f, e], [c, d, e], [b, d, f]]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }
}

/// Half-gap `(x₁ − x₂)/2` of each slot.
pub fn edge_lengths(t: &SpectrumTuple) -> Result<EdgeLengths> {
    if t.n() != 2 {
        return Err(Error::LengthMismatch { expected: 2, got: t.n() });
    }
    Ok(EdgeLengths(t.slots().map(|s| 0.5 * (s.values()[0] - s.values()[1]))))
}

/// Squared volume `det(CM)/288`, expanded over the three pairs of opposite
/// edges `(a,d)`, `(c,f)`, `(b,e)` and the four faces.
pub fn cayley_menger(l: &EdgeLengths) -> f64 {
    let [a, b, c, d, e, f] = l.0.map(|x| x * x);
    let pairs = a * d * (b + c + e + f - a - d) + c * f * (a + b + d + e - c - f) + b * e * (a + c + d + f - b - e);
    let faces = a * b * c + a * e * f + c * d * e + b * d * f;
    (pairs - faces) / 144.0
}

pub fn face_triangles_hold(l: &EdgeLengths) -> bool {
    let tol = TRIANGLE_TOL * l.max().max(1.0);
    l.faces().iter().all(|&[x, y, z]| x <= y + z + tol && y <= x + z + tol && z <= x + y + tol)
}

fn cm_floor(l: &EdgeLengths) -> f64 {
    -CM_TOL * l.max().powi(6).max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    TraceConditions,
    Triangle(usize),
    CayleyMenger,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::TraceConditions => write!(f, "trace"),
            Rejection::Triangle(i) => write!(f, "triangle-face-{i}"),
            Rejection::CayleyMenger => write!(f, "cayley-menger"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub reason: Option<Rejection>,
    pub cm: f64,
}

pub fn lengths_member(l: &EdgeLengths) -> Membership {
    let cm = cayley_menger(l);
    let tol = TRIANGLE_TOL * l.max().max(1.0);
    for (i, &[x, y, z]) in l.faces().iter().enumerate() {
        if x > y + z + tol || y > x + z + tol || z > x + y + tol {
            return Membership { member: false, reason: Some(Rejection::Triangle(i)), cm };
        }
    }
    if cm < cm_floor(l) {
        return Membership { member: false, reason: Some(Rejection::CayleyMenger), cm };
    }
    Membership { member: true, reason: None, cm }
}

/// Exact membership test for `n = 2` tuples.
pub fn tetra2_member(t: &SpectrumTuple) -> Result<Membership> {
    let l = edge_lengths(t)?;
    if !t.is_trace_valid() {
        return Ok(Membership { member: false, reason: Some(Rejection::TraceConditions), cm: cayley_menger(&l) });
    }
    Ok(lengths_member(&l))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceRecord {
    pub lc: f64,
    pub le: f64,
    pub lf: f64,
    pub triangle: bool,
    pub cm: f64,
    pub member: bool,
}

/// Evaluates every grid point `(ℓ_c, ℓ_e, ℓ_f) ∈ [min,max]³` with `steps`
/// points per axis; rows ordered with `ℓ_f` fastest.
pub fn slice_scan(la: f64, lb: f64, ld: f64, min: f64, max: f64, steps: usize) -> Result<Vec<SliceRecord>> {
    for (name, v) in [("la", la), ("lb", lb), ("ld", ld)] {
        if !(v > 0.0) {
            return Err(Error::NotPositive(name.into()));
        }
    }
    if steps < 2 || !(max > min) || min < 0.0 {
        return Err(Error::InvalidParameter(format!("grid [{min},{max}] with {steps} steps")));
    }
    let at = |i: usize| min + (max - min) * i as f64 / (steps - 1) as f64;
    Ok((0..steps)
        .into_par_iter()
        .flat_map_iter(|i| {
            let lc = at(i);
            (0..steps).flat_map(move |j| {
                let le = at(j);
                (0..steps).map(move |m| {
                    let lf = at(m);
                    let l = EdgeLengths([la, lb, lc, ld, le, lf]);
                    let triangle = face_triangles_hold(&l);
                    let v = lengths_member(&l);
                    SliceRecord { lc, le, lf, triangle, cm: v.cm, member: v.member }
                })
            })
        })
        .collect())
}

/// The six tetrahedra of the Regge family.
pub fn regge_orbit(l: &EdgeLengths) -> [EdgeLengths; 6] {
    let [a, b, c, d, e, f] = l.0;
    let s1 = (a + b + d + e) / 2.0;
    let s2 = (a + c + d + f) / 2.0;
    let s3 = (b + c + e + f) / 2.0;
    [
        [a, b, c, d, e, f],
        [s1 - a, s1 - b, c, s1 - d, s1 - e, f],
        [a, s3 - b, s3 - c, d, s3 - e, s3 - f],
        [s2 - a, b, s2 - c, s2 - d, e, s2 - f],
        [s2 - d, s1 - e, s3 - f, s2 - a, s1 - b, s3 - c],
        [s1 - d, s3 - e, s2 - f, s1 - a, s3 - b, s2 - c],
    ]
    .map(EdgeLengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Spectrum;
    use nalgebra::Matrix5;

    fn determinant_route(l: &EdgeLengths) -> f64 {
        let [a, b, c, d, e, f] = l.0.map(|x| x * x);
        let dist = [[0.0, a, c, e], [a, 0.0, b, f], [c, b, 0.0, d], [e, f, d, 0.0]];
        let m = Matrix5::from_fn(|i, j| match (i, j) {
            (0, 0) => 0.0,
            (0, _) | (_, 0) => 1.0,
            _ => dist[i - 1][j - 1],
        });
        m.determinant() / 288.0
    }

    #[test]
    fn regular_tetrahedron() {
        let l = EdgeLengths([1.0; 6]);
        assert!((cayley_menger(&l) - 1.0 / 72.0).abs() < 1e-15);
        assert!((determinant_route(&l) - 1.0 / 72.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_matches_determinant() {
        let l = EdgeLengths([5.0, 7.0, 74f64.sqrt(), 6.0, 110f64.sqrt(), 85f64.sqrt()]);
        assert!((cayley_menger(&l) - determinant_route(&l)).abs() < 1e-9);
        assert!((cayley_menger(&l) - 35.0 * 35.0).abs() < 1e-9);
    }

    #[test]
    fn edge_lengths_from_spectra() {
        let s = |v: &[f64]| Spectrum::new(v.to_vec()).unwrap();
        let t = SpectrumTuple::new([s(&[5.0, 1.0]), s(&[1.0, -1.0]), s(&[6.0, 0.0]), s(&[0.0, 0.0]), s(&[6.0, 0.0]), s(&[1.0, -1.0])]).unwrap();
        assert_eq!(edge_lengths(&t).unwrap().0, [2.0, 1.0, 3.0, 0.0, 3.0, 1.0]);
    }

    #[test]
    fn regge_equilateral_fixed() {
        let l = EdgeLengths([2.0; 6]);
        for r in regge_orbit(&l) {
            assert_eq!(r, l);
        }
        let l = EdgeLengths([1.0, 1.1, 1.2, 0.9, 1.3, 1.05]);
        let once = regge_orbit(&l)[1];
        assert!(regge_orbit(&once)[1].0.iter().zip(l.0).all(|(x, y)| (x - y).abs() < 1e-15));
    }
}
