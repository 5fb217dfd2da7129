//! Degree-k inequality sweeps on a realized tuple and on a non-tetrahedron.
use tetra_horn::schurweyl::SixJEngine;
use tetra_horn::symmetry::to_nonnegative;
use tetra_horn::tetra::{random_tetra_sample, tet_inequality_check};
use tetra_horn::{Spectrum, SpectrumTuple};

fn main() -> tetra_horn::Result<()> {
    let engine = SixJEngine::new(2, 1 << 16);
    let member = random_tetra_sample(2, 3)?.tuple;
    let lengths = [5.0, 5.0, 9.0, 5.0, 5.0, 9.0];
    let traceless = SpectrumTuple::new(lengths.map(|l| Spectrum::new(vec![l, -l]).expect("descending")))?;
    let other = to_nonnegative(&traceless)?.tuple;
    for (name, t) in [("member", &member), ("non-member", &other)] {
        for k in 1..=8 {
            let r = tet_inequality_check(t, k, &engine)?;
            let w = r.worst().expect("triples");
            println!("{name:<10} k={k} triples {:>3} min slack {:+.4} at ({}, {}, {})", r.records.len(), r.min_slack, w.alpha, w.beta, w.delta);
        }
    }
    Ok(())
}
