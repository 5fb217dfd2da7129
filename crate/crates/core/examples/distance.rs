//! Upper bounds on the distance to the set of realizable tuples.
use tetra_horn::symmetry::to_nonnegative;
use tetra_horn::tetra::{distance_d, random_tetra_sample, tet_distance_bound, Budget, DistanceMode};
use tetra_horn::{Spectrum, SpectrumTuple};

fn main() -> tetra_horn::Result<()> {
    let budget = Budget::default();
    let member = random_tetra_sample(3, 5)?.tuple;
    let c = distance_d(&member, DistanceMode::Orbit, &budget)?;
    println!("realized n=3 tuple: D <= {:.2e} (converged {})", c.objective, c.converged);

    let lengths = [5.0, 5.0, 9.0, 5.0, 5.0, 9.0];
    let t = to_nonnegative(&SpectrumTuple::new(lengths.map(|l| Spectrum::new(vec![l, -l]).expect("descending")))?)?.tuple;
    for mode in [DistanceMode::Orbit, DistanceMode::Free] {
        let c = distance_d(&t, mode, &budget)?;
        println!("non-member, {mode}: D <= {:.4}, D/Tr e = {:.4}", c.objective, c.objective / t.e.trace());
        println!("  witness spectra:\n{}", c.witness_tuple());
    }
    println!("bound at k=8: {:.4}", tet_distance_bound(8, 2));
    Ok(())
}
