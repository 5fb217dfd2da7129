//! The entropic inequality on random realized tuples and the hook-content identity.
use tetra_horn::partitions::enumerate_partitions;
use tetra_horn::tetra::{entropic_check, hook_ratio_identity, random_tetra_sample};

fn main() -> tetra_horn::Result<()> {
    for n in 1..=6 {
        let worst = (0..200)
            .map(|seed| entropic_check(&random_tetra_sample(n, seed).expect("sample").tuple))
            .collect::<tetra_horn::Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        println!("n={n}: smallest margin over 200 samples {worst:.4}");
    }
    let mut worst: f64 = 0.0;
    for n in 1..=20 {
        for l in enumerate_partitions(8, n) {
            worst = worst.max(hook_ratio_identity(&l, n)?);
        }
    }
    println!("hook-content identity, |λ|=8, n<=20: max residual {worst:.1e}");
    Ok(())
}
