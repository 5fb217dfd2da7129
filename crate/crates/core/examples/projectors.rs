//! Isotypic projectors on `(ℂ²)^{⊗4}` and their resolution of the identity.
use nalgebra::DMatrix;
use tetra_horn::partitions::{dim_sym_irrep, enumerate_partitions, weyl_dim};
use tetra_horn::schurweyl::isotypic_projector;

fn main() -> tetra_horn::Result<()> {
    let (n, k): (usize, usize) = (2, 4);
    let dim = n.pow(k as u32);
    let mut sum = DMatrix::<f64>::zeros(dim, dim);
    for l in enumerate_partitions(k, n) {
        let p = isotypic_projector(&l, 0..k, n, k, 1 << 16)?;
        let m = p.to_dense();
        let idem = (&m * &m - &m).abs().max();
        println!("{l:<8} rank {:>2} = {} x {}, |P^2 - P| = {idem:.1e}", p.rank(), dim_sym_irrep(&l), weyl_dim(&l, n)?);
        sum += m;
    }
    println!("|sum - I| = {:.1e}", (sum - DMatrix::identity(dim, dim)).abs().max());

    let partial = isotypic_projector(&"[1,1]".parse()?, 1..3, n, k, 1 << 16)?;
    println!("antisymmetrizer on slots 1..3: rank {} (expected {})", partial.rank(), partial.expected_rank());
    Ok(())
}
