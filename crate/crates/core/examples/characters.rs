//! Hook lengths, irrep dimensions and the rescaled characters `φ_λ`.
use tetra_horn::partitions::{dim_sym_irrep, enumerate_partitions, factorial, hook_product, weyl_dim};
use tetra_horn::symfunc::{phi, schur};
use tetra_horn::Spectrum;

fn main() -> tetra_horn::Result<()> {
    let x: Spectrum = "[0.6,0.3,0.1]".parse()?;
    let k = 4;
    println!("{:<10} {:>6} {:>6} {:>6} {:>12} {:>12}", "lambda", "H", "dimW", "dimV", "s(x)", "phi(x)");
    let mut total = 0.0;
    for l in enumerate_partitions(k, x.len()) {
        let f = phi(&l, &x)?;
        total += f;
        println!(
            "{:<10} {:>6} {:>6} {:>6} {:>12.6} {:>12.6}",
            l.to_string(),
            hook_product(&l),
            dim_sym_irrep(&l),
            weyl_dim(&l, x.len())?,
            schur(&l, &x)?,
            f
        );
    }
    println!("sum phi = {total:.12}, (Tr x)^k/k! = {:.12}", x.trace().powi(k as i32) / factorial(k));
    Ok(())
}
