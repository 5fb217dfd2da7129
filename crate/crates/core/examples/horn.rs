//! Littlewood–Richardson coefficients and the three-matrix Horn checks.
use tetra_horn::lr::{coupling_feasible, first_horn_violation, horn_row_col_check, lr_coeff, pairs_of_size};
use tetra_horn::partitions::enumerate_partitions;
use tetra_horn::Spectrum;

fn main() -> tetra_horn::Result<()> {
    let k = 4;
    let gammas = enumerate_partitions(k, k);
    for (a, b) in pairs_of_size(k, k) {
        let row: Vec<String> = gammas.iter().map(|g| lr_coeff(&a, &b, g).to_string()).collect();
        println!("{a:>10} x {b:<10} {}", row.join(" "));
    }

    let (a, b, c): (Spectrum, Spectrum, Spectrum) = ("[1.0,0.0]".parse()?, "[1.0,0.0]".parse()?, "[1.0,1.0]".parse()?);
    let r = horn_row_col_check(&a, &b, &c, 10)?;
    println!("realizable triple, k=10: min slack {:.4}, passed {}", r.min_slack, r.passed());

    let (a, b, c): (Spectrum, Spectrum, Spectrum) = ("[2.0,0.0]".parse()?, "[1.0,0.0]".parse()?, "[1.5,1.5]".parse()?);
    match first_horn_violation(&a, &b, &c, 50)? {
        Some(r) => {
            let v = &r.rows[r.violator.expect("violating row")];
            let alpha = v.alpha.as_ref().map_or("-".to_string(), |a| a.to_string());
            println!("non-realizable triple: first violation at k={} ({} {alpha} {}: slack {:.3e})", r.k, v.family, v.beta_or_gamma, v.slack);
        }
        None => println!("no violation up to k=50"),
    }
    for k in [6, 7, 8] {
        println!("coupling k={k}: feasible {}", coupling_feasible(&a, &b, &c, k)?.feasible);
    }
    Ok(())
}
