//! 6j norms along rounded label sequences and at the best label.
use tetra_horn::schurweyl::SixJEngine;
use tetra_horn::tetra::{asymptotics_scan, random_tetra_sample, AsymptoticsRow};

fn main() -> tetra_horn::Result<()> {
    let engine = SixJEngine::new(2, 1 << 16);
    let sample = random_tetra_sample(2, 10)?;
    let r = asymptotics_scan(&sample.tuple, &[3, 4, 5, 6, 7, 8], &engine, Some(&sample.witness))?;
    for row in &r.rows {
        let (m, norm) = row.best.as_ref().expect("witness supplied");
        println!(
            "k={} rounded {} -> {:.4}; best {} -> {:.4} (scaled {:.3e})",
            row.k,
            row.rounded,
            row.rounded_norm,
            m.label,
            norm,
            AsymptoticsRow::scaled(*norm, row.k, r.rank_e)
        );
    }
    println!("raw slope {:?}, compensated slope {:?}", r.raw_slope, r.compensated_slope);
    Ok(())
}
