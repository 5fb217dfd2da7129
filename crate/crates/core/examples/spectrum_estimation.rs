//! Schur–Weyl distributions concentrate near the normalized spectrum.
use tetra_horn::probability::{eig_est_bound, eig_sep_bound, schur_weyl_dist, sw_bhattacharyya};
use tetra_horn::Spectrum;

fn main() -> tetra_horn::Result<()> {
    let x: Spectrum = "[0.7,0.3]".parse()?;
    for k in [4, 16, 64] {
        let d = schur_weyl_dist(&x, k)?;
        let (mode, p) = d
            .partitions
            .iter()
            .zip(d.dist.weights())
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty");
        println!("k={k:>3}: mode {mode} with probability {p:.4}, bound {:.3e}", eig_est_bound(mode, &x, 2)?);
    }
    let y: Spectrum = "[0.5,0.5]".parse()?;
    for k in [10, 40] {
        println!("k={k}: BC(SW_x, SW_y) = {:.3e} <= {:.3e}", sw_bhattacharyya(&x, &y, k)?, eig_sep_bound(&x, &y, k, 2)?);
    }
    Ok(())
}
