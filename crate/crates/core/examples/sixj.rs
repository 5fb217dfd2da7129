//! Norms of U(2) 6j symbols, with a disk cache and a Monte-Carlo check.
use tetra_horn::schurweyl::{all_groups, haar_expectation_check, SixJEngine, SixJLabel};
use tetra_horn::Spectrum;

fn main() -> tetra_horn::Result<()> {
    let dir = std::env::temp_dir().join("tetra-horn-example-cache");
    let engine = SixJEngine::with_cache_dir(2, 1 << 16, &dir)?;
    for key in all_groups(3, 2) {
        for r in engine.group(&key.0, &key.1, &key.2, &key.3)? {
            if r.inf_norm > 0.0 {
                println!("{:<32} inf {:.6}  two^2 {:.6}", r.label.to_string(), r.inf_norm, r.two_norm_sq);
            }
        }
    }
    let s = engine.stats();
    println!("cache: {} hits, {} misses, {} entries ({} loaded from {})", s.hits, s.misses, s.entries, s.loaded, dir.display());

    let label: SixJLabel = "[1];[1];[2];[1];[3];[2]".parse()?;
    let (a, b, d): (Spectrum, Spectrum, Spectrum) = ("[1.0,0.3]".parse()?, "[0.8,0.2]".parse()?, "[0.6,0.5]".parse()?);
    let h = haar_expectation_check(&label, &a, &b, &d, 4000, 1, 1 << 16)?;
    println!("orbit average {:.5} ± {:.1e} vs {:.5}", h.estimate, h.std_error, h.target);
    Ok(())
}
