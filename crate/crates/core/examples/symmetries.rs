//! The 48 signed permutations acting on a tuple, and the affine reductions.
use tetra_horn::geometry2::tetra2_member;
use tetra_horn::symmetry::{generate_group, relations, shift, to_nonnegative, to_traceless};
use tetra_horn::SpectrumTuple;

fn main() -> tetra_horn::Result<()> {
    let group = generate_group()?;
    println!("{} elements", group.len());
    for (name, ok) in relations() {
        println!("  {name}: {ok}");
    }
    let t: SpectrumTuple = "[2.0,0.0]\n[1.0,1.0]\n[3.0,1.0]\n[1.0,1.0]\n[4.0,2.0]\n[2.0,2.0]".parse()?;
    for g in group.iter().filter(|g| g.is_unsigned()) {
        println!("{g}: member {}", tetra2_member(&g.apply(&t))?.member);
    }
    let moved = shift(&to_traceless(&t), -3.0, 1.0, 0.5);
    let back = to_nonnegative(&moved)?;
    println!("traceless + shifted, then re-shifted by {:?}:\n{}", back.shift, back.tuple);
    Ok(())
}
