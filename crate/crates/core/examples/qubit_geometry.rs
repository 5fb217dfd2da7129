//! The exact `n = 2` picture: edge lengths, Cayley–Menger and Regge orbits.
use tetra_horn::geometry2::{cayley_menger, lengths_member, regge_orbit, slice_scan, EdgeLengths};

fn main() -> tetra_horn::Result<()> {
    let l = EdgeLengths::new([5.0, 7.0, 74f64.sqrt(), 6.0, 110f64.sqrt(), 85f64.sqrt()])?;
    println!("CM = {:.6}, member {}", cayley_menger(&l), lengths_member(&l).member);
    for img in regge_orbit(&l) {
        let m = lengths_member(&img);
        println!("  regge image {:?}: member {}", img.0.map(|x| (x * 1e3).round() / 1e3), m.member);
    }
    let flat = EdgeLengths::new([5.0, 5.0, 9.0, 5.0, 5.0, 9.0])?;
    let m = lengths_member(&flat);
    println!("faces fine but CM = {:.3}: member {} ({:?})", m.cm, m.member, m.reason);

    let grid = slice_scan(5.0, 7.0, 6.0, 0.0, 18.0, 40)?;
    let tri = grid.iter().filter(|r| r.triangle).count();
    let mem = grid.iter().filter(|r| r.member).count();
    println!("slice (5,7,6): {} points, {tri} satisfy the face triangles, {mem} are tetrahedra", grid.len());
    Ok(())
}
