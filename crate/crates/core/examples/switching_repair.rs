//! Switching R over a set, then deleting a finite set to get a copy back.
use radokit::constructions::switching_repair;
use radokit::VertexSet;

fn main() -> radokit::Result<()> {
    for x in [VertexSet::Nbhd(0), VertexSet::finite([0, 3, 5]), VertexSet::All] {
        let r = switching_repair(&x, 2, 24)?;
        println!("{x}: removed {:?}; {}", r.removed, r.verdict);
    }
    Ok(())
}
