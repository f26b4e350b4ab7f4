//! Induced copies of R: a neighbourhood is one, its transposed image is not.
use radokit::classify::{copy_evidence, image_set};
use radokit::constructions::build_finitary;
use radokit::{GraphView, VertexSet};

fn main() -> radokit::Result<()> {
    let e = VertexSet::Nbhd(0);
    println!("{}", copy_evidence(&GraphView::Base, &e, 32, 2)?);
    let g = build_finitary(&[vec![0, 1]])?;
    let eg = image_set(&g, &e, false)?;
    println!("{}", copy_evidence(&GraphView::Base, &eg, 32, 2)?);
    Ok(())
}
