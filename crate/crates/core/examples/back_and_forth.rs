//! Build an isomorphism from R onto R switched at 0, fixing 0.
use radokit::iso::build_iso;
use radokit::table::{PermTable, Provenance};
use radokit::{GraphView, VertexSet};

fn main() -> radokit::Result<()> {
    let target = GraphView::switch(GraphView::Base, VertexSet::finite([0]));
    let prov = Provenance::new("example").with("steps", 24);
    let g = build_iso(&GraphView::Base, &target, &[(0, 0)], 24, u128::MAX, prov)?;
    let text = g.to_text();
    print!("{text}");
    assert_eq!(PermTable::from_text(&text)?, g);
    println!("covers [0,{})", g.covered_within(u128::MAX));
    Ok(())
}
