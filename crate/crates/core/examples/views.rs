//! Derived graphs: switching, complementing, text round trip, parity.
use radokit::syntax::parse_view;
use radokit::views::odd_parity;
use radokit::{GraphView, VertexSet};

fn main() -> radokit::Result<()> {
    let sw = GraphView::switch(GraphView::Base, VertexSet::finite([0]));
    let co = GraphView::flip_within(GraphView::Base, VertexSet::All);
    for (name, g) in [("base", &GraphView::Base), ("switch at 0", &sw), ("complement", &co)] {
        let row: String = (1..12).map(|v| if g.adjacent(0, v).unwrap() { '1' } else { '.' }).collect();
        let par: Vec<bool> = [vec![0, 1, 2], vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]]
            .iter()
            .map(|s| odd_parity(g, s).unwrap())
            .collect();
        println!("{name:12} 0~[1,12): {row}  odd 3/4/5-parity on [0,k): {par:?}");
    }
    let v = parse_view("restrict(switch(delete(base,0), N(1)-N(0)-{0}), W({1};{0}))")?;
    println!("{v}");
    assert_eq!(parse_view(&v.to_string())?, v);
    Ok(())
}
