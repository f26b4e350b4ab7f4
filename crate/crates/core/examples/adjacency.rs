//! Adjacency by bits, closed-form witnesses, and the least witness.
use radokit::rado::witness_direct;
use radokit::witness::witness_least;
use radokit::{adjacent, DisjointPair, GraphView};

fn main() -> radokit::Result<()> {
    for v in 1..8u128 {
        let nb: Vec<u128> = (0..v).filter(|&u| adjacent(u, v)).collect();
        println!("{v}: lower neighbours {nb:?}");
    }
    let p = DisjointPair::new(vec![0, 2], vec![1, 3])?;
    let direct = witness_direct(&p)?;
    let least = witness_least(&GraphView::Base, &p, direct)?;
    println!("({p}) closed form {direct}, least {least:?}");
    Ok(())
}
