//! The inclusion diagram, one line per edge.
use radokit::constructions::Params;
use radokit::reports::inclusion_diagram;

fn main() -> radokit::Result<()> {
    let d = inclusion_diagram(&Params::default())?;
    for e in &d.edges {
        let cited = e.evidence.iter().filter(|x| x.claim.is_some()).count();
        println!("{:5} {} {} {}  ({} claims)", e.valid, e.lower, e.relation, e.upper, cited);
    }
    Ok(())
}
