//! Membership report for a table, from a file or the switching example.
use radokit::classify::classify;
use radokit::constructions::{build_g1, Params};
use radokit::table::PermTable;

fn main() -> radokit::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => PermTable::from_text(&std::fs::read_to_string(path)?)?,
        None => build_g1(0, &Params::default())?.table("g")?.clone(),
    };
    let r = classify(&g, 32, 2, 3, 8)?;
    for (group, v) in &r.verdicts {
        println!("{group:10} {v}");
    }
    Ok(())
}
