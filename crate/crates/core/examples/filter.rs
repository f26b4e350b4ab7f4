//! Which sets are in the neighbourhood filter.
use radokit::classify::filter_member;
use radokit::syntax::parse_set;

fn main() -> radokit::Result<()> {
    for s in ["N(0)", "N(0)&N(1)", "N(0)-{2,4}", "NCS(0)", "{0,1,2}", "all"] {
        let y = parse_set(s)?;
        println!("{s:12} {}", filter_member(&y, 64, 3)?);
    }
    Ok(())
}
