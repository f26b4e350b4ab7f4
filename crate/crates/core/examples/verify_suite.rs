//! Run one verification suite and print its checks.
use radokit::constructions::Params;
use radokit::reports::verify;

fn main() -> radokit::Result<()> {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "iso".into());
    let r = verify(&suite, &Params::default())?;
    for c in &r.checks {
        println!("{} {}/{}: {}", if c.pass { "ok  " } else { "FAIL" }, c.suite, c.id, c.detail);
    }
    Ok(())
}
