//! Build every construction with default arguments and run its claims.
use radokit::constructions::{build, run_claims, BuildArgs, Params, NAMES};

fn main() -> radokit::Result<()> {
    let p = Params::default();
    for name in NAMES {
        let b = build(name, &BuildArgs::defaults(name), &p)?;
        for r in run_claims(&b)? {
            println!("{} {}/{} {}", if r.pass { "ok  " } else { "FAIL" }, r.bundle, r.id, r.verdict.kind);
        }
    }
    Ok(())
}
