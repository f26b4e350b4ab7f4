//! Check the extension property of the base graph on a window.
use radokit::{witness::extension_evidence, GraphView};

fn main() -> radokit::Result<()> {
    let t = std::time::Instant::now();
    let v = extension_evidence(&GraphView::Base, 64, 4)?;
    println!("{v}");
    eprintln!("{:?}", t.elapsed());
    Ok(())
}
