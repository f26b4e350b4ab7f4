//! The staged A/B/C/D construction: stage log and the triples it chose.
use radokit::constructions::g5::G5Run;

fn main() {
    let stages = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let run = G5Run::run(stages);
    for rec in &run.log {
        println!("{rec}");
    }
    for n in 1..=run.triples() {
        println!("triple {n}: {:?}", run.triple(n));
    }
    if let Some((n, why)) = &run.failure {
        println!("stopped at stage {n}: {why}");
    }
}
