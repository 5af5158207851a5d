//! Search for the smallest formulas defining every orbit union of a small lattice.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::definability::{orbit_partition, synthesize_many, SynthConfig, SynthResult};
use latfo::subset::Subset;

fn main() {
    let l = fixture(&FixtureSpec::N5).unwrap();
    let blocks = orbit_partition(&l).blocks;
    let targets: Vec<Subset> = (0u32..1 << blocks.len())
        .map(|mask| {
            let mut s = Subset::empty(l.len());
            for (k, b) in blocks.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.union_with(b);
                }
            }
            s
        })
        .collect();
    let start = std::time::Instant::now();
    let results = synthesize_many(&l, &targets, &SynthConfig::default());
    for (s, r) in targets.iter().zip(&results) {
        let names: Vec<&str> = s.iter().map(|i| l.id(i)).collect();
        match r {
            SynthResult::Found(f) => println!("{{{}}} size {}: {f}", names.join(","), f.size()),
            SynthResult::Inconclusive => println!("{{{}}} inconclusive", names.join(",")),
        }
    }
    println!("{} targets in {:?}", targets.len(), start.elapsed());
}
