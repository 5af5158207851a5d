//! Emit a Graphviz drawing of a catalog lattice.
//!
//! `cargo run --example dot_export -- fig1_chain:4:2,3 | dot -Tsvg > fig1.svg`

use latfo::catalog::fixture;
use latfo::io::to_dot;

fn main() {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "fig2_bands".into());
    let l = fixture(&spec.parse().expect("unknown fixture")).unwrap();
    print!("{}", to_dot(&l));
}
