//! Walk the bundled definition library and evaluate each unary definition on a fixture.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::eval::Evaluator;
use latfo::stdlib::bundled;

fn main() {
    let defs = bundled().unwrap();
    let l = fixture(&FixtureSpec::Fig2Bands).unwrap();
    let mut ev = Evaluator::new(&l, &defs);
    for fam in defs.families() {
        if fam.arity() != 1 {
            continue;
        }
        let params: Vec<i64> = fam.minimum().into_iter().map(|m| m.unwrap_or(3)).collect();
        let set = ev.defined_set_of(&fam.name, &params).unwrap();
        let names: Vec<&str> = set.iter().map(|i| l.display(i)).collect();
        println!("{}{:?}: {}", fam.name, params, names.join(" "));
    }
}
