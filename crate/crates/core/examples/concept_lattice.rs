//! Build the concept lattice of a semigroup/identity incidence table.

use latfo::io::to_dot;
use latfo::semigroup::{concept_lattice, incidence_context, named_semigroup, p3, Identity};

fn main() {
    let objects = vec![
        named_semigroup("sl2", None).unwrap(),
        named_semigroup("lz", Some(2)).unwrap(),
        named_semigroup("rz", Some(2)).unwrap(),
        named_semigroup("z", Some(2)).unwrap(),
        p3(),
    ];
    let attributes: Vec<Identity> =
        ["x^2 = x", "xy = yx", "xyx = x", "x^2y = y"].iter().map(|s| s.parse().unwrap()).collect();
    let ctx = incidence_context(&objects, &attributes).unwrap();
    for c in ctx.concepts() {
        println!("{:?} {:?}", c.extent, c.intent);
    }
    let l = concept_lattice(&ctx).unwrap();
    print!("{}", to_dot(&l));
}
