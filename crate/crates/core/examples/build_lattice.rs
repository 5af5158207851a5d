//! Build a lattice from its covers, query it, and read one from the text format.

use latfo::io::{parse_lattice, write_lattice};
use latfo::lattice::build_from_covers;

fn main() {
    // the pentagon: 0 < a < b < 1 and 0 < c < 1
    let ids = ["0", "a", "b", "c", "1"];
    let covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")];
    let n5 = build_from_covers(&ids, &covers).unwrap().with_name("pentagon");
    let (a, c) = (n5.index_of("a").unwrap(), n5.index_of("c").unwrap());
    println!("a ^ c = {}", n5.id(n5.meet(a, c)));
    println!("a v c = {}", n5.id(n5.join(a, c)));
    println!("atoms: {:?}", n5.atoms().iter().map(|i| n5.id(i)).collect::<Vec<_>>());

    let text = write_lattice(&n5);
    print!("{text}");
    let back = parse_lattice(&text).unwrap();
    assert_eq!(back.cover_pairs(), n5.cover_pairs());
}
