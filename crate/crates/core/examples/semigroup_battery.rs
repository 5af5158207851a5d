//! Check identities on named semigroups and on tables found by completion search.

use latfo::semigroup::{associative_completions, named_semigroup, p3, p3_partial, satisfies, Identity};

fn main() {
    let completions = associative_completions(&p3_partial());
    println!("{} associative completion(s) of the partial table", completions.len());
    let p = p3();
    for a in 0..p.order() {
        let row: Vec<String> = (0..p.order()).map(|b| p.display(p.mul(a, b))).collect();
        println!("{} | {}", p.display(a), row.join(" "));
    }

    let ids: Vec<Identity> = ["xy = x^2y", "x^2 = 0", "xy = yx", "xyz = 0"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut battery = vec![p.clone(), p.dual()];
    for name in ["sl2", "lz", "rz", "z", "null"] {
        battery.push(named_semigroup(name, if name == "sl2" { None } else { Some(2) }).unwrap());
    }
    for s in &battery {
        let row: Vec<&str> = ids.iter().map(|id| if satisfies(s, id).unwrap() { "1" } else { "0" }).collect();
        println!("{:6} {}", s.name(), row.join(" "));
    }
}
