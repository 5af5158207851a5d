//! Formulas for the members of a definable chain.

use std::collections::BTreeMap;

use crate::formula::expand::fresh_name;
use crate::formula::{substitute, Formula, Term};

/// Formula for the `n`-th smallest element of the set defined by `phi`,
/// assuming that set is a chain: `min v (phi)` for `n = 1`, and
/// `min v (phi & exists y (prev[y/v] & y < v))` above that.
///
/// `v` is the free variable of `phi` (`x` if it has none).
pub fn chain_element_formula(phi: &Formula, n: usize) -> Formula {
    assert!(n >= 1, "chain members are numbered from 1");
    let v = phi.free_vars().into_iter().next().unwrap_or_else(|| "x".to_string());
    let mut avoid = phi.all_vars();
    avoid.insert(v.clone());
    let y = fresh_name("y", &avoid);
    let mut current = Formula::Min(v.clone(), Box::new(phi.clone()));
    for _ in 1..n {
        let prev = substitute(&current, &BTreeMap::from([(v.clone(), Term::var(&y))]));
        let step = Formula::exists(
            &[y.as_str()],
            Formula::and(prev, Formula::Lt(Term::var(&y), Term::var(&v))),
        );
        current = Formula::Min(v.clone(), Box::new(Formula::and(phi.clone(), step)));
    }
    current
}
