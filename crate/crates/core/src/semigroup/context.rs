//! Formal contexts of semigroups against identities, and their concept lattices.

use std::collections::BTreeSet;

use crate::lattice::{build_from_covers, Lattice, LatticeError};

use super::identity::{satisfies, Identity};
use super::table::{Semigroup, SemigroupError};

/// Most objects a context may have; extents are bitmasks.
pub const MAX_OBJECTS: usize = 64;

#[derive(Debug, Clone)]
pub struct Context {
    pub objects: Vec<Semigroup>,
    pub attributes: Vec<Identity>,
    /// `incidence[i][j]`: object `i` satisfies attribute `j`.
    pub incidence: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub extent: Vec<usize>,
    pub intent: Vec<usize>,
}

pub fn incidence_context(objects: &[Semigroup], attributes: &[Identity]) -> Result<Context, SemigroupError> {
    if objects.len() > MAX_OBJECTS {
        return Err(SemigroupError::ParameterOutOfRange(format!(
            "at most {MAX_OBJECTS} objects, got {}",
            objects.len()
        )));
    }
    let incidence = objects
        .iter()
        .map(|s| attributes.iter().map(|id| satisfies(s, id)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Context {
        objects: objects.to_vec(),
        attributes: attributes.to_vec(),
        incidence,
    })
}

impl Context {
    /// Attributes shared by every object in `extent`.
    fn intent_of(&self, extent: u64) -> Vec<bool> {
        (0..self.attributes.len())
            .map(|j| (0..self.objects.len()).all(|i| extent >> i & 1 == 0 || self.incidence[i][j]))
            .collect()
    }

    /// Objects having every attribute in `intent`.
    fn extent_of(&self, intent: &[bool]) -> u64 {
        (0..self.objects.len())
            .filter(|&i| intent.iter().enumerate().all(|(j, &m)| !m || self.incidence[i][j]))
            .fold(0, |acc, i| acc | 1 << i)
    }

    fn closure(&self, extent: u64) -> u64 {
        self.extent_of(&self.intent_of(extent))
    }

    /// All formal concepts, extents in lectic order (NextClosure over objects).
    pub fn concepts(&self) -> Vec<Concept> {
        let g = self.objects.len();
        let mut out = Vec::new();
        let mut a = self.closure(0);
        loop {
            let intent = self.intent_of(a);
            out.push(Concept {
                extent: (0..g).filter(|&i| a >> i & 1 == 1).collect(),
                intent: (0..intent.len()).filter(|&j| intent[j]).collect(),
            });
            // next closed set after `a` in lectic order, object 0 most significant
            let mut next = None;
            for i in (0..g).rev() {
                if a >> i & 1 == 1 {
                    continue;
                }
                let below: u64 = if i == 0 { 0 } else { a & ((1u64 << i) - 1) };
                let cand = self.closure(below | 1 << i);
                if cand & ((1u64 << i) - 1) == below {
                    next = Some(cand);
                    break;
                }
            }
            match next {
                Some(b) => a = b,
                None => break,
            }
        }
        out
    }

    fn object_names(&self) -> Vec<String> {
        let names: Vec<&str> = self.objects.iter().map(|s| s.name()).collect();
        names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if n.is_empty() || names.iter().filter(|m| *m == n).count() > 1 {
                    format!("{n}#{i}")
                } else {
                    n.to_string()
                }
            })
            .collect()
    }
}

/// The concepts ordered by extent inclusion, as a lattice. Element `c{k}` is
/// the `k`-th concept of `Context::concepts`; its label lists the extent.
pub fn concept_lattice(ctx: &Context) -> Result<Lattice, LatticeError> {
    let concepts = ctx.concepts();
    let sets: Vec<BTreeSet<usize>> = concepts.iter().map(|c| c.extent.iter().copied().collect()).collect();
    let ids: Vec<String> = (0..concepts.len()).map(|k| format!("c{k}")).collect();
    let below = |a: usize, b: usize| a != b && sets[a].is_subset(&sets[b]);
    let mut covers = Vec::new();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if below(a, b) && !(0..sets.len()).any(|c| below(a, c) && below(c, b)) {
                covers.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    let names = ctx.object_names();
    let mut l = build_from_covers(&ids, &covers)?.with_name("concepts");
    for (k, c) in concepts.iter().enumerate() {
        let members: Vec<&str> = c.extent.iter().map(|&i| names[i].as_str()).collect();
        l = l.with_label(&format!("{{{}}}", members.join(",")), &ids[k])?;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::table::named_semigroup;

    fn brute_force(ctx: &Context) -> BTreeSet<Vec<usize>> {
        let g = ctx.objects.len();
        (0u64..1 << g)
            .filter(|&a| ctx.closure(a) == a)
            .map(|a| (0..g).filter(|&i| a >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn three_by_three() {
        let objs = [
            named_semigroup("sl2", None).unwrap(),
            named_semigroup("z", Some(2)).unwrap(),
            named_semigroup("null", Some(2)).unwrap(),
        ];
        let attrs = [Identity::eq("x^2", "x"), Identity::eq("xy", "yx"), Identity::zero("xy")];
        let ctx = incidence_context(&objs, &attrs).unwrap();
        let t = true;
        let f = false;
        assert_eq!(ctx.incidence, vec![vec![t, t, f], vec![f, t, f], vec![f, t, t]]);
        let concepts = ctx.concepts();
        let got: BTreeSet<Vec<usize>> = concepts.iter().map(|c| c.extent.clone()).collect();
        assert_eq!(got.len(), concepts.len());
        assert_eq!(got, brute_force(&ctx));
        let l = concept_lattice(&ctx).unwrap();
        l.validate().unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.label_of(l.top()), Some("{sl2,z2,null2}"));
        assert_eq!(l.label_of(l.bottom()), Some("{}"));
    }

    #[test]
    fn single_cell() {
        let ctx = incidence_context(&[named_semigroup("sl2", None).unwrap()], &[Identity::eq("x^2", "x")]).unwrap();
        let l = concept_lattice(&ctx).unwrap();
        assert_eq!(l.len(), 1);
        let ctx = incidence_context(&[named_semigroup("lz", Some(2)).unwrap()], &[Identity::eq("xy", "yx")]).unwrap();
        assert_eq!(concept_lattice(&ctx).unwrap().len(), 2);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let objs = [named_semigroup("lz", Some(2)).unwrap(), named_semigroup("lz", Some(3)).unwrap()];
        let attrs = [Identity::eq("xy", "x"), Identity::eq("xy", "yx"), Identity::eq("x^2", "x"), Identity::zero("xy")];
        let ctx = incidence_context(&objs, &attrs).unwrap();
        assert_eq!(ctx.incidence[0], ctx.incidence[1]);
        for c in ctx.concepts() {
            assert!(c.extent.is_empty() || c.extent == vec![0, 1]);
        }
    }
}
