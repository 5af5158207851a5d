//! Semigroups as Cayley tables.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("NonAssociative: ({0}{1}){2} != {0}({1}{2})")]
    NonAssociative(usize, usize, usize),
    #[error("BadTable: {0}")]
    BadTable(String),
    #[error("UnknownName: {0}")]
    UnknownName(String),
    #[error("ParameterOutOfRange: {0}")]
    ParameterOutOfRange(String),
    #[error("Capacity: {0} assignments exceeds the limit of {MAX_ASSIGNMENTS}")]
    Capacity(u128),
}

/// Largest number of variable assignments an identity check will enumerate.
pub const MAX_ASSIGNMENTS: u128 = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Semigroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    names: Vec<Option<String>>,
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup({}, order {})", self.name, self.n)
    }
}

impl Semigroup {
    /// Validate a square table over `0..n` and check associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Semigroup, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::BadTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::BadTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|&&v| v >= n) {
                return Err(SemigroupError::BadTable(format!("entry {v} in row {i} is out of range")));
            }
            table.extend_from_slice(row);
        }
        let s = Semigroup {
            name: String::new(),
            n,
            table,
            names: vec![None; n],
        };
        if let Some((a, b, c)) = s.associativity_failure() {
            return Err(SemigroupError::NonAssociative(a, b, c));
        }
        Ok(s)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Semigroup {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Semigroup::from_table(&rows).expect("built-in table is associative")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_element_name(mut self, i: usize, label: impl Into<String>) -> Self {
        self.names[i] = Some(label.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn element_name(&self, i: usize) -> Option<&str> {
        self.names[i].as_deref()
    }

    /// Element name if set, else its index.
    pub fn display(&self, i: usize) -> String {
        self.names[i].clone().unwrap_or_else(|| i.to_string())
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The two-sided zero, if any.
    pub fn zero(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|s| self.mul(z, s) == z && self.mul(s, z) == z))
    }

    /// Anti-isomorphic copy: the transposed table.
    pub fn dual(&self) -> Semigroup {
        let n = self.n;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        let name = match self.name.strip_suffix('~') {
            Some(base) => base.to_string(),
            None if self.name.is_empty() => String::new(),
            None => format!("{}~", self.name),
        };
        Semigroup {
            name,
            n,
            table,
            names: self.names.clone(),
        }
    }

    /// Direct product, pairs `(a, b)` encoded as `a * other.order() + b`.
    pub fn product(&self, other: &Semigroup) -> Semigroup {
        let m = other.n;
        let s = Semigroup::from_fn(self.n * m, |p, q| self.mul(p / m, q / m) * m + other.mul(p % m, q % m));
        s.with_name(format!("{}x{}", self.name, other.name))
    }

    /// Whether `f` is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Semigroup, f: &[usize]) -> bool {
        f.len() == self.n
            && other.n == self.n
            && (0..self.n).all(|a| (0..self.n).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b])))
    }

    /// Some isomorphism onto `other`, by brute force over permutations.
    pub fn isomorphism_to(&self, other: &Semigroup) -> Option<Vec<usize>> {
        if self.n != other.n || self.n > 9 {
            return None;
        }
        fn go(s: &Semigroup, o: &Semigroup, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = f.len();
            if k == s.n {
                return s.is_isomorphism(o, f);
            }
            for t in 0..s.n {
                if used[t] {
                    continue;
                }
                f.push(t);
                used[t] = true;
                let ok = (0..=k).all(|a| {
                    (0..=k).all(|b| {
                        let ab = s.mul(a, b);
                        ab > k || f[ab] == o.mul(f[a], f[b])
                    })
                });
                if ok && go(s, o, f, used) {
                    return true;
                }
                f.pop();
                used[t] = false;
            }
            false
        }
        let mut f = Vec::new();
        go(self, other, &mut f, &mut vec![false; self.n]).then_some(f)
    }
}

/// Fill the `None` cells of a partial table in every way that is associative.
pub fn associative_completions(partial: &[Vec<Option<usize>>]) -> Vec<Semigroup> {
    let n = partial.len();
    let holes: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| partial[a][b].is_none())
        .collect();
    let mut rows: Vec<Vec<usize>> = partial.iter().map(|r| r.iter().map(|v| v.unwrap_or(0)).collect()).collect();
    let mut out = Vec::new();
    let total = n.pow(holes.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &holes {
            rows[a][b] = c % n;
            c /= n;
        }
        if let Ok(s) = Semigroup::from_table(&rows) {
            out.push(s);
        }
    }
    out
}

/// Named semigroups. `param` is required by the sized families.
pub fn named_semigroup(name: &str, param: Option<usize>) -> Result<Semigroup, SemigroupError> {
    let need = |lo: usize| -> Result<usize, SemigroupError> {
        match param {
            Some(k) if k >= lo => Ok(k),
            Some(k) => Err(SemigroupError::ParameterOutOfRange(format!("{name} needs a parameter >= {lo}, got {k}"))),
            None => Err(SemigroupError::ParameterOutOfRange(format!("{name} needs a parameter"))),
        }
    };
    let none = || -> Result<(), SemigroupError> {
        match param {
            None => Ok(()),
            Some(_) => Err(SemigroupError::ParameterOutOfRange(format!("{name} takes no parameter"))),
        }
    };
    const LIMIT: usize = 64;
    let bounded = |k: usize| -> Result<usize, SemigroupError> {
        if k > LIMIT {
            Err(SemigroupError::ParameterOutOfRange(format!("{name} is limited to {LIMIT} elements")))
        } else {
            Ok(k)
        }
    };
    Ok(match name {
        "sl2" => {
            none()?;
            Semigroup::from_fn(2, |a, b| a.min(b)).with_name("sl2")
        }
        "lz" => {
            let n = bounded(need(1)?)?;
            Semigroup::from_fn(n, |a, _| a).with_name(format!("lz{n}"))
        }
        "rz" => {
            let n = bounded(need(1)?)?;
            Semigroup::from_fn(n, |_, b| b).with_name(format!("rz{n}"))
        }
        "z" => {
            let n = bounded(need(1)?)?;
            Semigroup::from_fn(n, |a, b| (a + b) % n).with_name(format!("z{n}"))
        }
        "null" => {
            let n = bounded(need(1)?)?;
            Semigroup::from_fn(n, |_, _| 0).with_name(format!("null{n}"))
        }
        "c_monoid" => {
            let m = bounded(need(0)? + 1)? - 1;
            let s = Semigroup::from_fn(m + 1, |i, j| (i + j).min(m)).with_name(format!("c_monoid{m}"));
            (0..=m).fold(s, |s, i| s.with_element_name(i, format!("a^{i}")))
        }
        "P3" => {
            none()?;
            p3()
        }
        _ => return Err(SemigroupError::UnknownName(name.to_string())),
    })
}

/// Elements of P3 in index order.
pub const P3_ELEMENTS: [&str; 3] = ["e", "a", "0"];

/// The partial table of P3 on `e, a, 0`: `e^2 = e`, `ea = a`, `ae = 0`, 0 a zero.
pub fn p3_partial() -> Vec<Vec<Option<usize>>> {
    let (e, a, z) = (0, 1, 2);
    let mut t = vec![vec![None; 3]; 3];
    t[e][e] = Some(e);
    t[e][a] = Some(a);
    t[a][e] = Some(z);
    for s in 0..3 {
        t[z][s] = Some(z);
        t[s][z] = Some(z);
    }
    t
}

/// P3, with the products its presentation leaves open fixed once by
/// completion search (see `p3_is_the_unique_completion`).
pub fn p3() -> Semigroup {
    let s = Semigroup::from_table(&[vec![0, 1, 2], vec![2, 2, 2], vec![2, 2, 2]])
        .expect("P3 is associative")
        .with_name("P3");
    P3_ELEMENTS.iter().enumerate().fold(s, |s, (i, e)| s.with_element_name(i, *e))
}

/// Names accepted by `named_semigroup`, with whether they take a parameter.
pub const NAMED: &[(&str, bool)] = &[
    ("sl2", false),
    ("lz", true),
    ("rz", true),
    ("z", true),
    ("null", true),
    ("P3", false),
    ("c_monoid", true),
];

/// Parse `name` or `name:k` (also `name(k)`).
pub fn parse_named(spec: &str) -> Result<Semigroup, SemigroupError> {
    let spec = spec.trim();
    let (name, param) = if let Some((n, k)) = spec.split_once(':') {
        (n, Some(k))
    } else if let Some(rest) = spec.strip_suffix(')') {
        match rest.split_once('(') {
            Some((n, k)) => (n, Some(k)),
            None => (spec, None),
        }
    } else {
        // trailing digits, e.g. `z3`, except for names that end in a digit
        match spec.find(|c: char| c.is_ascii_digit()) {
            Some(i) if !NAMED.iter().any(|(n, _)| *n == spec) && i > 0 => (&spec[..i], Some(&spec[i..])),
            _ => (spec, None),
        }
    };
    let param = match param {
        Some(k) => Some(
            k.trim()
                .parse::<usize>()
                .map_err(|_| SemigroupError::ParameterOutOfRange(format!("bad parameter {k:?}")))?,
        ),
        None => None,
    };
    named_semigroup(name.trim(), param)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = Semigroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let null = Semigroup::from_table(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(null.zero(), Some(0));
        // a*b = b - a mod 3 is not associative
        let rows: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (b + 3 - a) % 3).collect()).collect();
        match Semigroup::from_table(&rows) {
            Err(SemigroupError::NonAssociative(a, b, c)) => {
                let s = |x: usize, y: usize| rows[x][y];
                assert_ne!(s(s(a, b), c), s(a, s(b, c)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Semigroup::from_table(&[vec![0, 2], vec![0, 0]]),
            Err(SemigroupError::BadTable(_))
        ));
    }

    #[test]
    fn p3_is_the_unique_completion() {
        let all = associative_completions(&p3_partial());
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].rows(), p3().rows());
    }

    #[test]
    fn duals() {
        let lz = named_semigroup("lz", Some(2)).unwrap();
        let rz = named_semigroup("rz", Some(2)).unwrap();
        assert_eq!(lz.dual().rows(), rz.rows());
        assert_eq!(lz.dual().dual(), lz);
        let z5 = named_semigroup("z", Some(5)).unwrap();
        assert!(z5.dual().isomorphism_to(&z5).is_some());
        assert!(p3().isomorphism_to(&p3().dual()).is_none());
    }

    #[test]
    fn names() {
        assert_eq!(parse_named("z:3").unwrap().name(), "z3");
        assert_eq!(parse_named("null(2)").unwrap().order(), 2);
        assert_eq!(parse_named("c_monoid2").unwrap().order(), 3);
        assert_eq!(parse_named("sl2").unwrap().order(), 2);
        assert!(matches!(parse_named("foo"), Err(SemigroupError::UnknownName(_))));
        assert!(matches!(parse_named("z:0"), Err(SemigroupError::ParameterOutOfRange(_))));
        let p = lz_product();
        assert_eq!(p.order(), 6);
    }

    fn lz_product() -> Semigroup {
        named_semigroup("lz", Some(2)).unwrap().product(&named_semigroup("z", Some(3)).unwrap())
    }
}
