//! Words, identities and brute-force satisfaction.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::table::{Semigroup, SemigroupError, MAX_ASSIGNMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("IdentitySyntax: {0}")]
pub struct IdentityParseError(pub String);

/// A nonempty word over lowercase letters, stored flat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Option<Word> {
        let v = letters.into();
        (!v.is_empty() && v.iter().all(u8::is_ascii_lowercase)).then_some(Word(v))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The content: distinct letters, sorted.
    pub fn letters(&self) -> BTreeSet<char> {
        self.0.iter().map(|&b| b as char).collect()
    }

    pub fn occurrences(&self, x: char) -> usize {
        self.0.iter().filter(|&&b| b as char == x).count()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word([self.0.as_slice(), &other.0].concat())
    }

    /// Value under an assignment indexed by letter.
    pub fn value(&self, s: &Semigroup, env: &[usize; 26]) -> usize {
        let mut it = self.0.iter().map(|&b| env[(b - b'a') as usize]);
        let first = it.next().expect("words are nonempty");
        it.fold(first, |acc, v| s.mul(acc, v))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let c = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == c {
                j += 1;
            }
            write!(f, "{}", c as char)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = IdentityParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if !c.is_ascii_lowercase() {
                return Err(IdentityParseError(format!("unexpected {c:?} in word {s:?}")));
            }
            i += 1;
            let mut k = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                k = digits
                    .parse::<usize>()
                    .ok()
                    .filter(|&k| (1..=1000).contains(&k))
                    .ok_or_else(|| IdentityParseError(format!("bad exponent after {c} in {s:?}")))?;
            }
            out.extend(std::iter::repeat_n(c as u8, k));
        }
        Word::new(out).ok_or_else(|| IdentityParseError("empty word".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Identity {
    Eq(Word, Word),
    /// `w = 0`: the value of `w` is a two-sided zero.
    ZeroReduced(Word),
}

impl Identity {
    pub fn eq(u: &str, v: &str) -> Identity {
        Identity::Eq(u.parse().expect("valid word"), v.parse().expect("valid word"))
    }

    pub fn zero(w: &str) -> Identity {
        Identity::ZeroReduced(w.parse().expect("valid word"))
    }

    pub fn letters(&self) -> BTreeSet<char> {
        match self {
            Identity::Eq(u, v) => u.letters().union(&v.letters()).copied().collect(),
            Identity::ZeroReduced(w) => w.letters(),
        }
    }

    /// Mirror image: every word reversed.
    pub fn dual(&self) -> Identity {
        match self {
            Identity::Eq(u, v) => Identity::Eq(u.reverse(), v.reverse()),
            Identity::ZeroReduced(w) => Identity::ZeroReduced(w.reverse()),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Eq(u, v) => write!(f, "{u} = {v}"),
            Identity::ZeroReduced(w) => write!(f, "{w} = 0"),
        }
    }
}

impl FromStr for Identity {
    type Err = IdentityParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| IdentityParseError(format!("missing '=' in {s:?}")))?;
        let lhs: Word = l.parse()?;
        if r.trim() == "0" {
            return Ok(Identity::ZeroReduced(lhs));
        }
        Ok(Identity::Eq(lhs, r.parse()?))
    }
}

/// A failing assignment, as (letter, element) pairs in letter order.
pub type Assignment = Vec<(char, usize)>;

/// First assignment (in odometer order, first letter slowest) that breaks `id`.
pub fn counterexample(s: &Semigroup, id: &Identity) -> Result<Option<Assignment>, SemigroupError> {
    let letters: Vec<char> = id.letters().into_iter().collect();
    let n = s.order();
    let total = (n as u128).checked_pow(letters.len() as u32).unwrap_or(u128::MAX);
    if total > MAX_ASSIGNMENTS {
        return Err(SemigroupError::Capacity(total));
    }
    let zeros: Vec<bool> = (0..n)
        .map(|z| (0..n).all(|t| s.mul(z, t) == z && s.mul(t, z) == z))
        .collect();
    let holds = |env: &[usize; 26]| match id {
        Identity::Eq(u, v) => u.value(s, env) == v.value(s, env),
        Identity::ZeroReduced(w) => zeros[w.value(s, env)],
    };
    let slot = |c: char| (c as u8 - b'a') as usize;
    let mut digits = vec![0usize; letters.len()];
    let mut env = [0usize; 26];
    loop {
        for (c, &d) in letters.iter().zip(&digits) {
            env[slot(*c)] = d;
        }
        if !holds(&env) {
            return Ok(Some(letters.iter().copied().zip(digits.iter().copied()).collect()));
        }
        let mut k = letters.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
}

pub fn satisfies(s: &Semigroup, id: &Identity) -> Result<bool, SemigroupError> {
    Ok(counterexample(s, id)?.is_none())
}

pub fn satisfies_basis(s: &Semigroup, ids: &[Identity]) -> Result<bool, SemigroupError> {
    for id in ids {
        if !satisfies(s, id)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parse identities separated by `,` or `;`.
pub fn parse_basis(text: &str) -> Result<Vec<Identity>, IdentityParseError> {
    text.split([',', ';'])
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::table::{named_semigroup, p3};

    fn named(name: &str, k: Option<usize>) -> Semigroup {
        named_semigroup(name, k).unwrap()
    }

    #[test]
    fn words() {
        let w: Word = "x^2 y".parse().unwrap();
        assert_eq!(w.as_bytes(), b"xxy");
        assert_eq!(w.to_string(), "x^2y");
        assert_eq!(w.occurrences('x'), 2);
        assert_eq!(w.letters().len(), 2);
        assert_eq!(w.reverse().to_string(), "yx^2");
        assert!("".parse::<Word>().is_err());
        assert!("x^0".parse::<Word>().is_err());
        assert!("xY".parse::<Word>().is_err());
        let id: Identity = "xy = 0".parse().unwrap();
        assert_eq!(id, Identity::zero("xy"));
        assert_eq!("xyx=xy".parse::<Identity>().unwrap().to_string(), "xyx = xy");
    }

    #[test]
    fn p3_identities() {
        let p = p3();
        assert!(satisfies(&p, &Identity::eq("xy", "x^2y")).unwrap());
        assert!(satisfies(&p, &Identity::eq("x^2y^2", "y^2x^2")).unwrap());
        let w = counterexample(&p, &Identity::eq("xy", "yx")).unwrap().unwrap();
        let (x, y) = (w[0].1, w[1].1);
        assert_ne!(p.mul(x, y), p.mul(y, x));
        assert!(satisfies(&p.dual(), &Identity::eq("yx", "yx^2")).unwrap());
    }

    #[test]
    fn zero_reduced() {
        assert!(satisfies(&named("null", Some(2)), &Identity::zero("xy")).unwrap());
        assert!(!satisfies(&named("sl2", None), &Identity::zero("xy")).unwrap());
        // a monoid with zero where x^2 is not always zero
        assert!(!satisfies(&named("c_monoid", Some(2)), &Identity::zero("x^2")).unwrap());
        assert!(satisfies(&named("c_monoid", Some(2)), &Identity::zero("x^2")).is_ok());
    }

    #[test]
    fn bases() {
        let sl = parse_basis("x^2 = x, xy = yx").unwrap();
        assert!(satisfies_basis(&named("sl2", None), &sl).unwrap());
        assert!(!satisfies(&named("lz", Some(2)), &Identity::eq("xy", "yx")).unwrap());
        let a = |n: usize| vec![Identity::eq(&format!("x^{n}y"), "y"), Identity::eq("xy", "yx")];
        assert!(satisfies_basis(&named("z", Some(2)), &a(2)).unwrap());
        assert!(!satisfies_basis(&named("z", Some(4)), &a(2)).unwrap());
        assert!(satisfies_basis(&named("z", Some(4)), &a(4)).unwrap());
    }

    #[test]
    fn capacity_guard() {
        let z = named("z", Some(10));
        let id: Identity = "abcdef = fedcba".parse().unwrap();
        assert!(satisfies(&z, &id).unwrap());
        let id: Identity = "abcdefg = gfedcba".parse().unwrap();
        assert_eq!(satisfies(&z, &id), Err(SemigroupError::Capacity(10_000_000)));
    }
}
