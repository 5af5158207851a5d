//! Named fixture lattices.
//!
//! Fixture names on the command line take `:`-separated parameters, e.g.
//! `chain:5`, `partition:4` or `fig1_chain:4:2,3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::io::parse_lattice;
use crate::lattice::{build_from_covers, Lattice, LatticeError};

const FIG2: &str = include_str!("../fixtures/fig2_bands.lat");

pub const FIG1_PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("UnknownFixture: {0}")]
    UnknownFixture(String),
    #[error("ParameterOutOfRange: {0}")]
    ParameterOutOfRange(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FixtureSpec {
    Trivial,
    Chain(usize),
    Boolean(usize),
    M3,
    N5,
    Partition(usize),
    Fig1Chain { k: usize, primes: Vec<u32> },
    Fig2Bands,
}

impl FixtureSpec {
    pub fn fig1(k: usize, primes: &[u32]) -> Self {
        FixtureSpec::Fig1Chain {
            k,
            primes: primes.to_vec(),
        }
    }

    pub fn check(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::ParameterOutOfRange(msg));
        match self {
            FixtureSpec::Chain(n) if *n == 0 => bad("chain needs n >= 1".into()),
            FixtureSpec::Boolean(n) if !(1..=10).contains(n) => {
                bad(format!("boolean needs 1 <= n <= 10, got {n}"))
            }
            FixtureSpec::Partition(n) if !(1..=7).contains(n) => {
                bad(format!("partition needs 1 <= n <= 7, got {n}"))
            }
            FixtureSpec::Fig1Chain { k, .. } if !(3..=12).contains(k) => {
                bad(format!("fig1_chain needs 3 <= k <= 12, got {k}"))
            }
            FixtureSpec::Fig1Chain { primes, .. } => {
                for (i, p) in primes.iter().enumerate() {
                    if !FIG1_PRIMES.contains(p) || primes[..i].contains(p) {
                        return bad(format!("fig1_chain primes must be distinct members of {FIG1_PRIMES:?}"));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSpec::Trivial => f.write_str("trivial"),
            FixtureSpec::Chain(n) => write!(f, "chain:{n}"),
            FixtureSpec::Boolean(n) => write!(f, "boolean:{n}"),
            FixtureSpec::M3 => f.write_str("m3"),
            FixtureSpec::N5 => f.write_str("n5"),
            FixtureSpec::Partition(n) => write!(f, "partition:{n}"),
            FixtureSpec::Fig1Chain { k, primes } => {
                let ps: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                write!(f, "fig1_chain:{k}:{}", ps.join(","))
            }
            FixtureSpec::Fig2Bands => f.write_str("fig2_bands"),
        }
    }
}

impl FromStr for FixtureSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CatalogError::UnknownFixture(s.to_string());
        let num = |i: usize| -> Result<usize, CatalogError> {
            parts.get(i).and_then(|p| p.trim().parse().ok()).ok_or_else(bad)
        };
        let spec = match (parts[0], parts.len()) {
            ("trivial", 1) => FixtureSpec::Trivial,
            ("m3", 1) => FixtureSpec::M3,
            ("n5", 1) => FixtureSpec::N5,
            ("fig2_bands", 1) => FixtureSpec::Fig2Bands,
            ("chain", 2) => FixtureSpec::Chain(num(1)?),
            ("boolean", 2) => FixtureSpec::Boolean(num(1)?),
            ("partition", 2) => FixtureSpec::Partition(num(1)?),
            ("fig1_chain", 2 | 3) => {
                let primes = match parts.get(2) {
                    Some(p) if !p.is_empty() => p
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| bad()))
                        .collect::<Result<Vec<u32>, _>>()?,
                    _ => Vec::new(),
                };
                FixtureSpec::Fig1Chain { k: num(1)?, primes }
            }
            _ => return Err(bad()),
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Build the lattice for a fixture.
pub fn fixture(spec: &FixtureSpec) -> Result<Lattice, CatalogError> {
    spec.check()?;
    let name = spec.to_string();
    let l = match spec {
        FixtureSpec::Trivial => build_from_covers(&["T"], &[] as &[(&str, &str)])?.with_label("T", "T")?,
        FixtureSpec::Chain(n) => {
            let ids: Vec<String> = (0..*n).map(|i| format!("c{i}")).collect();
            let covers: Vec<(String, String)> =
                ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
            build_from_covers(&ids, &covers)?
        }
        FixtureSpec::Boolean(n) => boolean(*n)?,
        FixtureSpec::M3 => build_from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )?,
        FixtureSpec::N5 => build_from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )?,
        FixtureSpec::Partition(n) => partition(*n)?,
        FixtureSpec::Fig1Chain { k, primes } => fig1(*k, primes)?,
        FixtureSpec::Fig2Bands => match parse_lattice(FIG2) {
            Ok(l) => l,
            Err(e) => panic!("bundled fig2_bands fixture is corrupt: {e}"),
        },
    };
    Ok(l.with_name(name))
}

/// Label name to element id, as attached by [`fixture`].
pub fn fixture_labels(spec: &FixtureSpec) -> Result<BTreeMap<String, String>, CatalogError> {
    let l = fixture(spec)?;
    Ok(l.labels()
        .iter()
        .map(|(label, &i)| (label.clone(), l.id(i).to_string()))
        .collect())
}

/// Every fixture with at most `max_elements` elements from a fixed, broad list.
pub fn small_fixtures(max_elements: usize) -> Vec<FixtureSpec> {
    let mut specs = vec![FixtureSpec::Trivial, FixtureSpec::M3, FixtureSpec::N5, FixtureSpec::Fig2Bands];
    specs.extend([1, 2, 3, 5, 8, 12].map(FixtureSpec::Chain));
    specs.extend((1..=5).map(FixtureSpec::Boolean));
    specs.extend((1..=5).map(FixtureSpec::Partition));
    for k in [3, 4, 6] {
        for primes in [&[][..], &[2], &[2, 3], &[2, 3, 5]] {
            specs.push(FixtureSpec::fig1(k, primes));
        }
    }
    specs
        .into_iter()
        .filter(|s| fixture(s).is_ok_and(|l| l.len() <= max_elements))
        .collect()
}

fn boolean(n: usize) -> Result<Lattice, LatticeError> {
    let id = |m: usize| (0..n).map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect::<String>();
    let mut masks: Vec<usize> = (0..1 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let ids: Vec<String> = masks.iter().map(|&m| id(m)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for b in 0..n {
            if m >> b & 1 == 0 {
                covers.push((id(m), id(m | 1 << b)));
            }
        }
    }
    build_from_covers(&ids, &covers)
}

/// Set partitions of `1..=n` as restricted growth strings.
fn growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut rgs, &mut out);
    }
    out
}

fn blocks(rgs: &[usize]) -> Vec<Vec<usize>> {
    let k = rgs.iter().max().map_or(0, |m| m + 1);
    let mut bs = vec![Vec::new(); k];
    for (i, &b) in rgs.iter().enumerate() {
        bs[b].push(i + 1);
    }
    bs
}

fn partition_id(bs: &[Vec<usize>]) -> String {
    bs.iter()
        .map(|b| b.iter().map(|e| e.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join("|")
}

fn canonical(mut bs: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut bs {
        b.sort_unstable();
    }
    bs.sort();
    bs
}

fn partition(n: usize) -> Result<Lattice, LatticeError> {
    let mut parts: Vec<Vec<Vec<usize>>> = growth_strings(n).iter().map(|r| blocks(r)).collect();
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let ids: Vec<String> = parts.iter().map(|p| partition_id(p)).collect();
    let mut covers = Vec::new();
    for p in &parts {
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                let merged = q.remove(j);
                q[i].extend(merged);
                covers.push((partition_id(p), partition_id(&canonical(q))));
            }
        }
    }
    build_from_covers(&ids, &covers)
}

fn fig1(k: usize, primes: &[u32]) -> Result<Lattice, LatticeError> {
    let mut ids: Vec<String> = ["T", "SL", "LZ", "RZ", "ZM"].map(String::from).to_vec();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut cover = |a: &str, b: &str| covers.push((a.to_string(), b.to_string()));
    for atom in ["SL", "LZ", "RZ", "ZM"] {
        cover("T", atom);
    }
    let mut prev = "ZM".to_string();
    for i in 3..=k {
        let id = format!("N{i}");
        ids.push(id.clone());
        cover(&prev, &id);
        prev = id;
    }
    ids.extend(["Nomega", "N3sq", "N3c"].map(String::from));
    cover(&prev, "Nomega");
    cover("N3", "N3sq");
    cover("N3", "N3c");
    let mut maximal = vec!["SL".to_string(), "LZ".into(), "RZ".into(), "Nomega".into(), "N3sq".into(), "N3c".into()];
    for p in primes {
        let mut prev = "T".to_string();
        for i in 1..=k {
            let id = format!("A{p}_{i}");
            ids.push(id.clone());
            cover(&prev, &id);
            prev = id;
        }
        maximal.push(prev);
    }
    ids.push("TOP".into());
    for m in &maximal {
        cover(m, "TOP");
    }
    let mut l = build_from_covers(&ids, &covers)?;
    for id in &ids {
        l = l.with_label(id, id)?;
    }
    Ok(l)
}
