//! Command-line front end. `run` does all the work and returns the exit code
//! with the text to print, so the binary is a thin wrapper and tests can
//! drive it directly.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::catalog::{fixture, small_fixtures, FixtureSpec};
use crate::definability::{
    automorphism_group, chain_element_formula, orbit_partition, synthesize_with_orbits, verdict_with, SynthConfig,
    SynthResult, Verdict,
};
use crate::eval::{element_property, Evaluator, PropertyKind};
use crate::formula::{parse, DefTable, Formula};
use crate::io::{parse_lattice, to_dot, write_lattice};
use crate::lattice::Lattice;
use crate::semigroup::{
    concept_lattice, counterexample, incidence_context, parse_basis, parse_named, parse_semigroup, Identity,
    Semigroup,
};
use crate::stdlib::load_stdlib;
use crate::subset::Subset;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "latfo", version, about = "First-order definability over finite lattices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Lattice file
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Built-in fixture, e.g. `m3`, `chain:5`, `fig1_chain:4:2,3`
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptSource {
    #[arg(long)]
    lattice: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
struct DefsArg {
    /// Extra definition files, loaded after the standard library
    #[arg(long, num_args = 1..)]
    defs: Vec<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FormulaSource {
    /// Formula text
    #[arg(long)]
    formula: Option<String>,
    /// Definition name, optionally with parameters: `N,k=3` or `N[3]`
    #[arg(long)]
    def: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Validate a lattice
    CheckLattice {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate a formula or definition
    Eval {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        formula: FormulaSource,
        #[command(flatten)]
        defs: DefsArg,
        /// Print only the satisfying elements, on one line
        #[arg(long)]
        list: bool,
    },
    /// Show the definition library
    Stdlib {
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        defs: DefsArg,
    },
    /// Automorphism group order and orbits
    Orbits {
        #[command(flatten)]
        source: Source,
    },
    /// Decide whether a subset is definable
    Definable {
        #[command(flatten)]
        source: Source,
        /// Comma-separated element ids or labels
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// Search for a formula defining a subset
    Synth {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        #[arg(long, default_value_t = 9)]
        budget: usize,
    },
    /// Formula for the n-th member of a chain defined by a formula
    ChainFormula {
        #[command(flatten)]
        formula: FormulaSource,
        #[command(flatten)]
        defs: DefsArg,
        #[arg(long)]
        n: usize,
        /// Also evaluate the result on this lattice
        #[command(flatten)]
        source: OptSource,
    },
    /// Built-in fixtures
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Finite semigroups and identities
    Semigroup {
        #[command(subcommand)]
        action: SemigroupAction,
    },
    /// Per-element property table with orbit ids
    Report {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Print a fixture in the lattice file format
    Export {
        name: Option<String>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Names of the small built-in fixtures
    List,
}

#[derive(Subcommand, Debug)]
enum SemigroupAction {
    /// Check identities on one semigroup
    Sat {
        /// Named semigroup: sl2, lz:n, rz:n, z:n, null:n, P3, c_monoid:m
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        named: Option<String>,
        /// Semigroup table file
        #[arg(long)]
        table: Option<PathBuf>,
        /// Identity such as `xy = x^2y` or `xy = 0`; repeatable
        #[arg(long, required = true)]
        identity: Vec<String>,
    },
    /// Incidence of semigroups against identities, and the concept lattice
    Context {
        /// Named semigroups, comma-separated or repeated
        #[arg(long, value_delimiter = ',')]
        named: Vec<String>,
        /// Semigroup table files
        #[arg(long, num_args = 1..)]
        table: Vec<PathBuf>,
        /// Identities, separated by `;` or `,`, or repeated
        #[arg(long, required = true)]
        identity: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(&'static str, String),
}

type CmdResult = Result<String, Failure>;

fn domain<E: std::fmt::Display>(kind: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure::Domain(kind, e.to_string())
}

/// Run one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.verb) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(kind, msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {kind}: {msg}\n"),
        },
    }
}

fn dispatch(verb: Verb) -> CmdResult {
    match verb {
        Verb::CheckLattice { source, dot } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            l.validate().map_err(|e| Failure::Domain("LatticeError", e))?;
            if dot {
                return Ok(to_dot(&l));
            }
            Ok(format!(
                "ok {} elements={} covers={}\n",
                l.name(),
                l.len(),
                l.cover_pairs().len()
            ))
        }
        Verb::Eval {
            source,
            formula,
            defs,
            list,
        } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            let table = load_defs(&defs.defs)?;
            let f = formula_from(&formula, &table)?;
            eval_report(&l, &table, &f, list)
        }
        Verb::Stdlib { list: _, defs } => {
            let table = load_defs(&defs.defs)?;
            let mut out = String::new();
            for fam in table.families() {
                for d in &fam.clauses {
                    writeln!(out, "{}", d.signature()).unwrap();
                }
            }
            Ok(out)
        }
        Verb::Orbits { source } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            let g = automorphism_group(&l);
            let orbits = orbit_partition(&l);
            let mut out = format!("# group order {}\n", g.order);
            for gen in &g.generators {
                writeln!(out, "# generator {}", gen.cycle_string(&l)).unwrap();
            }
            for block in &orbits.blocks {
                writeln!(out, "{}", names(&l, block.iter())).unwrap();
            }
            Ok(out)
        }
        Verb::Definable { source, subset } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            let s = parse_subset(&l, &subset)?;
            Ok(match verdict_with(&orbit_partition(&l), &s) {
                Verdict::Definable => "definable\n".to_string(),
                Verdict::NotDefinable(g) => format!("not-definable witness={}\n", g.cycle_string(&l)),
            })
        }
        Verb::Synth { source, subset, budget } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            let s = parse_subset(&l, &subset)?;
            let orbits = orbit_partition(&l);
            let config = SynthConfig::with_budget(budget);
            let r = synthesize_with_orbits(&l, std::slice::from_ref(&s), &config, &orbits);
            Ok(match &r[0] {
                SynthResult::Found(f) => format!("found {f}\n# size {}\n", f.size()),
                SynthResult::Inconclusive if !orbits.is_union_of_blocks(&s) => {
                    "inconclusive\n# not a union of orbits\n".to_string()
                }
                SynthResult::Inconclusive => "inconclusive\n".to_string(),
            })
        }
        Verb::ChainFormula {
            formula,
            defs,
            n,
            source,
        } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let table = load_defs(&defs.defs)?;
            let phi = formula_from(&formula, &table)?;
            if phi.free_vars().len() > 1 {
                return Err(Failure::Domain(
                    "EvalError",
                    format!("WrongFreeVariableCount: expected 1, found {}", phi.free_vars().len()),
                ));
            }
            let f = chain_element_formula(&phi, n);
            let mut out = format!("{f}\n");
            if source.lattice.is_some() || source.fixture.is_some() {
                let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
                let s = Evaluator::new(&l, &table)
                    .defined_set(&f)
                    .map_err(domain("EvalError"))?;
                writeln!(out, "# defines {}", names(&l, s.iter())).unwrap();
            }
            Ok(out)
        }
        Verb::Fixture { action } => match action {
            FixtureAction::Export { name, fixture: flag, dot } => {
                let name = name
                    .or(flag)
                    .ok_or_else(|| Failure::Usage("fixture export needs a fixture name".into()))?;
                let l = load_lattice(None, Some(&name))?;
                Ok(if dot { to_dot(&l) } else { write_lattice(&l) })
            }
            FixtureAction::List => {
                let mut out = String::new();
                for spec in small_fixtures(usize::MAX) {
                    writeln!(out, "{spec}").unwrap();
                }
                Ok(out)
            }
        },
        Verb::Semigroup { action } => semigroup(action),
        Verb::Report { source } => {
            let l = load_lattice(source.lattice.as_deref(), source.fixture.as_deref())?;
            let orbits = orbit_partition(&l);
            let props = [
                PropertyKind::Atom,
                PropertyKind::Neutral,
                PropertyKind::Distributive,
                PropertyKind::LowerModular,
                PropertyKind::ChainDownset,
            ];
            let mut out = String::from("# element orbit");
            for p in props {
                write!(out, " {}", p.name()).unwrap();
            }
            out.push('\n');
            for e in 0..l.len() {
                write!(out, "{} {}", l.display(e), orbits.block_of[e]).unwrap();
                for p in props {
                    write!(out, " {}", element_property(&l, e, p) as u8).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn semigroup(action: SemigroupAction) -> CmdResult {
    match action {
        SemigroupAction::Sat { named, table, identity } => {
            let s = match (named, table) {
                (Some(n), _) => parse_named(&n).map_err(domain("SemigroupError"))?,
                (None, Some(path)) => load_semigroup(&path)?,
                (None, None) => return Err(Failure::Usage("need --named or --table".into())),
            };
            let ids = parse_identities(&identity)?;
            let mut out = String::new();
            for id in &ids {
                match counterexample(&s, id).map_err(domain("SemigroupError"))? {
                    None => out.push_str("true\n"),
                    Some(w) => {
                        let parts: Vec<String> = w.iter().map(|(c, v)| format!("{c}={}", s.display(*v))).collect();
                        writeln!(out, "false\n# counterexample {}", parts.join(" ")).unwrap();
                    }
                }
            }
            Ok(out)
        }
        SemigroupAction::Context {
            named,
            table,
            identity,
            dot,
        } => {
            let mut objects: Vec<Semigroup> = Vec::new();
            for n in named.iter().filter(|n| !n.trim().is_empty()) {
                objects.push(parse_named(n).map_err(domain("SemigroupError"))?);
            }
            for path in &table {
                objects.push(load_semigroup(path)?);
            }
            if objects.is_empty() {
                return Err(Failure::Usage("need at least one semigroup".into()));
            }
            let ids = parse_identities(&identity)?;
            let ctx = incidence_context(&objects, &ids).map_err(domain("SemigroupError"))?;
            let l = concept_lattice(&ctx).map_err(domain("LatticeError"))?;
            if dot {
                return Ok(to_dot(&l));
            }
            let mut out = String::new();
            let attrs: Vec<String> = ids.iter().map(Identity::to_string).collect();
            writeln!(out, "# attributes {}", attrs.join(" ; ")).unwrap();
            for (s, row) in ctx.objects.iter().zip(&ctx.incidence) {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                writeln!(out, "{} {}", s.name(), cells.join(" ")).unwrap();
            }
            writeln!(out, "# concepts {}", l.len()).unwrap();
            for (k, c) in ctx.concepts().iter().enumerate() {
                let intent: Vec<String> = c.intent.iter().map(|j| j.to_string()).collect();
                writeln!(out, "c{k} {} intent={}", l.display(k), intent.join(",")).unwrap();
            }
            Ok(out)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_lattice(path: Option<&Path>, fixture_name: Option<&str>) -> Result<Lattice, Failure> {
    match (path, fixture_name) {
        (Some(p), _) => {
            let l = parse_lattice(&read(p)?).map_err(domain("LatticeFileError"))?;
            Ok(if l.name().is_empty() {
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                l.with_name(stem)
            } else {
                l
            })
        }
        (None, Some(name)) => {
            let spec: FixtureSpec = name.parse().map_err(domain("CatalogError"))?;
            fixture(&spec).map_err(domain("CatalogError"))
        }
        (None, None) => Err(Failure::Usage("need --lattice FILE or --fixture NAME".into())),
    }
}

fn load_semigroup(path: &Path) -> Result<Semigroup, Failure> {
    parse_semigroup(&read(path)?).map_err(domain("SemigroupError"))
}

fn load_defs(extra: &[PathBuf]) -> Result<DefTable, Failure> {
    let mut table = load_stdlib().map_err(domain("DefError"))?;
    for path in extra {
        let text = read(path)?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        table.load_str(&name, &text).map_err(domain("DefError"))?;
    }
    table.validate().map_err(domain("DefError"))?;
    Ok(table)
}

/// `NAME`, `NAME,k=3,m=1` or `NAME[3,1]`; parameter values in order.
fn parse_def_spec(spec: &str) -> Result<(String, Vec<i64>), Failure> {
    let bad = || Failure::Usage(format!("bad --def value {spec:?}"));
    let spec = spec.trim();
    if let Some(open) = spec.find('[') {
        let inner = spec[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let values = inner
            .split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok((spec[..open].to_string(), values));
    }
    let mut parts = spec.split(',');
    let name = parts.next().unwrap_or("").trim().to_string();
    let values = parts
        .map(|p| {
            let v = p.split_once('=').map_or(p, |(_, v)| v);
            v.trim().parse::<i64>().map_err(|_| bad())
        })
        .collect::<Result<Vec<_>, _>>()?;
    if name.is_empty() {
        return Err(bad());
    }
    Ok((name, values))
}

fn formula_from(src: &FormulaSource, table: &DefTable) -> Result<Formula, Failure> {
    match (&src.formula, &src.def) {
        (Some(text), _) => parse(text, table).map_err(domain("ParseError")),
        (None, Some(spec)) => {
            let (name, values) = parse_def_spec(spec)?;
            table.instantiate_family(&name, &values).map_err(domain("DefError"))
        }
        (None, None) => Err(Failure::Usage("need --formula or --def".into())),
    }
}

fn eval_report(l: &Lattice, table: &DefTable, f: &Formula, list: bool) -> CmdResult {
    let vars = f.free_vars();
    let mut ev = Evaluator::new(l, table);
    let rel = ev.relation(f, &vars).map_err(domain("EvalError"))?;
    let mut tuples: Vec<Vec<usize>> = rel.tuples().collect();
    tuples.sort();
    let mut out = String::new();
    match (vars.len(), list) {
        (0, _) => writeln!(out, "{}", !tuples.is_empty()).unwrap(),
        (1, true) => writeln!(out, "{}", names(l, tuples.iter().map(|t| t[0]))).unwrap(),
        (1, false) => {
            for e in 0..l.len() {
                writeln!(out, "{} {}", l.display(e), rel.get(&[e])).unwrap();
            }
        }
        (_, true) => {
            let items: Vec<String> = tuples.iter().map(|t| format!("({})", tuple_names(l, t, ","))).collect();
            writeln!(out, "{}", items.join(" ")).unwrap();
        }
        (_, false) => {
            writeln!(out, "# {}", vars.join(" ")).unwrap();
            for t in &tuples {
                writeln!(out, "{}", tuple_names(l, t, " ")).unwrap();
            }
        }
    }
    Ok(out)
}

fn tuple_names(l: &Lattice, t: &[usize], sep: &str) -> String {
    t.iter().map(|&e| l.display(e)).collect::<Vec<_>>().join(sep)
}

fn names(l: &Lattice, elems: impl Iterator<Item = usize>) -> String {
    elems.map(|e| l.display(e)).collect::<Vec<_>>().join(" ")
}

fn parse_subset(l: &Lattice, text: &str) -> Result<Subset, Failure> {
    let mut s = Subset::empty(l.len());
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e = l
            .resolve(item)
            .ok_or_else(|| Failure::Domain("LatticeError", format!("UnknownElement: {item}")))?;
        s.insert(e);
    }
    Ok(s)
}

fn parse_identities(items: &[String]) -> Result<Vec<Identity>, Failure> {
    let mut out = Vec::new();
    for item in items {
        out.extend(parse_basis(item).map_err(domain("SemigroupError"))?);
    }
    if out.is_empty() {
        return Err(Failure::Usage("no identities given".into()));
    }
    Ok(out)
}
