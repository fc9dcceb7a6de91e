//! Command-line front end for `lcmlat`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lcmlat::classify::census;
use lcmlat::lattice::io::{to_dot, LatticeJson};
use lcmlat::lattice::{canonical_form, find_isomorphism};
use lcmlat::monomial::{
    colon_pair, deform_pair, inflate, is_generic, polarize, radical_pair, restrict_variable_pair,
    weight_map, Deformation, IdealJson, QuotientJson,
};
use lcmlat::morphism::{check_map, LcmMap};
use lcmlat::realize::{canonical_realization, equalize_degrees, realize};
use lcmlat::resolution::taylor_betti;
use lcmlat::sdepth::sdepth_solve;
use lcmlat::{
    Config, Error, Field, GeneratorSet, LcmLattice, Monomial, QuotientPair, Semilattice, Weighting,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lcmlat", version, about = "Monomial ideals, lcm-semilattices and Stanley depth")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Coefficient field for homology: Q or GFp:<p>
    #[arg(long, global = true, default_value = "Q")]
    field: Field,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true, env = "LCMLAT_THREADS")]
    threads: Option<usize>,
    /// Maximum semilattice size
    #[arg(long, global = true)]
    element_cap: Option<usize>,
    /// Maximum characteristic poset size
    #[arg(long, global = true)]
    poset_cap: Option<usize>,
    /// Maximum number of Taylor complex subsets
    #[arg(long, global = true)]
    subset_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// lcm-semilattice of an ideal
    Lattice {
        ideal: PathBuf,
        /// Also write a Graphviz rendering
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Standard weighting of an ideal's lcm-semilattice
    Weights { ideal: PathBuf },
    /// Ideal realizing a weighted semilattice
    Realize { weighting: PathBuf },
    /// Squarefree realization of a semilattice
    Canonical { lattice: PathBuf },
    /// Equalize the realized degrees along an antichain
    Equalize {
        weighting: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        antichain: Vec<usize>,
    },
    /// Stanley depth of I/J
    Sdepth { quotient: PathBuf },
    /// Betti numbers of I/J
    Betti { quotient: PathBuf },
    /// Projective dimension of I/J
    Pdim { quotient: PathBuf },
    /// Squarefree polarization of I/J
    Polarize { quotient: PathBuf },
    /// Radicals of I and J
    Radical { quotient: PathBuf },
    /// (I:v)/(J:v)
    Colon {
        quotient: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Set a variable to 1
    Restrict {
        quotient: PathBuf,
        #[arg(long)]
        var: String,
    },
    /// Multiply generators not dividing a monomial by a fresh variable
    Inflate {
        quotient: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Apply a common deformation of G_I and G_J
    Deform {
        quotient: PathBuf,
        #[arg(long)]
        eps: PathBuf,
    },
    /// Whether an ideal is generic
    Generic { ideal: PathBuf },
    /// Compare two lattices or lcm-semilattices of ideals
    Isomorphic { a: PathBuf, b: PathBuf },
    /// Enumerate atomistic semilattices on k atoms
    Classify {
        #[arg(long)]
        atoms: usize,
        /// Evaluate the conjectured inequalities on every class
        #[arg(long)]
        check: bool,
        /// Required for five or more atoms
        #[arg(long)]
        long_run: bool,
    },
    /// Validate an lcm map and compare invariants on both sides
    CheckMap { map: PathBuf },
}

/// `{"variables": [...], "lattice": {...}, "bottom": "1", "weights": ["x", ...]}`
#[derive(Debug, Serialize, Deserialize)]
struct WeightingJson {
    variables: Vec<String>,
    lattice: LatticeJson,
    bottom: String,
    weights: Vec<String>,
}

impl WeightingJson {
    fn from_weighting(w: &Weighting) -> Self {
        let (bottom, weights) = w.render();
        WeightingJson {
            variables: w.vars().to_vec(),
            lattice: LatticeJson::from_lattice(w.lattice()),
            bottom,
            weights,
        }
    }

    fn to_weighting(&self, cfg: &Config) -> lcmlat::Result<Weighting> {
        let l = self.lattice.to_lattice(cfg.element_cap)?;
        let parse = |s: &String| Monomial::parse(s, &self.variables);
        let weights = self.weights.iter().map(parse).collect::<lcmlat::Result<_>>()?;
        Weighting::new(self.variables.clone(), l, parse(&self.bottom)?, weights)
    }
}

/// `{"source": quotient, "target": quotient, "pairs": [["x*y", "a"], ...]}`
#[derive(Debug, Deserialize)]
struct MapJson {
    source: QuotientJson,
    target: QuotientJson,
    pairs: Vec<(String, String)>,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
    /// A computed result contradicts a proven inequality; the value is dumped.
    Violation(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_limit() => EXIT_LIMIT,
            Failure::Core(e) if e.is_internal() => EXIT_INTERNAL,
            Failure::Core(_) | Failure::Input(_) => EXIT_INVALID,
            Failure::Violation(..) => EXIT_INTERNAL,
        }
    }
}

type Outcome = std::result::Result<Option<String>, Failure>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))
}

fn read_ideal(path: &Path) -> std::result::Result<GeneratorSet, Failure> {
    Ok(read_json::<IdealJson>(path)?.to_generators()?)
}

fn read_quotient(path: &Path) -> std::result::Result<QuotientPair, Failure> {
    Ok(read_json::<QuotientJson>(path)?.to_pair()?)
}

/// Reads either a lattice JSON or an ideal JSON (via its lcm-semilattice).
fn read_lattice(path: &Path, cfg: &Config) -> std::result::Result<Semilattice, Failure> {
    let v: Value = read_json(path)?;
    if v.get("covers").is_some() {
        let l: LatticeJson = serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(l.to_lattice(cfg.element_cap)?);
    }
    let g: IdealJson = serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(LcmLattice::new(&g.to_generators()?, cfg.element_cap)?
        .lattice()
        .clone())
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> Option<String> {
    Some(serde_json::to_string_pretty(v).expect("serializable") + "\n")
}

fn quotient_report(p: &QuotientPair) -> Option<String> {
    pretty(&p.to_json())
}

fn lattice_report(l: &LcmLattice) -> Value {
    json!({
        "variables": l.vars(),
        "lattice": LatticeJson::from_lattice(l.lattice()),
        "structure": l.lattice().structure_report(),
    })
}

fn execute(cmd: Command, cfg: &Config, notes: &mut String) -> Outcome {
    match cmd {
        Command::Lattice { ideal, dot } => {
            let l = LcmLattice::new(&read_ideal(&ideal)?, cfg.element_cap)?;
            if let Some(path) = dot {
                write_file(&path, &to_dot(l.lattice()))?;
            }
            Ok(pretty(&lattice_report(&l)))
        }
        Command::Weights { ideal } => {
            let l = LcmLattice::new(&read_ideal(&ideal)?, cfg.element_cap)?;
            Ok(pretty(&WeightingJson::from_weighting(&weight_map(&l))))
        }
        Command::Realize { weighting } => {
            let w = read_json::<WeightingJson>(&weighting)?.to_weighting(cfg)?;
            Ok(pretty(&realize(&w)?.to_json()))
        }
        Command::Canonical { lattice } => {
            let l = read_lattice(&lattice, cfg)?;
            let g = canonical_realization(&l)?;
            Ok(pretty(&json!({
                "canonical": canonical_form(&l, cfg.canon_perm_cap)?,
                "ideal": g.to_json(),
                "minimal": g.minimalize().to_json(),
            })))
        }
        Command::Equalize {
            weighting,
            antichain,
        } => {
            let w = read_json::<WeightingJson>(&weighting)?.to_weighting(cfg)?;
            let eq = equalize_degrees(&w, &antichain)?;
            Ok(pretty(&WeightingJson::from_weighting(&eq)))
        }
        Command::Sdepth { quotient } => Ok(pretty(&sdepth_solve(&read_quotient(&quotient)?, cfg)?)),
        Command::Betti { quotient } => Ok(pretty(&taylor_betti(&read_quotient(&quotient)?, cfg)?)),
        Command::Pdim { quotient } => {
            let b = taylor_betti(&read_quotient(&quotient)?, cfg)?;
            Ok(pretty(&json!({ "pdim": b.pdim, "field": b.field })))
        }
        Command::Polarize { quotient } => Ok(quotient_report(&polarize(&read_quotient(&quotient)?))),
        Command::Radical { quotient } => {
            Ok(quotient_report(&radical_pair(&read_quotient(&quotient)?)?))
        }
        Command::Colon { quotient, by } => {
            let p = read_quotient(&quotient)?;
            let v = Monomial::parse(&by, p.vars())?;
            Ok(quotient_report(&colon_pair(&p, &v)?))
        }
        Command::Restrict { quotient, var } => {
            let p = read_quotient(&quotient)?;
            let i = p
                .vars()
                .iter()
                .position(|v| *v == var)
                .ok_or_else(|| Failure::Input(format!("unknown variable {var}")))?;
            Ok(quotient_report(&restrict_variable_pair(&p, i)?))
        }
        Command::Inflate { quotient, at } => {
            let p = read_quotient(&quotient)?;
            let m = Monomial::parse(&at, p.vars())?;
            Ok(quotient_report(&inflate(&p, &m)?))
        }
        Command::Deform { quotient, eps } => {
            let p = read_quotient(&quotient)?;
            let d: Deformation = read_json(&eps)?;
            Ok(quotient_report(&deform_pair(&p, &d)?))
        }
        Command::Generic { ideal } => {
            Ok(pretty(&json!({ "generic": is_generic(&read_ideal(&ideal)?) })))
        }
        Command::Isomorphic { a, b } => {
            let la = read_lattice(&a, cfg)?;
            let lb = read_lattice(&b, cfg)?;
            let map = find_isomorphism(&la, &lb, cfg.canon_perm_cap)?;
            Ok(pretty(&json!({ "isomorphic": map.is_some(), "map": map })))
        }
        Command::Classify {
            atoms,
            check,
            long_run,
        } => {
            if atoms >= 5 && !long_run {
                return Err(Failure::Input(format!(
                    "{atoms} atoms is a long computation; pass --long-run"
                )));
            }
            let c = census(atoms, check, cfg)?;
            let bundles: Vec<_> = c.counterexamples().collect();
            if !bundles.is_empty() {
                return Err(Failure::Violation(
                    format!("{} counterexample(s) to the conjectured inequalities", bundles.len()),
                    json!(bundles),
                ));
            }
            notes.push_str(&format!("{} classes on {atoms} atoms\n", c.summary.classes));
            Ok(Some(c.to_json_lines()))
        }
        Command::CheckMap { map } => {
            let m: MapJson = read_json(&map)?;
            let source = m.source.to_pair()?;
            let target = m.target.to_pair()?;
            let pairs = m
                .pairs
                .iter()
                .map(|(a, b)| Ok((Monomial::parse(a, source.vars())?, Monomial::parse(b, target.vars())?)))
                .collect::<lcmlat::Result<Vec<_>>>()?;
            let lm = LcmMap::from_pairs(source, target, &pairs, cfg)?;
            let report = check_map(&lm, cfg)?;
            if !report.holds() {
                return Err(Failure::Violation(
                    "invariants are not monotone along the map".into(),
                    json!(report),
                ));
            }
            Ok(pretty(&report))
        }
    }
}

fn config_from(g: &GlobalArgs) -> Config {
    let mut cfg = Config {
        field: g.field,
        threads: g.threads,
        ..Config::default()
    };
    if let Some(c) = g.element_cap {
        cfg.element_cap = c;
    }
    if let Some(c) = g.poset_cap {
        cfg.poset_cap = c;
    }
    if let Some(c) = g.subset_cap {
        cfg.subset_cap = c;
    }
    cfg
}

/// Runs one command line, writing the report to `out` (unless `--out` is
/// given) and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cfg = config_from(&cli.global);
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INVALID;
    }
    let mut notes = String::new();
    let work = || execute(cli.command, &cfg, &mut notes);
    let result = match cfg.threads {
        Some(n) => match rayon_pool(n) {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Failure::Input(e)),
        },
        None => work(),
    };
    let _ = err.write_all(notes.as_bytes());
    match result {
        Ok(report) => {
            let Some(text) = report else { return EXIT_OK };
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write report: {e}");
                    EXIT_INVALID
                }
            }
        }
        Err(f) => {
            match &f {
                Failure::Core(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
                Failure::Input(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
                Failure::Violation(msg, bundle) => {
                    let _ = writeln!(err, "VIOLATION: {msg}");
                    let _ = writeln!(
                        err,
                        "{}",
                        serde_json::to_string_pretty(bundle).expect("serializable")
                    );
                }
            }
            f.code()
        }
    }
}

fn rayon_pool(n: usize) -> std::result::Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| e.to_string())
}

/// Runs with the process's standard streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
