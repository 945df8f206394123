//! The `deltak` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::grothendieck::{canonical_iso_to_gamma, hom_into, k0_invariants, k0_presentation, lattices_agree, Flavor};
use crate::sconstr::{check_membership, corner_poset, diagram_from_json, diagram_to_json, knit_from_corner, PosetDiagram, SConstrError};
use crate::simpab::{compare_via, gamma, homotopy_group, na1, na1_to_gamma, FgAb, SimpAbError};
use crate::simplex::{hasse_dot, Simplex};
use crate::slices::{mutation_orbit, OrbitGraph, SliceError};
use crate::verify::{run_all_seeded, Profile};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_NOT_A_FUNCTOR: i32 = 5;

const DEFAULT_CAP: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "deltak", version, about = "Simplicial K0 computations and higher S-construction diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homotopy groups of the Dold-Kan object Γ(A[m]) truncated at level L.
    Em {
        /// Group spec such as "Z", "Z/4" or "Z+Z/2".
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
        #[arg(long = "L", visible_alias = "l")]
        l: usize,
    },
    /// Rank and torsion of K0 of the higher Auslander algebra.
    K0 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Write the Euler and AR relation matrices to the output directory.
        #[arg(long)]
        dump_matrix: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compares the array model and Hom(K0, A) with Γ(A[m]) through the canonical maps.
    DkCheck {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long = "L", visible_alias = "l", default_value_t = 5)]
        l: usize,
    },
    /// Mutation orbit of the initial slice, written as DOT and JSON.
    Slices {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Maximum number of slices; defaults to $DELTAK_CAP or 10000.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Extends corner data on P(m,n) to a diagram on all of Δ(m,n).
    Knit {
        input: PathBuf,
        /// Output file for the knitted diagram; the Betti table goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership report for a diagram: degenerate, Euler-cube and AR-cube conditions.
    Check { input: PathBuf },
    /// Runs the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
        /// Forces the first check of the given criterion to fail.
        #[arg(long, hide = true)]
        seed_fault: Option<u8>,
    },
    /// Hasse diagram of Δ(m,n) in DOT, nondegenerate simplices highlighted.
    Hasse {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type Outcome = Result<i32, Failure>;

impl From<SimpAbError> for Failure {
    fn from(e: SimpAbError) -> Self {
        let code = match e {
            SimpAbError::TruncationTooShallow { .. } => EXIT_TRUNCATION,
            SimpAbError::Parse(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<SConstrError> for Failure {
    fn from(e: SConstrError) -> Self {
        let code = match e {
            SConstrError::NotAFunctor { .. } => EXIT_NOT_A_FUNCTOR,
            SConstrError::DegenerateNotAcyclic(_) | SConstrError::NoPathFound { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn parse_group(spec: &str) -> Result<FgAb, Failure> {
    spec.parse().map_err(|e: SimpAbError| Failure::new(EXIT_USAGE, format!("bad group spec {spec:?}: {e}")))
}

fn invariant_factors(a: &FgAb) -> Value {
    json!(a.canonical().orders())
}

fn read_diagram(path: &Path, default: Option<fn(usize, usize) -> Vec<Simplex>>) -> Result<PosetDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(diagram_from_json(&v, default)?)
}

fn betti_json(x: &PosetDiagram) -> Value {
    let table: serde_json::Map<String, Value> = x
        .betti_table()
        .into_iter()
        .map(|(s, b)| (s.key(), Value::Object(b.into_iter().map(|(k, d)| (k.to_string(), json!(d))).collect())))
        .collect();
    Value::Object(table)
}

fn cmd_em(group: &str, m: usize, l: usize) -> Outcome {
    let a = parse_group(group)?;
    let x = gamma(&a, m, l);
    homotopy_group(&x, m)?;
    let groups = (0..l).map(|n| Ok(invariant_factors(&homotopy_group(&x, n)?))).collect::<Result<Vec<_>, Failure>>()?;
    print_json(&json!({"group": group, "m": m, "L": l, "homotopy": groups}));
    Ok(0)
}

fn cmd_k0(m: usize, n: usize, dump: bool, out: &Path) -> Outcome {
    let (rank, torsion) = k0_invariants(m, n);
    let torsion: Vec<String> = torsion.iter().map(ToString::to_string).collect();
    if dump {
        for (flavor, name) in [(Flavor::Euler, "euler"), (Flavor::Ar, "ar")] {
            let p = k0_presentation(m, n, flavor);
            let header: Vec<String> = p.generators.iter().map(Simplex::key).collect();
            let text = format!("# columns: {}\n{}", header.join(" "), p.relations.to_text());
            write_file(&out.join(format!("k0_{m}_{n}_{name}.txt")), &text)?;
        }
    }
    print_json(&json!({"m": m, "n": n, "rank": rank, "torsion": torsion, "lattices_agree": lattices_agree(m, n)}));
    Ok(0)
}

fn cmd_dk_check(group: &str, m: usize, l: usize) -> Outcome {
    let a = parse_group(group)?;
    let target = gamma(&a, m, l);
    let array_model = if m == 1 { Some(compare_via(&na1(&a, l), &target, &na1_to_gamma(&a, l))?) } else { None };
    let k0 = |e: crate::grothendieck::K0Error| Failure::new(EXIT_FAILURE, e.to_string());
    let hom = hom_into(&a, m, l).map_err(k0)?;
    let hom_k0 = compare_via(&hom, &target, &canonical_iso_to_gamma(&a, m, l).map_err(k0)?)?;
    print_json(&json!({"group": group, "m": m, "L": l, "array_model": array_model, "hom_k0": hom_k0}));
    Ok(if hom_k0 && array_model != Some(false) { 0 } else { EXIT_FAILURE })
}

fn write_orbit(graph: &OrbitGraph, out: &Path) -> Result<(), Failure> {
    let stem = format!("orbit_{}_{}", graph.m, graph.n);
    write_file(&out.join(format!("{stem}.dot")), &graph.to_dot())?;
    let json = serde_json::to_string_pretty(&graph.to_json()).expect("JSON values serialize");
    write_file(&out.join(format!("{stem}.json")), &(json + "\n"))
}

fn cmd_slices(m: usize, n: usize, cap: Option<usize>, out: &Path) -> Outcome {
    if m == 0 || n < m {
        return Err(Failure::new(EXIT_USAGE, format!("slices need n ≥ m ≥ 1, got m = {m}, n = {n}")));
    }
    let cap = match cap {
        Some(c) => c,
        None => match std::env::var("DELTAK_CAP") {
            Ok(v) => v.parse().map_err(|_| Failure::new(EXIT_USAGE, format!("DELTAK_CAP={v} is not a number")))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    let (graph, code) = match mutation_orbit(m, n, cap) {
        Ok(g) => (g, 0),
        Err(SliceError::CapExceeded { partial, .. }) => (*partial, EXIT_CAP),
        Err(e) => return Err(Failure::new(EXIT_FAILURE, e.to_string())),
    };
    write_orbit(&graph, out)?;
    let partial = if graph.complete { "" } else { " (partial: cap reached)" };
    println!("orbit ({m},{n}): {} nodes, {} edges{partial}", graph.nodes.len(), graph.edges.len());
    Ok(code)
}

fn cmd_knit(input: &Path, out: Option<&Path>) -> Outcome {
    let data = read_diagram(input, Some(corner_poset))?;
    let x = knit_from_corner(&data)?;
    let full = serde_json::to_string_pretty(&diagram_to_json(&x)).expect("JSON values serialize") + "\n";
    match out {
        Some(path) => write_file(path, &full)?,
        None => print!("{full}"),
    }
    print_json(&json!({"betti": betti_json(&x), "membership": check_membership(&x)}));
    Ok(0)
}

fn cmd_check(input: &Path) -> Outcome {
    let x = read_diagram(input, None)?;
    let report = check_membership(&x);
    print_json(&json!({"passes": report.passes(), "report": report}));
    Ok(if report.passes() { 0 } else { EXIT_FAILURE })
}

fn cmd_verify(profile: Profile, seed_fault: Option<u8>) -> Outcome {
    let results = run_all_seeded(profile, seed_fault);
    for r in &results {
        eprintln!("{r}");
    }
    let passed = results.iter().all(|r| r.passed);
    print_json(&json!({"profile": profile, "passed": passed, "criteria": results}));
    Ok(if passed { 0 } else { EXIT_FAILURE })
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Em { group, m, l } => cmd_em(&group, m, l),
        Command::K0 { m, n, dump_matrix, out } => cmd_k0(m, n, dump_matrix, &out),
        Command::DkCheck { group, m, l } => cmd_dk_check(&group, m, l),
        Command::Slices { m, n, cap, out } => cmd_slices(m, n, cap, &out),
        Command::Knit { input, out } => cmd_knit(&input, out.as_deref()),
        Command::Check { input } => cmd_check(&input),
        Command::Verify { profile, seed_fault } => cmd_verify(profile, seed_fault),
        Command::Hasse { m, n } => {
            print!("{}", hasse_dot(m, n, true));
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let _ = std::io::stdout().flush();
    code
}
