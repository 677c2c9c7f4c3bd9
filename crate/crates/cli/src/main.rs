use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hslocal::engine::{basis_cap_from_env, betti_numbers, Family, FilteredComplexSpec};
use hslocal::fixtures;
use hslocal::locality::Locality;
use hslocal::scalar::{parse_rational, GaussianRational, Rational};
use hslocal::simplicial::{load_complex, SimplicialComplex};
use hslocal::theorem::{stabilize, theorem1_report, Theorem1Config};
use hslocal::verify::{default_battery, run_ledger, Identity, IdentityCase, Ledger, Mutation, Operators};
use hslocal::Error;

#[derive(Debug, Parser)]
#[command(name = "hslocal", version, about = "Local Hochschild homology of truncated kernel algebras on simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers of one or more chain families, or the ε-local quotient over a ladder.
    Homology(HomologyArgs),
    /// Compare local Hochschild, N-local, Alexander-Spanier and simplicial homology.
    Theorem1(Theorem1Args),
    /// Run the exact identity battery.
    Verify(VerifyArgs),
    /// Write the barycentric subdivision of a complex as JSON.
    Subdivide(SubdivideArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Field {
    Real,
    Complex,
}

#[derive(Debug, Args)]
struct HomologyArgs {
    /// Complex JSON file, or a built-in name (hexagon, two-hexagons, octahedron, triangle, two-triangles).
    #[arg(long)]
    complex: String,
    /// Truncation M: basis functions per simplex.
    #[arg(short = 'M', long = "truncation", default_value_t = 1)]
    truncation: u32,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Chain families, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "hochschild-reduced", value_parser = parse_family)]
    family: Vec<Family>,
    /// Support filter: none, N=<n> or eps2=<p/q>.
    #[arg(long, default_value = "none", value_parser = parse_locality)]
    local: Locality,
    /// Squared radii for the ε-local quotient (reduced family); switches to quotient mode.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational_arg)]
    eps_ladder: Vec<Rational>,
    /// Ladder given as multiples F of the longest edge: ε² = F² · (max edge)².
    #[arg(long, value_delimiter = ',', value_parser = parse_rational_arg)]
    eps_from_edges: Vec<Rational>,
    /// Constant k of the quotient: cycles at ε modulo boundaries at kε.
    #[arg(short = 'k', default_value_t = 2)]
    k: u32,
    /// Barycentric subdivisions applied first.
    #[arg(long, default_value_t = 0)]
    subdivisions: u32,
    /// Ranks of integer boundary matrices agree over both fields.
    #[arg(long, value_enum, default_value_t = Field::Real)]
    field: Field,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Enumeration cap per degree (default from HSLOCAL_BASIS_CAP, else 2000000).
    #[arg(long)]
    basis_cap: Option<usize>,
}

#[derive(Debug, Args)]
struct Theorem1Args {
    #[arg(long)]
    complex: String,
    #[arg(short = 'M', long = "truncation", default_value_t = 1)]
    truncation: u32,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Simplicial locality bound for the N-local columns.
    #[arg(long, default_value_t = 1)]
    n_local: u32,
    /// Barycentric subdivisions before the N-local columns.
    #[arg(long, default_value_t = 1)]
    subdivisions: u32,
    /// Barycentric subdivisions before the ε-local column.
    #[arg(long, default_value_t = 2)]
    eps_subdivisions: u32,
    /// Squared radii; defaults to two levels derived from the tubular window.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational_arg)]
    eps_ladder: Vec<Rational>,
    #[arg(long, value_delimiter = ',', value_parser = parse_rational_arg)]
    eps_from_edges: Vec<Rational>,
    #[arg(short = 'k', default_value_t = 2)]
    k: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    basis_cap: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Complexes to test on; defaults to the hexagon and a single 2-simplex.
    #[arg(long, value_delimiter = ',')]
    complex: Vec<String>,
    #[arg(short = 'M', long = "truncation", default_value_t = 2)]
    truncation: u32,
    /// Random inputs per identity, degree and seed.
    #[arg(long, default_value_t = 300)]
    trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1u64, 2, 3])]
    seed: Vec<u64>,
    /// Restrict to these identities.
    #[arg(long, value_delimiter = ',', value_parser = parse_identity)]
    identity: Vec<Identity>,
    #[arg(long, value_enum, default_value_t = Field::Real)]
    field: Field,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Inject an operator defect (battery self-test).
    #[arg(long, hide = true, value_parser = parse_mutation)]
    mutate: Option<Mutation>,
}

#[derive(Debug, Args)]
struct SubdivideArgs {
    #[arg(long)]
    complex: String,
    #[arg(long, default_value_t = 1)]
    times: u32,
    /// Output file; stdout when absent.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_locality(s: &str) -> Result<Locality, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status for an error: 3 resource, 4 no stabilization, 2 everything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::NotStabilized(_) => 4,
        _ => 2,
    }
}

/// An existing path is read as JSON; otherwise the name must be a built-in fixture.
fn open_complex(name: &str) -> hslocal::Result<SimplicialComplex> {
    let path = Path::new(name);
    if path.exists() {
        return load_complex(path);
    }
    fixtures::by_name(name)
        .ok_or_else(|| Error::Io(format!("{name}: no such file and not a built-in complex ({})", fixtures::NAMES.join(", "))))
}

fn cap(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(basis_cap_from_env)
}

fn ladder(x: &SimplicialComplex, direct: &[Rational], factors: &[Rational]) -> Option<Vec<Rational>> {
    let edge = x.max_edge_squared();
    let mut out: Vec<Rational> = direct.to_vec();
    out.extend(factors.iter().map(|f| f * f * &edge));
    (!out.is_empty()).then_some(out)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn homology(a: HomologyArgs) -> hslocal::Result<u8> {
    let x = open_complex(&a.complex)?.subdivided(a.subdivisions);
    if let Some(ladder) = ladder(&x, &a.eps_ladder, &a.eps_from_edges) {
        if a.family != [Family::HochschildReduced] {
            return Err(Error::Validation("the ε-local quotient is computed for hochschild-reduced only".into()));
        }
        let st = stabilize(&x, Some(ladder), a.truncation, a.max_degree, a.k, cap(a.basis_cap))?;
        match a.format {
            Format::Json => print_json(&st),
            Format::Table => {
                for l in &st.levels {
                    let ranks = l.induced_ranks_to_coarser.as_ref().map(|r| format!("  induced→coarser {r:?}")).unwrap_or_default();
                    let flag = if l.tubular { "" } else { "  [not tubular]" };
                    println!("ε²={:<12} {:?}{ranks}{flag}", l.eps2, l.dims);
                }
                for w in &st.warnings {
                    println!("warning: {w}");
                }
                println!("local reduced k={}: {:?}", a.k, st.dims);
            }
        }
        return Ok(0);
    }
    let mut reports = Vec::new();
    for &family in &a.family {
        let spec = FilteredComplexSpec::new(family, a.local.clone(), a.truncation, a.max_degree).with_cap(cap(a.basis_cap));
        reports.push(betti_numbers(&x, &spec)?);
    }
    match a.format {
        Format::Json => {
            // Wall-clock time would break byte-identical output.
            for r in &mut reports {
                r.elapsed_ms = None;
            }
            print_json(&reports)
        }
        Format::Table => {
            println!("{:<20} {:<12} {:>3}  {:<16} basis sizes", "family", "locality", "M", "betti");
            for r in &reports {
                let betti: Vec<String> = r.betti.iter().map(|b| b.to_string()).collect();
                let mut betti = betti.join(" ");
                if r.top_degree_upper_bound {
                    betti.push_str(" (top ≤)");
                }
                println!("{:<20} {:<12} {:>3}  {:<16} {:?}", r.family.name(), r.locality, r.truncation, betti, r.basis_sizes);
            }
        }
    }
    Ok(0)
}

fn theorem1(a: Theorem1Args) -> hslocal::Result<u8> {
    let x = open_complex(&a.complex)?;
    let xe = x.subdivided(a.eps_subdivisions);
    let cfg = Theorem1Config {
        truncation: a.truncation,
        max_degree: a.max_degree,
        n_local: a.n_local,
        n_subdivisions: a.subdivisions,
        eps_subdivisions: a.eps_subdivisions,
        eps_ladder: ladder(&xe, &a.eps_ladder, &a.eps_from_edges),
        k: a.k,
        basis_cap: cap(a.basis_cap),
    };
    let report = theorem1_report(&x, &cfg)?;
    match a.format {
        Format::Json => print_json(&report),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn verify(a: VerifyArgs) -> hslocal::Result<u8> {
    let names = if a.complex.is_empty() { vec!["hexagon".to_string(), "triangle".to_string()] } else { a.complex };
    let mut cases: Vec<IdentityCase> = if a.trials == 0 { Vec::new() } else { default_battery(a.trials, &a.seed) };
    if !a.identity.is_empty() {
        cases.retain(|c| a.identity.contains(&c.id));
    }
    let ops = Operators { mutation: a.mutate };
    let mut ledgers: Vec<Ledger> = Vec::new();
    for name in &names {
        let x = open_complex(name)?;
        ledgers.push(match a.field {
            Field::Real => run_ledger::<Rational>(name, &x, a.truncation, &cases, &ops, "real"),
            Field::Complex => run_ledger::<GaussianRational>(name, &x, a.truncation, &cases, &ops, "complex"),
        });
    }
    match a.format {
        Format::Json => print_json(&ledgers),
        Format::Table => {
            for l in &ledgers {
                print!("{}", l.to_table());
                if let Some(c) = l.cases.iter().find(|c| c.failures > 0) {
                    println!("first counterexample ({}): {}", c.id, c.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default());
                }
            }
        }
    }
    Ok(if ledgers.iter().all(Ledger::passed) { 0 } else { 1 })
}

fn subdivide(a: SubdivideArgs) -> hslocal::Result<u8> {
    let x = open_complex(&a.complex)?.subdivided(a.times);
    let text = x.to_json();
    match a.output {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Homology(a) => homology(a),
        Command::Theorem1(a) => theorem1(a),
        Command::Verify(a) => verify(a),
        Command::Subdivide(a) => subdivide(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
