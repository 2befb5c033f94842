//! Command-line front end: generation, validation, enumeration, Hom
//! listing, 2-truncation, and the acceptance suite, with `--json` for
//! machine output.
//!
//! Complexes are read from JSON files in any of three shapes: a chain
//! complex (`max_degree`/`basis`/`diff`/`aug`), a simplicial complex
//! (`elements`/`leq`/`faces`), or a bare poset (`elements`/`leq`, taken
//! with all of its chains as faces). Exit codes: 0 all checks pass, 1 a
//! violation was found, 2 usage or format error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use orientals::acceptance;
use orientals::adc::{Adc, Report};
use orientals::chains::{BasisElement, Name};
use orientals::contraction::{
    dual_contraction, standard_contraction, validate_contraction, Contraction, ContractionData,
};
use orientals::homcat::{hom_cells, truncation2_of_poset_oriental};
use orientals::simplicial::{
    chnorm_of_complex, nerve_simplices, poset_oriental_adc, standard_simplex_adc, Poset,
    SimplicialComplex,
};
use orientals::steiner::{
    atom, check_loop_free, check_strongly_loop_free, check_unitary, enumerate_cells, Cell,
    CellData,
};

#[derive(Parser)]
#[command(name = "orientals", version, about = "Exact computation with orientals of simplicial complexes and posets")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the atoms of the oriental of the standard N-simplex.
    Oriental {
        n: usize,
        /// Emit the dual contraction instead of the standard one.
        #[arg(long)]
        dual: bool,
    },
    /// Check a complex: structure, unitarity, both loop-freeness criteria.
    CheckBase { file: PathBuf },
    /// Check a contraction ({"complex": …, "contraction": …}) against its complex.
    CheckContraction {
        file: PathBuf,
        /// Validate under the dual sign convention regardless of the file.
        #[arg(long)]
        dual: bool,
    },
    /// Enumerate all cells up to a dimension with bounded coefficients.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Coefficient cap (default: ORIENTALS_CAP or 3).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Count the nerve simplices of a complex in one simplicial dimension.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Coefficient cap (default: ORIENTALS_CAP or 3).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// List the Hom cells between two parallel cells, by Hom dimension.
    Hom {
        file: PathBuf,
        /// Source cell: a JSON table or an atom name like "(0,2)".
        #[arg(long)]
        from: String,
        /// Target cell: a JSON table or an atom name like "(0,1,2)".
        #[arg(long)]
        to: String,
        /// Highest Hom dimension listed.
        #[arg(long, default_value_t = 1)]
        bound: usize,
        /// Coefficient cap (default: ORIENTALS_CAP or 3).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print the inclusion-ordered 2-truncation of a poset oriental.
    Truncate2 {
        /// A poset as inline JSON ({"elements": …, "leq": …}) or a file path.
        poset: String,
    },
    /// Run the acceptance suite, one line per check.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Ok(false) marks a violation (exit 1); Err marks a usage or format
/// problem (exit 2).
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Oriental { n, dual } => oriental(n, dual, cli.json),
        Command::CheckBase { file } => check_base(&file, cli.json),
        Command::CheckContraction { file, dual } => check_contraction(&file, dual, cli.json),
        Command::Enumerate { file, dim, cap } => enumerate(&file, dim, cap, cli.json),
        Command::Nerve { file, n, cap } => nerve(&file, n, cap, cli.json),
        Command::Hom { file, from, to, bound, cap } => hom(&file, &from, &to, bound, cap, cli.json),
        Command::Truncate2 { poset } => truncate2(&poset, cli.json),
        Command::Selftest => selftest(cli.json),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn emit<T: Serialize>(value: &T) -> Result<(), String> {
    println!("{}", serde_json::to_string(value).map_err(err)?);
    Ok(())
}

fn cap_value(flag: Option<u64>) -> Result<BigInt, String> {
    if let Some(cap) = flag {
        return Ok(BigInt::from(cap));
    }
    match std::env::var("ORIENTALS_CAP") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(BigInt::from)
            .map_err(|_| format!("ORIENTALS_CAP must be a nonnegative integer, got {text:?}")),
        Err(_) => Ok(BigInt::from(3)),
    }
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Accepts a chain complex, a simplicial complex, or a bare poset (taken
/// with all chains as faces).
fn complex_from_value(value: Value) -> Result<Adc, String> {
    let object = value.as_object().ok_or("expected a JSON object")?;
    if object.contains_key("max_degree") {
        serde_json::from_value::<Adc>(value).map_err(err)
    } else if object.contains_key("faces") {
        let complex: SimplicialComplex = serde_json::from_value(value).map_err(err)?;
        Ok(chnorm_of_complex(&complex))
    } else if object.contains_key("elements") {
        let poset: Poset = serde_json::from_value(value).map_err(err)?;
        Ok(poset_oriental_adc(&poset))
    } else {
        Err("expected a complex: max_degree/basis/diff/aug, elements/leq/faces, or elements/leq"
            .to_string())
    }
}

fn load_complex(path: &Path) -> Result<Arc<Adc>, String> {
    let value = read_json(path)?;
    complex_from_value(value)
        .map(Arc::new)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn oriental(n: usize, dual: bool, as_json: bool) -> Result<bool, String> {
    let k = Arc::new(standard_simplex_adc(n));
    let contraction = if dual { dual_contraction(n) } else { standard_contraction(n) };
    let atoms: Vec<(BasisElement, Cell, bool)> =
        k.basis_elements().map(|b| {
            let (cell, unitary) = atom(&k, &b);
            (b, cell, unitary)
        }).collect();
    if as_json {
        let atom_values: Vec<Value> = atoms
            .iter()
            .map(|(b, cell, unitary)| {
                json!({
                    "name": b.name.to_string(),
                    "dim": b.degree,
                    "cell": cell,
                    "unitary": unitary,
                })
            })
            .collect();
        emit(&json!({
            "complex": k.as_ref(),
            "atoms": atom_values,
            "contraction": contraction,
        }))?;
    } else {
        println!("oriental of the standard {n}-simplex");
        for dim in 0..=k.max_degree() {
            println!("dim {dim}:");
            for (b, cell, _) in atoms.iter().filter(|(b, _, _)| b.degree == dim) {
                println!("  {} = {cell}", b.name);
            }
        }
    }
    Ok(true)
}

fn print_report(label: &str, report: &Report) {
    if report.is_valid() {
        println!("{label}: PASS");
    } else {
        println!("{label}: FAIL");
        for violation in &report.violations {
            println!("  {violation}");
        }
    }
}

fn check_base(file: &Path, as_json: bool) -> Result<bool, String> {
    let k = load_complex(file)?;
    let sections = [
        ("validate", k.validate()),
        ("unitary", check_unitary(&k)),
        ("loop-free", check_loop_free(&k)),
        ("strongly loop-free", check_strongly_loop_free(&k)),
    ];
    let pass = sections.iter().all(|(_, report)| report.is_valid());
    if as_json {
        emit(&json!({
            "validate": sections[0].1,
            "unitary": sections[1].1,
            "loop_free": sections[2].1,
            "strongly_loop_free": sections[3].1,
            "pass": pass,
        }))?;
    } else {
        for (label, report) in &sections {
            print_report(label, report);
        }
    }
    Ok(pass)
}

fn check_contraction(file: &Path, dual: bool, as_json: bool) -> Result<bool, String> {
    let value = read_json(file)?;
    let object = value
        .as_object()
        .ok_or_else(|| format!("{}: expected a JSON object", file.display()))?;
    let complex_value = object
        .get("complex")
        .cloned()
        .ok_or_else(|| format!("{}: missing \"complex\"", file.display()))?;
    let contraction_value = object
        .get("contraction")
        .cloned()
        .ok_or_else(|| format!("{}: missing \"contraction\"", file.display()))?;
    let k = Arc::new(
        complex_from_value(complex_value).map_err(|e| format!("{}: {e}", file.display()))?,
    );
    let mut data: ContractionData =
        serde_json::from_value(contraction_value).map_err(|e| format!("{}: {e}", file.display()))?;
    if dual {
        data.dual = true;
    }
    let contraction = Contraction::from_data(k, data)
        .map_err(|e| format!("{}: {e}", file.display()))?;
    let convention = if contraction.is_dual() { "dual" } else { "standard" };

    let direct = validate_contraction(&contraction);
    let homotopy = match contraction.as_homotopy() {
        Ok(h) => h.validate(),
        Err(e) => {
            let mut report = Report::default();
            report.push(0, None, e.to_string());
            report
        }
    };
    let pass = direct.is_valid() && homotopy.is_valid();
    if as_json {
        emit(&json!({
            "convention": convention,
            "contraction": direct,
            "homotopy": homotopy,
            "pass": pass,
        }))?;
    } else {
        print_report(&format!("contraction ({convention} convention)"), &direct);
        print_report("homotopy route", &homotopy);
    }
    Ok(pass)
}

fn enumerate(file: &Path, dim: usize, cap: Option<u64>, as_json: bool) -> Result<bool, String> {
    let k = load_complex(file)?;
    let cap = cap_value(cap)?;
    let e = enumerate_cells(&k, dim, &cap);
    if as_json {
        let cells: Vec<&[Cell]> = (0..=dim).map(|d| e.cells(d)).collect();
        emit(&json!({
            "counts": e.counts(),
            "truncated": e.truncated(),
            "cells": cells,
        }))?;
    } else {
        let counts: Vec<String> = e.counts().iter().map(usize::to_string).collect();
        println!("counts: {}", counts.join("/"));
        println!("truncated: {}", e.truncated());
        for d in 0..=dim {
            println!("dim {d}: {} cells", e.cells(d).len());
            for cell in e.cells(d) {
                println!("  {cell}");
            }
        }
    }
    Ok(true)
}

fn nerve(file: &Path, n: usize, cap: Option<u64>, as_json: bool) -> Result<bool, String> {
    let k = load_complex(file)?;
    let cap = cap_value(cap)?;
    let (simplices, truncated) = nerve_simplices(&k, n, &cap);
    if as_json {
        emit(&json!({ "n": n, "count": simplices.len(), "truncated": truncated }))?;
    } else {
        println!("nerve simplices at n = {n}: {}", simplices.len());
        if truncated {
            println!("enumeration truncated at cap {cap}; the count needs a larger --cap");
        }
    }
    Ok(!truncated)
}

/// A cell argument: a JSON table, or the name of an atom of the complex.
fn parse_cell(k: &Arc<Adc>, text: &str) -> Result<Cell, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let data: CellData =
            serde_json::from_str(trimmed).map_err(|e| format!("cell {trimmed}: {e}"))?;
        return Cell::from_data(k.clone(), data).map_err(|e| format!("cell {trimmed}: {e}"));
    }
    let name: Name = trimmed.parse().expect("name parsing is total");
    let degree = k
        .degree_of(&name)
        .ok_or_else(|| format!("unknown atom {trimmed}"))?;
    let (cell, unitary) = atom(k, &BasisElement::new(degree, name));
    if !unitary {
        return Err(format!("atom {trimmed} is not unitary over this complex"));
    }
    Ok(cell)
}

fn hom(
    file: &Path,
    from: &str,
    to: &str,
    bound: usize,
    cap: Option<u64>,
    as_json: bool,
) -> Result<bool, String> {
    let k = load_complex(file)?;
    let from = parse_cell(&k, from)?;
    let to = parse_cell(&k, to)?;
    if !from.is_parallel_to(&to) {
        return Err(format!("the cells {from} and {to} are not parallel"));
    }
    let cap = cap_value(cap)?;
    let e = enumerate_cells(&k, from.dim() + 1 + bound, &cap);
    if e.truncated() {
        println!("enumeration truncated at cap {cap}; Hom listing needs completeness, raise --cap");
        return Ok(false);
    }
    let homs: Vec<Vec<Cell>> = (0..=bound)
        .map(|j| hom_cells(&e, &from, &to, j))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if as_json {
        emit(&json!({ "from": from, "to": to, "homs": homs }))?;
    } else {
        println!("from = {from}");
        println!("to = {to}");
        for (j, cells) in homs.iter().enumerate() {
            println!("hom dim {j}: {} cells", cells.len());
            for cell in cells {
                println!("  {cell}");
            }
        }
    }
    Ok(true)
}

fn truncate2(arg: &str, as_json: bool) -> Result<bool, String> {
    let text = if Path::new(arg).exists() {
        fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    } else {
        arg.to_string()
    };
    let poset: Poset = serde_json::from_str(&text).map_err(|e| format!("{arg}: {e}"))?;
    let truncation = truncation2_of_poset_oriental(&poset);
    if as_json {
        emit(&truncation)?;
        return Ok(true);
    }
    let braces = |tokens: &[String]| format!("{{{}}}", tokens.join(","));
    println!("objects: {}", truncation.objects.join(" "));
    let mut elements_of = std::collections::BTreeMap::new();
    for hom in &truncation.homs {
        let elements: Vec<String> = hom.elements.iter().map(|e| braces(e)).collect();
        println!("hom({},{}): {}", hom.source, hom.target, elements.join(" "));
        for (a, b) in &hom.leq {
            println!("  {} < {}", elements[*a], elements[*b]);
        }
        elements_of.insert((hom.source.clone(), hom.target.clone()), elements);
    }
    for table in &truncation.compositions {
        let firsts = &elements_of[&(table.from.clone(), table.mid.clone())];
        let seconds = &elements_of[&(table.mid.clone(), table.to.clone())];
        let composites = &elements_of[&(table.from.clone(), table.to.clone())];
        println!(
            "compose hom({},{}) x hom({},{}) -> hom({},{}):",
            table.from, table.mid, table.mid, table.to, table.from, table.to
        );
        for (gi, row) in table.table.iter().enumerate() {
            for (fi, &ci) in row.iter().enumerate() {
                println!("  {} ∘ {} = {}", seconds[gi], firsts[fi], composites[ci]);
            }
        }
    }
    Ok(true)
}

fn selftest(as_json: bool) -> Result<bool, String> {
    if as_json {
        let mut results = Vec::new();
        let mut pass = true;
        for check in acceptance::checks() {
            let (elapsed, result) = check.execute();
            let ok = result.is_ok() && elapsed <= check.budget;
            pass &= ok;
            let message = match result {
                Ok(()) if ok => None,
                Ok(()) => Some("exceeded the time budget".to_string()),
                Err(msg) => Some(msg),
            };
            results.push(json!({ "name": check.name, "pass": ok, "message": message }));
        }
        emit(&json!({ "checks": results, "pass": pass }))?;
        Ok(pass)
    } else {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        let pass = acceptance::run_all(&mut lock).map_err(err)?;
        lock.flush().map_err(err)?;
        Ok(pass)
    }
}
