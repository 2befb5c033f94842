//! End-to-end acceptance checks with pinned wall-clock budgets.
//!
//! Each check ties several modules together and is judged against
//! independently derived expectations: golden display strings, counting
//! oracles, the alternating face formula, or exhaustive searches that do
//! not share code with the construction under test. [`checks`] returns the
//! suite in a fixed order; the `acceptance` integration test runs one test
//! per check and the CLI `selftest` command prints one line per check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::io::{self, Write};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::adc::Report;
use crate::chains::{BasisElement, Chain, Name};
use crate::contraction::{
    dual_contraction, quasi_final_brute, quasi_initial_brute, quasi_initial_certificate,
    standard_contraction, validate_contraction, validate_infty_contraction,
};
use crate::homcat::{
    merge_cells, one_cells_of_poset_oriental, split_cell, two_cell_witness,
    verify_two_truncation,
};
use crate::simplicial::{nerve_simplices, standard_simplex_adc, Poset};
use crate::steiner::{
    atom, atom_face_formula, check_loop_free, check_strongly_loop_free, check_unitary, compose,
    enumerate_cells, Cell,
};

/// One acceptance check: a name, a time budget, and the check itself.
pub struct Check {
    pub name: &'static str,
    pub budget: Duration,
    pub run: fn() -> Result<(), String>,
}

impl Check {
    /// Runs the check and reports its wall-clock time.
    pub fn execute(&self) -> (Duration, Result<(), String>) {
        let start = Instant::now();
        let result = (self.run)();
        (start.elapsed(), result)
    }
}

/// The acceptance suite in its fixed order.
pub fn checks() -> Vec<Check> {
    let s = Duration::from_secs;
    vec![
        Check { name: "triangle golden tables", budget: s(1), run: triangle_golden_tables },
        Check { name: "simplex base criteria", budget: s(5), run: simplex_base_criteria },
        Check { name: "simplex contractions", budget: s(5), run: simplex_contractions },
        Check { name: "atom tables vs face formula", budget: s(10), run: atom_face_oracle },
        Check { name: "composition laws", budget: s(60), run: composition_laws },
        Check { name: "duality bijection", budget: s(30), run: duality_bijection },
        Check { name: "interval nerve counts", budget: s(30), run: interval_nerve_counts },
        Check { name: "poset one-cells and witnesses", budget: s(30), run: poset_hom_structure },
        Check {
            name: "two-truncation and splitting",
            budget: s(30),
            run: truncation_and_splitting,
        },
        Check {
            name: "contraction certificates vs brute force",
            budget: s(120),
            run: contraction_certificates,
        },
    ]
}

/// Runs every check, writing one PASS/FAIL line per check.
pub fn run_all(out: &mut dyn Write) -> io::Result<bool> {
    let mut all = true;
    for check in checks() {
        let (elapsed, result) = check.execute();
        match result {
            Ok(()) if elapsed <= check.budget => writeln!(out, "PASS {}", check.name)?,
            Ok(()) => {
                all = false;
                writeln!(out, "FAIL {}: exceeded the time budget", check.name)?;
            }
            Err(msg) => {
                all = false;
                writeln!(out, "FAIL {}: {msg}", check.name)?;
            }
        }
    }
    Ok(all)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn err(e: impl Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn valid(what: &str, report: &Report) -> Result<(), String> {
    ensure(report.is_valid(), format!("{what}: {report}"))
}

fn gen(degree: usize, tuple: &[u32]) -> Chain {
    Chain::generator(degree, Name::Simplex(tuple.to_vec()))
}

fn unit_path(n: u32) -> Chain {
    Chain::from_terms(1, (1..=n).map(|l| (Name::Simplex(vec![l - 1, l]), 1)))
}

/// The atoms of the triangle complex print exactly the expected tables.
fn triangle_golden_tables() -> Result<(), String> {
    let k = Arc::new(standard_simplex_adc(2));
    let expected: &[(&[u32], &str)] = &[
        (&[0], "((0);(0))"),
        (&[1], "((1);(1))"),
        (&[2], "((2);(2))"),
        (&[0, 1], "((0),(0,1);(1),(0,1))"),
        (&[0, 2], "((0),(0,2);(2),(0,2))"),
        (&[1, 2], "((1),(1,2);(2),(1,2))"),
        (&[0, 1, 2], "((0),(0,2),(0,1,2);(2),(0,1)+(1,2),(0,1,2))"),
    ];
    for (tuple, table) in expected {
        let b = BasisElement::new(tuple.len() - 1, Name::Simplex(tuple.to_vec()));
        let (cell, unitary) = atom(&k, &b);
        ensure(unitary, format!("atom {b} is not unitary"))?;
        valid(&format!("atom {b}"), &cell.validate())?;
        ensure(
            cell.to_string() == *table,
            format!("atom {b} prints {cell}, expected {table}"),
        )?;
    }
    Ok(())
}

/// Normalized chains of the standard simplices satisfy every base
/// criterion through dimension six, and strong loop-freeness comes with
/// plain loop-freeness.
fn simplex_base_criteria() -> Result<(), String> {
    for n in 0..=6 {
        let k = Arc::new(standard_simplex_adc(n));
        valid(&format!("validate dimension {n}"), &k.validate())?;
        valid(&format!("unitary dimension {n}"), &check_unitary(&k))?;
        valid(
            &format!("strongly loop-free dimension {n}"),
            &check_strongly_loop_free(&k),
        )?;
        valid(&format!("loop-free dimension {n}"), &check_loop_free(&k))?;
    }
    Ok(())
}

/// The standard and dual contractions of the simplex complexes satisfy
/// every contraction condition through dimension six, on both validation
/// routes.
fn simplex_contractions() -> Result<(), String> {
    for n in 0..=6 {
        for (label, c) in [("standard", standard_contraction(n)), ("dual", dual_contraction(n))] {
            valid(&format!("{label} contraction of dimension {n}"), &validate_contraction(&c))?;
            let h = c.as_homotopy().map_err(err)?;
            valid(
                &format!("{label} contraction of dimension {n} as a homotopy"),
                &h.validate(),
            )?;
        }
    }
    Ok(())
}

/// Recursively built atom tables agree entrywise with the closed
/// alternating face formula on every simplex basis tuple through
/// dimension five.
fn atom_face_oracle() -> Result<(), String> {
    for n in 0..=5 {
        let k = Arc::new(standard_simplex_adc(n));
        for b in k.basis_elements() {
            let (cell, unitary) = atom(&k, &b);
            ensure(unitary, format!("atom {b} is not unitary"))?;
            let tuple = b.name.as_simplex().expect("simplex bases use tuple names").to_vec();
            for q in 0..=b.degree {
                for eps in 0..2u8 {
                    let want = atom_face_formula(&k, &tuple, q, eps);
                    ensure(
                        cell.entry(eps, q) == &want,
                        format!("atom {b} row{eps} entry {q} differs from the face formula"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

type Rows = (Vec<Chain>, Vec<Chain>);

fn rows_of(c: &Cell) -> Rows {
    (c.row0().to_vec(), c.row1().to_vec())
}

/// Globularity, unit laws, associativity, and the interchange law hold on
/// every defined instance among the enumerated cells of the 3-simplex
/// oriental.
fn composition_laws() -> Result<(), String> {
    let k = Arc::new(standard_simplex_adc(3));
    let e = enumerate_cells(&k, 3, &big(3));
    ensure(!e.truncated(), "enumeration truncated at cap 3")?;
    let cells: Vec<&Cell> = (0..=3).flat_map(|d| e.cells(d)).collect();

    for x in &cells {
        if x.dim() >= 2 {
            let s = x.source().map_err(err)?;
            let t = x.target().map_err(err)?;
            ensure(
                s.source().map_err(err)? == t.source().map_err(err)?
                    && s.target().map_err(err)? == t.target().map_err(err)?,
                format!("globularity fails at {x}"),
            )?;
        }
        for j in 0..x.dim() {
            let s = x.source_at(j).map_err(err)?.identity();
            let t = x.target_at(j).map_err(err)?.identity();
            ensure(
                &compose(j, x, &s).map_err(err)? == *x,
                format!("right unit law fails at level {j} for {x}"),
            )?;
            ensure(
                &compose(j, &t, x).map_err(err)? == *x,
                format!("left unit law fails at level {j} for {x}"),
            )?;
        }
    }

    // Composable pairs per level, with their composites.
    let mut by_target: Vec<BTreeMap<Rows, Vec<&Cell>>> = Vec::new();
    let mut pairs: Vec<Vec<(&Cell, &Cell, Cell)>> = Vec::new();
    for j in 0..3usize {
        let mut map: BTreeMap<Rows, Vec<&Cell>> = BTreeMap::new();
        for y in cells.iter().filter(|c| c.dim() > j) {
            map.entry(rows_of(&y.target_at(j).map_err(err)?)).or_default().push(y);
        }
        let mut at_j = Vec::new();
        for x in cells.iter().filter(|c| c.dim() > j) {
            if let Some(ys) = map.get(&rows_of(&x.source_at(j).map_err(err)?)) {
                for y in ys {
                    at_j.push((*x, *y, compose(j, x, y).map_err(err)?));
                }
            }
        }
        by_target.push(map);
        pairs.push(at_j);
    }

    for j in 0..3usize {
        for (x, y, xy) in &pairs[j] {
            if let Some(zs) = by_target[j].get(&rows_of(&y.source_at(j).map_err(err)?)) {
                for z in zs {
                    let yz = compose(j, y, z).map_err(err)?;
                    ensure(
                        compose(j, xy, z).map_err(err)? == compose(j, x, &yz).map_err(err)?,
                        format!("associativity fails at level {j} for {x}, {y}, {z}"),
                    )?;
                }
            }
        }
    }

    for j in 1..3usize {
        for kk in 0..j {
            for (a, b, ab) in &pairs[j] {
                for (c, d, cd) in &pairs[j] {
                    let outer = match compose(kk, ab, cd) {
                        Ok(outer) => outer,
                        Err(_) => continue,
                    };
                    let ac = compose(kk, a, c).map_err(err)?;
                    let bd = compose(kk, b, d).map_err(err)?;
                    ensure(
                        compose(j, &ac, &bd).map_err(err)? == outer,
                        format!("interchange fails at levels {kk} < {j} for {a}, {b}, {c}, {d}"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// Row-swapping duality is a bijection between the enumerated cells of the
/// 3-simplex oriental and those of its opposite complex, exchanging
/// sources and targets at every dualized level.
fn duality_bijection() -> Result<(), String> {
    let k = Arc::new(standard_simplex_adc(3));
    let dual_k = Arc::new(k.op_dual());
    let e = enumerate_cells(&k, 3, &big(3));
    let de = enumerate_cells(&dual_k, 3, &big(3));
    ensure(!e.truncated() && !de.truncated(), "enumeration truncated at cap 3")?;
    ensure(
        e.counts() == de.counts(),
        format!("cell counts differ: {:?} vs {:?}", e.counts(), de.counts()),
    )?;
    let all: BTreeSet<usize> = (1..=3).collect();
    for dim in 0..=3 {
        let mut seen = vec![false; de.cells(dim).len()];
        for c in e.cells(dim) {
            let d = c.dual(&all);
            let pos = de
                .position_of(&d)
                .ok_or_else(|| format!("dual of {c} is not enumerated"))?;
            ensure(!seen[pos], format!("duality is not injective at {c}"))?;
            seen[pos] = true;
            for p in 0..dim {
                ensure(
                    c.source_at(p).map_err(err)?.dual(&all) == d.target_at(p).map_err(err)?
                        && c.target_at(p).map_err(err)?.dual(&all)
                            == d.source_at(p).map_err(err)?,
                    format!("duality fails to exchange the {p}-boundaries of {c}"),
                )?;
            }
        }
        ensure(seen.iter().all(|&b| b), format!("duality misses cells in dimension {dim}"))?;
    }
    Ok(())
}

/// Nerve simplex counts of the interval complex match the independent
/// count of monotone maps into {0, 1}.
fn interval_nerve_counts() -> Result<(), String> {
    let k = Arc::new(standard_simplex_adc(1));
    for n in 0..=4usize {
        let (simplices, truncated) = nerve_simplices(&k, n, &big(2));
        ensure(!truncated, format!("nerve enumeration truncated at n = {n}"))?;
        // Monotone maps {0 < … < n} → {0 < 1}, counted directly.
        let mut monotone = 0usize;
        for mask in 0u32..1 << (n + 1) {
            let bits: Vec<u32> = (0..=n).map(|i| (mask >> i) & 1).collect();
            if bits.windows(2).all(|w| w[0] <= w[1]) {
                monotone += 1;
            }
        }
        ensure(monotone == n + 2, format!("monotone-map oracle is off at n = {n}"))?;
        ensure(
            simplices.len() == monotone,
            format!("{} nerve simplices at n = {n}, expected {monotone}", simplices.len()),
        )?;
    }
    Ok(())
}

fn poset_test_set() -> Vec<Poset> {
    let p = |tokens: &[&str], pairs: &[(&str, &str)]| {
        Poset::new(
            tokens.iter().map(|t| t.to_string()).collect(),
            &pairs
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .expect("test posets are valid")
    };
    let mut set: Vec<Poset> = (1..=5).map(Poset::total_order).collect();
    set.push(p(&["0", "1", "2"], &[])); // antichain
    set.push(p(&["a", "b", "c"], &[("a", "b"), ("a", "c")])); // fork
    set.push(p(&["0", "1", "2", "3"], &[("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")]));
    set.push(p(&["0", "1", "2", "j"], &[("0", "1"), ("1", "2")]));
    set.push(non_total_five_chain_with_junk());
    set.push(non_total_five_diamond_with_tail());
    set
}

/// A 4-chain plus one incomparable element.
fn non_total_five_chain_with_junk() -> Poset {
    Poset::new(
        vec!["0".into(), "1".into(), "2".into(), "3".into(), "j".into()],
        &[
            ("0".into(), "1".into()),
            ("1".into(), "2".into()),
            ("2".into(), "3".into()),
        ],
    )
    .expect("test posets are valid")
}

/// A diamond with a tail appended to its top.
fn non_total_five_diamond_with_tail() -> Poset {
    Poset::new(
        vec!["0".into(), "1".into(), "2".into(), "3".into(), "4".into()],
        &[
            ("0".into(), "1".into()),
            ("0".into(), "2".into()),
            ("1".into(), "3".into()),
            ("2".into(), "3".into()),
            ("3".into(), "4".into()),
        ],
    )
    .expect("test posets are valid")
}

/// Over every test poset with at most five elements: the 1-cells of the
/// oriental are exactly the totally ordered subsets, endpoints are minima
/// and maxima, composition is union, and insertion witnesses exist iff a
/// 2-cell exists between the corresponding 1-cells.
fn poset_hom_structure() -> Result<(), String> {
    for poset in poset_test_set() {
        let label = poset.tokens().join(",");
        let pairs = one_cells_of_poset_oriental(&poset, &big(2))
            .map_err(|e| format!("poset {label}: {e}"))?;
        let k = pairs[0].1.complex().clone();
        let cell_of: BTreeMap<&Vec<u32>, &Cell> = pairs.iter().map(|(s, c)| (s, c)).collect();

        for (subset, cell) in &pairs {
            let source = cell.source_at(0).map_err(err)?;
            let target = cell.target_at(0).map_err(err)?;
            ensure(
                source.top() == &gen(0, &[subset[0]])
                    && target.top() == &gen(0, &[*subset.last().unwrap()]),
                format!("poset {label}: endpoints of {cell} are not min/max of {subset:?}"),
            )?;
        }
        for (s1, c1) in &pairs {
            for (s2, c2) in &pairs {
                if s1.last() != s2.first() {
                    continue;
                }
                let mut union: Vec<u32> = s1.iter().chain(s2.iter()).copied().collect();
                union.sort();
                union.dedup();
                let composite = compose(0, c2, c1).map_err(err)?;
                ensure(
                    Some(&&composite) == cell_of.get(&union),
                    format!("poset {label}: composite of {s1:?} and {s2:?} is not their union"),
                )?;
            }
        }

        let e = enumerate_cells(&k, 2, &big(2));
        ensure(!e.truncated(), format!("poset {label}: enumeration truncated at cap 2"))?;
        let mut by_rows: BTreeSet<(Rows, Rows)> = BTreeSet::new();
        for z in e.cells(2) {
            by_rows.insert((
                rows_of(&z.source().map_err(err)?),
                rows_of(&z.target().map_err(err)?),
            ));
        }
        for (u, cu) in &pairs {
            for (v, cv) in &pairs {
                if !cu.is_parallel_to(cv) {
                    continue;
                }
                let witness = two_cell_witness(&k, u, v).map_err(err)?;
                let found = by_rows.contains(&(rows_of(cu), rows_of(cv)));
                ensure(
                    witness.is_some() == found,
                    format!("poset {label}: witness and 2-cell search disagree on {u:?} → {v:?}"),
                )?;
                if let Some(w) = witness {
                    ensure(
                        e.position_of(&w).is_some(),
                        format!("poset {label}: witness {w} is not an enumerated 2-cell"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// The directly constructed 2-truncation matches the enumerated oriental
/// on chains and on two non-total five-element posets, and interval
/// splitting round-trips through merging on the 4-simplex oriental.
fn truncation_and_splitting() -> Result<(), String> {
    let mut posets: Vec<Poset> = (1..=5).map(Poset::total_order).collect();
    posets.push(non_total_five_chain_with_junk());
    posets.push(non_total_five_diamond_with_tail());
    for poset in posets {
        let label = poset.tokens().join(",");
        let report = verify_two_truncation(&poset, &big(2))
            .map_err(|e| format!("poset {label}: {e}"))?;
        valid(&format!("two-truncation of {label}"), &report)?;
    }

    let k = Arc::new(standard_simplex_adc(4));
    let e = enumerate_cells(&k, 3, &big(2));
    ensure(!e.truncated(), "enumeration truncated at cap 2")?;
    let cut_path = gen(1, &[0, 2]).add(&gen(1, &[2, 4])).map_err(err)?;
    let straight = unit_path(4);
    let mut matched = 0usize;
    for dim in 2..=3 {
        for x in e.cells(dim) {
            if x.row0()[1] != cut_path || x.row1()[1] != straight {
                continue;
            }
            matched += 1;
            let pieces = split_cell(x, &[0, 2, 4])
                .map_err(|e| format!("splitting {x} failed: {e}"))?;
            ensure(pieces.len() == 2, format!("splitting {x} gave {} pieces", pieces.len()))?;
            for piece in &pieces {
                valid(&format!("piece {piece} of {x}"), &piece.validate())?;
            }
            let merged = merge_cells(&pieces).map_err(err)?;
            ensure(merged == *x, format!("split/merge does not round-trip on {x}"))?;
        }
    }
    ensure(matched > 0, "no cells matched the splitting hypotheses")?;
    Ok(())
}

/// Contraction certificates and the brute-force recursion agree on the
/// named quasi-initial and quasi-final cells of the simplex orientals
/// through dimension four, and the lifted contraction satisfies every
/// transformation law on the 3-simplex oriental.
fn contraction_certificates() -> Result<(), String> {
    let k3 = Arc::new(standard_simplex_adc(3));
    let e3 = enumerate_cells(&k3, 3, &big(3));
    ensure(!e3.truncated(), "enumeration truncated at cap 3")?;
    let h = standard_contraction(3).as_homotopy().map_err(err)?;
    valid("transformation laws on the 3-simplex oriental", &validate_infty_contraction(&h, &e3))?;

    for n in 0..=4usize {
        let k = Arc::new(standard_simplex_adc(n));
        let e = enumerate_cells(&k, n, &big(4));
        ensure(!e.truncated(), format!("dimension {n}: enumeration truncated at cap 4"))?;
        let standard = standard_contraction(n);
        let dual = dual_contraction(n);
        let top = n as u32;

        let mut named: Vec<(&str, Cell, bool)> = vec![
            ("first object", Cell::object(k.clone(), gen(0, &[0])).map_err(err)?, false),
            ("last object", Cell::object(k.clone(), gen(0, &[top])).map_err(err)?, true),
        ];
        if n >= 1 {
            let jump = Cell::new(
                k.clone(),
                vec![gen(0, &[0]), gen(1, &[0, top])],
                vec![gen(0, &[top]), gen(1, &[0, top])],
            )
            .map_err(err)?;
            let straight = Cell::new(
                k.clone(),
                vec![gen(0, &[0]), unit_path(top)],
                vec![gen(0, &[top]), unit_path(top)],
            )
            .map_err(err)?;
            named.push(("jump 1-cell", jump.clone(), false));
            named.push(("unit-path 1-cell", straight.clone(), true));
            if n >= 2 {
                let mut fan = Chain::zero(2);
                let mut dual_fan = Chain::zero(2);
                for m in 1..n as u32 {
                    fan = fan.add(&gen(2, &[0, m, m + 1])).map_err(err)?;
                    dual_fan = dual_fan.add(&gen(2, &[m - 1, m, top])).map_err(err)?;
                }
                for (label, topchain, final_side) in
                    [("fan 2-cell", fan, false), ("dual fan 2-cell", dual_fan, true)]
                {
                    let cell = Cell::new(
                        k.clone(),
                        vec![jump.row0()[0].clone(), jump.row0()[1].clone(), topchain.clone()],
                        vec![straight.row1()[0].clone(), straight.row1()[1].clone(), topchain],
                    )
                    .map_err(err)?;
                    valid(&format!("dimension {n}: {label}"), &cell.validate())?;
                    named.push((label, cell, final_side));
                }
            }
        }

        for (label, cell, final_side) in named {
            let what = format!("dimension {n}: {label}");
            let contraction = if final_side { &dual } else { &standard };
            let certificate =
                quasi_initial_certificate(contraction, &cell).map_err(|e| format!("{what}: {e}"))?;
            ensure(
                certificate.is_quasi_final() == final_side,
                format!("{what}: certificate is on the wrong side"),
            )?;
            valid(&format!("{what}: certificate replay"), &certificate.verify(&e))?;
            let brute = if final_side {
                quasi_final_brute(&e, &cell, n).map_err(err)?
            } else {
                quasi_initial_brute(&e, &cell, n).map_err(err)?
            };
            ensure(brute, format!("{what}: brute-force recursion disagrees"))?;
        }
    }
    Ok(())
}
