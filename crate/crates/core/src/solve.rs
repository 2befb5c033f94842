//! Bounded enumeration of nonnegative chains with prescribed boundary.
//!
//! The solvers answer: which nonnegative chains of a fixed degree satisfy
//! `d x = r` (or `ε x = a` in degree 0) with every coefficient at most a
//! cap? Solutions are produced in lexicographic order of their coefficient
//! vectors over the canonical basis order.
//!
//! Completeness is certified through positive functionals. A functional μ
//! on degree p−1 with ⟨μ, d b⟩ ≥ 1 for every degree-p basis element b gives
//! ⟨μ, r⟩ = Σ_b x_b ⟨μ, d b⟩ ≥ x_b for any nonnegative solution, so the
//! solution set is finite and can be walked in full. In that case the
//! beyond-cap flag states exactly whether solutions above the cap exist.
//! Without a functional the search is cut at the cap and the flag is
//! conservatively true.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::adc::Adc;
use crate::chains::{Chain, Name};

/// Result of a bounded enumeration.
#[derive(Debug, Clone)]
pub(crate) struct Solutions {
    /// Every solution whose coefficients are all ≤ cap, canonical order.
    pub chains: Vec<Chain>,
    /// Whether solutions with a coefficient above the cap exist (`exact`)
    /// or merely could exist (`!exact`).
    pub beyond_cap: bool,
    /// Whether `beyond_cap` is a certainty rather than an upper estimate.
    #[allow(dead_code)]
    pub exact: bool,
}

/// Linear functional on one degree, stored on basis names.
#[derive(Debug, Clone)]
pub(crate) struct Functional {
    values: BTreeMap<Name, BigInt>,
}

impl Functional {
    fn eval(&self, x: &Chain) -> BigInt {
        x.terms()
            .map(|(n, c)| c * self.values.get(n).cloned().unwrap_or_else(BigInt::zero))
            .sum()
    }
}

/// Candidate functionals on the degree-(p−1) basis: constants and the
/// first/last entry of tuple names, with both signs. These cover the
/// normalized-chain complexes of simplicial complexes (constants in even
/// degrees, first-entry in odd degrees) together with all their duals.
fn functional_candidates(k: &Adc, p: usize) -> Vec<Functional> {
    let names = k.basis(p - 1);
    let build = |f: &dyn Fn(&Name) -> BigInt| Functional {
        values: names.iter().map(|n| (n.clone(), f(n))).collect(),
    };
    let first = |n: &Name| match n {
        Name::Simplex(t) => BigInt::from(t[0]),
        Name::Token(_) => BigInt::zero(),
    };
    let last = |n: &Name| match n {
        Name::Simplex(t) => BigInt::from(*t.last().unwrap()),
        Name::Token(_) => BigInt::zero(),
    };
    vec![
        build(&|_| BigInt::from(1)),
        build(&|n| first(n)),
        build(&|n| last(n)),
        build(&|_| BigInt::from(-1)),
        build(&|n| -first(n)),
        build(&|n| -last(n)),
    ]
}

/// Searches for a functional certifying finiteness of `d x = r` solution
/// sets in degree `p ≥ 1`: ⟨μ, d b⟩ ≥ 1 for every degree-p basis element.
pub(crate) fn positive_functional(k: &Adc, p: usize) -> Option<Functional> {
    let one = BigInt::from(1);
    functional_candidates(k, p)
        .into_iter()
        .find(|f| k.basis(p).iter().all(|b| f.eval(&k.diff_of(p, b)) >= one))
}

struct BoundaryCtx<'a> {
    vars: &'a [(Name, Chain)],
    weights: Vec<BigInt>,
    functional: Option<Functional>,
    suffix: Vec<BTreeSet<Name>>,
    cap: BigInt,
    solutions: Vec<Vec<BigInt>>,
    beyond_cap: bool,
}

impl BoundaryCtx<'_> {
    fn record(&mut self, coeffs: &[BigInt]) {
        if coeffs.iter().any(|c| *c > self.cap) {
            self.beyond_cap = true;
        } else {
            self.solutions.push(coeffs.to_vec());
        }
    }

    fn dfs(&mut self, idx: usize, residual: &Chain, coeffs: &mut Vec<BigInt>) {
        for (name, _) in residual.terms() {
            if !self.suffix[idx].contains(name) {
                return;
            }
        }
        if idx == self.vars.len() {
            if residual.is_zero() {
                self.record(coeffs);
            }
            return;
        }
        let mut bound = self.cap.clone();
        if let Some(f) = &self.functional {
            let budget = f.eval(residual);
            if budget.is_negative() {
                return;
            }
            if budget.is_zero() {
                // Every remaining coefficient is forced to zero.
                if residual.is_zero() {
                    let base = coeffs.len();
                    coeffs.resize(self.vars.len(), BigInt::zero());
                    self.record(coeffs);
                    coeffs.truncate(base);
                }
                return;
            }
            bound = &budget / &self.weights[idx];
            // Once one beyond-cap solution is known there is no reason to
            // walk further beyond-cap branches.
            if self.beyond_cap && bound > self.cap {
                bound = self.cap.clone();
            }
        }
        // Larger values first, so earlier basis elements lead the output.
        let db = self.vars[idx].1.clone();
        let mut value = bound.clone();
        let mut rest = residual.sub(&db.scaled(&bound)).unwrap();
        loop {
            coeffs.push(value.clone());
            self.dfs(idx + 1, &rest, coeffs);
            coeffs.pop();
            if value.is_zero() {
                return;
            }
            value -= 1;
            rest = rest.add(&db).unwrap();
        }
    }
}

/// Enumerates nonnegative degree-`p` chains `x` with `d x = target`,
/// `p ≥ 1`.
pub(crate) fn solve_boundary(k: &Adc, p: usize, target: &Chain, cap: &BigInt) -> Solutions {
    assert!(p >= 1);
    assert_eq!(target.degree(), p - 1);
    let vars: Vec<(Name, Chain)> =
        k.basis(p).iter().map(|n| (n.clone(), k.diff_of(p, n))).collect();
    if vars.is_empty() {
        let chains = if target.is_zero() { vec![Chain::zero(p)] } else { Vec::new() };
        return Solutions { chains, beyond_cap: false, exact: true };
    }
    let functional = positive_functional(k, p);
    let exact = functional.is_some();
    let weights = match &functional {
        Some(f) => vars.iter().map(|(_, db)| f.eval(db)).collect(),
        None => Vec::new(),
    };
    let mut suffix: Vec<BTreeSet<Name>> = vec![BTreeSet::new(); vars.len() + 1];
    for i in (0..vars.len()).rev() {
        suffix[i] = suffix[i + 1].clone();
        suffix[i].extend(vars[i].1.support().cloned());
    }
    let mut ctx = BoundaryCtx {
        vars: &vars,
        weights,
        functional,
        suffix,
        cap: cap.clone(),
        solutions: Vec::new(),
        beyond_cap: !exact,
    };
    ctx.dfs(0, target, &mut Vec::new());
    let chains = ctx
        .solutions
        .iter()
        .map(|coeffs| {
            Chain::from_terms(p, vars.iter().map(|(n, _)| n.clone()).zip(coeffs.iter().cloned()))
        })
        .collect();
    Solutions { chains, beyond_cap: ctx.beyond_cap, exact }
}

/// Enumerates nonnegative degree-0 chains `x` with `ε x = target`.
pub(crate) fn solve_aug(k: &Adc, target: &BigInt, cap: &BigInt) -> Solutions {
    let vars: Vec<(Name, BigInt)> =
        k.basis(0).iter().map(|n| (n.clone(), k.aug_of(n))).collect();
    if vars.is_empty() {
        let chains = if target.is_zero() { vec![Chain::zero(0)] } else { Vec::new() };
        return Solutions { chains, beyond_cap: false, exact: true };
    }
    // Scalar functionals: c·ε(v) ≥ 1 for every vertex v.
    let one = BigInt::from(1);
    let scale = [BigInt::from(1), BigInt::from(-1)]
        .into_iter()
        .find(|c| vars.iter().all(|(_, e)| c * e >= one));
    let exact = scale.is_some();
    let mut solutions: Vec<Vec<BigInt>> = Vec::new();
    let mut beyond_cap = !exact;

    fn dfs(
        vars: &[(Name, BigInt)],
        idx: usize,
        residual: &BigInt,
        scale: &Option<BigInt>,
        cap: &BigInt,
        coeffs: &mut Vec<BigInt>,
        solutions: &mut Vec<Vec<BigInt>>,
        beyond_cap: &mut bool,
    ) {
        if idx == vars.len() {
            if residual.is_zero() {
                if coeffs.iter().any(|c| c > cap) {
                    *beyond_cap = true;
                } else {
                    solutions.push(coeffs.clone());
                }
            }
            return;
        }
        let mut bound = cap.clone();
        if let Some(c) = scale {
            let budget = c * residual;
            if budget.is_negative() {
                return;
            }
            let weight = c * &vars[idx].1;
            bound = &budget / &weight;
            if *beyond_cap && bound > *cap {
                bound = cap.clone();
            }
        }
        // Larger values first, so earlier basis elements lead the output.
        let mut value = bound.clone();
        let mut rest = residual - &bound * &vars[idx].1;
        loop {
            coeffs.push(value.clone());
            dfs(vars, idx + 1, &rest, scale, cap, coeffs, solutions, beyond_cap);
            coeffs.pop();
            if value.is_zero() {
                return;
            }
            value -= 1;
            rest += &vars[idx].1;
        }
    }

    dfs(&vars, 0, target, &scale, cap, &mut Vec::new(), &mut solutions, &mut beyond_cap);
    let chains = solutions
        .iter()
        .map(|coeffs| {
            Chain::from_terms(0, vars.iter().map(|(n, _)| n.clone()).zip(coeffs.iter().cloned()))
        })
        .collect();
    Solutions { chains, beyond_cap, exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard_simplex_adc;

    fn nm(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn functionals_exist_for_simplex_chains_and_duals() {
        let k = standard_simplex_adc(3);
        for p in 1..=3 {
            assert!(positive_functional(&k, p).is_some(), "degree {p}");
            assert!(positive_functional(&k.op_dual(), p).is_some(), "dual degree {p}");
        }
    }

    #[test]
    fn unique_filler_of_triangle_boundary() {
        let k = standard_simplex_adc(2);
        let target = Chain::from_terms(
            1,
            [(nm("(1,2)"), 1), (nm("(0,2)"), -1), (nm("(0,1)"), 1)],
        );
        let sol = solve_boundary(&k, 2, &target, &BigInt::from(5));
        assert!(sol.exact);
        assert!(!sol.beyond_cap);
        assert_eq!(sol.chains, vec![Chain::generator(2, nm("(0,1,2)"))]);
    }

    #[test]
    fn zero_boundary_has_only_zero_solution() {
        let k = standard_simplex_adc(2);
        let sol = solve_boundary(&k, 1, &Chain::zero(0), &BigInt::from(4));
        assert!(sol.exact && !sol.beyond_cap);
        assert_eq!(sol.chains, vec![Chain::zero(1)]);
    }

    #[test]
    fn edge_paths_between_vertices() {
        // d x = (2) - (0) in the triangle: the direct edge and the two-step
        // path.
        let k = standard_simplex_adc(2);
        let target = Chain::from_terms(0, [(nm("(2)"), 1), (nm("(0)"), -1)]);
        let sol = solve_boundary(&k, 1, &target, &BigInt::from(4));
        assert!(sol.exact && !sol.beyond_cap);
        assert_eq!(
            sol.chains,
            vec![
                Chain::from_terms(1, [(nm("(0,1)"), 1), (nm("(1,2)"), 1)]),
                Chain::generator(1, nm("(0,2)")),
            ],
        );
    }

    #[test]
    fn augmentation_one_picks_single_vertices() {
        let k = standard_simplex_adc(2);
        let sol = solve_aug(&k, &BigInt::from(1), &BigInt::from(7));
        assert!(sol.exact && !sol.beyond_cap);
        assert_eq!(
            sol.chains,
            vec![
                Chain::generator(0, nm("(0)")),
                Chain::generator(0, nm("(1)")),
                Chain::generator(0, nm("(2)")),
            ],
        );
    }

    #[test]
    fn beyond_cap_is_reported_exactly() {
        let k = standard_simplex_adc(2);
        // ε x = 3 has solutions such as 3·(0); with cap 2 they are cut.
        let sol = solve_aug(&k, &BigInt::from(3), &BigInt::from(2));
        assert!(sol.exact);
        assert!(sol.beyond_cap);
        // All multisets of size 3 over 3 vertices with coefficients ≤ 2.
        assert_eq!(sol.chains.len(), 7);
    }

    #[test]
    fn empty_degree_is_exact() {
        let k = standard_simplex_adc(1);
        let sol = solve_boundary(&k, 2, &Chain::zero(1), &BigInt::from(3));
        assert!(sol.exact && !sol.beyond_cap);
        assert_eq!(sol.chains, vec![Chain::zero(2)]);
    }
}
