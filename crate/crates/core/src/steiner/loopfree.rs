//! Loop-freeness criteria on a base.
//!
//! Both criteria ask that a digraph on basis elements has no cycle through
//! two or more distinct elements (self-edges are harmless). Loop-freeness
//! builds one digraph per level i, joining a to b when atom entries
//! ⟨a⟩¹_i and ⟨b⟩⁰_i share support. Strong loop-freeness builds a single
//! digraph from boundary supports: m → x when m appears negatively in dx,
//! and x → m when m appears positively.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::adc::{Adc, Report};
use crate::chains::Name;

use super::atom::atom;

/// Shortest witness cycles, one per strongly connected component with at
/// least two nodes. Each cycle lists the node ids in order, starting from
/// the smallest id in its component; self-edges are ignored.
fn witness_cycles(count: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut graph = DiGraph::<usize, ()>::new();
    let nodes: Vec<NodeIndex> = (0..count).map(|i| graph.add_node(i)).collect();
    for &(a, b) in edges {
        if a != b {
            graph.add_edge(nodes[a], nodes[b], ());
        }
    }
    let mut cycles = Vec::new();
    for component in tarjan_scc(&graph) {
        if component.len() < 2 {
            continue;
        }
        let members: BTreeSet<usize> = component.iter().map(|n| graph[*n]).collect();
        let start = *members.iter().next().unwrap();
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        let mut last = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &(a, b) in edges.range((u, 0)..=(u, usize::MAX)) {
                debug_assert_eq!(a, u);
                if !members.contains(&b) || b == u {
                    continue;
                }
                if b == start {
                    last = Some(u);
                    break 'bfs;
                }
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(b) {
                    e.insert(u);
                    queue.push_back(b);
                }
            }
        }
        let mut path = Vec::new();
        let mut node = last.expect("strongly connected components contain cycles");
        while node != start {
            path.push(node);
            node = prev[&node];
        }
        path.push(start);
        path.reverse();
        cycles.push(path);
    }
    cycles.sort();
    cycles
}

fn cycle_message(prefix: &str, cycle: &[usize], names: &[&Name]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|&i| names[i].to_string()).collect();
    parts.push(names[cycle[0]].to_string());
    format!("{prefix}cycle {}", parts.join(" -> "))
}

/// A base is loop-free when, for every level i, the relation joining a to b
/// whenever ⟨a⟩¹_i and ⟨b⟩⁰_i share a basis element admits no cycle through
/// distinct elements of degree above i.
pub fn check_loop_free(k: &Arc<Adc>) -> Report {
    let mut report = Report::default();
    let atoms: Vec<_> = k
        .basis_elements()
        .map(|b| {
            let (cell, _) = atom(k, &b);
            (b, cell)
        })
        .collect();
    for level in 0..k.max_degree() {
        let nodes: Vec<usize> = (0..atoms.len())
            .filter(|&i| atoms[i].0.degree > level)
            .collect();
        let names: Vec<&Name> = nodes.iter().map(|&i| &atoms[i].0.name).collect();
        let mut edges = BTreeSet::new();
        for (a, &ai) in nodes.iter().enumerate() {
            let upper = &atoms[ai].1.row1()[level];
            for (b, &bi) in nodes.iter().enumerate() {
                if a == b {
                    continue;
                }
                let lower = &atoms[bi].1.row0()[level];
                let meet = upper.meet(lower).expect("atom entries are nonnegative");
                if !meet.is_zero() {
                    edges.insert((a, b));
                }
            }
        }
        for cycle in witness_cycles(nodes.len(), &edges) {
            report.push(
                level,
                None,
                cycle_message(&format!("level {level}: "), &cycle, &names),
            );
        }
    }
    report
}

/// A base is strongly loop-free when the relation generated by boundary
/// supports (m → x when m appears negatively in dx, x → m when positively)
/// admits no cycle. Strong loop-freeness implies loop-freeness.
pub fn check_strongly_loop_free(k: &Arc<Adc>) -> Report {
    let mut report = Report::default();
    let elements: Vec<_> = k.basis_elements().collect();
    let names: Vec<&Name> = elements.iter().map(|b| &b.name).collect();
    let index: BTreeMap<&Name, usize> = names.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, b) in elements.iter().enumerate() {
        if b.degree == 0 {
            continue;
        }
        let (pos, neg) = k.diff_of(b.degree, &b.name).pos_neg_parts();
        for m in neg.support() {
            edges.insert((index[m], i));
        }
        for m in pos.support() {
            edges.insert((i, index[m]));
        }
    }
    for cycle in witness_cycles(elements.len(), &edges) {
        let degree = cycle
            .iter()
            .map(|&i| elements[i].degree)
            .min()
            .unwrap_or(0);
        report.push(degree, None, cycle_message("", &cycle, &names));
    }
    report
}
