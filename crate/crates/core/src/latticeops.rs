//! Joins, meets and containment of congruences, and assembly of the lattice
//! generated by a set of congruences under joins.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::json;

use crate::dsu::NodePartition;
use crate::error::{Error, Result};
use crate::wordgraph::WordGraph;

fn check_inputs(g0: &WordGraph, g1: &WordGraph) -> Result<()> {
    if g0.alphabet_size() != g1.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: g0.alphabet_size(),
            right: g1.alphabet_size(),
        });
    }
    for g in [g0, g1] {
        if g.is_empty() || !g.is_complete() || !g.is_deterministic() {
            return Err(Error::input("expected a non-empty complete deterministic word graph"));
        }
    }
    Ok(())
}

/// The word graph of the join of the right congruences represented by
/// `g0` and `g1`: the least right-invariant partition of the disjoint union
/// identifying the two copies of node 0, found with a union-find and a
/// stack of pairs still to be propagated.
pub fn join_word_graphs(g0: &WordGraph, g1: &WordGraph) -> Result<WordGraph> {
    check_inputs(g0, g1)?;
    let (u, offset) = g0.disjoint_union(g1)?;
    let mut kappa = NodePartition::new(u.node_count());
    let mut stack = vec![(0u32, offset)];
    kappa.union(0, offset);
    while let Some((x, y)) = stack.pop() {
        for a in 0..u.alphabet_size() as u32 {
            let tx = u.target(x, a).expect("complete");
            let ty = u.target(y, a).expect("complete");
            if kappa.union(tx, ty) {
                stack.push((tx, ty));
            }
        }
    }
    let q = u.quotient(&mut kappa)?;
    debug_assert!(q.is_deterministic());
    q.standardize()
}

/// The word graph of the meet: the part of the product graph reachable
/// from `(0, 0)`, numbered in breadth-first order, which is already
/// standard.
pub fn meet_word_graphs(g0: &WordGraph, g1: &WordGraph) -> Result<WordGraph> {
    check_inputs(g0, g1)?;
    let m = g0.alphabet_size();
    let mut index: HashMap<(u32, u32), u32> = HashMap::from([((0, 0), 0)]);
    let mut order = VecDeque::from([(0u32, 0u32)]);
    let mut table = Vec::new();
    while let Some((x, y)) = order.pop_front() {
        for a in 0..m as u32 {
            let t = (g0.target(x, a).expect("complete"), g1.target(y, a).expect("complete"));
            let next = index.len() as u32;
            let id = *index.entry(t).or_insert_with(|| {
                order.push_back(t);
                next
            });
            table.push(id);
        }
    }
    WordGraph::from_table(m, index.len(), &table)
}

/// True iff the congruence of `g0` is contained in that of `g1`.
pub fn contains_congruence(g0: &WordGraph, g1: &WordGraph) -> bool {
    g0.homomorphism_fixing_zero(g1).is_some()
}

/// Operations a congruence representation needs for lattice assembly.
/// `Ord` must be a total order on canonical forms.
pub trait CongruenceOps: Clone + Ord + Send + Sync {
    fn join(&self, other: &Self) -> Result<Self>;
    /// True iff `self` is contained in `other`.
    fn is_contained_in(&self, other: &Self) -> bool;
    fn class_count(&self) -> usize;
    fn to_json_value(&self) -> serde_json::Value;
}

impl CongruenceOps for WordGraph {
    fn join(&self, other: &Self) -> Result<Self> {
        join_word_graphs(self, other)
    }

    fn is_contained_in(&self, other: &Self) -> bool {
        contains_congruence(self, other)
    }

    fn class_count(&self) -> usize {
        self.node_count()
    }

    fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("valid json")
    }
}

/// A finite lattice of congruences: elements in increasing canonical order
/// and the covering pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice<T> {
    pub elements: Vec<T>,
    pub covers: Vec<(usize, usize)>,
}

impl<T: CongruenceOps> CongruenceLattice<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_json(&self) -> String {
        json!({
            "elements": self.elements.iter().map(|e| e.to_json_value()).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        })
        .to_string()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{i}: {} classes\"];", e.class_count());
        }
        for &(i, j) in &self.covers {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Closes `generators` under joins (each new element is joined with every
/// generator), adds `bottom` and `top` if given, and computes the covers.
pub fn lattice_from_generators<T: CongruenceOps>(
    generators: Vec<T>,
    bottom: Option<T>,
    top: Option<T>,
) -> Result<CongruenceLattice<T>> {
    let gens: Vec<T> = generators.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut all: BTreeSet<T> = gens.iter().cloned().collect();
    let mut frontier = gens.clone();
    while !frontier.is_empty() {
        let joins: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| x.join(g)))
            .collect::<Result<_>>()?;
        frontier = joins.into_iter().filter(|j| all.insert(j.clone())).collect();
    }
    all.extend(bottom);
    all.extend(top);
    let elements: Vec<T> = all.into_iter().collect();
    let covers = cover_relation(&elements);
    Ok(CongruenceLattice { elements, covers })
}

/// Transitive reduction of strict containment.
fn cover_relation<T: CongruenceOps>(elements: &[T]) -> Vec<(usize, usize)> {
    let k = elements.len();
    let words = k.div_ceil(64);
    let above: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..k {
                if i != j && elements[i].is_contained_in(&elements[j]) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut covers = Vec::new();
    for i in 0..k {
        let mut indirect = vec![0u64; words];
        for j in 0..k {
            if above[i][j / 64] >> (j % 64) & 1 == 1 {
                for (w, x) in indirect.iter_mut().zip(&above[j]) {
                    *w |= x;
                }
            }
        }
        for j in 0..k {
            let bit = |row: &Vec<u64>| row[j / 64] >> (j % 64) & 1 == 1;
            if bit(&above[i]) && !bit(&indirect) {
                covers.push((i, j));
            }
        }
    }
    covers
}
