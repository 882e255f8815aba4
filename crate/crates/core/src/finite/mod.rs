//! Finite monoids enumerated from generators, their principal congruences,
//! and congruence lattices built as joins of principal congruences.

mod element;
pub mod families;
pub mod fixtures;

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsu::NodePartition;
use crate::error::{Error, Result};
use crate::latticeops::{lattice_from_generators, CongruenceLattice, CongruenceOps};
use crate::presentation::{default_letters, Kind, Letter, Presentation, Word};

pub use element::{Element, Matrix, MultiplicationTable, TableElement, Transformation};

/// Which multiplications a congruence must be stable under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceKind {
    Right,
    Left,
    #[serde(rename = "twosided")]
    TwoSided,
}

impl std::str::FromStr for CongruenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(CongruenceKind::Right),
            "left" => Ok(CongruenceKind::Left),
            "twosided" | "two-sided" => Ok(CongruenceKind::TwoSided),
            _ => Err(Error::input(format!("unknown congruence kind '{s}'"))),
        }
    }
}

/// A finite monoid with its elements numbered in short-lex order of their
/// least representative words (so 0 is the identity), both Cayley graphs,
/// and the defining relations found during enumeration.
#[derive(Debug)]
pub struct FiniteMonoid {
    m: usize,
    right: Vec<u32>,
    left: Vec<u32>,
    words: Vec<Word>,
    presentation: Presentation,
    repr: Option<(usize, Vec<Vec<u32>>)>,
    identity_adjoined: bool,
    table: OnceLock<Vec<u32>>,
}

/// Enumerates the monoid generated by `generators`. The identity is always
/// element 0; if it is not a product of generators it has been adjoined
/// (see [`FiniteMonoid::identity_adjoined`]).
pub fn froidure_pin<E: Element>(generators: &[E], max_size: Option<usize>) -> Result<FiniteMonoid> {
    let Some(first) = generators.first() else {
        return Err(Error::input("at least one generator is required"));
    };
    let m = generators.len();
    let mut elements = vec![first.one()];
    let mut index: HashMap<E, u32> = HashMap::from([(first.one(), 0)]);
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut parent = vec![u32::MAX];
    let mut last = vec![u32::MAX];
    let mut suffix = vec![u32::MAX];
    let mut right: Vec<u32> = Vec::new();
    let mut rules = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (a, g) in generators.iter().enumerate() {
            let y = elements[i].product(g);
            let next = elements.len() as u32;
            let j = *index.entry(y.clone()).or_insert(next);
            // suffix of words[i] followed by a, as an element; for the
            // identity the suffix of the single letter a is the identity
            let (s, suffix_reduced) = if i == 0 {
                (0, true)
            } else {
                let s = right[suffix[i] as usize * m + a];
                (s, parent[s as usize] == suffix[i] && last[s as usize] == a as u32)
            };
            if j == next {
                if let Some(limit) = max_size {
                    if elements.len() >= limit {
                        return Err(Error::Budget(format!("monoid has more than {limit} elements")));
                    }
                }
                elements.push(y);
                let mut w = words[i].clone();
                w.push(a as u32);
                words.push(w);
                parent.push(i as u32);
                last.push(a as u32);
                suffix.push(s);
            } else if suffix_reduced {
                let mut w = words[i].clone();
                w.push(a as u32);
                rules.push((w, words[j as usize].clone()));
            }
            right.push(j);
        }
        i += 1;
    }
    let n = elements.len();
    let mut left = vec![0u32; n * m];
    for a in 0..m {
        left[a] = right[a];
    }
    for x in 1..n {
        let (p, b) = (parent[x] as usize, last[x] as usize);
        for a in 0..m {
            left[x * m + a] = right[left[p * m + a] as usize * m + b];
        }
    }
    let repr = elements
        .iter()
        .map(|e| e.transformation())
        .collect::<Option<Vec<_>>>()
        .map(|ts| (ts.first().map_or(0, |t| t.len()), ts));
    let presentation = Presentation::with_letters(default_letters(m), rules, Kind::Monoid)?;
    let identity_adjoined = !right.contains(&0);
    Ok(FiniteMonoid {
        m,
        right,
        left,
        words,
        presentation,
        repr,
        identity_adjoined,
        table: OnceLock::new(),
    })
}

/// The monoid consisting of exactly `elements` (which must include the
/// identity and be closed under products), enumerated from a generating
/// set chosen greedily with larger [`Element::rank`] first.
pub fn monoid_from_elements<E: Element>(elements: &[E]) -> Result<FiniteMonoid> {
    let distinct: Vec<E> = {
        let mut seen = std::collections::HashSet::new();
        elements.iter().filter(|e| seen.insert((*e).clone())).cloned().collect()
    };
    let Some(first) = distinct.first() else {
        return Err(Error::input("empty element list"));
    };
    let one = first.one();
    let mut order: Vec<usize> = (0..distinct.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(distinct[i].rank()));
    let mut gens: Vec<E> = Vec::new();
    let mut closure: std::collections::HashSet<E> = std::collections::HashSet::from([one.clone()]);
    for i in order {
        let e = &distinct[i];
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // extend the closure by right multiplication with all generators
        let mut queue: Vec<E> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop() {
            for g in &gens {
                let y = x.product(g);
                if closure.len() > distinct.len() {
                    return Err(Error::input("element list is not closed under multiplication"));
                }
                if closure.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    if gens.is_empty() {
        gens.push(one);
    }
    let monoid = froidure_pin(&gens, Some(distinct.len() + 1))?;
    if monoid.size() != distinct.len() {
        return Err(Error::input(
            "element list is not a monoid: missing identity or not closed",
        ));
    }
    Ok(monoid)
}

/// The monoid of a multiplication table, from a greedily chosen generating
/// set; element indices are renumbered.
pub fn monoid_from_table(table: MultiplicationTable) -> Result<FiniteMonoid> {
    let table = std::sync::Arc::new(table);
    monoid_from_elements(&table.elements())
}

impl FiniteMonoid {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn generator_count(&self) -> usize {
        self.m
    }

    /// `x * a` for the generator with letter `a`.
    #[inline]
    pub fn right_mul(&self, x: u32, a: Letter) -> u32 {
        self.right[x as usize * self.m + a as usize]
    }

    /// `a * x`.
    #[inline]
    pub fn left_mul(&self, x: u32, a: Letter) -> u32 {
        self.left[x as usize * self.m + a as usize]
    }

    pub fn right_cayley(&self) -> &[u32] {
        &self.right
    }

    pub fn left_cayley(&self) -> &[u32] {
        &self.left
    }

    /// The short-lex least word representing `x`.
    pub fn word(&self, x: u32) -> &[Letter] {
        &self.words[x as usize]
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn identity_adjoined(&self) -> bool {
        self.identity_adjoined
    }

    /// The element represented by `w`.
    pub fn evaluate(&self, w: &[Letter]) -> u32 {
        self.evaluate_from(0, w)
    }

    pub fn evaluate_from(&self, x: u32, w: &[Letter]) -> u32 {
        w.iter().fold(x, |y, &a| self.right_mul(y, a))
    }

    pub fn product(&self, x: u32, y: u32) -> u32 {
        match self.table.get() {
            Some(t) => t[x as usize * self.size() + y as usize],
            None => self.evaluate_from(x, self.word(y)),
        }
    }

    /// The full multiplication table, computed on first use.
    pub fn multiplication_table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.size();
            let mut t = vec![0u32; n * n];
            t.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
                for (y, cell) in row.iter_mut().enumerate() {
                    *cell = self.evaluate_from(x as u32, self.word(y as u32));
                }
            });
            t
        })
    }

    /// A faithful representation by transformations acting on the right:
    /// the elements' own one if they have it, else the right regular
    /// representation `y -> y x`.
    pub fn transformation_representation(&self) -> (usize, Vec<Vec<u32>>) {
        if let Some(r) = &self.repr {
            return r.clone();
        }
        let n = self.size();
        let t = self.multiplication_table();
        let reps = (0..n).map(|x| (0..n).map(|y| t[y * n + x]).collect()).collect();
        (n, reps)
    }

    /// The opposite monoid (product `x * y` read as `y x`) over the same
    /// generators. Its elements are renumbered; the returned vector maps
    /// each element of `self` to its index in the dual.
    pub fn dual(&self) -> (FiniteMonoid, Vec<u32>) {
        let n = self.size();
        let m = self.m;
        let mut new_of = vec![u32::MAX; n];
        let mut order = vec![0u32];
        new_of[0] = 0;
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            for a in 0..m as u32 {
                let y = self.left_mul(x, a);
                if new_of[y as usize] == u32::MAX {
                    new_of[y as usize] = order.len() as u32;
                    order.push(y);
                    let mut w = words[head].clone();
                    w.push(a);
                    words.push(w);
                }
            }
            head += 1;
        }
        let relabel = |cayley: &[u32]| -> Vec<u32> {
            let mut out = vec![0; n * m];
            for (new, &old) in order.iter().enumerate() {
                for a in 0..m {
                    out[new * m + a] = new_of[cayley[old as usize * m + a] as usize];
                }
            }
            out
        };
        let t = self.multiplication_table();
        // in the dual, y acts on the right of x as x * y = y x
        let reps = order
            .iter()
            .map(|&x| {
                order
                    .iter()
                    .map(|&y| new_of[t[x as usize * n + y as usize] as usize])
                    .collect()
            })
            .collect();
        let dual = FiniteMonoid {
            m,
            right: relabel(&self.left),
            left: relabel(&self.right),
            words,
            presentation: self.presentation.reverse(),
            repr: Some((n, reps)),
            identity_adjoined: self.identity_adjoined,
            table: OnceLock::new(),
        };
        (dual, new_of)
    }

    /// Word graph of the right regular action, which represents the trivial
    /// right congruence.
    pub fn right_cayley_word_graph(&self) -> crate::wordgraph::WordGraph {
        crate::wordgraph::WordGraph::from_table(self.m, self.size(), &self.right).expect("valid")
    }
}

/// A partition of the elements of a finite monoid, stored as the map from
/// each element to the least element of its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruencePartition {
    least: Vec<u32>,
}

impl CongruencePartition {
    /// Normalizes arbitrary class labels.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut first: HashMap<T, u32> = HashMap::new();
        let least = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(*l).or_insert(i as u32))
            .collect();
        CongruencePartition { least }
    }

    pub fn trivial(n: usize) -> Self {
        CongruencePartition {
            least: (0..n as u32).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        CongruencePartition { least: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.least.len()
    }

    pub fn is_empty(&self) -> bool {
        self.least.is_empty()
    }

    pub fn least(&self) -> &[u32] {
        &self.least
    }

    pub fn same_class(&self, x: u32, y: u32) -> bool {
        self.least[x as usize] == self.least[y as usize]
    }

    pub fn class_count(&self) -> usize {
        self.least.iter().enumerate().filter(|(i, &l)| *i as u32 == l).count()
    }

    pub fn classes(&self) -> Vec<Vec<u32>> {
        let mut by_least: Vec<Vec<u32>> = vec![Vec::new(); self.len()];
        for (x, &l) in self.least.iter().enumerate() {
            by_least[l as usize].push(x as u32);
        }
        by_least.into_iter().filter(|c| !c.is_empty()).collect()
    }

    /// The finest partition coarser than both.
    pub fn join(&self, other: &CongruencePartition) -> Result<CongruencePartition> {
        join_partitions(self, other)
    }

    pub fn is_refinement_of(&self, other: &CongruencePartition) -> bool {
        self.len() == other.len()
            && self
                .least
                .iter()
                .enumerate()
                .all(|(x, &l)| other.least[x] == other.least[l as usize])
    }
}

pub fn join_partitions(p: &CongruencePartition, q: &CongruencePartition) -> Result<CongruencePartition> {
    if p.len() != q.len() {
        return Err(Error::input("partitions of different sets"));
    }
    let mut kappa = NodePartition::new(p.len());
    for x in 0..p.len() {
        kappa.union(x as u32, p.least[x]);
        kappa.union(x as u32, q.least[x]);
    }
    Ok(CongruencePartition {
        least: kappa.canonical(),
    })
}

impl CongruenceOps for CongruencePartition {
    fn join(&self, other: &Self) -> Result<Self> {
        join_partitions(self, other)
    }

    fn is_contained_in(&self, other: &Self) -> bool {
        self.is_refinement_of(other)
    }

    fn class_count(&self) -> usize {
        CongruencePartition::class_count(self)
    }

    fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!(self.least)
    }
}

/// The least congruence of the given kind containing `(x, y)`: close a
/// worklist of pairs under multiplication by generators on the relevant
/// side(s), merging classes as pairs are found.
pub fn principal_congruence(monoid: &FiniteMonoid, pair: (u32, u32), kind: CongruenceKind) -> CongruencePartition {
    congruence_generated_by(monoid, &[pair], kind)
}

pub fn congruence_generated_by(
    monoid: &FiniteMonoid,
    pairs: &[(u32, u32)],
    kind: CongruenceKind,
) -> CongruencePartition {
    let mut kappa = NodePartition::new(monoid.size());
    let mut work: Vec<(u32, u32)> = pairs.to_vec();
    let right = kind != CongruenceKind::Left;
    let left = kind != CongruenceKind::Right;
    while let Some((x, y)) = work.pop() {
        if !kappa.union(x, y) {
            continue;
        }
        for a in 0..monoid.generator_count() as u32 {
            if right {
                work.push((monoid.right_mul(x, a), monoid.right_mul(y, a)));
            }
            if left {
                work.push((monoid.left_mul(x, a), monoid.left_mul(y, a)));
            }
        }
    }
    CongruencePartition {
        least: kappa.canonical(),
    }
}

/// All unordered pairs of distinct elements.
pub fn all_pairs(monoid: &FiniteMonoid) -> Vec<(u32, u32)> {
    let n = monoid.size() as u32;
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
}

/// The distinct congruences generated by the given pairs, in canonical
/// order.
pub fn distinct_principal_congruences(
    monoid: &FiniteMonoid,
    pairs: &[(u32, u32)],
    kind: CongruenceKind,
) -> Vec<CongruencePartition> {
    pairs
        .par_iter()
        .fold(BTreeSet::new, |mut set, &pair| {
            set.insert(principal_congruence(monoid, pair, kind));
            set
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect()
}

/// The generating pairs whose principal congruences are all the principal
/// congruences: every pair, or one pair per relative Green's class.
pub fn generating_pairs(monoid: &FiniteMonoid, kind: CongruenceKind, reduce_greens: bool) -> Result<Vec<(u32, u32)>> {
    if reduce_greens {
        crate::relgreens::reduced_generating_pairs(monoid, kind)
    } else {
        Ok(all_pairs(monoid))
    }
}

/// The lattice of all congruences of the given kind, as joins of the
/// principal congruences together with the trivial congruence.
pub fn congruence_lattice(
    monoid: &FiniteMonoid,
    kind: CongruenceKind,
    reduce_greens: bool,
) -> Result<CongruenceLattice<CongruencePartition>> {
    let pairs = generating_pairs(monoid, kind, reduce_greens)?;
    let principal = distinct_principal_congruences(monoid, &pairs, kind);
    let n = monoid.size();
    lattice_from_generators(
        principal,
        Some(CongruencePartition::trivial(n)),
        Some(CongruencePartition::universal(n)),
    )
}
