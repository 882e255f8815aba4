//! Word graphs: edge-labelled digraphs over an alphabet `{0, .., m - 1}`.
//!
//! A complete deterministic word graph whose nodes are all reachable from
//! node 0 and which is compatible with the relations of a presentation is
//! the same thing as a right congruence of the presented monoid; node 0 is
//! always the class of the identity.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::dsu::NodePartition;
use crate::error::{Error, Result};
use crate::finite::{CongruencePartition, FiniteMonoid};
use crate::presentation::{Letter, Presentation, Word};

pub(crate) const UNDEF: u32 = u32::MAX;

/// An edge `(source, label, target)`.
pub type Edge = (u32, Letter, u32);

/// A word graph with its edges kept in insertion order.
///
/// Derived equality compares the edge sequence, so it is order sensitive;
/// [`WordGraph::same_edges`] compares edge sets. Graphs produced by
/// [`WordGraph::standardize`] list their edges in node-major, label-minor
/// order, so for standard graphs the two notions agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordGraph {
    alphabet: usize,
    nodes: usize,
    edges: Vec<Edge>,
    // target of the first edge with a given (source, label), or UNDEF
    table: Vec<u32>,
    deterministic: bool,
}

#[derive(Serialize, Deserialize)]
struct WordGraphJson {
    alphabet: usize,
    nodes: usize,
    edges: Vec<[u32; 3]>,
}

impl WordGraph {
    pub fn new(alphabet: usize, nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::input("alphabet must be non-empty"));
        }
        let mut table = vec![UNDEF; alphabet * nodes];
        let mut deterministic = true;
        for &(s, a, t) in &edges {
            for x in [s, t] {
                if x as usize >= nodes {
                    return Err(Error::NodeOutOfRange { node: x, nodes });
                }
            }
            if a as usize >= alphabet {
                return Err(Error::LetterOutOfRange { letter: a, alphabet });
            }
            let slot = &mut table[s as usize * alphabet + a as usize];
            if *slot == UNDEF {
                *slot = t;
            } else {
                deterministic = false;
            }
        }
        Ok(WordGraph {
            alphabet,
            nodes,
            edges,
            table,
            deterministic,
        })
    }

    /// The graph with no nodes and no edges, used as the search-exhausted
    /// sentinel.
    pub fn empty(alphabet: usize) -> Self {
        WordGraph {
            alphabet,
            nodes: 0,
            edges: Vec::new(),
            table: Vec::new(),
            deterministic: true,
        }
    }

    /// Builds a deterministic graph from a dense `node * alphabet + letter`
    /// target table (`u32::MAX` marks a missing edge); edges are listed in
    /// node-major, label-minor order.
    pub fn from_table(alphabet: usize, nodes: usize, targets: &[u32]) -> Result<Self> {
        if targets.len() != alphabet * nodes {
            return Err(Error::input("target table has the wrong size"));
        }
        let edges = targets
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != UNDEF)
            .map(|(i, &t)| ((i / alphabet) as u32, (i % alphabet) as u32, t))
            .collect();
        WordGraph::new(alphabet, nodes, edges)
    }

    /// The one-node graph with a loop for every letter: the universal
    /// congruence.
    pub fn universal(alphabet: usize) -> Self {
        WordGraph::from_table(alphabet, 1, &vec![0; alphabet]).expect("valid")
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 0
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(|&t| t != UNDEF)
    }

    /// Target of the (first) edge with the given source and label.
    #[inline]
    pub fn target(&self, node: u32, letter: Letter) -> Option<u32> {
        let t = self.table[node as usize * self.alphabet + letter as usize];
        (t != UNDEF).then_some(t)
    }

    /// Target of the path from `start` labelled by `w`, if every edge on it
    /// is defined.
    pub fn follow_path(&self, start: u32, w: &[Letter]) -> Result<Option<u32>> {
        if start as usize >= self.nodes {
            return Err(Error::NodeOutOfRange {
                node: start,
                nodes: self.nodes,
            });
        }
        let mut cur = start;
        for &a in w {
            if a as usize >= self.alphabet {
                return Err(Error::LetterOutOfRange {
                    letter: a,
                    alphabet: self.alphabet,
                });
            }
            match self.target(cur, a) {
                Some(t) => cur = t,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    fn trace(&self, start: u32, w: &[Letter]) -> Option<u32> {
        let mut cur = start;
        for &a in w {
            cur = self.target(cur, a)?;
        }
        Some(cur)
    }

    pub fn reachable_from(&self, start: u32) -> Vec<bool> {
        let mut seen = vec![false; self.nodes];
        if self.nodes == 0 {
            return seen;
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.nodes];
        for &(s, _, t) in &self.edges {
            adj[s as usize].push(t);
        }
        let mut stack = vec![start];
        seen[start as usize] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn all_reachable_from_zero(&self) -> bool {
        self.nodes == 0 || self.reachable_from(0).iter().all(|&r| r)
    }

    /// True iff, from every node, both sides of every relation lead to the
    /// same node.
    pub fn is_compatible(&self, p: &Presentation) -> Result<bool> {
        self.check_alphabet(p.alphabet_size())?;
        if !self.deterministic || !self.is_complete() {
            return Err(Error::input("compatibility requires a complete deterministic graph"));
        }
        for alpha in 0..self.nodes as u32 {
            for (u, v) in p.relations() {
                if self.trace(alpha, u) != self.trace(alpha, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_alphabet(&self, other: usize) -> Result<()> {
        if self.alphabet != other {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other,
            });
        }
        Ok(())
    }

    /// Relabels the nodes so that they are ordered by the short-lex least
    /// words labelling paths from node 0. Edges of the result are listed in
    /// node-major, label-minor order.
    pub fn standardize(&self) -> Result<WordGraph> {
        if self.nodes == 0 {
            return Ok(self.clone());
        }
        if !self.deterministic {
            return Err(Error::input("cannot standardize a non-deterministic graph"));
        }
        // Breadth-first search with letters in increasing order discovers
        // nodes in short-lex order of their least access words.
        let mut new_of = vec![UNDEF; self.nodes];
        let mut order = Vec::with_capacity(self.nodes);
        new_of[0] = 0;
        order.push(0u32);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for a in 0..self.alphabet as u32 {
                if let Some(t) = self.target(x, a) {
                    if new_of[t as usize] == UNDEF {
                        new_of[t as usize] = order.len() as u32;
                        order.push(t);
                    }
                }
            }
        }
        if order.len() != self.nodes {
            return Err(Error::input("graph has nodes unreachable from 0; trim it first"));
        }
        let mut table = vec![UNDEF; self.nodes * self.alphabet];
        for (new, &old) in order.iter().enumerate() {
            for a in 0..self.alphabet {
                let t = self.table[old as usize * self.alphabet + a];
                if t != UNDEF {
                    table[new * self.alphabet + a] = new_of[t as usize];
                }
            }
        }
        WordGraph::from_table(self.alphabet, self.nodes, &table)
    }

    pub fn is_standard(&self) -> Result<bool> {
        Ok(self.standardize()?.same_edges(self))
    }

    /// Same alphabet, node count and edge set, ignoring edge order.
    pub fn same_edges(&self, other: &WordGraph) -> bool {
        if self.alphabet != other.alphabet || self.nodes != other.nodes || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// For standard complete deterministic graphs, equality of the
    /// represented congruences is equality of the graphs.
    pub fn equal_as_congruences(&self, other: &WordGraph) -> Result<bool> {
        for g in [self, other] {
            if !g.is_standard()? {
                return Err(Error::input("equal_as_congruences requires standard graphs"));
            }
        }
        Ok(self.same_edges(other))
    }

    /// The unique homomorphism `self -> other` mapping 0 to 0, if any.
    pub fn homomorphism_fixing_zero(&self, other: &WordGraph) -> Option<Vec<u32>> {
        if self.alphabet != other.alphabet {
            return None;
        }
        if self.nodes == 0 {
            return Some(Vec::new());
        }
        if other.nodes == 0 {
            return None;
        }
        let mut map = vec![UNDEF; self.nodes];
        map[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        let mut by_source: Vec<Vec<(Letter, u32)>> = vec![Vec::new(); self.nodes];
        for &(s, a, t) in &self.edges {
            by_source[s as usize].push((a, t));
        }
        while let Some(x) = queue.pop_front() {
            let image = map[x as usize];
            for &(a, t) in &by_source[x as usize] {
                let t_image = other.target(image, a)?;
                match map[t as usize] {
                    UNDEF => {
                        map[t as usize] = t_image;
                        queue.push_back(t);
                    }
                    m if m != t_image => return None,
                    _ => {}
                }
            }
        }
        if map.contains(&UNDEF) {
            return None;
        }
        Some(map)
    }

    /// Nodes of `self` first, then those of `other` shifted by the returned
    /// offset.
    pub fn disjoint_union(&self, other: &WordGraph) -> Result<(WordGraph, u32)> {
        self.check_alphabet(other.alphabet)?;
        let offset = self.nodes as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(s, a, t)| (s + offset, a, t + offset)));
        Ok((WordGraph::new(self.alphabet, self.nodes + other.nodes, edges)?, offset))
    }

    /// One node per part of `kappa`, numbered by first appearance in node
    /// order; images of the edges with repeats removed, in first-insertion
    /// order. The result need not be deterministic.
    pub fn quotient(&self, kappa: &mut NodePartition) -> Result<WordGraph> {
        if kappa.len() != self.nodes {
            return Err(Error::input("partition size does not match the node count"));
        }
        let mut class_of_root = vec![UNDEF; self.nodes];
        let mut label = vec![0u32; self.nodes];
        let mut count = 0u32;
        for x in 0..self.nodes as u32 {
            let r = kappa.find(x) as usize;
            if class_of_root[r] == UNDEF {
                class_of_root[r] = count;
                count += 1;
            }
            label[x as usize] = class_of_root[r];
        }
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::new();
        for &(s, a, t) in &self.edges {
            let e = (label[s as usize], a, label[t as usize]);
            if seen.insert(e) {
                edges.push(e);
            }
        }
        WordGraph::new(self.alphabet, count as usize, edges)
    }

    /// Renames node `x` to `perm[x]`, keeping edge order.
    pub fn relabel(&self, perm: &[u32]) -> Result<WordGraph> {
        if perm.len() != self.nodes {
            return Err(Error::input("relabelling has the wrong length"));
        }
        let edges = self
            .edges
            .iter()
            .map(|&(s, a, t)| (perm[s as usize], a, perm[t as usize]))
            .collect();
        WordGraph::new(self.alphabet, self.nodes, edges)
    }

    /// All pairs of words of length at most `max_len` that label paths from
    /// `basepoint` to a common node.
    pub fn path_relation_sample(&self, basepoint: u32, max_len: usize) -> PathRelationSample {
        let mut traced: Vec<(Word, u32)> = vec![(Vec::new(), basepoint)];
        let mut layer = traced.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, node) in &layer {
                for a in 0..self.alphabet as u32 {
                    if let Some(t) = self.target(*node, a) {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, t));
                    }
                }
            }
            traced.extend(next.iter().cloned());
            layer = next;
        }
        let mut pairs = Vec::new();
        for (u, x) in &traced {
            for (v, y) in &traced {
                if x == y {
                    pairs.push((u.clone(), v.clone()));
                }
            }
        }
        PathRelationSample { basepoint, pairs }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WordGraphJson {
            alphabet: self.alphabet,
            nodes: self.nodes,
            edges: self.edges.iter().map(|&(s, a, t)| [s, a, t]).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<WordGraph> {
        let j: WordGraphJson = serde_json::from_str(text).map_err(|e| Error::input(e.to_string()))?;
        WordGraph::new(
            j.alphabet,
            j.nodes,
            j.edges.into_iter().map(|[s, a, t]| (s, a, t)).collect(),
        )
    }
}

/// A finite sample of the path relation from one node.
#[derive(Debug, Clone)]
pub struct PathRelationSample {
    pub basepoint: u32,
    pub pairs: Vec<(Word, Word)>,
}

impl PathRelationSample {
    pub fn contains(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.pairs.iter().any(|(x, y)| x == u && y == v)
    }
}

/// Word graph of a right action given as a `node x letter -> node` table,
/// re-rooted at `basepoint` and standardized; `None` if some node is not
/// reachable from the basepoint (the action is then not the action on the
/// classes of a right congruence).
pub fn action_to_word_graph(action: &[Vec<u32>], basepoint: u32) -> Result<Option<WordGraph>> {
    let nodes = action.len();
    if nodes == 0 || basepoint as usize >= nodes {
        return Err(Error::input("basepoint outside the action"));
    }
    let m = action[0].len();
    if action.iter().any(|row| row.len() != m) {
        return Err(Error::input("ragged action table"));
    }
    let mut table = Vec::with_capacity(nodes * m);
    for row in action {
        for &t in row {
            if t as usize >= nodes {
                return Err(Error::NodeOutOfRange { node: t, nodes });
            }
            table.push(t);
        }
    }
    // swap the basepoint into position 0 before standardizing
    let mut perm: Vec<u32> = (0..nodes as u32).collect();
    perm.swap(0, basepoint as usize);
    let g = WordGraph::from_table(m, nodes, &table)?.relabel(&perm)?;
    if !g.all_reachable_from_zero() {
        return Ok(None);
    }
    Ok(Some(g.standardize()?))
}

/// The partition of the elements of `monoid` induced by a word graph: two
/// elements are related iff their normal forms lead from 0 to one node.
pub fn congruence_classes_of_word_graph(g: &WordGraph, monoid: &FiniteMonoid) -> Result<CongruencePartition> {
    if !g.is_compatible(monoid.presentation())? {
        return Err(Error::input(
            "word graph is not compatible with the monoid's defining relations",
        ));
    }
    let nodes: Vec<u32> = (0..monoid.size())
        .map(|x| {
            g.follow_path(0, monoid.word(x as u32))
                .map(|t| t.expect("complete graph"))
        })
        .collect::<Result<_>>()?;
    Ok(CongruencePartition::from_labels(&nodes))
}
