use crate::presentation::Letter;
use crate::wordgraph::{Edge, WordGraph, UNDEF};

/// The mutable deterministic word graph manipulated by the search.
///
/// Besides the edge list (whose order the backtracking relies on) it keeps
/// a dense target table and, per `(node, letter)`, a linked list of the
/// sources of edges into that node with that label. Edges are only ever
/// removed from the end of the list, so every preimage list is a stack.
#[derive(Debug, Clone)]
pub struct SearchGraph {
    m: usize,
    capacity: usize,
    nodes: usize,
    targets: Vec<u32>,
    edges: Vec<Edge>,
    head_preim: Vec<u32>,
    next_preim: Vec<u32>,
}

impl SearchGraph {
    pub fn new(alphabet: usize, capacity: usize) -> Self {
        SearchGraph {
            m: alphabet,
            capacity,
            nodes: 0,
            targets: vec![UNDEF; alphabet * capacity],
            edges: Vec::with_capacity(alphabet * capacity),
            head_preim: vec![UNDEF; alphabet * capacity],
            next_preim: vec![UNDEF; alphabet * capacity],
        }
    }

    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    /// Maximum number of nodes.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.nodes * self.m
    }

    #[inline]
    pub fn target(&self, node: u32, a: Letter) -> u32 {
        self.targets[node as usize * self.m + a as usize]
    }

    #[inline]
    pub(crate) fn set_node_count(&mut self, nodes: usize) {
        debug_assert!(nodes <= self.capacity);
        self.nodes = nodes;
    }

    /// Adds an edge into an undefined slot.
    #[inline]
    pub fn define(&mut self, s: u32, a: Letter, t: u32) {
        let slot = s as usize * self.m + a as usize;
        debug_assert_eq!(self.targets[slot], UNDEF);
        self.targets[slot] = t;
        let head = t as usize * self.m + a as usize;
        self.next_preim[slot] = self.head_preim[head];
        self.head_preim[head] = s;
        self.edges.push((s, a, t));
    }

    /// Keeps the first `edges` edges and `nodes` nodes.
    pub fn truncate(&mut self, edges: usize, nodes: usize) {
        while self.edges.len() > edges {
            let (s, a, t) = self.edges.pop().expect("non-empty");
            let slot = s as usize * self.m + a as usize;
            let head = t as usize * self.m + a as usize;
            debug_assert_eq!(self.head_preim[head], s);
            self.head_preim[head] = self.next_preim[slot];
            self.targets[slot] = UNDEF;
        }
        self.nodes = nodes;
    }

    /// First source in the preimage list of `(t, a)`.
    #[inline]
    pub(crate) fn first_preimage(&self, t: u32, a: Letter) -> u32 {
        self.head_preim[t as usize * self.m + a as usize]
    }

    /// Source after `s` in the preimage list its edge labelled `a` is on.
    #[inline]
    pub(crate) fn next_preimage(&self, s: u32, a: Letter) -> u32 {
        self.next_preim[s as usize * self.m + a as usize]
    }

    /// Follows `w` from `start` as far as edges are defined; returns the
    /// number of letters consumed and the node reached.
    #[inline]
    pub fn trace(&self, start: u32, w: &[Letter]) -> (usize, u32) {
        let mut cur = start;
        for (i, &a) in w.iter().enumerate() {
            let t = self.targets[cur as usize * self.m + a as usize];
            if t == UNDEF {
                return (i, cur);
            }
            cur = t;
        }
        (w.len(), cur)
    }

    /// First undefined slot at or after `from`, as `(node, letter)`.
    pub fn first_undefined(&self, from: usize) -> Option<(u32, Letter)> {
        let end = self.nodes * self.m;
        (from..end)
            .find(|&i| self.targets[i] == UNDEF)
            .map(|i| ((i / self.m) as u32, (i % self.m) as u32))
    }

    /// The current graph with edges listed node-major.
    pub fn to_word_graph(&self) -> WordGraph {
        WordGraph::from_table(self.m, self.nodes, &self.targets[..self.nodes * self.m]).expect("valid search graph")
    }
}
