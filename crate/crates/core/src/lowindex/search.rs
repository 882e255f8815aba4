use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Kind, Letter, Presentation, Word};
use crate::wordgraph::{Edge, WordGraph};

use super::engine::{deduction_engines, DeductionEngine};
use super::graph::SearchGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Right,
    Left,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub side: Side,
    /// Enumerate right congruences of the semigroup presented rather than
    /// of the monoid; node 0 then stands for an adjoined identity and
    /// `max_classes` counts the remaining nodes.
    pub semigroup: bool,
    /// Only yield congruences containing every one of these pairs.
    pub containing: Vec<(Word, Word)>,
    pub max_classes: usize,
    /// Abort after this many stack entries have been processed.
    pub step_budget: Option<u64>,
    /// Name of the deduction engine, see [`deduction_engines`].
    pub engine: String,
}

impl SearchConfig {
    pub fn new(max_classes: usize) -> Self {
        SearchConfig {
            side: Side::Right,
            semigroup: false,
            containing: Vec::new(),
            max_classes,
            step_budget: None,
            engine: deduction_engines().default_name().to_string(),
        }
    }

    pub fn side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn semigroup(mut self, yes: bool) -> Self {
        self.semigroup = yes;
        self
    }

    pub fn containing(mut self, pairs: Vec<(Word, Word)>) -> Self {
        self.containing = pairs;
        self
    }

    pub fn step_budget(mut self, steps: Option<u64>) -> Self {
        self.step_budget = steps;
        self
    }

    pub fn engine(mut self, name: &str) -> Self {
        self.engine = name.to_string();
        self
    }
}

/// A deferred edge definition together with the graph size to restore
/// before making it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PendingDefinition {
    pub source: u32,
    pub letter: Letter,
    pub target: u32,
    /// Node count to restore; `target == nodes` creates a new node.
    pub nodes: u32,
    /// Edge count to restore.
    pub edges: u32,
}

impl PendingDefinition {
    pub fn new(edge: Edge, nodes: u32, edges: u32) -> Self {
        PendingDefinition {
            source: edge.0,
            letter: edge.1,
            target: edge.2,
            nodes,
            edges,
        }
    }
}

/// The presentation and containing pairs the search actually runs on:
/// left congruences are right congruences of the reversed presentation.
pub(crate) fn effective_input(p: &Presentation, cfg: &SearchConfig) -> Result<(Presentation, Vec<(Word, Word)>)> {
    if cfg.max_classes == 0 {
        return Err(Error::input("max_classes must be at least 1"));
    }
    let m = p.alphabet_size();
    for (u, v) in &cfg.containing {
        if let Some(&a) = u.iter().chain(v).find(|&&a| a as usize >= m) {
            return Err(Error::LetterOutOfRange { letter: a, alphabet: m });
        }
    }
    let semigroup = cfg.semigroup || p.kind() == Kind::Semigroup;
    if semigroup && p.has_empty_relation_word() {
        return Err(Error::input("semigroup search needs relations without the empty word"));
    }
    Ok(match cfg.side {
        Side::Right => (p.clone(), cfg.containing.clone()),
        Side::Left => (
            p.reverse(),
            cfg.containing
                .iter()
                .map(|(u, v)| (u.iter().rev().copied().collect(), v.iter().rev().copied().collect()))
                .collect(),
        ),
    })
}

/// One backtracking search: the graph under construction and the stack of
/// pending definitions.
#[derive(Clone)]
pub struct SearchState {
    pub(crate) graph: SearchGraph,
    pub(crate) stack: VecDeque<PendingDefinition>,
    engine: Box<dyn DeductionEngine>,
    containing: Vec<(Word, Word)>,
    semigroup: bool,
    processed_edges: usize,
    processed_nodes: usize,
    scan_from: usize,
    steps: u64,
    budget: Option<u64>,
    peak_depth: usize,
}

impl SearchState {
    /// A search positioned before the first congruence, with the initial
    /// stack in place.
    pub fn new(p: &Presentation, cfg: &SearchConfig) -> Result<Self> {
        let mut state = SearchState::without_stack(p, cfg)?;
        if state.semigroup {
            state.stack.push_back(PendingDefinition::new((0, 0, 1), 1, 0));
        } else {
            state.stack.push_back(PendingDefinition::new((0, 0, 0), 1, 0));
            if state.graph.capacity() > 1 {
                state.stack.push_back(PendingDefinition::new((0, 0, 1), 1, 0));
            }
        }
        state.peak_depth = state.stack.len();
        Ok(state)
    }

    pub(crate) fn without_stack(p: &Presentation, cfg: &SearchConfig) -> Result<Self> {
        let (q, containing) = effective_input(p, cfg)?;
        let engine = deduction_engines().get(&cfg.engine)?(&q);
        let semigroup = cfg.semigroup || p.kind() == Kind::Semigroup;
        let capacity = cfg.max_classes + usize::from(semigroup);
        Ok(SearchState {
            graph: SearchGraph::new(q.alphabet_size(), capacity),
            stack: VecDeque::new(),
            engine,
            containing,
            semigroup,
            processed_edges: 0,
            processed_nodes: 0,
            scan_from: 0,
            steps: 0,
            budget: cfg.step_budget,
            peak_depth: 0,
        })
    }

    /// A search whose graph is `g` (none of whose edges are assumed to be
    /// processed yet) and whose stack is empty.
    pub fn from_graph(p: &Presentation, cfg: &SearchConfig, g: &WordGraph) -> Result<Self> {
        let mut state = SearchState::without_stack(p, cfg)?;
        if g.alphabet_size() != state.graph.alphabet_size() {
            return Err(Error::AlphabetMismatch {
                left: g.alphabet_size(),
                right: state.graph.alphabet_size(),
            });
        }
        if g.node_count() > state.graph.capacity() || !g.is_deterministic() {
            return Err(Error::input("graph does not fit the search"));
        }
        state.graph.set_node_count(g.node_count());
        for &(s, a, t) in g.edges() {
            state.graph.define(s, a, t);
        }
        Ok(state)
    }

    pub fn graph(&self) -> WordGraph {
        self.graph.to_word_graph()
    }

    pub fn stack(&self) -> impl Iterator<Item = &PendingDefinition> {
        self.stack.iter()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn peak_depth(&self) -> usize {
        self.peak_depth
    }

    /// Processes the edges added since the last call. Returns true if the
    /// graph is now complete and compatible; if it is compatible but
    /// incomplete, pushes one pending definition per candidate target of
    /// the first missing edge and returns false.
    pub fn try_define_edge(&mut self) -> bool {
        if !self
            .engine
            .process(&mut self.graph, self.processed_edges, self.processed_nodes)
        {
            return false;
        }
        self.processed_edges = self.graph.edge_count();
        self.processed_nodes = self.graph.node_count();
        for (u, v) in &self.containing {
            let (iu, xu) = self.graph.trace(0, u);
            let (iv, xv) = self.graph.trace(0, v);
            if iu == u.len() && iv == v.len() && xu != xv {
                return false;
            }
        }
        if self.graph.is_complete() {
            return true;
        }
        let (alpha, a) = self.graph.first_undefined(self.scan_from).expect("incomplete graph");
        let delta = self.graph.node_count() as u32;
        let j = self.graph.edge_count() as u32;
        for beta in u32::from(self.semigroup)..delta {
            self.stack.push_back(PendingDefinition::new((alpha, a, beta), delta, j));
        }
        if (delta as usize) < self.graph.capacity() {
            self.stack
                .push_back(PendingDefinition::new((alpha, a, delta), delta, j));
        }
        self.peak_depth = self.peak_depth.max(self.stack.len());
        false
    }

    /// Pops and applies one pending definition. `None` when the stack is
    /// empty, otherwise whether the graph is now a congruence.
    pub(crate) fn step(&mut self) -> Result<Option<bool>> {
        let Some(pd) = self.stack.pop_back() else {
            return Ok(None);
        };
        self.steps += 1;
        if let Some(b) = self.budget {
            if self.steps > b {
                return Err(Error::Budget(format!("step budget of {b} exhausted")));
            }
        }
        self.apply(pd);
        Ok(Some(self.try_define_edge()))
    }

    fn apply(&mut self, pd: PendingDefinition) {
        self.graph.truncate(pd.edges as usize, pd.nodes as usize);
        self.processed_edges = pd.edges as usize;
        // entries with no edges are the initial ones, made before node 0
        // was ever processed
        self.processed_nodes = if pd.edges == 0 { 0 } else { pd.nodes as usize };
        if pd.target == pd.nodes {
            self.graph.set_node_count(pd.nodes as usize + 1);
        }
        self.graph.define(pd.source, pd.letter, pd.target);
        self.scan_from = pd.source as usize * self.graph.alphabet_size();
    }

    /// Advances to the next congruence without materializing it.
    pub fn advance(&mut self) -> Result<bool> {
        while let Some(found) = self.step()? {
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The next congruence, or `None` once the search is exhausted.
    pub fn next_right_congruence(&mut self) -> Result<Option<WordGraph>> {
        Ok(self.advance()?.then(|| self.graph()))
    }

    /// Replaces the graph by the first `nodes`/`edges.len()` of a graph
    /// from another worker and queues `pd`.
    pub(crate) fn load_subtree(&mut self, edges: &[Edge], nodes: usize, pd: PendingDefinition) {
        self.graph.truncate(0, 0);
        self.graph.set_node_count(nodes);
        for &(s, a, t) in edges {
            self.graph.define(s, a, t);
        }
        self.stack.clear();
        self.stack.push_back(pd);
    }

    pub(crate) fn clear_budget(&mut self) {
        self.budget = None;
    }
}

/// Streams the congruences found by a search, each exactly once.
pub struct AllRightCongruences {
    state: SearchState,
    done: bool,
}

impl AllRightCongruences {
    pub fn state(&self) -> &SearchState {
        &self.state
    }
}

impl Iterator for AllRightCongruences {
    type Item = Result<WordGraph>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.state.next_right_congruence() {
            Ok(Some(g)) => Some(Ok(g)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// All right (or, with `Side::Left`, left) congruences with at most
/// `cfg.max_classes` classes, as standard word graphs.
pub fn all_right_congruences(p: &Presentation, cfg: &SearchConfig) -> Result<AllRightCongruences> {
    Ok(AllRightCongruences {
        state: SearchState::new(p, cfg)?,
        done: false,
    })
}

pub fn count_right_congruences(p: &Presentation, cfg: &SearchConfig) -> Result<u64> {
    let mut state = SearchState::new(p, cfg)?;
    let mut count = 0;
    while state.advance()? {
        count += 1;
    }
    Ok(count)
}

/// Calls `f` on each congruence until it breaks; returns the number of
/// congruences visited.
pub fn for_each_right_congruence<F>(p: &Presentation, cfg: &SearchConfig, mut f: F) -> Result<u64>
where
    F: FnMut(&WordGraph) -> ControlFlow<()>,
{
    let mut state = SearchState::new(p, cfg)?;
    let mut count = 0;
    while state.advance()? {
        count += 1;
        if f(&state.graph()).is_break() {
            break;
        }
    }
    Ok(count)
}

/// Appends to `g` every edge forced by the relations of `p`. Returns 0 if
/// the relations force two different targets for some edge (or if `g` is
/// not deterministic over the alphabet of `p`), and otherwise the new
/// number of edges.
pub fn compatible_incremental(p: &Presentation, g: &mut WordGraph) -> usize {
    if g.alphabet_size() != p.alphabet_size() || !g.is_deterministic() || g.node_count() == 0 {
        return 0;
    }
    let mut sg = SearchGraph::new(g.alphabet_size(), g.node_count());
    sg.set_node_count(g.node_count());
    for &(s, a, t) in g.edges() {
        sg.define(s, a, t);
    }
    let mut engine = deduction_engines().get("felsch").expect("registered")(p);
    if !engine.process(&mut sg, 0, 0) {
        return 0;
    }
    *g = WordGraph::new(g.alphabet_size(), g.node_count(), sg.edges().to_vec()).expect("valid");
    g.edges().len()
}

/// Re-verifies a graph produced by the search with the full-scan checks.
pub fn audit_graph(p: &Presentation, cfg: &SearchConfig, g: &WordGraph) -> Result<()> {
    let (q, containing) = effective_input(p, cfg)?;
    let fail = |what: &str| Err(Error::input(format!("audit failed: graph is not {what}")));
    if !g.is_deterministic() || !g.is_complete() {
        return fail("complete and deterministic");
    }
    if !g.all_reachable_from_zero() {
        return fail("reachable from 0");
    }
    if !g.is_standard()? {
        return fail("standard");
    }
    if !g.is_compatible(&q)? {
        return fail("compatible");
    }
    let semigroup = cfg.semigroup || p.kind() == Kind::Semigroup;
    if g.node_count() > cfg.max_classes + usize::from(semigroup) {
        return fail("within the class bound");
    }
    if semigroup && g.edges().iter().any(|e| e.2 == 0) {
        return fail("free of edges into the identity node");
    }
    for (u, v) in &containing {
        if g.follow_path(0, u)? != g.follow_path(0, v)? {
            return fail("containing the required pairs");
        }
    }
    Ok(())
}
