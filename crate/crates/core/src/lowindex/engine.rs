//! Deduction engines: given a search graph whose first few edges are known
//! to be consistent with the relations, process the remaining edges,
//! appending every forced edge or reporting a conflict.

use crate::presentation::{Letter, Presentation, Word};
use crate::registry::Registry;
use crate::wordgraph::UNDEF;

use super::graph::SearchGraph;

pub trait DeductionEngine: Send {
    fn name(&self) -> &'static str;

    /// Processes edges from index `from_edge` on (including those it
    /// appends) and nodes from `from_node` on. Returns false on conflict.
    fn process(&mut self, g: &mut SearchGraph, from_edge: usize, from_node: usize) -> bool;

    fn box_clone(&self) -> Box<dyn DeductionEngine>;
}

impl Clone for Box<dyn DeductionEngine> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

pub type DeductionFactory = fn(&Presentation) -> Box<dyn DeductionEngine>;

/// The available deduction engines; the default is `felsch`.
pub fn deduction_engines() -> Registry<DeductionFactory> {
    let mut r: Registry<DeductionFactory> = Registry::new("deduction engine");
    r.register(
        "felsch",
        "re-checks only relation instances whose paths use a new edge",
        |p: &Presentation| -> Box<dyn DeductionEngine> { Box::new(FelschEngine::new(p)) },
    )
    .register(
        "naive",
        "re-checks every relation at every node until nothing changes",
        |p: &Presentation| -> Box<dyn DeductionEngine> { Box::new(NaiveEngine::new(p)) },
    );
    r
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Consistent,
    Deduced,
    Conflict,
}

/// Checks the relation `u = v` at node `gamma`, defining the last edge of
/// one side when the other side is fully traced.
#[inline]
fn apply_rule(g: &mut SearchGraph, gamma: u32, u: &[Letter], v: &[Letter]) -> Outcome {
    let (iu, xu) = g.trace(gamma, u);
    let (iv, xv) = g.trace(gamma, v);
    let full_u = iu == u.len();
    let full_v = iv == v.len();
    if full_u && full_v {
        if xu != xv {
            return Outcome::Conflict;
        }
    } else if full_u && iv + 1 == v.len() {
        g.define(xv, v[iv], xu);
        return Outcome::Deduced;
    } else if full_v && iu + 1 == u.len() {
        g.define(xu, u[iu], xv);
        return Outcome::Deduced;
    }
    Outcome::Consistent
}

/// Re-checks every relation at every node until a fixed point.
#[derive(Debug, Clone)]
pub struct NaiveEngine {
    relations: Vec<(Word, Word)>,
}

impl NaiveEngine {
    pub fn new(p: &Presentation) -> Self {
        NaiveEngine {
            relations: p.relations().to_vec(),
        }
    }
}

impl DeductionEngine for NaiveEngine {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn process(&mut self, g: &mut SearchGraph, _from_edge: usize, _from_node: usize) -> bool {
        loop {
            let mut changed = false;
            for gamma in 0..g.node_count() as u32 {
                for (u, v) in &self.relations {
                    match apply_rule(g, gamma, u, v) {
                        Outcome::Conflict => return false,
                        Outcome::Deduced => changed = true,
                        Outcome::Consistent => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn box_clone(&self) -> Box<dyn DeductionEngine> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone, Copy)]
struct Occurrence {
    relation: u32,
    // true if the letter is on the right-hand side
    rhs: bool,
    pos: u32,
}

/// Incremental deductions: a new edge `(s, a, t)` can only change the
/// status of relation instances whose traced prefix ends at `s` just before
/// an occurrence of `a`. The start nodes of such instances are found by
/// walking the prefix backwards through the preimage lists.
#[derive(Debug, Clone)]
pub struct FelschEngine {
    relations: Vec<(Word, Word)>,
    occurrences: Vec<Vec<Occurrence>>,
    // relations of the form `ε = b` or `ε = ε`, which must be checked at
    // every new node because no edge lies on the empty side
    nodal: Vec<u32>,
    work: Vec<(u32, u32)>,
}

impl FelschEngine {
    pub fn new(p: &Presentation) -> Self {
        let relations = p.relations().to_vec();
        let mut occurrences = vec![Vec::new(); p.alphabet_size()];
        let mut nodal = Vec::new();
        for (r, (u, v)) in relations.iter().enumerate() {
            for (rhs, w) in [(false, u), (true, v)] {
                for (pos, &a) in w.iter().enumerate() {
                    occurrences[a as usize].push(Occurrence {
                        relation: r as u32,
                        rhs,
                        pos: pos as u32,
                    });
                }
            }
            if (u.is_empty() && v.len() <= 1) || (v.is_empty() && u.len() <= 1) {
                nodal.push(r as u32);
            }
        }
        FelschEngine {
            relations,
            occurrences,
            nodal,
            work: Vec::new(),
        }
    }
}

impl DeductionEngine for FelschEngine {
    fn name(&self) -> &'static str {
        "felsch"
    }

    fn process(&mut self, g: &mut SearchGraph, from_edge: usize, from_node: usize) -> bool {
        for gamma in from_node as u32..g.node_count() as u32 {
            for &r in &self.nodal {
                let (u, v) = &self.relations[r as usize];
                if apply_rule(g, gamma, u, v) == Outcome::Conflict {
                    return false;
                }
            }
        }
        let mut e = from_edge;
        while e < g.edge_count() {
            let (s, a, _) = g.edges()[e];
            e += 1;
            for occ in &self.occurrences[a as usize] {
                let (u, v) = &self.relations[occ.relation as usize];
                let word = if occ.rhs { v } else { u };
                self.work.clear();
                self.work.push((s, occ.pos));
                while let Some((x, k)) = self.work.pop() {
                    if k == 0 {
                        if apply_rule(g, x, u, v) == Outcome::Conflict {
                            self.work.clear();
                            return false;
                        }
                        continue;
                    }
                    let b = word[k as usize - 1];
                    let mut y = g.first_preimage(x, b);
                    while y != UNDEF {
                        self.work.push((y, k - 1));
                        y = g.next_preimage(y, b);
                    }
                }
            }
        }
        true
    }

    fn box_clone(&self) -> Box<dyn DeductionEngine> {
        Box::new(self.clone())
    }
}
