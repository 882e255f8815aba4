//! Green's relations of `M x M` relative to the diagonal submonoid.
//!
//! Principal right congruences of a finite monoid `M` are constant on the
//! classes of the relative R-relation: `(x, y)` and `(x', y')` are related
//! when each is the other multiplied on the right by some diagonal pair
//! `(m, m)`. The same holds for left congruences with L and for two-sided
//! congruences with J, so one pair per class suffices to generate every
//! principal congruence.

mod group;
pub mod perm;
mod scc;

pub use scc::strongly_connected_components;

use crate::error::{Error, Result};
use crate::finite::{CongruenceKind, FiniteMonoid};
use crate::registry::Registry;
use crate::wordgraph::WordGraph;

/// Largest `|M|^2` the pair-graph engine will search.
pub const MAX_PAIRS: usize = 1 << 28;

/// Representatives of the relative R-classes of `M x M`.
#[derive(Debug, Clone)]
pub struct RelClassIndex {
    n: usize,
    representatives: Vec<(u32, u32)>,
    // node i is representative i; letter a sends it to the class of
    // (a x, a y)
    word_graph: WordGraph,
    class_of: Option<Vec<u32>>,
}

impl RelClassIndex {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[(u32, u32)] {
        &self.representatives
    }

    /// The left action of the diagonal generators on the classes.
    pub fn word_graph(&self) -> &WordGraph {
        &self.word_graph
    }

    /// The class of a pair, when the index was built with the full map.
    pub fn class_of(&self, pair: (u32, u32)) -> Option<u32> {
        let map = self.class_of.as_ref()?;
        map.get(pair.0 as usize * self.n + pair.1 as usize).copied()
    }

    pub fn has_class_map(&self) -> bool {
        self.class_of.is_some()
    }
}

pub trait RClassEngine: Send + Sync {
    fn name(&self) -> &'static str;
    fn r_classes(&self, monoid: &FiniteMonoid, with_class_map: bool) -> Result<RelClassIndex>;
}

pub type RClassFactory = fn() -> Box<dyn RClassEngine>;

struct SccEngine;

impl RClassEngine for SccEngine {
    fn name(&self) -> &'static str {
        "scc"
    }

    fn r_classes(&self, monoid: &FiniteMonoid, _with_class_map: bool) -> Result<RelClassIndex> {
        relative_r_class_reps_scc(monoid)
    }
}

struct GroupEngine;

impl RClassEngine for GroupEngine {
    fn name(&self) -> &'static str {
        "group"
    }

    fn r_classes(&self, monoid: &FiniteMonoid, with_class_map: bool) -> Result<RelClassIndex> {
        group::group_r_classes(monoid, with_class_map)
    }
}

pub fn r_class_engines() -> Registry<RClassFactory> {
    fn scc() -> Box<dyn RClassEngine> {
        Box::new(SccEngine)
    }
    fn group() -> Box<dyn RClassEngine> {
        Box::new(GroupEngine)
    }
    let mut r: Registry<RClassFactory> = Registry::new("relative R-class engine");
    r.register("scc", "strongly connected components of the graph on all pairs", scc)
        .register(
            "group",
            "image orbits and stabiliser groups of pairs as transformations",
            group,
        );
    r
}

/// Relative R-classes as the strongly connected components of the graph on
/// all `|M|^2` pairs with edges `(x, y) -> (x a, y a)`. Always has the full
/// class map.
pub fn relative_r_class_reps_scc(monoid: &FiniteMonoid) -> Result<RelClassIndex> {
    let n = monoid.size();
    let m = monoid.generator_count();
    if n.checked_mul(n).is_none_or(|p| p > MAX_PAIRS) {
        return Err(Error::Budget(format!(
            "{n}^2 pairs exceed the pair-graph limit {MAX_PAIRS}"
        )));
    }
    let right = monoid.right_cayley();
    let comp = strongly_connected_components(n * n, m, |v, a| {
        let (x, y) = (v as usize / n, v as usize % n);
        right[x * m + a] * n as u32 + right[y * m + a]
    });
    let mut representatives = Vec::new();
    for (v, &c) in comp.iter().enumerate() {
        if c as usize == representatives.len() {
            representatives.push(((v / n) as u32, (v % n) as u32));
        }
    }
    let mut table = Vec::with_capacity(representatives.len() * m);
    for &(x, y) in &representatives {
        for a in 0..m as u32 {
            let v = monoid.left_mul(x, a) as usize * n + monoid.left_mul(y, a) as usize;
            table.push(comp[v]);
        }
    }
    Ok(RelClassIndex {
        n,
        word_graph: WordGraph::from_table(m, representatives.len(), &table)?,
        representatives,
        class_of: Some(comp),
    })
}

pub fn relative_r_class_reps_group(monoid: &FiniteMonoid, with_class_map: bool) -> Result<RelClassIndex> {
    group::group_r_classes(monoid, with_class_map)
}

/// For each strongly connected component of the diagonal's action on the
/// image sets of pairs (as transformations of `2d` points), its least image
/// set and the group of permutations the diagonal induces on it.
pub fn diagonal_stabiliser_groups(monoid: &FiniteMonoid) -> Result<Vec<(Vec<u32>, perm::StabiliserGroup)>> {
    Ok(group::GroupClassifier::new(monoid)?.into_groups())
}

/// One representative per relative J-class: the strongly connected
/// components of the left action on the R-classes.
pub fn relative_j_class_reps(index: &RelClassIndex) -> Vec<(u32, u32)> {
    let g = &index.word_graph;
    let m = g.alphabet_size();
    let comp = strongly_connected_components(index.len(), m, |v, a| g.target(v, a as u32).expect("complete"));
    let mut out = Vec::new();
    for (i, &c) in comp.iter().enumerate() {
        if c as usize == out.len() {
            out.push(index.representatives[i]);
        }
    }
    out
}

/// One representative per relative L-class, found as R-classes of the
/// opposite monoid.
pub fn relative_l_class_reps(monoid: &FiniteMonoid, engine: &str) -> Result<Vec<(u32, u32)>> {
    let (dual, new_of) = monoid.dual();
    let mut old_of = vec![0u32; new_of.len()];
    for (old, &new) in new_of.iter().enumerate() {
        old_of[new as usize] = old as u32;
    }
    let idx = (r_class_engines().get(engine)?)().r_classes(&dual, false)?;
    Ok(idx
        .representatives
        .iter()
        .map(|&(x, y)| (old_of[x as usize], old_of[y as usize]))
        .collect())
}

/// Pairs generating every principal congruence of the given kind, one per
/// non-diagonal relative Green's class, using the default engine.
pub fn reduced_generating_pairs(monoid: &FiniteMonoid, kind: CongruenceKind) -> Result<Vec<(u32, u32)>> {
    let engines = r_class_engines();
    reduced_generating_pairs_with(monoid, kind, engines.default_name())
}

pub fn reduced_generating_pairs_with(
    monoid: &FiniteMonoid,
    kind: CongruenceKind,
    engine: &str,
) -> Result<Vec<(u32, u32)>> {
    let engines = r_class_engines();
    let factory = engines.get(engine)?;
    let reps = match kind {
        CongruenceKind::Right => factory().r_classes(monoid, false)?.representatives,
        CongruenceKind::Left => relative_l_class_reps(monoid, engine)?,
        CongruenceKind::TwoSided => relative_j_class_reps(&factory().r_classes(monoid, false)?),
    };
    Ok(reps.into_iter().filter(|(x, y)| x != y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{all_pairs, distinct_principal_congruences, families, froidure_pin};

    fn monoids() -> Vec<(&'static str, FiniteMonoid)> {
        vec![
            ("C3", froidure_pin(&families::catalan_monoid(3), None).unwrap()),
            ("C4", froidure_pin(&families::catalan_monoid(4), None).unwrap()),
            ("O3", froidure_pin(&families::order_preserving_monoid(3), None).unwrap()),
            (
                "T3",
                froidure_pin(&families::full_transformation_monoid(3), None).unwrap(),
            ),
            ("S3", froidure_pin(&families::symmetric_group(3), None).unwrap()),
            (
                "I3",
                froidure_pin(&families::symmetric_inverse_monoid(3), None).unwrap(),
            ),
        ]
    }

    #[test]
    fn engines_agree_on_classes() {
        for (name, m) in monoids() {
            let a = relative_r_class_reps_scc(&m).unwrap();
            let b = relative_r_class_reps_group(&m, true).unwrap();
            assert_eq!(a.len(), b.len(), "{name}");
            let n = m.size() as u32;
            // the two class maps induce the same partition of the pairs
            let mut pairing = std::collections::HashMap::new();
            for x in 0..n {
                for y in 0..n {
                    let (ca, cb) = (a.class_of((x, y)).unwrap(), b.class_of((x, y)).unwrap());
                    assert_eq!(*pairing.entry(ca).or_insert(cb), cb, "{name} ({x}, {y})");
                }
            }
        }
    }

    #[test]
    fn representatives_give_every_principal_congruence() {
        for (name, m) in monoids() {
            for kind in [CongruenceKind::Right, CongruenceKind::Left, CongruenceKind::TwoSided] {
                let all = distinct_principal_congruences(&m, &all_pairs(&m), kind);
                for engine in ["scc", "group"] {
                    let pairs = reduced_generating_pairs_with(&m, kind, engine).unwrap();
                    let reduced = distinct_principal_congruences(&m, &pairs, kind);
                    let trivial = crate::finite::CongruencePartition::trivial(m.size());
                    let all_nontrivial: std::collections::BTreeSet<_> =
                        all.iter().filter(|c| **c != trivial).cloned().collect();
                    let reduced: std::collections::BTreeSet<_> = reduced.into_iter().collect();
                    assert_eq!(reduced, all_nontrivial, "{name} {kind:?} {engine}");
                }
            }
        }
    }

    #[test]
    fn class_counts_of_small_monoids() {
        // the trivial monoid has only the diagonal class
        let one = froidure_pin(&[crate::finite::Transformation::identity(1)], None).unwrap();
        let idx = relative_r_class_reps_scc(&one).unwrap();
        assert_eq!(idx.len(), 1);
        assert!(reduced_generating_pairs(&one, CongruenceKind::Right)
            .unwrap()
            .is_empty());
        // in a group every pair (x, y) lies in the class of (1, x^-1 y)
        let s3 = froidure_pin(&families::symmetric_group(3), None).unwrap();
        assert_eq!(relative_r_class_reps_scc(&s3).unwrap().len(), 6);
        assert_eq!(relative_r_class_reps_group(&s3, false).unwrap().len(), 6);
    }

    #[test]
    fn unknown_engine_is_reported() {
        let m = froidure_pin(&families::catalan_monoid(3), None).unwrap();
        assert!(matches!(
            reduced_generating_pairs_with(&m, CongruenceKind::Right, "nope"),
            Err(Error::UnknownStrategy { .. })
        ));
    }
}
