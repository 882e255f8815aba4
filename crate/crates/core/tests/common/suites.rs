//! Property checks shared by the property tests and the acceptance runner.
//! Each returns a description of the first violation found.

use std::collections::{BTreeSet, HashSet};

use congkit::finite::{congruence_lattice, CongruenceKind, FiniteMonoid};
use congkit::latticeops::contains_congruence;
use congkit::lowindex::{all_right_congruences, count_right_congruences, parallel_count};
use congkit::relgreens::diagonal_stabiliser_groups;
use congkit::relgreens::perm::{Perm, StabiliserGroup};
use congkit::{join_word_graphs, meet_word_graphs, Presentation, SearchConfig, WordGraph};

use super::orbit::ImageOrbit;
use super::{brute_force_congruences, least_labels};

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// The low-index count, the number of right-compatible partitions and the
/// size of the lattice of joins of principal right congruences agree.
pub fn oracle_equivalence(m: &FiniteMonoid) -> Check {
    let brute = brute_force_congruences(m, CongruenceKind::Right);
    let search = count_right_congruences(m.presentation(), &SearchConfig::new(m.size())).map_err(|e| e.to_string())?;
    let lattice = congruence_lattice(m, CongruenceKind::Right, false).map_err(|e| e.to_string())?;
    ensure(search as usize == brute.len() && lattice.len() == brute.len(), || {
        format!(
            "size {}: search {search}, partitions {}, lattice {}",
            m.size(),
            brute.len(),
            lattice.len()
        )
    })?;
    let brute: BTreeSet<Vec<u32>> = brute.iter().map(|l| least_labels(l)).collect();
    let lattice: BTreeSet<Vec<u32>> = lattice.elements.iter().map(|c| c.least().to_vec()).collect();
    ensure(brute == lattice, || {
        format!("size {}: lattice elements differ from partitions", m.size())
    })
}

/// Lattice laws, containment monotonicity and the join and meet being the
/// least upper and greatest lower bounds, over every pair (and triple for
/// associativity) of right congruences of `m`.
pub fn lattice_laws(m: &FiniteMonoid, limit: usize) -> Check {
    let all: Vec<WordGraph> = all_right_congruences(m.presentation(), &SearchConfig::new(m.size()))
        .map_err(|e| e.to_string())?
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(all.len() <= limit, || {
        format!("{} right congruences, more than {limit}", all.len())
    })?;
    let eq = |g: &WordGraph, h: &WordGraph| g.equal_as_congruences(h).unwrap_or(false);
    let join = |g: &WordGraph, h: &WordGraph| join_word_graphs(g, h).map_err(|e| e.to_string());
    let meet = |g: &WordGraph, h: &WordGraph| meet_word_graphs(g, h).map_err(|e| e.to_string());
    for (i, g) in all.iter().enumerate() {
        for (j, h) in all.iter().enumerate() {
            let at = || format!("congruences {i} and {j}");
            let (gh, hg) = (join(g, h)?, join(h, g)?);
            let (mgh, mhg) = (meet(g, h)?, meet(h, g)?);
            ensure(eq(&gh, &hg) && eq(&mgh, &mhg), || format!("{}: not commutative", at()))?;
            ensure(eq(&join(g, &mgh)?, g) && eq(&meet(g, &gh)?, g), || {
                format!("{}: absorption", at())
            })?;
            ensure(contains_congruence(g, &gh) && contains_congruence(h, &gh), || {
                format!("{}: join is not above both", at())
            })?;
            ensure(contains_congruence(&mgh, g) && contains_congruence(&mgh, h), || {
                format!("{}: meet is not below both", at())
            })?;
            let above: Vec<&WordGraph> = all
                .iter()
                .filter(|c| contains_congruence(g, c) && contains_congruence(h, c))
                .collect();
            ensure(above.iter().all(|c| contains_congruence(&gh, c)), || {
                format!("{}: join is not least", at())
            })?;
            let below: Vec<&WordGraph> = all
                .iter()
                .filter(|c| contains_congruence(c, g) && contains_congruence(c, h))
                .collect();
            ensure(below.iter().all(|c| contains_congruence(c, &mgh)), || {
                format!("{}: meet is not greatest", at())
            })?;
            if contains_congruence(g, h) {
                for k in &all {
                    ensure(
                        contains_congruence(&join(g, k)?, &join(h, k)?)
                            && contains_congruence(&meet(g, k)?, &meet(h, k)?),
                        || format!("{}: not monotone", at()),
                    )?;
                }
            }
        }
        ensure(eq(&join(g, g)?, g) && eq(&meet(g, g)?, g), || {
            format!("congruence {i}: not idempotent")
        })?;
    }
    for g in all.iter().step_by(3) {
        for h in all.iter().step_by(2) {
            for k in &all {
                ensure(eq(&join(&join(g, h)?, k)?, &join(g, &join(h, k)?)?), || {
                    "join not associative".into()
                })?;
                ensure(eq(&meet(&meet(g, h)?, k)?, &meet(g, &meet(h, k)?)?), || {
                    "meet not associative".into()
                })?;
            }
        }
    }
    Ok(())
}

/// Lattices of every kind agree byte for byte with and without the
/// relative Green's reduction of the generating pairs.
pub fn green_reduction_transparent(m: &FiniteMonoid) -> Check {
    for kind in [CongruenceKind::Right, CongruenceKind::Left, CongruenceKind::TwoSided] {
        let on = congruence_lattice(m, kind, true).map_err(|e| e.to_string())?;
        let off = congruence_lattice(m, kind, false).map_err(|e| e.to_string())?;
        ensure(on.to_json() == off.to_json() && on.covers == off.covers, || {
            format!("{kind:?} lattices differ")
        })?;
    }
    Ok(())
}

pub fn parallel_determinism(p: &Presentation, max_classes: usize) -> Check {
    let cfg = SearchConfig::new(max_classes);
    let serial = count_right_congruences(p, &cfg).map_err(|e| e.to_string())?;
    for t in [1, 2, 4] {
        let c = parallel_count(p, &cfg, t).map_err(|e| e.to_string())?;
        ensure(c == serial, || format!("{t} threads counted {c}, serial {serial}"))?;
    }
    Ok(())
}

/// The stabiliser groups of the diagonal's action on image sets (whose
/// construction checks every trace round trip) against the permutations
/// induced by all diagonal elements fixing each base set.
pub fn diagonal_stabilisers_match_closure(m: &FiniteMonoid) -> Check {
    let groups = diagonal_stabiliser_groups(m).map_err(|e| e.to_string())?;
    let orbit = ImageOrbit::new(m);
    let comps: BTreeSet<usize> = orbit.component.iter().copied().collect();
    let covered: BTreeSet<usize> = groups.iter().map(|(base, _)| orbit.component_of(base)).collect();
    ensure(groups.len() == comps.len() && covered == comps, || {
        format!("{} groups for {} orbit components", groups.len(), comps.len())
    })?;
    for (base, group) in &groups {
        let exhaustive = orbit.stabiliser(m, base);
        membership_matches_closure(group, &exhaustive.iter().cloned().collect::<Vec<_>>())?;
        ensure(group.order() == exhaustive.len() as u128, || {
            format!(
                "base {base:?}: order {} but {} stabilising permutations",
                group.order(),
                exhaustive.len()
            )
        })?;
    }
    Ok(())
}

/// Order and membership from the stabiliser chain agree with the closure
/// of the generators, which must have at most ten thousand elements.
pub fn membership_matches_closure(group: &StabiliserGroup, probes: &[Perm]) -> Check {
    let all: HashSet<Perm> = group
        .elements_by_closure(10_000)
        .ok_or_else(|| "group larger than ten thousand".to_string())?;
    ensure(group.order() == all.len() as u128, || {
        format!("order {} but closure {}", group.order(), all.len())
    })?;
    for p in probes.iter().chain(all.iter().take(50)) {
        ensure(group.contains(p) == all.contains(p), || {
            format!("membership of {:?}", p.images())
        })?;
    }
    Ok(())
}
