//! Brute-force oracles shared by the integration tests. None of them use
//! the search, join or closure code they are compared against.

#![allow(dead_code)]

pub mod orbit;
pub mod suites;

use std::collections::{BTreeSet, HashMap};

use congkit::finite::fixtures::{monoid_from_generator_file, monoid_from_table_file};
use congkit::finite::{families, froidure_pin, monoid_from_elements, CongruenceKind, FiniteMonoid, Transformation};
use congkit::{Letter, Presentation, WordGraph};
use proptest::prelude::*;

pub fn fixture(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/");
    std::fs::read_to_string(format!("{path}{name}")).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn fixture_names(ext: &str) -> Vec<String> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .expect("fixtures directory")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(ext))
        .collect();
    names.sort();
    names
}

/// Edge-by-edge walk through an edge list, without the dense table.
pub fn walk(g: &WordGraph, start: u32, w: &[Letter]) -> Option<u32> {
    let mut node = start;
    for &a in w {
        node = g.edges().iter().find(|&&(s, l, _)| s == node && l == a)?.2;
    }
    Some(node)
}

/// The word graph of `<a | >` with a tail of length `tail` leading into a
/// cycle of length `period`.
pub fn lasso(tail: u32, period: u32) -> WordGraph {
    let n = tail + period;
    let edges = (0..n).map(|i| (i, 0, if i + 1 < n { i + 1 } else { tail })).collect();
    WordGraph::new(1, n as usize, edges).unwrap()
}

pub fn cycle(period: u32) -> WordGraph {
    lasso(0, period)
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(i: usize, n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(i + 1, n, max.max(b), cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(1, n, 0, &mut cur, &mut out);
    out
}

/// Products by brute force from the elements' words, not the table.
pub fn product(m: &FiniteMonoid, x: u32, y: u32) -> u32 {
    m.evaluate_from(x, m.word(y))
}

/// Whether a labelling of the elements is a congruence of the given kind,
/// checked against multiplication by every element.
pub fn is_congruence(m: &FiniteMonoid, labels: &[u32], kind: CongruenceKind) -> bool {
    let n = m.size() as u32;
    for x in 0..n {
        for y in x + 1..n {
            if labels[x as usize] != labels[y as usize] {
                continue;
            }
            for z in 0..n {
                let right = labels[product(m, x, z) as usize] == labels[product(m, y, z) as usize];
                let left = labels[product(m, z, x) as usize] == labels[product(m, z, y) as usize];
                let ok = match kind {
                    CongruenceKind::Right => right,
                    CongruenceKind::Left => left,
                    CongruenceKind::TwoSided => right && left,
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub fn brute_force_congruences(m: &FiniteMonoid, kind: CongruenceKind) -> Vec<Vec<u32>> {
    set_partitions(m.size())
        .into_iter()
        .filter(|p| is_congruence(m, p, kind))
        .collect()
}

/// Least congruence of the given kind containing `pair`: the least
/// partition above `pair` among all congruences, found by brute force.
pub fn brute_force_principal(m: &FiniteMonoid, pair: (u32, u32), kind: CongruenceKind) -> Vec<u32> {
    let all = brute_force_congruences(m, kind);
    let above: Vec<&Vec<u32>> = all
        .iter()
        .filter(|p| p[pair.0 as usize] == p[pair.1 as usize])
        .collect();
    let refines = |p: &Vec<u32>, q: &Vec<u32>| (0..p.len()).all(|i| (0..p.len()).all(|j| p[i] != p[j] || q[i] == q[j]));
    (*above
        .iter()
        .find(|p| above.iter().all(|q| refines(p, q)))
        .expect("a least one"))
    .clone()
}

/// Labels by least element of each class.
pub fn least_labels(labels: &[u32]) -> Vec<u32> {
    let mut first: HashMap<u32, u32> = HashMap::new();
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| *first.entry(*l).or_insert(i as u32))
        .collect()
}

/// Relative R-classes of `M x M` by direct comparison of the right orbits
/// `{(x m, y m)}` over all `m`.
pub fn brute_force_relative_r(m: &FiniteMonoid) -> Vec<u32> {
    let n = m.size() as u32;
    let mut orbit_index: HashMap<BTreeSet<(u32, u32)>, u32> = HashMap::new();
    let mut out = Vec::with_capacity((n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            let orbit: BTreeSet<(u32, u32)> = (0..n).map(|z| (product(m, x, z), product(m, y, z))).collect();
            let next = orbit_index.len() as u32;
            out.push(*orbit_index.entry(orbit).or_insert(next));
        }
    }
    out
}

pub fn transformation(images: Vec<u32>) -> Transformation {
    Transformation::new(images).unwrap()
}

/// Transformation monoids with at most `max` elements, from one or two
/// random generators of degree 2 to 4.
pub fn small_monoid(max: usize) -> impl Strategy<Value = FiniteMonoid> {
    (2usize..=4)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0..d as u32, d), 1..=2))
        .prop_filter_map("monoid too large", move |gens| {
            let ts: Vec<Transformation> = gens.into_iter().map(transformation).collect();
            froidure_pin(&ts, Some(max)).ok()
        })
}

/// Transformation generator fixtures shipped with the repository.
pub fn generator_fixtures() -> Vec<(String, FiniteMonoid)> {
    fixture_names(".gens")
        .into_iter()
        .map(|name| {
            let m = congkit::finite::fixtures::monoid_from_generator_file(&fixture(&name), false, None).unwrap();
            (name, m)
        })
        .collect()
}

/// Every finite monoid fixture together with a few small families, up to
/// 60 elements.
pub fn fixture_monoids() -> Vec<(String, FiniteMonoid)> {
    let mut out: Vec<(String, FiniteMonoid)> = generator_fixtures();
    for name in fixture_names(".table") {
        out.push((name.clone(), monoid_from_table_file(&fixture(&name), true).unwrap()));
    }
    for name in fixture_names(".matrices") {
        out.push((
            name.clone(),
            monoid_from_generator_file(&fixture(&name), false, None).unwrap(),
        ));
    }
    out.push(("C4".into(), froidure_pin(&families::catalan_monoid(4), None).unwrap()));
    out.push((
        "O3".into(),
        froidure_pin(&families::order_preserving_monoid(3), None).unwrap(),
    ));
    out.push((
        "M2(F2)".into(),
        monoid_from_elements(&families::all_matrices(2, 2)).unwrap(),
    ));
    out.retain(|(_, m)| m.size() <= 60);
    out
}

/// Every presentation fixture with a class bound small enough to search
/// quickly.
pub fn fixture_presentations() -> Vec<(String, Presentation, usize)> {
    fixture_names(".p")
        .into_iter()
        .map(|name| {
            let p = Presentation::parse(&fixture(&name)).unwrap();
            let n = if name == "heineken.p" { 2 } else { 7 };
            (name, p, n)
        })
        .collect()
}
