//! Image sets of pairs of transformations and the diagonal's action on
//! them, computed directly from the definitions.

use std::collections::{BTreeSet, HashMap, HashSet};

use congkit::finite::FiniteMonoid;
use congkit::relgreens::perm::Perm;

/// Image sets of the pairs acting on `2d` points, the diagonal's action on
/// them, and the strongly connected components by mutual reachability.
pub struct ImageOrbit {
    pub d: usize,
    pub repr: Vec<Vec<u32>>,
    pub sets: Vec<Vec<u32>>,
    pub component: Vec<usize>,
}

pub fn pair_map(repr: &[Vec<u32>], d: usize, x: u32, y: u32) -> Vec<u32> {
    repr[x as usize]
        .iter()
        .copied()
        .chain(repr[y as usize].iter().map(|&q| q + d as u32))
        .collect()
}

pub fn image_of(set: &[u32], t: &[u32]) -> Vec<u32> {
    set.iter()
        .map(|&q| t[q as usize])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

impl ImageOrbit {
    pub fn new(m: &FiniteMonoid) -> Self {
        let (d, repr) = m.transformation_representation();
        let n = m.size() as u32;
        let full: Vec<u32> = (0..2 * d as u32).collect();
        let sets: Vec<Vec<u32>> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| image_of(&full, &pair_map(&repr, d, x, y)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&Vec<u32>, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let reach: Vec<HashSet<usize>> = sets
            .iter()
            .map(|s| (0..n).map(|z| index[&image_of(s, &pair_map(&repr, d, z, z))]).collect())
            .collect();
        let mut component = vec![usize::MAX; sets.len()];
        let mut next = 0;
        for i in 0..sets.len() {
            if component[i] != usize::MAX {
                continue;
            }
            for j in i..sets.len() {
                if component[j] == usize::MAX && reach[i].contains(&j) && reach[j].contains(&i) {
                    component[j] = next;
                }
            }
            next += 1;
        }
        ImageOrbit {
            d,
            repr,
            sets,
            component,
        }
    }

    pub fn component_of(&self, set: &[u32]) -> usize {
        self.component[self.sets.iter().position(|s| s == set).unwrap()]
    }

    /// Permutations of `base` induced by the diagonal elements fixing it.
    pub fn stabiliser(&self, m: &FiniteMonoid, base: &[u32]) -> HashSet<Perm> {
        let pos: HashMap<u32, u32> = base.iter().enumerate().map(|(i, &q)| (q, i as u32)).collect();
        (0..m.size() as u32)
            .map(|z| pair_map(&self.repr, self.d, z, z))
            .filter(|t| image_of(base, t) == base)
            .map(|t| Perm::new(base.iter().map(|&q| pos[&t[q as usize]]).collect()).unwrap())
            .collect()
    }
}
