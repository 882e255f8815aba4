//! Permutation groups given by generators, with membership testing through
//! a stabiliser chain.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n - 1}` acting on the right: `p * q` first
/// applies `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::input("not a permutation"));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    // strong generators fixing every earlier base point
    gens: Vec<Perm>,
    // transversal[b] maps the base point to b, for b in the orbit
    transversal: HashMap<u32, Perm>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32) -> Self {
        Level {
            base,
            gens: Vec::new(),
            transversal: HashMap::new(),
            orbit: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal.insert(self.base, Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for g in &self.gens {
                let c = g.apply(b);
                if !self.transversal.contains_key(&c) {
                    let t = self.transversal[&b].mul(g);
                    self.transversal.insert(c, t);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set, built deterministically.
#[derive(Debug, Clone)]
pub struct StabiliserChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabiliserChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabiliserChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            if !chain.contains(g) {
                chain.add_strong_generator(g.clone(), 0);
                chain.complete();
            }
        }
        chain
    }

    /// Residue of `g` after sifting from `start`, and the level at which it
    /// left the chain.
    fn sift(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.base);
            match level.transversal.get(&b) {
                Some(t) => h = h.mul(&t.inverse()),
                None => return (h, i),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    /// Adds a generator fixing the base points before `level` to every
    /// level up to `level`, opening a new level if needed.
    fn add_strong_generator(&mut self, g: Perm, level: usize) {
        if level == self.levels.len() {
            let moved = (0..self.degree as u32)
                .find(|&x| g.apply(x) != x)
                .expect("non-identity");
            self.levels.push(Level::new(moved));
        }
        for l in &mut self.levels[..=level] {
            l.gens.push(g.clone());
        }
    }

    /// Adds sifted Schreier generators until every level is closed.
    fn complete(&mut self) {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                self.levels[i].rebuild_orbit(self.degree);
                let level = &self.levels[i];
                for b in level.orbit.clone() {
                    for s in level.gens.clone() {
                        let ub = &self.levels[i].transversal[&b];
                        let c = s.apply(b);
                        let h = ub.mul(&s).mul(&self.levels[i].transversal[&c].inverse());
                        let (res, j) = self.sift(&h, i + 1);
                        if !res.is_identity() {
                            self.add_strong_generator(res, j);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// A permutation group on `{0, .., degree - 1}`.
#[derive(Debug, Clone)]
pub struct StabiliserGroup {
    generators: Vec<Perm>,
    chain: StabiliserChain,
}

pub const CLOSURE_LIMIT: usize = 10_000;

impl StabiliserGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        let generators: Vec<Perm> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let chain = StabiliserChain::new(degree, &generators);
        StabiliserGroup { generators, chain }
    }

    pub fn degree(&self) -> usize {
        self.chain.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    /// All elements, by closing the generators under products; `None` if
    /// there are more than `limit`.
    pub fn elements_by_closure(&self, limit: usize) -> Option<HashSet<Perm>> {
        let id = Perm::identity(self.degree());
        let mut all = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.mul(g);
                if all.insert(y.clone()) {
                    if all.len() > limit {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        Some(all)
    }
}

fn compose(s: &[u32], t: &[u32]) -> Vec<u32> {
    s.iter().map(|&x| t[x as usize]).collect()
}

fn image_set(y: &[u32], t: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = y.iter().map(|&x| t[x as usize]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Generators of the group of permutations of `sets[0]` induced by the
/// elements of the monoid generated by `gens` that stabilise it, given a
/// strongly connected orbit `sets` of subsets and, for every `i`, elements
/// `u[i]`, `ubar[i]` with `sets[0] u[i] = sets[i]`, `sets[i] ubar[i] =
/// sets[0]` and `u[i] ubar[i]` the identity on `sets[0]`. All elements are
/// transformations of one finite set acting on the right. The points of
/// `sets[0]` (sorted) are numbered `0, 1, ..` in the result.
pub fn schreier_generators(
    sets: &[Vec<u32>],
    u: &[Vec<u32>],
    ubar: &[Vec<u32>],
    gens: &[Vec<u32>],
) -> Result<StabiliserGroup> {
    let Some(y0) = sets.first() else {
        return Err(Error::input("empty orbit component"));
    };
    if u.len() != sets.len() || ubar.len() != sets.len() {
        return Err(Error::input("one trace pair per orbit element is required"));
    }
    let position: HashMap<u32, u32> = y0.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let index: HashMap<&[u32], usize> = sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let restrict = |t: &[u32]| -> Result<Perm> {
        let images = y0
            .iter()
            .map(|&x| {
                position
                    .get(&t[x as usize])
                    .copied()
                    .ok_or_else(|| Error::input("element does not stabilise the base set"))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::new(images)
    };
    for i in 0..sets.len() {
        if image_set(y0, &u[i]) != sets[i] || image_set(&sets[i], &ubar[i]) != *y0 {
            return Err(Error::input(format!(
                "trace elements for orbit element {i} do not map the sets"
            )));
        }
        if !restrict(&compose(&u[i], &ubar[i]))?.is_identity() {
            return Err(Error::input(format!(
                "trace elements for orbit element {i} fail the round trip"
            )));
        }
    }
    let mut out = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        for g in gens {
            if let Some(&j) = index.get(image_set(set, g).as_slice()) {
                out.push(restrict(&compose(&compose(&u[i], g), &ubar[j]))?);
            }
        }
    }
    Ok(StabiliserGroup::new(y0.len(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        let s5 = StabiliserGroup::new(5, vec![p(&[1, 0, 2, 3, 4]), p(&[1, 2, 3, 4, 0])]);
        assert_eq!(s5.order(), 120);
        let a5 = StabiliserGroup::new(5, vec![p(&[1, 2, 0, 3, 4]), p(&[1, 2, 3, 4, 0])]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&p(&[1, 0, 2, 3, 4])));
        assert!(a5.contains(&p(&[1, 0, 3, 2, 4])));
        let trivial = StabiliserGroup::new(3, vec![Perm::identity(3)]);
        assert_eq!(trivial.order(), 1);
        assert!(trivial.contains(&Perm::identity(3)));
    }

    #[test]
    fn transformation_monoid_examples() {
        // T_2 acting on images; Y0 = {0, 1} is stabilised by the swap only
        let g = schreier_generators(&[vec![0, 1]], &[vec![0, 1]], &[vec![0, 1]], &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        // C_3 on singletons: only the identity stabilises {1}
        let c = vec![1u32, 2, 0];
        let c2 = compose(&c, &c);
        let id = vec![0u32, 1, 2];
        let g = schreier_generators(
            &[vec![1], vec![2], vec![0]],
            &[id.clone(), c.clone(), c2.clone()],
            &[id, c2, c.clone()],
            &[c],
        )
        .unwrap();
        assert_eq!(g.order(), 1);
        let bad = schreier_generators(
            &[vec![0], vec![1]],
            &[vec![0, 1], vec![1, 1]],
            &[vec![0, 1], vec![1, 1]],
            &[],
        );
        assert!(bad.is_err());
    }
}
