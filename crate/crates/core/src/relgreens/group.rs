//! Relative R-class representatives of `M x M` modulo the diagonal, found
//! with permutation groups rather than by searching the pair graph.
//!
//! Pairs are transformations of `2d` points, where `d` is the degree of a
//! faithful transformation representation of `M`. Two pairs are candidates
//! for the same class only if they have the same kernel and their images
//! lie in one strongly connected component of the action of the diagonal on
//! image sets; the candidates are then told apart by membership of an
//! induced permutation in the stabiliser group of that component.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::wordgraph::WordGraph;

use super::perm::{schreier_generators, Perm, StabiliserGroup};
use super::scc::strongly_connected_components;
use super::RelClassIndex;

struct Component {
    base: Vec<u32>,
    // position of each base point in `base`
    position: HashMap<u32, u32>,
    group: StabiliserGroup,
}

struct Representative {
    pair: (u32, u32),
    // a preimage, under the representative, of each base point
    preimage: Vec<u32>,
}

pub(crate) struct GroupClassifier<'a> {
    monoid: &'a FiniteMonoid,
    table: &'a [u32],
    d: usize,
    repr: Vec<Vec<u32>>,
    orbit_index: HashMap<Vec<u32>, u32>,
    component_of: Vec<u32>,
    // for each image set in the orbit, an element of M mapping it onto the
    // base of its component while inverting the trace from the base
    back: Vec<u32>,
    components: Vec<Component>,
    reps: Vec<Representative>,
    buckets: HashMap<(u32, Vec<u32>), Vec<u32>>,
}

fn image_set(t: &[u32]) -> Vec<u32> {
    let mut y = t.to_vec();
    y.sort_unstable();
    y.dedup();
    y
}

fn kernel(t: &[u32]) -> Vec<u32> {
    let mut label = HashMap::new();
    t.iter()
        .map(|x| {
            let next = label.len() as u32;
            *label.entry(*x).or_insert(next)
        })
        .collect()
}

fn compose(s: &[u32], t: &[u32]) -> Vec<u32> {
    s.iter().map(|&x| t[x as usize]).collect()
}

impl<'a> GroupClassifier<'a> {
    pub(crate) fn new(monoid: &'a FiniteMonoid) -> Result<Self> {
        let n = monoid.size();
        let m = monoid.generator_count();
        let table = monoid.multiplication_table();
        let (d, repr) = monoid.transformation_representation();
        let mut c = GroupClassifier {
            monoid,
            table,
            d,
            repr,
            orbit_index: HashMap::new(),
            component_of: Vec::new(),
            back: Vec::new(),
            components: Vec::new(),
            reps: Vec::new(),
            buckets: HashMap::new(),
        };
        if n == 0 {
            return Err(Error::input("empty monoid"));
        }
        let gen_elems: Vec<u32> = (0..m as u32).map(|a| monoid.right_mul(0, a)).collect();

        // image sets of all pairs: the orbit of the full set under the
        // generators (g, 1) and (1, g) of M x M
        let full: Vec<u32> = (0..2 * d as u32).collect();
        let mut orbit = vec![full.clone()];
        c.orbit_index.insert(full, 0);
        let mut i = 0;
        while i < orbit.len() {
            for &g in &gen_elems {
                for t in [c.pair_transformation(g, 0), c.pair_transformation(0, g)] {
                    let y = image_set(&compose(&orbit[i], &t));
                    if !c.orbit_index.contains_key(&y) {
                        c.orbit_index.insert(y.clone(), orbit.len() as u32);
                        orbit.push(y);
                    }
                }
            }
            i += 1;
        }

        // the action of the diagonal generators on the orbit
        let diag: Vec<Vec<u32>> = gen_elems.iter().map(|&g| c.pair_transformation(g, g)).collect();
        let k = orbit.len();
        let mut act = vec![0u32; k * m];
        for (o, y) in orbit.iter().enumerate() {
            for (a, t) in diag.iter().enumerate() {
                act[o * m + a] = c.orbit_index[&image_set(&compose(y, t))];
            }
        }
        c.component_of = strongly_connected_components(k, m, |v, a| act[v as usize * m + a]);
        let comps = c.component_of.iter().max().map_or(0, |&x| x as usize + 1);
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); comps];
        for (o, &s) in c.component_of.iter().enumerate() {
            members[s as usize].push(o as u32);
        }
        c.back = vec![0; k];

        for (s, mem) in members.iter().enumerate() {
            let base = mem[0];
            let inside = |o: u32| c.component_of[o as usize] == s as u32;
            // forward traces: base * u[o] = o
            let mut u: HashMap<u32, u32> = HashMap::from([(base, 0)]);
            let mut queue = vec![base];
            let mut qi = 0;
            while qi < queue.len() {
                let o = queue[qi];
                qi += 1;
                for a in 0..m {
                    let t = act[o as usize * m + a];
                    if inside(t) && !u.contains_key(&t) {
                        u.insert(t, monoid.right_mul(u[&o], a as u32));
                        queue.push(t);
                    }
                }
            }
            // backward words: o * w[o] = base
            let mut w: HashMap<u32, u32> = HashMap::from([(base, 0)]);
            let mut frontier = vec![base];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &target in &frontier {
                    for &o in mem {
                        if w.contains_key(&o) {
                            continue;
                        }
                        for a in 0..m {
                            if act[o as usize * m + a] == target {
                                w.insert(o, monoid.left_mul(w[&target], a as u32));
                                next.push(o);
                                break;
                            }
                        }
                    }
                }
                frontier = next;
            }
            let y0 = &orbit[base as usize];
            let mut sets = Vec::with_capacity(mem.len());
            let mut us = Vec::with_capacity(mem.len());
            let mut ubars = Vec::with_capacity(mem.len());
            for &o in mem {
                let (ui, wi) = (u[&o], w[&o]);
                // s = u w stabilises the base; u * (w s^(k-1)) is then the
                // identity on it, k being the order of s there
                let st = c.diagonal(c.product(ui, wi));
                let mut power = 0u32;
                let mut cur = st.clone();
                let mut order = 1;
                while y0.iter().any(|&q| cur[q as usize] != q) {
                    cur = compose(&cur, &st);
                    order += 1;
                }
                for _ in 0..order - 1 {
                    power = c.product(power, c.product(ui, wi));
                }
                let ubar = c.product(wi, power);
                c.back[o as usize] = ubar;
                sets.push(orbit[o as usize].clone());
                us.push(c.diagonal(ui));
                ubars.push(c.diagonal(ubar));
            }
            let group = schreier_generators(&sets, &us, &ubars, &diag)?;
            let position = y0.iter().enumerate().map(|(i, &q)| (q, i as u32)).collect();
            c.components.push(Component {
                base: y0.clone(),
                position,
                group,
            });
        }
        Ok(c)
    }

    #[inline]
    fn product(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.monoid.size() + y as usize]
    }

    fn pair_transformation(&self, x: u32, y: u32) -> Vec<u32> {
        let d = self.d as u32;
        self.repr[x as usize]
            .iter()
            .copied()
            .chain(self.repr[y as usize].iter().map(|&q| q + d))
            .collect()
    }

    fn diagonal(&self, x: u32) -> Vec<u32> {
        self.pair_transformation(x, x)
    }

    /// The base set of each component with its stabiliser group.
    pub(crate) fn into_groups(self) -> Vec<(Vec<u32>, StabiliserGroup)> {
        self.components.into_iter().map(|c| (c.base, c.group)).collect()
    }

    /// The index of the representative of the class of `(x, y)`, adding a
    /// new representative if there is none yet.
    pub(crate) fn classify_or_insert(&mut self, pair: (u32, u32)) -> (u32, bool) {
        let t = self.pair_transformation(pair.0, pair.1);
        let o = self.orbit_index[&image_set(&t)];
        let s = self.component_of[o as usize];
        let ub = self.back[o as usize];
        let moved = (self.product(pair.0, ub), self.product(pair.1, ub));
        let tm = self.pair_transformation(moved.0, moved.1);
        let key = (s, kernel(&tm));
        let comp = &self.components[s as usize];
        if let Some(bucket) = self.buckets.get(&key) {
            for &l in bucket {
                let pre = &self.reps[l as usize].preimage;
                let images: Option<Vec<u32>> = pre
                    .iter()
                    .map(|&q| comp.position.get(&tm[q as usize]).copied())
                    .collect();
                if let Some(Ok(sigma)) = images.map(Perm::new) {
                    if comp.group.contains(&sigma) {
                        return (l, false);
                    }
                }
            }
        }
        let mut preimage = vec![u32::MAX; comp.base.len()];
        for (q, &x) in tm.iter().enumerate() {
            if let Some(&pos) = comp.position.get(&x) {
                if preimage[pos as usize] == u32::MAX {
                    preimage[pos as usize] = q as u32;
                }
            }
        }
        debug_assert!(!preimage.contains(&u32::MAX));
        let l = self.reps.len() as u32;
        self.reps.push(Representative { pair: moved, preimage });
        self.buckets.entry(key).or_default().push(l);
        (l, true)
    }
}

pub(crate) fn group_r_classes(monoid: &FiniteMonoid, with_class_map: bool) -> Result<RelClassIndex> {
    let mut c = GroupClassifier::new(monoid)?;
    let m = monoid.generator_count();
    c.classify_or_insert((0, 0));
    let mut i = 0;
    while i < c.reps.len() {
        let (x, y) = c.reps[i].pair;
        for a in 0..m as u32 {
            c.classify_or_insert((monoid.left_mul(x, a), y));
            c.classify_or_insert((x, monoid.left_mul(y, a)));
        }
        i += 1;
    }
    let count = c.reps.len();
    let mut table = Vec::with_capacity(count * m);
    for i in 0..count {
        let (x, y) = c.reps[i].pair;
        for a in 0..m as u32 {
            let (l, new) = c.classify_or_insert((monoid.left_mul(x, a), monoid.left_mul(y, a)));
            if new {
                return Err(Error::input("left action of the diagonal left the representatives"));
            }
            table.push(l);
        }
    }
    let n = monoid.size();
    let class_of = if with_class_map {
        let mut map = Vec::with_capacity(n * n);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let (l, new) = c.classify_or_insert((x, y));
                if new {
                    return Err(Error::input("pair outside every discovered class"));
                }
                map.push(l);
            }
        }
        Some(map)
    } else {
        None
    };
    Ok(RelClassIndex {
        n,
        representatives: c.reps.iter().map(|r| r.pair).collect(),
        word_graph: WordGraph::from_table(m, count, &table)?,
        class_of,
    })
}
