use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of some finite monoid that can be multiplied.
pub trait Element: Clone + Eq + Hash + Send + Sync {
    fn product(&self, other: &Self) -> Self;

    /// The identity with the same shape (degree, dimension, table).
    fn one(&self) -> Self;

    /// Used to order candidates when extracting generators from an
    /// explicit element list; larger first.
    fn rank(&self) -> usize {
        0
    }

    /// The element as a transformation of a fixed finite set, acting on the
    /// right, if the kind has a faithful representation of that form.
    fn transformation(&self) -> Option<Vec<u32>> {
        None
    }
}

/// A transformation of `{0, .., d - 1}` given by its image list; products
/// compose left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Vec<u32>);

impl Transformation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::input("transformation of degree 0"));
        }
        if let Some(&x) = images.iter().find(|&&x| x as usize >= d) {
            return Err(Error::input(format!("image {x} out of range for degree {d}")));
        }
        Ok(Transformation(images))
    }

    pub fn identity(d: usize) -> Self {
        Transformation((0..d as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .filter(|&&x| !std::mem::replace(&mut seen[x as usize], true))
            .count()
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.0)
    }
}

impl Element for Transformation {
    fn product(&self, other: &Self) -> Self {
        Transformation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    fn one(&self) -> Self {
        Transformation::identity(self.0.len())
    }

    fn rank(&self) -> usize {
        self.image_size()
    }

    fn transformation(&self) -> Option<Vec<u32>> {
        Some(self.0.clone())
    }
}

/// A square matrix over the prime field `F_p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    p: u32,
    d: usize,
    entries: Vec<u32>,
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

impl Matrix {
    pub fn new(p: u32, d: usize, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || p > 13 {
            return Err(Error::input(format!("field size {p} is not a prime up to 13")));
        }
        if d == 0 || entries.len() != d * d {
            return Err(Error::input("matrix entries do not form a non-empty square"));
        }
        if entries.iter().any(|&x| x >= p) {
            return Err(Error::input(format!("matrix entry out of range for F_{p}")));
        }
        Ok(Matrix { p, d, entries })
    }

    pub fn identity(p: u32, d: usize) -> Self {
        let entries = (0..d * d).map(|i| u32::from(i / d == i % d)).collect();
        Matrix { p, d, entries }
    }

    pub fn field_size(&self) -> u32 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn inverse_mod(&self, x: u32) -> u32 {
        (1..self.p)
            .find(|&y| x * y % self.p == 1)
            .expect("non-zero element of a field")
    }

    /// Row echelon form; returns the rank and the determinant.
    fn eliminate(&self) -> (usize, u32) {
        let (p, d) = (self.p, self.d);
        let mut a = self.entries.clone();
        let mut det = 1u32;
        let mut rank = 0;
        for col in 0..d {
            let Some(pivot) = (rank..d).find(|&r| a[r * d + col] != 0) else {
                det = 0;
                continue;
            };
            if pivot != rank {
                for c in 0..d {
                    a.swap(pivot * d + c, rank * d + c);
                }
                det = (p - det) % p;
            }
            let pv = a[rank * d + col];
            det = det * pv % p;
            let inv = self.inverse_mod(pv);
            for r in 0..d {
                if r != rank && a[r * d + col] != 0 {
                    let f = a[r * d + col] * inv % p;
                    for c in 0..d {
                        a[r * d + c] = (a[r * d + c] + p * p - f * a[rank * d + c] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank < d { 0 } else { det })
    }

    pub fn matrix_rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn determinant(&self) -> u32 {
        self.eliminate().1
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}{:?}", self.p, self.entries.chunks(self.d).collect::<Vec<_>>())
    }
}

impl Element for Matrix {
    fn product(&self, other: &Self) -> Self {
        let d = self.d;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.entries[i * d + k];
                if x != 0 {
                    for j in 0..d {
                        entries[i * d + j] += x * other.entries[k * d + j];
                    }
                }
            }
        }
        for e in &mut entries {
            *e %= self.p;
        }
        Matrix { p: self.p, d, entries }
    }

    fn one(&self) -> Self {
        Matrix::identity(self.p, self.d)
    }

    fn rank(&self) -> usize {
        self.matrix_rank()
    }

    /// The action `v -> vA` on the `p^d` row vectors, numbered in base `p`
    /// with the first coordinate most significant.
    fn transformation(&self) -> Option<Vec<u32>> {
        let (p, d) = (self.p, self.d);
        let count = (p as usize).pow(d as u32);
        let mut images = Vec::with_capacity(count);
        let mut v = vec![0u32; d];
        for code in 0..count {
            let mut c = code;
            for i in (0..d).rev() {
                v[i] = (c % p as usize) as u32;
                c /= p as usize;
            }
            let mut image = 0u32;
            for j in 0..d {
                let x: u32 = (0..d).map(|i| v[i] * self.entries[i * d + j]).sum::<u32>() % p;
                image = image * p + x;
            }
            images.push(image);
        }
        Some(images)
    }
}

/// A multiplication table on `{0, .., n - 1}` with identity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    n: usize,
    data: Vec<u32>,
}

impl MultiplicationTable {
    pub fn new(n: usize, data: Vec<u32>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::input("multiplication table is not a non-empty square"));
        }
        if data.iter().any(|&x| x as usize >= n) {
            return Err(Error::input("multiplication table entry out of range"));
        }
        let t = MultiplicationTable { n, data };
        if (0..n as u32).any(|x| t.get(0, x) != x || t.get(x, 0) != x) {
            return Err(Error::input("element 0 of the multiplication table is not an identity"));
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.data[x as usize * self.n + y as usize]
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n as u32;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.get(self.get(x, y), z) == self.get(x, self.get(y, z)))))
    }

    pub fn elements(self: &Arc<Self>) -> Vec<TableElement> {
        (0..self.n as u32)
            .map(|index| TableElement {
                table: Arc::clone(self),
                index,
            })
            .collect()
    }
}

/// An element of a monoid given by a multiplication table.
#[derive(Clone)]
pub struct TableElement {
    table: Arc<MultiplicationTable>,
    index: u32,
}

impl TableElement {
    pub fn index(&self) -> u32 {
        self.index
    }
}

impl PartialEq for TableElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && Arc::ptr_eq(&self.table, &other.table)
    }
}

impl Eq for TableElement {}

impl Hash for TableElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Debug for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index)
    }
}

impl Element for TableElement {
    fn product(&self, other: &Self) -> Self {
        TableElement {
            table: Arc::clone(&self.table),
            index: self.table.get(self.index, other.index),
        }
    }

    fn one(&self) -> Self {
        TableElement {
            table: Arc::clone(&self.table),
            index: 0,
        }
    }
}
