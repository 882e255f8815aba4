//! Generating sets of standard transformation and matrix monoids.

use super::element::{Matrix, Transformation};

fn t(images: Vec<u32>) -> Transformation {
    Transformation::new(images).expect("valid images")
}

fn identity_if_empty(mut gens: Vec<Transformation>, n: usize) -> Vec<Transformation> {
    if gens.is_empty() {
        gens.push(Transformation::identity(n));
    }
    gens
}

/// `i + 1 -> i`, fixing everything else.
fn lower(n: usize, i: usize) -> Transformation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images[i + 1] = i as u32;
    t(images)
}

/// `i -> i + 1`, fixing everything else.
fn raise(n: usize, i: usize) -> Transformation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images[i] = i as u32 + 1;
    t(images)
}

/// The order-preserving, order-decreasing transformations of `n` points.
pub fn catalan_monoid(n: usize) -> Vec<Transformation> {
    identity_if_empty((0..n.saturating_sub(1)).map(|i| lower(n, i)).collect(), n.max(1))
}

/// All order-preserving transformations of `n` points.
pub fn order_preserving_monoid(n: usize) -> Vec<Transformation> {
    let gens = (0..n.saturating_sub(1))
        .flat_map(|i| [lower(n, i), raise(n, i)])
        .collect();
    identity_if_empty(gens, n.max(1))
}

fn transposition(n: usize) -> Transformation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    if n > 1 {
        images.swap(0, 1);
    }
    t(images)
}

fn cycle(n: usize) -> Transformation {
    t((0..n as u32).map(|i| (i + 1) % n as u32).collect())
}

pub fn symmetric_group(n: usize) -> Vec<Transformation> {
    vec![transposition(n), cycle(n)]
}

pub fn full_transformation_monoid(n: usize) -> Vec<Transformation> {
    let mut gens = symmetric_group(n);
    if n > 1 {
        gens.push(lower(n, 0));
    }
    gens
}

/// Extends a transformation of `n` points by a fixed sink point `n`.
fn with_sink(x: &Transformation) -> Transformation {
    let n = x.degree() as u32;
    t(x.images().iter().copied().chain([n]).collect())
}

/// The identity on points `1..n`, sending 0 to the sink.
fn partial_identity(n: usize) -> Transformation {
    let mut images: Vec<u32> = (0..=n as u32).collect();
    images[0] = n as u32;
    t(images)
}

/// Partial permutations of `n` points, on `n + 1` points with a sink.
pub fn symmetric_inverse_monoid(n: usize) -> Vec<Transformation> {
    let mut gens: Vec<Transformation> = symmetric_group(n).iter().map(with_sink).collect();
    gens.push(partial_identity(n));
    gens
}

/// Partial transformations of `n` points, on `n + 1` points with a sink.
pub fn partial_transformation_monoid(n: usize) -> Vec<Transformation> {
    let mut gens: Vec<Transformation> = full_transformation_monoid(n).iter().map(with_sink).collect();
    gens.push(partial_identity(n));
    gens
}

/// Every `d x d` matrix over `F_p`.
pub fn all_matrices(p: u32, d: usize) -> Vec<Matrix> {
    let cells = d * d;
    let count = (p as usize).pow(cells as u32);
    (0..count)
        .map(|mut code| {
            let mut entries = vec![0u32; cells];
            for e in entries.iter_mut().rev() {
                *e = (code % p as usize) as u32;
                code /= p as usize;
            }
            Matrix::new(p, d, entries).expect("valid matrix")
        })
        .collect()
}

/// The matrices whose determinant lies in `dets`.
pub fn matrices_with_determinant(p: u32, d: usize, dets: &[u32]) -> Vec<Matrix> {
    all_matrices(p, d)
        .into_iter()
        .filter(|m| dets.contains(&m.determinant()))
        .collect()
}
