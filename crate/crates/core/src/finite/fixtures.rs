//! Text formats for finite monoids.
//!
//! * multiplication table: a line `n`, then `n` rows of `n` indices, with
//!   element 0 the identity;
//! * transformations: one image list per line;
//! * matrices: a header `p d`, then `d` rows of `d` entries per matrix.
//!
//! Blank lines and `#` comments are ignored everywhere.

use super::element::{Matrix, MultiplicationTable, Transformation};
use super::{froidure_pin, monoid_from_elements, monoid_from_table, FiniteMonoid};
use crate::error::{Error, Result};

fn rows(text: &str) -> Result<Vec<(usize, Vec<u32>)>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::parse(line, format!("not a number: '{tok}'")))
                })
                .collect::<Result<Vec<u32>>>()
                .map(|r| (line, r))
        })
        .collect()
}

pub fn parse_table(text: &str) -> Result<MultiplicationTable> {
    let rows = rows(text)?;
    let Some((line, header)) = rows.first() else {
        return Err(Error::parse(1, "empty table"));
    };
    if header.len() != 1 {
        return Err(Error::parse(*line, "expected the table size on its own line"));
    }
    let n = header[0] as usize;
    if rows.len() != n + 1 {
        return Err(Error::parse(
            *line,
            format!("expected {n} rows, found {}", rows.len() - 1),
        ));
    }
    let mut data = Vec::with_capacity(n * n);
    for (line, r) in &rows[1..] {
        if r.len() != n {
            return Err(Error::parse(*line, format!("expected {n} entries")));
        }
        data.extend_from_slice(r);
    }
    MultiplicationTable::new(n, data)
}

pub fn serialize_table(monoid: &FiniteMonoid) -> String {
    let n = monoid.size();
    let t = monoid.multiplication_table();
    let mut out = format!("{n}\n");
    for row in t.chunks(n) {
        out.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_transformations(text: &str) -> Result<Vec<Transformation>> {
    let rows = rows(text)?;
    let degree = rows.first().map(|r| r.1.len());
    rows.into_iter()
        .map(|(line, r)| {
            if Some(r.len()) != degree {
                return Err(Error::parse(line, "transformations of different degrees"));
            }
            Transformation::new(r).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>> {
    let rows = rows(text)?;
    let Some((line, header)) = rows.first() else {
        return Err(Error::parse(1, "empty matrix file"));
    };
    let [p, d] = header[..] else {
        return Err(Error::parse(*line, "expected a header 'p d'"));
    };
    let d = d as usize;
    let body = &rows[1..];
    if d == 0 || body.len() % d != 0 {
        return Err(Error::parse(*line, "number of rows is not a multiple of the dimension"));
    }
    body.chunks(d)
        .map(|chunk| {
            let mut entries = Vec::with_capacity(d * d);
            for (line, r) in chunk {
                if r.len() != d {
                    return Err(Error::parse(*line, format!("expected {d} entries")));
                }
                entries.extend_from_slice(r);
            }
            Matrix::new(p, d, entries).map_err(|e| Error::parse(chunk[0].0, e.to_string()))
        })
        .collect()
}

/// Whether a generator file holds matrices: its first line has exactly two
/// entries and the first is at least 2, which no image list of degree 2
/// can have.
fn looks_like_matrices(text: &str) -> Result<bool> {
    Ok(matches!(rows(text)?.first(), Some((_, r)) if r.len() == 2 && r[0] >= 2))
}

/// The monoid of a transformation or matrix file, read as generators, or
/// (with `explicit`) as the complete list of elements.
pub fn monoid_from_generator_file(text: &str, explicit: bool, max_size: Option<usize>) -> Result<FiniteMonoid> {
    if looks_like_matrices(text)? {
        let ms = parse_matrices(text)?;
        if explicit {
            monoid_from_elements(&ms)
        } else {
            froidure_pin(&ms, max_size)
        }
    } else {
        let ts = parse_transformations(text)?;
        if explicit {
            monoid_from_elements(&ts)
        } else {
            froidure_pin(&ts, max_size)
        }
    }
}

pub fn monoid_from_table_file(text: &str, check_associative: bool) -> Result<FiniteMonoid> {
    let table = parse_table(text)?;
    if check_associative && !table.is_associative() {
        return Err(Error::input("multiplication table is not associative"));
    }
    monoid_from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let t = parse_table("# two elements\n2\n0 1\n1 1\n").unwrap();
        assert_eq!(t.size(), 2);
        assert!(matches!(parse_table("2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        let ts = parse_transformations("1 2 0\n0 0 2\n").unwrap();
        assert_eq!(ts.len(), 2);
        assert!(parse_transformations("1 0\n0 0 1\n").is_err());
        let ms = parse_matrices("2 2\n1 1\n0 1\n\n0 1\n1 0\n").unwrap();
        assert_eq!(ms.len(), 2);
        assert!(looks_like_matrices("2 2\n1 1\n0 1\n").unwrap());
        assert!(!looks_like_matrices("1 0\n0 0\n").unwrap());
        let m = monoid_from_generator_file("1 0\n0 0\n", false, None).unwrap();
        assert_eq!(m.size(), 4);
        let round = monoid_from_table_file(&serialize_table(&m), true).unwrap();
        assert_eq!(round.size(), 4);
    }
}
