use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use congkit::finite::{families, fixtures, froidure_pin, monoid_from_elements, FiniteMonoid};
use congkit::Presentation;

/// Where a finite monoid comes from.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct MonoidSource {
    /// Multiplication table file
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Transformation or matrix generator file
    #[arg(long)]
    pub gens: Option<PathBuf>,
    /// Built-in family, e.g. `catalan:4`, `full:3`, `matrices:2:3` or
    /// `matrices-det:7:2:0,1`
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct MonoidOptions {
    #[command(flatten)]
    pub source: MonoidSource,
    /// Read the generator file as the complete list of elements
    #[arg(long)]
    pub elements: bool,
    /// Abort if the monoid has more elements than this
    #[arg(long)]
    pub max_size: Option<usize>,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn presentation(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

impl MonoidOptions {
    pub fn load(&self) -> Result<FiniteMonoid> {
        let s = &self.source;
        if let Some(path) = &s.table {
            return fixtures::monoid_from_table_file(&read(path)?, true)
                .with_context(|| format!("in {}", path.display()));
        }
        if let Some(path) = &s.gens {
            return fixtures::monoid_from_generator_file(&read(path)?, self.elements, self.max_size)
                .with_context(|| format!("in {}", path.display()));
        }
        family(s.family.as_deref().unwrap_or_default(), self.max_size)
    }
}

fn number<T: std::str::FromStr>(field: Option<&str>, spec: &str) -> Result<T> {
    let Some(field) = field else {
        bail!(congkit::Error::input(format!("family '{spec}' is missing a parameter")));
    };
    field
        .parse()
        .map_err(|_| congkit::Error::input(format!("bad parameter '{field}' in family '{spec}'")).into())
}

pub const FAMILIES: &str = "catalan:n, order-preserving:n, full:n, symmetric:n, inverse:n, partial:n, \
     matrices:p:d, matrices-det:p:d:d1,d2,..";

pub fn family(spec: &str, max_size: Option<usize>) -> Result<FiniteMonoid> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let gens = match name {
        "catalan" => families::catalan_monoid(number(parts.next(), spec)?),
        "order-preserving" => families::order_preserving_monoid(number(parts.next(), spec)?),
        "full" => families::full_transformation_monoid(number(parts.next(), spec)?),
        "symmetric" => families::symmetric_group(number(parts.next(), spec)?),
        "inverse" => families::symmetric_inverse_monoid(number(parts.next(), spec)?),
        "partial" => families::partial_transformation_monoid(number(parts.next(), spec)?),
        "matrices" | "matrices-det" => {
            let p: u32 = number(parts.next(), spec)?;
            let d: usize = number(parts.next(), spec)?;
            if !(2..=13).contains(&p) || (2..p).any(|q| p % q == 0) {
                bail!(congkit::Error::input(format!("field size {p} is not a prime up to 13")));
            }
            if d == 0 || (p as f64).powi((d * d) as i32) > 1e7 {
                bail!(congkit::Error::input(format!("{p}^({d}x{d}) matrices is out of range")));
            }
            let ms = if name == "matrices" {
                families::all_matrices(p, d)
            } else {
                let dets = parts
                    .next()
                    .unwrap_or_default()
                    .split(',')
                    .map(|x| number(Some(x), spec))
                    .collect::<Result<Vec<u32>>>()?;
                families::matrices_with_determinant(p, d, &dets)
            };
            return Ok(monoid_from_elements(&ms)?);
        }
        _ => bail!(congkit::Error::input(format!(
            "unknown family '{spec}'; known: {FAMILIES}"
        ))),
    };
    Ok(froidure_pin(&gens, max_size)?)
}
