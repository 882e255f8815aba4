//! Name-keyed registries of interchangeable algorithm implementations.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Strategy<F> {
    pub name: &'static str,
    pub description: &'static str,
    pub factory: F,
}

/// A list of strategies implementing one role; the first entry is the
/// default.
#[derive(Debug, Clone)]
pub struct Registry<F: Copy> {
    role: &'static str,
    entries: Vec<Strategy<F>>,
}

impl<F: Copy> Registry<F> {
    pub fn new(role: &'static str) -> Self {
        Registry {
            role,
            entries: Vec::new(),
        }
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, name: &'static str, description: &'static str, factory: F) -> &mut Self {
        let s = Strategy {
            name,
            description,
            factory,
        };
        match self.entries.iter_mut().find(|e| e.name == name) {
            Some(e) => *e = s,
            None => self.entries.push(s),
        }
        self
    }

    pub fn role(&self) -> &'static str {
        self.role
    }

    pub fn get(&self, name: &str) -> Result<F> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.factory)
            .ok_or_else(|| Error::UnknownStrategy {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn default_name(&self) -> &'static str {
        self.entries.first().map(|e| e.name).unwrap_or("")
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn entries(&self) -> &[Strategy<F>] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_replace() {
        let mut r: Registry<fn() -> u32> = Registry::new("numbers");
        r.register("one", "1", || 1).register("two", "2", || 2);
        assert_eq!(r.default_name(), "one");
        assert_eq!((r.get("two").unwrap())(), 2);
        r.register("two", "still 2", || 22);
        assert_eq!(r.names(), vec!["one", "two"]);
        assert_eq!((r.get("two").unwrap())(), 22);
        match r.get("three") {
            Err(Error::UnknownStrategy { available, .. }) => assert_eq!(available, "one, two"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
