//! Name-keyed registries of interchangeable strategies.
//!
//! Min-cost flow algorithms, equilibrium solvers and game reductions are each
//! a family of trait objects selected at runtime by name (from options or
//! CLI flags).

use crate::error::{Error, Result};

pub trait Named {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str {
        ""
    }
}

pub struct Registry<T: ?Sized + Named> {
    what: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    /// `what` names the family in error messages ("reduction", "solver", ...).
    pub fn new(what: &'static str) -> Self {
        Registry {
            what,
            entries: Vec::new(),
        }
    }

    pub fn register(&mut self, item: Box<T>) -> Result<()> {
        if self.get(item.name()).is_some() {
            return Err(Error::InvalidInput(format!(
                "{} '{}' is already registered",
                self.what,
                item.name()
            )));
        }
        self.entries.push(item);
        Ok(())
    }

    pub fn with(mut self, item: Box<T>) -> Self {
        self.register(item).expect("duplicate builtin registration");
        self
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn lookup(&self, name: &str) -> Result<&T> {
        self.get(name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown {} '{name}' (known: {})",
                self.what,
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }
}
