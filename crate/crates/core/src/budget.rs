//! Enumeration caps and work counters shared by the search routines.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TUPLE_CAP: u64 = 2_000_000;
pub const DEFAULT_ELEM_CAP: u64 = 100_000;
pub const DEFAULT_NODE_CAP: u64 = 50_000_000;
/// Upper bound on the number of operation-table entries materialized for a
/// generated algebra.
pub const DEFAULT_TABLE_CAP: u64 = 50_000_000;

/// Caps for one computation, plus counters of the work actually done.
///
/// Exceeding a cap is reported as [`Error::ResourceLimit`]; no routine ever
/// truncates a search and returns a partial answer.
#[derive(Debug)]
pub struct Budget {
    pub tuple_cap: u64,
    pub elem_cap: u64,
    pub node_cap: u64,
    pub table_cap: u64,
    tuples: AtomicU64,
    elements: AtomicU64,
    nodes: AtomicU64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_TUPLE_CAP, DEFAULT_ELEM_CAP)
    }
}

impl Clone for Budget {
    fn clone(&self) -> Self {
        Budget {
            tuple_cap: self.tuple_cap,
            elem_cap: self.elem_cap,
            node_cap: self.node_cap,
            table_cap: self.table_cap,
            tuples: AtomicU64::new(self.tuples()),
            elements: AtomicU64::new(self.elements()),
            nodes: AtomicU64::new(self.nodes()),
        }
    }
}

/// Snapshot of the work counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Usage {
    pub tuples: u64,
    pub elements: u64,
    pub nodes: u64,
}

impl Budget {
    pub fn new(tuple_cap: u64, elem_cap: u64) -> Self {
        Budget {
            tuple_cap,
            elem_cap,
            node_cap: DEFAULT_NODE_CAP,
            table_cap: DEFAULT_TABLE_CAP,
            tuples: AtomicU64::new(0),
            elements: AtomicU64::new(0),
            nodes: AtomicU64::new(0),
        }
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn with_table_cap(mut self, cap: u64) -> Self {
        self.table_cap = cap;
        self
    }

    pub fn usage(&self) -> Usage {
        Usage {
            tuples: self.tuples(),
            elements: self.elements(),
            nodes: self.nodes(),
        }
    }

    pub fn tuples(&self) -> u64 {
        self.tuples.load(Ordering::Relaxed)
    }

    pub fn elements(&self) -> u64 {
        self.elements.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Fails unless `count` tuples fit under the tuple cap.
    pub(crate) fn check_tuples(&self, count: Option<u64>) -> Result<u64> {
        match count {
            Some(c) if c <= self.tuple_cap => Ok(c),
            _ => Err(Error::limit("tuple enumeration", self.tuple_cap)),
        }
    }

    pub(crate) fn add_tuples(&self, n: u64) {
        self.tuples.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_elements(&self, n: u64) {
        self.elements.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn add_nodes(&self, n: u64) {
        self.nodes.fetch_add(n, Ordering::Relaxed);
    }
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}
