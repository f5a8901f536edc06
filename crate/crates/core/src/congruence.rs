//! Congruent closure `[S]` of a system: the least set of equations containing
//! `S` and closed under reflexivity, symmetry, transitivity and application of
//! operations. Variables behave as uninterpreted constants, so ordinary
//! congruence closure over the subterms of `S` and the query decides it.

use std::collections::HashMap;

use crate::error::Result;
use crate::term::{Equation, System, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Var(String),
    App(String, Vec<usize>),
}

/// Hash-consed subterms with a union-find partition closed under congruence.
#[derive(Debug, Clone, Default)]
pub struct TermUniverse {
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
    parent: Vec<usize>,
}

impl TermUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `t` and all its subterms.
    pub fn intern(&mut self, t: &Term) -> usize {
        let node = match t {
            Term::Var(v) => Node::Var(v.clone()),
            Term::App(f, args) => Node::App(f.clone(), args.iter().map(|a| self.intern(a)).collect()),
        };
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.ids.insert(node, id);
        self.parent.push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }

    /// Merges applications with equal heads and equivalent arguments until
    /// nothing changes.
    fn close(&mut self) {
        loop {
            let mut changed = false;
            let mut sigs: HashMap<(String, Vec<usize>), usize> = HashMap::new();
            for id in 0..self.nodes.len() {
                let Node::App(f, args) = self.nodes[id].clone() else { continue };
                let key = (f, args.iter().map(|&a| self.find(a)).collect());
                match sigs.get(&key) {
                    Some(&other) => changed |= self.union(id, other),
                    None => {
                        sigs.insert(key, id);
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Adds the equations of `eqs` as generators and closes.
    pub fn assert_all<'a>(&mut self, eqs: impl IntoIterator<Item = &'a Equation>) {
        for eq in eqs {
            let (a, b) = (self.intern(&eq.lhs), self.intern(&eq.rhs));
            self.union(a, b);
        }
        self.close();
    }

    /// Whether `s` and `t` are in one class. Both must already be interned
    /// and the partition closed.
    pub fn equivalent(&mut self, s: &Term, t: &Term) -> bool {
        let (a, b) = (self.intern(s), self.intern(t));
        self.close();
        self.find(a) == self.find(b)
    }
}

/// Whether `query` belongs to `[S]`.
pub fn congruent_closure_contains(sys: &System, query: &Equation) -> Result<bool> {
    query.lhs.check(&sys.language, &sys.variables)?;
    query.rhs.check(&sys.language, &sys.variables)?;
    let mut u = TermUniverse::new();
    // Intern the query first so the closure sees the whole universe at once.
    u.intern(&query.lhs);
    u.intern(&query.rhs);
    u.assert_all(&sys.equations);
    Ok(u.equivalent(&query.lhs, &query.rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_equation, parse_system};
    use crate::term::Language;

    fn contains(lang: &Language, sys: &str, q: &str) -> bool {
        let s = parse_system(sys, lang).unwrap();
        let q = parse_equation(q, lang, &s.variables).unwrap();
        congruent_closure_contains(&s, &q).unwrap()
    }

    #[test]
    fn axioms() {
        let sg = Language::semigroup();
        assert!(contains(&sg, "vars: x,y\neq: x*y = y", "y = x*y"));
        assert!(contains(&sg, "vars: x,y\neq: x = y", "x = x"));
        assert!(contains(&sg, "vars: x,y,u,v\neq: x = u\neq: y = v", "x*y = u*v"));
        assert!(contains(&sg, "vars: x,y,z\neq: x = y\neq: y = z", "z*z = x*x"));
    }

    #[test]
    fn no_substitution() {
        let ag = Language::additive_group();
        assert!(!contains(&ag, "vars: x,y\neq: x + y = 0", "x = 0"));
        assert!(!contains(&ag, "vars: x,y\neq: x + y = 0", "x = y"));
        // An instance of an equation is not derivable either.
        let sg = Language::semigroup();
        assert!(!contains(&sg, "vars: x,y\neq: x*y = y*x", "x*x = x*x*x"));
    }

    #[test]
    fn congruence_propagates_upwards() {
        let u = Language::unar();
        assert!(contains(&u, "vars: x,y\neq: f(x) = y\neq: f(y) = x", "f(f(f(x))) = y"));
    }
}
