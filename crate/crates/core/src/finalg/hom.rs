//! Backtracking search for homomorphisms between finite algebras.

use std::ops::ControlFlow;

use super::{Elem, FiniteAlgebra};
use crate::budget::Budget;
use crate::error::{Error, Result};

const NONE: Elem = Elem::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: FiniteAlgebra,
    pub target: FiniteAlgebra,
    pub map: Vec<Elem>,
}

impl Homomorphism {
    /// Checks every table row of the source directly.
    pub fn is_valid(&self) -> bool {
        is_homomorphism(&self.source, &self.target, &self.map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.map.iter().all(|&b| !std::mem::replace(&mut seen[b as usize], true))
    }
}

/// Brute check that `map` preserves every operation of `b` into `a`.
pub fn is_homomorphism(b: &FiniteAlgebra, a: &FiniteAlgebra, map: &[Elem]) -> bool {
    let Ok(sym_map) = b.symbol_map(a) else { return false };
    if map.len() != b.size() || map.iter().any(|&x| x as usize >= a.size()) {
        return false;
    }
    for (id, s) in b.language().symbols().iter().enumerate() {
        let mut args = vec![0 as Elem; s.arity];
        let mut images = vec![0 as Elem; s.arity];
        loop {
            for (img, &x) in images.iter_mut().zip(&args) {
                *img = map[x as usize];
            }
            if map[b.apply(id, &args) as usize] != a.apply(sym_map[id], &images) {
                return false;
            }
            if !super::advance(&mut args, b.size() as Elem) {
                break;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomMode {
    All,
    Injective,
    Bijective,
}

struct Search<'a> {
    b: &'a FiniteAlgebra,
    a: &'a FiniteAlgebra,
    sym_map: Vec<usize>,
    arities: Vec<usize>,
    map: Vec<Elem>,
    used_by: Vec<Elem>,
    injective: bool,
    trail: Vec<Elem>,
    assigned: Vec<Elem>,
    budget: &'a Budget,
    nodes: u64,
}

impl<'a> Search<'a> {
    /// Assigns `x -> y` and everything it forces. Returns false on conflict;
    /// the caller undoes via the trail either way.
    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        let mut queue = vec![(x, y)];
        let mut args = Vec::new();
        let mut images = Vec::new();
        while let Some((x, y)) = queue.pop() {
            let cur = self.map[x as usize];
            if cur != NONE {
                if cur != y {
                    return false;
                }
                continue;
            }
            if self.injective {
                if self.used_by[y as usize] != NONE {
                    return false;
                }
                self.used_by[y as usize] = x;
            }
            self.map[x as usize] = y;
            self.trail.push(x);
            self.assigned.push(x);
            // Rows with every argument assigned and `x` among them.
            for sym in 0..self.arities.len() {
                let arity = self.arities[sym];
                if arity == 0 {
                    continue;
                }
                let n = self.assigned.len();
                let others = (n as u64).pow(arity as u32 - 1);
                for pos in 0..arity {
                    for code in 0..others {
                        args.clear();
                        let mut rest = code;
                        for p in (0..arity).rev() {
                            if p == pos {
                                args.push(x);
                            } else {
                                args.push(self.assigned[(rest % n as u64) as usize]);
                                rest /= n as u64;
                            }
                        }
                        args.reverse();
                        images.clear();
                        images.extend(args.iter().map(|&e| self.map[e as usize]));
                        let r = self.b.apply(sym, &args);
                        let want = self.a.apply(self.sym_map[sym], &images);
                        let have = self.map[r as usize];
                        if have == NONE {
                            queue.push((r, want));
                        } else if have != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            let y = self.map[x as usize];
            if self.injective {
                self.used_by[y as usize] = NONE;
            }
            self.map[x as usize] = NONE;
            self.assigned.pop();
        }
    }

    fn dfs<F: FnMut(&[Elem]) -> ControlFlow<()>>(&mut self, next: usize, visit: &mut F) -> Result<ControlFlow<()>> {
        let mut pos = next;
        while pos < self.map.len() && self.map[pos] != NONE {
            pos += 1;
        }
        if pos == self.map.len() {
            return Ok(visit(&self.map));
        }
        for y in 0..self.a.size() as Elem {
            self.nodes += 1;
            if self.nodes > self.budget.node_cap {
                return Err(Error::limit("homomorphism search nodes", self.budget.node_cap));
            }
            let mark = self.trail.len();
            if self.assign(pos as Elem, y) {
                if let ControlFlow::Break(()) = self.dfs(pos + 1, visit)? {
                    self.undo_to(mark);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo_to(mark);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on each homomorphism `b -> a` in lexicographic order of the
/// map array, stopping when it breaks.
pub fn for_each_hom(
    b: &FiniteAlgebra,
    a: &FiniteAlgebra,
    mode: HomMode,
    budget: &Budget,
    mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>,
) -> Result<()> {
    let sym_map = b.symbol_map(a)?;
    if mode == HomMode::Bijective && a.size() != b.size() {
        return Ok(());
    }
    if mode != HomMode::All && b.size() > a.size() {
        return Ok(());
    }
    let mut s = Search {
        b,
        a,
        arities: b.language().symbols().iter().map(|s| s.arity).collect(),
        sym_map,
        map: vec![NONE; b.size()],
        used_by: vec![NONE; a.size()],
        injective: mode != HomMode::All,
        trail: Vec::new(),
        assigned: Vec::new(),
        budget,
        nodes: 0,
    };
    for (id, _) in b.language().constants() {
        let (x, y) = (b.constant(id), a.constant(s.sym_map[id]));
        if !s.assign(x, y) {
            budget.add_nodes(1);
            return Ok(());
        }
    }
    let result = s.dfs(0, &mut visit);
    budget.add_nodes(s.nodes);
    result.map(|_| ())
}

/// All homomorphisms `b -> a`, in lexicographic order.
pub fn enumerate_homs(b: &FiniteAlgebra, a: &FiniteAlgebra, budget: &Budget) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    for_each_hom(b, a, HomMode::All, budget, |m| {
        out.push(Homomorphism {
            source: b.clone(),
            target: a.clone(),
            map: m.to_vec(),
        });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First injective (or bijective) homomorphism `b -> a` in search order.
pub fn find_embedding(
    b: &FiniteAlgebra,
    a: &FiniteAlgebra,
    require_bijective: bool,
    budget: &Budget,
) -> Result<Option<Homomorphism>> {
    let mode = if require_bijective { HomMode::Bijective } else { HomMode::Injective };
    let mut found = None;
    for_each_hom(b, a, mode, budget, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|map| Homomorphism {
        source: b.clone(),
        target: a.clone(),
        map,
    }))
}

/// True iff every pair of distinct elements of `b` is separated by some
/// homomorphism `b -> a`.
pub fn approximates(a: &FiniteAlgebra, b: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    b.symbol_map(a)?;
    let n = b.size();
    let mut open: Vec<(Elem, Elem)> = (0..n as Elem)
        .flat_map(|i| (i + 1..n as Elem).map(move |j| (i, j)))
        .collect();
    if open.is_empty() {
        return Ok(true);
    }
    for_each_hom(b, a, HomMode::All, budget, |m| {
        open.retain(|&(i, j)| m[i as usize] == m[j as usize]);
        if open.is_empty() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(open.is_empty())
}

/// For finite `b`: `a` discriminates `b` iff `b` embeds into `a`.
pub fn discriminates(a: &FiniteAlgebra, b: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    Ok(find_embedding(b, a, false, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{direct_product, ln, lzn, rbnm, trivial, zn};

    fn brute_homs(b: &FiniteAlgebra, a: &FiniteAlgebra) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        let mut map = vec![0 as Elem; b.size()];
        loop {
            if is_homomorphism(b, a, &map) {
                out.push(map.clone());
            }
            if !crate::finalg::advance(&mut map, a.size() as Elem) {
                break;
            }
        }
        out
    }

    #[test]
    fn hom_counts_match_brute_force() {
        let budget = Budget::default();
        let cases = [
            (zn(4).unwrap(), zn(2).unwrap()),
            (zn(4).unwrap(), zn(3).unwrap()),
            (zn(6).unwrap(), zn(6).unwrap()),
            (ln(3).unwrap(), ln(2).unwrap()),
            (rbnm(2, 2).unwrap(), lzn(2).unwrap()),
            (lzn(3).unwrap(), rbnm(2, 2).unwrap()),
        ];
        for (b, a) in &cases {
            let found: Vec<Vec<Elem>> = enumerate_homs(b, a, &budget).unwrap().into_iter().map(|h| h.map).collect();
            assert_eq!(found, brute_homs(b, a), "{} -> {}", b.name(), a.name());
        }
        assert_eq!(enumerate_homs(&zn(4).unwrap(), &zn(2).unwrap(), &budget).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&zn(4).unwrap(), &zn(3).unwrap(), &budget).unwrap()[0].map, vec![0; 4]);
    }

    #[test]
    fn embeddings() {
        let budget = Budget::default();
        assert!(find_embedding(&lzn(2).unwrap(), &lzn(3).unwrap(), false, &budget).unwrap().is_some());
        let e = find_embedding(&zn(4).unwrap(), &zn(8).unwrap(), false, &budget).unwrap().unwrap();
        assert_eq!(e.map, vec![0, 2, 4, 6]);
        assert!(find_embedding(&zn(4).unwrap(), &zn(6).unwrap(), false, &budget).unwrap().is_none());
        let z2z3 = direct_product(&[zn(2).unwrap(), zn(3).unwrap()]).unwrap();
        assert!(find_embedding(&z2z3, &zn(6).unwrap(), true, &budget).unwrap().is_some());
        let lz = direct_product(&[lzn(2).unwrap(), lzn(3).unwrap()]).unwrap();
        assert!(find_embedding(&lz, &lzn(6).unwrap(), true, &budget).unwrap().is_some());
        let l2 = ln(2).unwrap();
        let p = direct_product(&[l2.clone(), trivial(l2.language().clone())]).unwrap();
        assert!(find_embedding(&p, &l2, true, &budget).unwrap().is_some());
    }

    #[test]
    fn approximation_and_discrimination() {
        let budget = Budget::default();
        assert!(approximates(&ln(2).unwrap(), &ln(5).unwrap(), &budget).unwrap());
        assert!(!approximates(&zn(2).unwrap(), &zn(4).unwrap(), &budget).unwrap());
        assert!(approximates(&zn(4).unwrap(), &zn(4).unwrap(), &budget).unwrap());
        assert!(discriminates(&ln(3).unwrap(), &ln(2).unwrap(), &budget).unwrap());
        assert!(!discriminates(&ln(2).unwrap(), &ln(3).unwrap(), &budget).unwrap());
        assert!(discriminates(&rbnm(2, 2).unwrap(), &lzn(2).unwrap(), &budget).unwrap());
    }

    #[test]
    fn node_cap_is_enforced() {
        let budget = Budget::default().with_node_cap(3);
        let err = enumerate_homs(&ln(3).unwrap(), &ln(3).unwrap(), &budget).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
