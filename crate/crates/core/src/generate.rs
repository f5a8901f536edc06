//! Breadth-first generation of subalgebras of a finite power `A^w`.
//!
//! Elements are rows of `key` coordinates followed by `payload` coordinates.
//! Rows are deduplicated on the key alone. When two rows with the same key
//! disagree on payload coordinate `c`, candidate `c` is marked refuted. With
//! the key indexed by a point set `Z` and each payload coordinate by a
//! candidate point `p`, `p` survives exactly when every equation true on `Z`
//! also holds at `p`.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finalg::{Elem, FiniteAlgebra};
use crate::term::Term;

/// How an element was first produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Wit {
    Seed(u32),
    Op(u32, Box<[u32]>),
}

pub(crate) struct Generator<'a> {
    alg: &'a FiniteAlgebra,
    key_w: usize,
    pay_w: usize,
    data: Vec<Elem>,
    index: HashMap<Vec<Elem>, u32>,
    witnesses: Option<Vec<Wit>>,
    refuted: Vec<bool>,
    live: usize,
    stop_when_refuted: bool,
    stopped_early: bool,
    stop_above: Option<usize>,
    seeds: u32,
}

impl<'a> Generator<'a> {
    pub(crate) fn new(alg: &'a FiniteAlgebra, key_w: usize, pay_w: usize, record_witnesses: bool) -> Self {
        Generator {
            alg,
            key_w,
            pay_w,
            data: Vec::new(),
            index: HashMap::new(),
            witnesses: record_witnesses.then(Vec::new),
            refuted: vec![false; pay_w],
            live: pay_w,
            stop_when_refuted: false,
            stopped_early: false,
            stop_above: None,
            seeds: 0,
        }
    }

    /// Stop as soon as every payload candidate is refuted.
    pub(crate) fn stop_when_all_refuted(mut self) -> Self {
        self.stop_when_refuted = true;
        self
    }

    /// Stop once more than `n` elements exist.
    pub(crate) fn stop_above(mut self, n: usize) -> Self {
        self.stop_above = Some(n);
        self
    }

    fn stride(&self) -> usize {
        self.key_w + self.pay_w
    }

    pub(crate) fn len(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn key(&self, i: usize) -> &[Elem] {
        let s = self.stride();
        &self.data[i * s..i * s + self.key_w]
    }

    pub(crate) fn is_refuted(&self, c: usize) -> bool {
        self.refuted[c]
    }

    pub(crate) fn stopped_early(&self) -> bool {
        self.stopped_early
    }

    fn done(&self) -> bool {
        (self.stop_when_refuted && self.pay_w > 0 && self.live == 0)
            || self.stop_above.is_some_and(|n| self.len() > n)
    }

    /// Adds a generator row (key followed by payload). Seeds are numbered in
    /// the order given, duplicates included.
    pub(crate) fn seed(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.stride(), "seed width");
        let n = self.seeds;
        self.seeds += 1;
        self.insert(row.to_vec(), Wit::Seed(n));
    }

    /// Inserts a row; returns true if its key is new.
    fn insert(&mut self, row: Vec<Elem>, wit: Wit) -> bool {
        let key_w = self.key_w;
        if let Some(&j) = self.index.get(&row[..key_w]) {
            if self.pay_w > 0 {
                let s = self.stride();
                let base = j as usize * s + key_w;
                for c in 0..self.pay_w {
                    if !self.refuted[c] && self.data[base + c] != row[key_w + c] {
                        self.refuted[c] = true;
                        self.live -= 1;
                    }
                }
            }
            return false;
        }
        let id = self.index.len() as u32;
        self.data.extend_from_slice(&row);
        let mut row = row;
        row.truncate(key_w);
        self.index.insert(row, id);
        if let Some(w) = &mut self.witnesses {
            w.push(wit);
        }
        true
    }

    /// Closes the seeds under constants and operations.
    pub(crate) fn run(&mut self, budget: &Budget) -> Result<()> {
        let r = self.close(budget);
        budget.add_elements(self.len() as u64);
        r
    }

    fn close(&mut self, budget: &Budget) -> Result<()> {
        let alg = self.alg;
        let lang = alg.language();
        let stride = self.stride();
        for (id, _) in lang.constants() {
            let c = alg.constant(id);
            self.insert(vec![c; stride], Wit::Op(id as u32, Box::new([])));
        }
        self.check_cap(budget)?;
        let ops: Vec<(usize, usize)> = lang
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.arity > 0)
            .map(|(i, s)| (i, s.arity))
            .collect();
        let mut start = 0usize;
        let mut row_args = Vec::new();
        loop {
            if self.done() {
                self.stopped_early = true;
                return Ok(());
            }
            let end = self.len();
            if start == end {
                return Ok(());
            }
            for &(sym, arity) in &ops {
                let mut args = vec![0u32; arity];
                if !first_tuple(&mut args, start as u32, end as u32) {
                    continue;
                }
                loop {
                    let mut row = Vec::with_capacity(stride);
                    for c in 0..stride {
                        row_args.clear();
                        row_args.extend(args.iter().map(|&a| self.data[a as usize * stride + c]));
                        row.push(alg.apply(sym, &row_args));
                    }
                    if self.insert(row, Wit::Op(sym as u32, args.clone().into_boxed_slice())) {
                        self.check_cap(budget)?;
                    }
                    if self.done() {
                        self.stopped_early = true;
                        return Ok(());
                    }
                    if !next_tuple(&mut args, start as u32, end as u32) {
                        break;
                    }
                }
            }
            start = end;
        }
    }

    fn check_cap(&self, budget: &Budget) -> Result<()> {
        if self.len() as u64 > budget.elem_cap {
            Err(Error::limit("generated subalgebra elements", budget.elem_cap))
        } else {
            Ok(())
        }
    }

    pub(crate) fn take_witnesses(&mut self) -> Vec<Wit> {
        self.witnesses.take().unwrap_or_default()
    }

    /// Key rows, concatenated.
    pub(crate) fn into_keys(self) -> Vec<Elem> {
        if self.pay_w == 0 {
            return self.data;
        }
        let s = self.stride();
        self.data
            .chunks(s)
            .flat_map(|r| r[..self.key_w].iter().copied())
            .collect()
    }

    /// The generated algebra on the key rows, elements in discovery order.
    pub(crate) fn into_algebra(mut self, name: String, budget: &Budget) -> Result<FiniteAlgebra> {
        let alg = self.alg;
        let key_w = self.key_w;
        let _ = self.take_witnesses();
        let index = std::mem::take(&mut self.index);
        let keys = self.into_keys();
        build_tables(alg, name, key_w, &keys, &index, budget)
    }
}

/// Operation tables of the subalgebra of `A^key_w` whose elements are the
/// given rows.
pub(crate) fn build_tables(
    alg: &FiniteAlgebra,
    name: String,
    key_w: usize,
    keys: &[Elem],
    index: &HashMap<Vec<Elem>, u32>,
    budget: &Budget,
) -> Result<FiniteAlgebra> {
    let size = index.len();
    let mut total: u64 = 0;
    for s in alg.language().symbols() {
        let rows = crate::budget::checked_pow(size as u64, s.arity);
        total = rows
            .and_then(|r| total.checked_add(r))
            .filter(|&t| t <= budget.table_cap)
            .ok_or_else(|| Error::limit("operation table entries", budget.table_cap))?;
    }
    let mut row = vec![0 as Elem; key_w];
    let mut comp = Vec::new();
    FiniteAlgebra::from_fn(name, alg.language().clone(), size, |sym, args| {
        for (c, slot) in row.iter_mut().enumerate() {
            comp.clear();
            comp.extend(args.iter().map(|&a| keys[a as usize * key_w + c]));
            *slot = alg.apply(sym, &comp);
        }
        index[&row[..]]
    })
}

/// First tuple over `[0,end)` with some entry in `[start,end)`.
fn first_tuple(args: &mut [u32], start: u32, end: u32) -> bool {
    if start >= end {
        return false;
    }
    args.fill(0);
    let last = args.len() - 1;
    args[last] = start;
    true
}

/// Lexicographic successor among tuples over `[0,end)` with some entry in
/// `[start,end)`.
fn next_tuple(args: &mut [u32], start: u32, end: u32) -> bool {
    let last = args.len() - 1;
    let mut pos = last;
    loop {
        args[pos] += 1;
        if args[pos] < end {
            break;
        }
        if pos == 0 {
            return false;
        }
        pos -= 1;
    }
    // Positions after `pos` restart at their least admissible value.
    for a in args[pos + 1..].iter_mut() {
        *a = 0;
    }
    if !args[..last].iter().any(|&a| a >= start) && args[last] < start {
        args[last] = start;
    }
    true
}

/// Materializes witness terms lazily, sharing nothing but memoized results.
pub(crate) struct WitnessTerms<'w> {
    wits: &'w [Wit],
    seeds: &'w [Term],
    names: Vec<String>,
    memo: Vec<Option<Term>>,
}

impl<'w> WitnessTerms<'w> {
    pub(crate) fn new(wits: &'w [Wit], seeds: &'w [Term], alg: &FiniteAlgebra) -> Self {
        WitnessTerms {
            wits,
            seeds,
            names: alg.language().symbols().iter().map(|s| s.name.clone()).collect(),
            memo: vec![None; wits.len()],
        }
    }

    pub(crate) fn term(&mut self, i: usize) -> Term {
        if let Some(t) = &self.memo[i] {
            return t.clone();
        }
        let t = match &self.wits[i] {
            Wit::Seed(s) => self.seeds[*s as usize].clone(),
            Wit::Op(sym, args) => {
                let args = args.iter().map(|&a| self.term(a as usize)).collect();
                Term::App(self.names[*sym as usize].clone(), args)
            }
        };
        self.memo[i] = Some(t.clone());
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_tuples(arity: usize, start: u32, end: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut args = vec![0u32; arity];
        if first_tuple(&mut args, start, end) {
            loop {
                out.push(args.clone());
                if !next_tuple(&mut args, start, end) {
                    break;
                }
            }
        }
        out
    }

    fn brute(arity: usize, start: u32, end: u32) -> Vec<Vec<u32>> {
        let total = (end as usize).pow(arity as u32);
        (0..total)
            .map(|mut i| {
                let mut t = vec![0u32; arity];
                for p in (0..arity).rev() {
                    t[p] = (i % end as usize) as u32;
                    i /= end as usize;
                }
                t
            })
            .filter(|t| t.iter().any(|&a| a >= start))
            .collect()
    }

    #[test]
    fn frontier_tuples_match_filtered_enumeration() {
        for arity in 1..=3 {
            for end in 1..=4 {
                for start in 0..end {
                    assert_eq!(all_tuples(arity, start, end), brute(arity, start, end), "{arity} {start} {end}");
                }
            }
        }
    }
}
