//! Oracles and random generators shared by the integration tests. The
//! oracles recompute everything by direct recursion and exhaustive loops,
//! independently of the library's compiled evaluation and generation.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use uag::finalg::{ln, lzn, rbnm, zn, zn_ring, Elem, FiniteAlgebra};
use uag::term::{Equation, Language, System, Term};

pub type R = ChaCha8Rng;

pub fn rng(seed: u64) -> R {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// The algebras of the solver regression.
pub fn deck() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("L2", ln(2).unwrap()),
        ("L3", ln(3).unwrap()),
        ("LZ2", lzn(2).unwrap()),
        ("LZ3", lzn(3).unwrap()),
        ("RB22", rbnm(2, 2).unwrap()),
        ("Z2", zn(2).unwrap()),
        ("Z3", zn(3).unwrap()),
        ("Z4", zn(4).unwrap()),
        ("F2", zn_ring(2, true).unwrap()),
    ]
}

/// Uniform random term of depth at most `depth`.
pub fn random_term(r: &mut R, lang: &Language, vs: &[String], depth: usize) -> Term {
    let syms = lang.symbols();
    let ops: Vec<_> = syms.iter().filter(|s| s.arity > 0).collect();
    let consts: Vec<_> = syms.iter().filter(|s| s.arity == 0).collect();
    if depth == 0 || ops.is_empty() || r.gen_bool(0.35) {
        if !consts.is_empty() && r.gen_bool(0.2) {
            return Term::constant(consts.choose(r).unwrap().name.clone());
        }
        return Term::var(vs.choose(r).unwrap().clone());
    }
    let s = ops.choose(r).unwrap();
    let args = (0..s.arity).map(|_| random_term(r, lang, vs, depth - 1)).collect();
    Term::app(s.name.clone(), args)
}

pub fn random_equation(r: &mut R, lang: &Language, vs: &[String], depth: usize) -> Equation {
    Equation::new(random_term(r, lang, vs, depth), random_term(r, lang, vs, depth))
}

/// Between one and `max_vars` variables and up to `max_eqs` equations.
pub fn random_system(r: &mut R, lang: &Language, max_vars: usize, max_eqs: usize, depth: usize) -> System {
    let n = r.gen_range(1..=max_vars);
    let vs = vars(n);
    let m = r.gen_range(1..=max_eqs);
    let eqs = (0..m).map(|_| random_equation(r, lang, &vs, depth)).collect();
    System::new(lang.clone(), vs, eqs).unwrap()
}

/// Recursive evaluation straight from the operation tables.
pub fn eval(t: &Term, a: &FiniteAlgebra, vs: &[String], p: &[Elem]) -> Elem {
    match t {
        Term::Var(v) => p[vs.iter().position(|x| x == v).unwrap()],
        Term::App(f, args) => {
            let id = a.language().id(f).unwrap();
            let k = a.size();
            let mut idx = 0usize;
            for arg in args {
                idx = idx * k + eval(arg, a, vs, p) as usize;
            }
            a.table(id)[idx]
        }
    }
}

pub fn all_tuples(k: usize, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k as Elem).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn brute_solve(s: &System, a: &FiniteAlgebra) -> Vec<Vec<Elem>> {
    all_tuples(a.size(), s.variables.len())
        .into_iter()
        .filter(|p| {
            s.equations
                .iter()
                .all(|e| eval(&e.lhs, a, &s.variables, p) == eval(&e.rhs, a, &s.variables, p))
        })
        .collect()
}

/// Naive subalgebra of `A^w` generated by `gens` and the constants:
/// apply every operation to every tuple of known elements until nothing new
/// appears.
pub fn naive_generate(a: &FiniteAlgebra, w: usize, gens: &[Vec<Elem>]) -> BTreeSet<Vec<Elem>> {
    let lang = a.language();
    let mut set: BTreeSet<Vec<Elem>> = gens.iter().cloned().collect();
    for (id, _) in lang.constants() {
        set.insert(vec![a.constant(id); w]);
    }
    loop {
        let elems: Vec<Vec<Elem>> = set.iter().cloned().collect();
        let mut grew = false;
        for (id, s) in lang.symbols().iter().enumerate() {
            if s.arity == 0 {
                continue;
            }
            for args in all_tuples(elems.len(), s.arity) {
                let v: Vec<Elem> = (0..w)
                    .map(|c| {
                        let vals: Vec<Elem> = args.iter().map(|&i| elems[i as usize][c]).collect();
                        a.apply(id, &vals)
                    })
                    .collect();
                grew |= set.insert(v);
            }
        }
        if !grew {
            return set;
        }
    }
}

/// `p ∈ cl(Z)` iff the projection of the subalgebra of `A^(Z ∪ {p})`
/// generated by the coordinate columns onto `Z` is injective.
pub fn naive_closure(a: &FiniteAlgebra, n: usize, z: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    all_tuples(a.size(), n)
        .into_iter()
        .filter(|p| {
            let cols: Vec<&Vec<Elem>> = z.iter().chain(std::iter::once(p)).collect();
            let gens: Vec<Vec<Elem>> = (0..n).map(|i| cols.iter().map(|q| q[i]).collect()).collect();
            let sub = naive_generate(a, cols.len(), &gens);
            let mut keys = HashSet::new();
            sub.iter().all(|v| keys.insert(v[..z.len()].to_vec()))
        })
        .collect()
}

/// Independent homomorphism check on all table entries.
pub fn is_hom(b: &FiniteAlgebra, a: &FiniteAlgebra, map: &[Elem]) -> bool {
    b.language().symbols().iter().enumerate().all(|(id, s)| {
        let aid = a.language().id(&s.name).unwrap();
        all_tuples(b.size(), s.arity).iter().all(|args| {
            let img: Vec<Elem> = args.iter().map(|&x| map[x as usize]).collect();
            map[b.apply(id, args) as usize] == a.apply(aid, &img)
        })
    })
}
