//! Universal formulas `∀X (∧ premises → ∨ conclusions)`, finite model
//! checking, and the formula families used to classify abelian groups.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::eval::CompiledTerm;
use crate::finalg::{advance, Elem, FiniteAlgebra};
use crate::linear::{is_prime, FGAbelianGroup};
use crate::term::{Language, Term};

/// `lhs = rhs` or, when not positive, `lhs != rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub positive: bool,
}

impl Literal {
    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Literal { lhs, rhs, positive: true }
    }

    pub fn ne(lhs: Term, rhs: Term) -> Self {
        Literal { lhs, rhs, positive: false }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.positive { "=" } else { "!=" };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

/// A universally quantified formula whose body is a conjunction of
/// premises implying a disjunction of conclusions. An empty conclusion is
/// `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    pub variables: Vec<String>,
    pub premises: Vec<Literal>,
    pub conclusion: Vec<Literal>,
}

impl Formula {
    /// Equalities only, with exactly one conclusion.
    pub fn is_quasi_identity(&self) -> bool {
        self.conclusion.len() == 1 && self.literals().all(|l| l.positive)
    }

    pub fn is_identity(&self) -> bool {
        self.premises.is_empty() && self.is_quasi_identity()
    }

    fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.premises.iter().chain(&self.conclusion)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ls: &[Literal], sep: &str| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep);
        if self.premises.is_empty() {
            f.write_str("true")?;
        } else {
            f.write_str(&join(&self.premises, " & "))?;
        }
        f.write_str(" -> ")?;
        if self.conclusion.is_empty() {
            f.write_str("false")
        } else {
            f.write_str(&join(&self.conclusion, " | "))
        }
    }
}

struct CompiledLiteral {
    lhs: CompiledTerm,
    rhs: CompiledTerm,
    positive: bool,
}

impl CompiledLiteral {
    fn holds(&self, alg: &FiniteAlgebra, p: &[Elem], stack: &mut Vec<Elem>) -> bool {
        (self.lhs.eval(alg, p, stack) == self.rhs.eval(alg, p, stack)) == self.positive
    }
}

/// The lexicographically least tuple at which `f` fails in `alg`, if any.
pub fn counterexample(f: &Formula, alg: &FiniteAlgebra, budget: &Budget) -> Result<Option<Vec<Elem>>> {
    let n = f.variables.len();
    budget.check_tuples(checked_pow(alg.size() as u64, n))?;
    let compile = |ls: &[Literal]| {
        ls.iter()
            .map(|l| {
                Ok(CompiledLiteral {
                    lhs: CompiledTerm::compile(&l.lhs, alg.language(), &f.variables)?,
                    rhs: CompiledTerm::compile(&l.rhs, alg.language(), &f.variables)?,
                    positive: l.positive,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let premises = compile(&f.premises)?;
    let conclusion = compile(&f.conclusion)?;
    let mut stack = Vec::new();
    let mut p = vec![0 as Elem; n];
    let mut visited = 0u64;
    let found = loop {
        visited += 1;
        let fails = premises.iter().all(|l| l.holds(alg, &p, &mut stack))
            && !conclusion.iter().any(|l| l.holds(alg, &p, &mut stack));
        if fails {
            break Some(p);
        }
        if !advance(&mut p, alg.size() as Elem) {
            break None;
        }
    };
    budget.add_tuples(visited);
    Ok(found)
}

pub fn holds_in(f: &Formula, alg: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    Ok(counterexample(f, alg, budget)?.is_none())
}

/// Largest coefficient written out as an `add` chain.
pub const MAX_COEFFICIENT: u64 = 10_000;

fn multiple(k: u64, x: &Term) -> Result<Term> {
    if k > MAX_COEFFICIENT {
        return Err(Error::limit("formula coefficient", MAX_COEFFICIENT));
    }
    Ok(Term::scalar(k, x))
}

fn zero() -> Term {
    Term::constant("zero")
}

/// `m x = 0`.
pub fn period_identity(m: u64) -> Result<Formula> {
    let x = Term::var("x");
    Ok(Formula {
        variables: vec!["x".into()],
        premises: Vec::new(),
        conclusion: vec![Literal::eq(multiple(m, &x)?, zero())],
    })
}

/// `Σ_{p,n}`: `p^n x = 0 -> p^(n-1) x = 0`.
pub fn sigma_pn(p: u64, n: u32) -> Result<Formula> {
    let x = Term::var("x");
    let q = p.checked_pow(n).ok_or(Error::limit("formula coefficient", MAX_COEFFICIENT))?;
    Ok(Formula {
        variables: vec!["x".into()],
        premises: vec![Literal::eq(multiple(q, &x)?, zero())],
        conclusion: vec![Literal::eq(multiple(q / p, &x)?, zero())],
    })
}

/// `φ_{n,k}` for the prime `p`: among any `n+1` elements of order exactly
/// `p^k`, two coincide.
pub fn phi_nk(p: u64, k: u32, n: usize) -> Result<Formula> {
    let vars: Vec<String> = (1..=n + 1).map(|i| format!("x{i}")).collect();
    let q = p.checked_pow(k).ok_or(Error::limit("formula coefficient", MAX_COEFFICIENT))?;
    let mut premises = Vec::new();
    for v in &vars {
        let x = Term::var(v.clone());
        premises.push(Literal::eq(multiple(q, &x)?, zero()));
        premises.push(Literal::ne(multiple(q / p, &x)?, zero()));
    }
    let mut conclusion = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            conclusion.push(Literal::eq(Term::var(vars[i].clone()), Term::var(vars[j].clone())));
        }
    }
    Ok(Formula { variables: vars, premises, conclusion })
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_positive(v: u64, what: &str) -> Result<()> {
    if v == 0 {
        Err(Error::NonPositiveParameter(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

/// `A ⊨ Σ_{p,n}` iff `A` has no cyclic factor `Z_{p^m}` with `m >= n`.
pub fn sigma_pn_holds(a: &FGAbelianGroup, p: u64, n: u32) -> Result<bool> {
    check_prime(p)?;
    check_positive(n.into(), "n")?;
    Ok(!a.torsion().iter().any(|&(q, m)| q == p && m >= n))
}

/// Number of elements of order exactly `p^k`, `k >= 1`.
pub fn count_of_order(a: &FGAbelianGroup, p: u64, k: u32) -> Result<BigUint> {
    check_prime(p)?;
    check_positive(k.into(), "k")?;
    // |A[p^j]| is the product of p^min(e, j) over the p-factors.
    let killed = |j: u32| {
        a.torsion()
            .iter()
            .filter(|&&(q, _)| q == p)
            .fold(BigUint::one(), |acc, &(_, e)| acc * BigUint::from(p).pow(e.min(j)))
    };
    Ok(killed(k) - killed(k - 1))
}

/// `A ⊨ φ_{n,k}`: at most `n` elements of order `p^k`.
pub fn phi_nk_holds(a: &FGAbelianGroup, p: u64, k: u32, n: u64) -> Result<bool> {
    Ok(count_of_order(a, p, k)? <= BigUint::from(n))
}

/// The part of `Σ_A` inside a window of primes and exponents.
#[derive(Debug, Clone)]
pub struct SigmaReport {
    /// `period x = 0` when `A` is finite.
    pub period: Option<u64>,
    pub formulas: Vec<Formula>,
    /// Torsion primes above `p_max`, whose formulas were not generated.
    pub uncovered_primes: Vec<u64>,
}

/// The period identity (finite `A` only) and every `Σ_{p,n}` with
/// `p <= p_max`, `n <= n_max` that holds in `A`.
pub fn sigma_a(a: &FGAbelianGroup, p_max: u64, n_max: u32) -> Result<SigmaReport> {
    check_positive(p_max, "p_max")?;
    check_positive(n_max.into(), "n_max")?;
    let mut formulas = Vec::new();
    let period = a.period();
    if let Some(m) = period {
        formulas.push(period_identity(m)?);
    }
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        for n in 1..=n_max {
            if sigma_pn_holds(a, p, n)? {
                formulas.push(sigma_pn(p, n)?);
            }
        }
    }
    let mut uncovered: Vec<u64> = a.torsion().iter().map(|&(p, _)| p).filter(|&p| p > p_max).collect();
    uncovered.dedup();
    Ok(SigmaReport { period, formulas, uncovered_primes: uncovered })
}

/// The additive group language the abelian formula families are written in.
pub fn abelian_language() -> Language {
    Language::additive_group()
}
