//! Bounded search for reducible algebraic sets.

use std::collections::HashSet;

use super::{free_functions, is_irreducible, SolutionSet};
use crate::budget::Budget;
use crate::error::Result;
use crate::finalg::FiniteAlgebra;
use crate::generate::WitnessTerms;
use crate::term::Equation;

#[derive(Debug, Clone)]
pub struct CoDomainCounterexample {
    pub dimension: usize,
    /// The defining equation; `None` for the whole space `A^m`.
    pub equation: Option<Equation>,
    pub set: SolutionSet,
}

#[derive(Debug, Clone)]
pub struct CoDomainReport {
    pub n_max: usize,
    pub counterexample: Option<CoDomainCounterexample>,
}

/// For `m = 1..=n_max`, tests `A^m` and then every solution set of a single
/// equation `t = s` in `m` variables for irreducibility, stopping at the first
/// reducible nonempty set. Single equations are enumerated through the
/// elements of `Γ(A^m)`, i.e. the term functions of arity `m`.
pub fn co_domain_scan(alg: &FiniteAlgebra, n_max: usize, budget: &Budget) -> Result<CoDomainReport> {
    for m in 1..=n_max {
        let vars: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        let full = SolutionSet::full(alg, vars.clone(), budget)?;
        if is_irreducible(&full, budget)?.is_none() {
            return Ok(CoDomainReport {
                n_max,
                counterexample: Some(CoDomainCounterexample { dimension: m, equation: None, set: full }),
            });
        }
        let (funcs, wits, seeds) = free_functions(alg, &vars, budget)?;
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        for i in 0..funcs.len() {
            for j in i + 1..funcs.len() {
                let mask: Vec<bool> = funcs[i].iter().zip(&funcs[j]).map(|(a, b)| a == b).collect();
                if !mask.contains(&true) || !seen.insert(mask.clone()) {
                    continue;
                }
                let points = full
                    .points()
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(p, _)| p.clone())
                    .collect();
                let set = SolutionSet::from_sorted(alg.clone(), vars.clone(), points);
                if is_irreducible(&set, budget)?.is_none() {
                    let mut wt = WitnessTerms::new(&wits, &seeds, alg);
                    let equation = Equation::new(wt.term(i), wt.term(j));
                    return Ok(CoDomainReport {
                        n_max,
                        counterexample: Some(CoDomainCounterexample { dimension: m, equation: Some(equation), set }),
                    });
                }
            }
        }
    }
    Ok(CoDomainReport { n_max, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{ln, lzn, trivial, zn};
    use crate::term::Language;

    #[test]
    fn paper_examples() {
        let b = Budget::default();
        let r = co_domain_scan(&ln(2).unwrap(), 3, &b).unwrap();
        let c = r.counterexample.unwrap();
        assert_eq!((c.dimension, c.equation), (2, None));
        let r = co_domain_scan(&lzn(2).unwrap(), 3, &b).unwrap();
        assert_eq!(r.counterexample.unwrap().dimension, 3);
        assert!(co_domain_scan(&trivial(Language::semigroup()), 3, &b).unwrap().counterexample.is_none());
    }

    #[test]
    fn cyclic_group_fails_in_the_plane() {
        // Γ(Z_4^2) ≅ Z_4^2 does not embed into Z_4.
        let r = co_domain_scan(&zn(4).unwrap(), 2, &Budget::default()).unwrap();
        let c = r.counterexample.unwrap();
        assert_eq!((c.dimension, c.equation.is_none(), c.set.len()), (2, true, 16));
    }
}
