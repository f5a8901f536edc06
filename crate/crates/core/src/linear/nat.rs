//! Bounded solving of linear equations over the naturals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::normalize::{normalize, NormalForm, Variety};
use crate::term::{Equation, System, Term};

/// `sum coeffs[i] * x_i = rhs` after moving everything across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatEquation {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

/// Coefficients of `t` over `vars` and its count of `one`.
fn side(t: &Term, vars: &[String]) -> Result<(Vec<BigInt>, BigInt)> {
    let NormalForm::NatLinear(map) = normalize(t, Variety::CommutativeMonoid)? else {
        unreachable!("monoid normal form is linear")
    };
    let mut coeffs = vec![BigInt::zero(); vars.len()];
    let mut constant = BigInt::zero();
    for (atom, c) in map {
        match atom {
            Term::Var(v) => {
                let i = vars.iter().position(|x| *x == v).ok_or(Error::MissingBinding(v))?;
                coeffs[i] = c.into();
            }
            Term::App(name, _) if name == "one" => constant = c.into(),
            Term::App(name, _) => {
                return Err(Error::Malformed(format!("constant `{name}` is not a natural number")));
            }
        }
    }
    Ok((coeffs, constant))
}

/// Moves an equation over `{add, zero, one}` into `sum c_i x_i = k` form.
pub fn parse_nat_equation(eq: &Equation, vars: &[String]) -> Result<NatEquation> {
    let (a, c) = side(&eq.lhs, vars)?;
    let (b, d) = side(&eq.rhs, vars)?;
    Ok(NatEquation {
        coeffs: a.iter().zip(&b).map(|(x, y)| x - y).collect(),
        rhs: d - c,
    })
}

/// Per-variable upper bounds by propagation; `Ok(None)` when some equation
/// is infeasible outright.
fn bounds(eqs: &[NatEquation], n: usize) -> Option<Vec<Option<BigInt>>> {
    let mut ub: Vec<Option<BigInt>> = vec![None; n];
    loop {
        let mut changed = false;
        for eq in eqs {
            for sign in [1i32, -1] {
                // Side with coefficients of this sign: sum a_i x_i = K + sum b_j x_j.
                let k = if sign == 1 { eq.rhs.clone() } else { -eq.rhs.clone() };
                let oriented = |c: &BigInt| if sign == 1 { c.clone() } else { -c.clone() };
                let mut slack = k;
                let mut finite = true;
                for (j, c) in eq.coeffs.iter().enumerate() {
                    let c = oriented(c);
                    if c.is_negative() {
                        match &ub[j] {
                            Some(u) => slack += -c * u,
                            None => finite = false,
                        }
                    }
                }
                if !finite {
                    continue;
                }
                // The positive side is a natural number bounded by `slack`.
                if slack.is_negative() {
                    return None;
                }
                for (i, c) in eq.coeffs.iter().enumerate() {
                    let c = oriented(c);
                    if !c.is_positive() {
                        continue;
                    }
                    let bound = slack.div_floor(&c);
                    if ub[i].as_ref().is_none_or(|u| bound < *u) {
                        ub[i] = Some(bound);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Some(ub);
        }
    }
}

/// All solutions in the naturals, sorted lexicographically. Every variable
/// needs a finite bound derivable from the equations.
pub fn solve_over_n(sys: &System, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let n = sys.variables.len();
    let eqs = sys
        .equations
        .iter()
        .map(|e| parse_nat_equation(e, &sys.variables))
        .collect::<Result<Vec<_>>>()?;
    let Some(ub) = bounds(&eqs, n) else { return Ok(Vec::new()) };
    let mut limits = Vec::with_capacity(n);
    for (v, u) in sys.variables.iter().zip(ub) {
        let u = u.ok_or_else(|| Error::Unbounded(v.clone()))?;
        if u.is_negative() {
            return Ok(Vec::new());
        }
        limits.push(u.to_u64().ok_or_else(|| Error::limit("tuple enumeration", budget.tuple_cap))?);
    }
    let count = limits
        .iter()
        .try_fold(1u64, |acc, &u| acc.checked_mul(u.checked_add(1)?));
    budget.check_tuples(count)?;

    // Each equation is checked once its last variable is fixed.
    let mut at_level: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (k, eq) in eqs.iter().enumerate() {
        let last = eq.coeffs.iter().rposition(|c| !c.is_zero());
        match last {
            Some(i) => at_level[i + 1].push(k),
            None => at_level[0].push(k),
        }
    }
    if at_level[0].iter().any(|&k| !eqs[k].rhs.is_zero()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut point = vec![0u64; n];
    let mut visited = 0u64;
    fn rec(
        level: usize,
        point: &mut Vec<u64>,
        limits: &[u64],
        eqs: &[NatEquation],
        at_level: &[Vec<usize>],
        out: &mut Vec<Vec<u64>>,
        visited: &mut u64,
    ) {
        if level == limits.len() {
            out.push(point.clone());
            return;
        }
        for v in 0..=limits[level] {
            *visited += 1;
            point[level] = v;
            let ok = at_level[level + 1].iter().all(|&k| {
                let eq = &eqs[k];
                let lhs: BigInt = eq.coeffs.iter().zip(point.iter()).map(|(c, &x)| c * BigInt::from(x)).sum();
                lhs == eq.rhs
            });
            if ok {
                rec(level + 1, point, limits, eqs, at_level, out, visited);
            }
        }
    }
    rec(0, &mut point, &limits, &eqs, &at_level, &mut out, &mut visited);
    budget.add_tuples(visited);
    Ok(out)
}
