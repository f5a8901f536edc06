//! Term evaluation in finite algebras.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finalg::{Elem, FiniteAlgebra};
use crate::term::{Equation, Language, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Op(usize, usize),
}

/// A term flattened to postfix code against a fixed language and variable
/// list, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledTerm {
    code: Vec<Instr>,
    vars_used: Vec<usize>,
}

impl CompiledTerm {
    pub fn compile(t: &Term, lang: &Language, vars: &[String]) -> Result<Self> {
        let mut code = Vec::with_capacity(t.size());
        let mut vars_used = Vec::new();
        compile_into(t, lang, vars, &mut code, &mut vars_used)?;
        vars_used.sort_unstable();
        vars_used.dedup();
        Ok(CompiledTerm { code, vars_used })
    }

    /// Indices of the variables that occur, ascending.
    pub fn vars_used(&self) -> &[usize] {
        &self.vars_used
    }

    /// Value at `point`, which is indexed like the variable list given to
    /// [`CompiledTerm::compile`].
    pub fn eval(&self, alg: &FiniteAlgebra, point: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for &ins in &self.code {
            match ins {
                Instr::Var(i) => stack.push(point[i]),
                Instr::Op(sym, arity) => {
                    let base = stack.len() - arity;
                    let v = alg.apply(sym, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }

    /// Evaluates with a custom interpretation of the symbols.
    pub fn eval_with<T: Clone>(&self, point: &[T], mut op: impl FnMut(usize, &[T]) -> T) -> T {
        let mut stack: Vec<T> = Vec::new();
        for &ins in &self.code {
            match ins {
                Instr::Var(i) => stack.push(point[i].clone()),
                Instr::Op(sym, arity) => {
                    let base = stack.len() - arity;
                    let v = op(sym, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack.pop().expect("nonempty term")
    }
}

fn compile_into(
    t: &Term,
    lang: &Language,
    vars: &[String],
    code: &mut Vec<Instr>,
    used: &mut Vec<usize>,
) -> Result<()> {
    match t {
        Term::Var(v) => {
            let i = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::MissingBinding(v.clone()))?;
            used.push(i);
            code.push(Instr::Var(i));
        }
        Term::App(f, args) => {
            let id = lang
                .id(f)
                .ok_or_else(|| Error::LanguageMismatch(format!("symbol `{f}` is not interpreted")))?;
            let arity = lang.symbol(id).arity;
            if arity != args.len() {
                return Err(Error::LanguageMismatch(format!(
                    "`{f}` has arity {arity}, applied to {}",
                    args.len()
                )));
            }
            for a in args {
                compile_into(a, lang, vars, code, used)?;
            }
            code.push(Instr::Op(id, arity));
        }
    }
    Ok(())
}

/// An equation compiled for repeated checks.
#[derive(Debug, Clone)]
pub struct CompiledEquation {
    pub lhs: CompiledTerm,
    pub rhs: CompiledTerm,
    /// Largest variable index occurring, if any.
    pub max_var: Option<usize>,
    pub free_vars: usize,
}

impl CompiledEquation {
    pub fn compile(eq: &Equation, lang: &Language, vars: &[String]) -> Result<Self> {
        let lhs = CompiledTerm::compile(&eq.lhs, lang, vars)?;
        let rhs = CompiledTerm::compile(&eq.rhs, lang, vars)?;
        let mut all: Vec<usize> = lhs.vars_used().iter().chain(rhs.vars_used()).copied().collect();
        all.sort_unstable();
        all.dedup();
        Ok(CompiledEquation {
            max_var: all.last().copied(),
            free_vars: all.len(),
            lhs,
            rhs,
        })
    }

    pub fn holds(&self, alg: &FiniteAlgebra, point: &[Elem], stack: &mut Vec<Elem>) -> bool {
        self.lhs.eval(alg, point, stack) == self.rhs.eval(alg, point, stack)
    }
}

/// Value of `t` in `alg` with variables bound by `point`.
pub fn evaluate(t: &Term, alg: &FiniteAlgebra, point: &HashMap<String, Elem>) -> Result<Elem> {
    match t {
        Term::Var(v) => {
            let e = *point.get(v).ok_or_else(|| Error::MissingBinding(v.clone()))?;
            if e as usize >= alg.size() {
                return Err(Error::Malformed(format!("value {e} of `{v}` outside the carrier")));
            }
            Ok(e)
        }
        Term::App(f, args) => {
            let vals = args.iter().map(|a| evaluate(a, alg, point)).collect::<Result<Vec<_>>>()?;
            alg.apply_named(f, &vals)
        }
    }
}

/// Value of `t` at a point given positionally over `vars`.
pub fn evaluate_at(t: &Term, alg: &FiniteAlgebra, vars: &[String], point: &[Elem]) -> Result<Elem> {
    if point.len() != vars.len() {
        return Err(Error::Malformed(format!("point has {} coordinates for {} variables", point.len(), vars.len())));
    }
    let c = CompiledTerm::compile(t, alg.language(), vars)?;
    Ok(c.eval(alg, point, &mut Vec::new()))
}
