//! Signatures, terms, equations and systems.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// A functional signature. Arity-0 symbols are constants.
///
/// Symbols keep their declaration order, which is also the order of the
/// operation tables of every algebra over the language.
#[derive(Debug, Clone, Default)]
pub struct Language {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl PartialEq for Language {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Language {}

impl Language {
    pub fn new() -> Self {
        Language::default()
    }

    /// Builds a language from `(name, arity)` pairs.
    pub fn from_symbols<'a>(
        symbols: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Self, ParseError> {
        let mut lang = Language::new();
        for (name, arity) in symbols {
            lang.add(name, arity)?;
        }
        Ok(lang)
    }

    pub fn add(&mut self, name: &str, arity: usize) -> Result<usize, ParseError> {
        if self.index.contains_key(name) {
            return Err(ParseError::DuplicateSymbol(name.to_string()));
        }
        let id = self.symbols.len();
        self.symbols.push(Symbol {
            name: name.to_string(),
            arity,
        });
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// `{mul/2}`
    pub fn semigroup() -> Self {
        Self::fixed(&[("mul", 2)])
    }

    /// `{mul/2, inv/1, one}`
    pub fn group() -> Self {
        Self::fixed(&[("mul", 2), ("inv", 1), ("one", 0)])
    }

    /// `{add/2, neg/1, zero}`, the additive language of abelian groups.
    pub fn additive_group() -> Self {
        Self::fixed(&[("add", 2), ("neg", 1), ("zero", 0)])
    }

    /// `{add/2, zero}`
    pub fn commutative_monoid() -> Self {
        Self::fixed(&[("add", 2), ("zero", 0)])
    }

    /// `{add/2, zero, one}`: the monoid of naturals with the generator named.
    pub fn naturals() -> Self {
        Self::fixed(&[("add", 2), ("zero", 0), ("one", 0)])
    }

    /// `{add/2, sub/2, mul/2, zero}` and optionally `one`.
    pub fn ring(with_one: bool) -> Self {
        let mut lang = Self::fixed(&[("add", 2), ("sub", 2), ("mul", 2), ("zero", 0)]);
        if with_one {
            lang.add("one", 0).expect("fresh name");
        }
        lang
    }

    /// `{f/1}`
    pub fn unar() -> Self {
        Self::fixed(&[("f", 1)])
    }

    fn fixed(symbols: &[(&str, usize)]) -> Self {
        Self::from_symbols(symbols.iter().copied()).expect("builtin languages have unique names")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn symbol(&self, id: usize) -> &Symbol {
        &self.symbols[id]
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.id(name).map(|i| self.symbols[i].arity)
    }

    pub fn contains(&self, name: &str, arity: usize) -> bool {
        self.arity(name) == Some(arity)
    }

    pub fn constants(&self) -> impl Iterator<Item = (usize, &Symbol)> {
        self.symbols.iter().enumerate().filter(|(_, s)| s.arity == 0)
    }

    pub fn has_constants(&self) -> bool {
        self.symbols.iter().any(|s| s.arity == 0)
    }

    /// Same symbols with the same arities, in any declaration order.
    pub fn same_signature(&self, other: &Language) -> bool {
        self.symbols.len() == other.symbols.len()
            && self
                .symbols
                .iter()
                .all(|s| other.arity(&s.name) == Some(s.arity))
    }

    /// Renders in the `op NAME/ARITY; const NAME` block syntax.
    pub fn render(&self) -> String {
        self.symbols
            .iter()
            .map(|s| {
                if s.arity == 0 {
                    format!("const {}", s.name)
                } else {
                    format!("op {}/{}", s.name, s.arity)
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// First-order term: a variable or a symbol applied to arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn unary(name: &str, arg: Term) -> Term {
        Term::App(name.to_string(), vec![arg])
    }

    pub fn binary(name: &str, lhs: Term, rhs: Term) -> Term {
        Term::App(name.to_string(), vec![lhs, rhs])
    }

    /// `f` applied `n` times to `arg`.
    pub fn iterate(name: &str, n: usize, arg: Term) -> Term {
        (0..n).fold(arg, |t, _| Term::unary(name, t))
    }

    /// `k·t` as a left-associated chain of `add`; `0·t` is `zero`.
    pub fn scalar(k: u64, t: &Term) -> Term {
        if k == 0 {
            return Term::constant("zero");
        }
        let mut acc = t.clone();
        for _ in 1..k {
            acc = Term::binary("add", acc, t.clone());
        }
        acc
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|o| o == v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Replaces variables according to `map`; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.substitute(map)).collect(),
            ),
        }
    }

    /// Checks every application against `lang` and every variable against
    /// `vars`.
    pub fn check(&self, lang: &Language, vars: &[String]) -> Result<()> {
        match self {
            Term::Var(v) => {
                if vars.iter().any(|x| x == v) {
                    Ok(())
                } else {
                    Err(Error::MissingBinding(v.clone()))
                }
            }
            Term::App(f, args) => {
                let arity = lang
                    .arity(f)
                    .ok_or_else(|| Error::LanguageMismatch(format!("symbol `{f}` not in language")))?;
                if arity != args.len() {
                    return Err(Error::LanguageMismatch(format!(
                        "`{f}` has arity {arity}, applied to {}",
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.check(lang, vars))
            }
        }
    }

    /// Symbols occurring in the term, with the arity they are used at.
    pub fn symbols(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        fn walk(t: &Term, out: &mut Vec<(String, usize)>) {
            if let Term::App(f, args) = t {
                if !out.iter().any(|(g, a)| g == f && *a == args.len()) {
                    out.push((f.clone(), args.len()));
                }
                args.iter().for_each(|a| walk(a, out));
            }
        }
        walk(self, &mut out);
        out
    }
}

// Precedence levels used by the printer; they mirror the parser.
const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_PREFIX: u8 = 3;
const PREC_POSTFIX: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Term {
    fn prec(&self) -> u8 {
        match self {
            Term::Var(_) => PREC_ATOM,
            Term::App(f, args) => match (f.as_str(), args.len()) {
                ("add", 2) if self.add_chain().is_some() => PREC_ATOM,
                ("add", 2) | ("sub", 2) => PREC_SUM,
                ("mul", 2) => PREC_PRODUCT,
                ("neg", 1) => PREC_PREFIX,
                ("inv", 1) => PREC_POSTFIX,
                _ => PREC_ATOM,
            },
        }
    }

    /// `Some((k, t))` when the term is a left-associated sum of `k >= 2`
    /// copies of one atom-level term `t`.
    fn add_chain(&self) -> Option<(u64, &Term)> {
        let mut count = 1u64;
        let mut cur = self;
        let mut operand: Option<&Term> = None;
        while let Term::App(f, args) = cur {
            if f != "add" || args.len() != 2 {
                break;
            }
            let right = &args[1];
            match operand {
                None => operand = Some(right),
                Some(o) if o == right => {}
                Some(_) => return None,
            }
            count += 1;
            cur = &args[0];
        }
        let operand = operand?;
        if cur != operand {
            return None;
        }
        // The repeated operand must print at primary level on its own.
        match operand {
            Term::App(g, a) if g == "add" && a.len() == 2 => None,
            _ => Some((count, operand)),
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.write_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => match (name.as_str(), args.len()) {
                ("zero", 0) => f.write_str("0"),
                ("one", 0) => f.write_str("1"),
                ("add", 2) => {
                    if let Some((k, t)) = self.add_chain() {
                        if matches!(t, Term::App(c, a) if c == "one" && a.is_empty()) {
                            return write!(f, "{k}");
                        }
                        write!(f, "{k}")?;
                        return match t {
                            Term::Var(_) => t.write_prec(f, PREC_ATOM),
                            Term::App(c, a) if a.is_empty() && c != "zero" => {
                                t.write_prec(f, PREC_ATOM)
                            }
                            _ => {
                                f.write_str("(")?;
                                t.write_prec(f, 0)?;
                                f.write_str(")")
                            }
                        };
                    }
                    args[0].write_prec(f, PREC_SUM)?;
                    f.write_str(" + ")?;
                    args[1].write_prec(f, PREC_PRODUCT)
                }
                ("sub", 2) => {
                    args[0].write_prec(f, PREC_SUM)?;
                    f.write_str(" - ")?;
                    args[1].write_prec(f, PREC_PRODUCT)
                }
                ("mul", 2) => {
                    args[0].write_prec(f, PREC_PRODUCT)?;
                    f.write_str("*")?;
                    args[1].write_prec(f, PREC_PREFIX)
                }
                ("neg", 1) => {
                    f.write_str("-")?;
                    args[0].write_prec(f, PREC_PREFIX)
                }
                ("inv", 1) => {
                    args[0].write_prec(f, PREC_ATOM)?;
                    f.write_str("^-1")
                }
                (_, 0) => f.write_str(name),
                (_, 1) => {
                    // f(f(...(t))) prints as f^k(t)
                    let mut depth = 1;
                    let mut inner = &args[0];
                    while let Term::App(g, a) = inner {
                        if g != name || a.len() != 1 {
                            break;
                        }
                        depth += 1;
                        inner = &a[0];
                    }
                    if depth > 1 {
                        write!(f, "{name}^{depth}(")?;
                    } else {
                        write!(f, "{name}(")?;
                    }
                    inner.write_prec(f, 0)?;
                    f.write_str(")")
                }
                _ => {
                    write!(f, "{name}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        a.write_prec(f, 0)?;
                    }
                    f.write_str(")")
                }
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }

    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Equation {
        Equation::new(self.lhs.substitute(map), self.rhs.substitute(map))
    }

    pub fn flipped(&self) -> Equation {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A finite system of equations over a declared, ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub language: Language,
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
}

impl System {
    pub fn new(language: Language, variables: Vec<String>, equations: Vec<Equation>) -> Result<Self> {
        let sys = System {
            language,
            variables,
            equations,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.variables.iter().enumerate() {
            if self.variables[..i].contains(v) {
                return Err(ParseError::DuplicateVariable(v.clone()).into());
            }
            if self.language.id(v).is_some() {
                return Err(Error::Malformed(format!(
                    "variable `{v}` clashes with a symbol of the language"
                )));
            }
        }
        for eq in &self.equations {
            eq.lhs.check(&self.language, &self.variables)?;
            eq.rhs.check(&self.language, &self.variables)?;
        }
        Ok(())
    }

    /// Same language and variables, with `extra` appended.
    pub fn with_equations(&self, extra: impl IntoIterator<Item = Equation>) -> System {
        let mut sys = self.clone();
        sys.equations.extend(extra);
        sys
    }

    /// Renders in the system-file format.
    pub fn render(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(", "));
        for eq in &self.equations {
            out.push_str(&format!("eq: {eq}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: Term, b: Term) -> Term {
        Term::binary("mul", a, b)
    }

    #[test]
    fn substitute_examples() {
        let x = Term::var("x");
        let y = Term::var("y");
        let z = Term::var("z");
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), y.clone());
        assert_eq!(mul(x.clone(), x.clone()).substitute(&map), mul(y.clone(), y.clone()));

        let t = Term::unary("f", x.clone());
        assert_eq!(t.substitute(&BTreeMap::new()), t);

        let mut map = BTreeMap::new();
        map.insert("x".to_string(), mul(y.clone(), z.clone()));
        assert_eq!(
            Term::unary("f", x).substitute(&map),
            Term::unary("f", mul(y, z))
        );
    }

    #[test]
    fn duplicate_symbol_rejected() {
        let mut lang = Language::new();
        lang.add("f", 1).unwrap();
        assert_eq!(lang.add("f", 2), Err(ParseError::DuplicateSymbol("f".into())));
    }

    #[test]
    fn printer_sugar() {
        let x = Term::var("x");
        assert_eq!(Term::scalar(3, &x).to_string(), "3x");
        assert_eq!(Term::iterate("f", 2, x.clone()).to_string(), "f^2(x)");
        assert_eq!(
            mul(Term::unary("inv", x.clone()), Term::constant("one")).to_string(),
            "x^-1*1"
        );
        let sum = Term::binary("add", x.clone(), Term::binary("add", x.clone(), Term::var("y")));
        assert_eq!(sum.to_string(), "x + (x + y)");
    }
}
