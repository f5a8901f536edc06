//! Canonical forms of terms over the classical varieties.
//!
//! Atoms are variables and constants that the variety does not interpret
//! (for example `c0` in a diophantized semigroup); they behave like
//! variables. Atoms are ordered by the variable list when one is supplied and
//! otherwise by natural order of their names (`x2 < x10`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::term::{Equation, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    Semigroup,
    Group,
    AbelianGroup,
    CommutativeMonoid,
    IdempotentSemigroup,
    Semilattice,
    RectangularBand,
    LeftZeroSemigroup,
    Unar,
}

impl Variety {
    pub const ALL: [Variety; 9] = [
        Variety::Semigroup,
        Variety::Group,
        Variety::AbelianGroup,
        Variety::CommutativeMonoid,
        Variety::IdempotentSemigroup,
        Variety::Semilattice,
        Variety::RectangularBand,
        Variety::LeftZeroSemigroup,
        Variety::Unar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Semigroup => "semigroup",
            Variety::Group => "group",
            Variety::AbelianGroup => "abelian",
            Variety::CommutativeMonoid => "cmonoid",
            Variety::IdempotentSemigroup => "band",
            Variety::Semilattice => "semilattice",
            Variety::RectangularBand => "rb",
            Variety::LeftZeroSemigroup => "lz",
            Variety::Unar => "unar",
        }
    }

    /// Interpreted symbols; every other non-constant symbol is a mismatch.
    fn interpreted(self) -> &'static [(&'static str, usize)] {
        match self {
            Variety::Group => &[("mul", 2), ("inv", 1), ("one", 0)],
            Variety::AbelianGroup => &[("add", 2), ("neg", 1), ("zero", 0)],
            Variety::CommutativeMonoid => &[("add", 2), ("zero", 0)],
            Variety::Unar => &[],
            _ => &[("mul", 2)],
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = match s.to_ascii_lowercase().as_str() {
            "semigroup" => Variety::Semigroup,
            "group" => Variety::Group,
            "abelian" | "abeliangroup" | "abelian-group" => Variety::AbelianGroup,
            "cmonoid" | "commutativemonoid" | "commutative-monoid" => Variety::CommutativeMonoid,
            "band" | "idempotent" | "idempotentsemigroup" => Variety::IdempotentSemigroup,
            "semilattice" => Variety::Semilattice,
            "rb" | "rectangularband" | "rectangular-band" => Variety::RectangularBand,
            "lz" | "leftzero" | "left-zero" => Variety::LeftZeroSemigroup,
            "unar" => Variety::Unar,
            _ => return Err(Error::Malformed(format!("unknown variety `{s}`"))),
        };
        Ok(v)
    }
}

/// A variable or an uninterpreted constant.
pub type Atom = Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// Runs `x^k` with adjacent atoms distinct.
    Word(Vec<(Atom, u64)>),
    /// Freely reduced runs with nonzero exponents.
    GroupWord(Vec<(Atom, BigInt)>),
    /// Integer coefficients, zero entries dropped.
    Linear(BTreeMap<Atom, BigInt>),
    /// Natural coefficients, zero entries dropped.
    NatLinear(BTreeMap<Atom, BigUint>),
    /// Canonical representative word in the free band.
    Band(Vec<Atom>),
    /// Sorted set of atoms.
    Set(Vec<Atom>),
    /// First and last atom.
    Pair(Atom, Atom),
    Single(Atom),
    /// `f^n(x)`; the symbol name is kept for rendering.
    Iter { symbol: Option<String>, count: u64, atom: Atom },
}

/// Order on atoms: by position in `vars` when present, else natural order.
struct AtomOrder<'v> {
    vars: Option<&'v [String]>,
}

impl AtomOrder<'_> {
    fn key(&self, a: &Atom) -> (usize, usize, Vec<NamePart>) {
        match a {
            Term::Var(v) => {
                let pos = self.vars.and_then(|vs| vs.iter().position(|x| x == v)).unwrap_or(usize::MAX);
                (0, pos, natural_key(v))
            }
            Term::App(c, _) => (1, 0, natural_key(c)),
        }
    }

    fn cmp(&self, a: &Atom, b: &Atom) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum NamePart {
    Text(String),
    Num(u128, usize),
}

fn natural_key(s: &str) -> Vec<NamePart> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_ascii_digit() {
            let mut d = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                d.push(c);
                chars.next();
            }
            out.push(NamePart::Num(d.parse().unwrap_or(u128::MAX), d.len()));
        } else {
            let mut t = String::new();
            while let Some(&c) = chars.peek().filter(|c| !c.is_ascii_digit()) {
                t.push(c);
                chars.next();
            }
            out.push(NamePart::Text(t));
        }
    }
    out
}

fn mismatch(v: Variety, detail: impl Into<String>) -> Error {
    Error::ShapeMismatch {
        variety: v.name().to_string(),
        detail: detail.into(),
    }
}

/// Checks the symbols of `t` against the variety. For unars, returns the
/// single unary symbol used, if any.
fn check_shape(t: &Term, v: Variety) -> Result<Option<String>> {
    let allowed = v.interpreted();
    let mut unary: Option<String> = None;
    for (f, arity) in t.symbols() {
        if arity == 0 {
            continue;
        }
        if v == Variety::Unar {
            if arity != 1 {
                return Err(mismatch(v, format!("`{f}` has arity {arity}; unars have one unary operation")));
            }
            match &unary {
                Some(g) if *g != f => {
                    return Err(mismatch(v, format!("two unary symbols `{g}` and `{f}`")));
                }
                _ => unary = Some(f),
            }
            continue;
        }
        if !allowed.iter().any(|&(g, a)| g == f && a == arity) {
            return Err(mismatch(v, format!("symbol `{f}/{arity}` is not interpreted")));
        }
    }
    Ok(unary)
}

fn is_const(t: &Term, name: &str) -> bool {
    matches!(t, Term::App(f, a) if f == name && a.is_empty())
}

/// Normal form of `t` over `v`.
pub fn normalize(t: &Term, v: Variety) -> Result<NormalForm> {
    normalize_in(t, v, None)
}

/// Normal form with atoms ordered by the declared variable list.
pub fn normalize_in(t: &Term, v: Variety, vars: Option<&[String]>) -> Result<NormalForm> {
    let unary = check_shape(t, v)?;
    let order = AtomOrder { vars };
    Ok(match v {
        Variety::Semigroup => NormalForm::Word(runs(&flatten(t))),
        Variety::Group => {
            let mut word: Vec<(Atom, BigInt)> = Vec::new();
            group_word(t, &BigInt::one(), &mut word);
            NormalForm::GroupWord(word)
        }
        Variety::AbelianGroup => {
            let mut map = BTreeMap::new();
            linear(t, &BigInt::one(), &mut map);
            map.retain(|_, c| !c.is_zero());
            NormalForm::Linear(map)
        }
        Variety::CommutativeMonoid => {
            let mut map = BTreeMap::new();
            linear(t, &BigInt::one(), &mut map);
            NormalForm::NatLinear(
                map.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(a, c)| (a, c.to_biguint().expect("no negation in monoid terms")))
                    .collect(),
            )
        }
        Variety::IdempotentSemigroup => NormalForm::Band(band_normal(&flatten(t))),
        Variety::Semilattice => {
            let mut atoms = flatten(t);
            atoms.sort_by(|a, b| order.cmp(a, b));
            atoms.dedup();
            NormalForm::Set(atoms)
        }
        Variety::RectangularBand => {
            let atoms = flatten(t);
            NormalForm::Pair(atoms[0].clone(), atoms[atoms.len() - 1].clone())
        }
        Variety::LeftZeroSemigroup => NormalForm::Single(flatten(t).swap_remove(0)),
        Variety::Unar => {
            let mut count = 0u64;
            let mut cur = t;
            while let Term::App(_, args) = cur {
                if args.is_empty() {
                    break;
                }
                count += 1;
                cur = &args[0];
            }
            NormalForm::Iter {
                symbol: unary,
                count,
                atom: cur.clone(),
            }
        }
    })
}

/// Leaves of a product tree, left to right.
fn flatten(t: &Term) -> Vec<Atom> {
    let mut out = Vec::new();
    fn go(t: &Term, out: &mut Vec<Atom>) {
        match t {
            Term::App(f, args) if f == "mul" && args.len() == 2 => {
                go(&args[0], out);
                go(&args[1], out);
            }
            _ => out.push(t.clone()),
        }
    }
    go(t, &mut out);
    out
}

fn runs(atoms: &[Atom]) -> Vec<(Atom, u64)> {
    let mut out: Vec<(Atom, u64)> = Vec::new();
    for a in atoms {
        match out.last_mut() {
            Some((b, k)) if b == a => *k += 1,
            _ => out.push((a.clone(), 1)),
        }
    }
    out
}

/// Appends `t^sign` to a freely reduced word.
fn group_word(t: &Term, sign: &BigInt, word: &mut Vec<(Atom, BigInt)>) {
    match t {
        Term::App(f, args) if f == "mul" && args.len() == 2 => {
            if sign.is_positive() {
                group_word(&args[0], sign, word);
                group_word(&args[1], sign, word);
            } else {
                group_word(&args[1], sign, word);
                group_word(&args[0], sign, word);
            }
        }
        Term::App(f, args) if f == "inv" && args.len() == 1 => group_word(&args[0], &-sign, word),
        _ if is_const(t, "one") => {}
        _ => {
            match word.last_mut() {
                Some((a, e)) if a == t => {
                    *e += sign;
                    if e.is_zero() {
                        word.pop();
                    }
                }
                _ => word.push((t.clone(), sign.clone())),
            }
        }
    }
}

fn linear(t: &Term, coef: &BigInt, map: &mut BTreeMap<Atom, BigInt>) {
    match t {
        Term::App(f, args) if f == "add" && args.len() == 2 => {
            linear(&args[0], coef, map);
            linear(&args[1], coef, map);
        }
        Term::App(f, args) if f == "neg" && args.len() == 1 => linear(&args[0], &-coef, map),
        _ if is_const(t, "zero") => {}
        _ => *map.entry(t.clone()).or_insert_with(BigInt::zero) += coef,
    }
}

/// Free band normal form: `nf(w) = nf(p) a b nf(s)` where `p` is the longest
/// prefix missing one letter `a` of the content, `s` the longest suffix
/// missing one letter `b`.
fn band_normal(w: &[Atom]) -> Vec<Atom> {
    let mut content: Vec<&Atom> = Vec::new();
    for a in w {
        if !content.contains(&a) {
            content.push(a);
        }
    }
    match content.len() {
        0 => return Vec::new(),
        1 => return vec![w[0].clone()],
        _ => {}
    }
    let n = content.len();
    // Prefix: up to the first occurrence of the last new letter.
    let mut seen: Vec<&Atom> = Vec::new();
    let mut cut = 0;
    for (i, a) in w.iter().enumerate() {
        if !seen.contains(&a) {
            seen.push(a);
            if seen.len() == n {
                cut = i;
                break;
            }
        }
    }
    let (prefix, a) = (&w[..cut], &w[cut]);
    let mut seen: Vec<&Atom> = Vec::new();
    let mut start = 0;
    for (i, b) in w.iter().enumerate().rev() {
        if !seen.contains(&b) {
            seen.push(b);
            if seen.len() == n {
                start = i;
                break;
            }
        }
    }
    let (b, suffix) = (&w[start], &w[start + 1..]);
    let mut out = band_normal(prefix);
    out.push(a.clone());
    if a != b {
        out.push(b.clone());
    }
    out.extend(band_normal(suffix));
    out
}

/// True iff `t` and `s` are equal in every algebra of the variety.
pub fn equivalent_over(t: &Term, s: &Term, v: Variety) -> Result<bool> {
    Ok(normalize(t, v)? == normalize(s, v)?)
}

/// Normal forms of both sides; for commutative monoids the common part is
/// subtracted, and for unars with `injective` set the smaller iteration count
/// is cancelled.
pub fn normalize_equation(eq: &Equation, v: Variety, injective: bool) -> Result<(NormalForm, NormalForm)> {
    let mut l = normalize(&eq.lhs, v)?;
    let mut r = normalize(&eq.rhs, v)?;
    match (&mut l, &mut r) {
        (NormalForm::NatLinear(a), NormalForm::NatLinear(b)) => {
            for (atom, ca) in a.iter_mut() {
                if let Some(cb) = b.get_mut(atom) {
                    let m = ca.clone().min(cb.clone());
                    *ca -= &m;
                    *cb -= &m;
                }
            }
            a.retain(|_, c| !c.is_zero());
            b.retain(|_, c| !c.is_zero());
        }
        (NormalForm::Iter { count: n, .. }, NormalForm::Iter { count: m, .. }) if injective => {
            let k = (*n).min(*m);
            *n -= k;
            *m -= k;
        }
        _ => {}
    }
    Ok((l, r))
}

fn product(mut factors: Vec<Term>, unit: &str) -> Term {
    if factors.is_empty() {
        return Term::constant(unit);
    }
    let first = factors.remove(0);
    factors.into_iter().fold(first, |acc, f| Term::binary("mul", acc, f))
}

fn sum(terms: Vec<Term>) -> Term {
    let mut it = terms.into_iter();
    match it.next() {
        None => Term::constant("zero"),
        Some(first) => it.fold(first, |acc, t| Term::binary("add", acc, t)),
    }
}

fn small(n: &BigUint) -> u64 {
    u64::try_from(n).expect("coefficient too large to render as a term")
}

impl NormalForm {
    /// A term with this normal form. Atoms of linear forms are written in the
    /// order given by `vars` (natural order without it).
    pub fn to_term_in(&self, vars: Option<&[String]>) -> Term {
        let order = AtomOrder { vars };
        match self {
            NormalForm::Word(runs) => product(
                runs.iter().flat_map(|(a, k)| std::iter::repeat_n(a.clone(), *k as usize)).collect(),
                "mul",
            ),
            NormalForm::GroupWord(runs) => product(
                runs.iter()
                    .flat_map(|(a, e)| {
                        let f = if e.is_positive() { a.clone() } else { Term::unary("inv", a.clone()) };
                        std::iter::repeat_n(f, small(&e.magnitude().clone()) as usize)
                    })
                    .collect(),
                "one",
            ),
            NormalForm::Linear(map) => {
                let mut atoms: Vec<&Atom> = map.keys().collect();
                atoms.sort_by(|a, b| order.cmp(a, b));
                sum(atoms
                    .into_iter()
                    .map(|a| {
                        let c = &map[a];
                        let t = Term::scalar(small(c.magnitude()), a);
                        if c.is_negative() { Term::unary("neg", t) } else { t }
                    })
                    .collect())
            }
            NormalForm::NatLinear(map) => {
                let mut atoms: Vec<&Atom> = map.keys().collect();
                atoms.sort_by(|a, b| order.cmp(a, b));
                sum(atoms.into_iter().map(|a| Term::scalar(small(&map[a]), a)).collect())
            }
            NormalForm::Band(w) => product(w.clone(), "mul"),
            NormalForm::Set(s) => product(s.clone(), "mul"),
            NormalForm::Pair(a, b) => {
                if a == b {
                    a.clone()
                } else {
                    Term::binary("mul", a.clone(), b.clone())
                }
            }
            NormalForm::Single(a) => a.clone(),
            NormalForm::Iter { symbol, count, atom } => {
                Term::iterate(symbol.as_deref().unwrap_or("f"), *count as usize, atom.clone())
            }
        }
    }

    pub fn to_term(&self) -> Term {
        self.to_term_in(None)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Set(s) => {
                let names: Vec<String> = s.iter().map(Term::to_string).collect();
                write!(f, "{{{}}}", names.join(", "))
            }
            NormalForm::Pair(a, b) => write!(f, "({a}, {b})"),
            NormalForm::Iter { count, atom, .. } => write!(f, "({count}, {atom})"),
            other => write!(f, "{}", other.to_term()),
        }
    }
}
