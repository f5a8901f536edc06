//! Readers for the language block, system files, formula files and terms.
//!
//! Term grammar, from loosest to tightest binding:
//!
//! ```text
//! sum     := product { ("+" | "-") product }
//! product := prefix { "*" prefix }
//! prefix  := "-" prefix | postfix
//! postfix := primary { "^" ( "-1" | INT ) }
//! primary := INT [primary] | IDENT | IDENT "(" sum { "," sum } ")"
//!          | IDENT "^" INT "(" sum ")" | "(" sum ")"
//! ```
//!
//! `*` is `mul` and `+` is `add`. Binary `-` is `sub` when declared and
//! `a + neg(b)` otherwise; prefix `-` is `neg`, or `sub(0, .)`. `^-1` is `inv`
//! and `^k` a left-associated `mul` power. `0` and `1` name `zero` and `one`;
//! a numeral `k` followed by a primary is the `k`-fold sum, a bare `k >= 2`
//! the `k`-fold sum of `one`. `f^k(t)` iterates a unary symbol.

use crate::error::{ParseError, Result};
use crate::formulas::{Formula, Literal};
use crate::term::{Equation, Language, System, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    Neq,
    Arrow,
    Amp,
    Pipe,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokenizes `text`, which starts at column `col0` of line `line`.
fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, col });
            i += 1;
            continue;
        }
        match c {
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Spanned { tok: Tok::Arrow, col });
                i += 2;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, col });
                i += 1;
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                out.push(Spanned { tok: Tok::Neq, col });
                i += 2;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<u64>()
                    .map_err(|_| ParseError::syntax(line, col, format!("numeral `{s}` out of range")))?;
                out.push(Spanned { tok: Tok::Num(n), col });
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    col,
                });
            }
            _ => return Err(ParseError::syntax(line, col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// How identifiers that are not symbols are treated.
enum Scope<'v> {
    /// Only these names are variables.
    Fixed(&'v [String]),
    /// Unknown names become variables, recorded in order of appearance.
    Infer(Vec<String>),
}

struct TermParser<'a, 'v> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
    lang: &'a Language,
    scope: Scope<'v>,
}

impl<'a, 'v> TermParser<'a, 'v> {
    fn new(text: &str, line: usize, col0: usize, lang: &'a Language, scope: Scope<'v>) -> Result<Self, ParseError> {
        Ok(TermParser {
            toks: lex(text, line, col0)?,
            pos: 0,
            line,
            end_col: col0 + text.chars().count(),
            lang,
            scope,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col(), msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(format!("expected {wanted}, found {}", t.describe())),
            None => self.err(format!("expected {wanted}, found end of line")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    /// Application of `name`, checked against the language.
    fn apply(&self, name: &str, args: Vec<Term>, col: usize) -> Result<Term, ParseError> {
        match self.lang.arity(name) {
            None => Err(ParseError::UnknownSymbol {
                name: name.to_string(),
                line: self.line,
                col,
            }),
            Some(a) if a != args.len() => Err(ParseError::ArityMismatch {
                name: name.to_string(),
                expected: a,
                found: args.len(),
                line: self.line,
                col,
            }),
            Some(_) => Ok(Term::App(name.to_string(), args)),
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.product()?;
        loop {
            let col = self.col();
            if self.eat(&Tok::Plus) {
                let rhs = self.product()?;
                acc = self.apply("add", vec![acc, rhs], col)?;
            } else if self.eat(&Tok::Minus) {
                let rhs = self.product()?;
                acc = if self.lang.contains("sub", 2) {
                    Term::binary("sub", acc, rhs)
                } else {
                    let neg = self.apply("neg", vec![rhs], col)?;
                    self.apply("add", vec![acc, neg], col)?
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.prefix()?;
        loop {
            let col = self.col();
            if self.eat(&Tok::Star) {
                let rhs = self.prefix()?;
                acc = self.apply("mul", vec![acc, rhs], col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn prefix(&mut self) -> Result<Term, ParseError> {
        let col = self.col();
        if self.eat(&Tok::Minus) {
            let inner = self.prefix()?;
            if self.lang.contains("neg", 1) {
                return Ok(Term::unary("neg", inner));
            }
            if self.lang.contains("sub", 2) && self.lang.contains("zero", 0) {
                return Ok(Term::binary("sub", Term::constant("zero"), inner));
            }
            return self.apply("neg", vec![inner], col);
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            let col = self.col();
            self.pos += 1;
            if self.eat(&Tok::Minus) {
                match self.peek() {
                    Some(Tok::Num(1)) => {
                        self.pos += 1;
                        t = self.apply("inv", vec![t], col)?;
                    }
                    _ => return Err(self.unexpected("`1` after `^-`")),
                }
            } else {
                match self.peek().cloned() {
                    Some(Tok::Num(k)) if k >= 1 => {
                        self.pos += 1;
                        let base = t.clone();
                        for _ in 1..k {
                            t = self.apply("mul", vec![t, base.clone()], col)?;
                        }
                    }
                    _ => return Err(self.unexpected("a positive exponent or `-1`")),
                }
            }
        }
        Ok(t)
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Num(_)))
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Num(k)) => {
                self.pos += 1;
                if self.starts_primary() {
                    let operand = self.primary()?;
                    return self.scalar(k, operand, col);
                }
                match k {
                    0 => self.apply("zero", vec![], col),
                    1 => self.apply("one", vec![], col),
                    _ => {
                        let one = self.apply("one", vec![], col)?;
                        self.scalar(k, one, col)
                    }
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                // f^k(t)
                if self.peek() == Some(&Tok::Caret)
                    && matches!(self.peek_at(1), Some(Tok::Num(_)))
                    && self.peek_at(2) == Some(&Tok::LParen)
                    && self.lang.arity(&name) == Some(1)
                {
                    let Some(Tok::Num(k)) = self.peek_at(1).cloned() else { unreachable!() };
                    self.pos += 3;
                    let inner = self.sum()?;
                    self.expect(&Tok::RParen)?;
                    return Ok(Term::iterate(&name, k as usize, inner));
                }
                if self.eat(&Tok::LParen) {
                    let mut args = vec![self.sum()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.sum()?);
                    }
                    self.expect(&Tok::RParen)?;
                    return self.apply(&name, args, col);
                }
                self.name(name, col)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn scalar(&self, k: u64, operand: Term, col: usize) -> Result<Term, ParseError> {
        if k == 0 {
            return self.apply("zero", vec![], col);
        }
        if k >= 2 {
            self.apply("add", vec![operand.clone(), operand.clone()], col)?;
        }
        Ok(Term::scalar(k, &operand))
    }

    /// A bare identifier: a variable or a constant.
    fn name(&mut self, name: String, col: usize) -> Result<Term, ParseError> {
        let is_var = match &self.scope {
            Scope::Fixed(vars) => vars.contains(&name),
            Scope::Infer(seen) => seen.contains(&name),
        };
        if is_var {
            return Ok(Term::Var(name));
        }
        if self.lang.id(&name).is_some() {
            return self.apply(&name, vec![], col);
        }
        match &mut self.scope {
            Scope::Infer(seen) => {
                seen.push(name.clone());
                Ok(Term::Var(name))
            }
            Scope::Fixed(_) => Err(ParseError::UnknownSymbol {
                name,
                line: self.line,
                col,
            }),
        }
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let lhs = self.sum()?;
        self.expect(&Tok::Eq)?;
        let rhs = self.sum()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let lhs = self.sum()?;
        let positive = if self.eat(&Tok::Eq) {
            true
        } else if self.eat(&Tok::Neq) {
            false
        } else {
            return Err(self.unexpected("`=` or `!=`"));
        };
        let rhs = self.sum()?;
        Ok(Literal { lhs, rhs, positive })
    }

    fn is_true_keyword(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "true")
            && matches!(self.peek_at(1), Some(Tok::Arrow) | None)
    }

    /// `[premises] -> conclusions`, or a bare disjunction.
    fn formula_body(&mut self) -> Result<(Vec<Literal>, Vec<Literal>), ParseError> {
        let mut premises = Vec::new();
        if self.is_true_keyword() {
            self.pos += 1;
            self.expect(&Tok::Arrow)?;
            return Ok((premises, self.disjunction()?));
        }
        if self.eat(&Tok::Arrow) {
            return Ok((premises, self.disjunction()?));
        }
        let first = self.literal()?;
        match self.peek() {
            Some(Tok::Amp) | Some(Tok::Arrow) => {
                premises.push(first);
                while self.eat(&Tok::Amp) {
                    premises.push(self.literal()?);
                }
                self.expect(&Tok::Arrow)?;
                Ok((premises, self.disjunction()?))
            }
            _ => {
                let mut concl = vec![first];
                while self.eat(&Tok::Pipe) {
                    concl.push(self.literal()?);
                }
                Ok((premises, concl))
            }
        }
    }

    /// One or more literals joined by `|`; `false` is the empty disjunction.
    fn disjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "false") && self.peek_at(1).is_none() {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.literal()?];
        while self.eat(&Tok::Pipe) {
            out.push(self.literal()?);
        }
        Ok(out)
    }
}

/// One logical line: number, content with comments stripped, start column.
struct Line<'t> {
    no: usize,
    text: &'t str,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            None
        } else {
            Some(Line { no: i + 1, text: body })
        }
    })
}

/// Splits `key: rest` and returns the 1-based column where `rest` begins.
fn keyed<'t>(line: &Line<'t>, key: &str) -> Option<(&'t str, usize)> {
    let rest = line.text.trim_start().strip_prefix(key)?;
    let rest = rest.trim_start().strip_prefix(':')?;
    Some((rest, line.text.len() - rest.len() + 1))
}

/// Parses a language block: `op NAME/ARITY` and `const NAME` items separated
/// by `;` or newlines.
pub fn parse_language(text: &str) -> Result<Language, ParseError> {
    let mut lang = Language::new();
    for (li, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for item in body.split(';') {
            let col = offset + item.len() - item.trim_start().len() + 1;
            offset += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            parse_language_item(item, li + 1, col, &mut lang)?;
        }
    }
    Ok(lang)
}

fn parse_language_item(item: &str, line: usize, col: usize, lang: &mut Language) -> Result<(), ParseError> {
    let (kw, rest) = item
        .split_once(char::is_whitespace)
        .ok_or_else(|| ParseError::syntax(line, col, format!("expected `op NAME/ARITY` or `const NAME`, found `{item}`")))?;
    let rest = rest.trim();
    let valid_name = |s: &str| s.chars().next().is_some_and(is_ident_start) && s.chars().all(is_ident_char);
    match kw {
        "op" => {
            let (name, arity) = rest
                .split_once('/')
                .ok_or_else(|| ParseError::syntax(line, col, format!("expected NAME/ARITY, found `{rest}`")))?;
            let (name, arity) = (name.trim(), arity.trim());
            if !valid_name(name) {
                return Err(ParseError::syntax(line, col, format!("invalid symbol name `{name}`")));
            }
            let arity: usize = arity
                .parse()
                .map_err(|_| ParseError::syntax(line, col, format!("invalid arity `{arity}`")))?;
            lang.add(name, arity)?;
        }
        "const" => {
            if !valid_name(rest) {
                return Err(ParseError::syntax(line, col, format!("invalid constant name `{rest}`")));
            }
            lang.add(rest, 0)?;
        }
        other => {
            return Err(ParseError::syntax(line, col, format!("unknown declaration `{other}`")));
        }
    }
    Ok(())
}

fn parse_vars(rest: &str, line: usize, col: usize) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    for v in rest.split(',') {
        let v = v.trim();
        if v.is_empty() {
            if rest.trim().is_empty() {
                break;
            }
            return Err(ParseError::syntax(line, col, "empty variable name"));
        }
        if !(v.chars().next().is_some_and(is_ident_start) && v.chars().all(is_ident_char)) {
            return Err(ParseError::syntax(line, col, format!("invalid variable name `{v}`")));
        }
        if vars.iter().any(|x| x == v) {
            return Err(ParseError::DuplicateVariable(v.to_string()));
        }
        vars.push(v.to_string());
    }
    Ok(vars)
}

/// Parses a system file: a `vars:` line followed by `eq: TERM = TERM` lines.
pub fn parse_system(text: &str, lang: &Language) -> Result<System> {
    let mut vars: Option<Vec<String>> = None;
    let mut equations = Vec::new();
    for line in lines(text) {
        if let Some((rest, col)) = keyed(&line, "vars") {
            if vars.is_some() {
                return Err(ParseError::syntax(line.no, 1, "second `vars:` line").into());
            }
            let vs = parse_vars(rest, line.no, col)?;
            for v in &vs {
                if lang.id(v).is_some() {
                    return Err(ParseError::syntax(line.no, col, format!("variable `{v}` clashes with a symbol")).into());
                }
            }
            vars = Some(vs);
        } else if let Some((rest, col)) = keyed(&line, "eq") {
            let vs = vars
                .as_deref()
                .ok_or_else(|| ParseError::syntax(line.no, 1, "`eq:` before `vars:`"))?;
            let mut p = TermParser::new(rest, line.no, col, lang, Scope::Fixed(vs))?;
            let eq = p.equation()?;
            p.finish()?;
            equations.push(eq);
        } else {
            return Err(ParseError::syntax(line.no, 1, "expected `vars:` or `eq:`").into());
        }
    }
    let variables = vars.unwrap_or_default();
    System::new(lang.clone(), variables, equations)
}

/// Parses one term over the given variables.
pub fn parse_term(text: &str, lang: &Language, vars: &[String]) -> Result<Term, ParseError> {
    let mut p = TermParser::new(text, 1, 1, lang, Scope::Fixed(vars))?;
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses `TERM = TERM` over the given variables.
pub fn parse_equation(text: &str, lang: &Language, vars: &[String]) -> Result<Equation, ParseError> {
    let mut p = TermParser::new(text, 1, 1, lang, Scope::Fixed(vars))?;
    let eq = p.equation()?;
    p.finish()?;
    Ok(eq)
}

/// Parses one formula body, e.g. `x+z=y+z -> x=y`. Identifiers that are not
/// symbols of `lang` become the formula's variables, in order of appearance.
pub fn parse_formula(text: &str, lang: &Language) -> Result<Formula, ParseError> {
    parse_formula_at(text, 1, 1, lang, None)
}

fn parse_formula_at(
    text: &str,
    line: usize,
    col: usize,
    lang: &Language,
    vars: Option<&[String]>,
) -> Result<Formula, ParseError> {
    let scope = match vars {
        Some(v) => Scope::Fixed(v),
        None => Scope::Infer(Vec::new()),
    };
    let mut p = TermParser::new(text, line, col, lang, scope)?;
    let (premises, conclusion) = p.formula_body()?;
    p.finish()?;
    let variables = match (&p.scope, vars) {
        (_, Some(v)) => v.to_vec(),
        (Scope::Infer(seen), None) => seen.clone(),
        (Scope::Fixed(v), None) => v.to_vec(),
    };
    Ok(Formula {
        variables,
        premises,
        conclusion,
    })
}

/// Parses a formula file: an optional `vars:` line, then `fml:` lines.
pub fn parse_formula_file(text: &str, lang: &Language) -> Result<Vec<Formula>, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut out = Vec::new();
    for line in lines(text) {
        if let Some((rest, col)) = keyed(&line, "vars") {
            vars = Some(parse_vars(rest, line.no, col)?);
        } else if let Some((rest, col)) = keyed(&line, "fml") {
            out.push(parse_formula_at(rest, line.no, col, lang, vars.as_deref())?);
        } else {
            return Err(ParseError::syntax(line.no, 1, "expected `vars:` or `fml:`"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semigroup() -> Language {
        parse_language("op mul/2").unwrap()
    }

    #[test]
    fn language_examples() {
        let l = parse_language("op mul/2").unwrap();
        assert_eq!(l.arity("mul"), Some(2));
        let l = parse_language("op add/2; const zero").unwrap();
        assert_eq!(l.arity("add"), Some(2));
        assert_eq!(l.arity("zero"), Some(0));
        assert_eq!(
            parse_language("op f/1; op f/2"),
            Err(ParseError::DuplicateSymbol("f".into()))
        );
    }

    #[test]
    fn language_syntax_error_has_position() {
        match parse_language("op mul/2\nop add") {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn system_examples() {
        let lang = semigroup();
        let a = parse_system("vars: x,y\neq: mul(x,y) = mul(y,x)", &lang).unwrap();
        assert_eq!(a.equations.len(), 1);
        assert_eq!(a.variables, vec!["x", "y"]);
        let b = parse_system("vars: x,y\neq: x*y = y*x", &lang).unwrap();
        assert_eq!(a, b);

        let f1 = parse_language("op f/1").unwrap();
        let err = parse_system("vars: x,y\neq: f(x,y)=x", &f1).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::Parse(ParseError::ArityMismatch { expected: 1, found: 2, .. })
        ));
    }

    #[test]
    fn unknown_symbol_reported() {
        let err = parse_system("vars: x\neq: g(x) = x", &semigroup()).unwrap_err();
        assert!(matches!(err, crate::Error::Parse(ParseError::UnknownSymbol { ref name, line: 2, .. }) if name == "g"));
    }

    #[test]
    fn sugar_expansion() {
        let lang = Language::additive_group();
        let vars = vec!["x".to_string(), "y".to_string()];
        let t = parse_term("x - y", &lang, &vars).unwrap();
        assert_eq!(
            t,
            Term::binary("add", Term::var("x"), Term::unary("neg", Term::var("y")))
        );
        let t = parse_term("3x", &lang, &vars).unwrap();
        assert_eq!(t, Term::scalar(3, &Term::var("x")));
        let ring = Language::ring(false);
        let t = parse_term("-x", &ring, &vars).unwrap();
        assert_eq!(t, Term::binary("sub", Term::constant("zero"), Term::var("x")));
        let g = Language::group();
        let t = parse_term("(x*x^-1)*y", &g, &vars).unwrap();
        assert_eq!(t.to_string(), "x*x^-1*y");
        let u = Language::unar();
        assert_eq!(parse_term("f^3(x)", &u, &vars).unwrap(), Term::iterate("f", 3, Term::var("x")));
    }

    #[test]
    fn numerals_need_declared_constants() {
        let vars = vec!["x".to_string()];
        assert!(parse_term("0", &semigroup(), &vars).is_err());
        let nat = Language::naturals();
        assert_eq!(
            parse_term("2", &nat, &vars).unwrap(),
            Term::binary("add", Term::constant("one"), Term::constant("one"))
        );
    }

    #[test]
    fn formula_forms() {
        let add = Language::commutative_monoid();
        let f = parse_formula("x+z=y+z -> x=y", &add).unwrap();
        assert_eq!(f.variables, vec!["x", "z", "y"]);
        assert_eq!(f.premises.len(), 1);
        let f = parse_formula("-> x=x", &add).unwrap();
        assert!(f.premises.is_empty());
        let f = parse_formula("true -> x=x", &add).unwrap();
        assert!(f.premises.is_empty());
        let s = semigroup();
        let f = parse_formula("-> x*y=x | x*y=y", &s).unwrap();
        assert_eq!(f.conclusion.len(), 2);
        let f = parse_formula("x != y & x*y = y*x -> x = y", &s).unwrap();
        assert!(!f.premises[0].positive);
    }

    #[test]
    fn formula_file_uses_declared_vars() {
        let s = semigroup();
        let fs = parse_formula_file("vars: y, x\nfml: -> x*y = y*x\nfml: x=x", &s).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].variables, vec!["y", "x"]);
    }
}
