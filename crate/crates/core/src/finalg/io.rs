//! The line-oriented algebra file format.
//!
//! ```text
//! algebra L2
//! language: op mul/2
//! carrier: 2
//! table mul: 0 0 0 1
//! ```
//!
//! Constants are given as `const SYM = E` (or a one-entry table). An optional
//! `labels: a b c` line names the elements; table entries may then use labels
//! as well as indices. Table values may continue over following lines.

use super::{Elem, FiniteAlgebra};
use crate::error::{Error, ParseError, Result};
use crate::parse::parse_language;
use crate::term::Language;

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    ParseError::syntax(line, col, msg).into()
}

struct Pending {
    name: Option<String>,
    language: Option<Language>,
    size: Option<usize>,
    labels: Option<Vec<String>>,
    tables: Vec<Option<Vec<String>>>,
    /// Symbol and line of the table currently being filled.
    open: Option<(usize, usize)>,
}

fn element(tok: &str, size: usize, labels: Option<&[String]>, line: usize) -> Result<Elem> {
    if let Some(l) = labels {
        if let Some(i) = l.iter().position(|x| x == tok) {
            return Ok(i as Elem);
        }
    }
    match tok.parse::<usize>() {
        Ok(v) if v < size => Ok(v as Elem),
        Ok(v) => Err(syntax(line, 1, format!("element {v} outside carrier of size {size}"))),
        Err(_) => Err(syntax(line, 1, format!("unknown element `{tok}`"))),
    }
}

/// Reads an algebra file.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let mut p = Pending {
        name: None,
        language: None,
        size: None,
        labels: None,
        tables: Vec::new(),
        open: None,
    };
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = match body.split_once(':') {
            Some((h, r)) => (h.trim(), Some(r.trim())),
            None => (body, None),
        };
        if let Some(name) = body.strip_prefix("algebra ").or_else(|| (body == "algebra").then_some("")) {
            p.open = None;
            p.name = Some(name.trim().to_string());
            continue;
        }
        if let Some(decl) = body.strip_prefix("const ") {
            p.open = None;
            let lang = p.language.as_ref().ok_or_else(|| syntax(no, 1, "`const` before `language:`"))?;
            let (sym, val) = decl
                .split_once('=')
                .ok_or_else(|| syntax(no, 1, "expected `const SYM = E`"))?;
            let sym = sym.trim();
            let id = lang.id(sym).ok_or_else(|| ParseError::UnknownSymbol {
                name: sym.to_string(),
                line: no,
                col: 7,
            })?;
            if lang.symbol(id).arity != 0 {
                return Err(syntax(no, 1, format!("`{sym}` is not a constant")));
            }
            p.tables[id] = Some(vec![val.trim().to_string()]);
            continue;
        }
        match (head, rest) {
            ("language", Some(r)) => {
                p.open = None;
                let lang = parse_language(r).map_err(|e| match e {
                    ParseError::Syntax { col, msg, .. } => syntax(no, col + raw.find(r).unwrap_or(0), msg),
                    other => other.into(),
                })?;
                p.tables = vec![None; lang.len()];
                p.language = Some(lang);
            }
            ("carrier", Some(r)) => {
                p.open = None;
                let k: usize = r
                    .parse()
                    .map_err(|_| syntax(no, 1, format!("carrier size `{r}` is not a number")))?;
                p.size = Some(k);
            }
            ("labels", Some(r)) => {
                p.open = None;
                p.labels = Some(r.split_whitespace().map(str::to_string).collect());
            }
            (h, Some(r)) if h.starts_with("table ") => {
                let lang = p.language.as_ref().ok_or_else(|| syntax(no, 1, "`table` before `language:`"))?;
                let sym = h["table ".len()..].trim();
                let id = lang.id(sym).ok_or_else(|| ParseError::UnknownSymbol {
                    name: sym.to_string(),
                    line: no,
                    col: 7,
                })?;
                if p.tables[id].is_some() {
                    return Err(syntax(no, 1, format!("second table for `{sym}`")));
                }
                p.tables[id] = Some(r.split_whitespace().map(str::to_string).collect());
                p.open = Some((id, no));
            }
            _ => match p.open {
                Some((id, _)) => {
                    p.tables[id]
                        .as_mut()
                        .expect("open table")
                        .extend(body.split_whitespace().map(str::to_string));
                }
                None => return Err(syntax(no, 1, format!("unrecognized line `{body}`"))),
            },
        }
    }
    let lang = p.language.ok_or_else(|| Error::Malformed("missing `language:` line".into()))?;
    let size = p.size.ok_or_else(|| Error::Malformed("missing `carrier:` line".into()))?;
    if size == 0 {
        return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
    }
    let labels = p.labels;
    if let Some(l) = &labels {
        if l.len() != size {
            return Err(Error::InvalidAlgebra(format!("{} labels for carrier of size {size}", l.len())));
        }
        if (1..l.len()).any(|i| l[..i].contains(&l[i])) {
            return Err(Error::InvalidAlgebra("duplicate element label".into()));
        }
    }
    let mut tables = Vec::with_capacity(lang.len());
    for (id, raw) in p.tables.into_iter().enumerate() {
        let sym = lang.symbol(id);
        let raw = raw.ok_or_else(|| Error::InvalidAlgebra(format!("no table for `{}`", sym.name)))?;
        let table = raw
            .iter()
            .map(|t| element(t, size, labels.as_deref(), 0))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::Parse(ParseError::Syntax { msg, .. }) => {
                    Error::InvalidAlgebra(format!("table for `{}`: {msg}", sym.name))
                }
                other => other,
            })?;
        tables.push(table);
    }
    let alg = FiniteAlgebra::new(p.name.unwrap_or_else(|| "A".into()), lang, size, tables)?;
    match labels {
        Some(l) => alg.with_labels(l),
        None => Ok(alg),
    }
}

/// Writes an algebra in the file format read by [`parse_algebra`].
pub fn render_algebra(a: &FiniteAlgebra) -> String {
    let mut out = format!("algebra {}\nlanguage: {}\ncarrier: {}\n", a.name(), a.language(), a.size());
    if let Some(l) = a.labels() {
        out.push_str(&format!("labels: {}\n", l.join(" ")));
    }
    for (id, s) in a.language().symbols().iter().enumerate() {
        if s.arity == 0 {
            out.push_str(&format!("const {} = {}\n", s.name, a.label(a.constant(id))));
        } else {
            let vals: Vec<String> = a.table(id).iter().map(|&v| a.label(v)).collect();
            out.push_str(&format!("table {}: {}\n", s.name, vals.join(" ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::{ln, rbnm, zn, zn_ring};

    #[test]
    fn reads_basic_file() {
        let a = parse_algebra("algebra L2\nlanguage: op mul/2\ncarrier: 2\ntable mul: 0 0 0 1\n").unwrap();
        assert_eq!(a, ln(2).unwrap().renamed("L2"));
    }

    #[test]
    fn constants_and_continuations() {
        let text = "algebra Z3\nlanguage: op add/2; op neg/1; const zero\ncarrier: 3\n\
                    table add: 0 1 2\n  1 2 0\n  2 0 1\ntable neg: 0 2 1\nconst zero = 0\n";
        assert_eq!(parse_algebra(text).unwrap(), zn(3).unwrap());
    }

    #[test]
    fn round_trip() {
        for a in [zn(4).unwrap(), rbnm(2, 3).unwrap(), zn_ring(2, true).unwrap()] {
            let back = parse_algebra(&render_algebra(&a)).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let short = "language: op mul/2\ncarrier: 2\ntable mul: 0 0 0\n";
        assert!(matches!(parse_algebra(short), Err(Error::InvalidAlgebra(_))));
        let open = "language: op mul/2\ncarrier: 2\ntable mul: 0 0 0 2\n";
        assert!(matches!(parse_algebra(open), Err(Error::InvalidAlgebra(_))));
        let missing = "language: op mul/2; const e\ncarrier: 2\ntable mul: 0 0 0 1\n";
        assert!(matches!(parse_algebra(missing), Err(Error::InvalidAlgebra(_))));
        let unknown = "language: op mul/2\ncarrier: 2\ntable add: 0 0 0 1\n";
        assert!(matches!(
            parse_algebra(unknown),
            Err(Error::Parse(ParseError::UnknownSymbol { line: 3, .. }))
        ));
    }
}
