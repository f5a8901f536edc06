//! Command reports in human-readable and line-oriented machine form.
//!
//! Machine form, one entry per line:
//!
//! ```text
//! command=uag solve --algebra @Ln(2) --system sq.sys
//! verdict=true
//! field.points=(0, 0)\n(0, 1)
//! usage.tuples=6
//! ```
//!
//! Values escape `\` as `\\` and newlines as `\n`.

use std::fmt;
use std::str::FromStr;

use crate::budget::Usage;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    /// The budget ran out before an answer was reached.
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(Verdict::True),
            "false" => Ok(Verdict::False),
            "unknown" => Ok(Verdict::Unknown),
            _ => Err(Error::Malformed(format!("verdict `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub command: String,
    pub verdict: Option<Verdict>,
    /// Ordered key/value pairs; values may span lines.
    pub fields: Vec<(String, String)>,
    pub usage: Vec<(String, u64)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn verdict(&mut self, v: impl Into<Verdict>) -> &mut Self {
        self.verdict = Some(v.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    /// A multi-line field from a list of items.
    pub fn list<I, T>(&mut self, key: &str, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: fmt::Display,
    {
        let lines: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
        self.field(key, lines.join("\n"))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_usage(&mut self, u: Usage) -> &mut Self {
        self.usage = vec![
            ("tuples".into(), u.tuples),
            ("elements".into(), u.elements),
            ("nodes".into(), u.nodes),
        ];
        self
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(v) = self.verdict {
            out += &format!("verdict: {v}\n");
        }
        for (k, v) in &self.fields {
            if v.contains('\n') || v.is_empty() {
                out += &format!("{k}:\n");
                for line in v.lines() {
                    out += &format!("  {line}\n");
                }
            } else {
                out += &format!("{k}: {v}\n");
            }
        }
        if !self.usage.is_empty() {
            let parts: Vec<String> = self.usage.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &format!("usage: {}\n", parts.join(" "));
        }
        out
    }

    pub fn to_machine(&self) -> String {
        let mut out = format!("command={}\n", escape(&self.command));
        if let Some(v) = self.verdict {
            out += &format!("verdict={v}\n");
        }
        for (k, v) in &self.fields {
            out += &format!("field.{k}={}\n", escape(v));
        }
        for (k, v) in &self.usage {
            out += &format!("usage.{k}={v}\n");
        }
        out
    }

    /// Inverse of [`Report::to_machine`].
    pub fn parse_machine(text: &str) -> Result<Report> {
        let mut r = Report::default();
        let mut saw_command = false;
        for (i, line) in text.lines().enumerate() {
            let bad = |what: &str| Error::Malformed(format!("report line {}: {what}", i + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("missing `=`"))?;
            let value = unescape(value).ok_or_else(|| bad("bad escape"))?;
            if key == "command" {
                r.command = value;
                saw_command = true;
            } else if key == "verdict" {
                r.verdict = Some(value.parse()?);
            } else if let Some(k) = key.strip_prefix("field.") {
                r.fields.push((k.to_string(), value));
            } else if let Some(k) = key.strip_prefix("usage.") {
                r.usage.push((k.to_string(), value.parse().map_err(|_| bad("usage is not a count"))?));
            } else {
                return Err(bad(&format!("unknown key `{key}`")));
            }
        }
        if !saw_command {
            return Err(Error::Malformed("report without command".into()));
        }
        Ok(r)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n")
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next()? {
                '\\' => out.push('\\'),
                'n' => out.push('\n'),
                _ => return None,
            }
        } else {
            out.push(c);
        }
    }
    Some(out)
}
