//! Two infinite structures with exact procedures: free unars and the
//! bicyclic monoid.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::term::{Equation, System, Term};

/// `f^n(x_lhs) = f^m(x_rhs)`, variables by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnarEquation {
    pub n: u64,
    pub lhs: usize,
    pub m: u64,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnarSystem {
    pub symbol: String,
    pub variables: Vec<String>,
    pub equations: Vec<UnarEquation>,
}

/// Splits `f^k(x)` into `(k, x)`, requiring a single unary symbol throughout.
fn unar_side(t: &Term, symbol: &mut Option<String>) -> Result<(u64, String)> {
    let mut k = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::Var(v) => return Ok((k, v.clone())),
            Term::App(f, args) if args.len() == 1 => {
                match symbol {
                    Some(s) if s != f => {
                        return Err(Error::Malformed(format!("unar terms use one symbol, found `{s}` and `{f}`")))
                    }
                    Some(_) => {}
                    None => *symbol = Some(f.clone()),
                }
                k += 1;
                cur = &args[0];
            }
            _ => return Err(Error::Malformed(format!("`{t}` is not of the form f^k(x)"))),
        }
    }
}

impl UnarSystem {
    pub fn from_system(sys: &System) -> Result<Self> {
        let mut symbol = None;
        let index = |v: &str| {
            sys.variables
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::MissingBinding(v.to_string()))
        };
        let mut equations = Vec::new();
        for eq in &sys.equations {
            let (n, x) = unar_side(&eq.lhs, &mut symbol)?;
            let (m, y) = unar_side(&eq.rhs, &mut symbol)?;
            equations.push(UnarEquation { n, lhs: index(&x)?, m, rhs: index(&y)? });
        }
        let symbol = symbol
            .or_else(|| sys.language.symbols().iter().find(|s| s.arity == 1).map(|s| s.name.clone()))
            .unwrap_or_else(|| "f".to_string());
        Ok(UnarSystem { symbol, variables: sys.variables.clone(), equations })
    }

    fn term(&self, k: u64, v: usize) -> Term {
        Term::iterate(&self.symbol, k as usize, Term::var(self.variables[v].clone()))
    }
}

/// `var = f^power(root)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub var: String,
    pub power: u64,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnarSolution {
    /// The system implies `f^cycle(var) = var` with `cycle > 0`, which has no
    /// solution in a free unar.
    Inconsistent { var: String, cycle: u64, witness: Equation },
    /// Every non-root variable bound over a root; the coordinate unar is
    /// free of rank `roots.len()`.
    Reduced { bindings: Vec<Binding>, roots: Vec<String> },
}

impl UnarSolution {
    pub fn rank(&self) -> Option<usize> {
        match self {
            UnarSolution::Reduced { roots, .. } => Some(roots.len()),
            UnarSolution::Inconsistent { .. } => None,
        }
    }
}

/// Union-find where `offset[x]` is the depth of `x` over its parent:
/// `x = f^offset(parent)` in the sense of potentials, which may be negative
/// before roots are normalized.
struct Potentials {
    parent: Vec<usize>,
    offset: Vec<i128>,
}

impl Potentials {
    fn new(n: usize) -> Self {
        Potentials { parent: (0..n).collect(), offset: vec![0; n] }
    }

    /// Root of `x` and the potential of `x` relative to it.
    fn find(&mut self, x: usize) -> (usize, i128) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (r, d) = self.find(p);
        self.parent[x] = r;
        self.offset[x] += d;
        (r, self.offset[x])
    }
}

/// Decides a system over a free unar. Equations are first cancelled by
/// injectivity of `f`; then `f^n(x) = f^m(y)` says `x` and `y` hang off a
/// common root with depths differing by `m - n`.
pub fn solve_free_unar(sys: &UnarSystem) -> UnarSolution {
    let n = sys.variables.len();
    let mut uf = Potentials::new(n);
    for eq in &sys.equations {
        let (rx, px) = uf.find(eq.lhs);
        let (ry, py) = uf.find(eq.rhs);
        // Depth of the lhs side minus depth of the rhs side.
        let lhs = px + eq.n as i128;
        let rhs = py + eq.m as i128;
        if rx == ry {
            if lhs != rhs {
                let cycle = (lhs - rhs).unsigned_abs() as u64;
                let v = eq.lhs;
                return UnarSolution::Inconsistent {
                    var: sys.variables[v].clone(),
                    cycle,
                    witness: Equation::new(sys.term(cycle, v), sys.term(0, v)),
                };
            }
        } else {
            // Make rx a child of ry: pot(rx) + px + n = py + m.
            uf.parent[rx] = ry;
            uf.offset[rx] = rhs - lhs;
        }
    }
    // Each class is rooted at its shallowest variable, first declared wins.
    let pots: Vec<(usize, i128)> = (0..n).map(|x| uf.find(x)).collect();
    let mut root_of_class: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let (r, p) = pots[x];
        match root_of_class[r] {
            Some(best) if pots[best].1 <= p => {}
            _ => root_of_class[r] = Some(x),
        }
    }
    let mut roots = Vec::new();
    let mut bindings = Vec::new();
    for x in 0..n {
        let (r, p) = pots[x];
        let root = root_of_class[r].expect("class has a member");
        if root == x {
            roots.push(sys.variables[x].clone());
        } else {
            bindings.push(Binding {
                var: sys.variables[x].clone(),
                power: (p - pots[root].1) as u64,
                root: sys.variables[root].clone(),
            });
        }
    }
    UnarSolution::Reduced { bindings, roots }
}

/// `b^n a^m` in the bicyclic monoid `<a, b | ab = 1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicyclic {
    pub n: u64,
    pub m: u64,
}

impl Bicyclic {
    pub const ONE: Bicyclic = Bicyclic { n: 0, m: 0 };
    pub const A: Bicyclic = Bicyclic { n: 0, m: 1 };
    pub const B: Bicyclic = Bicyclic { n: 1, m: 0 };

    pub fn new(n: u64, m: u64) -> Self {
        Bicyclic { n, m }
    }

    pub fn mul(self, o: Bicyclic) -> Bicyclic {
        if self.m <= o.n {
            Bicyclic::new(self.n + o.n - self.m, o.m)
        } else {
            Bicyclic::new(self.n, self.m - o.n + o.m)
        }
    }

    pub fn pow(self, k: u64) -> Bicyclic {
        (0..k).fold(Bicyclic::ONE, |acc, _| acc.mul(self))
    }

    pub fn is_idempotent(self) -> bool {
        self.n == self.m
    }
}

impl fmt::Display for Bicyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |letter: char, k: u64| match k {
            0 => String::new(),
            1 => letter.to_string(),
            _ => format!("{letter}^{k}"),
        };
        match (self.n, self.m) {
            (0, 0) => f.write_str("1"),
            (n, m) => write!(f, "{}{}", part('b', n), part('a', m)),
        }
    }
}

impl FromStr for Bicyclic {
    type Err = Error;

    /// Accepts `(n,m)` or a word over `a`, `b`, `1` with optional `^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bicyclic element `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (n, m) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Bicyclic::new(n.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
        }
        if t.is_empty() {
            return Err(bad());
        }
        let mut acc = Bicyclic::ONE;
        let mut chars = t.chars().peekable();
        while let Some(c) = chars.next() {
            let g = match c {
                'a' => Bicyclic::A,
                'b' => Bicyclic::B,
                '1' => Bicyclic::ONE,
                _ => return Err(bad()),
            };
            let mut k = 1u64;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                k = digits.parse().map_err(|_| bad())?;
            }
            acc = acc.mul(g.pow(k));
        }
        Ok(acc)
    }
}

/// Evaluation of `x^i y^i z = z` at `(b, a, b^n a^n)` for `i = 1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicyclicWitness {
    pub n: u64,
    /// Value of `x^i y^i z` for each `i`, starting at 1.
    pub values: Vec<Bicyclic>,
    pub z: Bicyclic,
}

impl BicyclicWitness {
    pub fn holds_at(&self, i: u64) -> bool {
        self.values[(i - 1) as usize] == self.z
    }

    /// Whether the equations hold for `i <= n` and fail at `n + 1`.
    pub fn confirms(&self) -> bool {
        (1..=self.n).all(|i| self.holds_at(i)) && !self.holds_at(self.n + 1)
    }
}

/// The chain of systems `{x^i y^i z = z : i <= n}` keeps shrinking: the point
/// `(b, a, b^n a^n)` satisfies the first `n` equations but not the next.
pub fn bicyclic_noetherian_witness(n: u64) -> Result<BicyclicWitness> {
    if n == 0 {
        return Err(Error::NonPositiveParameter("n = 0".into()));
    }
    let z = Bicyclic::new(n, n);
    let values = (1..=n + 1)
        .map(|i| Bicyclic::B.pow(i).mul(Bicyclic::A.pow(i)).mul(z))
        .collect();
    Ok(BicyclicWitness { n, values, z })
}
