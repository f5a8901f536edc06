//! Finite algebras given by operation tables.

mod hom;
mod io;

use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::generate::Generator;
use crate::term::Language;

pub use hom::{approximates, discriminates, enumerate_homs, find_embedding, for_each_hom, HomMode, Homomorphism};
pub use io::{parse_algebra, render_algebra};

/// Elements of a finite carrier are indices `0..size`.
pub type Elem = u32;

#[derive(Debug, PartialEq, Eq)]
struct AlgebraData {
    name: String,
    language: Language,
    size: usize,
    /// One table per symbol, in language order. The entry for arguments
    /// `(a_1, ..., a_r)` sits at `a_1*k^(r-1) + ... + a_r`.
    tables: Vec<Vec<Elem>>,
    labels: Option<Vec<String>>,
}

/// An algebra with an explicit finite carrier. Cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    inner: Arc<AlgebraData>,
}

impl FiniteAlgebra {
    /// Checks table shapes and closure.
    pub fn new(name: impl Into<String>, language: Language, size: usize, tables: Vec<Vec<Elem>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        if tables.len() != language.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} symbols",
                tables.len(),
                language.len()
            )));
        }
        for (sym, table) in language.symbols().iter().zip(&tables) {
            let want = crate::budget::checked_pow(size as u64, sym.arity)
                .ok_or_else(|| Error::InvalidAlgebra(format!("table for `{}` too large", sym.name)))?;
            if table.len() as u64 != want {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` has {} entries, expected {want}",
                    sym.name,
                    table.len()
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` contains {bad}, outside the carrier of size {size}",
                    sym.name
                )));
            }
        }
        Ok(FiniteAlgebra {
            inner: Arc::new(AlgebraData {
                name: name.into(),
                language,
                size,
                tables,
                labels: None,
            }),
        })
    }

    /// Builds the tables by calling `f(symbol index, args)` on every row.
    pub fn from_fn(
        name: impl Into<String>,
        language: Language,
        size: usize,
        mut f: impl FnMut(usize, &[Elem]) -> Elem,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(language.len());
        for (id, sym) in language.symbols().iter().enumerate() {
            let rows = crate::budget::checked_pow(size as u64, sym.arity)
                .ok_or_else(|| Error::InvalidAlgebra(format!("table for `{}` too large", sym.name)))?;
            let mut table = Vec::with_capacity(rows as usize);
            let mut args = vec![0 as Elem; sym.arity];
            for _ in 0..rows {
                table.push(f(id, &args));
                advance(&mut args, size as Elem);
            }
            tables.push(table);
        }
        FiniteAlgebra::new(name, language, size, tables)
    }

    /// Attaches display labels, one per element.
    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::InvalidAlgebra(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size()
            )));
        }
        let mut data = AlgebraData {
            name: self.inner.name.clone(),
            language: self.inner.language.clone(),
            size: self.inner.size,
            tables: self.inner.tables.clone(),
            labels: Some(labels),
        };
        if data.labels.as_ref().is_some_and(|l| l.iter().enumerate().all(|(i, s)| *s == i.to_string())) {
            data.labels = None;
        }
        Ok(FiniteAlgebra { inner: Arc::new(data) })
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let d = &self.inner;
        FiniteAlgebra {
            inner: Arc::new(AlgebraData {
                name: name.into(),
                language: d.language.clone(),
                size: d.size,
                tables: d.tables.clone(),
                labels: d.labels.clone(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn language(&self) -> &Language {
        &self.inner.language
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size() as Elem
    }

    pub fn table(&self, sym: usize) -> &[Elem] {
        &self.inner.tables[sym]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.inner.labels.as_deref()
    }

    pub fn label(&self, e: Elem) -> String {
        match &self.inner.labels {
            Some(l) => l[e as usize].clone(),
            None => e.to_string(),
        }
    }

    /// Element named by a label, or by its index.
    pub fn element_by_name(&self, s: &str) -> Option<Elem> {
        if let Some(labels) = &self.inner.labels {
            if let Some(i) = labels.iter().position(|l| l == s) {
                return Some(i as Elem);
            }
        }
        s.parse::<Elem>().ok().filter(|&e| (e as usize) < self.size())
    }

    /// Row index of `args` in a table.
    pub fn row(&self, args: &[Elem]) -> usize {
        let k = self.size();
        args.iter().fold(0usize, |acc, &a| acc * k + a as usize)
    }

    pub fn apply(&self, sym: usize, args: &[Elem]) -> Elem {
        self.inner.tables[sym][self.row(args)]
    }

    /// Applies the symbol called `name`.
    pub fn apply_named(&self, name: &str, args: &[Elem]) -> Result<Elem> {
        let id = self
            .language()
            .id(name)
            .ok_or_else(|| Error::LanguageMismatch(format!("no symbol `{name}` in {}", self.name())))?;
        if self.language().symbol(id).arity != args.len() {
            return Err(Error::LanguageMismatch(format!("`{name}` applied to {} arguments", args.len())));
        }
        Ok(self.apply(id, args))
    }

    pub fn constant(&self, sym: usize) -> Elem {
        self.inner.tables[sym][0]
    }

    /// Values of all constants, in language order.
    pub fn constant_values(&self) -> Vec<Elem> {
        self.language().constants().map(|(id, _)| self.constant(id)).collect()
    }

    /// For each symbol of `self`, the index of the same-named symbol in
    /// `other`. Fails unless the two signatures coincide.
    pub fn symbol_map(&self, other: &FiniteAlgebra) -> Result<Vec<usize>> {
        if !self.language().same_signature(other.language()) {
            return Err(Error::LanguageMismatch(format!(
                "`{}` has language {{{}}}, `{}` has {{{}}}",
                self.name(),
                self.language(),
                other.name(),
                other.language()
            )));
        }
        Ok(self
            .language()
            .symbols()
            .iter()
            .map(|s| other.language().id(&s.name).expect("same signature"))
            .collect())
    }

    /// The one-element subalgebras `{a}`.
    pub fn idempotent_singletons(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| {
                self.language().symbols().iter().enumerate().all(|(id, s)| {
                    let args = vec![a; s.arity];
                    self.apply(id, &args) == a
                })
            })
            .collect()
    }

    /// Same carrier and tables over a language extended by one constant per
    /// element, named `c0, c1, ...` (with a fresh prefix if those clash).
    pub fn diophantize(&self) -> FiniteAlgebra {
        let lang = self.language();
        let mut prefix = String::from("c");
        while (0..self.size()).any(|i| lang.id(&format!("{prefix}{i}")).is_some()) {
            prefix.push('_');
        }
        let mut new_lang = lang.clone();
        let mut tables = self.inner.tables.clone();
        for i in 0..self.size() {
            new_lang.add(&format!("{prefix}{i}"), 0).expect("fresh names");
            tables.push(vec![i as Elem]);
        }
        let alg = FiniteAlgebra::new(format!("D({})", self.name()), new_lang, self.size(), tables)
            .expect("tables unchanged");
        match self.labels() {
            Some(l) => alg.with_labels(l.to_vec()).expect("same size"),
            None => alg,
        }
    }

    /// Checks every table entry is a valid element.
    pub fn is_closed(&self) -> bool {
        self.inner.tables.iter().all(|t| t.iter().all(|&v| (v as usize) < self.size()))
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|A| = {}, {{{}}})", self.name(), self.size(), self.language())
    }
}

/// Steps `args` through `{0..k}^r` in lexicographic order; returns false after
/// wrapping around.
pub(crate) fn advance(args: &mut [Elem], k: Elem) -> bool {
    for a in args.iter_mut().rev() {
        *a += 1;
        if *a < k {
            return true;
        }
        *a = 0;
    }
    false
}

fn positive(what: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositiveParameter(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

/// Cyclic group `Z_n` in the additive group language.
pub fn zn(n: usize) -> Result<FiniteAlgebra> {
    positive("n", n)?;
    let m = n as Elem;
    FiniteAlgebra::from_fn(format!("Z{n}"), Language::additive_group(), n, |sym, a| match sym {
        0 => (a[0] + a[1]) % m,
        1 => (m - a[0]) % m,
        _ => 0,
    })
}

/// Residue ring `Z_n` in the ring language `add, sub, mul, zero [, one]`.
pub fn zn_ring(n: usize, with_one: bool) -> Result<FiniteAlgebra> {
    positive("n", n)?;
    let m = n as u64;
    let name = if with_one { format!("Z{n}ring1") } else { format!("Z{n}ring") };
    FiniteAlgebra::from_fn(name, Language::ring(with_one), n, |sym, a| {
        let x = a.first().copied().unwrap_or(0) as u64;
        let y = a.get(1).copied().unwrap_or(0) as u64;
        (match sym {
            0 => (x + y) % m,
            1 => (x + m - y) % m,
            2 => (x * y) % m,
            3 => 0,
            _ => 1 % m,
        }) as Elem
    })
}

/// The chain `0 < 1 < ... < n-1` as a semilattice under `min`.
pub fn ln(n: usize) -> Result<FiniteAlgebra> {
    positive("n", n)?;
    FiniteAlgebra::from_fn(format!("L{n}"), Language::semigroup(), n, |_, a| a[0].min(a[1]))
}

/// Left zero semigroup `xy = x` on `a0, ..., a(n-1)`.
pub fn lzn(n: usize) -> Result<FiniteAlgebra> {
    positive("n", n)?;
    FiniteAlgebra::from_fn(format!("LZ{n}"), Language::semigroup(), n, |_, a| a[0])?
        .with_labels((0..n).map(|i| format!("a{i}")).collect())
}

/// Rectangular band on pairs `(i, j)`, `1 <= i <= n`, `1 <= j <= m`, with
/// `(i,j)(i',j') = (i,j')`. Pair `(i, j)` has index `(i-1)*m + (j-1)`.
pub fn rbnm(n: usize, m: usize) -> Result<FiniteAlgebra> {
    positive("n", n)?;
    positive("m", m)?;
    let mm = m as Elem;
    let labels = (1..=n)
        .flat_map(|i| (1..=m).map(move |j| format!("({i},{j})")))
        .collect();
    FiniteAlgebra::from_fn(format!("RB{n}_{m}"), Language::semigroup(), n * m, |_, a| {
        (a[0] / mm) * mm + a[1] % mm
    })?
    .with_labels(labels)
}

/// One-element algebra over `language`.
pub fn trivial(language: Language) -> FiniteAlgebra {
    FiniteAlgebra::from_fn("trivial", language, 1, |_, _| 0).expect("one-element tables")
}

/// Direct product `A_1 x ... x A_r`, element tuples indexed
/// lexicographically with the first factor most significant.
pub fn direct_product(factors: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyList)?;
    let maps = rest.iter().map(|f| first.symbol_map(f)).collect::<Result<Vec<_>>>()?;
    let mut size: usize = 1;
    for f in factors {
        size = size
            .checked_mul(f.size())
            .filter(|&s| s <= Elem::MAX as usize)
            .ok_or_else(|| Error::limit("direct product size", Elem::MAX as u64))?;
    }
    let sizes: Vec<usize> = factors.iter().map(FiniteAlgebra::size).collect();
    let decode = |mut e: usize, out: &mut Vec<Elem>| {
        out.clear();
        out.resize(sizes.len(), 0);
        for i in (0..sizes.len()).rev() {
            out[i] = (e % sizes[i]) as Elem;
            e /= sizes[i];
        }
    };
    let name = factors.iter().map(FiniteAlgebra::name).collect::<Vec<_>>().join("x");
    let mut comps = vec![Vec::new(); 0];
    let mut coord = Vec::new();
    let mut fargs: Vec<Elem> = Vec::new();
    let alg = FiniteAlgebra::from_fn(name, first.language().clone(), size, |sym, args| {
        comps.clear();
        for &a in args {
            decode(a as usize, &mut coord);
            comps.push(coord.clone());
        }
        let mut e = 0usize;
        for (i, f) in factors.iter().enumerate() {
            let fsym = if i == 0 { sym } else { maps[i - 1][sym] };
            fargs.clear();
            fargs.extend(comps.iter().map(|c| c[i]));
            e = e * sizes[i] + f.apply(fsym, &fargs) as usize;
        }
        e as Elem
    })?;
    if factors.iter().any(|f| f.labels().is_some()) || factors.len() > 1 {
        let mut labels = Vec::with_capacity(size);
        for e in 0..size {
            decode(e, &mut coord);
            let parts: Vec<String> = coord.iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
            labels.push(if parts.len() == 1 { parts[0].clone() } else { format!("<{}>", parts.join(",")) });
        }
        return alg.with_labels(labels);
    }
    Ok(alg)
}

/// `A^r`; `A^0` is the trivial algebra.
pub fn power(a: &FiniteAlgebra, r: usize) -> Result<FiniteAlgebra> {
    if r == 0 {
        return Ok(trivial(a.language().clone()));
    }
    direct_product(&vec![a.clone(); r])
}

/// Least subalgebra containing `seeds` and all constants, with elements in
/// discovery order, plus the inclusion map into `a`.
pub fn generate_subalgebra(a: &FiniteAlgebra, seeds: &[Elem], budget: &Budget) -> Result<(FiniteAlgebra, Vec<Elem>)> {
    if seeds.is_empty() && !a.language().has_constants() {
        return Err(Error::EmptySeedNoConstants);
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s as usize >= a.size()) {
        return Err(Error::Malformed(format!("seed {bad} outside carrier of size {}", a.size())));
    }
    let mut gen = Generator::new(a, 1, 0, false);
    for &s in seeds {
        gen.seed(&[s]);
    }
    gen.run(budget)?;
    let inclusion: Vec<Elem> = (0..gen.len()).map(|i| gen.key(i)[0]).collect();
    let sub = gen.into_algebra(format!("<{}>", a.name()), budget)?;
    let sub = match a.labels() {
        Some(_) => sub.with_labels(inclusion.iter().map(|&e| a.label(e)).collect())?,
        None => sub.with_labels(inclusion.iter().map(|e| e.to_string()).collect())?,
    };
    Ok((sub, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_follow_definitions() {
        let z6 = zn(6).unwrap();
        assert_eq!(z6.size(), 6);
        assert_eq!(z6.apply_named("add", &[4, 5]).unwrap(), 3);
        assert_eq!(z6.apply_named("neg", &[2]).unwrap(), 4);

        let rb = rbnm(2, 2).unwrap();
        assert_eq!(rb.size(), 4);
        let e = |s: &str| rb.element_by_name(s).unwrap();
        assert_eq!(rb.apply(0, &[e("(1,2)"), e("(2,1)")]), e("(1,1)"));

        let l2 = ln(2).unwrap();
        assert_eq!(l2.table(0), &[0, 0, 0, 1]);
        assert!(matches!(ln(0), Err(Error::NonPositiveParameter(_))));
        assert!(matches!(rbnm(2, 0), Err(Error::NonPositiveParameter(_))));
    }

    #[test]
    fn ring_tables() {
        let f2 = zn_ring(2, true).unwrap();
        assert_eq!(f2.apply_named("sub", &[0, 1]).unwrap(), 1);
        assert_eq!(f2.apply_named("mul", &[1, 1]).unwrap(), 1);
        assert_eq!(f2.apply_named("one", &[]).unwrap(), 1);
        let z1 = zn_ring(1, true).unwrap();
        assert_eq!(z1.apply_named("one", &[]).unwrap(), 0);
    }

    #[test]
    fn product_is_componentwise() {
        let p = direct_product(&[zn(2).unwrap(), zn(3).unwrap()]).unwrap();
        assert_eq!(p.size(), 6);
        // (1,2) + (1,2) = (0,1)
        assert_eq!(p.apply(0, &[5, 5]), 1);
        assert_eq!(p.constant(2), 0);
        assert_eq!(p.label(5), "<1,2>");
        assert!(direct_product(&[]).is_err());
        assert!(matches!(
            direct_product(&[zn(2).unwrap(), ln(2).unwrap()]),
            Err(Error::LanguageMismatch(_))
        ));
    }

    #[test]
    fn subalgebra_examples() {
        let budget = Budget::default();
        let z6 = zn(6).unwrap();
        let (sub, inc) = generate_subalgebra(&z6, &[2], &budget).unwrap();
        let mut els = inc.clone();
        els.sort();
        assert_eq!(els, vec![0, 2, 4]);
        assert_eq!(sub.size(), 3);
        assert_eq!(inc[0], 2);

        let l3 = ln(3).unwrap();
        assert_eq!(generate_subalgebra(&l3, &[], &budget).unwrap_err(), Error::EmptySeedNoConstants);
        let all: Vec<Elem> = l3.elements().collect();
        let (sub, inc) = generate_subalgebra(&l3, &all, &budget).unwrap();
        assert_eq!(inc, all);
        assert_eq!(sub.table(0), l3.table(0));
    }

    #[test]
    fn diophantize_adds_constants() {
        let d = ln(2).unwrap().diophantize();
        assert_eq!(d.language().arity("c0"), Some(0));
        assert_eq!(d.language().arity("c1"), Some(0));
        assert_eq!(d.apply_named("c1", &[]).unwrap(), 1);
        assert!(d.idempotent_singletons().is_empty());
    }

    #[test]
    fn advance_is_lexicographic() {
        let mut a = [0, 0];
        let mut seen = vec![a];
        while advance(&mut a, 2) {
            seen.push(a);
        }
        assert_eq!(seen, vec![[0, 0], [0, 1], [1, 0], [1, 1]]);
    }
}
