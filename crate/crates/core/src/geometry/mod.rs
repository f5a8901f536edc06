//! Algebraic sets over finite algebras: solving, radicals, closures,
//! coordinate algebras, irreducibility and decomposition.
//!
//! Closures and coordinate algebras are computed inside finite powers of the
//! ambient algebra. For a point set `Z` and a candidate point `p`, every
//! equation true on `Z` holds at `p` exactly when no two elements of the
//! subalgebra of `A^(Z ∪ {p})` generated by the coordinate vectors agree on `Z`
//! and differ at `p`. All candidates are tested in one generation pass.

mod scan;

pub use scan::{co_domain_scan, CoDomainCounterexample, CoDomainReport};

use std::collections::BTreeSet;

use crate::budget::{checked_pow, Budget};
use crate::error::{Error, Result};
use crate::eval::CompiledEquation;
use crate::finalg::{advance, approximates, trivial, Elem, FiniteAlgebra};
use crate::generate::{Generator, Wit, WitnessTerms};
use crate::normalize::{normalize_in, Variety};
use crate::term::{Equation, System, Term};

/// A set of points of `A^n`, sorted lexicographically without repeats.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    algebra: FiniteAlgebra,
    variables: Vec<String>,
    points: Vec<Vec<Elem>>,
}

impl PartialEq for SolutionSet {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.points == other.points
    }
}

impl Eq for SolutionSet {}

impl SolutionSet {
    /// Sorts and deduplicates `points`, checking widths and carrier bounds.
    pub fn new(algebra: FiniteAlgebra, variables: Vec<String>, mut points: Vec<Vec<Elem>>) -> Result<Self> {
        let k = algebra.size();
        for p in &points {
            if p.len() != variables.len() {
                return Err(Error::Malformed(format!(
                    "point of length {} for {} variables",
                    p.len(),
                    variables.len()
                )));
            }
            if let Some(&e) = p.iter().find(|&&e| e as usize >= k) {
                return Err(Error::Malformed(format!("element {e} outside carrier of size {k}")));
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(SolutionSet { algebra, variables, points })
    }

    fn from_sorted(algebra: FiniteAlgebra, variables: Vec<String>, points: Vec<Vec<Elem>>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        SolutionSet { algebra, variables, points }
    }

    /// The whole space `A^n`.
    pub fn full(algebra: &FiniteAlgebra, variables: Vec<String>, budget: &Budget) -> Result<Self> {
        let points = all_points(algebra.size(), variables.len(), budget)?;
        Ok(SolutionSet::from_sorted(algebra.clone(), variables, points))
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[Elem]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn is_subset(&self, other: &SolutionSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// A point written with element labels, e.g. `(0, 1)`.
    pub fn render_point(&self, p: &[Elem]) -> String {
        let parts: Vec<String> = p.iter().map(|&e| self.algebra.label(e)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Every tuple of `{0..k}^n` in lexicographic order.
fn all_points(k: usize, n: usize, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
    budget.check_tuples(checked_pow(k as u64, n))?;
    let mut out = Vec::new();
    let mut p = vec![0 as Elem; n];
    loop {
        out.push(p.clone());
        if !advance(&mut p, k as Elem) {
            break;
        }
    }
    budget.add_tuples(out.len() as u64);
    Ok(out)
}

/// How equations are evaluated by [`solve_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Normalize both sides in this variety before evaluating.
    pub variety: Option<Variety>,
    /// With a variety, also evaluate the original terms and fail on any
    /// disagreement.
    pub cross_check: bool,
}

/// `V_A(S)` by depth-first enumeration of `A^n`.
pub fn solve(sys: &System, alg: &FiniteAlgebra, budget: &Budget) -> Result<SolutionSet> {
    solve_with(sys, alg, SolveOptions::default(), budget)
}

pub fn solve_with(sys: &System, alg: &FiniteAlgebra, opts: SolveOptions, budget: &Budget) -> Result<SolutionSet> {
    let n = sys.variables.len();
    budget.check_tuples(checked_pow(alg.size() as u64, n))?;
    let direct = compile_all(&sys.equations, alg, &sys.variables)?;
    let Some(v) = opts.variety else {
        return Ok(enumerate(&direct, alg, &sys.variables, budget));
    };
    let normalized: Vec<Equation> = sys
        .equations
        .iter()
        .map(|e| {
            let l = normalize_in(&e.lhs, v, Some(&sys.variables))?.to_term_in(Some(&sys.variables));
            let r = normalize_in(&e.rhs, v, Some(&sys.variables))?.to_term_in(Some(&sys.variables));
            Ok(Equation::new(l, r))
        })
        .collect::<Result<_>>()?;
    let fast = compile_all(&normalized, alg, &sys.variables)?;
    let result = enumerate(&fast, alg, &sys.variables, budget);
    if opts.cross_check {
        let slow = enumerate(&direct, alg, &sys.variables, budget);
        if slow != result {
            let p = slow
                .points()
                .iter()
                .find(|p| !result.contains(p))
                .or_else(|| result.points().iter().find(|p| !slow.contains(p)))
                .expect("sets differ");
            return Err(Error::InvalidAlgebra(format!(
                "`{}` is not in the variety {v}: normalized and direct evaluation disagree at {}",
                alg.name(),
                slow.render_point(p)
            )));
        }
    }
    Ok(result)
}

fn compile_all(eqs: &[Equation], alg: &FiniteAlgebra, vars: &[String]) -> Result<Vec<CompiledEquation>> {
    eqs.iter().map(|e| CompiledEquation::compile(e, alg.language(), vars)).collect()
}

/// Depth-first over coordinates; each equation is tested as soon as its
/// last variable is bound, cheapest equations first.
fn enumerate(eqs: &[CompiledEquation], alg: &FiniteAlgebra, vars: &[String], budget: &Budget) -> SolutionSet {
    let n = vars.len();
    let mut order: Vec<&CompiledEquation> = eqs.iter().collect();
    order.sort_by_key(|e| e.free_vars);
    let mut at_level: Vec<Vec<&CompiledEquation>> = vec![Vec::new(); n + 1];
    for e in order {
        at_level[e.max_var.map_or(0, |m| m + 1)].push(e);
    }
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut point = vec![0 as Elem; n];
    let ground_ok = at_level[0].iter().all(|e| e.holds(alg, &point, &mut stack));
    let mut visited = 0u64;
    if ground_ok {
        dfs(0, &mut point, alg, &at_level, &mut stack, &mut out, &mut visited);
    }
    budget.add_tuples(visited);
    SolutionSet::from_sorted(alg.clone(), vars.to_vec(), out)
}

fn dfs(
    level: usize,
    point: &mut Vec<Elem>,
    alg: &FiniteAlgebra,
    at_level: &[Vec<&CompiledEquation>],
    stack: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
    visited: &mut u64,
) {
    if level == point.len() {
        out.push(point.clone());
        return;
    }
    for a in alg.elements() {
        *visited += 1;
        point[level] = a;
        if at_level[level + 1].iter().all(|e| e.holds(alg, point, stack)) {
            dfs(level + 1, point, alg, at_level, stack, out, visited);
        }
    }
    point[level] = 0;
}

/// Whether `eq` holds at every point of `set`.
pub fn in_radical(eq: &Equation, set: &SolutionSet) -> Result<bool> {
    let c = CompiledEquation::compile(eq, set.algebra.language(), &set.variables)?;
    let mut stack = Vec::new();
    Ok(set.points.iter().all(|p| c.holds(&set.algebra, p, &mut stack)))
}

/// Coordinate vectors of the seeds `x_i` for generation in `A^(cols)`.
fn seed_rows(cols: &[&[Elem]], n: usize) -> Vec<Vec<Elem>> {
    (0..n).map(|i| cols.iter().map(|p| p[i]).collect()).collect()
}

/// Indices of the candidates at which every equation true on `Z` holds.
fn surviving(alg: &FiniteAlgebra, n: usize, z: &[Vec<Elem>], candidates: &[Vec<Elem>], budget: &Budget) -> Result<Vec<usize>> {
    let cols: Vec<&[Elem]> = z.iter().chain(candidates).map(|p| p.as_slice()).collect();
    let mut gen = Generator::new(alg, z.len(), candidates.len(), false).stop_when_all_refuted();
    for row in seed_rows(&cols, n) {
        gen.seed(&row);
    }
    gen.run(budget)?;
    Ok((0..candidates.len()).filter(|&c| !gen.is_refuted(c)).collect())
}

/// `cl(Z) = V(Rad(Z))` in `A^n`. For empty `Z` this is the set of constant
/// tuples `(a, ..., a)` with `{a}` a one-element subalgebra, since `Rad(∅)`
/// contains every equation.
pub fn closure(points: &[Vec<Elem>], alg: &FiniteAlgebra, variables: &[String], budget: &Budget) -> Result<SolutionSet> {
    let z = SolutionSet::new(alg.clone(), variables.to_vec(), points.to_vec())?;
    let n = variables.len();
    let candidates: Vec<Vec<Elem>> = all_points(alg.size(), n, budget)?
        .into_iter()
        .filter(|p| !z.contains(p))
        .collect();
    let keep = surviving(alg, n, &z.points, &candidates, budget)?;
    let mut out = z.points;
    out.extend(keep.into_iter().map(|c| candidates[c].clone()));
    SolutionSet::new(alg.clone(), variables.to_vec(), out)
}

/// Whether `points ⊆ A^n` is the solution set of some system.
pub fn is_algebraic(points: &[Vec<Elem>], alg: &FiniteAlgebra, n: usize, budget: &Budget) -> Result<bool> {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let z = SolutionSet::new(alg.clone(), vars, points.to_vec())?;
    let candidates: Vec<Vec<Elem>> = all_points(alg.size(), n, budget)?
        .into_iter()
        .filter(|p| !z.contains(p))
        .collect();
    Ok(surviving(alg, n, &z.points, &candidates, budget)?.is_empty())
}

/// `Γ_A(Y)`: the subalgebra of `A^|Y|` generated by the coordinate vectors
/// of the variables and the constants, with a witness term per element.
#[derive(Debug, Clone)]
pub struct CoordAlgebra {
    underlying: FiniteAlgebra,
    set: SolutionSet,
    tuples: Vec<Vec<Elem>>,
    generators: Vec<Elem>,
    witnesses: Vec<Term>,
}

impl CoordAlgebra {
    pub fn underlying(&self) -> &FiniteAlgebra {
        &self.underlying
    }

    pub fn set(&self) -> &SolutionSet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.underlying.size()
    }

    /// Element `e` as a tuple indexed by the points of `Y`.
    pub fn tuple(&self, e: Elem) -> &[Elem] {
        &self.tuples[e as usize]
    }

    /// The element `[x_i]_Y` for each variable.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// A term representing each element. Empty only when `Γ` has no
    /// term at all (no variables, no constants, empty `Y`).
    pub fn witnesses(&self) -> &[Term] {
        &self.witnesses
    }

    pub fn witness(&self, e: Elem) -> &Term {
        &self.witnesses[e as usize]
    }

    /// The element `[t]_Y`.
    pub fn class_of(&self, t: &Term) -> Result<Elem> {
        let lang = self.underlying.language();
        let c = crate::eval::CompiledTerm::compile(t, lang, &self.set.variables)?;
        let point: Vec<Elem> = self.generators.clone();
        let mut stack = Vec::new();
        Ok(c.eval(&self.underlying, &point, &mut stack))
    }
}

pub fn coordinate_algebra(set: &SolutionSet, budget: &Budget) -> Result<CoordAlgebra> {
    let alg = &set.algebra;
    let n = set.dimension();
    let name = format!("Γ({})", alg.name());
    if set.is_empty() {
        let witnesses = match (set.variables.first(), alg.language().constants().next()) {
            (Some(v), _) => vec![Term::var(v.clone())],
            (None, Some((_, c))) => vec![Term::constant(c.name.clone())],
            (None, None) => vec![],
        };
        return Ok(CoordAlgebra {
            underlying: trivial(alg.language().clone()).renamed(name),
            set: set.clone(),
            tuples: vec![Vec::new()],
            generators: vec![0; n],
            witnesses,
        });
    }
    if n == 0 && !alg.language().has_constants() {
        return Err(Error::EmptySeedNoConstants);
    }
    let cols: Vec<&[Elem]> = set.points.iter().map(|p| p.as_slice()).collect();
    let w = cols.len();
    let mut gen = Generator::new(alg, w, 0, true);
    let rows = seed_rows(&cols, n);
    for row in &rows {
        gen.seed(row);
    }
    gen.run(budget)?;
    let wits = gen.take_witnesses();
    let seeds: Vec<Term> = set.variables.iter().map(|v| Term::var(v.clone())).collect();
    // Seed `i` lands on the element whose key equals row `i`; repeated rows
    // collapse onto the first occurrence.
    let size = gen.len();
    let tuples: Vec<Vec<Elem>> = (0..size).map(|i| gen.key(i).to_vec()).collect();
    let generators: Vec<Elem> = rows
        .iter()
        .map(|r| tuples.iter().position(|t| t == r).expect("seed present") as Elem)
        .collect();
    let mut wt = WitnessTerms::new(&wits, &seeds, alg);
    let witnesses = (0..size).map(|i| wt.term(i)).collect();
    let underlying = gen.into_algebra(name, budget)?;
    Ok(CoordAlgebra { underlying, set: set.clone(), tuples, generators, witnesses })
}

/// `Y` is irreducible iff evaluation at some `P ∈ Y` is injective on
/// `Γ(Y)`; the first such `P` is returned.
pub fn is_irreducible(set: &SolutionSet, budget: &Budget) -> Result<Option<Vec<Elem>>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.dimension();
    let k = set.algebra.size();
    let cols: Vec<&[Elem]> = set.points.iter().map(|p| p.as_slice()).collect();
    // Injectivity into A needs |Γ(Y)| ≤ |A|.
    let mut gen = Generator::new(&set.algebra, cols.len(), 0, false).stop_above(k);
    for row in seed_rows(&cols, n) {
        gen.seed(&row);
    }
    gen.run(budget)?;
    if gen.stopped_early() {
        return Ok(None);
    }
    let size = gen.len();
    let mut seen = vec![false; k];
    for (j, p) in set.points.iter().enumerate() {
        seen.fill(false);
        let injective = (0..size).all(|i| {
            let v = gen.key(i)[j] as usize;
            !std::mem::replace(&mut seen[v], true)
        });
        if injective {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// The irreducible components of an algebraic set: the maximal point
/// closures `cl({P})`, `P ∈ Y`, sorted by their point lists.
pub fn irreducible_components(set: &SolutionSet, budget: &Budget) -> Result<Vec<SolutionSet>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.dimension();
    let mut closures: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, p) in set.points.iter().enumerate() {
        let others: Vec<Vec<Elem>> = set.points.iter().filter(|q| *q != p).cloned().collect();
        let others_idx: Vec<usize> = (0..set.len()).filter(|&j| j != i).collect();
        let keep = surviving(&set.algebra, n, std::slice::from_ref(p), &others, budget)?;
        let mut members: Vec<usize> = keep.into_iter().map(|c| others_idx[c]).collect();
        members.push(i);
        members.sort_unstable();
        closures.insert(members);
    }
    let all: Vec<Vec<usize>> = closures.into_iter().collect();
    let maximal = all.iter().filter(|c| {
        !all.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.binary_search(x).is_ok()))
    });
    let mut comps: Vec<SolutionSet> = maximal
        .map(|c| {
            let pts = c.iter().map(|&i| set.points[i].clone()).collect();
            SolutionSet::from_sorted(set.algebra.clone(), set.variables.clone(), pts)
        })
        .collect();
    comps.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(comps)
}

/// Whether two systems over the same variables have equal solution sets.
pub fn systems_equivalent(s1: &System, s2: &System, alg: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    if s1.variables != s2.variables {
        return Err(Error::Malformed(format!(
            "systems use different variable lists ({}) and ({})",
            s1.variables.join(", "),
            s2.variables.join(", ")
        )));
    }
    Ok(solve(s1, alg, budget)? == solve(s2, alg, budget)?)
}

/// Finite algebras are geometrically equivalent iff each approximates the
/// other.
pub fn geometrically_equivalent(a: &FiniteAlgebra, b: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    Ok(approximates(a, b, budget)? && approximates(b, a, budget)?)
}

/// `A` is an equational domain iff `V(x1=x2) ∪ V(x3=x4) ⊆ A^4` is algebraic.
pub fn is_equational_domain(alg: &FiniteAlgebra, budget: &Budget) -> Result<bool> {
    let m: Vec<Vec<Elem>> = all_points(alg.size(), 4, budget)?
        .into_iter()
        .filter(|p| p[0] == p[1] || p[2] == p[3])
        .collect();
    is_algebraic(&m, alg, 4, budget)
}

/// Elements of `Γ(A^m)` with witnesses, for scanning single equations.
pub(crate) fn free_functions(
    alg: &FiniteAlgebra,
    vars: &[String],
    budget: &Budget,
) -> Result<(Vec<Vec<Elem>>, Vec<Wit>, Vec<Term>)> {
    let full = all_points(alg.size(), vars.len(), budget)?;
    let cols: Vec<&[Elem]> = full.iter().map(|p| p.as_slice()).collect();
    let mut gen = Generator::new(alg, cols.len(), 0, true);
    for row in seed_rows(&cols, vars.len()) {
        gen.seed(&row);
    }
    gen.run(budget)?;
    let wits = gen.take_witnesses();
    let tuples = (0..gen.len()).map(|i| gen.key(i).to_vec()).collect();
    let seeds = vars.iter().map(|v| Term::var(v.clone())).collect();
    Ok((tuples, wits, seeds))
}
