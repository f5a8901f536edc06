//! The `uag` command line.
//!
//! Exit codes: 0 on a completed computation (whatever the answer), 2 on a
//! usage error, 3 on unreadable or malformed input, 4 when a resource cap
//! is hit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::budget::{Budget, DEFAULT_ELEM_CAP, DEFAULT_TUPLE_CAP};
use crate::congruence::congruent_closure_contains;
use crate::error::{Error, Result};
use crate::finalg::{
    approximates, discriminates, enumerate_homs, find_embedding, ln, lzn, parse_algebra, rbnm, render_algebra,
    trivial, zn, zn_ring, Elem, FiniteAlgebra,
};
use crate::formulas::{counterexample, count_of_order, phi_nk, sigma_a};
use crate::geometry::{
    closure, co_domain_scan, coordinate_algebra, geometrically_equivalent, in_radical, irreducible_components,
    is_algebraic, is_equational_domain, is_irreducible, solve_with, systems_equivalent, SolutionSet, SolveOptions,
};
use crate::linear::{
    coefficient_matrix, coordinate_group_rank, geom_equiv_abelian, is_coordinate_abelian,
    is_coordinate_abelian_with_constants, is_irreducible_coordinate_abelian,
    is_irreducible_coordinate_abelian_with_constants, minimal_equivalent_prefix, radical_lattice, smith_normal_form,
    solve_over_n, sub_oplus, FGAbelianGroup, IntMatrix,
};
use crate::normalize::Variety;
use crate::parse::{parse_equation, parse_formula_file, parse_system};
use crate::report::{Report, Verdict};
use crate::symbolic::{bicyclic_noetherian_witness, solve_free_unar, Bicyclic, UnarSolution, UnarSystem};
use crate::term::{Language, System};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "uag", version, about = "Algebraic geometry over algebras: solve, decompose, compare")]
struct Cli {
    /// Largest number of tuples any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_CAP)]
    tuple_cap: u64,
    /// Largest generated subalgebra.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEM_CAP)]
    elem_cap: u64,
    /// Print `key=value` lines instead of the human layout.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct AlgSys {
    /// Algebra file, or a builtin such as `@Ln(2)`, `@Zn(6)`, `@Zn_ring1(2)`.
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    system: PathBuf,
}

#[derive(Args, Debug)]
struct AlgPoints {
    #[arg(long)]
    algebra: String,
    /// Points separated by `;`, coordinates by `,`, e.g. `0,1;1,1`.
    #[arg(long, default_value = "")]
    points: String,
    /// Dimension; required when no points are given.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args, Debug)]
struct TwoAlgebras {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    other: String,
}

#[derive(Args, Debug)]
struct FromTo {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solution set of a system.
    Solve {
        #[command(flatten)]
        input: AlgSys,
        /// Normalize terms in this variety before evaluating.
        #[arg(long)]
        variety: Option<String>,
        /// With --variety, also evaluate directly and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Whether an equation is in the radical of the solution set.
    Radical {
        #[command(flatten)]
        input: AlgSys,
        #[arg(long)]
        equation: String,
        /// Also report membership in the congruent closure of the system.
        #[arg(long)]
        congruence: bool,
    },
    /// Least algebraic set containing the points.
    Closure(AlgPoints),
    /// Whether the points form an algebraic set.
    Algebraic(AlgPoints),
    /// Coordinate algebra of the solution set.
    Coord(AlgSys),
    /// Irreducibility of the solution set.
    Irreducible(AlgSys),
    /// Irreducible components of the solution set.
    Components(AlgSys),
    /// Whether two systems have the same solutions.
    Equiv {
        #[command(flatten)]
        input: AlgSys,
        #[arg(long)]
        other: PathBuf,
    },
    /// All homomorphisms FROM -> TO.
    Homs(FromTo),
    /// An embedding FROM -> TO.
    Embed {
        #[command(flatten)]
        algebras: FromTo,
        #[arg(long)]
        bijective: bool,
    },
    /// Whether ALGEBRA approximates OTHER.
    Approx(TwoAlgebras),
    /// Whether ALGEBRA discriminates OTHER.
    Discr(TwoAlgebras),
    /// Geometric equivalence of two finite algebras.
    Geomeq(TwoAlgebras),
    /// Equational-domain test.
    Domain {
        #[arg(long)]
        algebra: String,
    },
    /// Bounded search for a reducible algebraic set.
    Codomain {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Finitely generated abelian groups and integer lattices.
    #[command(subcommand)]
    Abelian(AbelianCmd),
    /// Systems over the naturals.
    #[command(subcommand)]
    Nat(SolveOnly),
    /// Systems over free unars.
    #[command(subcommand)]
    Unar(SolveOnly),
    /// The bicyclic monoid.
    #[command(subcommand)]
    Bicyclic(BicyclicCmd),
    /// Universal formulas.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Adds a constant for every element.
    Diophantize {
        #[arg(long)]
        algebra: String,
        /// Write the algebra file here instead of printing it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AbelianCmd {
    /// Smith normal form of a matrix given as `a,b;c,d`.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Radical of a homogeneous system over Z, as a lattice basis.
    Radical {
        #[arg(long)]
        system: PathBuf,
    },
    /// Rank of the free coordinate group over Z.
    Rank {
        #[arg(long)]
        system: PathBuf,
    },
    /// Shortest prefix of the system with the same solutions in GROUP^n.
    Prefix {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value = "Z")]
        group: String,
    },
    /// Nonzero subgroups of direct summands.
    Suboplus {
        #[arg(long)]
        group: String,
    },
    /// Whether CANDIDATE is a coordinate group over GROUP.
    Coord(GroupPair),
    /// Whether CANDIDATE is the coordinate group of an irreducible set.
    Irrcoord(GroupPair),
    /// With constants: CANDIDATE is the complement B' in GROUP + B'.
    Coordc(GroupPair),
    /// With constants, irreducible case.
    Irrcoordc(GroupPair),
    /// Geometric equivalence.
    Geomeq {
        #[arg(long)]
        group: String,
        #[arg(long)]
        other: String,
    },
}

#[derive(Args, Debug)]
struct GroupPair {
    #[arg(long)]
    candidate: String,
    #[arg(long)]
    group: String,
}

#[derive(Subcommand, Debug)]
enum SolveOnly {
    Solve {
        #[arg(long)]
        system: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum BicyclicCmd {
    /// Product of two elements, written `b^n a^m` or `(n,m)`.
    Mul { u: String, v: String },
    /// The chain x^i y^i z = z at (b, a, b^n a^n).
    Witness { n: u64 },
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// Checks every formula of a file in a finite algebra.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// The period identity and the Sigma_{p,n} formulas true in GROUP.
    Sigma {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 7)]
        p_max: u64,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// Whether GROUP has at most N elements of order P^K.
    Phi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
}

/// Output of one command: the report filled in place, or raw text.
enum Output {
    Report,
    Text(String),
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let echo = std::iter::once("uag".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    let budget = Budget::new(cli.tuple_cap, cli.elem_cap);
    let mut report = Report::new(echo);
    let result = execute(&cli.cmd, &budget, &mut report);
    report.set_usage(budget.usage());
    let render = |r: &Report| if cli.machine { r.to_machine() } else { r.to_human() };
    match result {
        Ok(Output::Report) => {
            let _ = out.write_all(render(&report).as_bytes());
            EXIT_OK
        }
        Ok(Output::Text(t)) => {
            let _ = out.write_all(t.as_bytes());
            EXIT_OK
        }
        Err(e @ Error::ResourceLimit { .. }) => {
            report.fields.clear();
            report.verdict(Verdict::Unknown).field("error", &e);
            let _ = out.write_all(render(&report).as_bytes());
            EXIT_LIMIT
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

/// Builtins are `@Zn(n)`, `@Zn_ring(n)`, `@Zn_ring1(n)`, `@Ln(n)`,
/// `@LZn(n)`, `@RBnm(n,m)` and `@trivial`; anything else is a file path.
pub fn load_algebra(spec: &str) -> Result<FiniteAlgebra> {
    let Some(b) = spec.strip_prefix('@') else {
        return parse_algebra(&read(Path::new(spec))?);
    };
    let bad = || Error::Malformed(format!("unknown builtin algebra `{spec}`"));
    if b == "trivial" {
        return Ok(trivial(Language::semigroup()));
    }
    let (kind, rest) = b.split_once('(').ok_or_else(bad)?;
    let params: Vec<usize> = rest
        .strip_suffix(')')
        .ok_or_else(bad)?
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (kind, params.as_slice()) {
        ("Zn", &[n]) => zn(n),
        ("Zn_ring", &[n]) => zn_ring(n, false),
        ("Zn_ring1", &[n]) => zn_ring(n, true),
        ("Ln", &[n]) => ln(n),
        ("LZn", &[n]) => lzn(n),
        ("RBnm", &[n, m]) => rbnm(n, m),
        _ => Err(bad()),
    }
}

fn load_system(path: &Path, lang: &Language) -> Result<System> {
    parse_system(&read(path)?, lang)
}

fn group(s: &str) -> Result<FGAbelianGroup> {
    s.parse()
}

fn parse_points(text: &str, alg: &FiniteAlgebra) -> Result<Vec<Vec<Elem>>> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let p = p.trim_start_matches('(').trim_end_matches(')');
            p.split(',')
                .map(|e| {
                    let e = e.trim();
                    alg.element_by_name(e)
                        .ok_or_else(|| Error::Malformed(format!("`{e}` is not an element of {}", alg.name())))
                })
                .collect()
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|v| v.trim().parse().map_err(|_| Error::Malformed(format!("matrix entry `{}`", v.trim()))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Malformed("matrix rows differ in length".into()));
    }
    Ok(IntMatrix::from_rows(cols, rows))
}

fn point_lines(set: &SolutionSet) -> Vec<String> {
    set.points().iter().map(|p| set.render_point(p)).collect()
}

fn points_input(a: &AlgPoints) -> Result<(FiniteAlgebra, Vec<Vec<Elem>>, Vec<String>)> {
    let alg = load_algebra(&a.algebra)?;
    let pts = parse_points(&a.points, &alg)?;
    let n = match (a.dim, pts.first()) {
        (Some(d), _) => d,
        (None, Some(p)) => p.len(),
        (None, None) => return Err(Error::Malformed("no points given: pass --dim".into())),
    };
    let vars = (1..=n).map(|i| format!("x{i}")).collect();
    Ok((alg, pts, vars))
}

fn execute(cmd: &Cmd, budget: &Budget, r: &mut Report) -> Result<Output> {
    match cmd {
        Cmd::Solve { input, variety, cross_check } => {
            let alg = load_algebra(&input.algebra)?;
            let sys = load_system(&input.system, alg.language())?;
            let variety = variety.as_deref().map(str::parse::<Variety>).transpose()?;
            let set = solve_with(&sys, &alg, SolveOptions { variety, cross_check: *cross_check }, budget)?;
            r.field("variables", sys.variables.join(", "))
                .field("count", set.len())
                .list("points", point_lines(&set));
        }
        Cmd::Radical { input, equation, congruence } => {
            let alg = load_algebra(&input.algebra)?;
            let sys = load_system(&input.system, alg.language())?;
            let eq = parse_equation(equation, alg.language(), &sys.variables)?;
            let set = solve_with(&sys, &alg, SolveOptions::default(), budget)?;
            r.verdict(in_radical(&eq, &set)?).field("equation", &eq);
            if *congruence {
                r.field("congruent_closure", congruent_closure_contains(&sys, &eq)?);
            }
        }
        Cmd::Closure(a) => {
            let (alg, pts, vars) = points_input(a)?;
            let set = closure(&pts, &alg, &vars, budget)?;
            r.field("count", set.len()).list("points", point_lines(&set));
        }
        Cmd::Algebraic(a) => {
            let (alg, pts, vars) = points_input(a)?;
            let given = SolutionSet::new(alg.clone(), vars.clone(), pts.clone())?;
            let ok = is_algebraic(&pts, &alg, vars.len(), budget)?;
            r.verdict(ok);
            if !ok {
                let cl = closure(&pts, &alg, &vars, budget)?;
                let missing = cl.points().iter().filter(|p| !given.contains(p)).map(|p| cl.render_point(p));
                r.list("closure_adds", missing);
            }
        }
        Cmd::Coord(input) => {
            let alg = load_algebra(&input.algebra)?;
            let sys = load_system(&input.system, alg.language())?;
            let set = solve_with(&sys, &alg, SolveOptions::default(), budget)?;
            let g = coordinate_algebra(&set, budget)?;
            r.field("points", set.len()).field("size", g.size());
            r.list(
                "generators",
                sys.variables.iter().zip(g.generators()).map(|(v, e)| format!("{v} -> e{e}")),
            );
            let elems = (0..g.size() as Elem).map(|e| {
                let tuple: Vec<String> = g.tuple(e).iter().map(|&x| alg.label(x)).collect();
                match g.witnesses().get(e as usize) {
                    Some(w) => format!("e{e} = [{w}] = ({})", tuple.join(", ")),
                    None => format!("e{e} = ({})", tuple.join(", ")),
                }
            });
            r.list("elements", elems.collect::<Vec<_>>());
        }
        Cmd::Irreducible(input) => {
            let alg = load_algebra(&input.algebra)?;
            let sys = load_system(&input.system, alg.language())?;
            let set = solve_with(&sys, &alg, SolveOptions::default(), budget)?;
            let w = is_irreducible(&set, budget)?;
            r.verdict(w.is_some());
            if let Some(p) = w {
                r.field("witness", set.render_point(&p));
            }
        }
        Cmd::Components(input) => {
            let alg = load_algebra(&input.algebra)?;
            let sys = load_system(&input.system, alg.language())?;
            let set = solve_with(&sys, &alg, SolveOptions::default(), budget)?;
            let comps = irreducible_components(&set, budget)?;
            r.field("count", comps.len());
            for (i, c) in comps.iter().enumerate() {
                r.list(&format!("component.{}", i + 1), point_lines(c));
            }
        }
        Cmd::Equiv { input, other } => {
            let alg = load_algebra(&input.algebra)?;
            let s1 = load_system(&input.system, alg.language())?;
            let s2 = load_system(other, alg.language())?;
            r.verdict(systems_equivalent(&s1, &s2, &alg, budget)?);
        }
        Cmd::Homs(FromTo { from, to }) => {
            let (b, a) = (load_algebra(from)?, load_algebra(to)?);
            let homs = enumerate_homs(&b, &a, budget)?;
            r.field("count", homs.len());
            r.list("maps", homs.iter().map(|h| render_map(&b, &a, &h.map)));
        }
        Cmd::Embed { algebras: FromTo { from, to }, bijective } => {
            let (b, a) = (load_algebra(from)?, load_algebra(to)?);
            let h = find_embedding(&b, &a, *bijective, budget)?;
            r.verdict(h.is_some());
            if let Some(h) = h {
                r.field("map", render_map(&b, &a, &h.map));
            }
        }
        Cmd::Approx(t) => {
            let (a, b) = (load_algebra(&t.algebra)?, load_algebra(&t.other)?);
            r.verdict(approximates(&a, &b, budget)?);
        }
        Cmd::Discr(t) => {
            let (a, b) = (load_algebra(&t.algebra)?, load_algebra(&t.other)?);
            r.verdict(discriminates(&a, &b, budget)?);
        }
        Cmd::Geomeq(t) => {
            let (a, b) = (load_algebra(&t.algebra)?, load_algebra(&t.other)?);
            r.verdict(geometrically_equivalent(&a, &b, budget)?);
        }
        Cmd::Domain { algebra } => {
            let alg = load_algebra(algebra)?;
            r.verdict(is_equational_domain(&alg, budget)?);
        }
        Cmd::Codomain { algebra, n_max } => {
            let alg = load_algebra(algebra)?;
            let rep = co_domain_scan(&alg, *n_max, budget)?;
            r.verdict(rep.counterexample.is_none()).field("n_max", rep.n_max);
            if let Some(c) = rep.counterexample {
                r.field("dimension", c.dimension);
                match &c.equation {
                    Some(eq) => r.field("equation", eq),
                    None => r.field("equation", "(whole space)"),
                };
                r.list("points", point_lines(&c.set));
            }
        }
        Cmd::Abelian(c) => abelian(c, budget, r)?,
        Cmd::Nat(SolveOnly::Solve { system }) => {
            let sys = load_system(system, &Language::naturals())?;
            let pts = solve_over_n(&sys, budget)?;
            r.field("variables", sys.variables.join(", ")).field("count", pts.len());
            r.list("points", pts.iter().map(|p| tuple(p.iter())));
        }
        Cmd::Unar(SolveOnly::Solve { system }) => {
            let sys = load_system(system, &Language::unar())?;
            match solve_free_unar(&UnarSystem::from_system(&sys)?) {
                UnarSolution::Inconsistent { witness, .. } => {
                    r.verdict(false).field("derived", witness);
                }
                UnarSolution::Reduced { bindings, roots } => {
                    r.verdict(true).field("rank", roots.len()).field("roots", roots.join(", "));
                    let sym = UnarSystem::from_system(&sys)?.symbol;
                    r.list(
                        "bindings",
                        bindings.iter().map(|b| {
                            let t = crate::term::Term::iterate(&sym, b.power as usize, crate::term::Term::var(b.root.clone()));
                            format!("{} = {t}", b.var)
                        }),
                    );
                }
            }
        }
        Cmd::Bicyclic(BicyclicCmd::Mul { u, v }) => {
            let (u, v): (Bicyclic, Bicyclic) = (u.parse()?, v.parse()?);
            let p = u.mul(v);
            r.field("product", p).field("pair", format!("({},{})", p.n, p.m));
        }
        Cmd::Bicyclic(BicyclicCmd::Witness { n }) => {
            let w = bicyclic_noetherian_witness(*n)?;
            r.verdict(w.confirms()).field("z", w.z);
            r.list(
                "values",
                w.values.iter().enumerate().map(|(i, v)| {
                    let mark = if *v == w.z { "holds" } else { "fails" };
                    format!("i={}: x^i y^i z = {v} ({mark})", i + 1)
                }),
            );
        }
        Cmd::Formula(f) => formula(f, budget, r)?,
        Cmd::Diophantize { algebra, output } => {
            let d = load_algebra(algebra)?.diophantize();
            let text = render_algebra(&d);
            match output {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| Error::Malformed(format!("cannot write {}: {e}", path.display())))?;
                    r.field("written", path.display()).field("language", d.language());
                }
                None => return Ok(Output::Text(text)),
            }
        }
    }
    Ok(Output::Report)
}

fn tuple<T: ToString>(items: impl Iterator<Item = T>) -> String {
    format!("({})", items.map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn render_map(b: &FiniteAlgebra, a: &FiniteAlgebra, map: &[Elem]) -> String {
    let parts: Vec<String> = map.iter().enumerate().map(|(i, &e)| format!("{}->{}", b.label(i as Elem), a.label(e))).collect();
    parts.join(" ")
}

fn abelian(c: &AbelianCmd, _budget: &Budget, r: &mut Report) -> Result<()> {
    let homogeneous = |p: &Path| load_system(p, &Language::additive_group()).and_then(|s| coefficient_matrix(&s));
    match c {
        AbelianCmd::Snf { matrix } => {
            let m = parse_matrix(matrix)?;
            let s = smith_normal_form(&m);
            let factors: Vec<String> = s.invariant_factors().iter().map(BigInt::to_string).collect();
            r.field("invariant_factors", factors.join(", "))
                .field("D", &s.d)
                .field("U", &s.u)
                .field("V", &s.v);
        }
        AbelianCmd::Radical { system } => {
            let basis = radical_lattice(&homogeneous(system)?);
            r.field("rank", basis.rows());
            r.list("basis", (0..basis.rows()).map(|i| tuple(basis.row(i).iter())));
        }
        AbelianCmd::Rank { system } => {
            r.field("rank", coordinate_group_rank(&homogeneous(system)?));
        }
        AbelianCmd::Prefix { system, group: g } => {
            let m = homogeneous(system)?;
            r.field("prefix", minimal_equivalent_prefix(&m.to_rows(), &group(g)?)?);
        }
        AbelianCmd::Suboplus { group: g } => {
            let s = sub_oplus(&group(g)?);
            r.field("count", s.len()).list("summands", s.iter());
        }
        AbelianCmd::Coord(p) => {
            r.verdict(is_coordinate_abelian(&group(&p.candidate)?, &group(&p.group)?));
        }
        AbelianCmd::Irrcoord(p) => {
            r.verdict(is_irreducible_coordinate_abelian(&group(&p.candidate)?, &group(&p.group)?));
        }
        AbelianCmd::Coordc(p) => {
            r.verdict(is_coordinate_abelian_with_constants(&group(&p.candidate)?, &group(&p.group)?));
        }
        AbelianCmd::Irrcoordc(p) => {
            r.verdict(is_irreducible_coordinate_abelian_with_constants(&group(&p.candidate)?, &group(&p.group)?));
        }
        AbelianCmd::Geomeq { group: g, other } => {
            r.verdict(geom_equiv_abelian(&group(g)?, &group(other)?));
        }
    }
    Ok(())
}

fn formula(c: &FormulaCmd, budget: &Budget, r: &mut Report) -> Result<()> {
    match c {
        FormulaCmd::Check { algebra, formula } => {
            let alg = load_algebra(algebra)?;
            let fs = parse_formula_file(&read(formula)?, alg.language())?;
            let mut all = true;
            let mut lines = Vec::new();
            for f in &fs {
                let line = match counterexample(f, &alg, budget)? {
                    None => format!("holds: {f}"),
                    Some(p) => {
                        all = false;
                        let mut s = format!("fails: {f} at ");
                        let bound: Vec<String> =
                            f.variables.iter().zip(&p).map(|(v, &e)| format!("{v}={}", alg.label(e))).collect();
                        let _ = write!(s, "{}", bound.join(", "));
                        s
                    }
                };
                lines.push(line);
            }
            r.verdict(all).list("results", lines);
        }
        FormulaCmd::Sigma { group: g, p_max, n_max } => {
            let s = sigma_a(&group(g)?, *p_max, *n_max)?;
            if let Some(m) = s.period {
                r.field("period", m);
            }
            r.list("formulas", s.formulas.iter());
            if !s.uncovered_primes.is_empty() {
                r.field("uncovered_primes", tuple(s.uncovered_primes.iter()));
            }
        }
        FormulaCmd::Phi { group: g, p, k, n } => {
            let a = group(g)?;
            let count = count_of_order(&a, *p, *k)?;
            r.verdict(count <= (*n).into()).field("count", &count);
            if let Ok(f) = phi_nk(*p, *k, *n as usize) {
                if *n <= 4 {
                    r.field("formula", f);
                }
            }
        }
    }
    Ok(())
}
