mod common;

use std::collections::BTreeMap;

use common::{all_tuples, eval, naive_closure, random_term, rng, vars};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use uag::congruence::congruent_closure_contains;
use uag::finalg::{
    direct_product, enumerate_homs, generate_subalgebra, ln, lzn, parse_algebra, rbnm, render_algebra, zn, zn_ring,
};
use uag::formulas::{Formula, Literal};
use uag::geometry::{closure, in_radical, is_algebraic, solve, systems_equivalent};
use uag::linear::{big_rows, minimal_equivalent_prefix, smith_normal_form, solve_over_n, FGAbelianGroup, IntMatrix};
use uag::normalize::{equivalent_over, normalize, Variety};
use uag::parse::{parse_formula, parse_language, parse_system, parse_term};
use uag::report::{Report, Verdict};
use uag::symbolic::{solve_free_unar, Bicyclic, UnarEquation, UnarSolution, UnarSystem};
use uag::{Budget, Elem, Equation, FiniteAlgebra, Language, System, Term};

fn leaves(lang: &Language, vs: &[&str]) -> Vec<Term> {
    vs.iter()
        .map(|v| Term::var(*v))
        .chain(lang.constants().map(|(_, s)| Term::constant(s.name.clone())))
        .collect()
}

fn term_strategy(lang: Language, vs: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let ops: Vec<(String, usize)> =
        lang.symbols().iter().filter(|s| s.arity > 0).map(|s| (s.name.clone(), s.arity)).collect();
    proptest::sample::select(leaves(&lang, vs)).prop_recursive(4, 40, 3, move |inner| {
        (proptest::sample::select(ops.clone()), proptest::collection::vec(inner, 3))
            .prop_map(|((name, arity), args)| Term::app(name, args[..arity].to_vec()))
    })
}

fn generic_language() -> Language {
    parse_language("op f/1; op g/2; op h/3; const c").unwrap()
}

const XYZ: &[&str] = &["x", "y", "z"];

fn xyz() -> Vec<String> {
    XYZ.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn terms_print_and_parse_back(t in term_strategy(generic_language(), XYZ)) {
        prop_assert_eq!(parse_term(&t.to_string(), &generic_language(), &xyz()).unwrap(), t);
    }

    #[test]
    fn ring_terms_print_and_parse_back(t in term_strategy(Language::ring(true), XYZ)) {
        prop_assert_eq!(parse_term(&t.to_string(), &Language::ring(true), &xyz()).unwrap(), t);
    }

    #[test]
    fn group_terms_print_and_parse_back(t in term_strategy(Language::group(), XYZ)) {
        prop_assert_eq!(parse_term(&t.to_string(), &Language::group(), &xyz()).unwrap(), t);
    }

    #[test]
    fn formulas_print_and_parse_back(
        sides in proptest::collection::vec(term_strategy(Language::additive_group(), XYZ), 2..8),
        signs in proptest::collection::vec(any::<bool>(), 4),
        split in 0usize..4,
    ) {
        let lits: Vec<Literal> = sides
            .chunks_exact(2)
            .zip(&signs)
            .map(|(p, &pos)| if pos { Literal::eq(p[0].clone(), p[1].clone()) } else { Literal::ne(p[0].clone(), p[1].clone()) })
            .collect();
        let cut = split.min(lits.len());
        let f = Formula { variables: xyz(), premises: lits[..cut].to_vec(), conclusion: lits[cut..].to_vec() };
        let back = parse_formula(&f.to_string(), &Language::additive_group()).unwrap();
        prop_assert_eq!(back.premises, f.premises);
        prop_assert_eq!(back.conclusion, f.conclusion);
    }

    #[test]
    fn substitution_composes(
        t in term_strategy(generic_language(), XYZ),
        s1 in proptest::collection::vec(term_strategy(generic_language(), XYZ), 3),
        s2 in proptest::collection::vec(term_strategy(generic_language(), XYZ), 3),
    ) {
        let sigma: BTreeMap<String, Term> = xyz().into_iter().zip(s1).collect();
        let tau: BTreeMap<String, Term> = xyz().into_iter().zip(s2).collect();
        let composed: BTreeMap<String, Term> =
            sigma.iter().map(|(v, s)| (v.clone(), s.substitute(&tau))).collect();
        prop_assert_eq!(t.substitute(&sigma).substitute(&tau), t.substitute(&composed));
    }

    #[test]
    fn machine_reports_round_trip(
        command in "[^\r\n]{0,20}",
        fields in proptest::collection::vec(("[a-z_.]{1,8}", "[^\r]{0,30}"), 0..5),
        usage in proptest::collection::vec(("[a-z]{1,6}", any::<u64>()), 0..3),
        verdict in proptest::option::of(prop_oneof![Just(Verdict::True), Just(Verdict::False), Just(Verdict::Unknown)]),
    ) {
        let r = Report { command, verdict, fields, usage };
        prop_assert_eq!(Report::parse_machine(&r.to_machine()).unwrap(), r);
    }

    #[test]
    fn algebra_files_round_trip(size in 1usize..4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = FiniteAlgebra::from_fn("R", generic_language(), size, |_, _| r.gen_range(0..size as Elem)).unwrap();
        let b = parse_algebra(&render_algebra(&a)).unwrap();
        prop_assert_eq!(b.size(), a.size());
        for id in 0..a.language().len() {
            prop_assert_eq!(b.table(id), a.table(id));
        }
    }

    #[test]
    fn smith_form_of_any_shape(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in proptest::collection::vec(-50i64..=50, 16),
    ) {
        let m = IntMatrix::from_i64(&(0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect::<Vec<_>>());
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        let k = rows.min(cols);
        for i in 0..rows {
            for j in 0..cols {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        let diag: Vec<BigInt> = (0..k).map(|i| s.d[(i, i)].clone()).collect();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn bicyclic_is_associative(v in proptest::collection::vec(0u64..1_000_000, 6)) {
        let (x, y, z) = (Bicyclic::new(v[0], v[1]), Bicyclic::new(v[2], v[3]), Bicyclic::new(v[4], v[5]));
        prop_assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
        prop_assert_eq!(x.mul(Bicyclic::ONE), x);
        prop_assert_eq!(Bicyclic::ONE.mul(x), x);
        prop_assert_eq!(x.to_string().parse::<Bicyclic>().unwrap(), x);
    }
}

// Finite models of each variety, used to check normal forms.

fn transformations() -> FiniteAlgebra {
    let apply = |f: Elem, i: Elem| (f / 3u32.pow(2 - i)) % 3;
    FiniteAlgebra::from_fn("T3", Language::semigroup(), 27, |_, a| {
        (0..3).fold(0, |acc, i| acc * 3 + apply(a[1], apply(a[0], i)))
    })
    .unwrap()
}

fn s3() -> FiniteAlgebra {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as Elem;
    FiniteAlgebra::from_fn("S3", Language::group(), 6, |id, a| match id {
        0 => {
            let (p, q) = (perms[a[0] as usize], perms[a[1] as usize]);
            index([q[p[0]], q[p[1]], q[p[2]]])
        }
        1 => {
            let p = perms[a[0] as usize];
            let mut inv = [0; 3];
            for (i, &j) in p.iter().enumerate() {
                inv[j] = i;
            }
            index(inv)
        }
        _ => 0,
    })
    .unwrap()
}

fn truncated_monoid() -> FiniteAlgebra {
    FiniteAlgebra::from_fn("N/4", Language::commutative_monoid(), 5, |id, a| {
        if id == 0 {
            (a[0] + a[1]).min(4)
        } else {
            0
        }
    })
    .unwrap()
}

fn cyclic_monoid(n: Elem) -> FiniteAlgebra {
    FiniteAlgebra::from_fn("C", Language::commutative_monoid(), n as usize, |id, a| {
        if id == 0 {
            (a[0] + a[1]) % n
        } else {
            0
        }
    })
    .unwrap()
}

/// Free left regular band on three letters: repetition-free words, where
/// `u * v` appends the letters of `v` missing from `u`.
fn left_regular_band(dual: bool) -> FiniteAlgebra {
    let mut words: Vec<Vec<u8>> = Vec::new();
    for w in all_tuples(3, 1).into_iter().chain(all_tuples(3, 2)).chain(all_tuples(3, 3)) {
        let w: Vec<u8> = w.iter().map(|&c| c as u8).collect();
        if (0..w.len()).all(|i| !w[..i].contains(&w[i])) {
            words.push(w);
        }
    }
    let words2 = words.clone();
    FiniteAlgebra::from_fn("LRB", Language::semigroup(), words.len(), move |_, a| {
        let (u, v) = if dual { (a[1], a[0]) } else { (a[0], a[1]) };
        let mut w = words2[u as usize].clone();
        for &c in &words2[v as usize] {
            if !w.contains(&c) {
                w.push(c);
            }
        }
        words2.iter().position(|x| *x == w).unwrap() as Elem
    })
    .unwrap()
}

fn subsets_union() -> FiniteAlgebra {
    FiniteAlgebra::from_fn("P3", Language::semigroup(), 8, |_, a| a[0] | a[1]).unwrap()
}

fn unar_model() -> FiniteAlgebra {
    FiniteAlgebra::from_fn("U", Language::unar(), 6, |_, a| [1, 2, 3, 0, 0, 4][a[0] as usize]).unwrap()
}

fn models(v: Variety) -> Vec<FiniteAlgebra> {
    match v {
        Variety::Semigroup => vec![transformations(), left_regular_band(false)],
        Variety::Group => vec![s3()],
        Variety::AbelianGroup => vec![zn(6).unwrap(), direct_product(&[zn(2).unwrap(), zn(4).unwrap()]).unwrap()],
        Variety::CommutativeMonoid => vec![truncated_monoid(), cyclic_monoid(6)],
        Variety::IdempotentSemigroup => {
            vec![left_regular_band(false), left_regular_band(true), rbnm(2, 3).unwrap(), ln(3).unwrap()]
        }
        Variety::Semilattice => vec![ln(3).unwrap(), subsets_union()],
        Variety::RectangularBand => vec![rbnm(2, 3).unwrap(), rbnm(3, 2).unwrap(), lzn(3).unwrap()],
        Variety::LeftZeroSemigroup => vec![lzn(3).unwrap()],
        Variety::Unar => vec![unar_model()],
    }
}

#[test]
fn models_belong_to_their_varieties() {
    let assoc = |a: &FiniteAlgebra| {
        let m = a.language().id("mul").or(a.language().id("add")).unwrap();
        all_tuples(a.size(), 3).iter().all(|t| {
            a.apply(m, &[a.apply(m, &[t[0], t[1]]), t[2]]) == a.apply(m, &[t[0], a.apply(m, &[t[1], t[2]])])
        })
    };
    for v in Variety::ALL {
        for a in models(v) {
            if v != Variety::Unar {
                assert!(assoc(&a), "{} is not associative", a.name());
            }
        }
    }
    for a in models(Variety::IdempotentSemigroup) {
        assert!(a.elements().all(|x| a.apply(0, &[x, x]) == x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// A term and its normal form agree in every model of the variety.
    #[test]
    fn normal_forms_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vs = vars(3);
        for v in Variety::ALL {
            let ms = models(v);
            let t = random_term(&mut r, ms[0].language(), &vs, 4);
            let n = normalize(&t, v).unwrap().to_term();
            for a in &ms {
                for _ in 0..10 {
                    let p: Vec<Elem> = (0..3).map(|_| r.gen_range(0..a.size() as Elem)).collect();
                    prop_assert_eq!(eval(&t, a, &vs, &p), eval(&n, a, &vs, &p), "{} over {} gives {}", t, v, n);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Over the generating algebras, equal normal forms coincide with
    /// agreement at every point.
    #[test]
    fn normal_forms_are_complete(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vs = vars(3);
        for (a, v) in [
            (ln(2).unwrap(), Variety::Semilattice),
            (lzn(2).unwrap(), Variety::LeftZeroSemigroup),
            (rbnm(2, 2).unwrap(), Variety::RectangularBand),
        ] {
            let t = random_term(&mut r, a.language(), &vs[..2], 3);
            let k = r.gen_range(2..=3);
            let s = random_term(&mut r, a.language(), &vs[..k], 3);
            let agree = all_tuples(a.size(), 3).iter().all(|p| eval(&t, &a, &vs, p) == eval(&s, &a, &vs, p));
            prop_assert_eq!(equivalent_over(&t, &s, v).unwrap(), agree, "{} vs {} over {}", t, s, v);
        }
    }
}

fn random_algebra(r: &mut common::R, k: usize) -> FiniteAlgebra {
    let lang = parse_language("op f/1; op g/2").unwrap();
    FiniteAlgebra::from_fn("R", lang, k, |_, _| r.gen_range(0..k as Elem)).unwrap()
}

fn closure_deck() -> Vec<FiniteAlgebra> {
    vec![ln(2).unwrap(), lzn(2).unwrap(), zn(2).unwrap(), zn_ring(2, true).unwrap(), ln(3).unwrap(), zn(3).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_naive_generation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let deck = closure_deck();
        let a = &deck[r.gen_range(0..deck.len())];
        let n = r.gen_range(1..=2);
        let space = all_tuples(a.size(), n);
        let mut z: Vec<Vec<Elem>> = space.iter().filter(|_| r.gen_bool(0.4)).cloned().collect();
        while a.size().pow(z.len() as u32 + 1) > 729 {
            z.pop();
        }
        let b = Budget::default();
        let cl = closure(&z, a, &vars(n), &b).unwrap();
        prop_assert_eq!(cl.points().to_vec(), naive_closure(a, n, &z), "{} {:?}", a.name(), z);
        prop_assert!(z.iter().all(|p| cl.contains(p)));
        let again = closure(cl.points(), a, &vars(n), &b).unwrap();
        prop_assert_eq!(again.points(), cl.points());
        prop_assert!(is_algebraic(cl.points(), a, n, &b).unwrap());
    }

    #[test]
    fn homomorphisms_are_exactly_the_brute_force_ones(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (sb, sa) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let b = random_algebra(&mut r, sb);
        let a = random_algebra(&mut r, sa);
        let homs = enumerate_homs(&b, &a, &Budget::default()).unwrap();
        let brute: Vec<Vec<Elem>> =
            all_tuples(a.size(), b.size()).into_iter().filter(|m| common::is_hom(&b, &a, m)).collect();
        let mut got: Vec<Vec<Elem>> = homs.iter().map(|h| h.map.clone()).collect();
        got.sort();
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn congruent_closure_lies_in_the_radical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let deck = common::deck();
        let (_, a) = &deck[r.gen_range(0..deck.len())];
        let s = common::random_system(&mut r, a.language(), 3, 3, 2);
        let q = if r.gen_bool(0.5) {
            let e = s.equations[0].clone();
            let f = a.language().symbols().iter().find(|s| s.arity > 0).unwrap();
            let wrap = |t: &Term| Term::app(f.name.clone(), vec![t.clone(); f.arity]);
            Equation::new(wrap(&e.rhs), wrap(&e.lhs))
        } else {
            common::random_equation(&mut r, a.language(), &s.variables, 2)
        };
        if congruent_closure_contains(&s, &q).unwrap() {
            let set = solve(&s, a, &Budget::default()).unwrap();
            prop_assert!(in_radical(&q, &set).unwrap());
        }
    }

    #[test]
    fn free_unar_ignores_equation_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let eqs: Vec<UnarEquation> = (0..r.gen_range(0..=4))
            .map(|_| UnarEquation { n: r.gen_range(0..4), lhs: r.gen_range(0..n), m: r.gen_range(0..4), rhs: r.gen_range(0..n) })
            .collect();
        let mut shuffled = eqs.clone();
        shuffled.shuffle(&mut r);
        let sys = |e: Vec<UnarEquation>| UnarSystem { symbol: "f".into(), variables: vars(n), equations: e };
        let a = solve_free_unar(&sys(eqs.clone()));
        let b = solve_free_unar(&sys(shuffled));
        match (&a, &b) {
            (UnarSolution::Reduced { .. }, UnarSolution::Reduced { .. }) => prop_assert_eq!(&a, &b),
            (UnarSolution::Inconsistent { .. }, UnarSolution::Inconsistent { .. }) => {}
            _ => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
        // A consistent system has a solution in the naturals viewed as the
        // free unar of rank one, with values bounded by the exponent sum.
        let bound: u64 = eqs.iter().map(|e| e.n + e.m).sum();
        let solvable = all_tuples(bound as usize + 1, n)
            .iter()
            .any(|p| eqs.iter().all(|e| p[e.lhs] as u64 + e.n == p[e.rhs] as u64 + e.m));
        prop_assert_eq!(matches!(a, UnarSolution::Reduced { .. }), solvable);
    }

    #[test]
    fn diophantine_algebras_name_everything(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bases = [ln(2).unwrap(), zn(3).unwrap(), rbnm(2, 2).unwrap()];
        let d = bases[r.gen_range(0..bases.len())].diophantize();
        let b = Budget::default();
        prop_assert_eq!(generate_subalgebra(&d, &[], &b).unwrap().0.size(), d.size());
        let p: Vec<Elem> = (0..2).map(|_| r.gen_range(0..d.size() as Elem)).collect();
        prop_assert!(is_algebraic(&[p], &d, 2, &b).unwrap());
        prop_assert!(is_algebraic(&[], &d, 2, &b).unwrap());
    }
}

/// `sum c_i x_i = 0` in the additive group language.
fn linear_equation(row: &[i64], vs: &[String]) -> Equation {
    let mut lhs: Option<Term> = None;
    for (c, v) in row.iter().zip(vs) {
        if *c == 0 {
            continue;
        }
        let mut t = Term::scalar(c.unsigned_abs(), &Term::var(v.clone()));
        if *c < 0 {
            t = Term::unary("neg", t);
        }
        lhs = Some(match lhs {
            None => t,
            Some(l) => Term::binary("add", l, t),
        });
    }
    Equation::new(lhs.unwrap_or_else(|| Term::constant("zero")), Term::constant("zero"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The minimal prefix defines the same solutions as the whole list over
    /// the finite cyclic group, and no shorter prefix does.
    #[test]
    fn minimal_prefix_on_finite_renderings(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = [4u64, 5, 8, 9][r.gen_range(0..4)];
        let n = r.gen_range(1..=3);
        let rows: Vec<Vec<i64>> =
            (0..r.gen_range(1..=4)).map(|_| (0..n).map(|_| r.gen_range(-6..=6)).collect()).collect();
        let g = FGAbelianGroup::new(0, &[q]).unwrap();
        let k = minimal_equivalent_prefix(&big_rows(&rows), &g).unwrap();
        let a = zn(q as usize).unwrap();
        let vs = vars(n);
        let system = |m: usize| {
            System::new(Language::additive_group(), vs.clone(), rows[..m].iter().map(|row| linear_equation(row, &vs)).collect()).unwrap()
        };
        let b = Budget::default();
        prop_assert!(systems_equivalent(&system(k), &system(rows.len()), &a, &b).unwrap());
        if k > 1 {
            prop_assert!(!systems_equivalent(&system(k - 1), &system(rows.len()), &a, &b).unwrap());
        }
    }

    /// Solutions over the naturals are exactly the bounded brute-force ones.
    #[test]
    fn naturals_solutions_are_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let vs = vars(n);
        let eqs: Vec<(Vec<u64>, u64)> = (0..r.gen_range(1..=2))
            .map(|i| ((0..n).map(|_| r.gen_range(if i == 0 { 1 } else { 0 }..=4)).collect(), r.gen_range(0..=8)))
            .collect();
        let equations = eqs
            .iter()
            .map(|(cs, rhs)| {
                let lhs = cs
                    .iter()
                    .zip(&vs)
                    .filter(|(c, _)| **c > 0)
                    .map(|(c, v)| Term::scalar(*c, &Term::var(v.clone())))
                    .reduce(|a, b| Term::binary("add", a, b))
                    .unwrap_or_else(|| Term::constant("zero"));
                let rhs = if *rhs == 0 { Term::constant("zero") } else { Term::scalar(*rhs, &Term::constant("one")) };
                Equation::new(lhs, rhs)
            })
            .collect();
        let sys = System::new(Language::naturals(), vs, equations).unwrap();
        let got = solve_over_n(&sys, &Budget::default()).unwrap();
        let want: Vec<Vec<u64>> = all_tuples(9, n)
            .into_iter()
            .map(|p| p.into_iter().map(u64::from).collect::<Vec<u64>>())
            .filter(|p| eqs.iter().all(|(cs, rhs)| cs.iter().zip(p).map(|(c, x)| c * x).sum::<u64>() == *rhs))
            .collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn solver_handles_constants_and_empty_systems() {
    let f2 = zn_ring(2, true).unwrap();
    let s = parse_system("vars: x\neq: x = x + 1", f2.language()).unwrap();
    assert!(solve(&s, &f2, &Budget::default()).unwrap().is_empty());
    let s = parse_system("vars: x,y", f2.language()).unwrap();
    assert_eq!(solve(&s, &f2, &Budget::default()).unwrap().len(), 4);
}
