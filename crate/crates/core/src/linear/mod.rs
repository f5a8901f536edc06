//! Finitely generated abelian groups, integer lattices, and the monoid of
//! naturals.

mod nat;
mod snf;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finalg::{direct_product, trivial, zn, FiniteAlgebra};
use crate::normalize::{normalize, NormalForm, Variety};
use crate::term::{Language, System, Term};

pub use nat::{parse_nat_equation, solve_over_n, NatEquation};
pub use snf::{hermite_normal_form, smith_normal_form, IntMatrix, Snf};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `q = p^e`, `e >= 1`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// A direct summand type: `Z` or a cyclic `Z_{p^e}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    Z,
    Cyclic { p: u64, e: u32 },
}

impl Summand {
    pub fn order(&self) -> Option<u64> {
        match *self {
            Summand::Z => None,
            Summand::Cyclic { p, e } => Some(p.pow(e)),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Z => f.write_str("Z"),
            Summand::Cyclic { .. } => write!(f, "Z_{}", self.order().expect("finite")),
        }
    }
}

/// `Z^rank + Z_{p1^e1} + ...`, torsion kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<(u64, u32)>,
}

impl FGAbelianGroup {
    /// Fails unless every torsion order is a prime power above 1.
    pub fn new(rank: usize, torsion_orders: &[u64]) -> Result<Self> {
        let mut torsion = Vec::with_capacity(torsion_orders.len());
        for &q in torsion_orders {
            torsion.push(prime_power(q).ok_or(Error::NotPrimePower(q))?);
        }
        torsion.sort_unstable();
        Ok(FGAbelianGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        FGAbelianGroup::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Torsion factors as `(p, e)`, sorted.
    pub fn torsion(&self) -> &[(u64, u32)] {
        &self.torsion
    }

    pub fn torsion_part(&self) -> FGAbelianGroup {
        FGAbelianGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// Least common multiple of the torsion orders, `None` with a free part.
    pub fn period(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(1u64, |acc, &(p, e)| acc.lcm(&p.pow(e))))
    }

    pub fn summands(&self) -> Vec<Summand> {
        let mut out = vec![Summand::Z; self.rank];
        out.extend(self.torsion.iter().map(|&(p, e)| Summand::Cyclic { p, e }));
        out
    }

    /// Renders a finite group as `Z_{q1} x ... ` in the additive language.
    pub fn to_finite_algebra(&self) -> Result<FiniteAlgebra> {
        if self.rank > 0 {
            return Err(Error::Malformed(format!("{self} is infinite")));
        }
        if self.torsion.is_empty() {
            return Ok(trivial(Language::additive_group()).renamed("0"));
        }
        let factors = self
            .torsion
            .iter()
            .map(|&(p, e)| zn(p.pow(e) as usize))
            .collect::<Result<Vec<_>>>()?;
        let a = if factors.len() == 1 { factors[0].clone() } else { direct_product(&factors)? };
        Ok(a.renamed(self.to_string()))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|&(p, e)| format!("Z_{}", p.pow(e))));
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for FGAbelianGroup {
    type Err = Error;

    /// Parses `Z^k + Z_{m1} + Z_m2 + ...`; `0` is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Malformed(format!("abelian group literal `{s}`: {what}"));
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            if part == "0" {
                continue;
            }
            if part.is_empty() {
                return Err(bad("empty summand"));
            }
            let rest = part.strip_prefix('Z').ok_or_else(|| bad(&format!("unexpected `{part}`")))?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(k) = rest.strip_prefix('^') {
                rank += k.parse::<usize>().map_err(|_| bad(&format!("bad exponent `{k}`")))?;
            } else {
                let m = rest.strip_prefix('_').unwrap_or(rest);
                let m = m.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(m);
                let q: u64 = m.parse().map_err(|_| bad(&format!("bad order `{m}`")))?;
                orders.push(q);
            }
        }
        FGAbelianGroup::new(rank, &orders)
    }
}

/// Nonzero subgroups of direct summands: `Z` when the rank is positive and
/// `Z_{p^j}` for each factor `Z_{p^n}` and `1 <= j <= n`.
pub fn sub_oplus(a: &FGAbelianGroup) -> BTreeSet<Summand> {
    let mut out = BTreeSet::new();
    if a.rank > 0 {
        out.insert(Summand::Z);
    }
    for &(p, n) in &a.torsion {
        for e in 1..=n {
            out.insert(Summand::Cyclic { p, e });
        }
    }
    out
}

/// Every summand of `b` lies in `Sub_oplus(a)`.
pub fn is_coordinate_abelian(b: &FGAbelianGroup, a: &FGAbelianGroup) -> bool {
    let allowed = sub_oplus(a);
    b.summands().iter().all(|s| allowed.contains(s))
}

/// Finite abelian groups: `t` embeds into `u` iff for each prime `p` and each
/// `j`, `t` has at most as many cyclic `p`-factors of exponent `>= j` as `u`.
pub fn torsion_embeds(t: &FGAbelianGroup, u: &FGAbelianGroup) -> bool {
    let count = |g: &FGAbelianGroup, p: u64, j: u32| g.torsion.iter().filter(|&&(q, e)| q == p && e >= j).count();
    t.torsion
        .iter()
        .all(|&(p, e)| (1..=e).all(|j| count(t, p, j) <= count(u, p, j)))
}

/// `T(b)` embeds into `T(a)`, and `b` is torsion when `a` is.
pub fn is_irreducible_coordinate_abelian(b: &FGAbelianGroup, a: &FGAbelianGroup) -> bool {
    torsion_embeds(&b.torsion_part(), &a.torsion_part()) && (a.rank > 0 || b.rank == 0)
}

/// Equal `Sub_oplus` sets.
pub fn geom_equiv_abelian(a: &FGAbelianGroup, b: &FGAbelianGroup) -> bool {
    sub_oplus(a) == sub_oplus(b)
}

/// The C-group `a + b_prime` with `a` named by constants is a coordinate
/// group over `a` iff `b_prime` is coordinate over `a`.
pub fn is_coordinate_abelian_with_constants(b_prime: &FGAbelianGroup, a: &FGAbelianGroup) -> bool {
    is_coordinate_abelian(b_prime, a)
}

/// Irreducible case: `b_prime` is trivial when `a` is torsion, and free
/// otherwise.
pub fn is_irreducible_coordinate_abelian_with_constants(b_prime: &FGAbelianGroup, a: &FGAbelianGroup) -> bool {
    if a.rank == 0 {
        b_prime.is_trivial()
    } else {
        b_prime.torsion.is_empty()
    }
}

/// Coefficient rows `lhs - rhs` of equations in the additive group language.
pub fn coefficient_matrix(sys: &System) -> Result<IntMatrix> {
    let n = sys.variables.len();
    let mut rows = Vec::with_capacity(sys.equations.len());
    for eq in &sys.equations {
        let diff = Term::binary("add", eq.lhs.clone(), Term::unary("neg", eq.rhs.clone()));
        let NormalForm::Linear(map) = normalize(&diff, Variety::AbelianGroup)? else {
            unreachable!("abelian normal form is linear")
        };
        let mut row = vec![BigInt::zero(); n];
        for (atom, c) in map {
            match atom {
                Term::Var(v) => {
                    let i = sys.variables.iter().position(|x| *x == v).ok_or(Error::MissingBinding(v))?;
                    row[i] = c;
                }
                Term::App(name, _) => {
                    return Err(Error::Malformed(format!(
                        "constant `{name}` in a homogeneous system"
                    )))
                }
            }
        }
        rows.push(row);
    }
    Ok(IntMatrix::from_rows(n, rows))
}

/// Basis (in Hermite form) of the saturation of the row lattice: the
/// coefficient vectors of all equations true on the solution set over `Z`.
pub fn radical_lattice(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    hermite_normal_form(&s.v_inv.top(s.rank()))
}

/// Rank `n - rank(M)` of the free coordinate group over `Z`.
pub fn coordinate_group_rank(m: &IntMatrix) -> usize {
    m.cols() - smith_normal_form(m).rank()
}

/// True iff `c` is in the row lattice saturation, i.e. `c.x = 0` holds on
/// every integer solution.
pub fn in_radical_lattice(m: &IntMatrix, c: &[BigInt]) -> bool {
    let basis = radical_lattice(m);
    let mut rows = basis.to_rows();
    rows.push(c.to_vec());
    smith_normal_form(&IntMatrix::from_rows(m.cols(), rows)).rank() == basis.rows()
}

/// Per-summand description of a solution subgroup: its free rank over `Z`
/// summands and its size over each cyclic summand type.
fn solution_invariants(m: &IntMatrix, a: &FGAbelianGroup) -> Vec<BigInt> {
    let n = m.cols();
    let s = smith_normal_form(m);
    let factors = s.invariant_factors();
    let mut out = Vec::new();
    if a.rank > 0 {
        out.push(BigInt::from(n - factors.len()));
    }
    let mut seen = BTreeSet::new();
    for &(p, e) in &a.torsion {
        if !seen.insert((p, e)) {
            continue;
        }
        let q = BigInt::from(p.pow(e));
        let mut size = num_traits::pow(q.clone(), n - factors.len());
        for d in &factors {
            size *= d.gcd(&q);
        }
        out.push(size);
    }
    out
}

/// Least `i >= 1` such that the first `i` rows define the same solution
/// subgroup of `A^n` as all rows.
pub fn minimal_equivalent_prefix(rows: &[Vec<BigInt>], a: &FGAbelianGroup) -> Result<usize> {
    let Some(first) = rows.first() else { return Err(Error::EmptyList) };
    let n = first.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("equations over different variable counts".into()));
    }
    let full = solution_invariants(&IntMatrix::from_rows(n, rows.to_vec()), a);
    for i in 1..=rows.len() {
        if solution_invariants(&IntMatrix::from_rows(n, rows[..i].to_vec()), a) == full {
            return Ok(i);
        }
    }
    unreachable!("the full list matches itself")
}

/// Small helper for tests and the CLI: `i64` rows to `BigInt` rows.
pub fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn literal_parsing() {
        let a = g("Z^2 + Z_8 + Z_3 + Z_3");
        assert_eq!(a.rank(), 2);
        assert_eq!(a.torsion(), &[(2, 3), (3, 1), (3, 1)]);
        assert_eq!(a.to_string(), "Z^2 + Z_8 + Z_3 + Z_3");
        assert_eq!(g("Z_{9} + Z"), g("Z + Z_9"));
        assert_eq!(g("0"), FGAbelianGroup::zero());
        assert!(matches!("Z_6".parse::<FGAbelianGroup>(), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn sub_oplus_example() {
        let s: Vec<String> = sub_oplus(&g("Z^2 + Z_8 + Z_3 + Z_3")).iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["Z", "Z_2", "Z_4", "Z_8", "Z_3"]);
        assert_eq!(sub_oplus(&g("Z")).len(), 1);
        let s: Vec<String> = sub_oplus(&g("Z_27")).iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["Z_3", "Z_9", "Z_27"]);
    }

    #[test]
    fn classification() {
        let a = g("Z^2 + Z_8 + Z_3 + Z_3");
        assert!(is_coordinate_abelian(&g("Z_8 + Z_8 + Z_8"), &a));
        assert!(!is_coordinate_abelian(&g("Z + Z_9"), &a));
        assert!(is_coordinate_abelian(&g("0"), &a));
        assert!(is_irreducible_coordinate_abelian(&g("Z^2 + Z_2"), &g("Z + Z_8")));
        assert!(!is_irreducible_coordinate_abelian(&g("Z"), &g("Z_4")));
        assert!(is_irreducible_coordinate_abelian(&g("Z_4 + Z_3"), &g("Z_4 + Z_3")));
        assert!(geom_equiv_abelian(&g("Z"), &g("Z^2")));
        assert!(!geom_equiv_abelian(&g("Z_2"), &g("Z_4")));
        assert!(is_coordinate_abelian_with_constants(&g("Z^5"), &g("Z")));
        assert!(!is_coordinate_abelian_with_constants(&g("Z_2"), &g("Z")));
        assert!(is_coordinate_abelian_with_constants(&g("0"), &g("Z")));
        assert!(is_irreducible_coordinate_abelian_with_constants(&g("Z^3"), &g("Z")));
        assert!(!is_irreducible_coordinate_abelian_with_constants(&g("Z"), &g("Z_4")));
        assert!(!is_irreducible_coordinate_abelian_with_constants(&g("Z_2"), &g("Z + Z_2")));
    }

    #[test]
    fn ulm_counting() {
        assert!(torsion_embeds(&g("Z_2 + Z_2"), &g("Z_8 + Z_2")));
        assert!(!torsion_embeds(&g("Z_2 + Z_2"), &g("Z_8")));
        assert!(!torsion_embeds(&g("Z_4"), &g("Z_2 + Z_2")));
    }

    #[test]
    fn radicals() {
        let basis = |rows: &[Vec<i64>]| radical_lattice(&IntMatrix::from_i64(rows));
        assert_eq!(basis(&[vec![2]]), IntMatrix::from_i64(&[vec![1]]));
        assert_eq!(basis(&[vec![1, 1]]), IntMatrix::from_i64(&[vec![1, 1]]));
        assert_eq!(basis(&[vec![2, 2], vec![2, -2]]), IntMatrix::identity(2));
        assert_eq!(coordinate_group_rank(&IntMatrix::from_i64(&[vec![0]])), 1);
        assert_eq!(coordinate_group_rank(&IntMatrix::from_i64(&[vec![0, 0], vec![-1, 1]])), 1);
    }

    #[test]
    fn prefixes() {
        let rows: Vec<Vec<i64>> = (0..=10).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        assert_eq!(minimal_equivalent_prefix(&big_rows(&rows), &g("Z")).unwrap(), 2);
        assert_eq!(minimal_equivalent_prefix(&big_rows(&[vec![3, 1]]), &g("Z")).unwrap(), 1);
        let ys = big_rows(&[vec![2], vec![4], vec![6]]);
        assert_eq!(minimal_equivalent_prefix(&ys, &g("Z")).unwrap(), 1);
        assert_eq!(minimal_equivalent_prefix(&[], &g("Z")), Err(Error::EmptyList));
        // Over Z_4, 2y = 0 leaves y in {0, 2}; y = 0 shrinks that.
        assert_eq!(minimal_equivalent_prefix(&big_rows(&[vec![2], vec![1]]), &g("Z_4")).unwrap(), 2);
        // Over Z, 2y = 0 already forces y = 0.
        assert_eq!(minimal_equivalent_prefix(&big_rows(&[vec![2], vec![1]]), &g("Z")).unwrap(), 1);
    }

    #[test]
    fn finite_rendering() {
        let a = g("Z_2 + Z_3").to_finite_algebra().unwrap();
        assert_eq!(a.size(), 6);
        assert_eq!(g("0").to_finite_algebra().unwrap().size(), 1);
        assert!(g("Z").to_finite_algebra().is_err());
    }
}
