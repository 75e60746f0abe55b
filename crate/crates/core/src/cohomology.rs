//! The graded ring `H^{<=2}(G_Q, Z/2)`.
//!
//! Degree 1 is `Q^x / Q^x2`, stored as the squarefree integer of the class.
//! Degree 2 (the 2-torsion of `Br(Q)`) is stored as its set of ramified
//! places: by class field theory a class is determined by its local
//! invariants, which are nonzero at an even number of places. Cup products of
//! degree-1 classes are computed place by place with Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, factor, is_prime, jacobi, squarefree_part, valuation, Integer, Rational};
use crate::error::{Error, Result};

/// A place of `Q`: a prime or the real place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Integer),
    Infinite,
}

impl Place {
    /// The place attached to a prime; fails unless `p` is prime.
    pub fn prime(p: impl Into<Integer>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    pub(crate) fn two() -> Self {
        Place::Finite(Integer::from(2))
    }

    fn check(&self) -> Result<()> {
        match self {
            Place::Finite(p) if !is_prime(p) => Err(Error::domain(format!("{p} is not prime"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Place::Infinite),
            other => Place::prime(arith::parse_integer(other)?),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Finite(p) => serialize_integer(p, s),
            Place::Infinite => s.serialize_str("inf"),
        }
    }
}

pub(crate) fn serialize_integer<S: Serializer>(
    n: &Integer,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

/// A class in `Q^x / Q^x2 = H^1(G_Q, Z/2)`, represented by its squarefree
/// integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(Integer);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(Integer::one())
    }

    /// The class of `-1`.
    pub fn minus_one() -> Self {
        SquareClass(-Integer::one())
    }

    pub fn new(q: &Rational) -> Result<Self> {
        Ok(SquareClass(squarefree_part(q)?))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Result<Self> {
        Self::new(&Rational::from_integer(n.into()))
    }

    /// The canonical squarefree representative.
    pub fn representative(&self) -> &Integer {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    /// `k` times this class in additive notation.
    pub fn times(&self, k: u64) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            self.clone()
        }
    }

    /// Primes dividing the representative.
    pub fn primes(&self) -> Vec<Integer> {
        factor(&self.0)
            .map(|f| f.factors.into_keys().collect())
            .unwrap_or_default()
    }

    /// Whether the class restricted to `Q_v` is nontrivial.
    pub fn localize(&self, v: &Place) -> bool {
        !is_local_square(&self.0, v)
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: &SquareClass) -> SquareClass {
        // Both factors squarefree, so ab/gcd(a,b)^2 is squarefree.
        let g = self.0.gcd(&rhs.0);
        SquareClass(&self.0 * &rhs.0 / (&g * &g))
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: SquareClass) -> SquareClass {
        &self * &rhs
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_integer(&self.0, s)
    }
}

// Squarefree `s` is a square in Q_v.
fn is_local_square(s: &Integer, v: &Place) -> bool {
    match v {
        Place::Infinite => s.is_positive(),
        Place::Finite(p) if p == &Integer::from(2) => {
            s.is_odd() && s.mod_floor(&Integer::from(8)) == Integer::one()
        }
        Place::Finite(p) => !(s % p).is_zero() && jacobi(s, p) == 1,
    }
}

/// A 2-torsion class in `Br(Q) = H^2(G_Q, Z/2)`, given by the places where
/// it is locally nontrivial.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CohClass2 {
    support: BTreeSet<Place>,
}

impl CohClass2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `(-1) . (-1)`, ramified at 2 and infinity (Hamilton quaternions).
    pub fn quaternions() -> Self {
        CohClass2 { support: BTreeSet::from([Place::two(), Place::Infinite]) }
    }

    /// Builds a class from its ramification set; the set must have even size.
    pub fn from_places(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let mut support = BTreeSet::new();
        for p in places {
            p.check()?;
            if !support.insert(p.clone()) {
                return Err(Error::domain(format!("place {p} listed twice")));
            }
        }
        if support.len() % 2 == 1 {
            return Err(Error::domain(
                "support of a class in Br(Q) must have even size",
            ));
        }
        Ok(CohClass2 { support })
    }

    pub fn support(&self) -> &BTreeSet<Place> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// `k` times this class.
    pub fn times(&self, k: u64) -> Self {
        if k % 2 == 0 {
            Self::zero()
        } else {
            self.clone()
        }
    }

    /// Whether the class restricted to `Q_v` is nontrivial.
    pub fn localize(&self, v: &Place) -> bool {
        self.support.contains(v)
    }

    /// The local invariant as a sign: `-1` on the support, `+1` elsewhere.
    pub fn local_sign(&self, v: &Place) -> i8 {
        if self.localize(v) {
            -1
        } else {
            1
        }
    }
}

/// Group law in `H^2`: symmetric difference of supports.
pub fn add2(x: &CohClass2, y: &CohClass2) -> CohClass2 {
    CohClass2 {
        support: x.support.symmetric_difference(&y.support).cloned().collect(),
    }
}

impl std::ops::Add for &CohClass2 {
    type Output = CohClass2;

    fn add(self, rhs: &CohClass2) -> CohClass2 {
        add2(self, rhs)
    }
}

impl std::ops::Add for CohClass2 {
    type Output = CohClass2;

    fn add(self, rhs: CohClass2) -> CohClass2 {
        add2(&self, &rhs)
    }
}

impl std::iter::Sum for CohClass2 {
    fn sum<I: Iterator<Item = CohClass2>>(iter: I) -> Self {
        iter.fold(CohClass2::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for CohClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for CohClass2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.support.iter())
    }
}

/// The Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("Hilbert symbol of zero"));
    }
    v.check()?;
    let a = squarefree_part(a)?;
    let b = squarefree_part(b)?;
    Ok(hilbert_squarefree(&a, &b, v))
}

/// Hilbert symbol of two nonzero integers; `v` must be a valid place.
pub(crate) fn hilbert_squarefree(a: &Integer, b: &Integer, v: &Place) -> i8 {
    match v {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) if p == &Integer::from(2) => hilbert_at_two(a, b),
        Place::Finite(p) => hilbert_at_odd(a, b, p),
    }
}

fn hilbert_at_odd(a: &Integer, b: &Integer, p: &Integer) -> i8 {
    let (alpha, u) = valuation(a, p);
    let (beta, w) = valuation(b, p);
    let mut sign = 1i8;
    // (-1)^(alpha beta eps(p)), eps(p) = (p-1)/2
    if alpha % 2 == 1 && beta % 2 == 1 && p.mod_floor(&Integer::from(4)) == Integer::from(3) {
        sign = -sign;
    }
    if beta % 2 == 1 {
        sign *= jacobi(&u, p);
    }
    if alpha % 2 == 1 {
        sign *= jacobi(&w, p);
    }
    sign
}

// eps(u) = (u-1)/2 mod 2 and omega(u) = (u^2-1)/8 mod 2 for odd u.
fn eps(u: &Integer) -> u32 {
    (u.mod_floor(&Integer::from(4)) == Integer::from(3)) as u32
}

fn omega(u: &Integer) -> u32 {
    let r = u.mod_floor(&Integer::from(8));
    (r == Integer::from(3) || r == Integer::from(5)) as u32
}

fn hilbert_at_two(a: &Integer, b: &Integer) -> i8 {
    let two = Integer::from(2);
    let (alpha, u) = valuation(a, &two);
    let (beta, w) = valuation(b, &two);
    let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Places where a symbol in these integers can be nontrivial.
pub(crate) fn candidate_places<'a>(reps: impl IntoIterator<Item = &'a Integer>) -> BTreeSet<Place> {
    let mut places = BTreeSet::from([Place::two(), Place::Infinite]);
    for r in reps {
        if let Ok(f) = factor(r) {
            places.extend(f.factors.into_keys().map(Place::Finite));
        }
    }
    places
}

/// The cup product `(x) . (y)` in `H^2`.
pub fn cup(x: &SquareClass, y: &SquareClass) -> CohClass2 {
    if x.is_trivial() || y.is_trivial() {
        return CohClass2::zero();
    }
    let support = candidate_places([&x.0, &y.0])
        .into_iter()
        .filter(|v| hilbert_squarefree(&x.0, &y.0, v) == -1)
        .collect();
    CohClass2 { support }
}

/// Total Stiefel-Whitney / Hasse-Witt class `1 + w1 + w2`, truncated above
/// degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalWittClass {
    pub w1: SquareClass,
    pub w2: CohClass2,
}

impl TotalWittClass {
    pub fn identity() -> Self {
        TotalWittClass { w1: SquareClass::one(), w2: CohClass2::zero() }
    }

    pub fn new(w1: SquareClass, w2: CohClass2) -> Self {
        TotalWittClass { w1, w2 }
    }

    /// Inverse in the group of units `1 + H^1 + H^2`.
    pub fn inverse(&self) -> Self {
        TotalWittClass {
            w1: self.w1.clone(),
            w2: &self.w2 + &cup(&self.w1, &self.w1),
        }
    }
}

/// Degree-truncated product of total classes.
pub fn witt_mul(x: &TotalWittClass, y: &TotalWittClass) -> TotalWittClass {
    TotalWittClass {
        w1: &x.w1 * &y.w1,
        w2: &(&x.w2 + &y.w2) + &cup(&x.w1, &y.w1),
    }
}

impl Mul for &TotalWittClass {
    type Output = TotalWittClass;

    fn mul(self, rhs: &TotalWittClass) -> TotalWittClass {
        witt_mul(self, rhs)
    }
}

impl fmt::Display for TotalWittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1 + {} + {}", self.w1, self.w2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_integer(n).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(Integer::from(n))
    }

    fn p(n: i64) -> Place {
        Place::prime(n).unwrap()
    }

    fn class(places: &[Place]) -> CohClass2 {
        CohClass2::from_places(places.iter().cloned()).unwrap()
    }

    /// Brute force: a primitive solution of `z^2 = a x^2 + b y^2` modulo
    /// `p^(1 + v_p(4ab))`, which decides p-adic solvability for squarefree
    /// `a`, `b`.
    fn hilbert_brute(a: i64, b: i64, p: i64) -> i8 {
        let m = if p == 2 { 32 } else { p * p * p };
        let mut any_root = vec![false; m as usize];
        let mut unit_root = vec![false; m as usize];
        for z in 0..m {
            let r = (z * z % m) as usize;
            any_root[r] = true;
            if z % p != 0 {
                unit_root[r] = true;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let r = (a * x * x + b * y * y).rem_euclid(m) as usize;
                let primitive_xy = x % p != 0 || y % p != 0;
                if (primitive_xy && any_root[r]) || unit_root[r] {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::Infinite).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(-283), &p(283)).unwrap(), -1);
        for d in [-283, -275, 5, 7, -1] {
            assert_eq!(hilbert_symbol(&q(2), &q(d), &Place::Infinite).unwrap(), 1);
        }
        assert!(hilbert_symbol(&q(0), &q(1), &Place::Infinite).is_err());
        assert!(hilbert_symbol(&q(1), &q(1), &Place::Finite(Integer::from(9))).is_err());
    }

    #[test]
    fn hilbert_matches_brute_force_small() {
        let vals = [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10];
        for &a in &vals {
            for &b in &vals {
                for prime in [2i64, 3, 5] {
                    let got = hilbert_symbol(&q(a), &q(b), &p(prime)).unwrap();
                    assert_eq!(got, hilbert_brute(a, b, prime), "({a},{b})_{prime}");
                }
            }
        }
    }

    #[test]
    fn cup_examples() {
        assert!(cup(&sc(1), &sc(7)).is_zero());
        assert_eq!(cup(&sc(-1), &sc(-1)), class(&[p(2), Place::Infinite]));
        assert_eq!(cup(&sc(2), &sc(-283)), class(&[p(2), p(283)]));
    }

    #[test]
    fn add2_examples() {
        let h = class(&[p(2), Place::Infinite]);
        assert!(add2(&h, &h).is_zero());
        assert_eq!(add2(&h, &CohClass2::zero()), h);
        assert_eq!(
            add2(&class(&[p(2), p(283)]), &h),
            class(&[p(283), Place::Infinite])
        );
    }

    #[test]
    fn odd_support_rejected() {
        assert!(CohClass2::from_places([p(2)]).is_err());
        assert!(CohClass2::from_places([p(2), p(2)]).is_err());
        assert!(CohClass2::from_places([p(2), Place::Finite(Integer::from(4))]).is_err());
    }

    #[test]
    fn localize_examples() {
        assert!(sc(-1).localize(&Place::Infinite));
        assert!(class(&[p(2), p(283)]).localize(&p(283)));
        // squares mod 7: {1, 2, 4}
        let squares: Vec<i64> = (1..7).map(|x| x * x % 7).collect();
        assert!(squares.contains(&2));
        assert!(!sc(2).localize(&p(7)));
        assert!(sc(3).localize(&p(7)));
        assert!(sc(7).localize(&p(7)));
        assert!(!sc(17).localize(&p(2)));
        assert!(sc(5).localize(&p(2)));
        assert!(sc(2).localize(&p(2)));
    }

    #[test]
    fn witt_mul_examples() {
        let x = TotalWittClass::new(sc(-3), class(&[p(3), Place::Infinite]));
        assert_eq!(witt_mul(&x, &TotalWittClass::identity()), x);
        assert_eq!(witt_mul(&x, &x.inverse()), TotalWittClass::identity());
        let m = TotalWittClass::new(sc(-1), CohClass2::zero());
        assert_eq!(
            witt_mul(&m, &m),
            TotalWittClass::new(sc(1), class(&[p(2), Place::Infinite]))
        );
    }

    #[test]
    fn serialization() {
        let c = class(&[p(2), Place::Infinite]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"[2,"inf"]"#);
        let c = class(&[p(283), p(2)]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[2,283]");
        assert_eq!(serde_json::to_string(&sc(-275)).unwrap(), "-11");
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("283".parse::<Place>().unwrap(), p(283));
        assert!("12".parse::<Place>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nonzero() -> impl Strategy<Value = i64> {
            prop_oneof![-1_000_000i64..-1, 1i64..1_000_000]
        }

        proptest! {
            #[test]
            fn product_formula(a in nonzero(), b in nonzero()) {
                prop_assert_eq!(cup(&sc(a), &sc(b)).support().len() % 2, 0);
            }

            #[test]
            fn cup_symmetric_and_biadditive(a in nonzero(), b in nonzero(), c in nonzero()) {
                let (a, b, c) = (sc(a), sc(b), sc(c));
                prop_assert_eq!(cup(&a, &b), cup(&b, &a));
                prop_assert_eq!(cup(&(&a * &b), &c), cup(&a, &c) + cup(&b, &c));
            }

            #[test]
            fn symbol_identities(a in nonzero()) {
                let x = sc(a);
                prop_assert_eq!(cup(&x, &x), cup(&x, &SquareClass::minus_one()));
                prop_assert!(cup(&x, &sc(-a)).is_zero());
                if a != 1 {
                    prop_assert!(cup(&x, &sc(1 - a)).is_zero());
                }
            }

            #[test]
            fn witt_group_laws(a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), e in nonzero(), f in nonzero()) {
                let x = TotalWittClass::new(sc(a), cup(&sc(b), &sc(-1)));
                let y = TotalWittClass::new(sc(c), cup(&sc(d), &sc(3)));
                let z = TotalWittClass::new(sc(e), cup(&sc(f), &sc(-2)));
                prop_assert_eq!(witt_mul(&x, &y), witt_mul(&y, &x));
                prop_assert_eq!(witt_mul(&witt_mul(&x, &y), &z), witt_mul(&x, &witt_mul(&y, &z)));
                prop_assert_eq!(witt_mul(&x, &x.inverse()), TotalWittClass::identity());
            }
        }
    }
}
