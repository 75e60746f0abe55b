//! Obstruction classes for orthogonal Galois representations over `Q`.
//!
//! For the permutation representation `rho` of `G_Q` on the roots of `f`:
//!
//! * `sp2(rho) = (2) . (d_F)`,
//! * `sw2(rho) = w2(Tr) + sp2(rho)`, by Serre's trace-form formula,
//! * the embedding problem into the Pin double cover with twisted action is
//!   solvable iff `w2(Tr) = 0`; with constant action iff `sw2(rho) = 0`.
//!
//! Also here: local tables for quartic fields at odd primes, Stiefel-Whitney
//! classes of sums of quadratic characters, the real-place classes, and the
//! comparison classes `delta1`, `delta2` between two forms of equal rank.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime, Integer, Rational};
use crate::cohomology::{cup, hilbert_squarefree, CohClass2, Place, SquareClass};
use crate::error::{Error, Result};
use crate::etale::{real_signature, trace_gram, EtaleAlgebra, RealSignature};
use crate::forms::QuadraticForm;

/// Assumption attached to every quartic lifting report.
pub const S4_ASSUMPTION: &str =
    "Galois closure of Q[x]/(f) has group S4 (caller assertion, not verified)";

/// `sp2` of the permutation representation: `(2) . (disc f)`.
pub fn sp2_permutation(f: &EtaleAlgebra) -> CohClass2 {
    cup(&SquareClass::from_integer(2).expect("nonzero"), &f.disc_class())
}

/// `w2` of the trace form of `f`.
pub fn w2_trace(f: &EtaleAlgebra) -> CohClass2 {
    trace_gram(f).invariants().w2
}

/// `sw2` of the permutation representation, from Serre's formula
/// `sw2 + (2)(d) = w2(Tr)`.
pub fn sw2_permutation(f: &EtaleAlgebra) -> CohClass2 {
    w2_trace(f) + sp2_permutation(f)
}

/// Local data at one place: the Hasse-Witt sign of the trace form and the
/// Hilbert symbol `(2, d_F)_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalPair {
    pub w2_local: i8,
    pub symbol_2_df: i8,
}

/// Result of the two Pin-lifting problems for a quartic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub field_disc: SquareClass,
    pub signature: RealSignature,
    pub sw2: CohClass2,
    pub sp2: CohClass2,
    pub w2_trace: CohClass2,
    /// Twisted Pin extension (vanishing of `w2(Tr)`).
    pub lift_solvable: bool,
    /// Constant Pin extension (vanishing of `sw2`).
    pub lift_delta_solvable: bool,
    pub local_table: BTreeMap<Place, LocalPair>,
    pub assumptions: Vec<String>,
}

impl LiftReport {
    /// Re-checks the report's internal identities.
    pub fn check(&self) -> Result<()> {
        if self.w2_trace != &self.sw2 + &self.sp2 {
            return Err(Error::Invariant("w2(Tr) != sw2 + sp2".into()));
        }
        if self.lift_solvable != self.w2_trace.is_zero()
            || self.lift_delta_solvable != self.sw2.is_zero()
        {
            return Err(Error::Invariant("lifting flags disagree with classes".into()));
        }
        for (v, pair) in &self.local_table {
            if pair.w2_local != self.w2_trace.local_sign(v) {
                return Err(Error::Invariant(format!("local w2 mismatch at {v}")));
            }
        }
        Ok(())
    }
}

/// Decides both lifting problems for a quartic algebra.
pub fn lifting_decisions(f: &EtaleAlgebra) -> Result<LiftReport> {
    if f.degree() != 4 {
        return Err(Error::domain(format!(
            "lifting decisions need a quartic, got degree {}",
            f.degree()
        )));
    }
    let field_disc = f.disc_class();
    let w2 = w2_trace(f);
    let sp2 = sp2_permutation(f);
    let sw2 = &w2 + &sp2;
    let two = Integer::from(2);
    let mut places = vec![Place::Infinite, Place::Finite(two.clone())];
    places.extend(field_disc.primes().into_iter().map(Place::Finite));
    places.extend(w2.support().iter().cloned());
    let local_table = places
        .into_iter()
        .map(|v| {
            let pair = LocalPair {
                w2_local: w2.local_sign(&v),
                symbol_2_df: hilbert_squarefree(&two, field_disc.representative(), &v),
            };
            (v, pair)
        })
        .collect();
    let report = LiftReport {
        field_disc,
        signature: real_signature(f),
        lift_solvable: w2.is_zero(),
        lift_delta_solvable: sw2.is_zero(),
        sw2,
        sp2,
        w2_trace: w2,
        local_table,
        assumptions: vec![S4_ASSUMPTION.to_string()],
    };
    report.check()?;
    Ok(report)
}

/// Decomposition of an odd prime in a quartic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionType {
    Unramified,
    /// `p = P1^2 P1' P1''`
    SquareTimesTwoLinear,
    /// `p = P1^3 P1'`
    CubeTimesLinear,
    /// `p = P1^2 P2'`
    SquareTimesQuadratic,
    /// `p = P1^4`
    Fourth,
    /// `p = P2^2`
    QuadraticSquared,
    /// `p = P1^2 P1'^2`
    TwoSquares,
}

impl DecompositionType {
    pub const ALL: [DecompositionType; 7] = [
        DecompositionType::Unramified,
        DecompositionType::SquareTimesTwoLinear,
        DecompositionType::CubeTimesLinear,
        DecompositionType::SquareTimesQuadratic,
        DecompositionType::Fourth,
        DecompositionType::QuadraticSquared,
        DecompositionType::TwoSquares,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionType::Unramified => "unramified",
            DecompositionType::SquareTimesTwoLinear => "1^2,1,1",
            DecompositionType::CubeTimesLinear => "1^3,1",
            DecompositionType::SquareTimesQuadratic => "1^2,2",
            DecompositionType::Fourth => "1^4",
            DecompositionType::QuadraticSquared => "2^2",
            DecompositionType::TwoSquares => "1^2,1^2",
        }
    }

    /// Sum of residue degree times ramification index over the primes above
    /// `p`.
    pub fn total_degree(&self) -> usize {
        match self {
            DecompositionType::Unramified => 4,
            DecompositionType::SquareTimesTwoLinear => 2 + 1 + 1,
            DecompositionType::CubeTimesLinear => 3 + 1,
            DecompositionType::SquareTimesQuadratic => 2 + 2,
            DecompositionType::Fourth => 4,
            DecompositionType::QuadraticSquared => 2 * 2,
            DecompositionType::TwoSquares => 2 + 2,
        }
    }
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecompositionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Self::ALL
            .into_iter()
            .find(|d| d.as_str() == t)
            .ok_or_else(|| Error::parse(format!("unknown decomposition type {t:?}")))
    }
}

fn sign_pow(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

/// Local pair `(w2_p, (2, d_F)_p)` at an odd prime for a quartic field with
/// `S4` closure, from the decomposition type of `p`.
pub fn jehanne_local(p: &Integer, t: DecompositionType, d_f: &Integer) -> Result<(i8, i8)> {
    if p == &Integer::from(2) {
        return Err(Error::domain("the local table excludes p = 2"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if d_f.is_zero() {
        return Err(Error::domain("field discriminant must be nonzero"));
    }
    let p8 = p.mod_floor(&Integer::from(8));
    // (-1)^((p^2-1)/8) and (-1)^((p-1)/2)
    let second = sign_pow(p8 == Integer::from(3) || p8 == Integer::from(5));
    let first = sign_pow(p.mod_floor(&Integer::from(4)) == Integer::from(3));
    Ok(match t {
        DecompositionType::Unramified => (1, 1),
        DecompositionType::SquareTimesTwoLinear => (second, second),
        DecompositionType::CubeTimesLinear => (1, 1),
        DecompositionType::SquareTimesQuadratic => (-second, second),
        DecompositionType::Fourth => (first, second),
        DecompositionType::QuadraticSquared => (-first, 1),
        DecompositionType::TwoSquares => {
            let d = SquareClass::from_integer(d_f.clone())?;
            let sym = hilbert_squarefree(d.representative(), p, &Place::Finite(p.clone()));
            (first * sym, 1)
        }
    })
}

/// The same pair computed directly from the trace form of `f`.
pub fn direct_local_pair(f: &EtaleAlgebra, v: &Place) -> LocalPair {
    let w2 = w2_trace(f);
    let d = f.disc_class();
    LocalPair {
        w2_local: w2.local_sign(v),
        symbol_2_df: hilbert_squarefree(&Integer::from(2), d.representative(), v),
    }
}

/// A sum of quadratic (or trivial) characters of `G_Q`, each given by its
/// square class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSum {
    chars: Vec<SquareClass>,
}

impl CharacterSum {
    pub fn new(chars: Vec<SquareClass>) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::domain("character sum must be nonempty"));
        }
        Ok(CharacterSum { chars })
    }

    pub fn chars(&self) -> &[SquareClass] {
        &self.chars
    }

    /// `b_plus` copies of the trivial character and `b_minus` copies of the
    /// sign character `chi_{-1}`.
    pub fn real_type(b_plus: usize, b_minus: usize) -> Result<Self> {
        let mut chars = vec![SquareClass::one(); b_plus];
        chars.extend(std::iter::repeat_n(SquareClass::minus_one(), b_minus));
        Self::new(chars)
    }

    /// Permutation character of `prod (x^2 - a_i)`: `1 + chi_{a_i}` per
    /// factor.
    pub fn multiquadratic(a: &[Integer]) -> Result<Self> {
        let mut chars = Vec::with_capacity(2 * a.len());
        for ai in a {
            chars.push(SquareClass::one());
            chars.push(SquareClass::new(&Rational::from_integer(ai.clone()))?);
        }
        Self::new(chars)
    }

    /// `sw1`, the determinant character.
    pub fn determinant(&self) -> SquareClass {
        self.chars.iter().fold(SquareClass::one(), |acc, c| &acc * c)
    }
}

/// `sw2` of a sum of characters, by the addition formula
/// `sw2(x + y) = sw2(x) + sw2(y) + det(x) . det(y)` with `sw2(chi) = 0`.
pub fn sw2_character_sum(cs: &CharacterSum) -> CohClass2 {
    let mut total = CohClass2::zero();
    let mut det = SquareClass::one();
    for c in &cs.chars {
        total = total + cup(&det, c);
        det = &det * c;
    }
    total
}

/// `sw2` at the real place of a representation whose complex conjugation has
/// a `-1`-eigenspace of dimension `b_minus`: `b_minus (b_minus - 1) / 2 mod 2`.
pub fn real_place_sw2(b_minus: u64) -> bool {
    (b_minus * b_minus.saturating_sub(1) / 2) % 2 == 1
}

/// `sp2` at the real place, always trivial.
pub fn real_place_sp2() -> bool {
    false
}

/// The comparison classes between two forms of equal rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaPair {
    pub delta1: SquareClass,
    pub delta2: CohClass2,
}

/// `delta1 = w1(w) + w1(e)`,
/// `delta2 = w2(w) + w1(w) w1(w) + w1(w) w1(e) + w2(e)`.
pub fn delta_comparison(q_omega: &QuadraticForm, q_eta: &QuadraticForm) -> Result<DeltaPair> {
    if q_omega.rank() != q_eta.rank() {
        return Err(Error::domain(format!(
            "rank mismatch: {} vs {}",
            q_omega.rank(),
            q_eta.rank()
        )));
    }
    let a = q_omega.invariants();
    let b = q_eta.invariants();
    Ok(DeltaPair {
        delta1: &a.w1 * &b.w1,
        delta2: a.w2 + cup(&a.w1, &a.w1) + cup(&a.w1, &b.w1) + b.w2,
    })
}

impl fmt::Display for DeltaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta1 = {}, delta2 = {}", self.delta1, self.delta2)
    }
}
