//! Invariants of the middle cohomology of smooth even-dimensional complete
//! intersections `V` in `P^(n+c)`: Euler characteristic, middle Betti number,
//! the index mod 8, `w1`/`w2` of the Betti form, and the comparison classes
//! `delta1`/`delta2` with the divided discriminant kept as a symbol.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{Integer, Rational};
use crate::cohomology::{CohClass2, SquareClass};
use crate::error::{Error, Result};
use crate::forms::{QuadraticForm, Signature};
use crate::poly::{discriminant, Polynomial};

/// Even dimension `n >= 2` and the degrees of the defining equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteIntersectionSpec {
    n: u32,
    degrees: Vec<u64>,
}

impl CompleteIntersectionSpec {
    pub fn new(n: u32, degrees: Vec<u64>) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::domain(format!("dimension must be even and >= 2, got {n}")));
        }
        if degrees.is_empty() {
            return Err(Error::domain("need at least one degree"));
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::domain("degrees must be >= 1"));
        }
        Ok(CompleteIntersectionSpec { n, degrees })
    }

    pub fn hypersurface(n: u32, d: u64) -> Result<Self> {
        Self::new(n, vec![d])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    /// `d = d_1 ... d_c`.
    pub fn total_degree(&self) -> Integer {
        self.degrees.iter().map(|&d| Integer::from(d)).product()
    }

    /// Number of even degrees.
    pub fn even_degrees(&self) -> u64 {
        self.degrees.iter().filter(|d| *d % 2 == 0).count() as u64
    }

    fn binomial_is_even(&self) -> bool {
        let t = self.even_degrees();
        let top = self.n as u64 / 2 + t;
        // Lucas: C(top, t) is odd iff the bits of t sit inside those of top.
        t & !top != 0
    }
}

/// `chi(V)`: the coefficient of `h^(n+c)` in
/// `(1+h)^(n+c+1) d_1...d_c h^c / prod (1 + d_i h)`.
pub fn euler_characteristic(spec: &CompleteIntersectionSpec) -> Integer {
    let n = spec.n as usize;
    let c = spec.codimension();
    // coefficients of (1+h)^(n+c+1) up to h^n
    let mut series: Vec<Integer> = Vec::with_capacity(n + 1);
    let mut binom = Integer::one();
    let top = Integer::from(n + c + 1);
    for k in 0..=n {
        series.push(binom.clone());
        binom = binom * (&top - k) / (k + 1);
    }
    for &d in &spec.degrees {
        // multiply by 1/(1 + d h) = sum (-d)^k h^k
        let neg = Integer::from(d);
        for k in 1..=n {
            let prev = series[k - 1].clone();
            series[k] -= &neg * prev;
        }
    }
    spec.total_degree() * &series[n]
}

/// `n + 2 + ((1 - d)^(n+2) - 1) / d`, the hypersurface case.
pub fn hypersurface_euler_closed_form(n: u32, d: u64) -> Integer {
    let d = Integer::from(d);
    let pow = num_traits::pow(Integer::one() - &d, n as usize + 2);
    Integer::from(n + 2) + (pow - 1) / d
}

/// `b_n = chi - n`.
pub fn betti_middle(spec: &CompleteIntersectionSpec) -> Integer {
    euler_characteristic(spec) - spec.n
}

/// Index of the middle cup-product lattice mod 8: 0 if `C(n/2 + t, t)` is
/// even, `d mod 8` otherwise.
pub fn tau_mod8(spec: &CompleteIntersectionSpec) -> u8 {
    if spec.binomial_is_even() {
        0
    } else {
        spec.total_degree().mod_floor(&Integer::from(8)).to_u8().expect("residue")
    }
}

/// `m`, `m'`, `w1(q_B)` and `w2(q_B)` of the Betti form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiInvariants {
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub m: Integer,
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub m_prime: Integer,
    pub w1: SquareClass,
    pub w2: CohClass2,
}

/// `m = chi - n` when `C(n/2 + t, t)` is even and `chi - n - d` otherwise;
/// `w1 = m'(-1)`, `w2 = C(m', 2)(-1, -1)` with `m = 2m'`.
pub fn betti_w_invariants(spec: &CompleteIntersectionSpec) -> Result<BettiInvariants> {
    let mut m = betti_middle(spec);
    if !spec.binomial_is_even() {
        m -= spec.total_degree();
    }
    if m.is_odd() {
        return Err(Error::Invariant(format!("m = {m} is odd for {spec:?}")));
    }
    let m_prime = &m / Integer::from(2);
    let r4 = m_prime.mod_floor(&Integer::from(4)).to_u64().expect("residue");
    let w1 = SquareClass::minus_one().times(r4);
    let w2 = CohClass2::quaternions().times(r4 * r4.saturating_sub(1) / 2);
    Ok(BettiInvariants { m, m_prime, w1, w2 })
}

/// Closed forms for a hypersurface: `w1 = (n/2)(d-1)(-1)`;
/// `w2 = ((d-1)/2)(-1,-1)` for odd `d` and `{(n+2)/4}(1 + d/2)(-1,-1)` for even `d`.
pub fn hypersurface_w(n: u32, d: u64) -> Result<(SquareClass, CohClass2)> {
    CompleteIntersectionSpec::hypersurface(n, d)?;
    let n = n as u64;
    let w1 = SquareClass::minus_one().times((n / 2) * (d - 1));
    let k = if d % 2 == 1 { (d - 1) / 2 } else { ((n + 2) / 4) * (1 + d / 2) };
    Ok((w1, CohClass2::quaternions().times(k)))
}

/// A symbol left unevaluated in the comparison classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Token {
    #[serde(rename = "disc_d(f)")]
    DiscD,
    #[serde(rename = "(-1,disc_d(f))")]
    MinusOneCupDiscD,
    #[serde(rename = "w2(q_dR)")]
    W2DeRham,
}

impl Token {
    pub fn as_str(&self) -> &'static str {
        match self {
            Token::DiscD => "disc_d(f)",
            Token::MinusOneCupDiscD => "(-1,disc_d(f))",
            Token::W2DeRham => "w2(q_dR)",
        }
    }
}

/// The evaluated part of a symbolic class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Numeric {
    Degree1(SquareClass),
    Degree2(CohClass2),
}

/// `numeric` plus (in degree 1: times) the listed tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicClass {
    pub numeric: Numeric,
    pub tokens: Vec<Token>,
}

impl fmt::Display for SymbolicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.tokens.iter().map(|t| t.as_str().to_string()).collect();
        match &self.numeric {
            Numeric::Degree1(c) => {
                if !c.is_trivial() || parts.is_empty() {
                    parts.insert(0, c.to_string());
                }
                f.write_str(&parts.join(" * "))
            }
            Numeric::Degree2(c) => {
                if !c.is_zero() || parts.is_empty() {
                    parts.push(c.to_string());
                }
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// `delta1` and `delta2` for a smooth hypersurface of even dimension `n` and
/// degree `d`, in terms of `disc_d(f)` and `w2(q_dR)`.
pub fn delta_expressions(n: u32, d: u64) -> Result<(SymbolicClass, SymbolicClass)> {
    CompleteIntersectionSpec::hypersurface(n, d)?;
    let n = n as u64;
    let sign_exp = if d % 2 == 1 { (d - 1) / 2 } else { (d / 2) * ((n + 2) / 2) };
    let delta1 = SymbolicClass {
        numeric: Numeric::Degree1(SquareClass::minus_one().times(sign_exp)),
        tokens: vec![Token::DiscD],
    };
    let mut tokens = vec![Token::W2DeRham];
    let k = if d % 2 == 1 {
        (d - 1) / 2
    } else if n % 4 == 0 {
        (n / 4) * (1 + d / 2)
    } else {
        tokens.push(Token::MinusOneCupDiscD);
        ((n + 2) / 4) * (1 + d / 2)
    };
    let delta2 = SymbolicClass {
        numeric: Numeric::Degree2(CohClass2::quaternions().times(k)),
        tokens,
    };
    Ok((delta1, delta2))
}

/// `epsilon'(n, d)`: `(-1)^((d-1)/2)` for odd `d`, `(-1)^((1 + n/2)(1 + d/2) + 1)`
/// for even `d`.
pub fn epsilon_prime(n: u32, d: u64) -> i8 {
    let n = n as u64;
    let e = if d % 2 == 1 { (d - 1) / 2 } else { (1 + n / 2) * (1 + d / 2) + 1 };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Discriminant data of a binary form `f(X0, X1)` of degree `d`, given by
/// `g(X) = f(X, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDisc {
    /// `prod_{i<j} (x_i - x_j)^2` over the roots of `g`.
    pub root_product: Rational,
    /// `root_product * epsilon'(0, d)`.
    pub disc_d: Rational,
}

/// Divided discriminant in the zero-dimensional case.
pub fn binary_divided_disc(g: &Polynomial) -> Result<BinaryDisc> {
    let d = match g.degree() {
        None | Some(0) => return Err(Error::domain("binary form needs degree >= 1")),
        Some(d) => d,
    };
    if !g.is_squarefree() {
        return Err(Error::domain("binary form is not squarefree"));
    }
    let lc = g.leading().clone();
    let scale = num_traits::pow(lc, 2 * d - 2);
    let root_product = discriminant(g)? / scale;
    let disc_d = &root_product * Rational::from_integer(epsilon_prime(0, d as u64).into());
    Ok(BinaryDisc { root_product, disc_d })
}

/// Index of a cubic surface, pinned by `b_2 = 7`, `tau = 3 mod 8` and
/// `tau = d + 8 mod 16`.
pub fn cubic_surface_refinement(spec: &CompleteIntersectionSpec) -> Result<Integer> {
    if spec.n != 2 || spec.degrees != [3] {
        return Err(Error::Unsupported(
            "the mod 16 index refinement is only available for the cubic surface".into(),
        ));
    }
    let b = betti_middle(spec).to_i64().expect("small");
    let d = 3i64;
    let tau8 = tau_mod8(spec) as i64;
    let candidates: Vec<i64> = (-b..=b)
        .filter(|t| (t - b) % 2 == 0 && (t - tau8).rem_euclid(8) == 0 && (t - d - 8).rem_euclid(16) == 0)
        .collect();
    match candidates.as_slice() {
        [t] => Ok(Integer::from(*t)),
        _ => Err(Error::Invariant(format!("index not pinned: {candidates:?}"))),
    }
}

/// Exact signature of `q_B` for the quadric and cubic-surface cases.
pub fn exact_signature(spec: &CompleteIntersectionSpec) -> Option<Signature> {
    match (spec.n, spec.degrees.as_slice()) {
        (n, [2]) if n % 4 == 0 => Some(Signature { positive: 2, negative: 0 }),
        (_, [2]) => Some(Signature { positive: 1, negative: 1 }),
        (2, [3]) => {
            let tau = cubic_surface_refinement(spec).ok()?.to_i64()?;
            let b = 7i64;
            Some(Signature { positive: ((b + tau) / 2) as usize, negative: ((b - tau) / 2) as usize })
        }
        _ => None,
    }
}

/// `<1^r, (-1)^s>`.
pub fn form_with_signature(sig: Signature) -> QuadraticForm {
    let mut d = vec![1i64; sig.positive];
    d.extend(std::iter::repeat_n(-1, sig.negative));
    QuadraticForm::diagonal_ints(&d).expect("nonempty")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotiveReport {
    pub n: u32,
    pub degrees: Vec<u64>,
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub chi: Integer,
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub b_n: Integer,
    pub tau_mod8: u8,
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub m: Integer,
    #[serde(serialize_with = "crate::cohomology::serialize_integer")]
    pub m_prime: Integer,
    #[serde(rename = "w1_qB")]
    pub w1_qb: SquareClass,
    #[serde(rename = "w2_qB")]
    pub w2_qb: CohClass2,
    /// Hypersurfaces only.
    pub delta1: Option<SymbolicClass>,
    pub delta2: Option<SymbolicClass>,
    /// Quadrics and the cubic surface only.
    pub signature: Option<Signature>,
}

pub fn motive_report(spec: &CompleteIntersectionSpec) -> Result<MotiveReport> {
    let chi = euler_characteristic(spec);
    let b_n = &chi - spec.n;
    let inv = betti_w_invariants(spec)?;
    let (delta1, delta2) = match spec.degrees.as_slice() {
        [d] => {
            let (a, b) = delta_expressions(spec.n, *d)?;
            (Some(a), Some(b))
        }
        _ => (None, None),
    };
    let signature = exact_signature(spec);
    if let Some(sig) = signature {
        let fi = form_with_signature(sig).invariants();
        if Integer::from(fi.rank) != b_n || fi.w1 != inv.w1 || fi.w2 != inv.w2 {
            return Err(Error::Invariant(format!(
                "explicit form {sig} disagrees with the Betti invariants"
            )));
        }
    }
    if let [d] = spec.degrees.as_slice() {
        if hypersurface_w(spec.n, *d)? != (inv.w1.clone(), inv.w2.clone()) {
            return Err(Error::Invariant("hypersurface closed form disagrees".into()));
        }
    }
    Ok(MotiveReport {
        n: spec.n,
        degrees: spec.degrees.clone(),
        chi,
        b_n,
        tau_mod8: tau_mod8(spec),
        m: inv.m,
        m_prime: inv.m_prime,
        w1_qb: inv.w1,
        w2_qb: inv.w2,
        delta1,
        delta2,
        signature,
    })
}
