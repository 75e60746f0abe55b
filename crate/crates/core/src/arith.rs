//! Exact integer and rational arithmetic: factorization, square classes of
//! rationals and quadratic residue symbols.
//!
//! Integers and rationals are `num-bigint`/`num-rational` values. Rationals
//! are always reduced with a positive denominator, so structural equality is
//! numeric equality.
//!
//! Factorization runs trial division over the primes below 10^6, then
//! Pollard rho with Brent's cycle detection on whatever cofactor remains.
//! Primality of cofactors uses Miller-Rabin with the first twelve primes as
//! witnesses, which is deterministic below 2^64.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Environment variable bounding the number of primes tried by trial
/// division before falling back to Pollard rho.
pub const TRIAL_PRIMES_ENV: &str = "HASSE_WITT_TRIAL_PRIMES";

/// Number of primes below 10^6; the default trial-division effort.
pub const DEFAULT_TRIAL_PRIMES: usize = 78_498;

const SIEVE_LIMIT: usize = 1_000_000;
const MR_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut primes = Vec::with_capacity(DEFAULT_TRIAL_PRIMES);
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Trial-division effort, read once from [`TRIAL_PRIMES_ENV`].
///
/// Only affects running time: whatever trial division leaves over is
/// finished by Pollard rho.
pub fn trial_prime_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(TRIAL_PRIMES_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|n| n.min(DEFAULT_TRIAL_PRIMES))
            .unwrap_or(DEFAULT_TRIAL_PRIMES)
    })
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: BTreeMap<Integer, u32>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn value(&self) -> Integer {
        let mut acc = Integer::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &Integer> {
        self.factors.keys()
    }
}

/// Factors a nonzero integer into primes.
pub fn factor(n: &Integer) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut factors = BTreeMap::new();

    for &p in small_primes().iter().take(trial_prime_budget()) {
        let p = Integer::from(p);
        if &p * &p > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.insert(p, e);
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                *factors.entry(m).or_insert(0) += 1;
                continue;
            }
            let d = find_factor(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    Ok(Factorization { sign, factors })
}

/// Primality test for arbitrary integers; negative numbers, 0 and 1 are not
/// prime.
pub fn is_prime(n: &Integer) -> bool {
    if n <= &Integer::one() {
        return false;
    }
    is_probable_prime(n)
}

fn is_probable_prime(n: &Integer) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &w in &MR_WITNESSES {
            if small == w as u64 {
                return true;
            }
            if small % w as u64 == 0 {
                return false;
            }
        }
    } else {
        for &w in &MR_WITNESSES {
            if (n % w).is_zero() {
                return false;
            }
        }
    }
    let one = Integer::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = Integer::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n`.
fn find_factor(n: &Integer) -> Integer {
    if n.is_even() {
        return Integer::from(2);
    }
    if let Some(r) = exact_sqrt(n) {
        return r;
    }
    let mut c = Integer::one();
    loop {
        if let Some(d) = brent(n, &c) {
            return d;
        }
        c += 1;
    }
}

fn exact_sqrt(n: &Integer) -> Option<Integer> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

// Pollard rho on x -> x^2 + c with Brent's cycle detection. Gcds are
// batched over blocks of `BLOCK` steps and replayed one step at a time when
// a block collapses to `n`.
fn brent(n: &Integer, c: &Integer) -> Option<Integer> {
    const BLOCK: u64 = 128;
    let f = |x: &Integer| (x * x + c) % n;
    let mut y = Integer::from(2);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = Integer::one();
    let mut g = Integer::one();
    let mut r: u64 = 1;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BLOCK.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += BLOCK;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Splits off the `p`-adic valuation: returns `(v, u)` with `n = p^v * u`.
pub fn valuation(n: &Integer, p: &Integer) -> (u32, Integer) {
    debug_assert!(!n.is_zero());
    let mut u = n.clone();
    let mut v = 0;
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// The squarefree integer in the square class of `q`, with the sign of `q`.
pub fn squarefree_part(q: &Rational) -> Result<Integer> {
    if q.is_zero() {
        return Err(Error::domain("zero has no square class"));
    }
    // n/d and n*d differ by the square d^2.
    let n = q.numer() * q.denom();
    let f = factor(&n)?;
    let mut s = Integer::from(f.sign);
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub(crate) fn jacobi(a: &Integer, n: &Integer) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n8 = (&n % 8u32).to_u32().unwrap_or(0);
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == Integer::from(3) && (&n % 4u32) == Integer::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &Integer, p: &Integer) -> Result<i8> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    Ok(jacobi(a, p))
}

/// Parses an integer or a fraction `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().map_err(|_| bad())?;
            let d: Integer = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: Integer = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("not an integer: {s:?}")))
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
