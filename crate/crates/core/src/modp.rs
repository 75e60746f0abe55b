//! Factorization of rational polynomials modulo a prime.
//!
//! Squarefree decomposition, then distinct-degree factorization, then
//! Cantor-Zassenhaus equal-degree splitting with a fixed-seed generator, so
//! results are reproducible.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, Integer};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = inv(self.lc(), self.p);
        Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, l, self.p)).collect())
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n).map(|i| (get(&self.coeffs, i) + get(&o.coeffs, i)) % self.p).collect(),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n)
                .map(|i| (get(&self.coeffs, i) + self.p - get(&o.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.degree();
        let linv = inv(d.lc(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mulmod(rem[k + dd], linv, p);
            if c == 0 {
                continue;
            }
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mulmod(c, dc, p)) % p;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn div_exact(&self, d: &Self) -> Self {
        self.div_rem(d).0
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    fn powmod_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    // For f' = 0, f(x) = g(x^p) = g(x)^p over F_p.
    fn pth_root(&self) -> Self {
        let step = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(step).copied().collect())
    }
}

/// Squarefree decomposition: pairs `(g, m)` with `f = lc * prod g^m`.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let f = f.monic();
    if f.degree() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    if df.is_zero() {
        return squarefree_decomposition(&f.pth_root())
            .into_iter()
            .map(|(g, m)| (g, m * p as usize))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.degree() > 0 {
        out.extend(
            squarefree_decomposition(&c.pth_root())
                .into_iter()
                .map(|(g, m)| (g, m * p as usize)),
        );
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(h, d)` where `h` is the product of all irreducible factors of degree `d`.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut frob = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        frob = frob.powmod_big(&pe, &rest);
        let h = rest.gcd(&frob.sub(&x));
        if !h.is_one() {
            rest = rest.div_exact(&h);
            frob = frob.rem(&rest);
            out.push((h, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let dr = rest.degree();
        out.push((rest, dr));
    }
    out
}

/// Cantor-Zassenhaus: splits `h`, a product of distinct irreducibles of
/// degree `d`, into its factors.
fn equal_degree(h: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = h.p;
    if h.degree() == d {
        return vec![h.monic()];
    }
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..h.degree()).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(h);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(h);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.powmod_big(&exponent, h).sub(&FpPoly::one(p))
        };
        let g = h.gcd(&b);
        if g.degree() > 0 && g.degree() < h.degree() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.div_exact(&g), d, rng));
            return out;
        }
    }
}

/// Reduces a rational polynomial modulo `p`.
pub fn reduce(f: &Polynomial, p: &Integer) -> Result<FpPoly> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let pm = p
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("modulus {p} exceeds 64 bits")))?;
    let mut coeffs = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let den = c.denom().mod_floor(p);
        if den.is_zero() {
            return Err(Error::domain(format!("{p} divides a coefficient denominator")));
        }
        let num = c.numer().mod_floor(p).to_u64().expect("reduced below p");
        let den = den.to_u64().expect("reduced below p");
        coeffs.push(mulmod(num, inv(den, pm), pm));
    }
    let reduced = FpPoly::new(pm, coeffs);
    if reduced.degree() != f.degree().unwrap_or(0) || reduced.is_zero() {
        return Err(Error::domain(format!("leading coefficient vanishes modulo {p}")));
    }
    Ok(reduced)
}

/// Monic irreducible factors of `f mod p` with multiplicities, sorted by
/// degree then coefficients.
pub fn factor_mod_p(f: &Polynomial, p: &Integer) -> Result<Vec<(FpPoly, usize)>> {
    let fp = reduce(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&fp) {
        for (h, d) in distinct_degree(&g) {
            for irreducible in equal_degree(&h, d, &mut rng) {
                out.push((irreducible, m));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        (a.degree(), a.coeffs.iter().rev().collect::<Vec<_>>(), ma)
            .cmp(&(b.degree(), b.coeffs.iter().rev().collect::<Vec<_>>(), mb))
    });
    Ok(out)
}

/// Degrees and multiplicities of the irreducible factors of `f mod p`,
/// sorted ascending.
pub fn factor_pattern(f: &Polynomial, p: &Integer) -> Result<Vec<(usize, usize)>> {
    let mut pattern: Vec<(usize, usize)> = factor_mod_p(f, p)?
        .into_iter()
        .map(|(g, m)| (g.degree(), m))
        .collect();
    pattern.sort_unstable();
    Ok(pattern)
}
