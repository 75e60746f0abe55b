//! Dense univariate polynomials over `Q`: Euclidean arithmetic, resultants by
//! the subresultant pseudo-remainder sequence, discriminants and Sturm
//! sequences.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{self, format_rational, Integer, Rational};
use crate::error::{Error, Result};

/// A polynomial with rational coefficients in ascending order. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    /// Parses ascending comma-separated coefficients, e.g. `"-1,1,0,0,1"`
    /// for `x^4 + x - 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(arith::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        let p = Self::new(coeffs);
        if p.is_zero() {
            return Err(Error::domain("zero polynomial"));
        }
        Ok(p)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(Integer::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.deg();
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Pseudo-remainder: the remainder of `lc(b)^(deg a - deg b + 1) a` by `b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let delta = self.deg() + 1 - b.deg();
        let factor = num_traits::pow(b.leading(), delta);
        self.scale(&factor).rem(b)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Whether the polynomial has no repeated complex root.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// The resultant `Res(f, g)`, computed with the subresultant PRS.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = Rational::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
    }
    if b.deg() == 0 {
        return sign * num_traits::pow(b.leading(), a.deg());
    }
    let mut g_acc = Rational::one();
    let mut h = Rational::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Rational::zero();
        }
        let divisor = &g_acc * num_traits::pow(h.clone(), delta);
        b = r.scale(&divisor.recip());
        g_acc = a.leading();
        // h <- h^(1 - delta) g^delta
        h = &h * num_traits::pow(g_acc.clone(), delta) / num_traits::pow(h.clone(), delta);
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let h = &h * num_traits::pow(b.leading(), da) / num_traits::pow(h.clone(), da);
    sign * h
}

/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`; for monic `f` of degree `d` this is
/// `prod_{i<j} (x_i - x_j)^2` over the complex roots.
pub fn discriminant(f: &Polynomial) -> Result<Rational> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::domain("discriminant needs degree >= 1"))?;
    let res = resultant(f, &f.derivative()) / f.leading();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -res } else { res })
}

/// Sturm sequence `f, f', -rem(f, f'), ...`.
pub fn sturm_sequence(f: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![f.clone()];
    let mut next = f.derivative();
    while !next.is_zero() {
        let r = -seq.last().expect("nonempty").rem(&next);
        seq.push(next);
        next = r;
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots.
pub fn count_real_roots(f: &Polynomial) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    let at_pos = seq.iter().map(|p| sign(&p.leading()));
    let at_neg = seq.iter().map(|p| {
        let s = sign(&p.leading());
        if p.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    sign_changes(at_neg) - sign_changes(at_pos)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Ascending comma-separated coefficients, the same format `parse` reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Determinant of the Sylvester matrix by rational Gaussian elimination.
    pub(crate) fn sylvester_resultant(f: &Polynomial, g: &Polynomial) -> Rational {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return r(1);
        }
        let mut mat = vec![vec![r(0); size]; size];
        for row in 0..n {
            for (i, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        let mut det = r(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&k| !mat[k][col].is_zero()) else {
                return r(0);
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for k in col + 1..size {
                let factor = &mat[k][col] / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..size {
                    let v = &mat[col][j] * &factor;
                    mat[k][j] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn resultant_examples() {
        // Res(x - 1, x - 2) = (1 - 2) by the root product formula
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])), r(-1));
        assert_eq!(sylvester_resultant(&p(&[-1, 1]), &p(&[-2, 1])), r(-1));
        assert_eq!(resultant(&p(&[-1, 1, 0, 0, 1]), &p(&[1])), r(1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 2])), r(4));
        assert_eq!(sylvester_resultant(&p(&[1, 0, 1]), &p(&[0, 2])), r(4));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[1, 0, 1])), r(0));
        assert_eq!(resultant(&Polynomial::zero(), &p(&[1, 1])), r(0));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, 1, 0, 0, 1])).unwrap(), r(-283));
        assert_eq!(discriminant(&p(&[-1, -2, 0, 1, 1])).unwrap(), r(-275));
        assert_eq!(discriminant(&p(&[-1, -4, -2, 0, 1])).unwrap(), r(-2816));
        for a in [-5i64, -1, 2, 3, 7] {
            assert_eq!(discriminant(&p(&[-a, 0, 1])).unwrap(), r(4 * a));
        }
        assert_eq!(discriminant(&p(&[3, 1])).unwrap(), r(1));
        assert!(discriminant(&p(&[3])).is_err());
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(count_real_roots(&p(&[-1, 1, 0, 0, 1])), 2);
        assert_eq!(count_real_roots(&p(&[-1, -4, -2, 0, 1])), 2);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&p(&[2, 3, -3, -2, 1])), 4);
        // (x-1)^2 (x+2): distinct roots only
        assert_eq!(count_real_roots(&(&p(&[-1, 1]).pow(2) * &p(&[2, 1]))), 2);
    }

    #[test]
    fn euclid() {
        let f = p(&[-1, 0, 0, 1]);
        let g = p(&[-1, 1]);
        let (q, rem) = f.div_rem(&g);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&p(&[-1, 0, 1])), g);
        assert!(!p(&[1, -2, 1]).is_squarefree());
        assert!(p(&[-1, 1, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn parse_and_display() {
        let f = Polynomial::parse("-1,1,0,0,1").unwrap();
        assert_eq!(f, p(&[-1, 1, 0, 0, 1]));
        assert_eq!(f.to_string(), "-1,1,0,0,1");
        assert!(Polynomial::parse("0,0").is_err());
        assert!(Polynomial::parse("1,a").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
            prop::collection::vec(-20i64..20, 1..=max_deg + 1).prop_map(|c| Polynomial::from_ints(&c))
        }

        proptest! {
            #[test]
            fn resultant_matches_sylvester(f in poly(6), g in poly(6)) {
                prop_assume!(!f.is_zero() && !g.is_zero());
                prop_assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
            }

            #[test]
            fn resultant_multiplicative(f in poly(4), g in poly(3), h in poly(3)) {
                prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
                prop_assert_eq!(resultant(&f, &(&g * &h)), resultant(&f, &g) * resultant(&f, &h));
            }
        }
    }
}
