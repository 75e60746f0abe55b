//! Étale algebras `Q[x]/(f)` for monic squarefree `f`, and their trace forms.
//!
//! Reducible `f` is allowed and presents a product of number fields.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Integer, Rational};
use crate::cohomology::SquareClass;
use crate::error::{Error, Result};
use crate::forms::{FormInvariants, QuadraticForm, Signature};
use crate::modp;
use crate::poly::{count_real_roots, discriminant, Polynomial};

/// `Q[x]/(f)` with `f` monic and squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    poly: Polynomial,
}

impl EtaleAlgebra {
    pub fn new(poly: Polynomial) -> Result<Self> {
        match poly.degree() {
            None | Some(0) => return Err(Error::domain("étale algebra needs degree >= 1")),
            _ => {}
        }
        if !poly.is_monic() {
            return Err(Error::domain("defining polynomial must be monic"));
        }
        if !poly.is_squarefree() {
            return Err(Error::domain(
                "defining polynomial is not squarefree (degenerate trace form)",
            ));
        }
        Ok(EtaleAlgebra { poly })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(Polynomial::parse(s)?)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("degree >= 1")
    }

    /// Discriminant of the defining polynomial. Differs from the algebra's
    /// discriminant by a square, so the square class agrees.
    pub fn discriminant(&self) -> Rational {
        discriminant(&self.poly).expect("degree >= 1")
    }

    pub fn disc_class(&self) -> SquareClass {
        SquareClass::new(&self.discriminant()).expect("squarefree polynomial")
    }
}

/// Power sums `p_0, ..., p_{count-1}` of the roots of a monic polynomial, by
/// Newton's identities.
pub fn power_sums(f: &Polynomial, count: usize) -> Vec<Rational> {
    let d = f.degree().expect("nonzero polynomial");
    let a = |i: usize| f.coeff(i);
    let mut p: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(Rational::from_integer(Integer::from(d)));
            continue;
        }
        let mut acc = Rational::zero();
        for i in 1..=(k - 1).min(d) {
            acc += a(d - i) * &p[k - i];
        }
        if k <= d {
            acc += a(d - k) * Rational::from_integer(Integer::from(k));
        }
        p.push(-acc);
    }
    p
}

/// Gram matrix of `(x, y) -> Tr(xy)` in the basis `1, x, ..., x^(d-1)`:
/// entry `(i, j)` is the power sum `p_{i+j}`.
pub fn trace_gram(f: &EtaleAlgebra) -> QuadraticForm {
    let d = f.degree();
    let p = power_sums(&f.poly, 2 * d - 1);
    let gram = (0..d).map(|i| (0..d).map(|j| p[i + j].clone()).collect()).collect();
    QuadraticForm::new(gram).expect("trace form of an étale algebra is nondegenerate")
}

/// Numbers of real and complex-conjugate pairs of roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealSignature {
    pub real: usize,
    pub complex: usize,
}

impl RealSignature {
    /// Signature of the trace form: `(r1 + r2, r2)`.
    pub fn trace_signature(&self) -> Signature {
        Signature { positive: self.real + self.complex, negative: self.complex }
    }
}

/// Real signature `(r1, r2)` from a Sturm root count.
pub fn real_signature(f: &EtaleAlgebra) -> RealSignature {
    let real = count_real_roots(&f.poly);
    RealSignature { real, complex: (f.degree() - real) / 2 }
}

/// Degrees and multiplicities of the factors of `f mod p`. When `p` does not
/// divide the discriminant this is the splitting type of `p`.
pub fn factor_pattern_mod_p(f: &EtaleAlgebra, p: &Integer) -> Result<Vec<(usize, usize)>> {
    modp::factor_pattern(&f.poly, p)
}

/// Trace form of an étale algebra together with its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceFormReport {
    #[serde(skip)]
    pub gram: QuadraticForm,
    pub discriminant: String,
    pub disc_field: SquareClass,
    pub real_signature: RealSignature,
    pub signature: Signature,
    pub form_invariants: FormInvariants,
}

pub fn trace_form_report(f: &EtaleAlgebra) -> Result<TraceFormReport> {
    let gram = trace_gram(f);
    let form_invariants = gram.invariants();
    let disc_field = f.disc_class();
    let real_signature = real_signature(f);
    let signature = real_signature.trace_signature();
    if form_invariants.w1 != disc_field {
        return Err(Error::Invariant(format!(
            "trace form discriminant {} differs from polynomial discriminant {}",
            form_invariants.w1, disc_field
        )));
    }
    if form_invariants.signature != signature {
        return Err(Error::Invariant(format!(
            "trace form signature {} differs from Sturm signature {}",
            form_invariants.signature, signature
        )));
    }
    Ok(TraceFormReport {
        gram,
        discriminant: crate::arith::format_rational(&f.discriminant()),
        disc_field,
        real_signature,
        signature,
        form_invariants,
    })
}

impl std::str::FromStr for EtaleAlgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// `prod (x^2 - a_i)` for the given `a_i`.
pub fn multiquadratic(a: &[Integer]) -> Polynomial {
    a.iter().fold(Polynomial::one(), |acc, ai| {
        let q = Polynomial::new(vec![
            Rational::from_integer(-ai.clone()),
            Rational::zero(),
            Rational::one(),
        ]);
        &acc * &q
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{isometric, orthogonal_sum};

    fn alg(c: &[i64]) -> EtaleAlgebra {
        EtaleAlgebra::new(Polynomial::from_ints(c)).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// tr(C^k) for the companion matrix C of a monic polynomial.
    fn companion_power_traces(f: &Polynomial, count: usize) -> Vec<Rational> {
        let d = f.degree().unwrap();
        let mut c = vec![vec![r(0); d]; d];
        for i in 1..d {
            c[i][i - 1] = r(1);
        }
        for i in 0..d {
            c[i][d - 1] = -f.coeff(i);
        }
        let mut power: Vec<Vec<Rational>> =
            (0..d).map(|i| (0..d).map(|j| if i == j { r(1) } else { r(0) }).collect()).collect();
        let mut out = Vec::new();
        for _ in 0..count {
            out.push((0..d).fold(r(0), |acc, i| acc + &power[i][i]));
            power = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).fold(r(0), |acc, k| acc + &power[i][k] * &c[k][j]))
                        .collect()
                })
                .collect();
        }
        out
    }

    #[test]
    fn trace_gram_examples() {
        for a in [-7i64, -1, 2, 3, 5] {
            let g = trace_gram(&alg(&[-a, 0, 1]));
            assert_eq!(g, QuadraticForm::diagonal_ints(&[2, 2 * a]).unwrap());
        }
        let g = trace_gram(&alg(&[-1, 1, 0, 0, 1]));
        assert_eq!(g.gram()[0][0], r(4));
    }

    #[test]
    fn non_squarefree_rejected() {
        assert!(EtaleAlgebra::new(Polynomial::from_ints(&[1, -2, 1])).is_err());
        assert!(EtaleAlgebra::new(Polynomial::from_ints(&[1, -1, 0, -1, 1])).is_err());
        assert!(EtaleAlgebra::new(Polynomial::from_ints(&[1, 2])).is_err());
        assert!(EtaleAlgebra::new(Polynomial::from_ints(&[5])).is_err());
    }

    #[test]
    fn signatures() {
        let s = real_signature(&alg(&[-1, 1, 0, 0, 1]));
        assert_eq!((s.real, s.complex), (2, 1));
        let s = real_signature(&alg(&[-1, -4, -2, 0, 1]));
        assert_eq!((s.real, s.complex), (2, 1));
        let s = real_signature(&alg(&[1, 0, 1]));
        assert_eq!((s.real, s.complex), (0, 1));
        assert_eq!(s.trace_signature(), Signature { positive: 1, negative: 1 });
    }

    #[test]
    fn report_for_first_quartic() {
        let rep = trace_form_report(&alg(&[-1, 1, 0, 0, 1])).unwrap();
        assert_eq!(rep.disc_field, SquareClass::from_integer(-283).unwrap());
        assert_eq!(rep.discriminant, "-283");
        assert_eq!(rep.signature, Signature { positive: 3, negative: 1 });
    }

    #[test]
    fn newton_matches_companion_fixed() {
        let f = Polynomial::from_ints(&[-1, 1, 0, 0, 1]);
        assert_eq!(power_sums(&f, 9), companion_power_traces(&f, 9));
    }

    #[test]
    fn trace_form_of_product_is_orthogonal_sum() {
        let f = alg(&[-2, 0, 1]);
        let g = alg(&[1, 1, 1]);
        let fg = EtaleAlgebra::new(f.poly() * g.poly()).unwrap();
        assert!(isometric(&trace_gram(&fg), &orthogonal_sum(&trace_gram(&f), &trace_gram(&g))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monic(max_deg: usize) -> impl Strategy<Value = Polynomial> {
            prop::collection::vec(-10i64..10, 1..=max_deg).prop_map(|mut c| {
                c.push(1);
                Polynomial::from_ints(&c)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn disc_class_is_trace_w1(f in monic(6)) {
                prop_assume!(f.is_squarefree());
                let a = EtaleAlgebra::new(f).unwrap();
                let rep = trace_form_report(&a);
                prop_assert!(rep.is_ok(), "{:?}", rep.err());
            }

            #[test]
            fn product_trace_forms(f in monic(3), g in monic(3)) {
                let prod = &f * &g;
                prop_assume!(prod.is_squarefree());
                let (a, b, ab) = (
                    EtaleAlgebra::new(f).unwrap(),
                    EtaleAlgebra::new(g).unwrap(),
                    EtaleAlgebra::new(prod).unwrap(),
                );
                prop_assert!(isometric(&trace_gram(&ab), &orthogonal_sum(&trace_gram(&a), &trace_gram(&b))));
            }
        }
    }
}
