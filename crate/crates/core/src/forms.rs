//! Nondegenerate quadratic forms over `Q`.
//!
//! A form is given by a symmetric Gram matrix. Invariants are computed from
//! any diagonalization `<a_1, ..., a_n>`:
//!
//! * `w1 = (a_1 ... a_n)`, the discriminant class,
//! * `w2 = sum_{i<j} (a_i) . (a_j)`,
//! * the signature, by counting signs of the `a_i`,
//! * the local Hasse invariants `prod_{i<j} (a_i, a_j)_v`.
//!
//! By Hasse-Minkowski these decide isometry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, format_rational, Rational};
use crate::cohomology::{candidate_places, cup, hilbert_squarefree, CohClass2, Place, SquareClass};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

/// A nondegenerate quadratic form, stored by its symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
}

/// Entries of a diagonal form congruent to a given one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    pub entries: Vec<Rational>,
}

impl DiagonalForm {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }
}

/// Signature `(r, s)`: numbers of positive and negative squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    /// The index `r - s`.
    pub fn index(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// The complete invariant tuple of a rational quadratic form.
///
/// `hasse_local` is recorded on `{inf, 2}`, the primes dividing the
/// discriminant and the support of `w2`; it is `+1` at every other place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: Signature,
    pub disc: SquareClass,
    pub w1: SquareClass,
    pub w2: CohClass2,
    pub hasse_local: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn hasse_at(&self, v: &Place) -> i8 {
        self.hasse_local.get(v).copied().unwrap_or(1)
    }
}

impl QuadraticForm {
    /// Validates that `gram` is square, symmetric and nondegenerate.
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::domain("empty Gram matrix"));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::domain("Gram matrix is not square"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::domain(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let form = QuadraticForm { gram };
        form.diagonalize_with_basis()?;
        Ok(form)
    }

    /// The diagonal form `<a_1, ..., a_n>`.
    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::domain("diagonal form with zero entry is degenerate"));
        }
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(gram)
    }

    pub fn diagonal_ints(entries: &[i64]) -> Result<Self> {
        let entries: Vec<Rational> = entries.iter().map(|&a| Rational::from_integer(a.into())).collect();
        Self::diagonal(&entries)
    }

    /// The standard form `t_n = x_1^2 + ... + x_n^2`.
    pub fn standard(n: usize) -> Self {
        Self::diagonal_ints(&vec![1; n]).expect("standard form is nondegenerate")
    }

    /// Parses a row-major matrix such as `"2,0;0,-6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| row.split(',').map(arith::parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Symmetric Gaussian elimination. Returns the diagonal entries and an
    /// invertible `P` with `P^T G P = diag(entries)`.
    pub fn diagonalize_with_basis(&self) -> Result<(Vec<Rational>, Matrix)> {
        let n = self.rank();
        let mut a = self.gram.clone();
        let mut p: Matrix = identity(n);
        for i in 0..n {
            if a[i][i].is_zero() {
                let j = (i + 1..n)
                    .find(|&j| !a[i][j].is_zero())
                    .ok_or_else(|| Error::domain("degenerate quadratic form"))?;
                let sum = &a[i][i] + &a[i][j] * Rational::from_integer(2.into()) + &a[j][j];
                if sum.is_zero() {
                    // a_jj = -2 a_ij != 0
                    swap_basis(&mut a, &mut p, i, j);
                } else {
                    add_basis(&mut a, &mut p, i, j, &Rational::one());
                }
            }
            let pivot = a[i][i].clone();
            for j in i + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let c = -(&a[i][j] / &pivot);
                add_basis(&mut a, &mut p, j, i, &c);
            }
        }
        let entries = (0..n).map(|i| a[i][i].clone()).collect();
        Ok((entries, p))
    }

    pub fn diagonalize(&self) -> DiagonalForm {
        let (entries, _) = self
            .diagonalize_with_basis()
            .expect("validated at construction");
        DiagonalForm { entries }
    }

    /// `P^T G P`; fails if `P` is singular.
    pub fn transform(&self, p: &Matrix) -> Result<Self> {
        let n = self.rank();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::domain("transform has wrong shape"));
        }
        let gp = mat_mul(&self.gram, p);
        let pt = transpose(p);
        Self::new(mat_mul(&pt, &gp))
    }

    pub fn invariants(&self) -> FormInvariants {
        invariants_of_diagonal(&self.diagonalize().entries)
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                .collect()
        })
        .collect()
}

// Basis change e_target <- e_target + c * e_source, applied as a congruence.
fn add_basis(a: &mut Matrix, p: &mut Matrix, target: usize, source: usize, c: &Rational) {
    let n = a.len();
    for k in 0..n {
        let v = &a[source][k] * c;
        a[target][k] += v;
    }
    for k in 0..n {
        let v = &a[k][source] * c;
        a[k][target] += v;
    }
    for row in p.iter_mut() {
        let v = &row[source] * c;
        row[target] += v;
    }
}

fn swap_basis(a: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in p.iter_mut() {
        row.swap(i, j);
    }
}

fn hasse_product(reps: &[SquareClass], v: &Place) -> i8 {
    let mut sign = 1;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            sign *= hilbert_squarefree(reps[i].representative(), reps[j].representative(), v);
        }
    }
    sign
}

fn signature_of(entries: &[Rational]) -> Signature {
    let positive = entries.iter().filter(|a| a.is_positive()).count();
    Signature { positive, negative: entries.len() - positive }
}

/// Invariants of the diagonal form `<a_1, ..., a_n>`.
pub fn invariants_of_diagonal(entries: &[Rational]) -> FormInvariants {
    let reps: Vec<SquareClass> = entries
        .iter()
        .map(|a| SquareClass::new(a).expect("diagonal entries are nonzero"))
        .collect();
    let w1 = reps.iter().fold(SquareClass::one(), |acc, a| &acc * a);
    let mut w2 = CohClass2::zero();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            w2 = w2 + cup(&reps[i], &reps[j]);
        }
    }
    let mut places: BTreeSet<Place> = candidate_places([w1.representative()]);
    places.extend(w2.support().iter().cloned());
    let hasse_local = places
        .into_iter()
        .map(|v| {
            let h = hasse_product(&reps, &v);
            (v, h)
        })
        .collect();
    FormInvariants {
        rank: entries.len(),
        signature: signature_of(entries),
        disc: w1.clone(),
        w1,
        w2,
        hasse_local,
    }
}

/// Hasse-Minkowski: equal rank, signature, discriminant and local Hasse
/// invariants at every place.
pub fn isometric(q1: &QuadraticForm, q2: &QuadraticForm) -> bool {
    if q1.rank() != q2.rank() {
        return false;
    }
    let d1 = q1.diagonalize().entries;
    let d2 = q2.diagonalize().entries;
    if signature_of(&d1) != signature_of(&d2) {
        return false;
    }
    let r1: Vec<SquareClass> = d1.iter().map(|a| SquareClass::new(a).expect("nonzero")).collect();
    let r2: Vec<SquareClass> = d2.iter().map(|a| SquareClass::new(a).expect("nonzero")).collect();
    let disc = |r: &[SquareClass]| r.iter().fold(SquareClass::one(), |acc, a| &acc * a);
    if disc(&r1) != disc(&r2) {
        return false;
    }
    candidate_places(r1.iter().chain(&r2).map(SquareClass::representative))
        .iter()
        .all(|v| hasse_product(&r1, v) == hasse_product(&r2, v))
}

/// Orthogonal sum: the block-diagonal Gram matrix.
pub fn orthogonal_sum(q1: &QuadraticForm, q2: &QuadraticForm) -> QuadraticForm {
    let (n1, n2) = (q1.rank(), q2.rank());
    let mut gram = vec![vec![Rational::zero(); n1 + n2]; n1 + n2];
    for i in 0..n1 {
        for j in 0..n1 {
            gram[i][j] = q1.gram[i][j].clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            gram[n1 + i][n1 + j] = q2.gram[i][j].clone();
        }
    }
    QuadraticForm { gram }
}

/// The form `c * q`.
pub fn scale(q: &QuadraticForm, c: &Rational) -> Result<QuadraticForm> {
    if c.is_zero() {
        return Err(Error::domain("scaling by zero"));
    }
    let gram = q
        .gram
        .iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect();
    Ok(QuadraticForm { gram })
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Integer;

    fn r(n: i64) -> Rational {
        Rational::from_integer(Integer::from(n))
    }

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_integer(n).unwrap()
    }

    fn place(p: i64) -> Place {
        Place::prime(p).unwrap()
    }

    #[test]
    fn diagonalize_examples() {
        let q = QuadraticForm::diagonal_ints(&[2, -2]).unwrap();
        assert_eq!(q.diagonalize().entries, vec![r(2), r(-2)]);

        let h = QuadraticForm::parse("0,1;1,0").unwrap();
        let d = h.diagonalize();
        assert_eq!(d.entries, vec![r(2), Rational::new(Integer::from(-1), Integer::from(2))]);
        let dq = QuadraticForm::diagonal(&d.entries).unwrap();
        assert!(isometric(&h, &dq));

        assert_eq!(QuadraticForm::standard(3).diagonalize().entries, vec![r(1); 3]);
    }

    #[test]
    fn diagonalization_basis_is_a_congruence() {
        for s in ["0,1;1,0", "0,1,1;1,0,1;1,1,0", "0,2,0;2,-4,1;0,1,3", "1,1/2;1/2,-3"] {
            let q = QuadraticForm::parse(s).unwrap();
            let (entries, p) = q.diagonalize_with_basis().unwrap();
            let d = q.transform(&p).unwrap();
            assert_eq!(d, QuadraticForm::diagonal(&entries).unwrap(), "{s}");
        }
    }

    #[test]
    fn zero_pivot_falls_back_to_swap() {
        // a_11 + 2 a_12 + a_22 = 0 forces the swap branch
        let q = QuadraticForm::parse("0,1;1,-2").unwrap();
        let (entries, p) = q.diagonalize_with_basis().unwrap();
        assert!(entries.iter().all(|e| !e.is_zero()));
        assert_eq!(q.transform(&p).unwrap(), QuadraticForm::diagonal(&entries).unwrap());
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(QuadraticForm::parse("1,1;1,1"), Err(Error::Domain(_))));
        assert!(matches!(QuadraticForm::parse("0,0;0,0"), Err(Error::Domain(_))));
        assert!(QuadraticForm::parse("1,2;3,4").is_err());
        assert!(QuadraticForm::parse("1,2").is_err());
        assert!(matches!(QuadraticForm::parse("1,x;x,1"), Err(Error::Parse(_))));
    }

    #[test]
    fn invariants_examples() {
        let t = QuadraticForm::standard(5).invariants();
        assert_eq!(t.w1, sc(1));
        assert!(t.w2.is_zero());
        assert_eq!(t.signature, Signature { positive: 5, negative: 0 });

        let cubic = QuadraticForm::diagonal_ints(&[1, -1, -1, -1, -1, -1, -1]).unwrap().invariants();
        assert_eq!(cubic.w1, sc(1));
        assert_eq!(cubic.w2, CohClass2::quaternions());

        let q = QuadraticForm::diagonal_ints(&[2, -2]).unwrap().invariants();
        assert_eq!(q.w1, sc(-1));
        assert!(q.w2.is_zero());
    }

    #[test]
    fn isometry_examples() {
        let a = QuadraticForm::diagonal_ints(&[1, 1]).unwrap();
        let b = QuadraticForm::diagonal_ints(&[1, -1]).unwrap();
        let c = QuadraticForm::diagonal_ints(&[2, 2]).unwrap();
        assert!(!isometric(&a, &b));
        assert!(isometric(&a, &c));
        // <1,1,1> vs <1,2,2>... both have w2 = 0 ? (2,2) = (2,-1) = 0 so yes
        assert!(isometric(
            &QuadraticForm::diagonal_ints(&[1, 1, 1]).unwrap(),
            &QuadraticForm::diagonal_ints(&[1, 2, 2]).unwrap()
        ));
        // <1,1,1,1> vs <1,1,3,3>: w2 = (3,3) = (3,-1) = {2,3}
        assert!(!isometric(
            &QuadraticForm::diagonal_ints(&[1, 1, 1, 1]).unwrap(),
            &QuadraticForm::diagonal_ints(&[1, 1, 3, 3]).unwrap()
        ));
        assert!(!isometric(&a, &QuadraticForm::standard(3)));
    }

    #[test]
    fn sum_and_scale() {
        let s = orthogonal_sum(
            &QuadraticForm::diagonal_ints(&[1]).unwrap(),
            &QuadraticForm::diagonal_ints(&[-1]).unwrap(),
        );
        assert_eq!(s, QuadraticForm::diagonal_ints(&[1, -1]).unwrap());
        let sc2 = scale(&QuadraticForm::standard(2), &r(2)).unwrap();
        assert_eq!(sc2, QuadraticForm::diagonal_ints(&[2, 2]).unwrap());
        assert!(scale(&sc2, &r(0)).is_err());
    }

    #[test]
    fn hasse_local_matches_w2() {
        let q = QuadraticForm::diagonal_ints(&[3, -7, 10, 22]).unwrap().invariants();
        for (v, h) in &q.hasse_local {
            assert_eq!(*h, q.w2.local_sign(v), "at {v}");
        }
        assert_eq!(q.hasse_local.values().filter(|&&h| h == -1).count() % 2, 0);
        assert_eq!(q.hasse_at(&place(101)), 1);
    }

    #[test]
    fn display_roundtrip() {
        let q = QuadraticForm::parse("1/2,3;3,-6").unwrap();
        assert_eq!(QuadraticForm::parse(&q.to_string()).unwrap(), q);
    }
}
