//! Exact base fields: the rationals and prime fields `F_p` with `p < 2^31`.
//!
//! Fields are passed around as small context values (`Rationals` is a unit
//! struct, `PrimeField` carries its modulus); elements are plain data and every
//! arithmetic operation goes through the field value.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::linalg::{Mat, Rref};

/// Which field a quiver's representations live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| FieldSpec::PrimeField(f.p))
    }

    pub fn characteristic(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }
}

impl core::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp {p}"),
        }
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// A random element. Over the rationals the value is an integer in
    /// `[-height, height]`; over `F_p` it is uniform and `height` is ignored.
    fn random(&self, rng: &mut dyn RngCore, height: u32) -> Self::Elem;

    /// All field elements in a fixed order, for finite fields small enough to list.
    fn elements(&self, limit: u64) -> Option<Vec<Self::Elem>>;

    /// Distinct roots in the field of a polynomial (coefficients lowest degree
    /// first). `None` means the roots could not be determined cheaply.
    fn roots(&self, poly: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    fn parse(&self, s: &str) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// Reduced row echelon form with the pivot rule "first nonzero entry,
    /// scanning columns left to right and rows top to bottom".
    fn rref(&self, m: &Mat<Self>) -> Rref<Self> {
        gauss_jordan(m)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// Plain Gauss–Jordan elimination over any field.
pub(crate) fn gauss_jordan<F: Field>(m: &Mat<F>) -> Rref<F> {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<F::Elem> = m.data().to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(&a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = f.mul(&a[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&a[i * cols + c]) {
                continue;
            }
            let factor = a[i * cols + c].clone();
            for j in c..cols {
                let t = f.mul(&factor, &a[r * cols + j]);
                a[i * cols + j] = f.sub(&a[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref::new(Mat::from_vec(f, rows, cols, a), pivots)
}

/// The field of rational numbers, with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn random(&self, rng: &mut dyn RngCore, height: u32) -> BigRational {
        let span = 2 * u64::from(height) + 1;
        let v = (rng.next_u64() % span) as i64 - i64::from(height);
        self.from_i64(v)
    }
    fn elements(&self, _limit: u64) -> Option<Vec<BigRational>> {
        None
    }
    fn roots(&self, poly: &[BigRational]) -> Option<Vec<BigRational>> {
        rational_roots(poly)
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                (!d.is_zero()).then(|| BigRational::new(n, d))
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn rref(&self, m: &Mat<Self>) -> Rref<Self> {
        // Sparse systems (intertwiner equations) stay small under plain
        // elimination; dense ones are cheaper fraction-free.
        let nonzero = m.data().iter().filter(|x| !x.is_zero()).count();
        if 2 * nonzero > m.data().len() {
            fraction_free_rref(m)
        } else {
            gauss_jordan(m)
        }
    }
}

/// Fraction-free (Bareiss) Gauss–Jordan elimination.
///
/// Each row is first scaled to integers; elimination then keeps every entry an
/// integer minor of the scaled matrix, dividing exactly by the previous pivot.
/// At the end every pivot entry equals the last pivot, so one division per
/// entry yields the reduced form.
fn fraction_free_rref(m: &Mat<Rationals>) -> Rref<Rationals> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let row = &m.data()[i * cols..(i + 1) * cols];
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
    }
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let p = a[r * cols + c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c].clone();
            for j in 0..cols {
                let v = &p * &a[i * cols + j] - &factor * &a[r * cols + j];
                debug_assert!((&v % &prev).is_zero());
                a[i * cols + j] = v / &prev;
            }
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    let f = Rationals;
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = &a[i * cols + j];
            if i < pivots.len() {
                out.push(BigRational::new(v.clone(), prev.clone()));
            } else {
                debug_assert!(v.is_zero());
                out.push(BigRational::zero());
            }
        }
    }
    Rref::new(Mat::from_vec(f, rows, cols, out), pivots)
}

/// Rational roots via the rational root theorem. Gives up (returns `None`)
/// when the extreme coefficients are too large to factor by trial division.
fn rational_roots(poly: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut coeffs: Vec<BigRational> = poly.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(BigRational::zero());
        coeffs.drain(..shift);
    }
    if coeffs.len() <= 1 {
        return Some(roots);
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let lead = ints.last()?.abs().to_u64()?;
    let constant = ints[0].abs().to_u64()?;
    const LIMIT: u64 = 1_000_000_000_000;
    if lead > LIMIT || constant > LIMIT {
        return None;
    }
    let nums = divisors(constant);
    let dens = divisors(lead);
    let mut candidates: Vec<BigRational> = Vec::new();
    for &n in &nums {
        for &d in &dens {
            for sign in [1i64, -1] {
                let c = BigRational::new(BigInt::from(n) * sign, BigInt::from(d));
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        let mut acc = BigRational::zero();
        for coeff in coeffs.iter().rev() {
            acc = acc * &c + coeff;
        }
        if acc.is_zero() {
            roots.push(c);
        }
    }
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i128) -> u32 {
        v.rem_euclid(i128::from(self.p)) as u32
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = u64::from(self.p);
        let mut acc = 1u64;
        let mut b = u64::from(base) % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(i128::from(v))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(self.p) - u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, u64::from(self.p) - 2))
    }
    fn order(&self) -> Option<u64> {
        Some(u64::from(self.p))
    }
    fn random(&self, rng: &mut dyn RngCore, _height: u32) -> u32 {
        (rng.next_u64() % u64::from(self.p)) as u32
    }
    fn elements(&self, limit: u64) -> Option<Vec<u32>> {
        (u64::from(self.p) <= limit).then(|| (0..self.p).collect())
    }
    fn roots(&self, poly: &[u32]) -> Option<Vec<u32>> {
        // Exhaustive evaluation; larger fields are left undetermined.
        if self.p > 4096 {
            return None;
        }
        Some(
            (0..self.p)
                .filter(|x| {
                    let mut acc = 0u32;
                    for c in poly.iter().rev() {
                        acc = self.add(&self.mul(&acc, x), c);
                    }
                    acc == 0
                })
                .collect(),
        )
    }
    fn parse(&self, s: &str) -> Option<u32> {
        if let Some((n, d)) = s.split_once('/') {
            let n = self.parse(n)?;
            let d = self.parse(d)?;
            return self.div(&n, &d);
        }
        let v: BigInt = s.trim().parse().ok()?;
        let (sign, digits) = (&v % BigInt::from(self.p)).to_u32_digits();
        let r = digits.first().copied().unwrap_or(0);
        Some(if sign == Sign::Minus {
            self.neg(&r)
        } else {
            r
        })
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}
