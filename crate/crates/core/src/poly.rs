//! Dense integer polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::bareiss_determinant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers: remainder {remainder}")]
    Inexact { remainder: IntPolynomial },
}

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        Self::monomial(1, n) - Self::constant(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplicity of 0 as a root (lowest nonzero coefficient index).
    pub fn zero_root_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self(c - y)` as a polynomial in `y`.
    pub fn reflect_shift(&self, c: &BigInt) -> Self {
        let base = Self::new(vec![c.clone(), BigInt::from(-1)]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &base) + &Self::constant(a.clone())
        })
    }

    /// Division with remainder. Every leading-coefficient quotient must be exact,
    /// which always holds for monic divisors.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::Inexact {
                    remainder: Self::new(rem),
                });
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &q * c;
            }
            quot[k - dd] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn exact_divide(&self, d: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::Inexact { remainder: r })
        }
    }

    /// Remainder modulo a monic (or leading-coefficient-compatible) modulus.
    pub fn remainder_mod(&self, m: &Self) -> Result<Self, PolyError> {
        self.div_rem(m).map(|(_, r)| r)
    }

    pub fn divides(&self, f: &Self) -> Result<bool, PolyError> {
        Ok(f.remainder_mod(self)?.is_zero())
    }
}

/// Resultant of two integer polynomials via the Sylvester determinant.
///
/// `Res(0, g)` is 0; for a constant `c` of degree 0, `Res(c, g) = c^{deg g}`.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    if m == 0 {
        return num_traits::pow(f.coeff(0), n);
    }
    if n == 0 {
        return num_traits::pow(g.coeff(0), m);
    }
    let size = m + n;
    let mut sylvester = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients highest degree first
    for r in 0..n {
        for (i, c) in f.coeffs.iter().rev().enumerate() {
            sylvester[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs.iter().rev().enumerate() {
            sylvester[n + r][r + i] = c.clone();
        }
    }
    bareiss_determinant(sylvester)
}

/// `Res_y(f(y), g(x - y))` as a polynomial in `x`.
///
/// When `f` and `g` are monic with roots `λ_i` and `μ_j` this is
/// `∏ (x - λ_i - μ_j)`. Computed by evaluating at `deg f · deg g + 1` integer
/// points and interpolating.
pub fn sum_resultant(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return IntPolynomial::zero();
    };
    let points: Vec<BigInt> = (0..=(m * n) as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|x| resultant(f, &g.reflect_shift(x)))
        .collect();
    interpolate(&points, &values)
}

/// Newton interpolation; the result must have integer coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPolynomial {
    let k = xs.len();
    let mut table: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let denom = BigRational::from_integer(&xs[i] - &xs[i - level]);
            table[i] = (&table[i] - &table[i - 1]) / denom;
        }
    }
    // expand the Newton form highest term first
    let mut acc = vec![BigRational::zero()];
    for i in (0..k).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &table[i];
        acc = next;
    }
    IntPolynomial::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated resultant must be integral");
                c.to_integer()
            })
            .collect(),
    )
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (o, x) in out.iter_mut().zip(a) {
        *o += x;
    }
    for (o, x) in out.iter_mut().zip(b) {
        if sign > 0 {
            *o += x;
        } else {
            *o -= x;
        }
    }
    out
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, 1))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, -1))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (show_mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (false, 1) => write!(f, "x")?,
                (true, _) => write!(f, "{mag}x^{k}")?,
                (false, _) => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
