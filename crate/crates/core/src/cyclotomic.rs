//! Cyclotomic polynomials and exact root-of-unity criteria for circulant graphs.
//!
//! The eigenvalues of `Circ(n, S)` are the values of its symbol polynomial at
//! the n-th roots of unity. Because each `Φ_d` is irreducible over Q, the symbol
//! vanishes at one primitive d-th root iff it vanishes at all of them iff `Φ_d`
//! divides it, so every spectral question here reduces to exact division.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::Serialize;

use crate::graph::CirculantSpec;
use crate::poly::IntPolynomial;

fn cache() -> &'static RwLock<HashMap<usize, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// `Φ_n(x)`, obtained as `(x^n - 1) / ∏_{d | n, d < n} Φ_d(x)`. Memoized.
///
/// # Panics
/// If `n == 0`.
pub fn cyclotomic(n: usize) -> Arc<IntPolynomial> {
    assert!(n > 0, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = cache().read().expect("cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut quotient = IntPolynomial::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        quotient = quotient
            .exact_divide(&cyclotomic(d))
            .expect("Φ_d divides x^n - 1 for d | n");
    }
    let phi = Arc::new(quotient);
    cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(phi)
        .clone()
}

/// Symbol polynomial of `Circ(n, S)`: `Σ_{s < n/2} (x^s + x^{n-s})`, plus
/// `x^{n/2}` once when the half-order offset is present. Its coefficients are
/// the first row of the adjacency matrix.
pub fn circulant_symbol(spec: &CirculantSpec) -> IntPolynomial {
    let n = spec.order();
    let mut row = vec![0i64; n];
    for s in spec.offsets() {
        row[s] = 1;
        row[(n - s) % n] = 1;
    }
    IntPolynomial::from_i64s(&row)
}

/// Orders `d | n` of the roots of unity at which the symbol vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub n: usize,
    pub divisors_vanishing: BTreeSet<usize>,
}

impl VanishingReport {
    /// Nullity of the circulant: one kernel dimension per vanishing root.
    pub fn nullity(&self) -> usize {
        self.divisors_vanishing.iter().map(|&d| euler_phi(d)).sum()
    }
}

pub fn vanishing_orders(spec: &CirculantSpec) -> VanishingReport {
    let n = spec.order();
    let symbol = circulant_symbol(spec)
        .remainder_mod(&IntPolynomial::x_pow_minus_one(n))
        .expect("monic modulus");
    let divisors_vanishing = divisors(n)
        .into_iter()
        .filter(|&d| {
            cyclotomic(d)
                .divides(&symbol)
                .expect("cyclotomic polynomials are monic")
        })
        .collect();
    VanishingReport {
        n,
        divisors_vanishing,
    }
}

/// Nut test for circulants without linear algebra.
///
/// The only real eigenvector with a full rational kernel is the alternating
/// vector at `ζ = -1`, and `P(1) = |row| > 0`, so the circulant is a nut graph
/// exactly when `n` is even and the symbol vanishes at order 2 and nowhere else.
pub fn circulant_is_nut_symbolic(spec: &CirculantSpec) -> bool {
    let report = vanishing_orders(spec);
    spec.order().is_multiple_of(2) && report.divisors_vanishing.iter().eq([2].iter())
}

/// Closed-form nut criterion for `Circ(n, {1..k})` with `k, n` even and
/// `n ≥ 2k + 2`; `false` when those hypotheses do not hold.
pub fn gcd_criterion(n: usize, k: usize) -> bool {
    if k == 0 || !k.is_multiple_of(2) || !n.is_multiple_of(2) || n < 2 * k + 2 {
        return false;
    }
    let half = n / 2;
    half.gcd(&(k / 2)) == 1 && half.gcd(&(k + 1)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, s: &[usize]) -> CirculantSpec {
        CirculantSpec::new(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), IntPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(*cyclotomic(2), IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(*cyclotomic(12), IntPolynomial::from_i64s(&[1, 0, -1, 0, 1]));
        for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23] {
            assert_eq!(cyclotomic(p).degree(), Some(p - 1));
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn symbols() {
        assert_eq!(
            circulant_symbol(&spec(10, &[1, 2])),
            IntPolynomial::from_i64s(&[0, 1, 1, 0, 0, 0, 0, 0, 1, 1])
        );
        assert_eq!(
            circulant_symbol(&spec(4, &[1])),
            IntPolynomial::from_i64s(&[0, 1, 0, 1])
        );
        assert_eq!(
            circulant_symbol(&spec(12, &[6])),
            IntPolynomial::monomial(1, 6)
        );
    }

    #[test]
    fn vanishing_examples() {
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            vanishing_orders(&spec(10, &[1, 2])).divisors_vanishing,
            set(&[2])
        );
        assert_eq!(
            vanishing_orders(&spec(4, &[1])).divisors_vanishing,
            set(&[4])
        );
        assert_eq!(
            vanishing_orders(&spec(16, &[1, 2, 3, 4, 5, 6])).divisors_vanishing,
            set(&[2])
        );
        assert_eq!(vanishing_orders(&spec(4, &[1])).nullity(), 2);
    }

    #[test]
    fn symbolic_nut_examples() {
        assert!(circulant_is_nut_symbolic(&spec(10, &[1, 2])));
        assert!(circulant_is_nut_symbolic(&spec(14, &[1, 2, 3, 4])));
        assert!(!circulant_is_nut_symbolic(&spec(12, &[1, 2, 3, 4])));
        // odd orders never qualify
        assert!(!circulant_is_nut_symbolic(&spec(9, &[1, 2])));
    }

    #[test]
    fn gcd_examples() {
        assert!(gcd_criterion(16, 6));
        assert!(gcd_criterion(14, 4));
        assert!(!gcd_criterion(12, 4));
        assert!(!gcd_criterion(10, 4)); // n < 2k + 2
        assert!(!gcd_criterion(14, 3));
    }
}
