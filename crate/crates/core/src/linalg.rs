//! Exact linear algebra over the integers and rationals: kernels, nut
//! verdicts, characteristic polynomials and the cartesian-product spectral
//! identities.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{cartesian_product, Graph};
use crate::poly::{sum_resultant, IntPolynomial};

/// Largest product order accepted by [`product_spectrum_check`].
pub const PRODUCT_CHECK_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error(
        "product of orders {0} exceeds the limit of {PRODUCT_CHECK_LIMIT} for the spectrum check"
    )]
    SizeBound(usize),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("{factor} vector is zero and cannot be an eigenvector")]
    ZeroVector { factor: &'static str },
    #[error("{factor} vector is not an eigenvector: row {row} breaks A·v = λ·v")]
    NotEigenvector { factor: &'static str, row: usize },
    #[error("eigenvalues {lambda} and {mu} do not sum to zero")]
    NonzeroSum {
        lambda: Box<BigRational>,
        mu: Box<BigRational>,
    },
}

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = Self::zeros(g.order());
        for &(u, v) in g.edges() {
            m[(u, v)] = BigInt::one();
            m[(v, u)] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vector(&self, v: &RationalVector) -> RationalVector {
        RationalVector(
            (0..self.dim)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(BigRational::zero(), |acc, (a, x)| {
                            acc + x * BigRational::from_integer(a.clone())
                        })
                })
                .collect(),
        )
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim).map(|i| self.row(i)))
            .finish()
    }
}

/// Vector of reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn from_i64s(v: &[i64]) -> Self {
        RationalVector(
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// No zero entries.
    pub fn is_full(&self) -> bool {
        self.0.iter().all(|x| !x.is_zero())
    }

    /// Smallest integer multiple with coprime entries and the sign of the
    /// original first nonzero entry preserved.
    pub fn to_primitive_integers(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(ToString::to_string))
            .finish()
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// `a·x - b·y` over sparse rows, then divided by its content.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, val) = match (x.get(i), y.get(j)) {
            (Some(&(cx, ref vx)), Some(&(cy, _))) if cx < cy => {
                i += 1;
                (cx, a * vx)
            }
            (Some(&(cx, _)), Some(&(cy, ref vy))) if cy < cx => {
                j += 1;
                (cy, -(b * vy))
            }
            (Some(&(cx, ref vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (cx, a * vx - b * vy)
            }
            (Some(&(cx, ref vx)), None) => {
                i += 1;
                (cx, a * vx)
            }
            (None, Some(&(cy, ref vy))) => {
                j += 1;
                (cy, -(b * vy))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Row-echelon form by fraction-free integer elimination on sparse rows.
///
/// Columns are eliminated left to right. Among the rows whose leading entry
/// sits in the current column the shortest one (first found on ties) is the
/// pivot; every other such row is replaced by `p·r - r_c·pivot` and divided by
/// its content so coefficients stay small. Returns `(pivot column, row)` pairs.
fn echelon(a: &IntMatrix) -> Vec<(usize, SparseRow)> {
    let n = a.dim();
    // buckets[c] holds the rows whose leading column is c
    let mut buckets: Vec<Vec<SparseRow>> = vec![Vec::new(); n];
    for i in 0..n {
        let mut row: SparseRow = a
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        if let Some(&(lead, _)) = row.first() {
            make_primitive(&mut row);
            buckets[lead].push(row);
        }
    }
    let mut pivots = Vec::new();
    for col in 0..n {
        let mut rows = std::mem::take(&mut buckets[col]);
        if rows.is_empty() {
            continue;
        }
        let best = (0..rows.len())
            .min_by_key(|&i| rows[i].len())
            .expect("nonempty");
        let pivot = rows.swap_remove(best);
        let p = &pivot[0].1;
        for row in rows {
            let g = p.gcd(&row[0].1);
            let (a, b) = (p / &g, &row[0].1 / &g);
            let reduced = combine(&a, &row, &b, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                debug_assert!(lead > col);
                buckets[lead].push(reduced);
            }
        }
        pivots.push((col, pivot));
    }
    pivots
}

/// Rank of a square integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    echelon(a).len()
}

/// Basis of the rational kernel of `a`, in reduced row-echelon form when the
/// vectors are stacked as rows: each vector's first nonzero entry is 1 and sits
/// in a coordinate where every other basis vector is zero. The basis is
/// therefore unique for the kernel.
pub fn kernel_basis(a: &IntMatrix) -> Vec<RationalVector> {
    let n = a.dim();
    let pivots = echelon(a);
    let mut is_pivot = vec![false; n];
    for (c, _) in &pivots {
        is_pivot[*c] = true;
    }
    let raw: Vec<Vec<BigRational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = vec![BigRational::zero(); n];
            x[free] = BigRational::one();
            for (c, row) in pivots.iter().rev() {
                let s = row[1..]
                    .iter()
                    .filter(|(j, _)| !x[*j].is_zero())
                    .fold(BigRational::zero(), |acc, (j, v)| {
                        acc + &x[*j] * BigRational::from_integer(v.clone())
                    });
                x[*c] = -s / BigRational::from_integer(row[0].1.clone());
            }
            x
        })
        .collect();
    reduced_row_echelon(raw)
        .into_iter()
        .map(RationalVector)
        .collect()
}

/// Gauss–Jordan over the rationals; rows are assumed independent.
fn reduced_row_echelon(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows
}

/// Outcome of an exact nut test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NutVerdict {
    pub nullity: usize,
    pub kernel_basis: Vec<RationalVector>,
    /// Meaningful when `nullity == 1`: the kernel vector has no zero entry.
    pub is_full: bool,
    pub is_nut: bool,
}

/// Serialized form of a verdict with kernel vectors scaled to coprime integers.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictSummary {
    pub nullity: usize,
    pub is_full: bool,
    pub is_nut: bool,
    pub kernel_basis: Vec<Vec<String>>,
}

impl NutVerdict {
    pub fn summary(&self) -> VerdictSummary {
        VerdictSummary {
            nullity: self.nullity,
            is_full: self.is_full,
            is_nut: self.is_nut,
            kernel_basis: self
                .kernel_basis
                .iter()
                .map(|v| {
                    v.to_primitive_integers()
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn is_nut(g: &Graph) -> NutVerdict {
    let basis = kernel_basis(&IntMatrix::adjacency(g));
    let nullity = basis.len();
    let is_full = nullity == 1 && basis[0].is_full();
    NutVerdict {
        nullity,
        is_full,
        is_nut: is_full && g.order() >= 2,
        kernel_basis: basis,
    }
}

/// `det(xI - A)` by the Faddeev–LeVerrier recurrence.
///
/// With `M_1 = I`, `c_{n-1} = -tr A`, and `M_k = A·M_{k-1} + c_{n-k+1} I`,
/// `c_{n-k} = -tr(A·M_k) / k`; every division is exact over the integers.
pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    let n = a.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    if n == 0 {
        return IntPolynomial::new(coeffs);
    }
    let nonzeros: Vec<Vec<(usize, BigInt)>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect();
    let times_a = |m: &IntMatrix| -> IntMatrix {
        let mut out = IntMatrix::zeros(n);
        for (i, row) in nonzeros.iter().enumerate() {
            for (k, aik) in row {
                for j in 0..n {
                    let mkj = &m[(*k, j)];
                    if !mkj.is_zero() {
                        out[(i, j)] += aik * mkj;
                    }
                }
            }
        }
        out
    };
    let trace = |m: &IntMatrix| (0..n).fold(BigInt::zero(), |acc, i| acc + &m[(i, i)]);

    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = BigInt::one();
    }
    for k in 1..=n {
        let am = times_a(&m);
        let (q, r) = (-trace(&am)).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = q;
        if k < n {
            m = am;
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k];
            }
        }
    }
    IntPolynomial::new(coeffs)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Checks `char_poly(G □ H) = ± Res_y(χ_G(y), χ_H(x - y))`, the polynomial form of
/// `σ(G □ H) = {λ + μ}`.
pub fn product_spectrum_check(g: &Graph, h: &Graph) -> Result<bool, LinalgError> {
    let order = g.order() * h.order();
    if order > PRODUCT_CHECK_LIMIT {
        return Err(LinalgError::SizeBound(order));
    }
    let direct = char_poly(&IntMatrix::adjacency(&cartesian_product(g, h)));
    let via_factors = sum_resultant(
        &char_poly(&IntMatrix::adjacency(g)),
        &char_poly(&IntMatrix::adjacency(h)),
    );
    Ok(direct == via_factors || direct == -via_factors)
}

/// Eigenvalue of `v` for `A(g)`, or the first row where `A·v ≠ λ·v`.
pub fn eigenvalue_of(
    g: &Graph,
    v: &RationalVector,
    factor: &'static str,
) -> Result<BigRational, LinalgError> {
    if v.len() != g.order() {
        return Err(LinalgError::LengthMismatch {
            got: v.len(),
            expected: g.order(),
        });
    }
    let av = IntMatrix::adjacency(g).mul_vector(v);
    let first =
        v.0.iter()
            .position(|x| !x.is_zero())
            .ok_or(LinalgError::ZeroVector { factor })?;
    let lambda = &av.0[first] / &v.0[first];
    match (0..v.len()).find(|&i| av.0[i] != &lambda * &v.0[i]) {
        Some(row) => Err(LinalgError::NotEigenvector { factor, row }),
        None => Ok(lambda),
    }
}

/// Kernel vector `w_(g,h) = u_g · v_h` of `G □ H` built from eigenvectors of the
/// factors with opposite eigenvalues. Indexed by the product labelling
/// `g · |V(H)| + h`.
pub fn kernel_vector_from_factors(
    u: &RationalVector,
    v: &RationalVector,
    g: &Graph,
    h: &Graph,
) -> Result<RationalVector, LinalgError> {
    let lambda = eigenvalue_of(g, u, "first factor")?;
    let mu = eigenvalue_of(h, v, "second factor")?;
    if !(&lambda + &mu).is_zero() {
        return Err(LinalgError::NonzeroSum {
            lambda: Box::new(lambda),
            mu: Box::new(mu),
        });
    }
    Ok(RationalVector(
        u.0.iter()
            .flat_map(|a| v.0.iter().map(move |b| a * b))
            .collect(),
    ))
}

/// Residual-free check `A·w = 0`.
pub fn annihilates(a: &IntMatrix, w: &RationalVector) -> bool {
    a.mul_vector(w).is_zero()
}

/// Rational vector from integers, convenience for callers building eigenvectors.
pub fn alternating_vector(n: usize) -> RationalVector {
    RationalVector::from_i64s(
        &(0..n)
            .map(|i| if i % 2 == 0 { 1 } else { -1 })
            .collect::<Vec<_>>(),
    )
}
