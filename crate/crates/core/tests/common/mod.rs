//! Independent oracles shared by the integration tests. Nothing here calls the
//! code paths it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nut_orbits::graph::{cartesian_product, circulant, complete_graph, CirculantSpec, Graph};
use nut_orbits::IntPolynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn circ(n: usize, s: &[usize]) -> Graph {
    circulant(&CirculantSpec::new(n, s.iter().copied()).unwrap())
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Automorphisms by exhaustive search over all `n!` permutations.
pub fn brute_force_automorphisms(g: &Graph) -> BTreeSet<Vec<usize>> {
    let rows = g.adjacency_rows();
    let n = g.order();
    all_permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|i| (0..n).all(|j| rows[i][j] == rows[p[i]][p[j]])))
        .collect()
}

/// `det(M)` for a matrix of polynomials by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::constant(1);
    }
    let mut total = IntPolynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPolynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &laplace_det(&minor);
        total = if j % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// `det(xI - A)` by cofactor expansion.
pub fn cofactor_char_poly(rows: &[Vec<i64>]) -> IntPolynomial {
    let n = rows.len();
    let m: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![-rows[i][j]];
                    if i == j {
                        c.push(1);
                    }
                    IntPolynomial::from_i64s(&c)
                })
                .collect()
        })
        .collect();
    laplace_det(&m)
}

pub fn adjacency_i64(g: &Graph) -> Vec<Vec<i64>> {
    g.adjacency_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

/// Rank over the rationals by plain Gaussian elimination on `f64`-free
/// fractions: rows are scaled integer vectors reduced with i128 cross
/// multiplication (safe for the tiny matrices used here).
pub fn small_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = *x * a - *y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Deterministic family of small graphs with varied symmetry: random
/// circulants, products of small factors, random graphs symmetrised under a
/// random involution, and plain random graphs.
pub fn structured_graphs(seed: u64, count: usize, max_order: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=max_order);
        let g = match out.len() % 4 {
            0 if n >= 3 => {
                let offsets: Vec<usize> = (1..=n / 2).filter(|_| rng.gen_bool(0.5)).collect();
                if offsets.is_empty() {
                    continue;
                }
                circ(n, &offsets)
            }
            1 => {
                let a = rng.gen_range(1..=4);
                let b = rng.gen_range(1..=(max_order / a).max(1));
                let left = if rng.gen_bool(0.5) {
                    complete_graph(a)
                } else {
                    random_graph(&mut rng, a, 0.5)
                };
                cartesian_product(&left, &random_graph(&mut rng, b, 0.5))
            }
            2 => {
                // close a random edge set under an involution swapping pairs
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (0..n - 1).step_by(2) {
                    if rng.gen_bool(0.7) {
                        perm.swap(i, i + 1);
                    }
                }
                let base = random_graph(&mut rng, n, 0.35);
                let edges: Vec<_> = base
                    .edges()
                    .iter()
                    .flat_map(|&(u, v)| [(u, v), (perm[u], perm[v])])
                    .collect();
                Graph::from_edges(n, edges).unwrap()
            }
            _ => {
                let p = rng.gen_range(0.2..0.8);
                random_graph(&mut rng, n, p)
            }
        };
        if g.order() <= max_order {
            out.push(g);
        }
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
