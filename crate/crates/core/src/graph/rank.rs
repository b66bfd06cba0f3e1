//! Exact rank of the adjacency matrix by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

pub const DEFAULT_RANK_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankAnalysis {
    pub n: usize,
    pub rank: usize,
    /// A primitive integer vector in ker A (first nonzero entry positive),
    /// present iff the matrix is singular.
    pub kernel_vector: Option<Vec<BigInt>>,
}

impl RankAnalysis {
    pub fn non_singular(&self) -> bool {
        self.rank == self.n
    }
}

pub fn adjacency_rank(g: &FiniteGraph) -> Result<usize> {
    adjacency_rank_with_cap(g, DEFAULT_RANK_CAP)
}

pub fn adjacency_rank_with_cap(g: &FiniteGraph, cap: usize) -> Result<usize> {
    analyze_rank(g, cap).map(|a| a.rank)
}

pub fn non_singular(g: &FiniteGraph) -> Result<bool> {
    analyze_rank(g, DEFAULT_RANK_CAP).map(|a| a.non_singular())
}

pub fn analyze_rank(g: &FiniteGraph, cap: usize) -> Result<RankAnalysis> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (u, v) in g.edges() {
        m[u.zero_based()][v.zero_based()] = BigInt::one();
        m[v.zero_based()][u.zero_based()] = BigInt::one();
    }
    let pivots = bareiss_echelon(&mut m);
    let rank = pivots.len();
    let kernel_vector = (rank < n).then(|| kernel_from_echelon(&m, &pivots));
    Ok(RankAnalysis {
        n,
        rank,
        kernel_vector,
    })
}

/// Reduces `m` in place to row echelon form; returns pivot columns.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Back-substitutes with the first free column set to one.
fn kernel_from_echelon(m: &[Vec<BigInt>], pivots: &[usize]) -> Vec<BigInt> {
    let n = m.first().map_or(0, Vec::len);
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("singular matrix has a free column");
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::zero();
        for j in pc + 1..n {
            if !m[k][j].is_zero() && !x[j].is_zero() {
                acc += BigRational::from_integer(m[k][j].clone()) * &x[j];
            }
        }
        x[pc] = -acc / BigRational::from_integer(m[k][pc].clone());
    }
    let lcm = x
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut ints: Vec<BigInt> = x
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        for v in &mut ints {
            *v = -&*v;
        }
    }
    ints
}
