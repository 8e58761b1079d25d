//! Reference computations that avoid the Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::{Matrix, Ring};

/// Invariant factors `d_1 | d_2 | …` (ascending, all `> 1`) of
/// `⊕ Z/t` via the primary decomposition.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut powers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &t in orders {
        let mut t = t;
        let mut p = 2;
        while p * p <= t {
            if t % p == 0 {
                let mut q = 1;
                while t % p == 0 {
                    t /= p;
                    q *= p;
                }
                powers.entry(p).or_default().push(q);
            }
            p += 1;
        }
        if t > 1 {
            powers.entry(t).or_default().push(t);
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for list in powers.values_mut() {
        list.sort_unstable_by(|a, b| b.cmp(a));
        for (k, q) in list.iter().enumerate() {
            out[k] *= q;
        }
    }
    out.reverse();
    out
}

/// Rank by Gaussian elimination over the fraction field (or over F_p).
pub fn rank_by_elimination(m: &Matrix) -> usize {
    let (rows, cols) = m.shape();
    match m.ring() {
        Ring::Integers => {
            let mut a: Vec<Vec<BigRational>> =
                (0..rows).map(|r| (0..cols).map(|c| BigRational::from_integer(m.get(r, c).clone())).collect()).collect();
            eliminate(&mut a, |x| x.is_zero(), |a, b| a / b, |a, b| a * b, |a, b| a - b)
        }
        Ring::PrimeField(p) => {
            let p = BigInt::from(p);
            let md = |x: BigInt| ((x % &p) + &p) % &p;
            let inv = |x: &BigInt| x.modpow(&(&p - 2u32), &p);
            let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect()).collect();
            eliminate(&mut a, |x| x.is_zero(), |a, b| md(a * inv(b)), |a, b| md(a * b), |a, b| md(a - b))
        }
    }
}

fn eliminate<T: Clone>(
    a: &mut [Vec<T>],
    is_zero: impl Fn(&T) -> bool,
    div: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !is_zero(&a[r][c])) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !is_zero(&a[r][c]) {
                let f = div(&a[r][c], &a[rank][c]);
                for k in c..cols {
                    let v = sub(&a[r][k], &mul(&f, &a[rank][k]));
                    a[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `m x = b` has a rational solution.
pub fn rationally_solvable(m: &Matrix, b: &[BigInt]) -> bool {
    let aug = Matrix::from_fn(m.ring(), m.rows(), m.cols() + 1, |r, c| {
        if c < m.cols() {
            m.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    rank_by_elimination(m) == rank_by_elimination(&aug)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
        assert!(invariant_factors(&[]).is_empty());
    }

    #[test]
    fn ranks() {
        let m = Matrix::from_i64(Ring::Integers, &[&[2, 4], &[6, 8]]);
        assert_eq!(rank_by_elimination(&m), 2);
        let m = Matrix::from_i64(Ring::PrimeField(2), &[&[2, 4], &[6, 8]]);
        assert_eq!(rank_by_elimination(&m), 0);
        let m = Matrix::from_i64(Ring::Integers, &[&[1, 2], &[2, 4]]);
        assert_eq!(rank_by_elimination(&m), 1);
    }
}
