use num_bigint::BigInt;
use num_traits::Zero;

use super::{ChainComplex, ChainMap, Homotopy, HomotopyEquivalence};
use crate::error::Result;
use crate::linalg::{Matrix, Ring};

/// A smaller complex homotopy equivalent to the input.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub complex: ChainComplex,
    /// `forth : X -> X_min`, `back : X_min -> X`, with `forth ∘ back = id`.
    pub equivalence: HomotopyEquivalence,
}

/// `row_t += c * row_s`.
fn add_row(m: &mut Matrix, t: usize, s: usize, c: &BigInt) {
    for j in 0..m.cols() {
        let v = m.get(s, j);
        if !v.is_zero() {
            let new = m.get(t, j) + c * v;
            m.set(t, j, new);
        }
    }
}

/// `col_t += c * col_s`.
fn add_col(m: &mut Matrix, t: usize, s: usize, c: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, s);
        if !v.is_zero() {
            let new = m.get(i, t) + c * v;
            m.set(i, t, new);
        }
    }
}

struct Work {
    ring: Ring,
    lo: i64,
    /// `d[k]` is `d_{lo+k}`; `d[0]` is an empty placeholder.
    d: Vec<Matrix>,
    q: Vec<Matrix>,
    q_inv: Vec<Matrix>,
    alive: Vec<Vec<bool>>,
    /// `(i, top, bottom, unit)`: generator `top` of degree `i` hits `unit * bottom`.
    pairs: Vec<(i64, usize, usize, BigInt)>,
}

impl Work {
    fn idx(&self, i: i64) -> usize {
        (i - self.lo) as usize
    }

    fn has(&self, i: i64) -> bool {
        i >= self.lo && ((i - self.lo) as usize) < self.alive.len()
    }

    fn find_pivot(&self) -> Option<(i64, usize, usize)> {
        for k in 1..self.d.len() {
            let i = self.lo + k as i64;
            let m = &self.d[k];
            for r in 0..m.rows() {
                if !self.alive[k - 1][r] {
                    continue;
                }
                for c in 0..m.cols() {
                    if self.alive[k][c] && self.ring.is_unit(m.get(r, c)) {
                        return Some((i, r, c));
                    }
                }
            }
        }
        None
    }

    /// Cancels the unit entry at `(r, c)` of `d_i`.
    fn cancel(&mut self, i: i64, r: usize, c: usize) {
        let (k, kb) = (self.idx(i), self.idx(i - 1));
        let u = self.d[k].get(r, c).clone();
        let u_inv = self.ring.unit_inverse(&u);
        // column operations on d_i: basis change of X_i
        for col in 0..self.d[k].cols() {
            if col == c || self.d[k].get(r, col).is_zero() {
                continue;
            }
            let q = self.ring.reduce(self.d[k].get(r, col) * &u_inv);
            let neg = -&q;
            add_col(&mut self.d[k], col, c, &neg);
            add_col(&mut self.q[k], col, c, &neg);
            add_row(&mut self.q_inv[k], c, col, &q);
            if self.has(i + 1) && k + 1 < self.d.len() {
                add_row(&mut self.d[k + 1], c, col, &q);
            }
        }
        // row operations on d_i: basis change of X_{i-1}
        for row in 0..self.d[k].rows() {
            if row == r || self.d[k].get(row, c).is_zero() {
                continue;
            }
            let q = self.ring.reduce(self.d[k].get(row, c) * &u_inv);
            let neg = -&q;
            add_row(&mut self.d[k], row, r, &neg);
            add_row(&mut self.q_inv[kb], row, r, &neg);
            add_col(&mut self.q[kb], r, row, &q);
            if kb >= 1 {
                add_col(&mut self.d[kb], r, row, &q);
            }
        }
        self.alive[k][c] = false;
        self.alive[kb][r] = false;
        self.pairs.push((i, c, r, u));
    }

    fn kept(&self, i: i64) -> Vec<usize> {
        if !self.has(i) {
            return Vec::new();
        }
        self.alive[self.idx(i)].iter().enumerate().filter(|(_, a)| **a).map(|(j, _)| j).collect()
    }
}

/// Gaussian cancellation of unit entries of the differentials.
///
/// Each unit entry of `d_i` splits off an elementary summand; the remaining
/// generators carry a complex with no unit entries (over a field, zero
/// differentials). The result comes with an explicit homotopy equivalence.
pub fn minimize(x: &ChainComplex) -> Result<Minimization> {
    let ring = x.ring();
    if x.is_zero() {
        let id = ChainMap::identity(x);
        let h = Homotopy::reflexive(&id);
        return Ok(Minimization {
            complex: x.clone(),
            equivalence: HomotopyEquivalence { forth: id.clone(), back: id, back_forth: h.clone(), forth_back: h },
        });
    }
    let lo = x.min_deg();
    let degrees: Vec<i64> = x.degrees().collect();
    let mut w = Work {
        ring,
        lo,
        d: degrees
            .iter()
            .map(|&i| if i == lo { Matrix::zeros(ring, 0, x.rank(i)) } else { x.diff(i).into_owned() })
            .collect(),
        q: degrees.iter().map(|&i| Matrix::identity(ring, x.rank(i))).collect(),
        q_inv: degrees.iter().map(|&i| Matrix::identity(ring, x.rank(i))).collect(),
        alive: degrees.iter().map(|&i| vec![true; x.rank(i)]).collect(),
        pairs: Vec::new(),
    };
    while let Some((i, r, c)) = w.find_pivot() {
        w.cancel(i, r, c);
    }

    let kept: Vec<Vec<usize>> = degrees.iter().map(|&i| w.kept(i)).collect();
    let kept_at = |i: i64| if w.has(i) { kept[w.idx(i)].clone() } else { Vec::new() };
    let reduced = ChainComplex::from_fn(ring, lo, x.max_deg(), |i| kept_at(i).len(), |i| {
        w.d[w.idx(i)].select_rows(&kept_at(i - 1)).select_cols(&kept_at(i))
    });
    // from_fn trims, so index into the reduced complex by degree only
    let forth = ChainMap::new(x.clone(), reduced.clone(), |i| w.q_inv[w.idx(i)].select_rows(&kept_at(i)))?;
    let back = ChainMap::new(reduced.clone(), x.clone(), |i| w.q[w.idx(i)].select_cols(&kept_at(i)))?;

    // id - back∘forth = dH + Hd with H = Q h Q^{-1}, h(bottom) = u^{-1} top
    let back_forth = back.compose(&forth)?;
    let back_forth_h = Homotopy::new(back_forth, ChainMap::identity(x), |i| {
        let mut h = Matrix::zeros(ring, x.rank(i + 1), x.rank(i));
        for (deg, top, bottom, u) in &w.pairs {
            if *deg == i + 1 {
                h.set(*top, *bottom, ring.unit_inverse(u));
            }
        }
        if h.is_zero() {
            return h;
        }
        -&(&(&w.q[w.idx(i + 1)] * &h) * &w.q_inv[w.idx(i)])
    })?;
    let forth_back = forth.compose(&back)?;
    let forth_back_h = Homotopy::new(forth_back, ChainMap::identity(&reduced), |i| {
        Matrix::zeros(ring, reduced.rank(i + 1), reduced.rank(i))
    })?;
    Ok(Minimization {
        complex: reduced,
        equivalence: HomotopyEquivalence { forth, back, back_forth: back_forth_h, forth_back: forth_back_h },
    })
}

/// True when no differential has a unit entry.
pub fn is_minimal(x: &ChainComplex) -> bool {
    let ring = x.ring();
    x.diffs().iter().all(|d| d.entries().iter().all(|e| !ring.is_unit(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone, homology};

    const Z: Ring = Ring::Integers;

    #[test]
    fn cone_of_identity_vanishes() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 0, 1))).complex;
        let m = minimize(&c).unwrap();
        assert!(m.complex.is_zero());
        m.equivalence.verify().unwrap();
    }

    #[test]
    fn torsion_resolution_is_minimal() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let m = minimize(&x).unwrap();
        assert_eq!(m.complex, x);
    }

    #[test]
    fn over_f2_unit_cancels() {
        let f2 = Ring::PrimeField(2);
        let x = ChainComplex::two_term(1, Matrix::from_i64(f2, &[&[1]]));
        assert!(minimize(&x).unwrap().complex.is_zero());
    }

    #[test]
    fn mixed_entries() {
        let d2 = Matrix::from_i64(Z, &[&[1, 2], &[3, 4], &[0, 0]]);
        let d1 = Matrix::from_i64(Z, &[&[0, 0, 5]]);
        let x = ChainComplex::new(Z, 0, vec![1, 3, 2], vec![d1, d2]).unwrap();
        let m = minimize(&x).unwrap();
        assert!(is_minimal(&m.complex));
        assert_eq!(homology(&m.complex), homology(&x));
        m.equivalence.verify().unwrap();
    }
}
