use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Ring};
use crate::error::{Error, Result};

/// `u * m * v == d` with `u`, `v` invertible and `d` diagonal.
///
/// Over Z the diagonal is non-negative and forms a divisibility chain;
/// over F_p it consists of ones followed by zeros.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub u_inv: Matrix,
    pub v_inv: Matrix,
    pub elementary_divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.elementary_divisors.len()
    }

    /// Solves `m x = b` using the stored transforms.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ring = self.d.ring();
        let y = self.u.mul_vec(b);
        let r = self.rank();
        let mut z = vec![BigInt::zero(); self.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < r {
                let di = &self.elementary_divisors[i];
                if !ring.divides(di, yi) {
                    return None;
                }
                z[i] = ring.exact_div(yi, di);
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}

/// Finitely generated module as free rank plus invariant factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModulePresentation {
    pub fn zero(ring: Ring) -> Self {
        ModulePresentation { ring, free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        ModulePresentation { ring, free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum, renormalized to invariant factors.
    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let torsion = if orders.is_empty() {
            Vec::new()
        } else {
            let diag = Matrix::diagonal(self.ring, &orders);
            elementary_divisors(&diag).into_iter().filter(|d| !d.is_one()).collect()
        };
        ModulePresentation { ring: self.ring, free_rank: self.free_rank + other.free_rank, torsion }
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let base = self.ring.label();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            k => parts.push(format!("{base}^{k}")),
        }
        for t in &self.torsion {
            parts.push(format!("{base}/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type Rows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn rows_to_matrix(ring: Ring, rows: usize, cols: usize, data: Rows) -> Matrix {
    Matrix::from_vec(ring, rows, cols, data.into_iter().flatten().collect()).expect("shape")
}

struct Transforms {
    u: Rows,
    u_inv: Rows,
    v: Rows,
    v_inv: Rows,
}

struct Reduction {
    ring: Ring,
    rows: usize,
    cols: usize,
    a: Rows,
    tr: Option<Transforms>,
}

impl Reduction {
    fn new(m: &Matrix, track: bool) -> Self {
        let (rows, cols) = m.shape();
        let tr = track.then(|| Transforms {
            u: identity_rows(rows),
            u_inv: identity_rows(rows),
            v: identity_rows(cols),
            v_inv: identity_rows(cols),
        });
        Reduction { ring: m.ring(), rows, cols, a: m.to_rows(), tr }
    }

    fn reduce_in_place(ring: Ring, x: &mut BigInt) {
        if ring.is_field() {
            *x = ring.reduce(std::mem::take(x));
        }
    }

    /// `target_row -= q * source_row` on a row-major block.
    fn row_axpy(ring: Ring, m: &mut Rows, target: usize, source: usize, q: &BigInt) {
        let (t, s) = if target < source {
            let (lo, hi) = m.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = m.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        for (x, y) in t.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
                Self::reduce_in_place(ring, x);
            }
        }
    }

    /// `col_target -= q * col_source` on a row-major block.
    fn col_axpy(ring: Ring, m: &mut Rows, target: usize, source: usize, q: &BigInt) {
        for row in m.iter_mut() {
            if !row[source].is_zero() {
                let delta = q * &row[source];
                row[target] -= delta;
                Self::reduce_in_place(ring, &mut row[target]);
            }
        }
    }

    fn add_rows(&mut self, target: usize, source: usize, q: &BigInt) {
        Self::row_axpy(self.ring, &mut self.a, target, source, q);
        if let Some(tr) = &mut self.tr {
            Self::row_axpy(self.ring, &mut tr.u, target, source, q);
            let neg = -q;
            Self::col_axpy(self.ring, &mut tr.u_inv, source, target, &neg);
        }
    }

    fn add_cols(&mut self, target: usize, source: usize, q: &BigInt) {
        Self::col_axpy(self.ring, &mut self.a, target, source, q);
        if let Some(tr) = &mut self.tr {
            Self::col_axpy(self.ring, &mut tr.v, target, source, q);
            let neg = -q;
            Self::row_axpy(self.ring, &mut tr.v_inv, source, target, &neg);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(tr) = &mut self.tr {
            tr.u.swap(i, j);
            for row in tr.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(tr) = &mut self.tr {
            for row in tr.v.iter_mut() {
                row.swap(i, j);
            }
            tr.v_inv.swap(i, j);
        }
    }

    /// Multiplies row `t` by the unit `s`.
    fn scale_row(&mut self, t: usize, s: &BigInt) {
        let ring = self.ring;
        for x in self.a[t].iter_mut() {
            *x = ring.reduce(&*x * s);
        }
        if let Some(tr) = &mut self.tr {
            for x in tr.u[t].iter_mut() {
                *x = ring.reduce(&*x * s);
            }
            let s_inv = ring.unit_inverse(s);
            for row in tr.u_inv.iter_mut() {
                row[t] = ring.reduce(&row[t] * &s_inv);
            }
        }
    }

    /// Smallest-size nonzero entry of the trailing submatrix; ties go to the
    /// lowest (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = &self.a[r][c];
                if x.is_zero() {
                    continue;
                }
                let size = self.ring.pivot_size(x);
                if best.as_ref().is_none_or(|(b, _, _)| size < *b) {
                    if size.is_one() {
                        return Some((r, c));
                    }
                    best = Some((size, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let n = self.rows.min(self.cols);
        let mut divisors = Vec::new();
        for t in 0..n {
            loop {
                let Some((pr, pc)) = self.find_pivot(t) else {
                    return divisors;
                };
                self.swap_rows(t, pr);
                self.swap_cols(t, pc);
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.ring.quotient(&self.a[i][t], &self.a[t][t]);
                    self.add_rows(i, t, &q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.ring.quotient(&self.a[t][j], &self.a[t][t]);
                    self.add_cols(j, t, &q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                if !self.ring.is_field() {
                    let pivot = self.a[t][t].clone();
                    let offender = (t + 1..self.rows)
                        .find(|&i| (t + 1..self.cols).any(|j| !self.ring.divides(&pivot, &self.a[i][j])));
                    if let Some(i) = offender {
                        self.add_rows(t, i, &-BigInt::one());
                        continue;
                    }
                }
                break;
            }
            let pivot = self.a[t][t].clone();
            match self.ring {
                Ring::Integers if pivot.is_negative() => self.scale_row(t, &-BigInt::one()),
                Ring::PrimeField(_) if !pivot.is_one() => {
                    let inv = self.ring.unit_inverse(&pivot);
                    self.scale_row(t, &inv)
                }
                _ => {}
            }
            divisors.push(self.a[t][t].clone());
        }
        divisors
    }
}

pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    let mut red = Reduction::new(m, true);
    let divisors = red.run();
    let tr = red.tr.take().expect("tracked");
    SmithForm {
        u: rows_to_matrix(ring, rows, rows, tr.u),
        d: rows_to_matrix(ring, rows, cols, red.a),
        v: rows_to_matrix(ring, cols, cols, tr.v),
        u_inv: rows_to_matrix(ring, rows, rows, tr.u_inv),
        v_inv: rows_to_matrix(ring, cols, cols, tr.v_inv),
        elementary_divisors: divisors,
    }
}

/// Nonzero diagonal of the Smith form, without tracking transforms.
pub fn elementary_divisors(m: &Matrix) -> Vec<BigInt> {
    Reduction::new(m, false).run()
}

pub fn rank(m: &Matrix) -> usize {
    elementary_divisors(m).len()
}

/// Columns form a basis of `{x : m x = 0}`; over Z the basis is saturated.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let snf = smith_normal_form(m);
    snf.v.col_range(snf.rank(), m.cols())
}

/// Presentation of `coker(m)` where `m` maps into a free module of rank `m.rows()`.
pub fn cokernel_invariants(m: &Matrix) -> ModulePresentation {
    let divisors = elementary_divisors(m);
    let ring = m.ring();
    let torsion = match ring {
        Ring::Integers => divisors.iter().filter(|d| !d.is_one()).cloned().collect(),
        Ring::PrimeField(_) => Vec::new(),
    };
    ModulePresentation { ring, free_rank: m.rows() - divisors.len(), torsion }
}

/// Solves `m x = b` over the base ring.
///
/// `Ok(None)` means the system has no solution; a dimension mismatch is an
/// `Err`.
pub fn solve(m: &Matrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), m.rows())));
    }
    let b: Vec<BigInt> = b.iter().map(|x| m.ring().reduce(x.clone())).collect();
    let snf = smith_normal_form(m);
    let x = snf.solve(&b);
    if let Some(x) = &x {
        if m.mul_vec(x) != b {
            return Err(Error::invariant("solve produced a non-solution"));
        }
    }
    Ok(x)
}

/// Solves `m X = b` column by column with one factorization.
pub fn solve_matrix(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.rows() != m.rows() {
        return Err(Error::Dimension(format!("right-hand side has {} rows, matrix has {}", b.rows(), m.rows())));
    }
    let ring = m.ring();
    if m.rows() == 0 || b.cols() == 0 {
        return Ok(Some(Matrix::zeros(ring, m.cols(), b.cols())));
    }
    let snf = smith_normal_form(m);
    solve_matrix_with(&snf, m, b)
}

fn solve_matrix_with(snf: &SmithForm, m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let ring = m.ring();
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match snf.solve(&b.column(j)) {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    let x = Matrix::from_fn(ring, m.cols(), b.cols(), |r, c| cols[c][r].clone());
    if &(m * &x) != b {
        return Err(Error::invariant("matrix solve produced a non-solution"));
    }
    Ok(Some(x))
}

/// `s` with `m * s == I`, if one exists over the ring.
pub fn right_inverse(m: &Matrix) -> Option<Matrix> {
    let id = Matrix::identity(m.ring(), m.rows());
    solve_matrix(m, &id).expect("square identity right-hand side")
}

/// `s` with `s * m == I`, if one exists over the ring.
pub fn left_inverse(m: &Matrix) -> Option<Matrix> {
    right_inverse(&m.transpose()).map(|s| s.transpose())
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    right_inverse(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Ring::Integers, rows)
    }

    fn check(m: &Matrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
        assert!((&s.v * &s.v_inv).is_identity());
        s
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check(&Matrix::identity(Ring::Integers, 2));
        assert!(s.d.is_identity());
        assert!(s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn two_four_six_eight() {
        // Oracle: gcd of entries is 2 and |det| = 8, so the divisors are 2 and 8/2 = 4.
        let s = check(&z(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.elementary_divisors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_matrix() {
        let m = Matrix::zeros(Ring::Integers, 0, 3);
        let s = check(&m);
        assert_eq!(s.d.shape(), (0, 3));
        assert!(s.elementary_divisors.is_empty());
    }

    #[test]
    fn field_form_is_zero_one() {
        let m = Matrix::from_i64(Ring::PrimeField(5), &[&[2, 4], &[1, 2], &[3, 3]]);
        let s = check(&m);
        assert!(s.d.entries().iter().all(|x| x.is_zero() || x.is_one()));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn kernel_of_two_minus_one() {
        let k = kernel_basis(&z(&[&[2, -1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        let expected = [BigInt::from(1), BigInt::from(2)];
        let negated: Vec<BigInt> = expected.iter().map(|x| -x).collect();
        assert!(col == expected || col == negated, "{col:?}");
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(kernel_basis(&Matrix::identity(Ring::Integers, 3)).cols(), 0);
        let k = kernel_basis(&Matrix::zeros(Ring::Integers, 2, 2));
        assert_eq!(k.cols(), 2);
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn cokernels() {
        let c = cokernel_invariants(&z(&[&[2]]));
        assert_eq!((c.free_rank, c.torsion.clone()), (0, vec![BigInt::from(2)]));
        let c = cokernel_invariants(&z(&[&[1]]));
        assert!(c.is_zero());
        let c = cokernel_invariants(&Matrix::zeros(Ring::Integers, 3, 0));
        assert_eq!(c.free_rank, 3);
        assert!(c.torsion.is_empty());
    }

    #[test]
    fn solving() {
        let b = vec![BigInt::from(3), BigInt::from(-7)];
        assert_eq!(solve(&Matrix::identity(Ring::Integers, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&z(&[&[2]]), &[BigInt::from(3)]).unwrap(), None);
        let f5 = Matrix::from_i64(Ring::PrimeField(5), &[&[2]]);
        assert_eq!(solve(&f5, &[BigInt::from(3)]).unwrap(), Some(vec![BigInt::from(4)]));
        assert!(matches!(solve(&z(&[&[2]]), &[]), Err(Error::Dimension(_))));
    }

    #[test]
    fn right_inverses() {
        assert!(right_inverse(&Matrix::identity(Ring::Integers, 3)).unwrap().is_identity());
        let s = right_inverse(&z(&[&[1, 0]])).unwrap();
        assert_eq!(&z(&[&[1, 0]]) * &s, Matrix::identity(Ring::Integers, 1));
        assert!(right_inverse(&z(&[&[2]])).is_none());
        assert!(right_inverse(&z(&[&[2, 3]])).is_some());
    }

    #[test]
    fn presentation_sum_renormalizes() {
        let a = ModulePresentation { ring: Ring::Integers, free_rank: 1, torsion: vec![BigInt::from(2)] };
        let b = ModulePresentation { ring: Ring::Integers, free_rank: 0, torsion: vec![BigInt::from(3)] };
        let s = a.direct_sum(&b);
        assert_eq!(s.torsion, vec![BigInt::from(6)]);
        assert_eq!(s.to_string(), "Z + Z/6");
    }
}
