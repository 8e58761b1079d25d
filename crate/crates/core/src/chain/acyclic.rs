use super::{homology, ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel_basis, solve_matrix, Matrix};

/// Elementary acyclic summand `R^rank --id--> R^rank` in degrees `top, top - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementaryPiece {
    pub top: i64,
    pub rank: usize,
}

/// Decomposition of an acyclic complex into elementary pieces.
#[derive(Clone, Debug)]
pub struct AcyclicSplitting {
    pub pieces: Vec<ElementaryPiece>,
    /// `P_i`, whose columns are the adapted basis of `X_i`: cycles first,
    /// then the chosen complement.
    pub change_of_basis: Vec<(i64, Matrix)>,
    /// Homotopy `id ~ 0`.
    pub contraction: Homotopy,
}

impl AcyclicSplitting {
    /// The direct sum of the elementary pieces, written in the adapted bases.
    pub fn reassemble(&self, x: &ChainComplex) -> ChainComplex {
        let ring = x.ring();
        let cycles = |i: i64| self.pieces.iter().find(|p| p.top == i + 1).map_or(0, |p| p.rank);
        ChainComplex::from_fn(ring, x.min_deg(), x.max_deg(), |i| x.rank(i), |i| {
            // columns of degree i: [cycles_i | complement_i]; complement maps onto cycles_{i-1}
            let (zi, zb) = (cycles(i), cycles(i - 1));
            let mut d = Matrix::zeros(ring, x.rank(i - 1), x.rank(i));
            for k in 0..zb {
                d.set(k, zi + k, 1.into());
            }
            d
        })
    }

    /// Checks `d_i P_i = P_{i-1} D_i` for the reassembled differential `D`
    /// and that every `P_i` is invertible.
    pub fn verify(&self, x: &ChainComplex) -> Result<()> {
        let model = self.reassemble(x);
        let p = |i: i64| {
            self.change_of_basis
                .iter()
                .find(|(d, _)| *d == i)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| Matrix::identity(x.ring(), x.rank(i)))
        };
        for i in x.degrees() {
            if inverse(&p(i)).is_none() {
                return Err(Error::invariant(format!("change of basis in degree {i} is not invertible")));
            }
            if &*x.diff(i) * &p(i) != &p(i - 1) * &model.diff(i) {
                return Err(Error::invariant(format!("adapted basis does not split d_{i}")));
            }
        }
        let total: usize = self.pieces.iter().map(|p| 2 * p.rank).sum();
        if total != x.total_rank() {
            return Err(Error::invariant("elementary pieces do not account for every generator"));
        }
        self.contraction.verify()
    }
}

/// Splits an acyclic complex into elementary pieces and contracts it.
///
/// Works upward from the bottom degree: `s_i` solves
/// `d_{i+1} s_i = id - s_{i-1} d_i`, which is solvable because the right
/// side lands in the cycles, which are boundaries.
pub fn split_acyclic(x: &ChainComplex) -> Result<AcyclicSplitting> {
    let h = homology(x);
    if let Some((degree, group)) = h.iter().next() {
        return Err(Error::NotAcyclic { degree, group: group.clone() });
    }
    let ring = x.ring();
    let mut s: Vec<Matrix> = Vec::new();
    let s_at = |s: &Vec<Matrix>, i: i64| -> Matrix {
        let idx = i - x.min_deg();
        if idx >= 0 && (idx as usize) < s.len() {
            s[idx as usize].clone()
        } else {
            Matrix::zeros(ring, x.rank(i + 1), x.rank(i))
        }
    };
    for i in x.degrees() {
        let proj = &Matrix::identity(ring, x.rank(i)) - &(&s_at(&s, i - 1) * &x.diff(i));
        let si = solve_matrix(&x.diff(i + 1), &proj)?
            .ok_or_else(|| Error::invariant(format!("acyclic complex has no contraction at degree {i}")))?;
        s.push(si);
    }
    let id = ChainMap::identity(x);
    let zero = ChainMap::zero(x, x)?;
    let contraction = Homotopy::new(id, zero, |i| s_at(&s, i))?;

    let mut pieces = Vec::new();
    let mut change_of_basis = Vec::new();
    let mut prev_cycles: Option<Matrix> = None;
    for i in x.degrees() {
        let cycles = kernel_basis(&x.diff(i));
        let complement = match &prev_cycles {
            Some(z) => &s_at(&s, i - 1) * z,
            None => Matrix::zeros(ring, x.rank(i), 0),
        };
        if complement.cols() > 0 {
            pieces.push(ElementaryPiece { top: i, rank: complement.cols() });
        }
        change_of_basis.push((i, cycles.hstack(&complement)));
        prev_cycles = Some(cycles);
    }
    let split = AcyclicSplitting { pieces, change_of_basis, contraction };
    split.verify(x)?;
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cone;
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn zero_complex_has_no_pieces() {
        let split = split_acyclic(&ChainComplex::zero(Z)).unwrap();
        assert!(split.pieces.is_empty());
    }

    #[test]
    fn cone_of_identity() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 0, 1))).complex;
        let split = split_acyclic(&c).unwrap();
        assert_eq!(split.pieces, vec![ElementaryPiece { top: 1, rank: 1 }]);
    }

    #[test]
    fn two_separated_pieces() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 0, 1))).complex;
        let x = c.direct_sum(&c.shift(2)).unwrap();
        let split = split_acyclic(&x).unwrap();
        assert_eq!(split.pieces.len(), 2);
        let total: usize = split.pieces.iter().map(|p| 2 * p.rank).sum();
        assert_eq!(total, x.total_rank());
        assert!(split.reassemble(&x).validate().is_ok());
    }

    #[test]
    fn rejects_nonacyclic() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        match split_acyclic(&x) {
            Err(Error::NotAcyclic { degree, .. }) => assert_eq!(degree, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unimodular_but_not_diagonal() {
        let d = Matrix::from_i64(Z, &[&[2, 3], &[1, 2]]);
        let x = ChainComplex::two_term(5, d);
        let split = split_acyclic(&x).unwrap();
        assert_eq!(split.pieces, vec![ElementaryPiece { top: 5, rank: 2 }]);
    }
}
