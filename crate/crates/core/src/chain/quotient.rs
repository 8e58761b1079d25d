use super::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Matrix};

/// Quotient `Y / X` by a degreewise split monomorphism `ι : X -> Y`.
#[derive(Clone, Debug)]
pub struct SplitQuotient {
    pub complex: ChainComplex,
    pub projection: ChainMap,
    /// Degreewise sections `s_i : Q_i -> Y_i` of the projection; not chain maps.
    sections: Vec<(i64, Matrix)>,
}

impl SplitQuotient {
    pub fn section(&self, i: i64) -> Matrix {
        self.sections
            .iter()
            .find(|(d, _)| *d == i)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Matrix::zeros(self.complex.ring(), self.projection.source().rank(i), self.complex.rank(i)))
    }
}

/// Checks that every component of `iota` is a split injection.
pub fn is_degreewise_split_mono(iota: &ChainMap) -> bool {
    let x = iota.source();
    x.degrees().all(|i| {
        let m = iota.component(i);
        let divisors = crate::linalg::elementary_divisors(&m);
        divisors.len() == m.cols() && divisors.iter().all(|d| m.ring().is_unit(d))
    })
}

/// Builds the quotient from an SNF of each component: `U ι V = [I; 0]`, the
/// projection is the lower block of `U` and the section the matching block
/// of `U^{-1}`.
pub fn cokernel_of_split_mono(iota: &ChainMap) -> Result<SplitQuotient> {
    let (x, y) = (iota.source(), iota.target());
    let ring = y.ring();
    if y.is_zero() {
        if !x.is_zero() {
            return Err(Error::precondition("map into the zero complex is not injective"));
        }
        let projection = ChainMap::zero(y, y)?;
        return Ok(SplitQuotient { complex: y.clone(), projection, sections: Vec::new() });
    }
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    for i in y.degrees() {
        let m = iota.component(i);
        let snf = smith_normal_form(&m);
        let a = m.cols();
        if snf.rank() != a || !snf.elementary_divisors.iter().all(|d| ring.is_unit(d)) {
            return Err(Error::precondition(format!("component {i} is not a split monomorphism")));
        }
        proj.push(snf.u.row_range(a, y.rank(i)));
        sect.push(snf.u_inv.col_range(a, y.rank(i)));
    }
    let lo = y.min_deg();
    let at = |i: i64| (i - lo) as usize;
    let q = ChainComplex::from_fn(ring, lo, y.max_deg(), |i| y.rank(i) - x.rank(i), |i| {
        &(&proj[at(i - 1)] * &y.diff(i)) * &sect[at(i)]
    });
    q.validate().map_err(|e| Error::invariant(format!("quotient complex is not a complex: {e}")))?;
    let in_range = |i: i64| i >= lo && i <= y.max_deg();
    let projection = ChainMap::new(y.clone(), q.clone(), |i| {
        if in_range(i) { proj[at(i)].clone() } else { Matrix::zeros(ring, q.rank(i), y.rank(i)) }
    })
    .map_err(|e| Error::invariant(format!("quotient projection is not a chain map: {e}")))?;
    let sections = y.degrees().filter(|&i| q.rank(i) > 0).map(|i| (i, sect[at(i)].clone())).collect();
    Ok(SplitQuotient { complex: q, projection, sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone, cylinder, homology};
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn cylinder_mod_source_is_cone() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let f = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[3]])).unwrap();
        let cyl = cylinder(&f).unwrap();
        let q = cokernel_of_split_mono(&cyl.inclusion).unwrap();
        assert_eq!(homology(&q.complex), homology(&cone(&f).complex));
        assert_eq!(q.complex.ranks(), cone(&f).complex.ranks());
    }

    #[test]
    fn non_split_rejected() {
        let x = ChainComplex::free(Z, 0, 1);
        let twice = ChainMap::new(x.clone(), x, |_| Matrix::from_i64(Z, &[&[2]])).unwrap();
        assert!(matches!(cokernel_of_split_mono(&twice), Err(Error::Precondition(_))));
        assert!(!is_degreewise_split_mono(&twice));
    }
}
