use super::{in_w_geq, in_w_leq};
use crate::chain::{pi0_hom, ChainComplex, HomotopyClassGroup};
use crate::error::{Error, Result};
use crate::linalg::Ring;

/// `π_0 Hom(X, Y)` for `X ∈ w≤n`, `Y ∈ w≥n+1`; `Ok(None)` when it vanishes,
/// otherwise the offending group.
pub fn check_orthogonality(x: &ChainComplex, y: &ChainComplex, n: i64) -> Result<Option<HomotopyClassGroup>> {
    if !in_w_leq(x, n) {
        return Err(Error::precondition(format!("source is not in w<={n}")));
    }
    if !in_w_geq(y, n + 1) {
        return Err(Error::precondition(format!("target is not in w>={}", n + 1)));
    }
    let g = pi0_hom(x, y)?;
    Ok(if g.is_trivial() { None } else { Some(g) })
}

/// A nonvanishing `π_0 Hom(S, Σ^n S')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativityFailure {
    pub source: usize,
    pub target: usize,
    pub shift: i64,
    pub group: HomotopyClassGroup,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NegativityVerdict {
    pub failures: Vec<NegativityFailure>,
}

impl NegativityVerdict {
    pub fn is_negative(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `π_0 Hom(S, Σ^n S') = 0` for all `n > 0` and all ordered pairs.
///
/// The degree-zero part of the hom-complex vanishes once
/// `n > max(S) - min(S')`, so only finitely many shifts are tested.
pub fn check_negative(objects: &[ChainComplex]) -> Result<NegativityVerdict> {
    if let Some(first) = objects.first() {
        let ring: Ring = first.ring();
        if let Some(bad) = objects.iter().find(|o| o.ring() != ring) {
            return Err(Error::RingMismatch(ring.label(), bad.ring().label()));
        }
    }
    let mut failures = Vec::new();
    for (si, s) in objects.iter().enumerate() {
        for (ti, t) in objects.iter().enumerate() {
            if s.is_zero() || t.is_zero() {
                continue;
            }
            for n in 1..=(s.max_deg() - t.min_deg()) {
                let group = pi0_hom(s, &t.shift(n))?;
                if !group.is_trivial() {
                    failures.push(NegativityFailure { source: si, target: ti, shift: n, group });
                }
            }
        }
    }
    Ok(NegativityVerdict { failures })
}

/// `π_0 Hom(X, R[i])` over the degree window of `X` widened by one.
pub fn detects_nonzero(x: &ChainComplex) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    for i in x.min_deg() - 1..=x.max_deg() + 1 {
        if !pi0_hom(x, &ChainComplex::free(x.ring(), i, 1))?.is_trivial() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    const Z: Ring = Ring::Integers;

    #[test]
    fn orthogonality_examples() {
        let pt = ChainComplex::free(Z, 0, 1);
        assert!(check_orthogonality(&pt, &ChainComplex::free(Z, 1, 1), 0).unwrap().is_none());
        let x = ChainComplex::two_term(0, Matrix::from_i64(Z, &[&[2]]));
        assert!(check_orthogonality(&x, &ChainComplex::free(Z, 1, 1), 0).unwrap().is_none());
        assert!(matches!(check_orthogonality(&pt, &pt, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn negativity_examples() {
        let pt = ChainComplex::free(Z, 0, 1);
        assert!(check_negative(std::slice::from_ref(&pt)).unwrap().is_negative());
        assert!(check_negative(&[]).unwrap().is_negative());
        let v = check_negative(&[pt, ChainComplex::free(Z, 1, 1)]).unwrap();
        assert!(!v.is_negative());
        assert_eq!(v.failures[0].shift, 1);
    }

    #[test]
    fn detection() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        assert!(detects_nonzero(&x).unwrap());
        assert!(!detects_nonzero(&ChainComplex::elementary(Z, 1, 2)).unwrap());
    }
}
