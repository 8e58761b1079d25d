use super::{in_heart, in_w_eq};
use crate::chain::{cone, homotopy_classify, solve_up_to_homotopy, ChainComplex, ChainMap, Homotopy, HomotopyEquivalence};
use crate::error::{Error, Result};

/// Retraction `g` of a heart ingression `f`, with `g ∘ f ~ id`.
#[derive(Clone, Debug)]
pub struct HeartSplitting {
    pub retraction: ChainMap,
    pub witness: Homotopy,
}

/// A map in the heart with cofiber in the heart splits up to homotopy.
pub fn heart_split(f: &ChainMap) -> Result<HeartSplitting> {
    let (x, y) = (f.source(), f.target());
    if !in_heart(x) || !in_heart(y) {
        return Err(Error::precondition("source and target must lie in the heart"));
    }
    if !in_heart(&cone(f).complex) {
        return Err(Error::precondition("cofiber is not in the heart"));
    }
    let id = ChainMap::identity(x);
    let (retraction, witness) = solve_up_to_homotopy(y, x, Some(f), None, &id)?
        .ok_or_else(|| Error::invariant("heart ingression has no retraction up to homotopy"))?;
    Ok(HeartSplitting { retraction, witness })
}

/// A pure complex replaced by a free module in one degree.
#[derive(Clone, Debug)]
pub struct Strictified {
    pub degree: i64,
    pub rank: usize,
    pub free: ChainComplex,
    /// `forth : X -> free`.
    pub equivalence: HomotopyEquivalence,
}

/// `X ∈ C_{w=n}` is equivalent to `R^r` in degree `n`.
pub fn strictify_heart(x: &ChainComplex, n: i64) -> Result<Strictified> {
    if !in_w_eq(x, n) {
        return Err(Error::precondition(format!("complex is not of pure weight {n}")));
    }
    let c = homotopy_classify(x)?;
    let rank = c.profile.get(n).free_rank;
    let free = ChainComplex::free(x.ring(), n, rank);
    if c.model != free {
        return Err(Error::invariant("standard model of a pure complex is not a free module"));
    }
    Ok(Strictified { degree: n, rank, free, equivalence: c.equivalence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Ring};

    const Z: Ring = Ring::Integers;

    #[test]
    fn identity_splits() {
        let x = ChainComplex::free(Z, 0, 2);
        let s = heart_split(&ChainMap::identity(&x)).unwrap();
        assert_eq!(s.retraction.compose(&ChainMap::identity(&x)).unwrap(), ChainMap::identity(&x));
    }

    #[test]
    fn conjugated_inclusion() {
        let x = ChainComplex::free(Z, 0, 1);
        let y = ChainComplex::free(Z, 0, 3);
        let f = ChainMap::new(x, y, |_| Matrix::from_i64(Z, &[&[2], &[1], &[3]])).unwrap();
        let s = heart_split(&f).unwrap();
        s.witness.verify().unwrap();
        assert_eq!(s.retraction.compose(&f).unwrap(), ChainMap::identity(f.source()));
    }

    #[test]
    fn non_split_inclusion_rejected() {
        let x = ChainComplex::free(Z, 0, 1);
        let twice = ChainMap::new(x.clone(), x, |_| Matrix::from_i64(Z, &[&[2]])).unwrap();
        assert!(matches!(heart_split(&twice), Err(Error::Precondition(_))));
    }

    #[test]
    fn strictify_drops_acyclic_parts() {
        let e = ChainComplex::elementary(Z, 1, 1);
        let x = e.direct_sum(&ChainComplex::free(Z, 0, 1)).unwrap();
        let s = strictify_heart(&x, 0).unwrap();
        assert_eq!(s.rank, 1);
        s.equivalence.verify().unwrap();
        let acyclic = strictify_heart(&e, 4).unwrap();
        assert_eq!(acyclic.rank, 0);
    }
}
