use super::{in_w_geq, in_w_leq};
use crate::chain::{
    cone, is_quasi_iso, pi0_hom, solve_up_to_homotopy, ChainComplex, ChainMap, Homotopy,
};
use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, Matrix};

/// Distinguished triangle `A -> X -> B` with `A ∈ w≤n` and `B ∈ w≥n+1`,
/// realized as a degreewise split short exact sequence.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub n: i64,
    pub x: ChainComplex,
    pub a: ChainComplex,
    pub b: ChainComplex,
    pub i_map: ChainMap,
    pub p_map: ChainMap,
}

impl WeightDecomposition {
    /// Checks memberships, degreewise exactness, and that `cone(i) -> B`
    /// is a quasi-isomorphism.
    pub fn verify(&self) -> Result<()> {
        if self.i_map.source() != &self.a || self.i_map.target() != &self.x {
            return Err(Error::precondition("i_map does not go from A to X"));
        }
        if self.p_map.source() != &self.x || self.p_map.target() != &self.b {
            return Err(Error::precondition("p_map does not go from X to B"));
        }
        if !in_w_leq(&self.a, self.n) {
            return Err(Error::invariant(format!("A is not in w<={}", self.n)));
        }
        if !in_w_geq(&self.b, self.n + 1) {
            return Err(Error::invariant(format!("B is not in w>={}", self.n + 1)));
        }
        let ring = self.x.ring();
        let lo = self.x.min_deg().min(self.a.min_deg()).min(self.b.min_deg());
        let hi = self.x.max_deg().max(self.a.max_deg()).max(self.b.max_deg());
        for k in lo..=hi {
            let i = self.i_map.component(k);
            let p = self.p_map.component(k);
            if !(&*p * &i).is_zero() {
                return Err(Error::invariant(format!("p ∘ i is nonzero in degree {k}")));
            }
            if self.a.rank(k) + self.b.rank(k) != self.x.rank(k) {
                return Err(Error::invariant(format!("ranks do not add up in degree {k}")));
            }
            let split = |m: &Matrix, full: usize| {
                let d = elementary_divisors(m);
                d.len() == full && d.iter().all(|v| ring.is_unit(v))
            };
            if !split(&i, self.a.rank(k)) {
                return Err(Error::invariant(format!("i is not a split injection in degree {k}")));
            }
            if !split(&p, self.b.rank(k)) {
                return Err(Error::invariant(format!("p is not a split surjection in degree {k}")));
            }
        }
        if !is_quasi_iso(&self.cone_comparison()?) {
            return Err(Error::invariant("cone(i) is not equivalent to B"));
        }
        Ok(())
    }

    /// The map `cone(i) -> B`, `(a, x) ↦ p x`.
    pub fn cone_comparison(&self) -> Result<ChainMap> {
        let c = cone(&self.i_map).complex;
        let ring = self.x.ring();
        ChainMap::new(c, self.b.clone(), |k| {
            Matrix::zeros(ring, self.b.rank(k), self.a.rank(k - 1)).hstack(&self.p_map.component(k))
        })
    }
}

/// Brutal truncation: `A = σ_{≤n} X`, `B = σ_{≥n+1} X`.
pub fn weight_decompose(x: &ChainComplex, n: i64) -> Result<WeightDecomposition> {
    let ring = x.ring();
    let a = x.truncate_above(n);
    let b = x.truncate_below(n + 1);
    let i_map = ChainMap::new(a.clone(), x.clone(), |k| Matrix::identity(ring, x.rank(k)))?;
    let p_map = ChainMap::new(x.clone(), b.clone(), |k| Matrix::identity(ring, x.rank(k)))?;
    let dec = WeightDecomposition { n, x: x.clone(), a, b, i_map, p_map };
    dec.verify()?;
    Ok(dec)
}

/// Maps between decompositions at `n ≤ m` of the same complex.
#[derive(Clone, Debug)]
pub struct DecompositionComparison {
    /// `a : A_n -> A_m` with `i_m ∘ a ~ i_n`.
    pub a: ChainMap,
    pub a_witness: Homotopy,
    /// `b : B_n -> B_m` with `b ∘ p_n ~ p_m`.
    pub b: ChainMap,
    pub b_witness: Homotopy,
    /// No other choice of `a`, `b` up to homotopy.
    pub unique: bool,
}

/// Completes the identity of `X` to a map of triangles.
///
/// Existence holds because `Hom(A_n, B_m) = 0`; the maps are unique when
/// `Hom(ΣA_n, B_m) = 0`, which holds whenever `m ≥ n + 1`.
pub fn compare_decompositions(
    lower: &WeightDecomposition,
    upper: &WeightDecomposition,
) -> Result<DecompositionComparison> {
    if lower.x != upper.x {
        return Err(Error::precondition("decompositions of different complexes"));
    }
    if lower.n > upper.n {
        return Err(Error::precondition(format!("degrees {} > {}", lower.n, upper.n)));
    }
    let (a, a_witness) = solve_up_to_homotopy(&lower.a, &upper.a, None, Some(&upper.i_map), &lower.i_map)?
        .ok_or_else(|| Error::invariant("no map A_n -> A_m over X"))?;
    let (b, b_witness) = solve_up_to_homotopy(&lower.b, &upper.b, Some(&lower.p_map), None, &upper.p_map)?
        .ok_or_else(|| Error::invariant("no map B_n -> B_m under X"))?;
    let unique = pi0_hom(&lower.a.shift(1), &upper.b)?.is_trivial();
    Ok(DecompositionComparison { a, a_witness, b, b_witness, unique })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, nullhomotopy};
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    fn z2() -> ChainComplex {
        ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]))
    }

    #[test]
    fn pure_complex_decomposes_trivially() {
        let x = ChainComplex::free(Z, 0, 2);
        let d = weight_decompose(&x, 0).unwrap();
        assert_eq!(d.a, x);
        assert!(d.b.is_zero());
    }

    #[test]
    fn resolution_splits_into_its_terms() {
        let d = weight_decompose(&z2(), 0).unwrap();
        assert_eq!(d.a, ChainComplex::free(Z, 0, 1));
        assert_eq!(d.b, ChainComplex::free(Z, 1, 1));
    }

    #[test]
    fn below_support() {
        let d = weight_decompose(&z2(), -5).unwrap();
        assert!(d.a.is_zero());
        assert_eq!(d.b, z2());
    }

    #[test]
    fn bad_decomposition_rejected() {
        // A = X itself at n = 0 is not in w≤0 because of the torsion.
        let x = z2();
        let ring = x.ring();
        let dec = WeightDecomposition {
            n: 0,
            x: x.clone(),
            a: x.clone(),
            b: ChainComplex::zero(ring),
            i_map: ChainMap::identity(&x),
            p_map: ChainMap::zero(&x, &ChainComplex::zero(ring)).unwrap(),
        };
        assert!(dec.verify().is_err());
    }

    #[test]
    fn comparing_brutal_truncations() {
        let x = z2().direct_sum(&ChainComplex::free(Z, 2, 1)).unwrap();
        let d0 = weight_decompose(&x, 0).unwrap();
        let d1 = weight_decompose(&x, 1).unwrap();
        let cmp = compare_decompositions(&d0, &d1).unwrap();
        assert!(cmp.unique);
        cmp.a_witness.verify().unwrap();
        cmp.b_witness.verify().unwrap();
        let same = compare_decompositions(&d0, &d0).unwrap();
        // a ~ id when both decompositions agree
        let diff = same.a.sub(&ChainMap::identity(&d0.a)).unwrap();
        assert!(nullhomotopy(&diff).unwrap().is_some());
    }

    #[test]
    fn high_object_has_trivial_lower_piece() {
        let x = ChainComplex::free(Z, 3, 1);
        let d = weight_decompose(&x, 2).unwrap();
        assert!(homology(&d.a).is_zero());
        assert_eq!(homology(&d.b), homology(&x));
    }
}
