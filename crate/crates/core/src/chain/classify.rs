use num_bigint::BigInt;

use super::{homology, ChainComplex, ChainMap, Homotopy, HomotopyEquivalence, HomologyProfile};
use crate::error::{Error, Result};
use crate::linalg::{inverse, smith_normal_form, solve_matrix, Matrix};

/// Homotopy type of a complex over a hereditary ring.
///
/// `model` is the standard complex built from `profile` alone: in each degree
/// `i`, first the generators killing the torsion of `H_{i-1}`, then the
/// torsion generators of `H_i`, then its free part.
#[derive(Clone, Debug)]
pub struct Classification {
    pub profile: HomologyProfile,
    pub model: ChainComplex,
    /// `forth : X -> model`, `back : model -> X`.
    pub equivalence: HomotopyEquivalence,
}

/// The standard complex with the given homology.
pub fn standard_model(profile: &HomologyProfile) -> ChainComplex {
    let ring = profile.ring();
    let (Some(lo), Some(hi)) = (profile.min_degree(), profile.max_degree()) else {
        return ChainComplex::zero(ring);
    };
    let torsion = |i: i64| profile.get(i).torsion;
    let rank = |i: i64| {
        let g = profile.get(i);
        torsion(i - 1).len() + g.torsion.len() + g.free_rank
    };
    ChainComplex::from_fn(ring, lo, hi + 1, rank, |i| {
        let t = torsion(i - 1);
        let mut d = Matrix::zeros(ring, rank(i - 1), rank(i));
        let offset = torsion(i - 2).len();
        for (j, tj) in t.iter().enumerate() {
            d.set(offset + j, j, tj.clone());
        }
        d
    })
}

/// Diagonalizes every differential at once.
///
/// Per degree, an SNF of `d_i` splits `X_i = C_i ⊕ K_i` with `K_i = ker d_i`;
/// `d_{i+1}` written from `C_{i+1}` into `K_i` coordinates is diagonalized by
/// a second SNF, giving `X ≅ ⊕ [R -t-> R] ⊕ free`.
pub fn homotopy_classify(x: &ChainComplex) -> Result<Classification> {
    let ring = x.ring();
    let profile = homology(x);
    let model = standard_model(&profile);
    if x.is_zero() {
        let id = ChainMap::identity(x);
        let h = Homotopy::reflexive(&id);
        return Ok(Classification {
            profile,
            model,
            equivalence: HomotopyEquivalence { forth: id.clone(), back: id, back_forth: h.clone(), forth_back: h },
        });
    }
    let (lo, hi) = (x.min_deg(), x.max_deg());
    let n = (hi - lo + 1) as usize;
    let at = |i: i64| (i - lo) as usize;

    // complement C_i and kernel K_i of d_i
    let mut comp = Vec::with_capacity(n);
    let mut kern = Vec::with_capacity(n);
    for i in lo..=hi {
        let snf = smith_normal_form(&x.diff(i));
        let r = snf.rank();
        comp.push(snf.v.col_range(0, r));
        kern.push(snf.v.col_range(r, x.rank(i)));
    }
    // M_i : C_i -> K_{i-1} coordinates, diagonalized as U'_i M_i V'_i = D'_i
    let mut c_basis: Vec<Matrix> = comp.clone();
    let mut k_basis: Vec<Matrix> = kern.clone();
    let mut divisors: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for i in lo + 1..=hi {
        let image = &*x.diff(i) * &comp[at(i)];
        let m = solve_matrix(&kern[at(i - 1)], &image)?
            .ok_or_else(|| Error::invariant(format!("image of d_{i} is not inside the cycles")))?;
        let snf = smith_normal_form(&m);
        if snf.rank() != m.cols() {
            return Err(Error::invariant(format!("d_{i} restricted to its complement is not injective")));
        }
        c_basis[at(i)] = &comp[at(i)] * &snf.v;
        k_basis[at(i - 1)] = &kern[at(i - 1)] * &snf.u_inv;
        divisors[at(i)] = snf.elementary_divisors;
    }
    let units = |i: i64| -> usize {
        if i < lo || i > hi {
            0
        } else {
            divisors[at(i)].iter().filter(|d| ring.is_unit(d)).count()
        }
    };
    // adapted basis P_i = [C_i V' | K_i U'^{-1}]
    let p: Vec<Matrix> = (lo..=hi).map(|i| c_basis[at(i)].hstack(&k_basis[at(i)])).collect();
    let p_inv: Vec<Matrix> = p
        .iter()
        .map(|m| inverse(m).ok_or_else(|| Error::invariant("adapted basis is not invertible")))
        .collect::<Result<_>>()?;
    let kept = |i: i64| -> Vec<usize> {
        if i < lo || i > hi {
            return Vec::new();
        }
        let c = c_basis[at(i)].cols();
        let mut idx: Vec<usize> = (units(i)..c).collect();
        idx.extend(c + units(i + 1)..x.rank(i));
        idx
    };
    let forth = ChainMap::new(x.clone(), model.clone(), |i| {
        if i < lo || i > hi {
            return Matrix::zeros(ring, model.rank(i), 0);
        }
        p_inv[at(i)].select_rows(&kept(i))
    })
    .map_err(|e| Error::invariant(format!("classification does not match the standard model: {e}")))?;
    let back = ChainMap::new(model.clone(), x.clone(), |i| {
        if i < lo || i > hi {
            return Matrix::zeros(ring, 0, model.rank(i));
        }
        p[at(i)].select_cols(&kept(i))
    })
    .map_err(|e| Error::invariant(format!("classification does not match the standard model: {e}")))?;
    // in adapted coordinates the dropped pieces are [R -1-> R]; contract them
    let back_forth = Homotopy::new(back.compose(&forth)?, ChainMap::identity(x), |i| {
        let mut h = Matrix::zeros(ring, x.rank(i + 1), x.rank(i));
        if i < lo || i + 1 > hi {
            return h;
        }
        let c_here = c_basis[at(i)].cols();
        for j in 0..units(i + 1) {
            let u = &divisors[at(i + 1)][j];
            h.set(j, c_here + j, -ring.unit_inverse(u));
        }
        &(&p[at(i + 1)] * &h) * &p_inv[at(i)]
    })?;
    let forth_back = Homotopy::new(forth.compose(&back)?, ChainMap::identity(&model), |i| {
        Matrix::zeros(ring, model.rank(i + 1), model.rank(i))
    })
    .map_err(|e| Error::invariant(format!("model is not a retract: {e}")))?;
    Ok(Classification {
        profile,
        model,
        equivalence: HomotopyEquivalence { forth, back, back_forth, forth_back },
    })
}

/// An explicit equivalence `X ≃ Y` when the two have the same homology.
pub fn equivalence_between(x: &ChainComplex, y: &ChainComplex) -> Result<Option<HomotopyEquivalence>> {
    x.check_ring(y)?;
    let cx = homotopy_classify(x)?;
    let cy = homotopy_classify(y)?;
    if cx.profile != cy.profile {
        return Ok(None);
    }
    cx.equivalence.then(&cy.equivalence.inverse()).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cone;
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn resolution_of_z2_is_its_own_model() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let c = homotopy_classify(&x).unwrap();
        assert_eq!(c.model, x);
        c.equivalence.verify().unwrap();
    }

    #[test]
    fn conjugated_resolution() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let y = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[1, 0], &[0, 2]]));
        let y = y.conjugate(
            |i| if i == 0 { Matrix::from_i64(Z, &[&[1, 1], &[0, 1]]) } else { Matrix::from_i64(Z, &[&[2, 1], &[1, 1]]) },
            |i| if i == 0 { Matrix::from_i64(Z, &[&[1, -1], &[0, 1]]) } else { Matrix::from_i64(Z, &[&[1, -1], &[-1, 2]]) },
        );
        let e = equivalence_between(&x, &y).unwrap().unwrap();
        e.verify().unwrap();
    }

    #[test]
    fn different_degrees_are_not_equivalent() {
        let a = ChainComplex::free(Z, 0, 1);
        let b = ChainComplex::free(Z, 1, 1);
        assert!(equivalence_between(&a, &b).unwrap().is_none());
    }

    #[test]
    fn acyclic_goes_to_zero() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 3, 2))).complex;
        let cl = homotopy_classify(&c).unwrap();
        assert!(cl.model.is_zero());
        cl.equivalence.verify().unwrap();
    }

    #[test]
    fn longer_complex() {
        let d2 = Matrix::from_i64(Z, &[&[2, 0], &[0, 0], &[0, 6]]);
        let d1 = Matrix::from_i64(Z, &[&[0, 1, 0]]);
        let x = ChainComplex::new(Z, 0, vec![1, 3, 2], vec![d1, d2]).unwrap();
        let cl = homotopy_classify(&x).unwrap();
        cl.equivalence.verify().unwrap();
        assert_eq!(homology(&cl.model), cl.profile);
    }
}
