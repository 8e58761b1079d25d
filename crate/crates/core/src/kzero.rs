//! `K_0` bookkeeping: the class of a complex is its Euler characteristic,
//! computed from ranks, from homology, or from the cells of a filtration.

use std::fmt;
use std::ops::{Add, Neg};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cell::{skeletal_filtration, CellFiltration};
use crate::chain::{homology, ChainComplex};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Matrix};
use crate::weight::strictify_heart;

/// A class in `K_0 ≅ Z`, recorded by rank.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K0Class(pub i64);

impl Add for K0Class {
    type Output = K0Class;
    fn add(self, rhs: K0Class) -> K0Class {
        K0Class(self.0 + rhs.0)
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class(-self.0)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_char(x: &ChainComplex) -> K0Class {
    K0Class(x.euler_characteristic())
}

pub fn euler_char_homology(x: &ChainComplex) -> K0Class {
    K0Class(homology(x).euler_characteristic())
}

/// `Σ_k (-1)^k rank(Q_k)`, each level quotient strictified to a free module.
pub fn k0_via_filtration(f: &CellFiltration) -> Result<K0Class> {
    f.verify()?;
    let mut total = 0;
    for level in f.levels() {
        let s = strictify_heart(&level.quotient, level.degree)?;
        total += sign(level.degree) * s.rank as i64;
    }
    Ok(K0Class(total))
}

/// Free resolution `F_1 -> F_0` of the module presented by `relations`
/// (columns are relations among the `rows` generators).
///
/// The image of the relations is free, and `R V` restricted to the first
/// `rank` columns is a basis of it.
pub fn resolve_module(relations: &Matrix) -> ChainComplex {
    let ring = relations.ring();
    let snf = smith_normal_form(relations);
    let r = snf.rank();
    let d1 = relations * &snf.v.col_range(0, r);
    ChainComplex::from_fn(ring, 0, 1, |i| if i == 0 { relations.rows() } else { r }, |_| d1.clone())
}

/// Outcome of comparing the three computations of `[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BondarkoReport {
    pub euler_char: K0Class,
    pub euler_char_homology: K0Class,
    /// Value from the skeletal filtration, then from each refiltration.
    pub via_filtrations: Vec<K0Class>,
}

impl BondarkoReport {
    pub fn agrees(&self) -> bool {
        self.euler_char == self.euler_char_homology && self.via_filtrations.iter().all(|v| *v == self.euler_char)
    }
}

/// Compares `χ(X)`, `χ(H_* X)` and the filtration count over the skeletal
/// filtration of `X` and of `trials` conjugates of `X ⊕ E`, `E` a random
/// elementary acyclic complex.
pub fn check_bondarko_k0(x: &ChainComplex, trials: usize, seed: u64) -> Result<BondarkoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut via = vec![k0_via_filtration(&skeletal_filtration(x))?];
    for _ in 0..trials {
        let y = crate::fuzz::refiltration_source(x, &mut rng)?;
        via.push(k0_via_filtration(&skeletal_filtration(&y))?);
    }
    let report = BondarkoReport { euler_char: euler_char(x), euler_char_homology: euler_char_homology(x), via_filtrations: via };
    if !report.agrees() {
        return Err(Error::invariant(format!("K_0 computations disagree: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone, ChainMap};
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    fn z2() -> ChainComplex {
        ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]))
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char(&ChainComplex::zero(Z)), K0Class(0));
        assert_eq!(euler_char(&ChainComplex::free(Z, 0, 3)), K0Class(3));
        assert_eq!(euler_char(&z2()), K0Class(0));
        assert_eq!(euler_char_homology(&z2()), K0Class(0));
        assert_eq!(euler_char_homology(&ChainComplex::free(Z, 1, 1)), K0Class(-1));
    }

    #[test]
    fn filtration_counts() {
        assert_eq!(k0_via_filtration(&skeletal_filtration(&ChainComplex::free(Z, 0, 1))).unwrap(), K0Class(1));
        assert_eq!(k0_via_filtration(&skeletal_filtration(&z2())).unwrap(), K0Class(0));
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 2, 2))).complex;
        assert_eq!(k0_via_filtration(&skeletal_filtration(&c)).unwrap(), K0Class(0));
    }

    #[test]
    fn resolutions() {
        assert_eq!(resolve_module(&Matrix::zeros(Z, 1, 0)), ChainComplex::free(Z, 0, 1));
        assert_eq!(resolve_module(&Matrix::from_i64(Z, &[&[2]])), z2());
        let r = resolve_module(&Matrix::from_i64(Z, &[&[2, 0], &[0, 3]]));
        assert_eq!(euler_char(&r), K0Class(0));
        // redundant relations still give a resolution
        let r = resolve_module(&Matrix::from_i64(Z, &[&[2, 4, 0]]));
        assert!(homology(&r).get(1).is_zero());
        assert_eq!(homology(&r).get(0).to_string(), "Z/2");
    }

    #[test]
    fn bondarko_on_small_examples() {
        let r = check_bondarko_k0(&ChainComplex::free(Z, 0, 1), 3, 7).unwrap();
        assert!(r.via_filtrations.iter().all(|v| *v == K0Class(1)));
        let c = cone(&ChainMap::identity(&z2())).complex;
        let r = check_bondarko_k0(&c, 2, 1).unwrap();
        assert!(r.via_filtrations.iter().all(|v| *v == K0Class(0)));
    }
}
