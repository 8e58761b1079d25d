use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{ChainComplex, HomComplex};
use crate::error::Result;
use crate::linalg::{elementary_divisors, ModulePresentation, Ring};

/// Homology of a complex, degree by degree. Only nonzero groups are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    ring: Ring,
    groups: BTreeMap<i64, ModulePresentation>,
}

impl HomologyProfile {
    pub fn new(ring: Ring) -> Self {
        HomologyProfile { ring, groups: BTreeMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn insert(&mut self, degree: i64, group: ModulePresentation) {
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    pub fn get(&self, degree: i64) -> ModulePresentation {
        self.groups.get(&degree).cloned().unwrap_or_else(|| ModulePresentation::zero(self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Nonzero groups in ascending degree.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &ModulePresentation)> {
        self.groups.iter().map(|(k, v)| (*k, v))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.groups.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.groups.keys().next_back().copied()
    }

    pub fn direct_sum(&self, other: &HomologyProfile) -> HomologyProfile {
        let mut out = self.clone();
        for (k, g) in other.iter() {
            let sum = out.get(k).direct_sum(g);
            out.insert(k, sum);
        }
        out
    }

    pub fn shift(&self, k: i64) -> HomologyProfile {
        HomologyProfile { ring: self.ring, groups: self.groups.iter().map(|(d, g)| (d + k, g.clone())).collect() }
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(i, g)| if i.rem_euclid(2) == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(i, g)| format!("H_{i}: {g}")).collect();
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `H_i = ker d_i / im d_{i+1}` for every degree.
///
/// The kernel of `d_i` is saturated, so the torsion of `H_i` is exactly the
/// torsion of `coker d_{i+1}`.
pub fn homology(x: &ChainComplex) -> HomologyProfile {
    let ring = x.ring();
    let mut profile = HomologyProfile::new(ring);
    if x.is_zero() {
        return profile;
    }
    let divisors: BTreeMap<i64, Vec<_>> =
        (x.min_deg()..=x.max_deg() + 1).map(|i| (i, elementary_divisors(&x.diff(i)))).collect();
    for i in x.degrees() {
        let out_rank = divisors[&i].len();
        let incoming = &divisors[&(i + 1)];
        let free_rank = x.rank(i) - out_rank - incoming.len();
        let torsion = match ring {
            Ring::Integers => incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
            Ring::PrimeField(_) => Vec::new(),
        };
        profile.insert(i, ModulePresentation { ring, free_rank, torsion });
    }
    profile
}

/// Group of homotopy classes of chain maps `X -> Y`: `H_0` of the hom-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyClassGroup(pub ModulePresentation);

impl HomotopyClassGroup {
    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for HomotopyClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn pi0_hom(x: &ChainComplex, y: &ChainComplex) -> Result<HomotopyClassGroup> {
    let hom = HomComplex::new(x, y)?;
    Ok(HomotopyClassGroup(degree_homology(&hom.complex, 0)))
}

/// `H_n` of a single degree.
pub(crate) fn degree_homology(x: &ChainComplex, n: i64) -> ModulePresentation {
    let ring = x.ring();
    let out_rank = elementary_divisors(&x.diff(n)).len();
    let incoming = elementary_divisors(&x.diff(n + 1));
    let torsion = match ring {
        Ring::Integers => incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
        Ring::PrimeField(_) => Vec::new(),
    };
    ModulePresentation { ring, free_rank: x.rank(n) - out_rank - incoming.len(), torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    const Z: Ring = Ring::Integers;

    #[test]
    fn point() {
        let h = homology(&ChainComplex::free(Z, 0, 1));
        assert_eq!(h.get(0), ModulePresentation::free(Z, 1));
        assert_eq!(h.iter().count(), 1);
    }

    #[test]
    fn resolution_of_z2() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let h = homology(&x);
        assert_eq!(h.to_string(), "H_0: Z/2");
        assert!(h.get(1).is_zero());
    }

    #[test]
    fn mod_two_kills_the_torsion() {
        let f2 = Ring::PrimeField(2);
        let x = ChainComplex::two_term(1, Matrix::from_i64(f2, &[&[2]]));
        let h = homology(&x);
        assert_eq!(h.get(0).free_rank, 1);
        assert_eq!(h.get(1).free_rank, 1);
    }

    #[test]
    fn pi0_examples() {
        let pt = ChainComplex::free(Z, 0, 1);
        assert_eq!(pi0_hom(&pt, &pt).unwrap().0, ModulePresentation::free(Z, 1));
        assert!(pi0_hom(&pt, &ChainComplex::zero(Z)).unwrap().is_trivial());
        // Chain maps Z[0] -> [Z -2-> Z] are multiplication by k in degree 0;
        // the homotopies through degree 1 change k by multiples of 2.
        let res = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        assert_eq!(pi0_hom(&pt, &res).unwrap().to_string(), "Z/2");
    }
}
