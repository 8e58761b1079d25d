use std::fmt;

use crate::chain::{cokernel_of_split_mono, homology, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};
use crate::weight::{in_w_leq, weight_bounds, WeightBounds};

/// Level quotient `Q_k = A_k / A_{k-1}` with its weight.
#[derive(Clone, Debug)]
pub struct Level {
    pub degree: i64,
    pub quotient: ChainComplex,
    pub projection: ChainMap,
    pub bounds: WeightBounds,
}

/// Finite filtration `A_{lo-1} -> A_lo -> … -> A_hi` by degreewise split
/// monomorphisms, constant outside that range.
///
/// In an absolute filtration the base `A_{lo-1}` is acyclic and every level
/// quotient has pure weight; a relative filtration drops the condition on
/// the base.
#[derive(Clone, Debug)]
pub struct CellFiltration {
    base_degree: i64,
    stages: Vec<ChainComplex>,
    inclusions: Vec<ChainMap>,
    levels: Vec<Level>,
}

/// First failed condition found by [`CellFiltration::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationDefect {
    BaseNotAcyclic { degree: i64 },
    QuotientWeight { degree: i64, bounds: WeightBounds },
    StageWeight { degree: i64 },
}

impl fmt::Display for FiltrationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDefect::BaseNotAcyclic { degree } => write!(f, "base stage A_{degree} is not acyclic"),
            FiltrationDefect::QuotientWeight { degree, bounds } => {
                write!(f, "level quotient Q_{degree} has weight {bounds}, expected [{degree}, {degree}]")
            }
            FiltrationDefect::StageWeight { degree } => write!(f, "stage A_{degree} is not in w<={degree}"),
        }
    }
}

impl From<FiltrationDefect> for Error {
    fn from(d: FiltrationDefect) -> Self {
        Error::Invariant(d.to_string())
    }
}

impl CellFiltration {
    /// Assembles a filtration from its stages `A_{base}, A_{base+1}, …` and
    /// the inclusions between consecutive stages. Fails if an inclusion is
    /// not a degreewise split monomorphism; weights are checked by `verify`.
    pub fn from_stages(base_degree: i64, stages: Vec<ChainComplex>, inclusions: Vec<ChainMap>) -> Result<Self> {
        if stages.is_empty() || inclusions.len() + 1 != stages.len() {
            return Err(Error::precondition("a filtration needs one inclusion between each pair of stages"));
        }
        let ring = stages[0].ring();
        let mut levels = Vec::with_capacity(inclusions.len());
        for (j, inc) in inclusions.iter().enumerate() {
            let degree = base_degree + j as i64 + 1;
            if inc.source() != &stages[j] || inc.target() != &stages[j + 1] {
                return Err(Error::precondition(format!("inclusion into A_{degree} has the wrong ends")));
            }
            if inc.source().ring() != ring || inc.target().ring() != ring {
                return Err(Error::RingMismatch(ring.label(), inc.target().ring().label()));
            }
            inc.validate()?;
            let q = cokernel_of_split_mono(inc)?;
            let bounds = weight_bounds(&q.complex);
            levels.push(Level { degree, quotient: q.complex, projection: q.projection, bounds });
        }
        Ok(CellFiltration { base_degree, stages, inclusions, levels })
    }

    /// Constant filtration on one complex.
    pub fn constant(base_degree: i64, x: &ChainComplex) -> Self {
        CellFiltration { base_degree, stages: vec![x.clone()], inclusions: Vec::new(), levels: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.stages[0].ring()
    }

    /// Degree of the base stage, `lo - 1`.
    pub fn base_degree(&self) -> i64 {
        self.base_degree
    }

    /// Cells live in degrees `lo..=hi`; empty when `hi < lo`.
    pub fn lo(&self) -> i64 {
        self.base_degree + 1
    }

    pub fn hi(&self) -> i64 {
        self.base_degree + self.inclusions.len() as i64
    }

    pub fn base(&self) -> &ChainComplex {
        &self.stages[0]
    }

    /// The colimit stage `A_hi`.
    pub fn colimit(&self) -> &ChainComplex {
        self.stages.last().expect("nonempty")
    }

    /// `A_k`, extended constantly outside the stored range.
    pub fn stage(&self, k: i64) -> &ChainComplex {
        let idx = (k - self.base_degree).clamp(0, self.stages.len() as i64 - 1);
        &self.stages[idx as usize]
    }

    /// `A_{k-1} -> A_k`; the identity outside the stored range.
    pub fn inclusion(&self, k: i64) -> ChainMap {
        if k >= self.lo() && k <= self.hi() {
            self.inclusions[(k - self.lo()) as usize].clone()
        } else {
            ChainMap::identity(self.stage(k))
        }
    }

    /// `A_i -> A_j` for `i ≤ j`.
    pub fn inclusion_between(&self, i: i64, j: i64) -> Result<ChainMap> {
        let mut m = ChainMap::identity(self.stage(i));
        for k in i + 1..=j {
            m = self.inclusion(k).compose(&m)?;
        }
        Ok(m)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: i64) -> Option<&Level> {
        self.levels.iter().find(|l| l.degree == k)
    }

    pub fn stages(&self) -> &[ChainComplex] {
        &self.stages
    }

    /// Checks an absolute filtration: acyclic base, pure level quotients,
    /// and `A_i ∈ w≤i` for every stage.
    pub fn verify(&self) -> std::result::Result<(), FiltrationDefect> {
        if !homology(self.base()).is_zero() {
            return Err(FiltrationDefect::BaseNotAcyclic { degree: self.base_degree });
        }
        self.verify_relative()?;
        for k in self.lo()..=self.hi() {
            if !in_w_leq(self.stage(k), k) {
                return Err(FiltrationDefect::StageWeight { degree: k });
            }
        }
        Ok(())
    }

    /// Checks only the level quotients, allowing an arbitrary base.
    pub fn verify_relative(&self) -> std::result::Result<(), FiltrationDefect> {
        for l in &self.levels {
            if !l.bounds.is_pure(l.degree) {
                return Err(FiltrationDefect::QuotientWeight { degree: l.degree, bounds: l.bounds });
            }
        }
        Ok(())
    }

    /// `tr_n`: stages constant at `A_n` from `n` on.
    pub fn truncate(&self, n: i64) -> CellFiltration {
        let keep = (n - self.base_degree).clamp(0, self.inclusions.len() as i64) as usize;
        CellFiltration {
            base_degree: self.base_degree,
            stages: self.stages[..=keep].to_vec(),
            inclusions: self.inclusions[..keep].to_vec(),
            levels: self.levels[..keep].to_vec(),
        }
    }

    /// `cotr_n`: stages constant at `A_n` up to `n`. The base becomes `A_n`,
    /// so the result is in general a relative filtration.
    pub fn cotruncate(&self, n: i64) -> CellFiltration {
        let drop = (n - self.base_degree).clamp(0, self.inclusions.len() as i64) as usize;
        CellFiltration {
            base_degree: self.base_degree + drop as i64,
            stages: self.stages[drop..].to_vec(),
            inclusions: self.inclusions[drop..].to_vec(),
            levels: self.levels[drop..].to_vec(),
        }
    }

    /// Whether two filtrations have the same stage at every degree.
    pub fn same_stages(&self, other: &CellFiltration) -> bool {
        let lo = self.base_degree.min(other.base_degree) - 1;
        let hi = self.hi().max(other.hi()) + 1;
        (lo..=hi).all(|k| self.stage(k) == other.stage(k))
    }

    /// The colimit is acyclic. In that case every stage `A_n` must have
    /// pure weight `n`; a violation is reported as an invariant error.
    pub fn is_v_acyclic(&self) -> Result<bool> {
        if !homology(self.colimit()).is_zero() {
            return Ok(false);
        }
        for k in self.base_degree..=self.hi() {
            let b = weight_bounds(self.stage(k));
            if !b.is_pure(k) {
                return Err(Error::invariant(format!("v-acyclic filtration has stage A_{k} of weight {b}")));
            }
        }
        Ok(true)
    }
}

/// `A_k = σ_{≤k} X`, with `X_k` in degree `k` as the level quotient.
pub fn skeletal_filtration(x: &ChainComplex) -> CellFiltration {
    let ring = x.ring();
    if x.is_zero() {
        return CellFiltration::constant(-1, x);
    }
    let base_degree = x.min_deg() - 1;
    let stages: Vec<ChainComplex> = (base_degree..=x.max_deg()).map(|k| x.truncate_above(k)).collect();
    let inclusions = stages
        .windows(2)
        .map(|w| {
            ChainMap::new(w[0].clone(), w[1].clone(), |i| Matrix::identity(ring, w[0].rank(i)))
                .expect("skeleta include")
        })
        .collect();
    CellFiltration::from_stages(base_degree, stages, inclusions).expect("skeleta are split")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cone;

    const Z: Ring = Ring::Integers;

    fn z2() -> ChainComplex {
        ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]))
    }

    #[test]
    fn point_has_one_cell() {
        let f = skeletal_filtration(&ChainComplex::free(Z, 0, 1));
        assert_eq!((f.lo(), f.hi()), (0, 0));
        assert!(f.base().is_zero());
        f.verify().unwrap();
    }

    #[test]
    fn resolution_filtration() {
        let f = skeletal_filtration(&z2());
        assert_eq!(f.stages().len(), 3);
        assert_eq!(f.stage(0), &ChainComplex::free(Z, 0, 1));
        assert_eq!(f.level(0).unwrap().quotient, ChainComplex::free(Z, 0, 1));
        assert_eq!(f.level(1).unwrap().quotient, ChainComplex::free(Z, 1, 1));
        assert_eq!(f.colimit(), &z2());
        f.verify().unwrap();
    }

    #[test]
    fn zero_complex_filtration() {
        let f = skeletal_filtration(&ChainComplex::zero(Z));
        assert!(f.levels().is_empty());
        f.verify().unwrap();
        assert!(f.is_v_acyclic().unwrap());
    }

    #[test]
    fn torsion_quotient_is_flagged() {
        // 0 -> [Z -2-> Z] in one step: the quotient has torsion homology.
        let x = z2();
        let zero = ChainComplex::zero(Z);
        let inc = ChainMap::zero(&zero, &x).unwrap();
        let f = CellFiltration::from_stages(-1, vec![zero, x], vec![inc]).unwrap();
        assert!(matches!(f.verify(), Err(FiltrationDefect::QuotientWeight { degree: 0, .. })));
    }

    #[test]
    fn truncations() {
        let f = skeletal_filtration(&z2());
        assert!(f.truncate(f.hi()).same_stages(&f));
        let bottom = f.truncate(f.lo() - 1);
        assert!(bottom.levels().is_empty());
        assert!(bottom.colimit().is_zero());
        let a = f.truncate(0).cotruncate(0);
        let b = f.cotruncate(0).truncate(0);
        assert!(a.same_stages(&b));
        assert!(f.cotruncate(0).verify().is_err());
        assert!(f.cotruncate(0).verify_relative().is_ok());
    }

    #[test]
    fn v_acyclic_examples() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 0, 1))).complex;
        let f = skeletal_filtration(&c);
        assert!(f.is_v_acyclic().unwrap());
        assert_eq!(weight_bounds(f.stage(0)), WeightBounds::Bounded { lo: 0, hi: 0 });
        assert!(!skeletal_filtration(&ChainComplex::free(Z, 0, 1)).is_v_acyclic().unwrap());
    }
}
