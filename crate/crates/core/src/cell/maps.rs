use super::CellFiltration;
use crate::chain::{cokernel_of_split_mono, cone, homology, is_homotopy_equivalence, ChainComplex, ChainMap, HomologyProfile};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::weight::weight_bounds;

/// Levelwise maps `f_k : A_k -> B_k` commuting strictly with the inclusions.
#[derive(Clone, Debug)]
pub struct FiltrationMap {
    source: CellFiltration,
    target: CellFiltration,
    lo: i64,
    /// `levels[j]` is `f_{lo + j}`; `lo` is the lower of the two base degrees.
    levels: Vec<ChainMap>,
}

impl FiltrationMap {
    /// Common index window of two filtrations.
    pub fn window(a: &CellFiltration, b: &CellFiltration) -> (i64, i64) {
        (a.base_degree().min(b.base_degree()), a.hi().max(b.hi()))
    }

    /// `level(k)` must be a chain map `A_k -> B_k` for every `k` in the common
    /// window; the squares with the inclusions are checked to commute.
    pub fn new(source: CellFiltration, target: CellFiltration, mut level: impl FnMut(i64) -> Result<ChainMap>) -> Result<Self> {
        let (lo, hi) = Self::window(&source, &target);
        let mut levels = Vec::new();
        for k in lo..=hi {
            let f = level(k)?;
            if f.source() != source.stage(k) || f.target() != target.stage(k) {
                return Err(Error::precondition(format!("level map {k} has the wrong ends")));
            }
            f.validate()?;
            levels.push(f);
        }
        let map = FiltrationMap { source, target, lo, levels };
        for k in lo + 1..=hi {
            let left = map.target.inclusion(k).compose(map.level(k - 1))?;
            let right = map.level(k).compose(&map.source.inclusion(k))?;
            if left != right {
                return Err(Error::precondition(format!("square at level {k} does not commute")));
            }
        }
        Ok(map)
    }

    /// Levelwise map induced by a chain map of the colimits when both
    /// filtrations are skeletal.
    pub fn from_skeletal(f: &ChainMap) -> Result<Self> {
        let a = super::skeletal_filtration(f.source());
        let b = super::skeletal_filtration(f.target());
        let ring = f.source().ring();
        let (sa, sb) = (a.clone(), b.clone());
        Self::new(a, b, |k| {
            let (x, y) = (sa.stage(k), sb.stage(k));
            ChainMap::new(x.clone(), y.clone(), |i| {
                if x.rank(i) == 0 || y.rank(i) == 0 {
                    Matrix::zeros(ring, y.rank(i), x.rank(i))
                } else {
                    f.component(i).into_owned()
                }
            })
        })
    }

    pub fn source(&self) -> &CellFiltration {
        &self.source
    }

    pub fn target(&self) -> &CellFiltration {
        &self.target
    }

    pub fn window_range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.levels.len() as i64 - 1)
    }

    /// `f_k`, extended constantly outside the window.
    pub fn level(&self, k: i64) -> &ChainMap {
        let idx = (k - self.lo).clamp(0, self.levels.len() as i64 - 1);
        &self.levels[idx as usize]
    }

    /// Latching map `A_j ∪_{A_i} B_i -> B_j` for `i < j`.
    pub fn latching_map(&self, i: i64, j: i64) -> Result<ChainMap> {
        let a_ij = self.source.inclusion_between(i, j)?;
        let b_ij = self.target.inclusion_between(i, j)?;
        let fi = self.level(i);
        let fj = self.level(j);
        let (ai, aj, bi, bj) = (self.source.stage(i), self.source.stage(j), self.target.stage(i), self.target.stage(j));
        let sum = aj.direct_sum(bi)?;
        let glue = ChainMap::new(ai.clone(), sum.clone(), |k| a_ij.component(k).vstack(&-&*fi.component(k)))?;
        let pushout = cokernel_of_split_mono(&glue)?;
        ChainMap::new(pushout.complex.clone(), bj.clone(), |k| {
            let out = fj.component(k).hstack(&b_ij.component(k));
            &out * &pushout.section(k)
        })
    }

    /// Every latching map has cofiber of weight within `[i + 1, j]`.
    pub fn is_ingression(&self) -> Result<bool> {
        let (lo, hi) = self.window_range();
        for i in lo..=hi {
            for j in i + 1..=hi + 1 {
                let cofiber = cone(&self.latching_map(i, j)?).complex;
                if !weight_bounds(&cofiber).within(i + 1, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Mapping cylinder of a filtration map.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub filtration: CellFiltration,
    /// `A -> Mf`.
    pub ingression: FiltrationMap,
    /// `B -> Mf`, an equivalence on colimits.
    pub equivalence: FiltrationMap,
}

/// Level `(Mf)_i` as the homotopy pushout of `B_i <- A_{i-1} -> A_i`:
/// `cone(A_{i-1} -> B_i ⊕ A_i)` with `a ↦ (f a, -ι a)`.
fn cylinder_level(f: &FiltrationMap, i: i64) -> Result<(ChainComplex, ChainMap)> {
    let (a_prev, a, b) = (f.source.stage(i - 1), f.source.stage(i), f.target.stage(i));
    let sum = b.direct_sum(a)?;
    let to_b = f.target.inclusion(i).compose(f.level(i - 1))?;
    let inc = f.source.inclusion(i);
    let glue = ChainMap::new(a_prev.clone(), sum, |k| to_b.component(k).vstack(&-&*inc.component(k)))?;
    Ok((cone(&glue).complex, glue))
}

pub fn mapping_cylinder_filtration(f: &FiltrationMap) -> Result<MappingCylinder> {
    let ring = f.source.ring();
    let (lo, hi) = f.window_range();
    // levels lo..=hi+1 carry cells; base at lo
    let base_degree = lo;
    let top = hi + 1;
    let mut stages = Vec::new();
    for i in base_degree..=top {
        stages.push(cylinder_level(f, i)?.0);
    }
    let at = |i: i64| (i - base_degree) as usize;
    // (a', b, a) ↦ (ι a', ι b, ι a)
    let mut inclusions = Vec::new();
    for i in base_degree + 1..=top {
        let (ia_prev, ib, ia) = (f.source.inclusion(i - 1), f.target.inclusion(i), f.source.inclusion(i));
        let m = ChainMap::new(stages[at(i - 1)].clone(), stages[at(i)].clone(), |k| {
            ia_prev.component(k - 1).block_diag(&ib.component(k)).block_diag(&ia.component(k))
        })?;
        inclusions.push(m);
    }
    let filtration = CellFiltration::from_stages(base_degree, stages, inclusions)?;
    let mf = filtration.clone();
    let ingression = FiltrationMap::new(f.source.clone(), filtration.clone(), |i| {
        let (a_prev, a, b) = (f.source.stage(i - 1), f.source.stage(i), f.target.stage(i));
        ChainMap::new(a.clone(), mf.stage(i).clone(), |k| {
            Matrix::zeros(ring, a_prev.rank(k - 1) + b.rank(k), a.rank(k)).vstack(&Matrix::identity(ring, a.rank(k)))
        })
    })?;
    let equivalence = FiltrationMap::new(f.target.clone(), filtration.clone(), |i| {
        let (a_prev, a, b) = (f.source.stage(i - 1), f.source.stage(i), f.target.stage(i));
        ChainMap::new(b.clone(), mf.stage(i).clone(), |k| {
            Matrix::zeros(ring, a_prev.rank(k - 1), b.rank(k))
                .vstack(&Matrix::identity(ring, b.rank(k)))
                .vstack(&Matrix::zeros(ring, a.rank(k), b.rank(k)))
        })
    })?;
    if !is_homotopy_equivalence(equivalence.level(top)) {
        return Err(Error::invariant("B -> Mf is not an equivalence on colimits"));
    }
    Ok(MappingCylinder { filtration, ingression, equivalence })
}

/// Homology profile of a level quotient, zero when the level is empty.
fn level_profile(f: &CellFiltration, k: i64) -> HomologyProfile {
    f.level(k).map_or_else(|| HomologyProfile::new(f.ring()), |l| homology(&l.quotient))
}

/// `(Mf)_{i+1}/(Mf)_i ≃ A_{i+1}/A_i ∨ B_{i+1}/B_i ∨ Σ(A_i/A_{i-1})`, compared
/// as homology profiles at every level. Returns the first failing level.
pub fn check_wedge_formula(f: &FiltrationMap, m: &MappingCylinder) -> Option<i64> {
    let (lo, hi) = f.window_range();
    for i in lo..=hi + 1 {
        let expected = level_profile(&f.source, i)
            .direct_sum(&level_profile(&f.target, i))
            .direct_sum(&level_profile(&f.source, i - 1).shift(1));
        if level_profile(&m.filtration, i) != expected {
            return Some(i);
        }
    }
    None
}
