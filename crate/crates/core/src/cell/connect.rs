use std::fmt;

use super::CellFiltration;
use crate::chain::{
    cone, cylinder, homology, homotopy_inverse, minimize, ChainComplex, ChainMap, Homotopy, HomotopyEquivalence,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::weight::t_cotruncate;

/// Largest `n` with `cone(f) ∈ w≥n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
    Finite(i64),
    Infinite,
}

impl Connectivity {
    pub fn at_least(&self, n: i64) -> bool {
        match self {
            Connectivity::Finite(k) => *k >= n,
            Connectivity::Infinite => true,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Infinite => f.write_str("infinity"),
        }
    }
}

pub fn connectivity(f: &ChainMap) -> Connectivity {
    match homology(&cone(f).complex).min_degree() {
        None => Connectivity::Infinite,
        Some(lo) => Connectivity::Finite(lo - 1),
    }
}

/// Connectivities of `f`, `g` and `g ∘ f`; an error if the composite is
/// less connected than both parts.
pub fn compose_connectivity_check(f: &ChainMap, g: &ChainMap) -> Result<(Connectivity, Connectivity, Connectivity)> {
    let gf = g.compose(f)?;
    let (cf, cg, cgf) = (connectivity(f), connectivity(g), connectivity(&gf));
    if cgf < cf.min(cg) {
        return Err(Error::invariant(format!("composite has connectivity {cgf}, parts {cf} and {cg}")));
    }
    Ok((cf, cg, cgf))
}

/// `X = X_n -> X_{n+1} -> … -> X_m ≃ Y` with quotients of pure weight.
#[derive(Clone, Debug)]
pub struct ConnectedFactorization {
    pub n: i64,
    /// Relative filtration with base `X` in degree `n`.
    pub cells: CellFiltration,
    /// `X_m -> Y`.
    pub to_target: ChainMap,
    /// `to_target ∘ (X -> X_m) ~ f`.
    pub witness: Homotopy,
    pub equivalence: HomotopyEquivalence,
}

/// Factors an `n`-connected map through cells of weights `n+1, …, m`.
///
/// `Cyl(f)` is `X` with `cone(f)` attached along `τ(x', y) = x'`. The cone is
/// replaced by its cotruncation at `n+1` (allowed since its homology starts
/// there), minimized, and attached back along the pulled-back `τ`; its
/// skeleta give the stages.
pub fn factor_connected_map(f: &ChainMap, n: i64) -> Result<ConnectedFactorization> {
    if !connectivity(f).at_least(n) {
        return Err(Error::precondition(format!("map is only {}-connected, not {n}-connected", connectivity(f))));
    }
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let q = cone(f).complex;
    let cot = t_cotruncate(&q, n + 1);
    let min = minimize(&cot.complex)?;
    let cells = min.complex.clone();
    let e = cot.inclusion.compose(&min.equivalence.back)?;
    // τ ∘ e : cells_i -> X_{i-1}
    let attach = |i: i64| -> Matrix {
        let ec = e.component(i);
        let rows: Vec<usize> = (0..x.rank(i - 1)).collect();
        ec.select_rows(&rows)
    };
    let twisted = |top: i64| -> ChainComplex {
        let part = cells.truncate_above(top);
        let lo = x.min_deg().min(part.min_deg());
        let hi = x.max_deg().max(part.max_deg());
        let (lo, hi) = match (x.is_zero(), part.is_zero()) {
            (true, true) => (0, -1),
            (true, false) => (part.min_deg(), part.max_deg()),
            (false, true) => (x.min_deg(), x.max_deg()),
            _ => (lo, hi),
        };
        ChainComplex::from_fn(ring, lo, hi, |i| x.rank(i) + part.rank(i), |i| {
            let t = if part.rank(i) == 0 { Matrix::zeros(ring, x.rank(i - 1), 0) } else { attach(i) };
            Matrix::blocks(&x.diff(i), &t, &Matrix::zeros(ring, part.rank(i - 1), x.rank(i)), &part.diff(i))
        })
    };
    let top = if cells.is_zero() { n } else { cells.max_deg().max(n) };
    let stages: Vec<ChainComplex> = (n..=top).map(twisted).collect();
    for (k, s) in stages.iter().enumerate() {
        s.validate().map_err(|d| Error::invariant(format!("stage {} is not a complex: {d}", n + k as i64)))?;
    }
    let mut inclusions = Vec::new();
    for w in stages.windows(2) {
        let (s, t) = (&w[0], &w[1]);
        inclusions.push(ChainMap::new(s.clone(), t.clone(), |i| {
            Matrix::identity(ring, s.rank(i)).vstack(&Matrix::zeros(ring, t.rank(i) - s.rank(i), s.rank(i)))
        })?);
    }
    let filtration = CellFiltration::from_stages(n, stages, inclusions)?;
    filtration.verify_relative()?;
    let x_m = filtration.colimit().clone();
    // Φ(x, c) = (x, e c) into the cylinder, then project: (x, x', y) ↦ f x + y
    let cyl = cylinder(f)?;
    let phi = ChainMap::new(x_m.clone(), cyl.complex.clone(), |i| {
        let xi = x.rank(i);
        let ci = cells.rank(i);
        let top_block = Matrix::identity(ring, xi).hstack(&Matrix::zeros(ring, xi, ci));
        let ec = if ci == 0 { Matrix::zeros(ring, x.rank(i - 1) + y.rank(i), 0) } else { e.component(i).into_owned() };
        let lower = Matrix::zeros(ring, x.rank(i - 1) + y.rank(i), xi).hstack(&ec);
        top_block.vstack(&lower)
    })?;
    let to_target = cyl.projection.compose(&phi)?;
    let into_top = filtration.inclusion_between(n, top)?;
    let composite = to_target.compose(&into_top)?;
    let witness = Homotopy::new(composite, f.clone(), |i| Matrix::zeros(ring, y.rank(i + 1), x.rank(i)))
        .map_err(|err| Error::invariant(format!("factorization does not recompose to f: {err}")))?;
    let equivalence = homotopy_inverse(&to_target)?
        .ok_or_else(|| Error::invariant("top stage is not equivalent to the target"))?;
    Ok(ConnectedFactorization { n, cells: filtration, to_target, witness, equivalence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;
    use crate::weight::WeightBounds;

    const Z: Ring = Ring::Integers;

    fn times(k: i64) -> ChainMap {
        let x = ChainComplex::free(Z, 0, 1);
        ChainMap::new(x.clone(), x, |_| Matrix::from_i64(Z, &[&[k]])).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        let pt = ChainComplex::free(Z, 0, 1);
        assert_eq!(connectivity(&ChainMap::identity(&pt)), Connectivity::Infinite);
        let into = ChainMap::zero(&ChainComplex::zero(Z), &ChainComplex::free(Z, 3, 1)).unwrap();
        assert_eq!(connectivity(&into), Connectivity::Finite(2));
        assert_eq!(connectivity(&times(2)), Connectivity::Finite(-1));
    }

    #[test]
    fn composite_connectivity() {
        let (cf, cg, cgf) = compose_connectivity_check(&times(2), &times(1)).unwrap();
        assert_eq!((cf, cg, cgf), (Connectivity::Finite(-1), Connectivity::Infinite, Connectivity::Finite(-1)));
        let a = ChainComplex::free(Z, 3, 1);
        let b = a.direct_sum(&ChainComplex::free(Z, 4, 1)).unwrap();
        let f = ChainMap::zero(&ChainComplex::zero(Z), &a).unwrap();
        let g = ChainMap::new(a.clone(), b, |_| Matrix::from_i64(Z, &[&[1]])).unwrap();
        let (_, _, cgf) = compose_connectivity_check(&f, &g).unwrap();
        assert!(cgf.at_least(2));
    }

    #[test]
    fn equivalence_needs_no_cells() {
        let pt = ChainComplex::free(Z, 0, 1);
        let fac = factor_connected_map(&ChainMap::identity(&pt), 0).unwrap();
        assert!(fac.cells.levels().is_empty());
        assert_eq!(fac.cells.colimit(), &pt);
    }

    #[test]
    fn attaching_one_cell() {
        let f = ChainMap::zero(&ChainComplex::zero(Z), &ChainComplex::free(Z, 2, 1)).unwrap();
        let fac = factor_connected_map(&f, 1).unwrap();
        let l = fac.cells.level(2).unwrap();
        assert_eq!(l.bounds, WeightBounds::Bounded { lo: 2, hi: 2 });
        fac.equivalence.verify().unwrap();
    }

    #[test]
    fn inclusion_into_sum() {
        let pt = ChainComplex::free(Z, 0, 1);
        let y = pt.direct_sum(&ChainComplex::free(Z, 3, 1)).unwrap();
        let f = ChainMap::new(pt, y, |_| Matrix::from_i64(Z, &[&[1]])).unwrap();
        let fac = factor_connected_map(&f, 2).unwrap();
        let nonzero: Vec<i64> = fac.cells.levels().iter().filter(|l| !l.quotient.is_zero()).map(|l| l.degree).collect();
        assert_eq!(nonzero, vec![3]);
        assert_eq!(homology(&fac.cells.level(3).unwrap().quotient).to_string(), "H_3: Z");
    }

    #[test]
    fn not_connected_enough() {
        assert!(matches!(factor_connected_map(&times(2), 0), Err(Error::Precondition(_))));
    }
}
