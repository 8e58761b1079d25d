//! Cones, cylinders and hom-complexes.
//!
//! Sign conventions (fixed throughout the crate):
//!
//! * `cone(f)_i = X_{i-1} ⊕ Y_i`, `d(x, y) = (-d x, d y - f x)`;
//! * `Cyl(f)_i = X_i ⊕ X_{i-1} ⊕ Y_i`, `d(x, x', y) = (d x + x', -d x', d y - f x')`;
//! * `Hom(X, Y)_n = ⊕_i Hom(X_i, Y_{i+n})`, `∂φ = d∘φ - (-1)^n φ∘d`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ChainComplex, ChainMap, Homotopy};
use crate::error::Result;
use crate::linalg::{Matrix, Ring};

/// Mapping cone of `f : X -> Y` with its canonical maps `Y -> cone` and `cone -> ΣX`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let lo = (x.min_deg() + 1).min(y.min_deg());
    let hi = (x.max_deg() + 1).max(y.max_deg());
    let (lo, hi) = match (x.is_zero(), y.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (y.min_deg(), y.max_deg()),
        (false, true) => (x.min_deg() + 1, x.max_deg() + 1),
        _ => (lo, hi),
    };
    let complex = ChainComplex::from_fn(
        ring,
        lo,
        hi,
        |i| x.rank(i - 1) + y.rank(i),
        |i| {
            let dx = -&*x.diff(i - 1);
            let zero = Matrix::zeros(ring, x.rank(i - 2), y.rank(i));
            let fx = -&*f.component(i - 1);
            Matrix::blocks(&dx, &zero, &fx, &y.diff(i))
        },
    );
    let inclusion = ChainMap::from_fn_unchecked(y.clone(), complex.clone(), |i| {
        Matrix::zeros(ring, x.rank(i - 1), y.rank(i)).vstack(&Matrix::identity(ring, y.rank(i)))
    })
    .expect("cone inclusion");
    let sx = x.shift(1);
    let projection = ChainMap::from_fn_unchecked(complex.clone(), sx, |i| {
        Matrix::identity(ring, x.rank(i - 1)).hstack(&Matrix::zeros(ring, x.rank(i - 1), y.rank(i)))
    })
    .expect("cone projection");
    Cone { complex, inclusion, projection }
}

/// Mapping cylinder of `f : X -> Y`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: ChainComplex,
    /// `X -> Cyl`, a degreewise split monomorphism.
    pub inclusion: ChainMap,
    /// `Cyl -> Y`, a homotopy equivalence with `projection ∘ inclusion = f`.
    pub projection: ChainMap,
    /// `Y -> Cyl`, a strict section of `projection`.
    pub section: ChainMap,
    /// `section ∘ projection ~ id`.
    pub retraction_homotopy: Homotopy,
}

pub fn cylinder(f: &ChainMap) -> Result<Cylinder> {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let lo = x.min_deg().min(y.min_deg());
    let hi = (x.max_deg() + 1).max(y.max_deg());
    let (lo, hi) = match (x.is_zero(), y.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (y.min_deg(), y.max_deg()),
        (false, true) => (x.min_deg(), x.max_deg() + 1),
        _ => (lo, hi),
    };
    let rank = |i: i64| x.rank(i) + x.rank(i - 1) + y.rank(i);
    let z = |r: usize, c: usize| Matrix::zeros(ring, r, c);
    let complex = ChainComplex::from_fn(ring, lo, hi, rank, |i| {
        // rows: X_{i-1}, X_{i-2}, Y_{i-1}; columns: X_i, X_{i-1}, Y_i
        let (a, b, c) = (x.rank(i), x.rank(i - 1), y.rank(i));
        let (ra, rb, rc) = (x.rank(i - 1), x.rank(i - 2), y.rank(i - 1));
        let top = x.diff(i).hstack(&Matrix::identity(ring, b)).hstack(&z(ra, c));
        let mid = z(rb, a).hstack(&-&*x.diff(i - 1)).hstack(&z(rb, c));
        let bot = z(rc, a).hstack(&-&*f.component(i - 1)).hstack(&y.diff(i));
        top.vstack(&mid).vstack(&bot)
    });
    let inclusion = ChainMap::from_fn_unchecked(x.clone(), complex.clone(), |i| {
        Matrix::identity(ring, x.rank(i)).vstack(&z(x.rank(i - 1) + y.rank(i), x.rank(i)))
    })?;
    let projection = ChainMap::from_fn_unchecked(complex.clone(), y.clone(), |i| {
        f.component(i).hstack(&z(y.rank(i), x.rank(i - 1))).hstack(&Matrix::identity(ring, y.rank(i)))
    })?;
    let section = ChainMap::from_fn_unchecked(y.clone(), complex.clone(), |i| {
        z(x.rank(i) + x.rank(i - 1), y.rank(i)).vstack(&Matrix::identity(ring, y.rank(i)))
    })?;
    let sp = section.compose(&projection)?;
    let id = ChainMap::identity(&complex);
    // h(x, x', y) = (0, -x, 0) witnesses section∘projection - id = dh + hd.
    let retraction_homotopy = Homotopy::new(sp, id, |i| {
        let (a, b, c) = (x.rank(i), x.rank(i - 1), y.rank(i));
        let (ta, tb, tc) = (x.rank(i + 1), x.rank(i), y.rank(i + 1));
        z(ta, a + b + c).vstack(&(-&Matrix::identity(ring, tb)).hstack(&z(tb, b + c))).vstack(&z(tc, a + b + c))
    })?;
    Ok(Cylinder { complex, inclusion, projection, section, retraction_homotopy })
}

/// Coordinates of the hom-complex: which block of `Hom_n` holds `Hom(X_i, Y_{i+n})`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    source: ChainComplex,
    target: ChainComplex,
}

impl HomComplex {
    pub fn new(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        source.check_ring(target)?;
        let ring = source.ring();
        let (lo, hi) = if source.is_zero() || target.is_zero() {
            (0, -1)
        } else {
            (target.min_deg() - source.max_deg(), target.max_deg() - source.min_deg())
        };
        let this = HomComplex { complex: ChainComplex::zero(ring), source: source.clone(), target: target.clone() };
        let complex = ChainComplex::from_fn(ring, lo, hi, |n| this.dim(n), |n| this.boundary(n));
        Ok(HomComplex { complex, ..this })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    fn blocks(&self, n: i64) -> impl Iterator<Item = (i64, usize, usize, usize)> + '_ {
        let mut offset = 0;
        self.source.degrees().filter_map(move |i| {
            let (r, c) = (self.target.rank(i + n), self.source.rank(i));
            if r * c == 0 {
                return None;
            }
            let out = (i, offset, r, c);
            offset += r * c;
            Some(out)
        })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks(n).map(|(_, _, r, c)| r * c).sum()
    }

    fn offset(&self, n: i64, i: i64) -> Option<usize> {
        self.blocks(n).find(|b| b.0 == i).map(|b| b.1)
    }

    /// Matrix of `∂ : Hom_n -> Hom_{n-1}`.
    fn boundary(&self, n: i64) -> Matrix {
        let ring = self.source.ring();
        let rows = self.dim(n - 1);
        let cols = self.dim(n);
        let mut m = Matrix::zeros(ring, rows, cols);
        let sign = -ring.sign(n);
        for (i, off, r, c) in self.blocks(n) {
            let dy = self.target.diff(i + n);
            let dx = self.source.diff(i + 1);
            let out_here = self.offset(n - 1, i);
            let out_next = self.offset(n - 1, i + 1);
            let width_here = self.source.rank(i);
            let width_next = self.source.rank(i + 1);
            for a in 0..r {
                for b in 0..c {
                    let col = off + a * c + b;
                    // d_Y ∘ E_ab lands in block i of Hom_{n-1}: entry (row, b) = dY[row][a].
                    if let Some(o) = out_here {
                        for row in 0..dy.rows() {
                            let v = dy.get(row, a);
                            if !v.is_zero() {
                                m.set(o + row * width_here + b, col, v.clone());
                            }
                        }
                    }
                    // E_ab ∘ d_X lands in block i+1: entry (a, k) = dX[b][k].
                    if let Some(o) = out_next {
                        for k in 0..width_next {
                            let v = dx.get(b, k);
                            if !v.is_zero() {
                                let idx = o + a * width_next + k;
                                let cur = m.get(idx, col).clone();
                                m.set(idx, col, cur + &sign * v);
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Flattens a family `φ_i : X_i -> Y_{i+n}` into a vector of `Hom_n`.
    pub fn flatten(&self, n: i64, component: impl Fn(i64) -> Matrix) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim(n)];
        for (i, off, r, c) in self.blocks(n) {
            let m = component(i);
            debug_assert_eq!(m.shape(), (r, c));
            for a in 0..r {
                for b in 0..c {
                    v[off + a * c + b] = m.get(a, b).clone();
                }
            }
        }
        v
    }

    /// Component `φ_i : X_i -> Y_{i+n}` of a vector in `Hom_n`.
    pub fn unflatten(&self, n: i64, v: &[BigInt], i: i64) -> Matrix {
        let ring = self.source.ring();
        let (r, c) = (self.target.rank(i + n), self.source.rank(i));
        match self.offset(n, i) {
            Some(off) => Matrix::from_fn(ring, r, c, |a, b| v[off + a * c + b].clone()),
            None => Matrix::zeros(ring, r, c),
        }
    }

    pub fn map_to_vector(&self, f: &ChainMap) -> Vec<BigInt> {
        self.flatten(0, |i| f.component(i).into_owned())
    }

    pub fn vector_to_map(&self, v: &[BigInt]) -> Result<ChainMap> {
        ChainMap::new(self.source.clone(), self.target.clone(), |i| self.unflatten(0, v, i))
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }
}

pub fn hom_complex(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    Ok(HomComplex::new(x, y)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;

    const Z: Ring = Ring::Integers;

    fn times(k: i64) -> ChainMap {
        let x = ChainComplex::free(Z, 0, 1);
        ChainMap::new(x.clone(), x, |_| Matrix::from_i64(Z, &[&[k]])).unwrap()
    }

    #[test]
    fn cone_of_zero_source_is_target() {
        let y = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let f = ChainMap::zero(&ChainComplex::zero(Z), &y).unwrap();
        assert_eq!(cone(&f).complex, y);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let y = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]])).direct_sum(&ChainComplex::free(Z, 3, 2)).unwrap();
        let c = cone(&ChainMap::identity(&y));
        assert!(c.complex.validate().is_ok());
        assert!(homology(&c.complex).is_zero());
        assert!(c.inclusion.validate().is_ok());
        assert!(c.projection.validate().is_ok());
    }

    #[test]
    fn cone_of_two_matches_resolution() {
        let c = cone(&times(2)).complex;
        let h = homology(&c);
        assert_eq!(h.get(0).to_string(), "Z/2");
        assert!(h.get(1).is_zero());
    }

    #[test]
    fn cylinder_structure() {
        let y = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let x = ChainComplex::free(Z, 0, 1);
        let f = ChainMap::new(x.clone(), y.clone(), |_| Matrix::from_i64(Z, &[&[3]])).unwrap();
        let cyl = cylinder(&f).unwrap();
        assert!(cyl.complex.validate().is_ok());
        for m in [&cyl.inclusion, &cyl.projection, &cyl.section] {
            m.validate().unwrap();
        }
        assert_eq!(cyl.projection.compose(&cyl.inclusion).unwrap(), f);
        assert_eq!(homology(&cyl.complex), homology(&y));
    }

    #[test]
    fn cylinder_of_identity() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let id = ChainMap::identity(&x);
        let cyl = cylinder(&id).unwrap();
        assert_eq!(cyl.projection.compose(&cyl.inclusion).unwrap(), id);
    }

    #[test]
    fn hom_of_units() {
        let x = ChainComplex::free(Z, 0, 1);
        let h = hom_complex(&x, &x).unwrap();
        assert_eq!(h, ChainComplex::free(Z, 0, 1));
        assert!(hom_complex(&x, &ChainComplex::zero(Z)).unwrap().is_zero());
    }

    #[test]
    fn hom_squares_to_zero() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2, 3]])).direct_sum(&ChainComplex::free(Z, 2, 1)).unwrap();
        let y = ChainComplex::two_term(2, Matrix::from_i64(Z, &[&[1], &[4]])).direct_sum(&ChainComplex::elementary(Z, 1, 1)).unwrap();
        let h = hom_complex(&x, &y).unwrap();
        assert!(h.validate().is_ok());
    }
}
