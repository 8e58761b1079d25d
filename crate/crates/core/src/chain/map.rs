use std::borrow::Cow;
use std::fmt;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Degree-preserving map of complexes, stored total over the degrees where
/// both sides are nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    components: Vec<Matrix>,
}

fn overlap(x: &ChainComplex, y: &ChainComplex) -> (i64, i64) {
    if x.is_zero() || y.is_zero() {
        return (0, -1);
    }
    (x.min_deg().max(y.min_deg()), x.max_deg().min(y.max_deg()))
}

impl ChainMap {
    /// Builds a map from per-degree components and checks it commutes with
    /// the differentials.
    pub fn new(source: ChainComplex, target: ChainComplex, component: impl FnMut(i64) -> Matrix) -> Result<Self> {
        let f = Self::from_fn_unchecked(source, target, component)?;
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_fn_unchecked(
        source: ChainComplex,
        target: ChainComplex,
        mut component: impl FnMut(i64) -> Matrix,
    ) -> Result<Self> {
        source.check_ring(&target)?;
        let (lo, hi) = overlap(&source, &target);
        let mut components = Vec::new();
        for i in lo..=hi {
            let m = component(i);
            let expected = (target.rank(i), source.rank(i));
            if m.shape() != expected {
                return Err(Error::InvalidMap {
                    degree: i,
                    reason: format!("component has shape {:?}, expected {:?}", m.shape(), expected),
                });
            }
            components.push(m);
        }
        Ok(ChainMap { source, target, lo, components })
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self::from_fn_unchecked(x.clone(), x.clone(), |i| Matrix::identity(x.ring(), x.rank(i))).expect("identity")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        let ring = source.ring();
        Self::from_fn_unchecked(source.clone(), target.clone(), |i| Matrix::zeros(ring, target.rank(i), source.rank(i)))
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `f_i : X_i -> Y_i`; zero outside the stored range.
    pub fn component(&self, i: i64) -> Cow<'_, Matrix> {
        let idx = i - self.lo;
        if idx >= 0 && (idx as usize) < self.components.len() {
            Cow::Borrowed(&self.components[idx as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.source.ring(), self.target.rank(i), self.source.rank(i)))
        }
    }

    /// Degrees where commutation has to be checked.
    fn span(&self) -> (i64, i64) {
        let lo = self.source.min_deg().min(self.target.min_deg());
        let hi = self.source.max_deg().max(self.target.max_deg()) + 1;
        (lo, hi)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.span();
        for i in lo..=hi {
            let left = &*self.target.diff(i) * &self.component(i);
            let right = &*self.component(i - 1) * &self.source.diff(i);
            if left != right {
                return Err(Error::InvalidMap {
                    degree: i,
                    reason: format!("d f = {left} but f d = {right}"),
                });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Dimension("composing maps whose middle complexes differ".into()));
        }
        Self::from_fn_unchecked(first.source.clone(), self.target.clone(), |i| {
            &*self.component(i) * &first.component(i)
        })
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Dimension("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Self::from_fn_unchecked(self.source.clone(), self.target.clone(), |i| {
            &*self.component(i) + &other.component(i)
        })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Self::from_fn_unchecked(self.source.clone(), self.target.clone(), |i| {
            &*self.component(i) - &other.component(i)
        })
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo: self.lo,
            components: self.components.iter().map(|m| -m).collect(),
        }
    }

    /// `Σ^k f`, with components `f_{i-k}`.
    pub fn shift(&self, k: i64) -> ChainMap {
        let (s, t) = (self.source.shift(k), self.target.shift(k));
        Self::from_fn_unchecked(s, t, |i| self.component(i - k).into_owned()).expect("shifted map")
    }

    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        let s = self.source.direct_sum(&other.source)?;
        let t = self.target.direct_sum(&other.target)?;
        Self::from_fn_unchecked(s, t, |i| self.component(i).block_diag(&other.component(i)))
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap {{ ")?;
        for (k, m) in self.components.iter().enumerate() {
            write!(f, "f_{} = {m}; ", self.lo + k as i64)?;
        }
        write!(f, "}}")
    }
}

/// Chain homotopy `h` with `f_i - g_i = d_{i+1} h_i + h_{i-1} d_i`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    f: ChainMap,
    g: ChainMap,
    lo: i64,
    /// `components[k]` is `h_{lo+k} : X_{lo+k} -> Y_{lo+k+1}`.
    components: Vec<Matrix>,
}

impl Homotopy {
    pub fn new(f: ChainMap, g: ChainMap, mut component: impl FnMut(i64) -> Matrix) -> Result<Self> {
        f.same_ends(&g)?;
        let x = f.source();
        let y = f.target();
        let (lo, hi) = if x.is_zero() || y.is_zero() { (0, -1) } else { (x.min_deg(), x.max_deg()) };
        let mut components = Vec::new();
        for i in lo..=hi {
            let m = component(i);
            let expected = (y.rank(i + 1), x.rank(i));
            if m.shape() != expected {
                return Err(Error::InvalidHomotopy {
                    degree: i,
                    reason: format!("component has shape {:?}, expected {:?}", m.shape(), expected),
                });
            }
            components.push(m);
        }
        let h = Homotopy { f, g, lo, components };
        h.verify()?;
        Ok(h)
    }

    /// Zero homotopy from `f` to itself.
    pub fn reflexive(f: &ChainMap) -> Self {
        let ring = f.source().ring();
        let (x, y) = (f.source().clone(), f.target().clone());
        Self::new(f.clone(), f.clone(), |i| Matrix::zeros(ring, y.rank(i + 1), x.rank(i))).expect("zero homotopy")
    }

    pub fn f(&self) -> &ChainMap {
        &self.f
    }

    pub fn g(&self) -> &ChainMap {
        &self.g
    }

    pub fn component(&self, i: i64) -> Cow<'_, Matrix> {
        let idx = i - self.lo;
        if idx >= 0 && (idx as usize) < self.components.len() {
            Cow::Borrowed(&self.components[idx as usize])
        } else {
            let (x, y) = (self.f.source(), self.f.target());
            Cow::Owned(Matrix::zeros(x.ring(), y.rank(i + 1), x.rank(i)))
        }
    }

    pub fn verify(&self) -> Result<()> {
        let x = self.f.source();
        let y = self.f.target();
        let (lo, hi) = self.f.span();
        for i in lo..=hi {
            let lhs = &*self.f.component(i) - &self.g.component(i);
            let dh = &*y.diff(i + 1) * &self.component(i);
            let hd = &*self.component(i - 1) * &x.diff(i);
            if lhs != &dh + &hd {
                return Err(Error::InvalidHomotopy {
                    degree: i,
                    reason: format!("f - g = {lhs} but dh + hd = {}", &dh + &hd),
                });
            }
        }
        Ok(())
    }

    /// Homotopy from `g` to `f`.
    pub fn reverse(&self) -> Homotopy {
        Homotopy {
            f: self.g.clone(),
            g: self.f.clone(),
            lo: self.lo,
            components: self.components.iter().map(|m| -m).collect(),
        }
    }

    /// `post ∘ h ∘ pre`, a homotopy between `post f pre` and `post g pre`.
    pub fn whisker(&self, pre: &ChainMap, post: &ChainMap) -> Result<Homotopy> {
        let f = post.compose(&self.f.compose(pre)?)?;
        let g = post.compose(&self.g.compose(pre)?)?;
        Homotopy::new(f, g, |i| &(&*post.component(i + 1) * &self.component(i)) * &pre.component(i))
    }

    /// Concatenation: `self : f ~ g` and `next : g ~ k` give `f ~ k`.
    pub fn then(&self, next: &Homotopy) -> Result<Homotopy> {
        if self.g != next.f {
            return Err(Error::Dimension("homotopies do not compose".into()));
        }
        Homotopy::new(self.f.clone(), next.g.clone(), |i| &*self.component(i) + &next.component(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn identity_and_composition() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let id = ChainMap::identity(&x);
        assert!(id.validate().is_ok());
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn non_commuting_map_rejected() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let y = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[1]]));
        let bad = ChainMap::new(x.clone(), y.clone(), |_| Matrix::from_i64(Z, &[&[1]]));
        assert!(bad.is_err());
        let good = ChainMap::new(x, y, |i| Matrix::from_i64(Z, &[&[if i == 1 { 2 } else { 1 }]]));
        assert!(good.is_ok());
    }

    #[test]
    fn homotopy_on_elementary_complex() {
        let e = ChainComplex::elementary(Z, 1, 1);
        let id = ChainMap::identity(&e);
        let zero = ChainMap::zero(&e, &e).unwrap();
        let h = Homotopy::new(id, zero, |i| {
            if i == 0 { Matrix::identity(Z, 1) } else { Matrix::zeros(Z, e.rank(i + 1), e.rank(i)) }
        });
        assert!(h.is_ok());
    }
}
