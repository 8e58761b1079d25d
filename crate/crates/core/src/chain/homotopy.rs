//! Homotopy questions reduced to linear systems over the base ring.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{cone, homology, split_acyclic, ChainComplex, ChainMap, HomComplex, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};

/// Two maps `forth : X -> Y`, `back : Y -> X` inverse up to the recorded homotopies.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub forth: ChainMap,
    pub back: ChainMap,
    /// `back ∘ forth ~ id_X`.
    pub back_forth: Homotopy,
    /// `forth ∘ back ~ id_Y`.
    pub forth_back: Homotopy,
}

impl HomotopyEquivalence {
    pub fn verify(&self) -> Result<()> {
        self.forth.validate()?;
        self.back.validate()?;
        let bf = self.back.compose(&self.forth)?;
        let fb = self.forth.compose(&self.back)?;
        if self.back_forth.f() != &bf || self.back_forth.g() != &ChainMap::identity(self.forth.source()) {
            return Err(Error::invariant("back∘forth homotopy has the wrong ends"));
        }
        if self.forth_back.f() != &fb || self.forth_back.g() != &ChainMap::identity(self.forth.target()) {
            return Err(Error::invariant("forth∘back homotopy has the wrong ends"));
        }
        self.back_forth.verify()?;
        self.forth_back.verify()
    }

    pub fn inverse(&self) -> HomotopyEquivalence {
        HomotopyEquivalence {
            forth: self.back.clone(),
            back: self.forth.clone(),
            back_forth: self.forth_back.clone(),
            forth_back: self.back_forth.clone(),
        }
    }

    /// `other ∘ self`, for `self : X ≃ Y` and `other : Y ≃ Z`.
    pub fn then(&self, other: &HomotopyEquivalence) -> Result<HomotopyEquivalence> {
        let forth = other.forth.compose(&self.forth)?;
        let back = self.back.compose(&other.back)?;
        // back∘forth = b1 (b2 f2) f1 ~ b1 f1 ~ id
        let inner = other.back_forth.whisker(&self.forth, &self.back)?;
        let back_forth = Homotopy::new(back.compose(&forth)?, ChainMap::identity(self.forth.source()), |i| {
            &*inner.component(i) + &self.back_forth.component(i)
        })?;
        let inner = self.forth_back.whisker(&other.back, &other.forth)?;
        let forth_back = Homotopy::new(forth.compose(&back)?, ChainMap::identity(other.forth.target()), |i| {
            &*inner.component(i) + &other.forth_back.component(i)
        })?;
        Ok(HomotopyEquivalence { forth, back, back_forth, forth_back })
    }
}

/// A homotopy `f ~ 0`, found by solving `∂h = f` in the hom-complex.
pub fn nullhomotopy(f: &ChainMap) -> Result<Option<Homotopy>> {
    let hom = HomComplex::new(f.source(), f.target())?;
    let rhs = hom.map_to_vector(f);
    let boundary = hom.complex.diff(1);
    let Some(h) = solve(&boundary, &rhs)? else {
        return Ok(None);
    };
    let zero = ChainMap::zero(f.source(), f.target())?;
    Homotopy::new(f.clone(), zero, |i| hom.unflatten(1, &h, i)).map(Some)
}

/// A homotopy `f ~ g`, if one exists.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    let diff = f.sub(g)?;
    Ok(nullhomotopy(&diff)?.map(|h| {
        Homotopy::new(f.clone(), g.clone(), |i| h.component(i).into_owned()).expect("shifted witness")
    }))
}

/// Solves for a chain map `φ : P -> Q` with `post ∘ φ ∘ pre ~ target`.
///
/// `pre` (if given) ends at `P` and `post` (if given) starts at `Q`. The
/// cycle condition on `φ` and the homotopy are solved as one linear system;
/// `None` means no such map exists.
pub fn solve_up_to_homotopy(
    p: &ChainComplex,
    q: &ChainComplex,
    pre: Option<&ChainMap>,
    post: Option<&ChainMap>,
    target: &ChainMap,
) -> Result<Option<(ChainMap, Homotopy)>> {
    if let Some(pre) = pre {
        if pre.target() != p {
            return Err(Error::Dimension("pre-composition does not end at the source".into()));
        }
    }
    if let Some(post) = post {
        if post.source() != q {
            return Err(Error::Dimension("post-composition does not start at the target".into()));
        }
    }
    let s = pre.map_or(p, |m| m.source());
    let t = post.map_or(q, |m| m.target());
    if target.source() != s || target.target() != t {
        return Err(Error::Dimension("target map has the wrong ends".into()));
    }
    let ring = p.ring();
    let pq = HomComplex::new(p, q)?;
    let st = HomComplex::new(s, t)?;
    let n_phi = pq.dim(0);
    let n_k = st.dim(1);
    let n_cyc = pq.dim(-1);
    let n_eq = st.dim(0);

    let mut system = Matrix::zeros(ring, n_cyc + n_eq, n_phi + n_k);
    let cycle = pq.complex.diff(0);
    for r in 0..n_cyc {
        for c in 0..n_phi {
            let v = cycle.get(r, c);
            if !v.is_zero() {
                system.set(r, c, v.clone());
            }
        }
    }
    let mut unit = vec![BigInt::zero(); n_phi];
    for c in 0..n_phi {
        unit[c] = BigInt::from(1);
        let column = st.flatten(0, |i| {
            let phi = pq.unflatten(0, &unit, i);
            let left = match post {
                Some(m) => &*m.component(i) * &phi,
                None => phi,
            };
            match pre {
                Some(m) => &left * &m.component(i),
                None => left,
            }
        });
        unit[c] = BigInt::zero();
        for (r, v) in column.into_iter().enumerate() {
            if !v.is_zero() {
                system.set(n_cyc + r, c, v);
            }
        }
    }
    let boundary = st.complex.diff(1);
    for r in 0..n_eq {
        for c in 0..n_k {
            let v = boundary.get(r, c);
            if !v.is_zero() {
                system.set(n_cyc + r, n_phi + c, -v);
            }
        }
    }
    let mut rhs = vec![BigInt::zero(); n_cyc];
    rhs.extend(st.map_to_vector(target));
    let Some(sol) = solve(&system, &rhs)? else {
        return Ok(None);
    };
    let phi = pq.vector_to_map(&sol[..n_phi])?;
    let k = &sol[n_phi..];
    let mut composite = phi.clone();
    if let Some(post) = post {
        composite = post.compose(&composite)?;
    }
    if let Some(pre) = pre {
        composite = composite.compose(pre)?;
    }
    let h = Homotopy::new(composite, target.clone(), |i| st.unflatten(1, k, i))?;
    Ok(Some((phi, h)))
}

/// Quasi-isomorphism test: the cone is acyclic.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    homology(&cone(f).complex).is_zero()
}

/// Over Z and F_p a map of bounded free complexes is a homotopy equivalence
/// exactly when it is a quasi-isomorphism.
pub fn is_homotopy_equivalence(f: &ChainMap) -> bool {
    is_quasi_iso(f)
}

/// Homotopy inverse of `f`, read off from a contraction of its cone.
///
/// A contraction `s` of `cone(f)` has blocks `[[a, b], [c, e]]`; then
/// `g = -b` is inverse to `f`, with `g f - id = d a + a d` and
/// `f g - id = d(-e) + (-e) d`.
pub fn homotopy_inverse(f: &ChainMap) -> Result<Option<HomotopyEquivalence>> {
    let c = cone(f);
    let Ok(split) = split_acyclic(&c.complex) else {
        return Ok(None);
    };
    let s = split.contraction;
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    // cone_i = X_{i-1} ⊕ Y_i; s_i : cone_i -> cone_{i+1} = X_i ⊕ Y_{i+1}
    let block = |i: i64| s.component(i).into_owned();
    let g = ChainMap::new(y.clone(), x.clone(), |i| {
        let si = block(i);
        let rows: Vec<usize> = (0..x.rank(i)).collect();
        let cols: Vec<usize> = (x.rank(i - 1)..x.rank(i - 1) + y.rank(i)).collect();
        -&si.select_rows(&rows).select_cols(&cols)
    })?;
    let gf = g.compose(f)?;
    let fg = f.compose(&g)?;
    let back_forth = Homotopy::new(gf, ChainMap::identity(x), |j| {
        let s_next = block(j + 1);
        let rows: Vec<usize> = (0..x.rank(j + 1)).collect();
        let cols: Vec<usize> = (0..x.rank(j)).collect();
        s_next.select_rows(&rows).select_cols(&cols)
    })?;
    let forth_back = Homotopy::new(fg, ChainMap::identity(y), |i| {
        let si = block(i);
        let rows: Vec<usize> = (x.rank(i)..x.rank(i) + y.rank(i + 1)).collect();
        let cols: Vec<usize> = (x.rank(i - 1)..x.rank(i - 1) + y.rank(i)).collect();
        if rows.is_empty() || cols.is_empty() {
            Matrix::zeros(ring, y.rank(i + 1), y.rank(i))
        } else {
            -&si.select_rows(&rows).select_cols(&cols)
        }
    })?;
    Ok(Some(HomotopyEquivalence { forth: f.clone(), back: g, back_forth, forth_back }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cylinder;
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn zero_map_has_zero_homotopy() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let h = nullhomotopy(&ChainMap::zero(&x, &x).unwrap()).unwrap().unwrap();
        assert!((x.min_deg()..=x.max_deg()).all(|i| h.component(i).is_zero()));
    }

    #[test]
    fn identity_of_elementary_is_nullhomotopic() {
        let c = cone(&ChainMap::identity(&ChainComplex::free(Z, 0, 1))).complex;
        let h = nullhomotopy(&ChainMap::identity(&c)).unwrap();
        assert!(h.is_some());
    }

    #[test]
    fn generator_class_is_not_nullhomotopic() {
        let pt = ChainComplex::free(Z, 0, 1);
        let res = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        let f = ChainMap::new(pt, res, |_| Matrix::from_i64(Z, &[&[1]])).unwrap();
        assert!(nullhomotopy(&f).unwrap().is_none());
        let twice = ChainMap::new(f.source().clone(), f.target().clone(), |_| Matrix::from_i64(Z, &[&[2]])).unwrap();
        assert!(nullhomotopy(&twice).unwrap().is_some());
    }

    #[test]
    fn equivalence_tests() {
        let x = ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]));
        assert!(is_quasi_iso(&ChainMap::identity(&x)));
        let zero_to_pt = ChainMap::zero(&ChainComplex::zero(Z), &ChainComplex::free(Z, 0, 1)).unwrap();
        assert!(!is_quasi_iso(&zero_to_pt));
        let f = ChainMap::new(ChainComplex::free(Z, 0, 1), x.clone(), |_| Matrix::from_i64(Z, &[&[1]])).unwrap();
        let cyl = cylinder(&f).unwrap();
        assert!(is_homotopy_equivalence(&cyl.projection));
        let inv = homotopy_inverse(&cyl.projection).unwrap().unwrap();
        inv.verify().unwrap();
    }

    #[test]
    fn lifting_through_a_map() {
        // Find g : Z^2[0] -> Z[0] with g ∘ incl ~ id.
        let a = ChainComplex::free(Z, 0, 1);
        let b = ChainComplex::free(Z, 0, 2);
        let incl = ChainMap::new(a.clone(), b.clone(), |_| Matrix::from_i64(Z, &[&[1], &[0]])).unwrap();
        let (g, h) = solve_up_to_homotopy(&b, &a, Some(&incl), None, &ChainMap::identity(&a)).unwrap().unwrap();
        assert_eq!(g.compose(&incl).unwrap(), ChainMap::identity(&a));
        h.verify().unwrap();
    }
}
