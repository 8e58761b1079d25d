use std::fmt;

use crate::chain::{cone, homology, is_quasi_iso, ChainComplex, ChainMap, HomologyProfile};
use crate::linalg::{kernel_basis, solve_matrix, Matrix};

fn geq(h: &HomologyProfile, n: i64) -> bool {
    h.min_degree().is_none_or(|lo| lo >= n)
}

fn leq(h: &HomologyProfile, n: i64) -> bool {
    match h.max_degree() {
        None => true,
        Some(hi) if hi > n => false,
        Some(hi) if hi == n => h.get(n).torsion.is_empty(),
        Some(_) => true,
    }
}

/// `X ∈ C_{w≥n}`: homology vanishes below degree `n`.
pub fn in_w_geq(x: &ChainComplex, n: i64) -> bool {
    geq(&homology(x), n)
}

/// `X ∈ C_{w≤n}`: homology vanishes above `n` and `H_n` is torsion-free.
pub fn in_w_leq(x: &ChainComplex, n: i64) -> bool {
    leq(&homology(x), n)
}

pub fn in_w_eq(x: &ChainComplex, n: i64) -> bool {
    let h = homology(x);
    geq(&h, n) && leq(&h, n)
}

pub fn in_heart(x: &ChainComplex) -> bool {
    in_w_eq(x, 0)
}

/// Minimal weight interval of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightBounds {
    /// The complex is acyclic, hence of every weight.
    Zero,
    Bounded { lo: i64, hi: i64 },
}

impl WeightBounds {
    /// True when the complex lies in `C_{w=n}`.
    pub fn is_pure(&self, n: i64) -> bool {
        match self {
            WeightBounds::Zero => true,
            WeightBounds::Bounded { lo, hi } => *lo == n && *hi == n,
        }
    }

    pub fn within(&self, lo_bound: i64, hi_bound: i64) -> bool {
        match self {
            WeightBounds::Zero => true,
            WeightBounds::Bounded { lo, hi } => *lo >= lo_bound && *hi <= hi_bound,
        }
    }
}

impl fmt::Display for WeightBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightBounds::Zero => f.write_str("zero"),
            WeightBounds::Bounded { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

pub fn weight_bounds_of(h: &HomologyProfile) -> WeightBounds {
    match (h.min_degree(), h.max_degree()) {
        (Some(lo), Some(hi)) => {
            let hi = if h.get(hi).torsion.is_empty() { hi } else { hi + 1 };
            WeightBounds::Bounded { lo, hi }
        }
        _ => WeightBounds::Zero,
    }
}

pub fn weight_bounds(x: &ChainComplex) -> WeightBounds {
    weight_bounds_of(&homology(x))
}

/// `X ∈ C_{t≥n}`.
///
/// Decided through the cotruncation: `X` lies in `t≥n` exactly when the
/// inclusion of `τ_{≥n} X` is a quasi-isomorphism.
pub fn in_t_geq(x: &ChainComplex, n: i64) -> bool {
    is_quasi_iso(&t_cotruncate(x, n).inclusion)
}

/// `X ∈ C_{t≤n}`: homology vanishes above `n`, torsion allowed.
pub fn in_t_leq(x: &ChainComplex, n: i64) -> bool {
    homology(x).max_degree().is_none_or(|hi| hi <= n)
}

/// Good truncation `… -> X_{n+1} -> Z_n` with its inclusion into `X`.
#[derive(Clone, Debug)]
pub struct TCotruncation {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
}

/// Subcomplex `(… -> X_{n+1} -> ker d_n)`, with degree `n` written in a
/// basis of the cycles.
pub fn t_cotruncate(x: &ChainComplex, n: i64) -> TCotruncation {
    let ring = x.ring();
    if x.is_zero() || n > x.max_deg() {
        let zero = ChainComplex::zero(ring);
        let inclusion = ChainMap::zero(&zero, x).expect("zero map");
        return TCotruncation { complex: zero, inclusion };
    }
    let cycles = kernel_basis(&x.diff(n));
    let into_cycles = solve_matrix(&cycles, &x.diff(n + 1))
        .expect("shapes agree")
        .expect("boundaries are cycles");
    let rank = |i: i64| if i == n { cycles.cols() } else { x.rank(i) };
    let complex = ChainComplex::from_fn(ring, n, x.max_deg(), rank, |i| {
        if i == n + 1 {
            into_cycles.clone()
        } else {
            x.diff(i).into_owned()
        }
    });
    let inclusion = ChainMap::new(complex.clone(), x.clone(), |i| {
        if i == n {
            cycles.clone()
        } else if i > n {
            Matrix::identity(ring, x.rank(i))
        } else {
            Matrix::zeros(ring, x.rank(i), 0)
        }
    })
    .expect("cotruncation inclusion commutes");
    TCotruncation { complex, inclusion }
}

/// `τ_{≤n-1}`-side piece realized as `cone(τ_{≥n} X -> X)`, staying free.
pub fn t_truncate_below(x: &ChainComplex, n: i64) -> ChainComplex {
    cone(&t_cotruncate(x, n).inclusion).complex
}

/// Left adjacency at `n`: `t≥n` and `w≥n` agree on `X`.
pub fn check_left_adjacent(x: &ChainComplex, n: i64) -> bool {
    in_t_geq(x, n) == in_w_geq(x, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::homology;
    use crate::linalg::Ring;

    const Z: Ring = Ring::Integers;

    fn z2() -> ChainComplex {
        ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]))
    }

    #[test]
    fn point_memberships() {
        let pt = ChainComplex::free(Z, 0, 1);
        assert!(in_w_geq(&pt, 0));
        assert!(!in_w_geq(&pt, 1));
        assert!(in_w_leq(&pt, 0));
        assert!(in_heart(&ChainComplex::free(Z, 0, 3)));
        assert_eq!(weight_bounds(&pt), WeightBounds::Bounded { lo: 0, hi: 0 });
    }

    #[test]
    fn torsion_memberships() {
        let x = z2();
        assert!(in_w_geq(&x, 0));
        assert!(!in_w_leq(&x, 0));
        assert!(in_w_leq(&x, 1));
        assert_eq!(weight_bounds(&x), WeightBounds::Bounded { lo: 0, hi: 1 });
        assert!(in_t_leq(&x, 0));
        assert!(in_t_geq(&x, 0));
    }

    #[test]
    fn over_f2_only_vanishing_matters() {
        let f2 = Ring::PrimeField(2);
        let x = ChainComplex::two_term(1, Matrix::from_i64(f2, &[&[0]]));
        assert!(!in_w_leq(&x, 0));
        let y = ChainComplex::two_term(1, Matrix::from_i64(f2, &[&[1]]));
        assert!(in_w_leq(&y, 0));
    }

    #[test]
    fn zero_complex_everywhere() {
        let zero = ChainComplex::zero(Z);
        for n in -3..3 {
            assert!(in_w_geq(&zero, n));
            assert!(in_w_leq(&zero, n));
        }
        assert_eq!(weight_bounds(&zero), WeightBounds::Zero);
    }

    #[test]
    fn cotruncation_keeps_upper_homology() {
        let d2 = Matrix::from_i64(Z, &[&[2, 0], &[0, 0], &[0, 6]]);
        let d1 = Matrix::from_i64(Z, &[&[0, 1, 0]]);
        let x = ChainComplex::new(Z, 0, vec![1, 3, 2], vec![d1, d2]).unwrap();
        let t = t_cotruncate(&x, 1);
        let h = homology(&t.complex);
        assert!(h.min_degree().unwrap() >= 1);
        assert_eq!(h.get(1), homology(&x).get(1));
        assert_eq!(in_t_geq(&x, 1), in_w_geq(&x, 1));
        assert!(check_left_adjacent(&x, 0));
        let below = t_truncate_below(&x, 1);
        assert!(homology(&below).iter().all(|(i, _)| i < 1));
    }
}
