use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

/// Bounded chain complex of finitely generated free modules, graded
/// homologically: `d_i : X_i -> X_{i-1}`.
///
/// Stored canonically: zero-rank degrees at either end are trimmed, and the
/// zero complex is the empty range starting at degree 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    ring: Ring,
    min_deg: i64,
    ranks: Vec<usize>,
    /// `diffs[j]` is `d_{min_deg + j + 1}`.
    diffs: Vec<Matrix>,
}

/// First violated condition found by [`ChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDefect {
    Shape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    Ring { degree: i64 },
    /// `d_{degree-1} * d_degree` is nonzero.
    NotSquareZero { degree: i64, product: Matrix },
}

impl fmt::Display for ComplexDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexDefect::Shape { degree, expected, found } => write!(
                f,
                "d_{degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            ComplexDefect::Ring { degree } => write!(f, "d_{degree} is over the wrong ring"),
            ComplexDefect::NotSquareZero { degree, product } => {
                write!(f, "d_{} * d_{degree} = {product} is not zero", degree - 1)
            }
        }
    }
}

impl From<ComplexDefect> for Error {
    fn from(d: ComplexDefect) -> Self {
        let degree = match &d {
            ComplexDefect::Shape { degree, .. }
            | ComplexDefect::Ring { degree }
            | ComplexDefect::NotSquareZero { degree, .. } => *degree,
        };
        Error::InvalidComplex { degree, reason: d.to_string() }
    }
}

impl ChainComplex {
    /// Builds and validates a complex. `diffs[j]` is the differential leaving
    /// degree `min_deg + j + 1`, of shape `ranks[j] x ranks[j + 1]`.
    pub fn new(ring: Ring, min_deg: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let x = Self::from_parts(ring, min_deg, ranks, diffs)?;
        x.validate()?;
        Ok(x)
    }

    /// Shape-checked construction without the `d^2 = 0` test.
    pub fn from_parts(ring: Ring, min_deg: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::InvalidComplex {
                degree: min_deg,
                reason: format!("{} ranks need {} differentials, got {}", ranks.len(), ranks.len().saturating_sub(1), diffs.len()),
            });
        }
        for (j, d) in diffs.iter().enumerate() {
            let degree = min_deg + j as i64 + 1;
            if d.ring() != ring {
                return Err(ComplexDefect::Ring { degree }.into());
            }
            let expected = (ranks[j], ranks[j + 1]);
            if d.shape() != expected {
                return Err(ComplexDefect::Shape { degree, expected, found: d.shape() }.into());
            }
        }
        Ok(Self::trimmed(ring, min_deg, ranks, diffs))
    }

    pub(crate) fn trimmed(ring: Ring, mut min_deg: i64, mut ranks: Vec<usize>, mut diffs: Vec<Matrix>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
            diffs.pop();
        }
        let lead = ranks.iter().take_while(|&&r| r == 0).count();
        if lead == ranks.len() {
            return ChainComplex { ring, min_deg: 0, ranks: Vec::new(), diffs: Vec::new() };
        }
        if lead > 0 {
            ranks.drain(..lead);
            diffs.drain(..lead);
            min_deg += lead as i64;
        }
        ChainComplex { ring, min_deg, ranks, diffs }
    }

    /// Builds from a closure giving `d_i` for `i` in `(lo, hi]`.
    pub(crate) fn from_fn(
        ring: Ring,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        mut diff: impl FnMut(i64) -> Matrix,
    ) -> Self {
        if hi < lo {
            return Self::zero(ring);
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs = (lo + 1..=hi).map(&mut diff).collect();
        Self::trimmed(ring, lo, ranks, diffs)
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex { ring, min_deg: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// `R^rank` concentrated in one degree.
    pub fn free(ring: Ring, degree: i64, rank: usize) -> Self {
        Self::trimmed(ring, degree, vec![rank], Vec::new())
    }

    /// Two-term complex `X_top --d--> X_{top-1}`.
    pub fn two_term(top: i64, d: Matrix) -> Self {
        let ring = d.ring();
        Self::trimmed(ring, top - 1, vec![d.rows(), d.cols()], vec![d])
    }

    /// Elementary acyclic complex `R^rank --id--> R^rank` in degrees `top, top-1`.
    pub fn elementary(ring: Ring, top: i64, rank: usize) -> Self {
        Self::two_term(top, Matrix::identity(ring, rank))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// `min_deg - 1` for the zero complex.
    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_deg..=self.max_deg()
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.min_deg || i > self.max_deg() {
            0
        } else {
            self.ranks[(i - self.min_deg) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_i : X_i -> X_{i-1}`; an empty or zero matrix outside the support.
    pub fn diff(&self, i: i64) -> Cow<'_, Matrix> {
        if i > self.min_deg && i <= self.max_deg() {
            Cow::Borrowed(&self.diffs[(i - self.min_deg - 1) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.ring, self.rank(i - 1), self.rank(i)))
        }
    }

    /// Differentials in storage order (`d_{min+1}`, `d_{min+2}`, ...).
    pub fn diffs(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn validate(&self) -> std::result::Result<(), ComplexDefect> {
        for (j, d) in self.diffs.iter().enumerate() {
            let degree = self.min_deg + j as i64 + 1;
            if d.ring() != self.ring {
                return Err(ComplexDefect::Ring { degree });
            }
            let expected = (self.ranks[j], self.ranks[j + 1]);
            if d.shape() != expected {
                return Err(ComplexDefect::Shape { degree, expected, found: d.shape() });
            }
        }
        for (j, w) in self.diffs.windows(2).enumerate() {
            let product = &w[0] * &w[1];
            if !product.is_zero() {
                let degree = self.min_deg + j as i64 + 2;
                return Err(ComplexDefect::NotSquareZero { degree, product });
            }
        }
        Ok(())
    }

    pub fn check_ring(&self, other: &ChainComplex) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.label(), other.ring.label()));
        }
        Ok(())
    }

    /// `Σ^k X`: `(Σ^k X)_i = X_{i-k}` with differentials scaled by `(-1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let sign = self.ring.sign(k);
        ChainComplex {
            ring: self.ring,
            min_deg: if self.is_zero() { 0 } else { self.min_deg + k },
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Degreewise block sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        self.check_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().max(other.max_deg());
        Ok(Self::from_fn(
            self.ring,
            lo,
            hi,
            |i| self.rank(i) + other.rank(i),
            |i| self.diff(i).block_diag(&other.diff(i)),
        ))
    }

    /// Brutal truncation keeping degrees `<= n` verbatim.
    pub fn truncate_above(&self, n: i64) -> ChainComplex {
        let hi = self.max_deg().min(n);
        Self::from_fn(self.ring, self.min_deg, hi, |i| self.rank(i), |i| self.diff(i).into_owned())
    }

    /// Brutal truncation keeping degrees `>= n` verbatim.
    pub fn truncate_below(&self, n: i64) -> ChainComplex {
        let lo = self.min_deg.max(n);
        Self::from_fn(self.ring, lo, self.max_deg(), |i| self.rank(i), |i| self.diff(i).into_owned())
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { self.rank(i) as i64 } else { -(self.rank(i) as i64) }).sum()
    }

    /// Applies a degreewise change of basis: `d'_i = P_{i-1} d_i P_i^{-1}`.
    pub(crate) fn conjugate(&self, p: impl Fn(i64) -> Matrix, p_inv: impl Fn(i64) -> Matrix) -> ChainComplex {
        Self::from_fn(self.ring, self.min_deg, self.max_deg(), |i| self.rank(i), |i| {
            &(&p(i - 1) * &self.diff(i)) * &p_inv(i)
        })
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex<{}>[", self.ring)?;
        if self.is_zero() {
            return write!(f, "0]");
        }
        for i in self.degrees().rev() {
            write!(f, "{}@{}", self.rank(i), i)?;
            if i > self.min_deg {
                write!(f, " --{}--> ", self.diff(i))?;
            }
        }
        write!(f, "]")
    }
}
