use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::invariant_factors;
use crate::chain::{ChainComplex, ChainMap, HomComplex, HomologyProfile};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, ModulePresentation, Ring};

/// Relative frequencies of the building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockWeights {
    /// `R` in one degree.
    pub free: u32,
    /// `[Z -t-> Z]`, only over the integers.
    pub torsion: u32,
    /// `[R -1-> R]`.
    pub elementary: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub ring: Ring,
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_rank: usize,
    pub max_entry: u64,
    pub weights: BlockWeights,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            ring: Ring::Integers,
            min_degree: -4,
            max_degree: 4,
            max_rank: 6,
            max_entry: 3,
            weights: BlockWeights { free: 2, torsion: 2, elementary: 2 },
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_degree > self.max_degree {
            return Err(Error::precondition("empty degree window"));
        }
        if self.max_rank == 0 || self.max_entry == 0 {
            return Err(Error::precondition("rank and entry bounds must be positive"));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenParams { seed, ..self }
    }

    pub fn with_window(self, min_degree: i64, max_degree: i64) -> Self {
        GenParams { min_degree, max_degree, ..self }
    }

    pub fn with_weights(self, free: u32, torsion: u32, elementary: u32) -> Self {
        GenParams { weights: BlockWeights { free, torsion, elementary }, ..self }
    }

    pub fn with_max_rank(self, max_rank: usize) -> Self {
        GenParams { max_rank, ..self }
    }
}

/// One summand of a generated complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Free { degree: i64 },
    Torsion { top: i64, order: u64 },
    Elementary { top: i64 },
}

impl Block {
    fn complex(&self, ring: Ring) -> ChainComplex {
        match self {
            Block::Free { degree } => ChainComplex::free(ring, *degree, 1),
            Block::Torsion { top, order } => {
                ChainComplex::two_term(*top, Matrix::from_i64(ring, &[&[*order as i64]]))
            }
            Block::Elementary { top } => ChainComplex::elementary(ring, *top, 1),
        }
    }
}

/// A complex together with the homology its construction predicts.
#[derive(Clone, Debug)]
pub struct Generated {
    pub complex: ChainComplex,
    pub expected: HomologyProfile,
    pub blocks: Vec<Block>,
}

/// Homology read off from the blocks, without any normal form.
pub fn expected_profile(ring: Ring, blocks: &[Block]) -> HomologyProfile {
    let mut free = std::collections::BTreeMap::<i64, usize>::new();
    let mut torsion = std::collections::BTreeMap::<i64, Vec<u64>>::new();
    for b in blocks {
        match b {
            Block::Free { degree } => *free.entry(*degree).or_default() += 1,
            Block::Torsion { top, order } => torsion.entry(top - 1).or_default().push(*order),
            Block::Elementary { .. } => {}
        }
    }
    let mut profile = HomologyProfile::new(ring);
    let degrees: std::collections::BTreeSet<i64> = free.keys().chain(torsion.keys()).copied().collect();
    for d in degrees {
        let orders = torsion.get(&d).cloned().unwrap_or_default();
        let torsion = invariant_factors(&orders).into_iter().map(BigInt::from).collect();
        profile.insert(d, ModulePresentation { ring, free_rank: free.get(&d).copied().unwrap_or(0), torsion });
    }
    profile
}

fn pick_block(rng: &mut ChaCha8Rng, p: &GenParams) -> Option<Block> {
    let torsion_weight = if p.ring == Ring::Integers && p.max_entry >= 2 { p.weights.torsion } else { 0 };
    let total = p.weights.free + torsion_weight + p.weights.elementary;
    if total == 0 {
        return None;
    }
    let roll = rng.gen_range(0..total);
    let degree = rng.gen_range(p.min_degree..=p.max_degree);
    if roll < p.weights.free {
        return Some(Block::Free { degree });
    }
    if p.min_degree == p.max_degree {
        return None;
    }
    let top = rng.gen_range(p.min_degree + 1..=p.max_degree);
    if roll < p.weights.free + torsion_weight {
        Some(Block::Torsion { top, order: rng.gen_range(2..=p.max_entry) })
    } else {
        Some(Block::Elementary { top })
    }
}

/// Unimodular matrix as a product of elementary matrices with bounded
/// entries, returned with its exact inverse.
pub fn random_unimodular(rng: &mut ChaCha8Rng, ring: Ring, n: usize, max_entry: u64) -> (Matrix, Matrix) {
    let mut m = Matrix::identity(ring, n);
    let mut inv = Matrix::identity(ring, n);
    if n == 0 {
        return (m, inv);
    }
    let bound = max_entry.max(1) as i64;
    // a random permutation first
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let p = Matrix::from_fn(ring, n, n, |r, c| if perm[r] == c { BigInt::from(1) } else { BigInt::from(0) });
    m = &p * &m;
    inv = &inv * &p.transpose();
    for _ in 0..n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let c = rng.gen_range(-bound..=bound);
        if c == 0 {
            continue;
        }
        let mut e = Matrix::identity(ring, n);
        e.set(a, b, BigInt::from(c));
        let mut e_inv = Matrix::identity(ring, n);
        e_inv.set(a, b, BigInt::from(-c));
        m = &e * &m;
        inv = &inv * &e_inv;
    }
    (m, inv)
}

/// Degreewise change of basis by random unimodular matrices.
pub fn conjugate(rng: &mut ChaCha8Rng, x: &ChainComplex, max_entry: u64) -> (ChainComplex, Vec<(i64, Matrix, Matrix)>) {
    let ring = x.ring();
    let bases: Vec<(i64, Matrix, Matrix)> = x
        .degrees()
        .map(|i| {
            let (p, q) = random_unimodular(rng, ring, x.rank(i), max_entry);
            (i, p, q)
        })
        .collect();
    let find = |i: i64, inverse: bool| -> Matrix {
        bases
            .iter()
            .find(|(d, _, _)| *d == i)
            .map(|(_, p, q)| if inverse { q.clone() } else { p.clone() })
            .unwrap_or_else(|| Matrix::identity(ring, x.rank(i)))
    };
    let y = x.conjugate(|i| find(i, false), |i| find(i, true));
    (y, bases)
}

/// The isomorphism `X -> P X P^{-1}` recorded by [`conjugate`].
pub fn conjugation_map(x: &ChainComplex, y: &ChainComplex, bases: &[(i64, Matrix, Matrix)]) -> Result<ChainMap> {
    ChainMap::new(x.clone(), y.clone(), |i| {
        bases
            .iter()
            .find(|(d, _, _)| *d == i)
            .map(|(_, p, _)| p.clone())
            .unwrap_or_else(|| Matrix::identity(x.ring(), x.rank(i)))
    })
}

pub fn gen_complex_with(rng: &mut ChaCha8Rng, p: &GenParams) -> Generated {
    let ring = p.ring;
    let width = (p.max_degree - p.min_degree + 1) as usize;
    let attempts = rng.gen_range(0..=width * p.max_rank.min(4));
    let mut ranks = vec![0usize; width];
    let mut blocks = Vec::new();
    for _ in 0..attempts {
        let Some(block) = pick_block(rng, p) else { continue };
        let touched: Vec<i64> = match &block {
            Block::Free { degree } => vec![*degree],
            Block::Torsion { top, .. } | Block::Elementary { top } => vec![*top, top - 1],
        };
        if touched.iter().any(|d| ranks[(d - p.min_degree) as usize] + 1 > p.max_rank) {
            continue;
        }
        for d in touched {
            ranks[(d - p.min_degree) as usize] += 1;
        }
        blocks.push(block);
    }
    let mut x = ChainComplex::zero(ring);
    for b in &blocks {
        x = x.direct_sum(&b.complex(ring)).expect("same ring");
    }
    let (complex, _) = conjugate(rng, &x, p.max_entry);
    Generated { complex, expected: expected_profile(ring, &blocks), blocks }
}

/// Direct sum of shifted free modules and elementary and torsion blocks,
/// hidden by a random change of basis in every degree.
pub fn gen_complex(p: &GenParams) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    gen_complex_with(&mut rng, p)
}

/// Random chain map: a small combination of a basis of the degree-zero
/// cycles of the hom-complex.
pub fn gen_chain_map_with(rng: &mut ChaCha8Rng, x: &ChainComplex, y: &ChainComplex) -> Result<ChainMap> {
    let hom = HomComplex::new(x, y)?;
    let cycles = kernel_basis(&hom.complex.diff(0));
    let mut v = vec![BigInt::from(0); cycles.rows()];
    for c in 0..cycles.cols() {
        let k = rng.gen_range(-2i64..=2);
        if k == 0 {
            continue;
        }
        for (r, slot) in v.iter_mut().enumerate() {
            *slot += cycles.get(r, c) * k;
        }
    }
    hom.vector_to_map(&v)
}

pub fn gen_chain_map(seed: u64, x: &ChainComplex, y: &ChainComplex) -> Result<ChainMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_chain_map_with(&mut rng, x, y)
}

/// `X ⊕ E` under a random change of basis, `E` a random elementary acyclic
/// complex inside the degree window of `X`.
pub fn refiltration_source(x: &ChainComplex, rng: &mut ChaCha8Rng) -> Result<ChainComplex> {
    let ring = x.ring();
    let (lo, hi) = if x.is_zero() { (0, 1) } else { (x.min_deg(), x.max_deg().max(x.min_deg() + 1)) };
    let top = rng.gen_range(lo + 1..=hi);
    let e = ChainComplex::elementary(ring, top, rng.gen_range(1..=2));
    let sum = x.direct_sum(&e)?;
    Ok(conjugate(rng, &sum, 2).0)
}

/// Seed for trial `i` of a campaign seeded with `seed`.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
