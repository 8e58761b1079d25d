//! Property campaigns, one per module-qualified property name.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::{conjugate, conjugation_map, gen_chain_map_with, random_unimodular, refiltration_source, GenParams};
use super::oracle::rank_by_elimination;
use super::runner::{unknown, TrialCtx};
use crate::cell::{
    check_wedge_formula, compose_connectivity_check, connectivity, factor_connected_map, mapping_cylinder_filtration,
    skeletal_filtration, Connectivity, FiltrationMap,
};
use crate::chain::{
    cone, cylinder, equivalence_between, find_homotopy, homology, homotopy_inverse, is_homotopy_equivalence,
    is_minimal, is_quasi_iso, minimize, nullhomotopy, pi0_hom, split_acyclic, ChainComplex, ChainMap,
};
use crate::document::write_complex;
use crate::error::{Error, Result};
use crate::kzero::{euler_char, euler_char_homology, k0_via_filtration, resolve_module, BondarkoReport, K0Class};
use crate::linalg::{cokernel_invariants, kernel_basis, smith_normal_form, solve, Matrix, Ring};
use crate::weight::{
    check_left_adjacent, check_negative, check_orthogonality, compare_decompositions, detects_nonzero, heart_split,
    in_t_geq, in_w_geq, in_w_leq, weight_bounds, weight_decompose, WeightBounds,
};

/// A property campaign: a seeded trial and a deliberately broken input the
/// suite's checks must reject (`Ok(true)` when rejected).
pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    pub trial: fn(&mut TrialCtx) -> Result<()>,
    pub control: fn() -> Result<bool>,
}

const Z: Ring = Ring::Integers;

fn z_at(degree: i64) -> ChainComplex {
    ChainComplex::free(Z, degree, 1)
}

fn z2_resolution() -> ChainComplex {
    ChainComplex::two_term(1, Matrix::from_i64(Z, &[&[2]]))
}

fn doc(x: &ChainComplex) -> String {
    write_complex(x)
}

fn random_matrix(rng: &mut ChaCha8Rng, p: &GenParams, rows: usize, cols: usize) -> Matrix {
    let b = p.max_entry as i64;
    Matrix::from_fn(p.ring, rows, cols, |_, _| BigInt::from(rng.gen_range(-b..=b)))
}

/// Moves the weights of `x` into `(-∞, 0]`.
fn into_w_leq0(x: &ChainComplex) -> ChainComplex {
    match weight_bounds(x) {
        WeightBounds::Zero => x.clone(),
        WeightBounds::Bounded { hi, .. } => x.shift(-hi),
    }
}

/// Moves the weights of `x` into `[1, ∞)`.
fn into_w_geq1(x: &ChainComplex) -> ChainComplex {
    match weight_bounds(x) {
        WeightBounds::Zero => x.clone(),
        WeightBounds::Bounded { lo, .. } => x.shift(1 - lo),
    }
}

/// A random change of basis of `x` with the isomorphisms both ways.
fn rebased(rng: &mut ChaCha8Rng, x: &ChainComplex) -> Result<(ChainComplex, ChainMap, ChainMap)> {
    let (y, bases) = conjugate(rng, x, 2);
    let fwd = conjugation_map(x, &y, &bases)?;
    let inverse: Vec<(i64, Matrix, Matrix)> = bases.into_iter().map(|(i, p, q)| (i, q, p)).collect();
    let back = conjugation_map(&y, x, &inverse)?;
    Ok((y, fwd, back))
}

// exact-linalg

fn linalg_snf(ctx: &mut TrialCtx) -> Result<()> {
    let p = ctx.params;
    let (rows, cols) = (ctx.rng.gen_range(0..=p.max_rank), ctx.rng.gen_range(0..=p.max_rank));
    let m = random_matrix(&mut ctx.rng, &p, rows, cols);
    let s = smith_normal_form(&m);
    let repro = || format!("{:?}", m.to_rows());
    ctx.check("smith-form", &(&s.u * &m) * &s.v == s.d, repro);
    ctx.check("unimodular", (&s.u * &s.u_inv).is_identity() && (&s.v * &s.v_inv).is_identity(), repro);
    let diag_ok = (0..rows).all(|r| {
        (0..cols).all(|c| {
            let e = s.d.get(r, c);
            if r == c && r < s.rank() {
                *e == s.elementary_divisors[r]
            } else {
                *e == BigInt::from(0)
            }
        })
    });
    let divides = s.elementary_divisors.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0));
    ctx.check("divisibility", diag_ok && (p.ring.is_field() || divides), repro);
    ctx.check("rank-vs-elimination", s.rank() == rank_by_elimination(&m), repro);
    let k = kernel_basis(&m);
    ctx.check("kernel", (&m * &k).is_zero() && k.cols() == cols - s.rank(), repro);
    let x: Vec<BigInt> = (0..cols).map(|_| BigInt::from(ctx.rng.gen_range(-3i64..=3))).collect();
    let b = m.mul_vec(&x);
    let solved = solve(&m, &b)?.map(|y| m.mul_vec(&y) == b);
    ctx.check("solve", solved == Some(true), repro);
    Ok(())
}

fn linalg_control() -> Result<bool> {
    let m = Matrix::from_i64(Z, &[&[2, 4], &[6, 8]]);
    let mut s = smith_normal_form(&m);
    let v = s.d.get(0, 0) + 1;
    s.d.set(0, 0, v);
    Ok((&(&s.u * &m) * &s.v) != s.d)
}

// chain-core

fn homology_oracle(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let h = homology(&g.complex);
    ctx.check("homology-matches-generator", h == g.expected, || doc(&g.complex));
    ctx.check("valid-complex", g.complex.validate().is_ok(), || doc(&g.complex));
    ctx.check("euler-telescopes", g.complex.euler_characteristic() == h.euler_characteristic(), || doc(&g.complex));
    Ok(())
}

fn homology_control() -> Result<bool> {
    let mut wrong = homology(&z2_resolution());
    wrong.insert(1, crate::linalg::ModulePresentation { ring: Z, free_rank: 1, torsion: Vec::new() });
    Ok(homology(&z2_resolution()) != wrong)
}

fn cone_cylinder(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let y = ctx.gen().complex;
    let f = gen_chain_map_with(&mut ctx.rng, &x, &y)?;
    let c = cone(&f);
    let repro = || format!("{} -> {}", doc(&x), doc(&y));
    ctx.check("cone-valid", c.complex.validate().is_ok(), repro);
    ctx.check(
        "cone-euler",
        c.complex.euler_characteristic() == y.euler_characteristic() - x.euler_characteristic(),
        repro,
    );
    ctx.check("cone-composite-null", nullhomotopy(&c.projection.compose(&c.inclusion)?)?.is_some(), repro);
    let cyl = cylinder(&f)?;
    ctx.check("cylinder-factors", cyl.projection.compose(&cyl.inclusion)? == f, repro);
    ctx.check("cylinder-equivalence", is_homotopy_equivalence(&cyl.projection), repro);
    ctx.check("cone-of-identity-acyclic", homology(&cone(&ChainMap::identity(&x)).complex).is_zero(), repro);
    Ok(())
}

fn cone_control() -> Result<bool> {
    let x = z_at(0);
    let doubled = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[2]]))?;
    Ok(!homology(&cone(&doubled).complex).is_zero())
}

fn minimize_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let m = minimize(&x)?;
    ctx.check("equivalence-verified", m.equivalence.verify().is_ok(), || doc(&x));
    ctx.check("minimal", is_minimal(&m.complex), || doc(&x));
    ctx.check("homology-preserved", homology(&m.complex) == homology(&x), || doc(&x));
    ctx.check("retract", m.equivalence.forth.compose(&m.equivalence.back)? == ChainMap::identity(&m.complex), || doc(&x));
    Ok(())
}

fn minimize_control() -> Result<bool> {
    Ok(!is_minimal(&ChainComplex::elementary(Z, 1, 1)))
}

fn classify_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let y = refiltration_source(&x, &mut ctx.rng)?;
    match equivalence_between(&x, &y)? {
        Some(e) => ctx.check("equivalent-found", e.verify().is_ok(), || doc(&x)),
        None => ctx.check("equivalent-found", false, || doc(&x)),
    }
    let k = ctx.rng.gen_range(-4..=4);
    let bigger = x.direct_sum(&ChainComplex::free(x.ring(), k, 1))?;
    ctx.check("inequivalent-rejected", equivalence_between(&x, &bigger)?.is_none(), || doc(&x));
    Ok(())
}

fn classify_control() -> Result<bool> {
    Ok(equivalence_between(&z_at(0), &z_at(1))?.is_none())
}

fn homotopy_inverse_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let y = refiltration_source(&x, &mut ctx.rng)?;
    let m = minimize(&y)?;
    let f = m.equivalence.back.clone();
    match homotopy_inverse(&f)? {
        Some(e) => ctx.check("inverse-of-equivalence", e.verify().is_ok(), || doc(&y)),
        None => ctx.check("inverse-of-equivalence", false, || doc(&y)),
    }
    let g = gen_chain_map_with(&mut ctx.rng, &x, &y)?;
    let has_inverse = homotopy_inverse(&g)?.is_some();
    ctx.check("inverse-iff-quasi-iso", has_inverse == is_quasi_iso(&g), || doc(&x));
    Ok(())
}

fn homotopy_inverse_control() -> Result<bool> {
    let x = z_at(0);
    let doubled = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[2]]))?;
    Ok(homotopy_inverse(&doubled)?.is_none())
}

fn split_acyclic_suite(ctx: &mut TrialCtx) -> Result<()> {
    let e = ctx.params.weights.elementary.max(1);
    let p = ctx.params.with_weights(0, 0, e);
    let x = ctx.gen_with(p).complex;
    let s = split_acyclic(&x)?;
    ctx.check("contraction-verified", s.contraction.verify().is_ok(), || doc(&x));
    ctx.check("identity-nullhomotopic", nullhomotopy(&ChainMap::identity(&x))?.is_some(), || doc(&x));
    let total: usize = s.pieces.iter().map(|p| 2 * p.rank).sum();
    ctx.check("rank-consistent", total == x.total_rank() && s.verify(&x).is_ok(), || doc(&x));
    let per_degree = x.degrees().all(|i| {
        let up: usize = s.pieces.iter().filter(|p| p.top == i).map(|p| p.rank).sum();
        let down: usize = s.pieces.iter().filter(|p| p.top == i + 1).map(|p| p.rank).sum();
        up + down == x.rank(i)
    });
    ctx.check("pieces-fill-degrees", per_degree, || doc(&x));
    Ok(())
}

fn split_acyclic_control() -> Result<bool> {
    Ok(matches!(split_acyclic(&z2_resolution()), Err(Error::NotAcyclic { degree: 0, .. })))
}

// weight-structures

fn membership_suite(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let x = &g.complex;
    let n = ctx.rng.gen_range(ctx.params.min_degree - 1..=ctx.params.max_degree + 1);
    let e = &g.expected;
    let geq = e.min_degree().is_none_or(|lo| lo >= n);
    let leq = e.iter().all(|(i, h)| i < n || (i == n && h.torsion.is_empty()));
    ctx.check("w-geq-oracle", in_w_geq(x, n) == geq, || format!("n={n} {}", doc(x)));
    ctx.check("w-leq-oracle", in_w_leq(x, n) == leq, || format!("n={n} {}", doc(x)));
    ctx.check(
        "shift-compatible",
        in_w_geq(&x.shift(1), n + 1) == in_w_geq(x, n) && in_w_leq(&x.shift(1), n + 1) == in_w_leq(x, n),
        || doc(x),
    );
    ctx.check(
        "monotone",
        (!in_w_geq(x, n) || in_w_geq(x, n - 1)) && (!in_w_leq(x, n) || in_w_leq(x, n + 1)),
        || doc(x),
    );
    Ok(())
}

fn membership_control() -> Result<bool> {
    Ok(!in_w_leq(&z2_resolution(), 0))
}

fn orthogonality_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = into_w_leq0(&ctx.gen().complex);
    let y = into_w_geq1(&ctx.gen().complex);
    let repro = || format!("{} -> {}", doc(&x), doc(&y));
    ctx.check("inputs-in-range", in_w_leq(&x, 0) && in_w_geq(&y, 1), repro);
    ctx.check("pi0-trivial", pi0_hom(&x, &y)?.is_trivial(), repro);
    ctx.check("check-orthogonality", check_orthogonality(&x, &y, 0)?.is_none(), repro);
    Ok(())
}

fn orthogonality_control() -> Result<bool> {
    Ok(!pi0_hom(&z_at(0), &z_at(0))?.is_trivial())
}

fn decomposition_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let n = ctx.rng.gen_range(ctx.params.min_degree - 1..=ctx.params.max_degree + 1);
    let d = weight_decompose(&x, n)?;
    let repro = || format!("n={n} {}", doc(&x));
    ctx.expect("invariants", d.verify(), repro);
    ctx.check("a-in-w-leq", in_w_leq(&d.a, n), repro);
    ctx.check("b-in-w-geq", in_w_geq(&d.b, n + 1), repro);
    ctx.check("cone-equivalent-to-b", is_homotopy_equivalence(&d.cone_comparison()?), repro);
    ctx.check("additivity", euler_char(&x) == euler_char(&d.a) + euler_char(&d.b), repro);
    Ok(())
}

fn decomposition_control() -> Result<bool> {
    let x = z_at(0).direct_sum(&z_at(1))?;
    let mut d = weight_decompose(&x, 0)?;
    d.n = 1;
    Ok(d.verify().is_err())
}

fn comparison_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let n = ctx.rng.gen_range(ctx.params.min_degree - 1..=ctx.params.max_degree);
    let m = ctx.rng.gen_range(n..=ctx.params.max_degree + 1);
    let lower = weight_decompose(&x, n)?;
    let upper = weight_decompose(&x, m)?;
    let c = compare_decompositions(&lower, &upper)?;
    let repro = || format!("n={n} m={m} {}", doc(&x));
    ctx.check("witnesses", c.a_witness.verify().is_ok() && c.b_witness.verify().is_ok(), repro);
    ctx.check("unique-above-diagonal", m == n || c.unique, repro);
    Ok(())
}

fn comparison_control() -> Result<bool> {
    let x = z_at(0).direct_sum(&z_at(1))?;
    let (lower, upper) = (weight_decompose(&x, 1)?, weight_decompose(&x, 0)?);
    Ok(compare_decompositions(&lower, &upper).is_err())
}

fn closure_suite(ctx: &mut TrialCtx) -> Result<()> {
    let n = ctx.rng.gen_range(-2..=2);
    let x = into_w_geq1(&ctx.gen().complex).shift(n - 1);
    let y = into_w_geq1(&ctx.gen().complex).shift(n - 1);
    let f = gen_chain_map_with(&mut ctx.rng, &x, &y)?;
    let repro = || format!("n={n} {} -> {}", doc(&x), doc(&y));
    ctx.check("cone-stays-in-w-geq", in_w_geq(&cone(&f).complex, n), repro);
    let a = into_w_leq0(&ctx.gen().complex).shift(n);
    let b = into_w_leq0(&ctx.gen().complex).shift(n);
    let g = gen_chain_map_with(&mut ctx.rng, &a, &b)?;
    ctx.check("shifted-cone-stays-in-w-leq", in_w_leq(&cone(&g).complex.shift(-1), n), repro);
    ctx.check("sum-stays", in_w_leq(&a.direct_sum(&b)?, n) && in_w_geq(&x.direct_sum(&y)?, n), repro);
    Ok(())
}

fn closure_control() -> Result<bool> {
    // cone of 2 : Z[0] -> Z[0] carries torsion in the top degree
    let x = z_at(0);
    let doubled = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[2]]))?;
    Ok(!in_w_leq(&cone(&doubled).complex, 0))
}

/// A heart ingression `R^a[0] ⊕ E -> R^b[0] ⊕ E'` hidden by changes of basis.
fn heart_ingression(ctx: &mut TrialCtx) -> Result<ChainMap> {
    let ring = ctx.params.ring;
    let cap = ctx.params.max_rank.max(1);
    let a = ctx.rng.gen_range(1..=cap.min(3));
    let b = a + ctx.rng.gen_range(0..=cap.saturating_sub(a).min(3));
    let (x, y) = (ChainComplex::free(ring, 0, a), ChainComplex::free(ring, 0, b));
    let (p, _) = random_unimodular(&mut ctx.rng, ring, b, ctx.params.max_entry);
    let (_, q_inv) = random_unimodular(&mut ctx.rng, ring, a, ctx.params.max_entry);
    let incl = Matrix::identity(ring, a).vstack(&Matrix::zeros(ring, b - a, a));
    let f0 = &(&p * &incl) * &q_inv;
    let f = ChainMap::new(x.clone(), y.clone(), |_| f0.clone())?;
    let e1 = ChainComplex::elementary(ring, ctx.rng.gen_range(0..=1), ctx.rng.gen_range(0..=1));
    let e2 = ChainComplex::elementary(ring, ctx.rng.gen_range(0..=1), ctx.rng.gen_range(0..=1));
    let f = f.direct_sum(&ChainMap::zero(&e1, &e2)?)?;
    let (xs, _, x_back) = rebased(&mut ctx.rng, f.source())?;
    let (_, y_fwd, _) = rebased(&mut ctx.rng, f.target())?;
    let _ = xs;
    y_fwd.compose(&f.compose(&x_back)?)
}

fn heart_split_suite(ctx: &mut TrialCtx) -> Result<()> {
    let f = heart_ingression(ctx)?;
    let repro = || format!("{} -> {}", doc(f.source()), doc(f.target()));
    let Some(s) = ctx.expect("retraction-found", heart_split(&f), repro) else {
        return Ok(());
    };
    ctx.check("witness-verified", s.witness.verify().is_ok(), repro);
    let gf = s.retraction.compose(&f)?;
    let id = ChainMap::identity(f.source());
    ctx.check("retraction-independent", find_homotopy(&gf, &id)?.is_some(), repro);
    Ok(())
}

fn heart_split_control() -> Result<bool> {
    let x = z_at(0);
    let doubled = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[2]]))?;
    Ok(heart_split(&doubled).is_err())
}

fn left_adjacent_suite(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let x = &g.complex;
    let n = ctx.rng.gen_range(ctx.params.min_degree - 1..=ctx.params.max_degree + 1);
    let oracle = g.expected.min_degree().is_none_or(|lo| lo >= n);
    ctx.check("t-geq-iff-w-geq", check_left_adjacent(x, n), || format!("n={n} {}", doc(x)));
    ctx.check("t-geq-oracle", in_t_geq(x, n) == oracle, || format!("n={n} {}", doc(x)));
    let count = ctx.rng.gen_range(1..=3);
    let family: Vec<ChainComplex> = (0..count)
        .map(|_| {
            let r = ctx.rng.gen_range(1..=2);
            let free = ChainComplex::free(ctx.params.ring, 0, r);
            let e = ChainComplex::elementary(ctx.params.ring, ctx.rng.gen_range(0..=1), ctx.rng.gen_range(0..=1));
            conjugate(&mut ctx.rng, &free.direct_sum(&e).expect("same ring"), 2).0
        })
        .collect();
    ctx.check("heart-family-negative", check_negative(&family)?.is_negative(), || {
        family.iter().map(doc).collect::<Vec<_>>().join(" ")
    });
    Ok(())
}

fn left_adjacent_control() -> Result<bool> {
    Ok(!check_negative(&[z_at(0), z_at(1)])?.is_negative())
}

fn detection_suite(ctx: &mut TrialCtx) -> Result<()> {
    let g = if ctx.rng.gen_bool(0.5) {
        let e = ctx.params.weights.elementary.max(1);
        let p = ctx.params.with_weights(0, 0, e);
        ctx.gen_with(p)
    } else {
        ctx.gen()
    };
    let acyclic = g.expected.is_zero();
    ctx.check("detects-iff-nonzero", detects_nonzero(&g.complex)? == !acyclic, || doc(&g.complex));
    Ok(())
}

fn detection_control() -> Result<bool> {
    detects_nonzero(&z2_resolution())
}

// cell-filtrations

fn skeletal_suite(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let x = &g.complex;
    let f = skeletal_filtration(x);
    ctx.check("verified", f.verify().is_ok(), || doc(x));
    ctx.check("colimit", f.colimit() == x, || doc(x));
    ctx.check("pure-levels", f.levels().iter().all(|l| l.bounds.is_pure(l.degree)), || doc(x));
    ctx.check("v-acyclic-iff-acyclic", f.is_v_acyclic()? == g.expected.is_zero(), || doc(x));
    Ok(())
}

fn skeletal_control() -> Result<bool> {
    let stages = vec![ChainComplex::zero(Z), z2_resolution()];
    let incl = ChainMap::zero(&stages[0], &stages[1])?;
    let f = crate::cell::CellFiltration::from_stages(0, stages, vec![incl])?;
    Ok(f.verify().is_err())
}

fn wedge_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let y = ctx.gen().complex;
    let f = gen_chain_map_with(&mut ctx.rng, &x, &y)?;
    let ff = FiltrationMap::from_skeletal(&f)?;
    let m = mapping_cylinder_filtration(&ff)?;
    let repro = || format!("{} -> {}", doc(&x), doc(&y));
    ctx.check("cylinder-is-cell-filtration", m.filtration.verify().is_ok(), repro);
    ctx.check("wedge-formula", check_wedge_formula(&ff, &m).is_none(), repro);
    ctx.check("source-ingression", m.ingression.is_ingression()?, repro);
    let top = m.filtration.hi();
    ctx.check("target-equivalence", is_homotopy_equivalence(m.equivalence.level(top)), repro);
    Ok(())
}

fn wedge_control() -> Result<bool> {
    let f = FiltrationMap::from_skeletal(&ChainMap::identity(&z_at(0)))?;
    let g = FiltrationMap::from_skeletal(&ChainMap::identity(&z_at(1)))?;
    let mg = mapping_cylinder_filtration(&g)?;
    Ok(check_wedge_formula(&f, &mg).is_some())
}

fn factorization_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let n = ctx.rng.gen_range(ctx.params.min_degree - 1..=ctx.params.max_degree);
    let cells_params = ctx.params.with_window(n + 1, n + 2).with_max_rank(ctx.params.max_rank.min(3));
    let c = ctx.gen_with(cells_params).complex;
    let h = gen_chain_map_with(&mut ctx.rng, &c.shift(-1), &x)?;
    let ch = cone(&h);
    let (_, fwd, _) = rebased(&mut ctx.rng, &ch.complex)?;
    let f = fwd.compose(&ch.inclusion)?;
    let repro = || format!("n={n} {} -> {}", doc(f.source()), doc(f.target()));
    ctx.check("n-connected", connectivity(&f).at_least(n), repro);
    let Some(fac) = ctx.expect("factorization", factor_connected_map(&f, n), repro) else {
        return Ok(());
    };
    ctx.check("relative-filtration", fac.cells.verify_relative().is_ok(), repro);
    ctx.check(
        "quotients-pure",
        fac.cells.levels().iter().all(|l| l.degree > n && l.bounds.is_pure(l.degree)),
        repro,
    );
    ctx.check("final-map-equivalence", is_homotopy_equivalence(&fac.to_target), repro);
    let into_top = fac.cells.inclusion_between(n, fac.cells.hi())?;
    let recomposed = fac.to_target.compose(&into_top)?;
    ctx.check(
        "recomposition",
        fac.witness.verify().is_ok() && find_homotopy(&recomposed, &f)?.is_some(),
        repro,
    );
    ctx.check("equivalence-verified", fac.equivalence.verify().is_ok(), repro);
    Ok(())
}

fn factorization_control() -> Result<bool> {
    // 0 -> Z[0] has cofiber Z[0], so it is not 0-connected
    let f = ChainMap::zero(&ChainComplex::zero(Z), &z_at(0))?;
    Ok(matches!(factor_connected_map(&f, 0), Err(Error::Precondition(_))))
}

fn composite_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let y = ctx.gen().complex;
    let z = ctx.gen().complex;
    let f = if ctx.rng.gen_bool(0.3) { minimize(&x)?.equivalence.forth } else { gen_chain_map_with(&mut ctx.rng, &x, &y)? };
    let mid = f.target().clone();
    let g = gen_chain_map_with(&mut ctx.rng, &mid, &z)?;
    let repro = || format!("{} -> {} -> {}", doc(&x), doc(&mid), doc(&z));
    let Some((cf, cg, cgf)) = ctx.expect("composite-check", compose_connectivity_check(&f, &g), repro) else {
        return Ok(());
    };
    ctx.check("composite-at-least-min", cgf >= cf.min(cg), repro);
    Ok(())
}

fn composite_control() -> Result<bool> {
    let bad = (Connectivity::Finite(0), Connectivity::Finite(0), Connectivity::Finite(-1));
    Ok(bad.2 < bad.0.min(bad.1))
}

// k-zero

fn bondarko_suite(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let x = &g.complex;
    let chi = euler_char(x);
    let chi_h = euler_char_homology(x);
    ctx.check("euler-char-homology", chi == chi_h && chi_h == K0Class(g.expected.euler_characteristic()), || doc(x));
    let skeletal = k0_via_filtration(&skeletal_filtration(x));
    ctx.check("filtration-value", skeletal.as_ref().ok() == Some(&chi), || doc(x));
    for _ in 0..2 {
        let y = refiltration_source(x, &mut ctx.rng)?;
        let v = k0_via_filtration(&skeletal_filtration(&y));
        ctx.check("filtration-value", v.as_ref().ok() == Some(&chi), || doc(&y));
    }
    Ok(())
}

fn bondarko_control() -> Result<bool> {
    let report = BondarkoReport {
        euler_char: K0Class(0),
        euler_char_homology: K0Class(0),
        via_filtrations: vec![K0Class(0), K0Class(1)],
    };
    Ok(!report.agrees())
}

fn gillet_waldhausen_suite(ctx: &mut TrialCtx) -> Result<()> {
    let x = ctx.gen().complex;
    let q = match ctx.rng.gen_range(0..3) {
        0 => {
            let y = ctx.gen().complex;
            let f = gen_chain_map_with(&mut ctx.rng, &x, &y)?;
            cylinder(&f)?.projection
        }
        1 => minimize(&x)?.equivalence.forth,
        _ => minimize(&refiltration_source(&x, &mut ctx.rng)?)?.equivalence.back,
    };
    let repro = || doc(q.source());
    ctx.check("quasi-iso", is_quasi_iso(&q), repro);
    ctx.check("homology-agrees", homology(q.source()) == homology(q.target()), repro);
    ctx.check("euler-preserved", euler_char(q.source()) == euler_char(q.target()), repro);
    Ok(())
}

fn gillet_waldhausen_control() -> Result<bool> {
    let x = z_at(0);
    let doubled = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Z, &[&[2]]))?;
    Ok(!is_quasi_iso(&doubled))
}

/// A second presentation of the same module: change of basis, a redundant
/// relation, and an extra generator killed by its own relation.
fn re_present(rng: &mut ChaCha8Rng, r: &Matrix, max_entry: u64) -> Matrix {
    let ring = r.ring();
    let (g, k) = r.shape();
    let (u, _) = random_unimodular(rng, ring, g, max_entry);
    let (v, _) = random_unimodular(rng, ring, k, max_entry);
    let mut m = &(&u * r) * &v;
    let w = Matrix::from_fn(ring, m.cols(), 1, |_, _| BigInt::from(rng.gen_range(-2i64..=2)));
    let redundant = &m * &w;
    m = m.hstack(&redundant);
    if rng.gen_bool(0.5) {
        m = m.block_diag(&Matrix::identity(ring, 1));
    }
    m
}

fn resolution_suite(ctx: &mut TrialCtx) -> Result<()> {
    let p = GenParams { ring: Ring::Integers, ..ctx.params };
    let g = ctx.rng.gen_range(1..=p.max_rank.min(4));
    let k = ctx.rng.gen_range(0..=p.max_rank.min(4));
    let r = random_matrix(&mut ctx.rng, &p, g, k);
    let r2 = re_present(&mut ctx.rng, &r, p.max_entry);
    let repro = || format!("{:?} vs {:?}", r.to_rows(), r2.to_rows());
    ctx.check("same-module", cokernel_invariants(&r) == cokernel_invariants(&r2), repro);
    let (a, b) = (resolve_module(&r), resolve_module(&r2));
    ctx.check("euler-independent", euler_char(&a) == euler_char(&b), repro);
    ctx.check("euler-is-free-rank", euler_char(&a).0 == (g - rank_by_elimination(&r)) as i64, repro);
    let h = homology(&a);
    ctx.check("resolves", h.get(0) == cokernel_invariants(&r) && h.get(1).free_rank == 0 && h.get(1).torsion.is_empty(), repro);
    Ok(())
}

fn resolution_control() -> Result<bool> {
    let a = resolve_module(&Matrix::from_i64(Z, &[&[2]]));
    let b = resolve_module(&Matrix::from_i64(Z, &[&[2, 0], &[0, 3]]));
    Ok(homology(&a) != homology(&b))
}

// negative controls

fn control_oracle(ctx: &mut TrialCtx) -> Result<()> {
    let g = ctx.gen();
    let mut wrong = g.expected.clone();
    let d = ctx.rng.gen_range(ctx.params.min_degree..=ctx.params.max_degree);
    let mut group = wrong.get(d);
    group.free_rank += 1;
    wrong.insert(d, group);
    ctx.check("homology-matches-generator", homology(&g.complex) == wrong, || doc(&g.complex));
    Ok(())
}

fn control_orthogonality(ctx: &mut TrialCtx) -> Result<()> {
    let x = into_w_leq0(&ctx.gen().complex).direct_sum(&ChainComplex::free(ctx.params.ring, 0, 1))?;
    let y = into_w_geq1(&ctx.gen().complex).shift(-1).direct_sum(&ChainComplex::free(ctx.params.ring, 0, 1))?;
    ctx.check("pi0-trivial", pi0_hom(&x, &y)?.is_trivial(), || format!("{} -> {}", doc(&x), doc(&y)));
    Ok(())
}

fn always() -> Result<bool> {
    Ok(true)
}

pub static SUITES: &[Suite] = &[
    Suite { name: "exact-linalg.smith-form", summary: "SNF, rank, kernel and solve against elimination", trial: linalg_snf, control: linalg_control },
    Suite { name: "chain-core.homology-oracle", summary: "computed homology equals generator bookkeeping", trial: homology_oracle, control: homology_control },
    Suite { name: "chain-core.cone-cylinder", summary: "cone and cylinder identities", trial: cone_cylinder, control: cone_control },
    Suite { name: "chain-core.minimize", summary: "minimization is a verified retract", trial: minimize_suite, control: minimize_control },
    Suite { name: "chain-core.classify", summary: "equivalent iff same homology", trial: classify_suite, control: classify_control },
    Suite { name: "chain-core.homotopy-inverse", summary: "inverses exist exactly for quasi-isomorphisms", trial: homotopy_inverse_suite, control: homotopy_inverse_control },
    Suite { name: "chain-core.acyclic-splitting", summary: "acyclic complexes split into elementary pieces", trial: split_acyclic_suite, control: split_acyclic_control },
    Suite { name: "weight-structures.membership", summary: "memberships against the homology oracle", trial: membership_suite, control: membership_control },
    Suite { name: "weight-structures.orthogonality", summary: "pi_0 Hom(w<=0, w>=1) = 0", trial: orthogonality_suite, control: orthogonality_control },
    Suite { name: "weight-structures.decomposition", summary: "weight decompositions verified", trial: decomposition_suite, control: decomposition_control },
    Suite { name: "weight-structures.comparison", summary: "decompositions compare, uniquely above the diagonal", trial: comparison_suite, control: comparison_control },
    Suite { name: "weight-structures.closure", summary: "w>=n closed under cones, w<=n under desuspended cones", trial: closure_suite, control: closure_control },
    Suite { name: "weight-structures.heart-splitting", summary: "heart ingressions split up to homotopy", trial: heart_split_suite, control: heart_split_control },
    Suite { name: "weight-structures.left-adjacency", summary: "t>=n agrees with w>=n; heart families are negative", trial: left_adjacent_suite, control: left_adjacent_control },
    Suite { name: "weight-structures.detection", summary: "maps to R[i] detect nonzero complexes", trial: detection_suite, control: detection_control },
    Suite { name: "cell-filtrations.skeletal", summary: "skeletal filtrations are cell filtrations", trial: skeletal_suite, control: skeletal_control },
    Suite { name: "cell-filtrations.wedge-formula", summary: "mapping cylinder levels are three-term wedges", trial: wedge_suite, control: wedge_control },
    Suite { name: "cell-filtrations.factorization", summary: "n-connected maps factor through cells", trial: factorization_suite, control: factorization_control },
    Suite { name: "cell-filtrations.composite-connectivity", summary: "connectivity of composites", trial: composite_suite, control: composite_control },
    Suite { name: "k-zero.bondarko", summary: "K_0 through filtrations equals Euler characteristic", trial: bondarko_suite, control: bondarko_control },
    Suite { name: "k-zero.gillet-waldhausen", summary: "Euler characteristic invariant under quasi-isomorphism", trial: gillet_waldhausen_suite, control: gillet_waldhausen_control },
    Suite { name: "k-zero.resolution", summary: "Euler characteristic of resolutions is presentation independent", trial: resolution_suite, control: resolution_control },
    Suite { name: "fuzz-verify.control-oracle", summary: "negative control: perturbed homology expectations", trial: control_oracle, control: always },
    Suite { name: "fuzz-verify.control-orthogonality", summary: "negative control: weight-0 summands on both sides", trial: control_orthogonality, control: always },
];

/// Exact name, or a suffix after `.` matching exactly one suite.
pub fn find_suite(name: &str) -> Result<&'static Suite> {
    if let Some(s) = SUITES.iter().find(|s| s.name == name) {
        return Ok(s);
    }
    let mut hits = SUITES.iter().filter(|s| s.name.rsplit('.').next() == Some(name));
    match (hits.next(), hits.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(unknown(name)),
    }
}

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.name)
}
