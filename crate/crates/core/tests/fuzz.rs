use weightcx::chain::{homology, ChainComplex};
use weightcx::fuzz::{find_suite, gen_chain_map, gen_complex, replay, run_suite, GenParams};
use weightcx::linalg::Ring;
use weightcx::Error;

#[test]
fn zero_trials_is_an_empty_pass() {
    let r = run_suite("weight-structures.orthogonality", &GenParams::default(), 0).unwrap();
    assert_eq!((r.trials, r.passed_trials), (0, 0));
    assert!(r.failures.is_empty() && r.passed());
}

#[test]
fn reports_are_deterministic() {
    let p = GenParams::default().with_seed(99);
    let a = run_suite("orthogonality", &p, 500).unwrap();
    let b = run_suite("orthogonality", &p, 500).unwrap();
    assert_eq!(a.outcome(), b.outcome());
    assert!(a.passed());
    let c = run_suite("control-oracle", &p, 30).unwrap();
    let d = run_suite("control-oracle", &p, 30).unwrap();
    assert_eq!(c.outcome(), d.outcome());
}

#[test]
fn unknown_and_ambiguous_names() {
    assert!(matches!(run_suite("nope", &GenParams::default(), 1), Err(Error::UnknownSuite(_))));
    assert_eq!(find_suite("bondarko").unwrap().name, "k-zero.bondarko");
    assert_eq!(find_suite("k-zero.bondarko").unwrap().name, "k-zero.bondarko");
}

#[test]
fn negative_controls_fail_with_replayable_seeds() {
    let p = GenParams::default().with_seed(5);
    for name in ["fuzz-verify.control-oracle", "fuzz-verify.control-orthogonality"] {
        let r = run_suite(name, &p, 20).unwrap();
        assert!(!r.passed(), "{name}");
        let f = &r.failures[0];
        assert!(f.shrunk_max_rank <= p.max_rank);
        let again = replay(name, &p, f.seed).unwrap();
        assert!(again.iter().any(|(_, failure)| failure.is_some()), "{name} did not replay");
    }
}

#[test]
fn every_suite_flags_its_control() {
    for suite in weightcx::fuzz::SUITES {
        assert!((suite.control)().unwrap(), "{}", suite.name);
    }
}

#[test]
fn every_suite_passes_a_short_run_over_f3() {
    let p = GenParams { ring: Ring::PrimeField(3), ..GenParams::default() }.with_seed(11);
    for suite in weightcx::fuzz::SUITES.iter().filter(|s| !s.name.contains("control")) {
        let r = run_suite(suite.name, &p, 8).unwrap();
        assert!(r.passed(), "{}", r.render());
    }
}

#[test]
fn generator_examples() {
    let one = GenParams { max_rank: 1, ..GenParams::default() }.with_window(0, 0).with_weights(1, 0, 0);
    let g = (0..).map(|s| gen_complex(&one.with_seed(s))).find(|g| !g.blocks.is_empty()).unwrap();
    assert_eq!(g.expected.to_string(), "H_0: Z");
    assert_eq!(homology(&g.complex), g.expected);
}

#[test]
fn maps_between_points_are_multiplications() {
    let x = ChainComplex::free(Ring::Integers, 0, 1);
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..40 {
        let f = gen_chain_map(seed, &x, &x).unwrap();
        let k = f.component(0).get(0, 0).clone();
        assert!(k >= (-2).into() && k <= 2.into());
        seen.insert(k);
    }
    assert!(seen.len() > 1);
    let zero = ChainComplex::zero(Ring::Integers);
    assert!(gen_chain_map(3, &x, &zero).unwrap().is_zero());
}
