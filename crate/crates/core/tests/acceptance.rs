//! Acceptance campaign: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use weightcx::chain::ChainComplex;
use weightcx::fuzz::{run_suite, GenParams, VerifyReport};
use weightcx::linalg::Ring;
use weightcx::weight::check_negative;

const SEED: u64 = 20240601;

struct Line {
    ok: bool,
    name: &'static str,
    detail: String,
}

fn params() -> GenParams {
    // Z, degrees [-4, 4], ranks <= 6, entries bounded by 3
    GenParams::default().with_seed(SEED)
}

fn campaign(suite: &str, trials: u64) -> VerifyReport {
    run_suite(suite, &params(), trials).unwrap_or_else(|e| panic!("{suite}: {e}"))
}

fn tally(r: &VerifyReport, property: &str) -> (u64, u64) {
    let t = r.properties.get(property).copied().unwrap_or_default();
    (t.passed, t.passed + t.failed)
}

fn all_trials(name: &'static str, r: &VerifyReport, trials: u64, property: &str) -> Line {
    let (p, n) = tally(r, property);
    let ok = r.passed() && r.trials == trials && r.passed_trials == trials && p == trials && n == trials;
    let mut detail = format!("{}/{} trials, {property} {p}/{n}, control flagged: {}", r.passed_trials, trials, r.control_flagged);
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure seed {} ({}): {}", f.seed, f.property, f.reproduction));
    }
    Line { ok, name, detail }
}

fn bondarko() -> Line {
    let start = Instant::now();
    let r = campaign("k-zero.bondarko", 300);
    let elapsed = start.elapsed();
    let (p, n) = tally(&r, "filtration-value");
    let (e, en) = tally(&r, "euler-char-homology");
    let ok = r.passed() && p == 900 && n == 900 && e == 300 && en == 300 && elapsed < Duration::from_secs(120);
    Line {
        ok,
        name: "bondarko-k0",
        detail: format!("{p}/{n} filtration values agree, {e}/{en} euler = euler of homology, {:.1}s (limit 120s)", elapsed.as_secs_f64()),
    }
}

fn left_adjacency() -> Line {
    let r = campaign("weight-structures.left-adjacency", 500);
    let mut line = all_trials("left-adjacency", &r, 500, "t-geq-iff-w-geq");
    let z = |d| ChainComplex::free(Ring::Integers, d, 1);
    let single = check_negative(&[z(0)]).map(|v| v.is_negative()).unwrap_or(false);
    let pair = check_negative(&[z(0), z(1)]).map(|v| !v.is_negative()).unwrap_or(false);
    line.ok &= single && pair;
    line.detail.push_str(&format!(
        "; {{Z[0]}} negative: {single}, {{Z[0], Z[1]}} not negative: {pair}"
    ));
    line
}

fn gillet_waldhausen() -> Line {
    let q = campaign("k-zero.gillet-waldhausen", 200);
    let r = campaign("k-zero.resolution", 100);
    let (qp, qn) = tally(&q, "euler-preserved");
    let (rp, rn) = tally(&r, "euler-independent");
    let ok = q.passed() && r.passed() && qp == 200 && qn == 200 && rp == 100 && rn == 100;
    Line {
        ok,
        name: "gillet-waldhausen-k0",
        detail: format!("euler preserved {qp}/{qn} quasi-isomorphisms, resolution independent {rp}/{rn} presentation pairs"),
    }
}

fn cli_contract() -> Line {
    let cases = common::cases();
    let failures: Vec<String> = cases.iter().filter_map(|c| common::check_case(c).err()).collect();
    let docs = std::fs::read_dir(common::corpus_dir())
        .map(|d| d.filter(|e| e.as_ref().is_ok_and(|e| e.path().extension().is_some_and(|x| x == "json" || x == "txt"))).count())
        .unwrap_or(0)
        - 1;
    let round_trip = common::round_trip_corpus();
    let ok = failures.is_empty() && docs >= 20 && round_trip.is_ok();
    let mut detail = format!(
        "{}/{} cases, {docs} documents, round trip: {}",
        cases.len() - failures.len(),
        cases.len(),
        match &round_trip {
            Ok(n) => format!("{n} valid documents"),
            Err(e) => e.clone(),
        }
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; {f}"));
    }
    Line { ok, name: "cli-contract", detail }
}

fn main() {
    let checks: Vec<fn() -> Line> = vec![
        bondarko,
        || all_trials("orthogonality", &campaign("weight-structures.orthogonality", 500), 500, "pi0-trivial"),
        || all_trials("weight-decomposition", &campaign("weight-structures.decomposition", 500), 500, "cone-equivalent-to-b"),
        || all_trials("heart-splitting", &campaign("weight-structures.heart-splitting", 200), 200, "retraction-independent"),
        || all_trials("wedge-formula", &campaign("cell-filtrations.wedge-formula", 100), 100, "wedge-formula"),
        || all_trials("connected-factorization", &campaign("cell-filtrations.factorization", 100), 100, "recomposition"),
        || all_trials("composite-connectivity", &campaign("cell-filtrations.composite-connectivity", 200), 200, "composite-at-least-min"),
        || all_trials("acyclic-splitting", &campaign("chain-core.acyclic-splitting", 200), 200, "identity-nullhomotopic"),
        gillet_waldhausen,
        left_adjacency,
        || all_trials("detection", &campaign("weight-structures.detection", 200), 200, "detects-iff-nonzero"),
        cli_contract,
    ];
    let mut failed = 0;
    for check in checks {
        let line = check();
        println!("{} {}: {}", if line.ok { "PASS" } else { "FAIL" }, line.name, line.detail);
        if !line.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} criteria, {failed} failed", 12);
    if failed > 0 {
        std::process::exit(1);
    }
}
