//! Acceptance run: the full default suite, judged criterion by criterion with
//! tolerances pinned here rather than taken from the records.
//!
//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::time::Instant;

use qladder::families::{estimate_radius, FamilyId, FamilySpec, RadiusEstimate};
use qladder::verify::{
    run_suite, CheckId, CheckResult, GramCase, MeasureCase, SuiteConfig, DEFAULT_QS, GENFUN_FAMILIES,
    POLYNOMIAL_FAMILIES,
};
use qladder::QBase;

const GRAM_TOL: f64 = 1e-8;
const INTEGRAL_TOL: f64 = 1e-8;
const PERMUTATION_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-8;
const TERMINATING_TOL: f64 = 1e-11;
const REPR_TOL: f64 = 1e-9;
const MASS_TOL: f64 = 1e-9;
const POSITIVITY_TOL: f64 = 1e-12;
const RADIUS_TOL: f64 = 0.07;
const GENFUN_TOL: f64 = 1e-8;
const RUNTIME_LIMIT_S: f64 = 60.0;

struct Verdict {
    failures: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    /// Every record of `id` below `tol`, and at least `min_count` of them.
    fn records(&mut self, all: &[CheckResult], id: &str, tol: f64, min_count: usize) {
        let rs: Vec<_> = all.iter().filter(|r| r.check_id == id).collect();
        self.require(rs.len() >= min_count, || format!("{id}: {} records, need {min_count}", rs.len()));
        for r in rs {
            // NaN fails this comparison on purpose.
            self.require(r.rel_err < tol, || format!("{id} {:?}: rel_err {:e} >= {tol:e}", r.params.0, r.rel_err));
        }
    }
}

fn report(n: usize, name: &str, v: Verdict) -> bool {
    let ok = v.failures.is_empty();
    println!("{} criterion {n}: {name}", if ok { "PASS" } else { "FAIL" });
    for f in v.failures.iter().take(10) {
        println!("    {f}");
    }
    if v.failures.len() > 10 {
        println!("    ... {} more", v.failures.len() - 10);
    }
    ok
}

fn gram_id(case: GramCase) -> String {
    CheckId::Gram(case).id()
}

fn main() {
    let start = Instant::now();
    let suite = run_suite(&SuiteConfig::default()).expect("suite plan");
    let elapsed = start.elapsed().as_secs_f64();
    let all = &suite.results;
    let mut ok = true;

    let mut v = Verdict::new();
    for case in GramCase::ALL.iter().copied().filter(|c| !c.is_biorthogonal()) {
        v.records(all, &gram_id(case), GRAM_TOL, 3 * 10);
    }
    v.records(all, &CheckId::ZeroMean.id(), GRAM_TOL, 3);
    v.require(elapsed < RUNTIME_LIMIT_S, || format!("suite took {elapsed:.1} s"));
    ok &= report(1, &format!("orthogonality Gram matrices (8x8), full suite in {elapsed:.1} s"), v);

    let mut v = Verdict::new();
    for case in GramCase::ALL.iter().copied().filter(|c| c.is_biorthogonal()) {
        v.records(all, &gram_id(case), GRAM_TOL, 3 * 8);
    }
    v.records(all, &CheckId::PrintedNormRatio.id(), GRAM_TOL, 3);
    ok &= report(2, "biorthogonality matrices (6x6)", v);

    let mut v = Verdict::new();
    for id in ["INT_2_2", "INT_2_16", "INT_2_22", "INT_3_6", "INT_3_21", "INT_4_2", "INT_5_5", "INT_5_10", "INT_5_24"] {
        v.records(all, id, INTEGRAL_TOL, 10);
    }
    v.records(all, "INT_2_16_PERMUTATION", PERMUTATION_TOL, 10);
    ok &= report(3, "integral checks", v);

    let mut v = Verdict::new();
    for id in ["ID_2_3", "ID_2_11", "ID_2_14", "ID_3_5", "ID_3_7", "ID_3_14", "ID_3_20", "ID_5_9"] {
        v.records(all, id, IDENTITY_TOL, 20);
    }
    for id in ["ID_2_7", "ID_2_20"] {
        v.records(all, id, IDENTITY_TOL, 20);
        for r in all.iter().filter(|r| r.check_id == id && r.params.get("n").is_some_and(|n| n <= 10.0)) {
            v.require(r.rel_err < TERMINATING_TOL, || format!("{id} {:?}: rel_err {:e}", r.params.0, r.rel_err));
        }
    }
    ok &= report(4, "identity checks", v);

    let mut v = Verdict::new();
    for &f in POLYNOMIAL_FAMILIES.iter() {
        let id = CheckId::Representation(f).id();
        v.records(all, &id, REPR_TOL, 20);
        for r in all.iter().filter(|r| r.check_id == id) {
            v.require(r.params.get("n_max").is_some_and(|n| n >= 12.0), || format!("{id}: n_max below 12"));
        }
    }
    ok &= report(5, "recurrence vs explicit representation, n <= 12", v);

    let mut v = Verdict::new();
    for m in [MeasureCase::Carlitz, MeasureCase::Vm, MeasureCase::Vsigma, MeasureCase::NExtremal, MeasureCase::NuMu] {
        v.records(all, &CheckId::Mass(m).id(), MASS_TOL, 3);
    }
    for r in all.iter().filter(|r| r.check_id.starts_with("POSITIVITY_")) {
        v.require(r.lhs_re.is_finite() && r.abs_err <= POSITIVITY_TOL, || {
            format!("{} {:?}: min {:e}", r.check_id, r.params.0, r.lhs_re)
        });
    }
    ok &= report(6, "measure masses and nonnegativity", v);

    let mut v = Verdict::new();
    for id in ["RADIUS_SZEGO", "RADIUS_AL_SALAM_CARLITZ_V"] {
        v.records(all, id, RADIUS_TOL, 3);
    }
    for &q in DEFAULT_QS.iter() {
        let base = QBase::new(q).unwrap();
        for spec in
            [FamilySpec::new(FamilyId::ASCarlitzU, base).with_a(-1.0), FamilySpec::new(FamilyId::QInvHermite, base)]
        {
            let est = estimate_radius(&spec);
            v.require(matches!(est, Ok(RadiusEstimate::Infinite)), || format!("{} at q={q}: {est:?}", spec.family));
        }
    }
    ok &= report(7, "generating-function radii", v);

    let mut v = Verdict::new();
    for &f in GENFUN_FAMILIES.iter() {
        let id = CheckId::Genfun(f).id();
        v.records(all, &id, GENFUN_TOL, 3);
        for r in all.iter().filter(|r| r.check_id == id) {
            v.require(r.params.get("terms") == Some(60.0), || format!("{id}: not at 60 terms"));
        }
    }
    ok &= report(8, "generating functions at 60 terms", v);

    let failed = all.iter().filter(|r| !r.pass).count();
    println!(
        "suite: {} records, {failed} failed at their own tolerances, {} evaluation errors",
        all.len(),
        suite.errors.len()
    );
    if !ok {
        std::process::exit(1);
    }
}
