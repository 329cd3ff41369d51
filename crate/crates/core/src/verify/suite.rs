//! Default parameter grids and the parallel suite runner.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::catalog::{CheckId, GramCase, MeasureCase};
use super::checks::{is_circle, run_scalar, spec_from_params, Args};
use super::gram::{gram, GramReport};
use super::record::{CheckResult, Params};
use crate::families::{gen_function_radius, im_printed_norm, log_chi_at, FamilyId, FamilySpec};
use crate::integrate::QuadConfig;
use crate::measures::{self, Measure, PointFn};
use crate::qcore::pochhammer::cpoch_inf;
use crate::{Error, QBase, Result};

type C = Complex64;

/// The bases every suite runs at unless told otherwise.
pub const DEFAULT_QS: [f64; 3] = [0.3, 0.5, 0.8];

/// Which checks to run.
#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    All,
    Section(u8),
    Checks(Vec<CheckId>),
}

impl Selection {
    fn ids(&self) -> Vec<CheckId> {
        match self {
            Selection::All => CheckId::all(),
            Selection::Section(s) => CheckId::all().into_iter().filter(|c| c.section() == *s).collect(),
            Selection::Checks(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub selection: Selection,
    pub qs: Vec<f64>,
    /// Per-id tolerance overrides; the key `*` applies to every check.
    pub tolerances: BTreeMap<String, f64>,
    pub quad: QuadConfig,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            selection: Selection::All,
            qs: DEFAULT_QS.to_vec(),
            tolerances: BTreeMap::new(),
            quad: QuadConfig::default(),
            seed: 0x5eed,
        }
    }
}

/// One unit of work.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedCheck {
    pub id: CheckId,
    pub params: Params,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    /// Sorted by check id, then parameters.
    pub results: Vec<CheckResult>,
    /// Checks that could not be evaluated; each also appears as a failing record.
    pub errors: Vec<String>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

/// Expands the selection into concrete parameter points.
pub fn plan(cfg: &SuiteConfig) -> Result<Vec<PlannedCheck>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        QBase::new(q)?;
        for id in cfg.selection.ids() {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(&id.id()) ^ q.to_bits());
            for params in grid(id, q, &mut rng)? {
                out.push(PlannedCheck { id, params });
            }
        }
    }
    Ok(out)
}

/// Runs every planned check in parallel; output order does not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let planned = plan(cfg)?;
    let outcomes: Vec<(Vec<CheckResult>, Option<String>)> =
        planned.par_iter().map(|p| run_planned(p, &cfg.quad)).collect();
    let mut report = SuiteReport::default();
    for (mut records, err) in outcomes {
        for r in &mut records {
            if let Some(t) = cfg.tolerances.get(&r.check_id).or_else(|| cfg.tolerances.get("*")) {
                r.retolerance(*t);
            }
        }
        report.results.extend(records);
        report.errors.extend(err);
    }
    report.results.sort_by(|a, b| a.report_order(b));
    report.errors.sort();
    Ok(report)
}

/// Runs one planned check; failures to evaluate become a failing record.
pub fn run_planned(p: &PlannedCheck, quad: &QuadConfig) -> (Vec<CheckResult>, Option<String>) {
    let start = Instant::now();
    let out = match p.id {
        CheckId::Gram(case) => gram_records(case, &p.params, quad),
        CheckId::PrintedNormRatio => printed_norm_records(&p.params, quad),
        id => run_scalar(id, &p.params, quad),
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match out {
        Ok(mut v) => {
            let each = ms / v.len().max(1) as f64;
            for r in &mut v {
                r.runtime_ms = each;
            }
            (v, None)
        }
        Err(e) => {
            let nan = C::new(f64::NAN, 0.0);
            let mut r = CheckResult::with_scale(
                &p.id.id(),
                &p.id.equation_ref(),
                p.params.clone(),
                nan,
                nan,
                1.0,
                p.id.default_tolerance(),
            );
            r.runtime_ms = ms;
            let at: Vec<String> = p.params.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let msg = format!("{} [{}]: {e}", p.id, at.join(", "));
            (vec![r], Some(msg))
        }
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn params(q: f64, items: &[(&str, f64)]) -> Params {
    let mut p = Params::default();
    p.push("q", q);
    for (k, v) in items {
        p.push(*k, *v);
    }
    p
}

fn round(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Uniform in `(lo, hi)`, rounded so grid points print cleanly.
fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    round(rng.gen_range(lo..hi))
}

/// Uniform in `(-hi, -lo) U (lo, hi)`.
fn draw_signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = draw(rng, lo, hi);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// The N-extremal parameter used at each base.
/// A point of `q < t < 1` for the N-extremal measure.
fn extremal_t(q: f64) -> f64 {
    if q < 0.75 {
        0.8
    } else if q < 0.85 {
        0.9
    } else {
        0.5 * (1.0 + q)
    }
}

/// The V-family parameter: inside `(q, 1/q)` and away from 1.
fn v_parameter(q: f64) -> f64 {
    if q < 0.6 {
        0.7
    } else {
        1.1
    }
}

/// Parameter points for one check at one base.
pub fn grid(id: CheckId, q: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Params>> {
    let sq = q.sqrt();
    let tm = extremal_t(q);
    let mut out = Vec::new();
    match id {
        CheckId::ChiharaIntegral => {
            out.push(params(q, &[("t1", 0.0), ("t2", 0.0)]));
            for _ in 0..4 {
                out.push(params(q, &[("t1", draw(rng, -0.9, 0.9)), ("t2", draw(rng, -0.9, 0.9))]));
            }
        }
        CheckId::AskeyWilsonIntegral | CheckId::AskeyWilsonPermutation => {
            out.push(params(q, &[("t1", 0.3), ("t2", -0.2), ("t3", 0.25), ("t4", 0.1)]));
            for _ in 0..3 {
                let t: Vec<f64> = (0..4).map(|_| draw(rng, -0.8, 0.8)).collect();
                out.push(params(q, &[("t1", t[0]), ("t2", t[1]), ("t3", t[2]), ("t4", t[3])]));
            }
        }
        CheckId::GenfunProductIntegral => {
            out.push(params(q, &[("t1", 0.3), ("t2", -0.2), ("t3", 0.25), ("t4", -0.1), ("t5", 0.4), ("t6", -0.35)]));
            for _ in 0..3 {
                let mut t: Vec<f64> = (0..4).map(|_| draw_signed(rng, 0.1, 0.6)).collect();
                if t.iter().product::<f64>() < 0.0 {
                    t[3] = -t[3];
                }
                let (t5, t6) = (draw(rng, -0.7, 0.7), draw(rng, -0.7, 0.7));
                out.push(params(q, &[("t1", t[0]), ("t2", t[1]), ("t3", t[2]), ("t4", t[3]), ("t5", t5), ("t6", t6)]));
            }
        }
        CheckId::CarlitzIntegral | CheckId::CarlitzChuVandermonde => {
            out.push(params(q, &[("a", -0.8), ("t1", 0.3), ("t2", 0.2)]));
            for _ in 0..3 {
                let a = draw(rng, -2.0, -0.3);
                let lim = 0.9 * 1f64.min(1.0 / a.abs());
                out.push(params(q, &[("a", a), ("t1", draw(rng, -lim, lim)), ("t2", draw(rng, -lim, lim))]));
            }
        }
        CheckId::VDensityIntegral => {
            for a in [sq, 1.0 / sq] {
                for _ in 0..2 {
                    let lim = 0.6 * (q / a).sqrt().min(sq / a);
                    let g = draw(rng, 0.5, 2.0);
                    out.push(params(
                        q,
                        &[("a", round(a)), ("gamma", g), ("t1", draw(rng, -lim, lim)), ("t2", draw(rng, -lim, lim))],
                    ));
                }
            }
        }
        CheckId::RamanujanIntegral => {
            for _ in 0..4 {
                out.push(params(q, &[("t1", draw(rng, -0.9 * sq, 0.9 * sq)), ("t2", draw(rng, -0.9 * sq, 0.9 * sq))]));
            }
        }
        CheckId::ChiPairIntegral => {
            out.push(params(q, &[("t", tm), ("t1", 0.4), ("t2", -0.3)]));
            for _ in 0..3 {
                let mut p = params(q, &[("t", tm)]);
                p.push_complex("t1", C::new(draw(rng, -1.0, 1.0), draw(rng, -1.0, 1.0)));
                p.push_complex("t2", C::new(draw(rng, -1.0, 1.0), draw(rng, -1.0, 1.0)));
                out.push(p);
            }
        }
        CheckId::ChiQuadrupleIntegral => {
            let lim = 0.9 * q.powf(0.75);
            out.push(params(
                q,
                &[("t", tm), ("t1", 0.3 * lim), ("t2", -0.2 * lim), ("t3", 0.25 * lim), ("t4", 0.35 * lim)],
            ));
            for _ in 0..3 {
                let mut p = params(q, &[("t", tm)]);
                for k in ["t1", "t2", "t3", "t4"] {
                    p.push_complex(k, C::from_polar(draw(rng, 0.0, lim), draw(rng, -3.1, 3.1)));
                }
                out.push(p);
            }
        }
        CheckId::ChiPairNuIntegral => {
            for k in 0..4 {
                let t1 = C::from_polar(draw(rng, 0.1, 0.6), if k % 2 == 0 { draw(rng, -1.5, 1.5) } else { 0.0 });
                let t2 = if k % 2 == 0 { t1.conj() } else { C::new(draw(rng, 0.1, 0.6) * t1.re.signum(), 0.0) };
                let lim = 0.9 * q.powf(1.5) / (t1 * t2).norm().sqrt();
                let mut p = params(q, &[("t", tm)]);
                p.push_complex("t1", t1);
                p.push_complex("t2", t2);
                p.push("t3", draw(rng, -lim, lim));
                p.push("t4", draw(rng, -lim, lim));
                out.push(p);
            }
        }
        CheckId::QBinomial => {
            for _ in 0..8 {
                out.push(params(q, &[("a", draw(rng, -2.0, 2.0)), ("z", draw(rng, -0.9, 0.9))]));
            }
        }
        CheckId::QChuVandermonde => {
            for k in 0..8 {
                let n = [0, 1, 2, 4, 6, 8, 10, 10][k] as f64;
                out.push(params(q, &[("n", n), ("a", draw_signed(rng, 0.2, 2.0)), ("c", draw(rng, -0.9, 0.9))]));
            }
        }
        CheckId::ChiharaSymmetry => {
            for k in 0..8 {
                let n = (k + 3) as f64;
                out.push(params(
                    q,
                    &[
                        ("n", n),
                        ("t1", draw_signed(rng, 0.1, 0.9)),
                        ("t2", draw_signed(rng, 0.1, 0.9)),
                        ("theta", draw(rng, 0.0, std::f64::consts::PI)),
                    ],
                ));
            }
        }
        CheckId::QPfaffKummer => {
            for _ in 0..8 {
                out.push(params(
                    q,
                    &[
                        ("A", draw(rng, -0.9, 0.9)),
                        ("B", draw_signed(rng, 0.1, 0.9)),
                        ("C", draw(rng, -0.9, 0.9)),
                        ("z", draw(rng, -0.9, 0.9)),
                    ],
                ));
            }
        }
        CheckId::Sears => {
            for k in 0..8 {
                let n = [0, 1, 3, 5, 7, 9, 10, 10][k] as f64;
                let v: Vec<f64> = (0..5).map(|_| draw_signed(rng, 0.2, 0.9)).collect();
                out.push(params(q, &[("n", n), ("a", v[0]), ("b", v[1]), ("c", v[2]), ("d", v[3]), ("e", v[4])]));
            }
        }
        CheckId::Euler => {
            for _ in 0..8 {
                out.push(params(q, &[("z", draw(rng, -3.0, 3.0))]));
            }
        }
        CheckId::NonterminatingChuVandermonde => {
            out.push(params(q, &[("A", 0.3), ("B", -0.45), ("C", 0.62)]));
            for _ in 0..7 {
                out.push(params(
                    q,
                    &[("A", draw(rng, -0.9, 0.9)), ("B", draw(rng, -0.9, 0.9)), ("C", draw(rng, -0.9, -0.1))],
                ));
            }
        }
        CheckId::BigQJacobiSymmetry => {
            for k in 0..8 {
                let a = draw(rng, -2.0, -0.3);
                out.push(params(
                    q,
                    &[
                        ("n", (k + 3) as f64),
                        ("a", a),
                        ("t1", draw_signed(rng, 0.1, 0.9)),
                        ("t2", draw_signed(rng, 0.1, 0.9)),
                        ("x", draw(rng, a, 1.0)),
                    ],
                ));
            }
        }
        CheckId::QGauss => {
            for _ in 0..8 {
                let (a, b) = (draw_signed(rng, 0.5, 1.5), draw_signed(rng, 0.5, 1.5));
                let lim = 0.9 * (a * b).abs().min(1.0);
                out.push(params(q, &[("a", a), ("b", b), ("c", draw(rng, -lim, lim))]));
            }
        }
        CheckId::QMehler => {
            out.push(params(q, &[("xi", 0.0), ("eta", 0.0), ("z", 0.5)]));
            for _ in 0..7 {
                out.push(params(
                    q,
                    &[("xi", draw(rng, -1.0, 1.0)), ("eta", draw(rng, -1.0, 1.0)), ("z", draw(rng, -0.8, 0.8))],
                ));
            }
        }
        CheckId::QPochShift => {
            for _ in 0..8 {
                let n = rng.gen_range(0..=10usize);
                let k = rng.gen_range(0..=n);
                out.push(params(q, &[("a", draw_signed(rng, 0.1, 3.0)), ("n", n as f64), ("k", k as f64)]));
            }
        }
        CheckId::Gram(case) => out.extend(gram_grid(case, q)),
        CheckId::PrintedNormRatio => out.extend(gram_grid(GramCase::IsmailMasson4, q)),
        CheckId::ZeroMean => {
            for (t1, t2) in [
                (C::new(0.3, 0.2), C::new(0.3, -0.2)),
                (C::new(0.4, 0.0), C::new(-0.3, 0.0)),
                (C::new(0.3, 0.2), C::new(-0.1, 0.25)),
            ] {
                let mut p = params(q, &[("t", tm)]);
                p.push_complex("t1", t1);
                p.push_complex("t2", t2);
                p.push("n_max", 7.0);
                out.push(p);
            }
        }
        CheckId::Genfun(f) => out.extend(genfun_grid(f, q, rng)?),
        CheckId::Radius(f) => {
            let p = match f {
                FamilyId::ASCarlitzV => params(q, &[("a", 2.0)]),
                FamilyId::ASCarlitzU => params(q, &[("a", -1.0)]),
                _ => params(q, &[]),
            };
            out.push(p);
        }
        CheckId::Representation(f) => {
            for _ in 0..20 {
                out.push(repr_params(f, q, rng));
            }
        }
        CheckId::Mass(m) => out.push(measure_params(m, q)),
        CheckId::Positivity(m) => {
            let mut p = measure_params(m, q);
            p.push("samples", 1000.0);
            out.push(p);
        }
    }
    Ok(out)
}

fn measure_params(case: MeasureCase, q: f64) -> Params {
    let va = v_parameter(q);
    let tm = extremal_t(q);
    match case {
        MeasureCase::HermiteWeight | MeasureCase::SzegoWeight => params(q, &[]),
        MeasureCase::ChiharaWeight => params(q, &[("t1", 0.37), ("t2", -0.29)]),
        MeasureCase::AskeyWilsonWeight => params(q, &[("t1", 0.37), ("t2", -0.29), ("t3", 0.21), ("t4", 0.33)]),
        MeasureCase::Carlitz => params(q, &[("a", -0.8)]),
        MeasureCase::Vm | MeasureCase::Vsigma => params(q, &[("a", va)]),
        MeasureCase::Vdensity => params(q, &[("a", va), ("gamma", 1.3)]),
        MeasureCase::PastroWeight => params(q, &[("t1", 0.3), ("t2", -0.4)]),
        MeasureCase::NExtremal => params(q, &[("t", tm)]),
        MeasureCase::NuMu => params(q, &[("t", tm), ("t1_re", 0.3), ("t1_im", 0.2), ("t2_re", 0.3), ("t2_im", -0.2)]),
    }
}

fn repr_params(f: FamilyId, q: f64, rng: &mut ChaCha8Rng) -> Params {
    let mut p = params(q, &[]);
    let sq = q.sqrt();
    match f {
        FamilyId::ASCarlitzU => p.push("a", draw(rng, -2.0, -0.2)),
        FamilyId::ASCarlitzV => p.push("a", draw(rng, 0.2, 2.0)),
        FamilyId::ASChihara | FamilyId::ASChiharaQinv => {
            p.push("t1", draw_signed(rng, 0.1, 0.9));
            p.push("t2", draw_signed(rng, 0.1, 0.9));
        }
        FamilyId::AskeyWilson => {
            for k in ["t1", "t2", "t3", "t4"] {
                p.push(k, draw_signed(rng, 0.1, 0.9));
            }
        }
        FamilyId::BigQJacobi => {
            p.push("a", draw(rng, -2.0, -0.2));
            p.push("t1", draw_signed(rng, 0.1, 0.9));
            p.push("t2", draw_signed(rng, 0.1, 0.9));
        }
        FamilyId::Pastro => {
            p.push("t1", draw_signed(rng, 0.1, 0.9 * sq));
            p.push("t2", draw_signed(rng, 0.1, 0.9 * sq));
        }
        _ => {}
    }
    let coord = match f.natural_point(0.0) {
        crate::families::EvalPoint::Trig(_) => draw(rng, 0.05, 3.1),
        crate::families::EvalPoint::Hyper(_) => draw(rng, -1.0, 1.0),
        crate::families::EvalPoint::Circle(_) => draw(rng, -3.1, 3.1),
        crate::families::EvalPoint::Line(_) => draw(rng, -1.5, 1.5),
    };
    p.push("coord", coord);
    p.push("n_max", 12.0);
    p
}

fn genfun_grid(f: FamilyId, q: f64, rng: &mut ChaCha8Rng) -> Result<Vec<Params>> {
    let mut out = Vec::new();
    for _ in 0..3 {
        let mut p = repr_params(f, q, rng);
        p.0.retain(|(k, _)| k != "n_max");
        let a = Args(&p);
        let spec = spec_from_params(f, &a)?;
        let point = f.natural_point(a.f("coord")?);
        let rho = gen_function_radius(&spec, point)?.min(1.0);
        let z = C::from_polar(round(0.5 * rho), draw(rng, -3.1, 3.1));
        p.push_complex("z", C::new(round(z.re), round(z.im)));
        p.push("terms", 60.0);
        out.push(p);
    }
    Ok(out)
}

fn gram_grid(case: GramCase, q: f64) -> Vec<Params> {
    let tm = extremal_t(q);
    let va = v_parameter(q);
    match case {
        GramCase::ContinuousHermite | GramCase::Szego => vec![params(q, &[])],
        GramCase::Chihara => vec![params(q, &[("t1", 0.37), ("t2", -0.29)])],
        GramCase::AskeyWilson => vec![
            params(q, &[("t1", 0.37), ("t2", -0.29), ("t3", 0.21), ("t4", 0.33)]),
            params(q, &[("t1", 0.3), ("t2", -0.2), ("t3", 0.25), ("t4", 0.1)]),
        ],
        GramCase::CarlitzU => vec![params(q, &[("a", -0.8)])],
        GramCase::BigQJacobi => vec![params(q, &[("a", -0.8), ("t1", 0.3), ("t2", 0.2)])],
        GramCase::CarlitzVm | GramCase::CarlitzVsigma => vec![params(q, &[("a", va)])],
        GramCase::QInvHermite => vec![params(q, &[("t", tm)])],
        GramCase::ChiharaQinv => vec![
            params(q, &[("t", tm), ("t1_re", 0.3), ("t1_im", 0.2), ("t2_re", 0.3), ("t2_im", -0.2)]),
            params(q, &[("t", tm), ("t1", 0.4), ("t2", 0.25)]),
        ],
        GramCase::VermaM | GramCase::VermaSigma => vec![params(q, &[("a", va), ("t1", 0.4), ("t2", -0.3)])],
        GramCase::Pastro => vec![params(q, &[("t1", 0.3), ("t2", -0.4)])],
        GramCase::IsmailMasson2 => vec![params(q, &[("t", tm), ("t1", 0.37), ("t2", -0.29)])],
        GramCase::IsmailMasson4 => {
            vec![params(q, &[("t", tm), ("t1", 0.37), ("t2", -0.29), ("t3", 0.21), ("t4", 0.33)])]
        }
    }
}

/// Families, measure and size of one Gram audit.
pub fn gram_setup(case: GramCase, p: &Params) -> Result<(FamilySpec, FamilySpec, Measure, usize)> {
    let a = Args(p);
    let base = a.base()?;
    let fam = |f: FamilyId| spec_from_params(f, &a);
    let chis = |ts: Vec<C>| -> PointFn { Arc::new(move |pt| ts.iter().map(|&t| log_chi_at(t, pt, base)).sum()) };
    let real_pair = |t1: f64, t2: f64| -> PointFn {
        Arc::new(move |pt| cpoch_inf(pt.x() * t1, base) * cpoch_inf(pt.x() * t2, base))
    };
    Ok(match case {
        GramCase::ContinuousHermite => {
            let s = fam(FamilyId::ContinuousQHermite)?;
            (s, s, measures::hermite_trig_weight(base), 8)
        }
        GramCase::Chihara => {
            let s = fam(FamilyId::ASChihara)?;
            (s, s, measures::asc_weight(a.f("t1")?, a.f("t2")?, base)?, 8)
        }
        GramCase::AskeyWilson => {
            let s = fam(FamilyId::AskeyWilson)?;
            (s, s, measures::aw_weight([a.f("t1")?, a.f("t2")?, a.f("t3")?, a.f("t4")?], base)?, 8)
        }
        GramCase::CarlitzU => {
            let s = fam(FamilyId::ASCarlitzU)?;
            (s, s, measures::carlitz_measure(s.a, base)?, 8)
        }
        GramCase::BigQJacobi => {
            let s = fam(FamilyId::BigQJacobi)?;
            let (t1, t2) = (a.f("t1")?, a.f("t2")?);
            let inv: PointFn = Arc::new(move |pt| 1.0 / (cpoch_inf(pt.x() * t1, base) * cpoch_inf(pt.x() * t2, base)));
            (s, s, measures::carlitz_measure(s.a, base)?.attach("big q-Jacobi measure", inv), 8)
        }
        GramCase::CarlitzVm => {
            let s = fam(FamilyId::ASCarlitzV)?;
            (s, s, measures::m_measure(s.a, base)?, 8)
        }
        GramCase::CarlitzVsigma => {
            let s = fam(FamilyId::ASCarlitzV)?;
            (s, s, measures::sigma_measure(s.a, base)?, 8)
        }
        GramCase::Szego => {
            let s = fam(FamilyId::SzegoCircle)?;
            (s, s, measures::circle_weights(base, 0.0, 0.0)?.0, 8)
        }
        GramCase::QInvHermite => {
            let s = fam(FamilyId::QInvHermite)?;
            (s, s, measures::qinv_hermite_measure(a.f("t")?, base)?, 8)
        }
        GramCase::ChiharaQinv => {
            let s = fam(FamilyId::ASChiharaQinv)?;
            let mu = measures::qinv_hermite_measure(a.f("t")?, base)?;
            (s, s, measures::nu_measure(&mu, s.t[0], s.t[1], base)?, 8)
        }
        GramCase::VermaM | GramCase::VermaSigma => {
            let s = fam(FamilyId::ASVermaRational)?;
            let mu = if case == GramCase::VermaM {
                measures::m_measure(s.a, base)?
            } else {
                measures::sigma_measure(s.a, base)?
            };
            let mu = mu.attach("V measure times (x t1, x t2)", real_pair(s.t[0].re, s.t[1].re));
            (s.swapped(), s, mu, 6)
        }
        GramCase::Pastro => {
            let s = fam(FamilyId::Pastro)?;
            let (_, omega) = measures::circle_weights(base, s.t[0].re, s.t[1].re)?;
            (s, s.swapped(), omega, 6)
        }
        GramCase::IsmailMasson2 | GramCase::IsmailMasson4 => {
            let s = fam(FamilyId::IsmailMassonRational)?;
            let mu = measures::qinv_hermite_measure(a.f("t")?, base)?;
            let ts: Vec<C> = s.t.iter().copied().filter(|t| t.norm() > 0.0).collect();
            (s, s.swapped(), mu.attach_log("N-extremal measure times chi products", chis(ts)), 6)
        }
    })
}

/// Runs one Gram audit.
pub fn gram_case(case: GramCase, p: &Params, quad: &QuadConfig) -> Result<GramReport> {
    let (a, b, mu, size) = gram_setup(case, p)?;
    debug_assert!(matches!(case, GramCase::Szego | GramCase::Pastro) == is_circle(&mu));
    gram(&a, &b, &mu, size, quad)
}

fn gram_records(case: GramCase, p: &Params, quad: &QuadConfig) -> Result<Vec<CheckResult>> {
    let r = gram_case(case, p, quad)?;
    let id = CheckId::Gram(case);
    let tol = id.default_tolerance();
    let mut out = Vec::with_capacity(r.size + 2);
    for n in 0..r.size {
        let mut pp = p.clone();
        pp.push("n", n as f64);
        let (g, z) = (r.matrix[n][n], r.predicted[n]);
        out.push(CheckResult::with_scale(&id.id(), &id.equation_ref(), pp, g, z, g.norm().max(z.norm()), tol));
    }
    let zero = C::new(0.0, 0.0);
    let mut pp = p.clone();
    pp.push("offdiag", 1.0);
    out.push(CheckResult::with_scale(&id.id(), &id.equation_ref(), pp, C::new(r.max_offdiag, 0.0), zero, 1.0, tol));
    let mut pp = p.clone();
    pp.push("offdiag_normalized", 1.0);
    out.push(CheckResult::with_scale(
        &id.id(),
        &id.equation_ref(),
        pp,
        C::new(r.max_offdiag_normalized, 0.0),
        zero,
        1.0,
        tol,
    ));
    Ok(out)
}

/// Printed four-parameter norm over the measured diagonal, against `(-t1 t2/q; q)_inf`.
fn printed_norm_records(p: &Params, quad: &QuadConfig) -> Result<Vec<CheckResult>> {
    let r = gram_case(GramCase::IsmailMasson4, p, quad)?;
    let spec = r.family_a;
    let q = spec.q();
    let expected = cpoch_inf(-spec.t[0] * spec.t[1] / q, spec.base);
    let id = CheckId::PrintedNormRatio;
    Ok((0..r.size)
        .map(|n| {
            let mut pp = p.clone();
            pp.push("n", n as f64);
            let ratio = im_printed_norm(&spec, n) / r.matrix[n][n];
            CheckResult::with_scale(
                &id.id(),
                &id.equation_ref(),
                pp,
                ratio,
                expected,
                ratio.norm().max(expected.norm()),
                id.default_tolerance(),
            )
        })
        .collect())
}

/// Parses `id=tol` pairs separated by commas.
pub fn parse_tolerances(spec: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::DomainViolation(format!("tolerance override {item:?} is not id=value")))?;
        let k = k.trim().to_ascii_uppercase();
        if k != "*" {
            k.parse::<CheckId>()?;
        }
        let v: f64 = v.trim().parse().map_err(|_| Error::DomainViolation(format!("bad tolerance {v:?}")))?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::DomainViolation(format!("tolerance must be positive, got {v}")));
        }
        out.insert(k, v);
    }
    Ok(out)
}
