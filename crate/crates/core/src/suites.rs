//! Randomized verification suites, one per acceptance criterion. Each returns a
//! [`VerifyReport`]; exact suites compare rationals with `==`.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::abstract_points::{
    act_witness, borel_diagonal, borel_unipotent, correlation_transform, flip_kernel, gl2_act,
    point_from_kernel, quadric_kernel, quadric_kernel_at, quadric_roots, Gl2, KernelWitness,
    TensorPoint,
};
use crate::error::{Error, Result};
use crate::eynard_mehta::{EMSpec, Levels, PfEMSpec};
use crate::linalg::{det, inverse, pfaffian, Matrix, SkewMatrix};
use crate::point_process::{
    brute_force_correlations, Config, GroundSet, LEnsemble, PfLEnsemble, ProbTable,
};
use crate::random::{complex_unit, rational_matrix, rational_skew, rng, small_rational};
use crate::scalar::{Scalar, C, Q};
use crate::schur_process::{
    em_bridge, pf_block_matrix, pf_k12, schur_kernel, schur_kernel_matrix, schur_kernel_with,
    toeplitz_w_symbol, weight_tail_bound, Enumeration, K12Case, RadiusCase, SchurSpec, SpacePoint,
    Window,
};
use crate::symfunc::{
    cauchy_h, cauchy_series, cauchy_tail_bound, h_o, h_o_series, h_o_tail_bound, pf_z, schur_z,
    skew_schur, skew_schur_tableaux, tau_direct, tau_pf, Partition, Specialization,
};

/// Suites in acceptance order.
pub const SUITES: [&str; 11] = [
    "l-ensemble",
    "pfaffian-l-ensemble",
    "eynard-mehta",
    "pfaffian-eynard-mehta",
    "symfunc",
    "partition-function",
    "schur-kernel",
    "pfaffian-schur-kernel",
    "contour",
    "abstract-points",
    "em-bridge",
];

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    pub max_deviation: f64,
    /// Largest enumeration tail bound added to the tolerance, if any.
    pub max_tail: Option<f64>,
    /// `0.0` for exact suites.
    pub tolerance: f64,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases,
            "max_deviation": self.max_deviation,
            "max_tail": self.max_tail,
            "tolerance": self.tolerance,
            "failures": self.failures,
            "pass": self.pass,
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tol = if self.tolerance == 0.0 && self.max_tail.is_none() {
            "exact".to_string()
        } else {
            format!("{:e}", self.tolerance)
        };
        write!(
            f,
            "{} {}: {} cases, max deviation {:.3e}, tolerance {tol}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.cases,
            self.max_deviation
        )?;
        if let Some(t) = self.max_tail {
            write!(f, ", max tail {t:.3e}")?;
        }
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Knobs shared by all suites.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Replaces the numeric tolerance of float suites; exact suites ignore it.
    pub tol: Option<f64>,
}

const MAX_LOGGED: usize = 10;

struct Tally {
    cases: usize,
    max_dev: f64,
    max_tail: Option<f64>,
    failures: Vec<String>,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            max_dev: 0.0,
            max_tail: None,
            failures: Vec::new(),
            failed: false,
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed = true;
        if self.failures.len() < MAX_LOGGED {
            self.failures.push(msg);
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn exact<S: Scalar>(&mut self, got: &S, want: &S, what: impl FnOnce() -> String) {
        self.cases += 1;
        if got != want {
            let dev = (got.clone() - want.clone()).magnitude();
            self.max_dev = self.max_dev.max(dev);
            self.fail(format!("{}: {} != {}", what(), got.render(), want.render()));
        }
    }

    fn within(&mut self, dev: f64, tol: f64, tail: f64, what: impl FnOnce() -> String) {
        self.cases += 1;
        self.max_dev = self.max_dev.max(dev);
        if tail > 0.0 {
            self.max_tail = Some(self.max_tail.unwrap_or(0.0).max(tail));
        }
        if dev.is_nan() || dev > tol + tail {
            self.fail(format!("{}: deviation {dev:.3e} > {tol:.1e} + {tail:.1e}", what()));
        }
    }

    fn error(&mut self, what: &str, e: Error) {
        self.cases += 1;
        self.fail(format!("{what}: {e}"));
    }

    fn report(self, suite: &str, tolerance: f64) -> VerifyReport {
        VerifyReport {
            suite: suite.to_string(),
            cases: self.cases,
            max_deviation: self.max_dev,
            max_tail: self.max_tail,
            tolerance,
            pass: !self.failed && self.cases > 0,
            failures: self.failures,
        }
    }
}

/// Runs one suite by name.
pub fn run_suite(name: &str, opts: SuiteOptions) -> Result<VerifyReport> {
    let s = opts.seed;
    let tol = |default: f64| opts.tol.filter(|t| *t > 0.0).unwrap_or(default);
    let report = match name {
        "l-ensemble" => l_ensemble(s),
        "pfaffian-l-ensemble" => pf_l_ensemble(s),
        "eynard-mehta" => eynard_mehta(s),
        "pfaffian-eynard-mehta" => pf_eynard_mehta(s),
        "symfunc" => symfunc(s),
        "partition-function" => partition_function(s),
        "schur-kernel" => schur_kernel_suite(s, tol(1e-6)),
        "pfaffian-schur-kernel" => pf_schur_kernel_suite(s, tol(1e-5)),
        "contour" => contour(s, tol(1e-8)),
        "abstract-points" => abstract_points(s, tol(1e-10)),
        "em-bridge" => em_bridge_suite(s, tol(1e-6)),
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(report)
}

pub fn run_all(opts: SuiteOptions) -> Vec<VerifyReport> {
    SUITES
        .iter()
        .map(|name| run_suite(name, opts).expect("known suite"))
        .collect()
}

fn case_seed(base: u64, suite: u64, case: u64) -> u64 {
    base.wrapping_mul(1_000_003).wrapping_add(suite * 10_000 + case)
}

fn random_window(r: &mut impl Rng, n: usize) -> Config {
    Config(r.gen_range(0..1u64 << n))
}

/// Conditional L-ensembles: kernel minors against superset sums of probabilities.
fn l_ensemble(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    let mut case = 0;
    let mut made = 0;
    while made < 50 {
        case += 1;
        let mut r = rng(case_seed(seed, 1, case));
        let n = 1 + made % 6;
        let l = rational_matrix(&mut r, n, n);
        let window = random_window(&mut r, n);
        let Ok(ens) = LEnsemble::with_window(GroundSet::range(n), l, window) else {
            continue;
        };
        made += 1;
        let run = |t: &mut Tally| -> Result<()> {
            let table = ens.prob_table()?;
            let rho = brute_force_correlations(&table)?;
            let k = ens.kernel()?;
            for (m, want) in rho.iter().enumerate() {
                let got = k.correlation(Config(m as u64))?;
                t.exact(&got, want, || format!("case {case} n={n} window {:b} Y={m:b}", window.0));
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("l-ensemble", 0.0)
}

/// `pf A_α = (-1)^{Σα} pf B_{ᾱ} / pf B` with `B = A^{-1}` and 1-based `α`.
pub fn complementary_pfaffian_deviation(a: &SkewMatrix<Q>) -> Result<Option<(u64, Q, Q)>> {
    let dim = a.dim();
    let b = SkewMatrix::new(inverse(a.as_matrix())?)?;
    let pf_b = pfaffian(&b);
    for mask in (0..1u64 << dim).filter(|m| m.count_ones() % 2 == 0) {
        let alpha: Vec<usize> = Config(mask).points().collect();
        let rest: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) == 0).collect();
        let sign: usize = alpha.iter().map(|i| i + 1).sum();
        let lhs = pfaffian(&a.principal(&alpha)?);
        let mut rhs = pfaffian(&b.principal(&rest)?) / pf_b.clone();
        if sign % 2 == 1 {
            rhs = -rhs;
        }
        if lhs != rhs {
            return Ok(Some((mask, lhs, rhs)));
        }
    }
    Ok(None)
}

fn pf_l_ensemble(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    let mut case = 0;
    let mut made = 0;
    while made < 50 {
        case += 1;
        let mut r = rng(case_seed(seed, 2, case));
        let n = 1 + made % 4;
        let l = rational_skew(&mut r, 2 * n);
        let window = random_window(&mut r, n);
        let Ok(ens) = PfLEnsemble::with_window(GroundSet::range(n), l, window) else {
            continue;
        };
        made += 1;
        let run = |t: &mut Tally| -> Result<()> {
            let rho = brute_force_correlations(&ens.prob_table()?)?;
            let k = ens.kernel()?;
            for (m, want) in rho.iter().enumerate() {
                let got = k.correlation(Config(m as u64))?;
                t.exact(&got, want, || format!("case {case} n={n} Y={m:b}"));
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    let mut made = 0;
    while made < 50 {
        case += 1;
        let mut r = rng(case_seed(seed, 2, case));
        let dim = 2 * (1 + made % 4);
        let a = rational_skew(&mut r, dim);
        if pfaffian(&a).is_zero() {
            continue;
        }
        made += 1;
        match complementary_pfaffian_deviation(&a) {
            Ok(None) => t.check(true, String::new),
            Ok(Some((mask, l, rr))) => {
                t.exact(&l, &rr, || format!("complementary minor dim {dim} α={mask:b}"))
            }
            Err(e) => t.error("complementary minor", e),
        }
    }
    t.report("pfaffian-l-ensemble", 0.0)
}

fn levels(sizes: &[usize]) -> Result<Levels> {
    Levels::new(sizes.iter().map(|&s| GroundSet::range(s)).collect())
}

fn random_em(r: &mut impl Rng) -> Result<EMSpec<Q>> {
    let k = r.gen_range(1..=3);
    let n = r.gen_range(1..=2);
    let sizes: Vec<usize> = (0..k).map(|_| r.gen_range(n..=4)).collect();
    loop {
        let ws = sizes
            .windows(2)
            .map(|w| rational_matrix(r, w[0], w[1]))
            .collect();
        let spec = EMSpec::new(
            levels(&sizes)?,
            n,
            rational_matrix(r, n, sizes[0]),
            ws,
            rational_matrix(r, sizes[k - 1], n),
        )?;
        if !spec.partition()?.is_zero() {
            return Ok(spec);
        }
    }
}

fn random_pf_em(r: &mut impl Rng) -> Result<PfEMSpec<Q>> {
    let k = r.gen_range(1..=2);
    let sizes: Vec<usize> = (0..k).map(|_| r.gen_range(2..=4)).collect();
    loop {
        let vs = sizes
            .windows(2)
            .map(|w| rational_matrix(r, w[0], w[1]))
            .collect();
        let spec = PfEMSpec::new(
            levels(&sizes)?,
            1,
            rational_skew(r, sizes[0]),
            vs,
            rational_matrix(r, sizes[k - 1], 2),
        )?;
        if !spec.partition().is_zero() {
            return Ok(spec);
        }
    }
}

fn total_weight<S: Scalar>(points: usize, f: impl Fn(Config) -> Result<S>) -> Result<S> {
    (0..1u64 << points).try_fold(S::zero(), |acc, m| Ok(acc + f(Config(m))?))
}

fn eynard_mehta(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    for case in 0..20 {
        let mut r = rng(case_seed(seed, 3, case));
        let mut run = |t: &mut Tally| -> Result<()> {
            let spec = random_em(&mut r)?;
            let total = spec.levels.total();
            let sum = total_weight(total, |c| spec.weight_of(c))?;
            t.exact(&sum, &spec.partition()?, || format!("case {case}: weight sum vs det M"));
            let table = spec.prob_table()?;
            let rho = brute_force_correlations(&table)?;
            let k = spec.kernel()?;
            for (m, want) in rho.iter().enumerate().filter(|(m, _)| m.count_ones() <= 4) {
                let got = k.correlation(Config(m as u64))?;
                t.exact(&got, want, || format!("case {case}: correlation {m:b}"));
            }
            let embedded = spec.embed_l()?.prob_table()?;
            for (m, (a, b)) in embedded.values().iter().zip(table.values()).enumerate() {
                t.exact(a, b, || format!("case {case}: embedded probability {m:b}"));
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("eynard-mehta", 0.0)
}

fn pf_eynard_mehta(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    for case in 0..20 {
        let mut r = rng(case_seed(seed, 4, case));
        let mut run = |t: &mut Tally| -> Result<()> {
            let spec = random_pf_em(&mut r)?;
            let total = spec.levels.total();
            let sum = total_weight(total, |c| spec.weight_of(c))?;
            t.exact(&sum, &spec.partition(), || format!("case {case}: weight sum vs pf N"));
            let rho = brute_force_correlations(&spec.prob_table()?)?;
            let k = spec.kernel()?;
            let m = k.k.as_matrix();
            t.check(*m == m.transpose().neg(), || format!("case {case}: kernel not skew"));
            for (mask, want) in rho.iter().enumerate() {
                let got = k.correlation(Config(mask as u64))?;
                t.exact(&got, want, || format!("case {case}: correlation {mask:b}"));
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("pfaffian-eynard-mehta", 0.0)
}

fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(Partition::all_of_size).collect()
}

fn random_q_spec(r: &mut impl Rng, vars: usize) -> Specialization<Q> {
    Specialization::new((0..vars).map(|_| small_rational(r) / Q::from_i64(4)).collect())
}

fn random_c_spec(r: &mut impl Rng, vars: usize, scale: f64) -> Specialization<C> {
    Specialization::new((0..vars).map(|_| complex_unit(r) * scale).collect())
}

fn symfunc(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    let mut r = rng(case_seed(seed, 5, 0));
    for vars in 1..=3 {
        let rho = random_q_spec(&mut r, vars);
        for la in partitions_up_to(6) {
            t.exact(&tau_pf(&la, &rho), &tau_direct(&la, &rho), || format!("tau {la}, {vars} vars"));
        }
    }
    let a = small_rational(&mut r) + Q::from_ratio(1, 9);
    let single = Specialization::single(a.clone());
    for la in partitions_up_to(8) {
        let e: usize = (1..=la.len().div_ceil(2))
            .map(|i| la.part(2 * i - 1) - la.part(2 * i))
            .sum();
        t.exact(&tau_direct(&la, &single), &a.pow(e as i32), || format!("tau power {la}"));
    }
    for vars in 1..=3 {
        let rho = random_q_spec(&mut r, vars);
        for la in partitions_up_to(6) {
            for mu in la.subpartitions() {
                t.exact(&skew_schur(&la, &mu, &rho), &skew_schur_tableaux(&la, &mu, &rho), || {
                    format!("{la}/{mu}, {vars} vars")
                });
            }
        }
    }
    for _ in 0..3 {
        let (x, y) = (random_c_spec(&mut r, 2, 0.3), random_c_spec(&mut r, 3, 0.3));
        match cauchy_h(&x, &y) {
            Ok(exact) => {
                let err = (cauchy_series(&x, &y, 10) - exact).norm();
                t.within(err, 1e-15, cauchy_tail_bound(&x, &y, 10), || "Cauchy at degree 10".into());
            }
            Err(e) => t.error("Cauchy", e),
        }
        let x = random_c_spec(&mut r, 3, 0.3);
        match h_o(&x) {
            Ok(exact) => {
                let err = (h_o_series(&x, 10) - exact).norm();
                t.within(err, 1e-15, h_o_tail_bound(&x, 10), || "H° at degree 10".into());
            }
            Err(e) => t.error("H°", e),
        }
    }
    t.report("symfunc", 0.0)
}

fn random_single(seed: u64, t: usize, pf: bool) -> Result<SchurSpec<C>> {
    let mut r = rng(seed);
    let mut draw = || C::new(r.gen_range(0.1..0.5), 0.0);
    let plus: Vec<C> = (0..t).map(|_| draw()).collect();
    let minus: Vec<C> = (0..t).map(|_| draw()).collect();
    SchurSpec::single_variable(&plus, &minus, pf)
}

fn partition_function(seed: u64) -> VerifyReport {
    let mut t = Tally::new();
    for case in 0..4 {
        let pf = case % 2 == 1;
        let run = |t: &mut Tally| -> Result<()> {
            let spec = random_single(case_seed(seed, 6, case), 2, pf)?;
            let z = if pf {
                pf_z(spec.rho_plus(), spec.rho_minus())?
            } else {
                schur_z(spec.rho_plus(), spec.rho_minus())?
            };
            let mut last = 0.0;
            for cutoff in [8, 10, 12] {
                let s = Enumeration::new(&spec, cutoff)?.weight_sum().re;
                let bound = weight_tail_bound(&spec, cutoff)?;
                t.check(s >= last, || format!("case {case}: sum decreased at cutoff {cutoff}"));
                t.within((z.re - s).max(0.0), 0.0, bound, || format!("case {case} cutoff {cutoff}"));
                t.check(z.re - s >= -1e-12, || format!("case {case}: sum exceeds Z at cutoff {cutoff}"));
                last = s;
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("partition-function", 0.0)
}

fn grid(levels: usize) -> Vec<SpacePoint> {
    (1..=levels)
        .flat_map(|i| (-4..=4).map(move |u| SpacePoint::new(i, u)))
        .collect()
}

fn small_sets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    for a in 0..n {
        for b in a + 1..n {
            out.push(vec![a, b]);
        }
    }
    out
}

fn schur_kernel_suite(seed: u64, tol: f64) -> VerifyReport {
    let mut t = Tally::new();
    for (case, levels) in [(0, 1), (1, 2), (2, 2)] {
        let run = |t: &mut Tally| -> Result<()> {
            let spec = random_single(case_seed(seed, 7, case), levels, false)?;
            let e = Enumeration::new(&spec, 14)?;
            let pts = grid(levels);
            let k = schur_kernel_matrix(&spec, &pts)?;
            for set in small_sets(pts.len()) {
                let got = det(&k.principal(&set)?)?;
                let points: Vec<SpacePoint> = set.iter().map(|&a| pts[a]).collect();
                let want = e.correlation(&points)?;
                t.within((got - want.value).norm(), tol, want.tail_bound, || {
                    format!("case {case} {points:?}")
                });
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    let half = C::new(0.5, 0.0);
    match SchurSpec::single_variable(&[half], &[half], false)
        .and_then(|spec| schur_kernel(&spec, 1, 0, 1, 0))
    {
        Ok(v) => t.within((v - C::new(3.0 / 16.0, 0.0)).norm(), 1e-8, 0.0, || "one-row 3/16".into()),
        Err(e) => t.error("one-row 3/16", e),
    }
    t.report("schur-kernel", tol)
}

fn pf_schur_kernel_suite(seed: u64, tol: f64) -> VerifyReport {
    let mut t = Tally::new();
    for (case, levels) in [(0, 1), (1, 2), (2, 2)] {
        let run = |t: &mut Tally| -> Result<()> {
            let spec = random_single(case_seed(seed, 8, case), levels, true)?;
            let e = Enumeration::new(&spec, 14)?;
            let pts = grid(levels);
            let k = pf_block_matrix(&spec, &pts)?;
            let skew = k.max_abs_diff(&k.transpose().neg());
            t.within(skew, 1e-9, 0.0, || format!("case {case}: skew"));
            for set in small_sets(pts.len()) {
                let rows: Vec<usize> = set.iter().flat_map(|&a| [2 * a, 2 * a + 1]).collect();
                let sub = k.principal(&rows)?;
                let got = pfaffian(&SkewMatrix::from_upper(rows.len(), |a, b| sub[(a, b)]));
                let points: Vec<SpacePoint> = set.iter().map(|&a| pts[a]).collect();
                let want = e.correlation(&points)?;
                t.within((got - want.value).norm(), tol, want.tail_bound, || {
                    format!("case {case} {points:?}")
                });
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    let window = Window::new(-3, 3).expect("valid window");
    let run = |t: &mut Tally| -> Result<()> {
        let spec = random_single(case_seed(seed, 8, 9), 3, true)?;
        for (i, j) in [(1, 2), (2, 3), (1, 3), (2, 2)] {
            let w = residue_symbol(&spec, i, j, window);
            for u in window.positions() {
                for v in window.positions() {
                    let narrow = pf_k12(&spec, i, u, j, v, K12Case::Narrow)?.value;
                    let wide = pf_k12(&spec, i, u, j, v, K12Case::Wide)?.value;
                    let diff = narrow - wide + w[(window.index(u), window.index(v))];
                    t.within(diff.norm(), 1e-8, 0.0, || format!("K12 residue ({i},{u};{j},{v})"));
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut t) {
        t.error("K12 residue", e);
    }
    t.report("pfaffian-schur-kernel", tol)
}

/// `W_[i,j)` for `i < j`; the identity for the empty interval.
fn residue_symbol(spec: &SchurSpec<C>, i: usize, j: usize, window: Window) -> Matrix<C> {
    if i < j {
        toeplitz_w_symbol(&spec.minus_range(i, j), &spec.plus_range(i, j), window)
    } else {
        Matrix::identity(window.len())
    }
}

fn contour(seed: u64, tol: f64) -> VerifyReport {
    let mut t = Tally::new();
    let window = Window::new(-3, 3).expect("valid window");
    for case in 0..3 {
        let run = |t: &mut Tally| -> Result<()> {
            let spec = random_single(case_seed(seed, 9, case), 3, false)?;
            for (i, j) in [(1, 2), (1, 3), (2, 3), (2, 2)] {
                let w = residue_symbol(&spec, i, j, window);
                for u in window.positions() {
                    for v in window.positions() {
                        let inner = schur_kernel_with(&spec, i, u, j, v, RadiusCase::Inner)?;
                        let outer = schur_kernel_with(&spec, i, u, j, v, RadiusCase::Outer)?;
                        let doublings = inner.doublings.max(outer.doublings);
                        t.check(doublings <= 16, || format!("({i},{u};{j},{v}): {doublings} doublings"));
                        let diff = inner.value - outer.value + w[(window.index(u), window.index(v))];
                        t.within(diff.norm(), tol, 0.0, || format!("case {case} ({i},{u};{j},{v})"));
                    }
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("contour", tol)
}

fn random_table(r: &mut impl Rng, n: usize) -> Result<ProbTable<Q>> {
    let raw: Vec<Q> = (0..1 << n).map(|_| Q::from_ratio(r.gen_range(0..=9), 1)).collect();
    let total = raw.iter().fold(Q::zero(), |a, b| a + b.clone()) + Q::one();
    let mut vals: Vec<Q> = raw.into_iter().map(|v| v / total.clone()).collect();
    vals[0] = vals[0].clone() + Q::one() / total;
    ProbTable::new(n, vals)
}

fn random_gl2(r: &mut impl Rng) -> Gl2<Q> {
    loop {
        let mut draw = || if r.gen_bool(0.25) { Q::zero() } else { small_rational(r) };
        let g = [[draw(), draw()], [draw(), draw()]];
        if !(g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone()).is_zero() {
            return g;
        }
    }
}

fn abstract_points(seed: u64, tol: f64) -> VerifyReport {
    let mut t = Tally::new();
    let mut r = rng(case_seed(seed, 10, 0));
    let run = |t: &mut Tally, r: &mut rand_chacha::ChaCha8Rng| -> Result<()> {
        for n in 1..=5 {
            for _ in 0..4 {
                let table = random_table(r, n)?;
                let moved = correlation_transform(&TensorPoint::new(n, table.values().to_vec())?)?;
                let rho = brute_force_correlations(&table)?;
                for (m, (a, b)) in moved.coeffs().iter().zip(&rho).enumerate() {
                    t.exact(a, b, || format!("superset sums n={n} S={m:b}"));
                }
            }
        }
        for n in 1..=4 {
            for trial in 0..6 {
                let m = trial % 2;
                let w = KernelWitness::new(n, m, rational_matrix(r, n + m, n + m))?;
                let Ok(p) = point_from_kernel(&w) else { continue };
                let alpha = small_rational(r) + Q::from_ratio(1, 7);
                let c = small_rational(r);
                let o = Q::one;
                let checks: [(Gl2<Q>, KernelWitness<Q>, &str); 3] = [
                    ([[o(), Q::zero()], [Q::zero(), alpha.clone()]], borel_diagonal(&w, &alpha), "diagonal"),
                    ([[o(), Q::zero()], [c.clone(), o()]], borel_unipotent(&w, &c), "unipotent"),
                    ([[Q::zero(), o()], [o(), Q::zero()]], flip_kernel(&w)?, "flip"),
                ];
                for (g, witness, name) in checks {
                    let got = point_from_kernel(&witness)?;
                    let want = gl2_act(1, &g, &p)?;
                    t.check(got.projective_eq(&want, 0.0), || format!("{name} move n={n}"));
                }
                let j = r.gen_range(1..=n);
                let g = random_gl2(r);
                let got = point_from_kernel(&act_witness(j, &g, &w)?)?;
                t.check(got.projective_eq(&gl2_act(j, &g, &p)?, 0.0), || format!("GL2 witness n={n} j={j}"));
            }
        }
        for case in 0..100 {
            let mut c = vec![C::new(0.0, 0.0); 16];
            c[0] = C::new(1.0, 0.0);
            for m in [0b0101, 0b1001, 0b0110, 0b1010, 0b1111] {
                c[m] = complex_unit(r) * r.gen_range(0.2..2.0);
            }
            let p = TensorPoint::new(4, c)?;
            let q = point_from_kernel(&quadric_kernel(&p)?)?;
            let dev = q.coeffs().iter().zip(p.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            t.within(dev, tol, 0.0, || format!("quadric point {case}"));
            for x in quadric_roots(&p)? {
                let q = point_from_kernel(&quadric_kernel_at(&p, &x)?)?;
                t.check(q.projective_eq(&p, tol), || format!("quadric point {case}, root {x}"));
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut t, &mut r) {
        t.error("abstract points", e);
    }
    t.report("abstract-points", 0.0)
}

fn em_bridge_suite(seed: u64, tol: f64) -> VerifyReport {
    let mut t = Tally::new();
    let window = Window::new(-8, 4).expect("valid window");
    for case in 0..2 {
        let run = |t: &mut Tally| -> Result<()> {
            let mut r = rng(case_seed(seed, 11, case));
            let vals: Vec<Q> = (0..4).map(|_| Q::from_ratio(r.gen_range(1..=15), 100)).collect();
            let spec = SchurSpec::single_variable(&vals[..2], &vals[2..], false)?;
            let k = em_bridge(&spec, window)?.kernel()?;
            let cs = spec.to_complex();
            for i in 1..=2 {
                for j in 1..=2 {
                    for u in -8..=1 {
                        for v in -8..=1 {
                            let a = (i - 1) * window.len() + window.index(u);
                            let b = (j - 1) * window.len() + window.index(v);
                            let got = k.k[(a, b)].to_complex();
                            let want = schur_kernel(&cs, i, u, j, v)?;
                            t.within((got - want).norm(), tol, 0.0, || format!("case {case} ({i},{u};{j},{v})"));
                        }
                    }
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut t) {
            t.error(&format!("case {case}"), e);
        }
    }
    t.report("em-bridge", tol)
}
