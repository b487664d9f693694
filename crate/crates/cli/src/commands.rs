use std::fs;
use std::path::Path;

use dpp_core::abstract_points::{
    act_witness, correlation_transform, gl2_act, permute, permute_witness, point_from_kernel,
    quadric_kernel, Gl2, KernelWitness, SquareRoot, TensorPoint,
};
use dpp_core::eynard_mehta::{EMSpec, Levels, PfEMSpec};
use dpp_core::json::{matrix_from_json, matrix_to_json};
use dpp_core::linalg::{det, pfaffian, SkewMatrix};
use dpp_core::point_process::{enumerate_samples, Config, LEnsemble, PfLEnsemble, ProbTable};
use dpp_core::schur_process::{
    parse_points, pf_block_matrix, pf_k11, pf_k12, pf_k22, schur_kernel_matrix, schur_kernel_with,
    Enumeration, K12Case, Quadrature, RadiusCase, SchurSpec, SpacePoint,
};
use dpp_core::suites::{run_all, run_suite, SuiteOptions};
use dpp_core::{Error, Scalar, C, Q};
use serde_json::{json, Value};

use crate::output::{csv, float, parts, Format, Sink};
use crate::{Failure, ScalarMode};

fn load(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    dpp_core::json::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

macro_rules! by_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            ScalarMode::Exact => $f::<Q>($($arg),*),
            ScalarMode::Float => $f::<C>($($arg),*),
        }
    };
}

fn correlation_csv<S: Scalar>(rho: &[S]) -> String {
    csv(
        &["mask", "re", "im"],
        rho.iter().enumerate().map(|(m, x)| {
            let (re, im) = parts(x);
            vec![format!("{m:b}"), re, im]
        }),
    )
}

pub fn kernel(spec: &Path, mode: ScalarMode, out: Option<&str>) -> Result<(), Failure> {
    let v = load(spec)?;
    by_mode!(mode, kernel_in(&v, Sink::new(out, Format::Json)))
}

fn kernel_in<S: Scalar>(v: &Value, sink: Sink) -> Result<(), Failure> {
    let k = LEnsemble::<S>::from_json(v)?.kernel()?;
    match sink.format {
        Format::Csv => sink.write(&correlation_csv(&k.all_correlations()?)),
        _ => sink.write_json(&json!({"ground": k.ground.labels(), "K": matrix_to_json(&k.k)})),
    }
}

pub fn pf_kernel(spec: &Path, mode: ScalarMode, out: Option<&str>) -> Result<(), Failure> {
    let v = load(spec)?;
    by_mode!(mode, pf_kernel_in(&v, Sink::new(out, Format::Json)))
}

fn pf_kernel_in<S: Scalar>(v: &Value, sink: Sink) -> Result<(), Failure> {
    let k = PfLEnsemble::<S>::from_json(v)?.kernel()?;
    match sink.format {
        Format::Csv => sink.write(&correlation_csv(&k.all_correlations()?)),
        _ => sink.write_json(&json!({"ground": k.ground.labels(), "K": matrix_to_json(k.k.as_matrix())})),
    }
}

pub fn em_kernel(spec: &Path, mode: ScalarMode, out: Option<&str>) -> Result<(), Failure> {
    let v = load(spec)?;
    by_mode!(mode, em_kernel_in(&v, Sink::new(out, Format::Json)))
}

/// `(level, label)` of every flat index.
fn level_labels(levels: &Levels) -> Vec<(usize, String)> {
    (0..levels.total())
        .map(|f| {
            let p = levels.level_point(f);
            (p.level, levels.level(p.level).labels()[p.point].clone())
        })
        .collect()
}

fn em_kernel_in<S: Scalar>(v: &Value, sink: Sink) -> Result<(), Failure> {
    let (levels, k, pf) = if v.get("epsilon").is_some() {
        let spec = PfEMSpec::<S>::from_json(v)?;
        (spec.levels.clone(), spec.kernel()?.k.into_matrix(), true)
    } else {
        let spec = EMSpec::<S>::from_json(v)?;
        (spec.levels.clone(), spec.kernel()?.k, false)
    };
    let labels = level_labels(&levels);
    match sink.format {
        Format::Csv => {
            let width = if pf { 2 } else { 1 };
            let mut rows = Vec::new();
            for (a, (i, u)) in labels.iter().enumerate() {
                for (b, (j, w)) in labels.iter().enumerate() {
                    for r in 0..width {
                        for c in 0..width {
                            let (re, im) = parts(&k[(width * a + r, width * b + c)]);
                            let mut row = vec![i.to_string(), u.clone(), j.to_string(), w.clone()];
                            if pf {
                                row.push(format!("{}{}", r + 1, c + 1));
                            }
                            row.extend([re, im]);
                            rows.push(row);
                        }
                    }
                }
            }
            let header: &[&str] = if pf {
                &["i", "u", "j", "v", "block", "re", "im"]
            } else {
                &["i", "u", "j", "v", "re", "im"]
            };
            sink.write(&csv(header, rows))
        }
        _ => {
            let ground: Vec<String> = labels.iter().map(|(i, u)| format!("{i}:{u}")).collect();
            sink.write_json(&json!({"ground": ground, "pfaffian": pf, "K": matrix_to_json(&k)}))
        }
    }
}

fn check_change(q: &Quadrature, tol: Option<f64>, what: impl FnOnce() -> String) -> Option<String> {
    let tol = tol?;
    (q.change > tol * q.value.norm().max(1.0))
        .then(|| format!("{}: last doubling changed the value by {:.3e}", what(), q.change))
}

pub fn schur_kernel(spec: &Path, points: &str, tol: Option<f64>, out: Option<&str>) -> Result<(), Failure> {
    if let Some(t) = tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::Input(format!("--tol must be positive, got {t}")));
        }
    }
    let spec = SchurSpec::<C>::from_json(&load(spec)?)?;
    let pts = parse_points(points)?;
    let sink = Sink::new(out, Format::Csv);
    let mut rows = Vec::new();
    let mut problems = Vec::new();
    for p in &pts {
        for q in &pts {
            let (i, u, j, v) = (p.level, p.u, q.level, q.u);
            let mut emit = |block: Option<&str>, quad: Quadrature| {
                if let Some(msg) = check_change(&quad, tol, || format!("({i},{u};{j},{v})")) {
                    problems.push(msg);
                }
                let mut row = vec![i.to_string(), u.to_string(), j.to_string(), v.to_string()];
                row.extend(block.map(str::to_string));
                row.extend([float(quad.value.re), float(quad.value.im)]);
                rows.push(row);
            };
            if spec.is_pfaffian() {
                let k21 = pf_k12(&spec, j, v, i, u, K12Case::prescribed(j, i))?;
                let k21 = Quadrature { value: -k21.value, ..k21 };
                emit(Some("11"), pf_k11(&spec, i, u, j, v)?);
                emit(Some("12"), pf_k12(&spec, i, u, j, v, K12Case::prescribed(i, j))?);
                emit(Some("21"), k21);
                emit(Some("22"), pf_k22(&spec, i, u, j, v)?);
            } else {
                emit(None, schur_kernel_with(&spec, i, u, j, v, RadiusCase::prescribed(i, j))?);
            }
        }
    }
    let header: &[&str] = if spec.is_pfaffian() {
        &["i", "u", "j", "v", "block", "re", "im"]
    } else {
        &["i", "u", "j", "v", "re", "im"]
    };
    match sink.format {
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            sink.write_json(&Value::Array(entries))?;
        }
        _ => sink.write(&csv(header, rows))?,
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(problems.join("; ")))
    }
}

fn default_grid(t: usize) -> Vec<SpacePoint> {
    (1..=t.min(2))
        .flat_map(|i| (-4..=4).map(move |u| SpacePoint::new(i, u)))
        .collect()
}

pub fn schur_verify(
    spec: &Path,
    points: Option<&str>,
    cutoff: usize,
    tol: Option<f64>,
    out: Option<&str>,
) -> Result<(), Failure> {
    let spec = SchurSpec::<C>::from_json(&load(spec)?)?;
    let pts = match points {
        Some(p) => parse_points(p)?,
        None => default_grid(spec.t()),
    };
    let tol = tol.unwrap_or(if spec.is_pfaffian() { 1e-5 } else { 1e-6 });
    let e = Enumeration::new(&spec, cutoff)?;
    let k = if spec.is_pfaffian() {
        pf_block_matrix(&spec, &pts)?
    } else {
        schur_kernel_matrix(&spec, &pts)?
    };
    let mut sets: Vec<Vec<usize>> = (0..pts.len()).map(|a| vec![a]).collect();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            sets.push(vec![a, b]);
        }
    }
    let mut rows = Vec::new();
    let mut failed = 0;
    for set in sets {
        let got = if spec.is_pfaffian() {
            let idx: Vec<usize> = set.iter().flat_map(|&a| [2 * a, 2 * a + 1]).collect();
            let sub = k.principal(&idx)?;
            pfaffian(&SkewMatrix::from_upper(idx.len(), |a, b| sub[(a, b)]))
        } else {
            det(&k.principal(&set)?)?
        };
        let points: Vec<SpacePoint> = set.iter().map(|&a| pts[a]).collect();
        let want = e.correlation(&points)?;
        let dev = (got - want.value).norm();
        let pass = dev <= tol + want.tail_bound;
        if !pass {
            failed += 1;
        }
        let label: Vec<String> = points.iter().map(ToString::to_string).collect();
        rows.push(vec![
            label.join(" "),
            float(got.re),
            float(got.im),
            float(want.value.re),
            float(want.value.im),
            float(want.tail_bound),
            float(dev),
            if pass { "pass" } else { "fail" }.to_string(),
        ]);
    }
    let header = ["points", "kernel_re", "kernel_im", "oracle_re", "oracle_im", "tail_bound", "deviation", "result"];
    let sink = Sink::new(out, Format::Csv);
    match sink.format {
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            sink.write_json(&json!({"cutoff": cutoff, "tolerance": tol, "rows": entries}))?;
        }
        _ => sink.write(&csv(&header, rows))?,
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} point sets outside tolerance")))
    }
}

pub fn verify(suite: Option<&str>, tol: Option<&str>, seed: u64, out: Option<&str>) -> Result<(), Failure> {
    let tol = match tol {
        None | Some("exact") => None,
        Some(t) => match t.parse::<f64>() {
            Ok(x) if x > 0.0 => Some(x),
            _ => return Err(Failure::Input(format!("--tol must be `exact` or a positive number, got {t:?}"))),
        },
    };
    let opts = SuiteOptions { seed, tol };
    let reports = match suite {
        Some(name) => vec![run_suite(name, opts)?],
        None => run_all(opts),
    };
    let sink = Sink::new(out, Format::Text);
    match sink.format {
        Format::Json => sink.write_json(&Value::Array(reports.iter().map(|r| r.to_json()).collect()))?,
        Format::Csv => sink.write(&csv(
            &["suite", "cases", "max_deviation", "max_tail", "tolerance", "pass"],
            reports.iter().map(|r| {
                vec![
                    r.suite.clone(),
                    r.cases.to_string(),
                    float(r.max_deviation),
                    r.max_tail.map(float).unwrap_or_default(),
                    float(r.tolerance),
                    r.pass.to_string(),
                ]
            }),
        ))?,
        Format::Text => {
            let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            sink.write(&text)?;
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}

pub fn sample(spec: &Path, seed: u64, count: usize, mode: ScalarMode, out: Option<&str>) -> Result<(), Failure> {
    let v = load(spec)?;
    by_mode!(mode, sample_in(&v, seed, count, Sink::new(out, Format::Text)))
}

fn sample_in<S: Scalar>(v: &Value, seed: u64, count: usize, sink: Sink) -> Result<(), Failure> {
    let (ground, l, window) = dpp_core::point_process::parse_ensemble_parts::<S>(v)?;
    let (table, complement): (ProbTable<S>, Config) = if l.rows() == 2 * ground.len() && l.rows() > 0 {
        let ens = PfLEnsemble::with_window(ground.clone(), SkewMatrix::new(l)?, window)?;
        (ens.prob_table()?, ens.complement())
    } else {
        let ens = LEnsemble::with_window(ground.clone(), l, window)?;
        (ens.prob_table()?, ens.complement())
    };
    let draws = enumerate_samples(&table, seed, count)?;
    let labels = |c: Config| -> Vec<String> {
        c.expand(window)
            .union(complement)
            .points()
            .map(|i| ground.labels()[i].clone())
            .collect()
    };
    let all: Vec<Vec<String>> = draws.into_iter().map(labels).collect();
    match sink.format {
        Format::Json => sink.write_json(&json!({"seed": seed, "samples": all})),
        Format::Csv => sink.write(&csv(
            &["sample", "points"],
            all.iter().enumerate().map(|(n, s)| vec![n.to_string(), s.join(" ")]),
        )),
        Format::Text => sink.write(&all.iter().map(|s| format!("{{{}}}\n", s.join(","))).collect::<String>()),
    }
}

pub fn point_action(spec: &Path, mode: ScalarMode, out: Option<&str>) -> Result<(), Failure> {
    let v = load(spec)?;
    by_mode!(mode, point_action_in(&v, Sink::new(out, Format::Json)))
}

fn witness_from_json<S: Scalar>(v: &Value) -> Result<KernelWitness<S>, Error> {
    let obj = dpp_core::json::as_object(v, "witness")?;
    let n = dpp_core::json::field_usize(obj, "n")?;
    let m = obj.get("m").and_then(Value::as_u64).unwrap_or(0) as usize;
    KernelWitness::new(n, m, matrix_from_json(dpp_core::json::field(obj, "K")?, "K")?)
}

fn witness_to_json<S: Scalar>(w: &KernelWitness<S>) -> Value {
    json!({"n": w.n, "m": w.m, "K": matrix_to_json(&w.k)})
}

fn gl2_from_json<S: Scalar>(v: &Value) -> Result<Gl2<S>, Error> {
    let m = matrix_from_json::<S>(&json!({"rows": 2, "cols": 2, "data": v}), "g")?;
    Ok([[m[(0, 0)].clone(), m[(0, 1)].clone()], [m[(1, 0)].clone(), m[(1, 1)].clone()]])
}

/// Input: `{"point": {...}}` or `{"witness": {"n","m","K"}}` plus `"actions"`, a
/// list of `{"factor": j, "g": [[a,b],[c,d]]}`, `{"permute": [σ(1),...]}`,
/// `{"correlations": true}` or `{"quadric_witness": true}`.
fn point_action_in<S: SquareRoot>(v: &Value, sink: Sink) -> Result<(), Failure> {
    let obj = dpp_core::json::as_object(v, "point-action spec")?;
    let mut witness = match obj.get("witness") {
        Some(w) => Some(witness_from_json::<S>(w)?),
        None => None,
    };
    let mut point = match (obj.get("point"), &witness) {
        (Some(p), _) => TensorPoint::<S>::from_json(p)?,
        (None, Some(w)) => point_from_kernel(w)?,
        (None, None) => return Err(Failure::Input("spec needs a \"point\" or a \"witness\"".into())),
    };
    let empty = Vec::new();
    let actions = match obj.get("actions") {
        Some(Value::Array(a)) => a,
        None => &empty,
        Some(_) => return Err(Failure::Input("actions: expected array".into())),
    };
    for (n, act) in actions.iter().enumerate() {
        let a = dpp_core::json::as_object(act, &format!("actions[{n}]"))?;
        if let Some(g) = a.get("g") {
            let j = dpp_core::json::field_usize(a, "factor")?;
            let g = gl2_from_json::<S>(g)?;
            point = gl2_act(j, &g, &point)?;
            witness = witness.map(|w| act_witness(j, &g, &w)).transpose()?;
        } else if let Some(p) = a.get("permute") {
            let sigma: Vec<usize> = serde_json::from_value(p.clone())
                .map_err(|e| Failure::Input(format!("actions[{n}].permute: {e}")))?;
            point = permute(&sigma, &point)?;
            witness = witness.map(|w| permute_witness(&sigma, &w)).transpose()?;
        } else if a.get("correlations").is_some() {
            point = correlation_transform(&point)?;
            let g = [[S::one(), S::one()], [S::zero(), S::one()]];
            witness = witness
                .map(|w| (1..=w.n).try_fold(w, |acc, j| act_witness(j, &g, &acc)))
                .transpose()?;
        } else if a.get("quadric_witness").is_some() {
            witness = Some(quadric_kernel(&point)?);
        } else {
            return Err(Failure::Input(format!("actions[{n}]: unknown action {act}")));
        }
    }
    let matches = match &witness {
        Some(w) => Some(point_from_kernel(w)?.projective_eq(&point, 1e-10)),
        None => None,
    };
    sink.write_json(&json!({
        "point": point.to_json(),
        "witness": witness.as_ref().map(witness_to_json),
        "witness_matches": matches,
    }))?;
    match matches {
        Some(false) => Err(Failure::Verification("witness does not reproduce the point".into())),
        _ => Ok(()),
    }
}
