use dpp_core::linalg::{det, pfaffian, Matrix, SkewMatrix};
use dpp_core::random::rng;
use dpp_core::schur_process::{
    contour_integrate, em_bridge, epsilon_toeplitz, pf_block_matrix, pf_k12, schur_kernel,
    schur_kernel_matrix, schur_kernel_with, toeplitz_w_symbol, weight_tail_bound, ContourConfig,
    Enumeration, K12Case, PartitionSequence, RadiusCase, SchurSpec, SpacePoint, Window,
};
use dpp_core::symfunc::{pf_z, schur_z, skew_schur_tableaux, tau_direct, Partition, Specialization};
use dpp_core::{Scalar, C, Q};
use rand::Rng;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn random_single(seed: u64, t: usize, lo: f64, hi: f64, pf: bool) -> SchurSpec<C> {
    let mut r = rng(seed);
    let mut draw = || c(r.gen_range(lo..hi));
    let plus: Vec<C> = (0..t).map(|_| draw()).collect();
    let minus: Vec<C> = (0..t).map(|_| draw()).collect();
    SchurSpec::single_variable(&plus, &minus, pf).unwrap()
}

fn grid(t: usize) -> Vec<SpacePoint> {
    (1..=t)
        .flat_map(|i| (-4..=4).map(move |u| SpacePoint::new(i, u)))
        .collect()
}

fn pairs(pts: &[SpacePoint]) -> Vec<Vec<SpacePoint>> {
    let mut out: Vec<Vec<SpacePoint>> = pts.iter().map(|&p| vec![p]).collect();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            out.push(vec![pts[a], pts[b]]);
        }
    }
    out
}

#[test]
fn determinantal_kernel_matches_enumeration() {
    for seed in 0..2 {
        let spec = random_single(seed, 2, 0.1, 0.5, false);
        let e = Enumeration::new(&spec, 14).unwrap();
        let pts = grid(2);
        let k = schur_kernel_matrix(&spec, &pts).unwrap();
        for set in pairs(&pts) {
            let idx: Vec<usize> = set.iter().map(|p| pts.iter().position(|q| q == p).unwrap()).collect();
            let got = det(&k.principal(&idx).unwrap()).unwrap();
            let want = e.correlation(&set).unwrap();
            let dev = (got - want.value).norm();
            assert!(dev <= 1e-6 + want.tail_bound, "{set:?}: {got} vs {}", want.value);
        }
    }
}

#[test]
fn pfaffian_kernel_matches_enumeration() {
    for seed in 10..12 {
        let spec = random_single(seed, 2, 0.1, 0.5, true);
        let e = Enumeration::new(&spec, 14).unwrap();
        let pts = grid(2);
        let k = pf_block_matrix(&spec, &pts).unwrap();
        let skew = k.max_abs_diff(&k.transpose().neg());
        assert!(skew <= 1e-9, "skew deviation {skew}");
        for set in pairs(&pts) {
            let mut rows = Vec::new();
            for p in &set {
                let a = pts.iter().position(|q| q == p).unwrap();
                rows.extend([2 * a, 2 * a + 1]);
            }
            let sub = k.principal(&rows).unwrap();
            let sk = SkewMatrix::from_upper(rows.len(), |a, b| sub[(a, b)]);
            let got = pfaffian(&sk);
            let want = e.correlation(&set).unwrap();
            let dev = (got - want.value).norm();
            assert!(dev <= 1e-5 + want.tail_bound, "{set:?}: {got} vs {}", want.value);
        }
    }
}

#[test]
fn single_level_pfaffian_one_point() {
    let spec = SchurSpec::single_variable(&[c(0.05)], &[c(0.4)], true).unwrap();
    let e = Enumeration::new(&spec, 30).unwrap();
    for u in -3..4 {
        let k = pf_k12(&spec, 1, u, 1, u, K12Case::Wide).unwrap().value;
        let want = e.correlation(&[SpacePoint::new(1, u)]).unwrap();
        assert!((k - want.value).norm() <= 1e-6 + want.tail_bound, "u = {u}: {k} vs {}", want.value);
    }
}

/// `W_[i,j)` from the union of the specializations between the levels.
fn w_interval(spec: &SchurSpec<C>, i: usize, j: usize, window: Window) -> Matrix<C> {
    toeplitz_w_symbol(&spec.minus_range(i, j), &spec.plus_range(i, j), window)
}

#[test]
fn determinantal_residue_identity() {
    let window = Window::new(-3, 3).unwrap();
    for seed in 20..23 {
        let spec = random_single(seed, 3, 0.05, 0.5, false);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let w = w_interval(&spec, i, j, window);
            for u in window.positions() {
                for v in window.positions() {
                    let inner = schur_kernel_with(&spec, i, u, j, v, RadiusCase::Inner).unwrap();
                    let outer = schur_kernel_with(&spec, i, u, j, v, RadiusCase::Outer).unwrap();
                    assert!(inner.doublings <= 16 && outer.doublings <= 16);
                    let diff = inner.value - outer.value + w[(window.index(u), window.index(v))];
                    assert!(diff.norm() <= 1e-8, "({i},{u};{j},{v}): {diff}");
                }
            }
        }
    }
}

#[test]
fn pfaffian_residue_identity() {
    let window = Window::new(-3, 3).unwrap();
    for seed in 30..32 {
        let spec = random_single(seed, 3, 0.05, 0.5, true);
        for (i, j) in [(1, 2), (2, 3), (1, 3), (2, 2)] {
            // Empty interval: the residue symbol is 1.
            let w = if i < j {
                w_interval(&spec, i, j, window)
            } else {
                Matrix::identity(window.len())
            };
            for u in window.positions() {
                for v in window.positions() {
                    let narrow = pf_k12(&spec, i, u, j, v, K12Case::Narrow).unwrap().value;
                    let wide = pf_k12(&spec, i, u, j, v, K12Case::Wide).unwrap().value;
                    let diff = narrow - wide + w[(window.index(u), window.index(v))];
                    assert!(diff.norm() <= 1e-8, "({i},{u};{j},{v}): {diff}");
                }
            }
        }
    }
}

#[test]
fn partition_sums_approach_z() {
    for (seed, pf) in [(40, false), (41, true), (42, false), (43, true)] {
        let spec = random_single(seed, 2, 0.05, 0.5, pf);
        let z = if pf {
            pf_z(spec.rho_plus(), spec.rho_minus()).unwrap()
        } else {
            schur_z(spec.rho_plus(), spec.rho_minus()).unwrap()
        };
        let mut last = 0.0;
        for cutoff in [8, 10, 12] {
            let e = Enumeration::new(&spec, cutoff).unwrap();
            let s = e.weight_sum().re;
            let gap = z.re - s;
            assert!(s >= last, "not monotone at {cutoff}");
            assert!(gap >= -1e-12 && gap <= weight_tail_bound(&spec, cutoff).unwrap());
            last = s;
        }
    }
}

#[test]
fn weights_factor_through_tableaux() {
    let q = |n: i64, d: i64| Q::from_ratio(n, d);
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    let plus = vec![
        Specialization::new(vec![q(1, 2), q(1, 3)]),
        Specialization::new(vec![q(-1, 4)]),
    ];
    let minus = vec![
        Specialization::new(vec![q(2, 5)]),
        Specialization::new(vec![q(1, 7), q(1, 2)]),
    ];
    let seq = PartitionSequence::new(vec![p(&[2, 1]), p(&[2, 2])], vec![p(&[2])]).unwrap();
    for pf in [false, true] {
        let spec = SchurSpec::new(plus.clone(), minus.clone(), pf).unwrap();
        let left = if pf {
            tau_direct(&seq.lambdas[0], &plus[0])
        } else {
            skew_schur_tableaux(&seq.lambdas[0], &Partition::empty(), &plus[0])
        };
        let expect = left
            * skew_schur_tableaux(&seq.lambdas[0], &seq.mus[0], &minus[0])
            * skew_schur_tableaux(&seq.lambdas[1], &seq.mus[0], &plus[1])
            * skew_schur_tableaux(&seq.lambdas[1], &Partition::empty(), &minus[1]);
        assert_eq!(spec.weight(&seq).unwrap(), expect);
    }
}

#[test]
fn symbol_coefficients_match_quadrature() {
    let window = Window::new(-3, 3).unwrap();
    let mut r = rng(50);
    for _ in 0..3 {
        let mut draw = |n: usize| {
            Specialization::new((0..n).map(|_| C::new(r.gen_range(-0.5..0.5), r.gen_range(-0.3..0.3))).collect())
        };
        let (m, p) = (draw(2), draw(3));
        let w = toeplitz_w_symbol(&m, &p, window);
        for u in window.positions() {
            for v in window.positions() {
                let d = (u - v) as i32;
                let f = |z: C, w: C| {
                    m.h_at(z) * p.h_at(C::new(1.0, 0.0) / z) * z.powi(-d - 1) / w
                };
                let q = contour_integrate(f, &ContourConfig::new(1.0, 1.0)).unwrap();
                let err = (q.value - w[(window.index(u), window.index(v))]).norm();
                assert!(err <= 1e-10, "({u},{v}): {err}");
            }
        }
    }
}

#[test]
fn epsilon_toeplitz_reproduces_tau() {
    let q = |n: i64, d: i64| Q::from_ratio(n, d);
    let rho = Specialization::new(vec![q(1, 2), q(-2, 3), q(1, 5)]);
    for m in 0..=6 {
        for la in Partition::all_of_size(m) {
            let size = (la.len() + la.len() % 2).max(2);
            let l = la.shifted(size);
            let floor = -(size as i64);
            let window = Window::new(floor, l[0]).unwrap();
            let eps = epsilon_toeplitz(&rho, window, floor);
            let idx: Vec<usize> = l.iter().map(|&x| window.index(x)).collect();
            let got = pfaffian(&eps.principal(&idx).unwrap());
            assert_eq!(got, tau_direct(&la, &rho), "{la}");
        }
    }
}

#[test]
fn em_bridge_matches_contour_kernel() {
    let window = Window::new(-8, 4).unwrap();
    for seed in 60..62 {
        let mut r = rng(seed);
        let vals: Vec<Q> = (0..4).map(|_| Q::from_ratio(r.gen_range(1..=15), 100)).collect();
        let spec = SchurSpec::single_variable(&vals[..2], &vals[2..], false).unwrap();
        let em = em_bridge(&spec, window).unwrap();
        let k = em.kernel().unwrap();
        let cs = spec.to_complex();
        for i in 1..=2 {
            for j in 1..=2 {
                for u in -8..=1 {
                    for v in -8..=1 {
                        let a = (i - 1) * window.len() + window.index(u);
                        let b = (j - 1) * window.len() + window.index(v);
                        let got = k.k[(a, b)].to_complex();
                        let want = schur_kernel(&cs, i, u, j, v).unwrap();
                        assert!((got - want).norm() <= 1e-6, "({i},{u};{j},{v}): {got} vs {want}");
                    }
                }
            }
        }
    }
}
