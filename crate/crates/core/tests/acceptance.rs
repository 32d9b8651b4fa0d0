//! One line per acceptance criterion. Exits nonzero if any criterion fails.
//!
//! `cargo test --release --test acceptance`

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use centroframe::adaptation::{adapt2_spacelike, classify_plane, frame1, fundamental_of, SurfaceKind, Tolerances};
use centroframe::commands::{run_verify, VerifyConfig};
use centroframe::dsl::{eval_point, eval_surface};
use centroframe::homogeneous::{
    exp_product_point, model_metric, model_omega, printed_subgroups, search_constant_solutions, structure_residual,
    subgroup_generators, Case, Family, Model, MODELS,
};
use centroframe::invariants::relation_residuals;
use centroframe::linalg::{expm5, solve, spd2_sqrt, Mat5, Matrix, Sym2, PIVOT_TOL};
use centroframe::pipeline::{analyze_point, PipelineConfig};
use centroframe::taylor::Taylor;
use centroframe::Error;
use common::{fd, law, random_g1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = [[f64; 5]; 5];

fn mm(a: &M, b: &M) -> M {
    let mut o = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                o[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    o
}

fn comm(a: &M, b: &M) -> M {
    let (p, q) = (mm(a, b), mm(b, a));
    std::array::from_fn(|i| std::array::from_fn(|j| p[i][j] - q[i][j]))
}

fn combo(terms: &[(f64, &M)]) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| terms.iter().map(|(c, m)| c * m[i][j]).sum()))
}

fn dist(a: &M, b: &M) -> f64 {
    (0..25).map(|k| (a[k / 5][k % 5] - b[k / 5][k % 5]).abs()).fold(0.0, f64::max)
}

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome { passed, summary }
}

/// 1. [M₀,M₁], [M₁,M₂], [M₂,M₀] as printed.
fn brackets() -> Outcome {
    let t = Instant::now();
    let mut worst = 0f64;
    for m in MODELS {
        let [a, b, c] = model_omega(m).map(|x| x.0);
        let want: [M; 3] = match m {
            Model::H2 => [combo(&[(-1.0, &c)]), combo(&[(1.0 / 3.0, &a)]), combo(&[(-1.0, &b)])],
            Model::Sphere => [combo(&[(-1.0, &c)]), combo(&[(-1.0 / 3.0, &a)]), combo(&[(-1.0, &b)])],
            Model::S21 => [combo(&[(1.0, &b)]), combo(&[(1.0 / 3.0, &a)]), combo(&[(1.0, &c)])],
        };
        let got = [comm(&a, &b), comm(&b, &c), comm(&c, &a)];
        for k in 0..3 {
            worst = worst.max(dist(&got[k], &want[k]));
        }
    }
    let el = t.elapsed();
    outcome(worst < 1e-13 && el < Duration::from_secs(1), format!("max bracket residual {worst:.2e} in {el:.2?}"))
}

/// 2. Constant solutions: residual at the known constants and the restart search.
fn constant_solutions() -> Outcome {
    let mut res = 0f64;
    for m in MODELS {
        let r = structure_residual(&m.constants(), m.case()).unwrap();
        res = r.iter().fold(res, |a, x| a.max(x.abs()));
    }
    let t = Instant::now();
    let space = search_constant_solutions(Family::SpaceLike, 1000, 7).unwrap();
    let time = search_constant_solutions(Family::TimeLike, 1000, 7).unwrap();
    let el = t.elapsed();
    let eps: Vec<i8> = space.clusters.iter().filter_map(|c| c.constants.case.epsilon()).collect();
    let space_ok = space.clusters.len() == 2 && eps.contains(&1) && eps.contains(&-1) && space.clusters.iter().all(|c| c.matches_known);
    let time_ok = time.clusters.len() == 1 && time.clusters[0].matches_known && time.clusters[0].constants.case == Case::TimeLike;
    outcome(
        res < 1e-12 && space_ok && time_ok && el < Duration::from_secs(120),
        format!(
            "residual at constants {res:.2e}; space-like {} clusters (ε {:?}), time-like {} cluster(s); search {el:.2?}",
            space.clusters.len(),
            eps,
            time.clusters.len()
        ),
    )
}

fn grid7() -> Vec<(f64, f64)> {
    let s: Vec<f64> = (0..7).map(|k| -1.0 + k as f64 / 3.0).collect();
    s.iter().flat_map(|&u| s.iter().map(move |&v| (u, v))).collect()
}

struct GridStats {
    kinds_ok: bool,
    k_gauss: f64,
    k_conn: f64,
    metric: f64,
    spread: f64,
    k_signs: (f64, f64),
}

fn grid_stats(m: Model, kind: SurfaceKind, eps: Option<i8>, metric: impl Fn(f64) -> [f64; 3], k: f64, abs_k: bool) -> GridStats {
    let cfg = PipelineConfig::default();
    let mut s = GridStats { kinds_ok: true, k_gauss: 0.0, k_conn: 0.0, metric: 0.0, spread: 0.0, k_signs: (0.0, 0.0) };
    let mut lo: Vec<f64> = Vec::new();
    let mut hi: Vec<f64> = Vec::new();
    let kf = |x: f64| if abs_k { x.abs() } else { x };
    for (u, v) in grid7() {
        let Ok(p) = analyze_point(&m.spec(), u, v, &cfg) else {
            s.kinds_ok = false;
            continue;
        };
        s.kinds_ok &= p.invariants.kind == kind && p.invariants.epsilon == eps;
        let kc = p.k_connection.unwrap_or(f64::INFINITY);
        s.k_gauss = s.k_gauss.max((kf(p.invariants.k) - k).abs());
        s.k_conn = s.k_conn.max((kf(kc) - k).abs());
        s.k_signs = (p.invariants.k, kc);
        let want = metric(v);
        for i in 0..3 {
            s.metric = s.metric.max((p.metric.first[i] - want[i]).abs());
        }
        let h: Vec<f64> = p.invariants.h.0.iter().map(|(_, x)| *x).collect();
        if lo.is_empty() {
            lo = h.clone();
            hi = h;
        } else {
            for (i, x) in h.into_iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
    }
    s.spread = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
    s
}

/// 3. Hyperbolic model over the 7×7 grid.
fn h2_pipeline() -> Outcome {
    let t = Instant::now();
    let s = grid_stats(Model::H2, SurfaceKind::SpaceLike, Some(1), |v| [3.0 * v.cosh().powi(2), 0.0, 3.0], -1.0 / 3.0, false);
    let el = t.elapsed();
    outcome(
        s.kinds_ok && s.k_gauss < 1e-5 && s.k_conn < 1e-5 && s.metric < 1e-6 && s.spread < 1e-6 && el < Duration::from_secs(30),
        format!(
            "SpaceLike ε=+1: {}; |K+1/3| {:.1e} / {:.1e}; metric {:.1e}; h-spread {:.1e}; {el:.2?}",
            s.kinds_ok, s.k_gauss, s.k_conn, s.metric, s.spread
        ),
    )
}

/// 4. Sphere model, plus the degenerate coframe locus.
fn sphere_pipeline() -> Outcome {
    let s = grid_stats(Model::Sphere, SurfaceKind::SpaceLike, Some(-1), |v| [3.0 * v.cos().powi(2), 0.0, 3.0], 1.0 / 3.0, false);
    let mut wrong = 0;
    let mut raised = 0;
    for k in -8i32..=8 {
        let v = k as f64 * PI / 4.0;
        let on_locus = k.rem_euclid(4) == 2;
        for u in [-1.3, 0.0, 0.4] {
            let deg = matches!(model_metric(Model::Sphere, u, v), Err(Error::DegenerateCoframe));
            raised += deg as usize;
            wrong += (deg != on_locus) as usize;
        }
    }
    outcome(
        s.kinds_ok && s.k_gauss < 1e-5 && s.k_conn < 1e-5 && s.metric < 1e-6 && s.spread < 1e-6 && wrong == 0 && raised == 12,
        format!(
            "SpaceLike ε=−1: {}; |K−1/3| {:.1e} / {:.1e}; metric {:.1e}; h-spread {:.1e}; DegenerateCoframe at {raised} samples, {wrong} misplaced",
            s.kinds_ok, s.k_gauss, s.k_conn, s.metric, s.spread
        ),
    )
}

/// 5. Lorentzian model: type, metric and |K|.
fn s21_pipeline() -> Outcome {
    let s = grid_stats(Model::S21, SurfaceKind::TimeLike, None, |v| [-3.0 * v.cosh().powi(2), 0.0, 3.0], 1.0 / 3.0, true);
    let (kg, kc) = s.k_signs;
    let relation = if kg.signum() == kc.signum() { "same sign" } else { "opposite signs" };
    outcome(
        s.kinds_ok && s.k_gauss < 1e-5 && s.k_conn < 1e-5 && s.metric < 1e-6,
        format!(
            "TimeLike: {}; ||K|−1/3| {:.1e} / {:.1e}; metric {:.1e}; K_gauss {kg:+.6}, K_connection {kc:+.6} ({relation})",
            s.kinds_ok, s.k_gauss, s.k_conn, s.metric
        ),
    )
}

/// The implicit equations, written out independently of the library.
fn quadrics(m: Model, x: &[f64; 5]) -> [f64; 3] {
    let [a, b, c, d, e] = *x;
    match m {
        Model::H2 => [b * (a - d - 1.0) - c * e, c * (a + d - 1.0) - b * e, (4.0 * a - 1.0).powi(2) - 12.0 * (b * b + c * c) - 9.0],
        Model::Sphere => [b * (a + d - 1.0) + c * e, c * (a - d - 1.0) + b * e, (4.0 * a - 1.0).powi(2) + 12.0 * (b * b + c * c) - 9.0],
        Model::S21 => [3.0 * c * c - e * (4.0 * a + 2.0), 3.0 * b * b - d * (4.0 * a + 2.0), 2.0 * a * a - a - 3.0 * b * c - 1.0],
    }
}

/// 6. Quadric membership and an off-surface probe.
fn quadric_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut on = 0f64;
    let mut probe = f64::INFINITY;
    for m in MODELS {
        let spec = m.spec();
        for _ in 0..200 {
            let (u, v, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-PI..PI));
            let (_, x) = exp_product_point(m, u, v, t);
            let y = eval_point(&spec, u, v).unwrap();
            for q in quadrics(m, &x).into_iter().chain(quadrics(m, &y)) {
                on = on.max(q.abs());
            }
            let off = quadrics(m, &x.map(|c| 2.0 * c)).iter().fold(0f64, |a, q| a.max(q.abs()));
            probe = probe.min(off);
        }
    }
    outcome(on < 1e-8 && probe > 1e-2, format!("on-surface {on:.2e}; weakest off-surface violation {probe:.2e}"))
}

/// 7. Subgroup closed forms and the Möbius involution.
fn exponentials() -> Outcome {
    let samples: Vec<f64> = (0..=40).map(|k| -2.0 + 0.1 * k as f64).collect();
    let mut d = 0f64;
    for m in [Model::H2, Model::Sphere] {
        let [a0, a1, a2] = subgroup_generators(m);
        for &s in &samples {
            let [g0, g1, g2] = printed_subgroups(m, s, s, s).unwrap();
            d = d.max(expm5(&a0, s).max_diff(&g0));
            d = d.max(expm5(&a1, s).max_diff(&g1));
            d = d.max(expm5(&a2, s).max_diff(&g2));
            // two entries recomputed here: the rotation block of g₀ and the corner of g₁
            let e0 = expm5(&a0, s);
            d = d.max((e0.0[3][3] - (2.0 * s).cos()).abs()).max((e0.0[1][2] - s.sin()).abs());
            let corner = match m {
                Model::H2 => 0.25 * (3.0 * (2.0 * s).cosh() + 1.0),
                _ => 0.25 * (3.0 * (2.0 * s).cos() + 1.0),
            };
            d = d.max((expm5(&a1, s).0[0][0] - corner).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let spec = Model::S21.spec();
    let mut inv = 0f64;
    for _ in 0..200 {
        let (u, v) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let a = eval_point(&spec, u, v).unwrap();
        let b = eval_point(&spec, u + PI, -v).unwrap();
        let (_, c) = exp_product_point(Model::S21, u, v, 0.0);
        let (_, e) = exp_product_point(Model::S21, u + PI, -v, 0.0);
        for i in 0..5 {
            inv = inv.max((a[i] - b[i]).abs()).max((c[i] - e[i]).abs());
        }
    }
    outcome(d < 1e-9 && inv < 1e-10, format!("closed forms {d:.2e}; S21 involution {inv:.2e}"))
}

/// 8. First-order transformation law and invariance of type and ε.
fn gauge_oracle() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut worst = 0f64;
    let mut changes = 0;
    for trial in 0..100 {
        let m = MODELS[trial % 3];
        let (u, v) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let f1 = frame1(&eval_surface(&m.spec(), u, v, 4).unwrap(), &tol).unwrap();
        let g = random_g1(&mut rng);
        let moved = f1.apply(&Matrix::constant(&g.matrix(), f1.degree()), 1);
        let (fa, fb) = (fundamental_of(&f1, &tol).unwrap(), fundamental_of(&moved, &tol).unwrap());
        let arr = |f: &centroframe::adaptation::FundamentalData| f.values().map(|s| [[s.a, s.b], [s.b, s.c]]);
        let pred = law(&arr(&fa), &g);
        let got = arr(&fb);
        for k in 0..3 {
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((pred[k][i][j] - got[k][i][j]).abs());
                }
            }
        }
        let (ta, tb) = (classify_plane(&fa, &tol).unwrap(), classify_plane(&fb, &tol).unwrap());
        if ta.kind != tb.kind {
            changes += 1;
        } else if ta.kind == SurfaceKind::SpaceLike
            && adapt2_spacelike(&f1, &fa, &tol).unwrap().1 != adapt2_spacelike(&moved, &fb, &tol).unwrap().1
        {
            changes += 1;
        }
    }
    outcome(worst < 1e-8 && changes == 0, format!("law residual {worst:.2e}; {changes} type/ε changes in 100 trials"))
}

/// 9. Level-2 and level-3 relations at random points.
fn relations() -> Outcome {
    let cfg = PipelineConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let mut worst = 0f64;
    let mut failed = 0;
    for m in MODELS {
        for _ in 0..50 {
            let (u, v) = (rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let Ok(p) = analyze_point(&m.spec(), u, v, &cfg) else {
                failed += 1;
                continue;
            };
            let k = p.invariants.kind;
            for (_, r) in relation_residuals(&p.level2, k, p.epsilon).into_iter().chain(relation_residuals(&p.invariants.h, k, p.epsilon)) {
                worst = worst.max(r.abs());
            }
        }
    }
    outcome(worst < 1e-7 && failed == 0, format!("max relation residual {worst:.2e}; {failed} failed points"))
}

/// 10. Jet coefficients, numerical kernels and the full verify suite.
fn foundations() -> Outcome {
    let mut fd_err = 0f64;
    for m in MODELS {
        let spec = m.spec();
        for &(u, v) in &[(0.35, -0.45), (-0.8, 0.6)] {
            let jet = eval_surface(&spec, u, v, 3).unwrap();
            for comp in 0..5 {
                let f = |x: f64, y: f64| eval_point(&spec, x, y).unwrap()[comp];
                for a in 0..=3 {
                    for b in 0..=(3 - a) {
                        let got = jet[comp].derivative(a, b);
                        fd_err = fd_err.max((got - fd(&f, u, v, a, b)).abs() / got.abs().max(1.0));
                    }
                }
            }
        }
    }
    // sqrt of a jet, expm inverse, solve residual
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut kern = 0f64;
    for _ in 0..50 {
        let mut a = Taylor::from_coeffs(4, &(0..15).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
        a.set_coeff(0, 0, 2.0);
        let r = a.sqrt(1e-12).unwrap();
        kern = kern.max((r * r - a).max_abs());
        let m = Mat5::from_fn(|_, _| rng.gen_range(-0.6..0.6));
        kern = kern.max(expm5(&m, 1.0).matmul(&expm5(&m, -1.0)).max_diff(&Mat5::identity()));
        let s = m.add(&Mat5::identity().scale(3.0));
        let b: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let x = solve(&s, &b, PIVOT_TOL).unwrap();
        kern = kern.max(s.mul_vec(&x).iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max));
        let h = Sym2::new(rng.gen_range(1.0..3.0), rng.gen_range(-0.5..0.5), rng.gen_range(1.0..3.0));
        let q = spd2_sqrt(&h, 1e-12).unwrap().to_matrix();
        let sq = q.matmul(&q);
        kern = kern.max((sq.0[0][0] - h.a).abs()).max((sq.0[0][1] - h.b).abs()).max((sq.0[1][1] - h.c).abs());
    }
    let t = Instant::now();
    let report = run_verify(&VerifyConfig::default());
    let el = t.elapsed();
    let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    outcome(
        fd_err < 1e-6 && kern < 1e-11 && report.all_passed && el < Duration::from_secs(300),
        format!(
            "finite differences {fd_err:.2e}; kernels {kern:.2e}; verify {}/{} in {el:.2?}{}",
            report.passed,
            report.checks.len(),
            if failing.is_empty() { String::new() } else { format!(" failing {failing:?}") }
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("brackets", brackets),
        ("constant solutions", constant_solutions),
        ("h2 pipeline", h2_pipeline),
        ("sphere pipeline", sphere_pipeline),
        ("s21 pipeline", s21_pipeline),
        ("quadrics", quadric_membership),
        ("exponentials", exponentials),
        ("gauge oracle", gauge_oracle),
        ("relations", relations),
        ("foundations", foundations),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failures += !o.passed as usize;
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, k + 1, o.summary);
    }
    if failures > 0 {
        println!("{failures} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
