//! Random-restart Levenberg–Marquardt search for constant solutions of the
//! structure equations.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::structure::{equation_count, known_constants, residual_unchecked, Case, ConstantInvariantVector};
use crate::error::{Error, Result};

/// Which cases a search covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Both signs of ε, each with the full restart count.
    SpaceLike,
    SpaceLikePlus,
    SpaceLikeMinus,
    TimeLike,
}

impl Family {
    pub fn cases(self) -> Vec<Case> {
        match self {
            Family::SpaceLike => vec![Case::SpaceLike { epsilon: 1 }, Case::SpaceLike { epsilon: -1 }],
            Family::SpaceLikePlus => vec![Case::SpaceLike { epsilon: 1 }],
            Family::SpaceLikeMinus => vec![Case::SpaceLike { epsilon: -1 }],
            Family::TimeLike => vec![Case::TimeLike],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "spacelike" => Ok(Family::SpaceLike),
            "spacelike+" => Ok(Family::SpaceLikePlus),
            "spacelike-" => Ok(Family::SpaceLikeMinus),
            "timelike" => Ok(Family::TimeLike),
            _ => Err(Error::Config(format!(
                "unknown case `{s}` (expected spacelike, spacelike+, spacelike-, timelike)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Starts are uniform in [−box, box]¹⁴.
    pub start_box: f64,
    pub max_iterations: usize,
    pub converge_tol: f64,
    pub cluster_tol: f64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 1000,
            seed: 7,
            start_box: 3.0,
            max_iterations: 400,
            converge_tol: 1e-10,
            cluster_tol: 1e-6,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub constants: ConstantInvariantVector,
    /// Largest |residual| at the representative.
    pub residual: f64,
    pub members: usize,
    /// Largest deviation from the known homogeneous-example constants of the case.
    pub distance_to_known: f64,
    pub matches_known: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseStats {
    pub case: Case,
    pub equations: usize,
    pub restarts: usize,
    pub converged: usize,
    pub mean_iterations: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub family: Family,
    pub config: SearchConfig,
    pub stats: Vec<CaseStats>,
    pub clusters: Vec<Cluster>,
}

struct Outcome {
    x: [f64; 14],
    residual: f64,
    iterations: usize,
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Central differences; exact up to rounding because every residual is quadratic.
fn jacobian(case: Case, x: &[f64; 14], m: usize) -> DMatrix<f64> {
    const H: f64 = 1e-2;
    let mut j = DMatrix::zeros(m, 14);
    for k in 0..14 {
        let (mut xp, mut xm) = (*x, *x);
        xp[k] += H;
        xm[k] -= H;
        let rp = residual_unchecked(case, &xp);
        let rm = residual_unchecked(case, &xm);
        for i in 0..m {
            j[(i, k)] = (rp[i] - rm[i]) / (2.0 * H);
        }
    }
    j
}

fn levenberg_marquardt(case: Case, start: [f64; 14], cfg: &SearchConfig) -> Outcome {
    let mut x = start;
    let mut r = residual_unchecked(case, &x);
    let m = r.len();
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-3;
    let mut it = 0;
    while it < cfg.max_iterations {
        if max_abs(&r) < 1e-14 {
            break;
        }
        it += 1;
        let j = jacobian(case, &x, m);
        let rv = DVector::from_column_slice(&r);
        let jtj = j.transpose() * &j;
        let g = j.transpose() * rv;
        let mut improved = false;
        while lambda < 1e12 {
            let mut a = jtj.clone();
            for k in 0..14 {
                a[(k, k)] += lambda * (1.0 + jtj[(k, k)]);
            }
            let Some(ch) = a.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = ch.solve(&(-&g));
            let mut xn = x;
            xn.iter_mut().zip(step.iter()).for_each(|(a, d)| *a += d);
            let rn = residual_unchecked(case, &xn);
            let cn: f64 = rn.iter().map(|v| v * v).sum();
            if cn < cost {
                let tiny = step.amax() < 1e-16 * (1.0 + x.iter().fold(0.0f64, |a, b| a.max(b.abs())));
                x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda / 3.0).max(1e-12);
                improved = !tiny;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Outcome {
        x,
        residual: max_abs(&r),
        iterations: it,
    }
}

fn start_point(case_index: usize, restart: usize, cfg: &SearchConfig) -> [f64; 14] {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(((case_index as u64) << 32) | restart as u64);
    std::array::from_fn(|_| rng.gen_range(-cfg.start_box..=cfg.start_box))
}

fn run_case(case: Case, case_index: usize, cfg: &SearchConfig) -> Vec<Outcome> {
    (0..cfg.restarts)
        .into_par_iter()
        .map(|i| levenberg_marquardt(case, start_point(case_index, i, cfg), cfg))
        .collect()
}

/// Search with the default settings apart from restarts and seed.
pub fn search_constant_solutions(family: Family, restarts: usize, seed: u64) -> Result<SearchReport> {
    search_with(
        family,
        &SearchConfig {
            restarts,
            seed,
            ..SearchConfig::default()
        },
    )
}

pub fn search_with(family: Family, cfg: &SearchConfig) -> Result<SearchReport> {
    if cfg.restarts == 0 {
        return Err(Error::Config("at least one restart is required".into()));
    }
    let work = || {
        family
            .cases()
            .into_iter()
            .enumerate()
            .map(|(ci, case)| (case, run_case(case, ci, cfg)))
            .collect::<Vec<_>>()
    };
    let runs = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut stats = Vec::new();
    let mut clusters: Vec<Cluster> = Vec::new();
    for (case, outcomes) in runs {
        let known = known_constants(case);
        let mut converged = 0;
        let mut case_clusters: Vec<Cluster> = Vec::new();
        for o in outcomes.iter().filter(|o| o.residual < cfg.converge_tol) {
            converged += 1;
            let near = case_clusters.iter_mut().find(|c| {
                c.constants
                    .values
                    .iter()
                    .zip(o.x)
                    .all(|(a, b)| (a - b).abs() < cfg.cluster_tol)
            });
            match near {
                Some(c) => {
                    c.members += 1;
                    if o.residual < c.residual {
                        c.residual = o.residual;
                        c.constants.values = o.x;
                    }
                }
                None => case_clusters.push(Cluster {
                    constants: ConstantInvariantVector::new(case, o.x),
                    residual: o.residual,
                    members: 1,
                    distance_to_known: 0.0,
                    matches_known: false,
                }),
            }
        }
        for c in &mut case_clusters {
            c.distance_to_known = c
                .constants
                .values
                .iter()
                .zip(known.values)
                .fold(0.0, |m, (a, b)| m.max((a - b).abs()));
            c.matches_known = c.distance_to_known < cfg.cluster_tol;
        }
        let total_it: usize = outcomes.iter().map(|o| o.iterations).sum();
        stats.push(CaseStats {
            case,
            equations: equation_count(case),
            restarts: cfg.restarts,
            converged,
            mean_iterations: total_it as f64 / cfg.restarts as f64,
        });
        clusters.extend(case_clusters);
    }
    Ok(SearchReport {
        family,
        config: *cfg,
        stats,
        clusters,
    })
}
