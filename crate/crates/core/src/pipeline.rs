//! Point analysis: jet → 1-adapted frame → classification → 2- and 3-adapted
//! frames → invariants.

use serde::Serialize;

use crate::adaptation::{
    adapt2_spacelike, adapt2_timelike, adapt3, classify_plane, frame1, fundamental_matrices, maurer_cartan,
    Frame, GaugeTransform, MCField, SurfaceKind, SurfaceType, Tolerances,
};
use crate::dsl::{eval_surface, Jet5, SurfaceSpec};
use crate::error::{Error, Result};
use crate::invariants::{
    connection_residuals, extract_from_mc, gauss_from_connection, level2_functions, metric_at,
    relation_residuals, HTable, InvariantSet, MetricData,
};
use crate::linalg::Sym2;

/// Smallest jet degree that yields the 3-adapted invariants.
pub const MIN_DEGREE: usize = 4;
/// Smallest jet degree at which dα is available at the 3-adapted level.
pub const CONNECTION_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct PipelineConfig {
    pub degree: usize,
    pub tol: Tolerances,
    /// Raise the jet degree to [`CONNECTION_DEGREE`] so that the connection
    /// route for K and the Levi-Civita residuals are available.
    pub connection_route: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            degree: MIN_DEGREE,
            tol: Tolerances::default(),
            connection_route: true,
        }
    }
}

impl PipelineConfig {
    pub fn effective_degree(&self) -> usize {
        if self.connection_route {
            self.degree.max(CONNECTION_DEGREE)
        } else {
            self.degree
        }
    }
}

/// Consistency measurements gathered along the way.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    /// Largest constant term of ω⁰₀, ω³₀, ω⁴₀ at the 1-adapted frame.
    pub first_vanishing: f64,
    /// Cartan-lemma symmetry of h⁰, h³, h⁴.
    pub cartan_symmetry: [f64; 3],
    /// dΩ + Ω∧Ω at the 1-adapted frame.
    pub structure_equation: Option<f64>,
    /// Largest |relation| among the 2-adapted structure functions.
    pub level2_relations: f64,
    /// Largest |relation| at the 3-adapted frame (including the simplified pair).
    pub level3_relations: f64,
    /// Largest |h⁰₃ₖ|, |h⁰₄ₖ| after the third reduction.
    pub normal_h0: f64,
    pub connection_identities: Option<[f64; 2]>,
}

#[derive(Clone, Debug)]
pub struct PointAnalysis {
    pub u: f64,
    pub v: f64,
    pub surface_type: SurfaceType,
    /// h⁰, h³, h⁴ at the 1-adapted frame.
    pub fundamental: [Sym2<f64>; 3],
    pub epsilon: Option<i8>,
    pub gauge2: GaugeTransform,
    pub gauge3: GaugeTransform,
    pub level2: HTable,
    pub invariants: InvariantSet,
    /// K from dα, when the jet degree allows it.
    pub k_connection: Option<f64>,
    pub metric: MetricData,
    pub diagnostics: Diagnostics,
    pub frame1: Frame,
    pub frame3: Frame,
    pub mc3: MCField,
}

fn max_abs<'a>(it: impl IntoIterator<Item = &'a (&'static str, f64)>) -> f64 {
    it.into_iter().fold(0.0, |m, (_, v)| m.max(v.abs()))
}

/// Runs the whole chain on a jet.
pub fn analyze_jet(jet: &Jet5, u: f64, v: f64, tol: &Tolerances) -> Result<PointAnalysis> {
    let d = jet[0].degree();
    if d < MIN_DEGREE {
        return Err(Error::DegreeTooLow { have: d, need: MIN_DEGREE });
    }
    let f1 = frame1(jet, tol)?;
    analyze_frame(f1, u, v, tol)
}

/// Runs the chain from an arbitrary 1-adapted frame.
pub fn analyze_frame(f1: Frame, u: f64, v: f64, tol: &Tolerances) -> Result<PointAnalysis> {
    let mc1 = maurer_cartan(&f1, tol)?;
    let fd = fundamental_matrices(&mc1, tol)?;
    let ty = classify_plane(&fd, tol)?;
    let (f2, epsilon, gauge2) = match ty.kind {
        SurfaceKind::SpaceLike => {
            let (f, e, g) = adapt2_spacelike(&f1, &fd, tol)?;
            (f, Some(e), g)
        }
        SurfaceKind::TimeLike => {
            let (f, g) = adapt2_timelike(&f1, &fd, tol)?;
            (f, None, g)
        }
        SurfaceKind::Null => return Err(Error::NullTypeUnsupported),
    };
    let mc2 = maurer_cartan(&f2, tol)?;
    let level2 = level2_functions(&mc2, ty.kind, tol)?;
    let (f3, gauge3) = adapt3(&f2, &ty, tol)?;
    let mc3 = maurer_cartan(&f3, tol)?;
    let invariants = extract_from_mc(&mc3, ty.kind, tol)?;
    let k_connection = gauss_from_connection(&mc3, ty.kind).ok();
    let metric = metric_at(&f3, &mc3, ty.kind);
    let normal_h0 = ["h0_31", "h0_32", "h0_41", "h0_42"]
        .iter()
        .fold(0.0f64, |m, n| m.max(invariants.h.get(n).abs()));
    let diagnostics = Diagnostics {
        first_vanishing: mc1.vanishing_residual(),
        cartan_symmetry: fd.symmetry_residual,
        structure_equation: mc1.structure_residual(),
        level2_relations: max_abs(&relation_residuals(&level2, ty.kind, epsilon)),
        level3_relations: max_abs(&relation_residuals(&invariants.h, ty.kind, epsilon)),
        normal_h0,
        connection_identities: connection_residuals(&mc3, ty.kind).ok(),
    };
    Ok(PointAnalysis {
        u,
        v,
        surface_type: ty,
        fundamental: fd.values(),
        epsilon,
        gauge2,
        gauge3,
        level2,
        invariants,
        k_connection,
        metric,
        diagnostics,
        frame1: f1,
        frame3: f3,
        mc3,
    })
}

/// Evaluates the surface jet at (u, v) and runs the chain.
pub fn analyze_point(spec: &SurfaceSpec, u: f64, v: f64, cfg: &PipelineConfig) -> Result<PointAnalysis> {
    let jet = eval_surface(spec, u, v, cfg.effective_degree())?;
    analyze_jet(&jet, u, v, &cfg.tol)
}

/// Gauss curvature from dα at (u, v); evaluates at least a degree-5 jet.
pub fn gauss_from_connection_at(spec: &SurfaceSpec, u: f64, v: f64, cfg: &PipelineConfig) -> Result<f64> {
    let mut c = *cfg;
    c.connection_route = true;
    let p = analyze_point(spec, u, v, &c)?;
    p.k_connection.ok_or(Error::DegreeTooLow {
        have: c.effective_degree(),
        need: CONNECTION_DEGREE,
    })
}
