//! Gauge fixing inside the jet algebra: 1-adapted → 2-adapted → 3-adapted.

use serde::Serialize;

use super::{fundamental_matrices, h_matrix, maurer_cartan, Frame, FundamentalData, MCField, SurfaceKind, SurfaceType, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{inverse2, null_basis2, q_orthocomplement, spd2_sqrt, Mat2T, Mat5, Mat5T, Matrix, Sym2};
use crate::scalar::Scalar;
use crate::taylor::Taylor;

/// Element of the structure group of 1-adapted frames:
///
/// ```text
/// [ 1  0  r0 ]
/// [ 0  A  R  ]
/// [ 0  0  B  ]
/// ```
/// with `r0 = (r03, r04)` and `R = [[r13, r14], [r23, r24]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct G1Element {
    pub a: [[f64; 2]; 2],
    pub b: [[f64; 2]; 2],
    /// r03, r04, r13, r14, r23, r24
    pub r: [f64; 6],
}

impl G1Element {
    pub fn matrix(&self) -> Mat5 {
        block(&Matrix(self.a), &Matrix(self.b), &self.r, 0.0)
    }

    pub fn from_matrix(g: &Mat5) -> Self {
        G1Element {
            a: [[g.0[1][1], g.0[1][2]], [g.0[2][1], g.0[2][2]]],
            b: [[g.0[3][3], g.0[3][4]], [g.0[4][3], g.0[4][4]]],
            r: [g.0[0][3], g.0[0][4], g.0[1][3], g.0[1][4], g.0[2][3], g.0[2][4]],
        }
    }
}

fn block<S: Scalar>(a: &Matrix<S, 2>, b: &Matrix<S, 2>, r: &[S; 6], proto: S) -> Matrix<S, 5> {
    let mut g = Matrix::zero_like(proto);
    g.0[0][0] = proto.lift(1.0);
    g.0[0][3] = r[0];
    g.0[0][4] = r[1];
    g.0[1][3] = r[2];
    g.0[1][4] = r[3];
    g.0[2][3] = r[4];
    g.0[2][4] = r[5];
    for i in 0..2 {
        for j in 0..2 {
            g.0[1 + i][1 + j] = a.0[i][j];
            g.0[3 + i][3 + j] = b.0[i][j];
        }
    }
    g
}

/// Transformation law of (h⁰, h³, h⁴) under `F ↦ F·g`.
pub fn group_action<S: Scalar>(h: &[Sym2<S>; 3], g: &Matrix<S, 5>) -> [Sym2<S>; 3] {
    let a = Matrix([[g.0[1][1], g.0[1][2]], [g.0[2][1], g.0[2][2]]]);
    let (b33, b34, b43, b44) = (g.0[3][3], g.0[3][4], g.0[4][3], g.0[4][4]);
    let det_b = b33 * b44 - b34 * b43;
    let [h0, h3, h4] = h;
    let t3 = h3.mul_scalar(b44).sub(&h4.mul_scalar(b34));
    let t4 = h4.mul_scalar(b33).sub(&h3.mul_scalar(b43));
    let inv = det_b.lift(1.0) / det_b;
    let n3 = t3.congruence(&a).mul_scalar(inv);
    let n4 = t4.congruence(&a).mul_scalar(inv);
    let n0 = h0
        .congruence(&a)
        .sub(&n3.mul_scalar(g.0[0][3]))
        .sub(&n4.mul_scalar(g.0[0][4]));
    [n0, n3, n4]
}

/// A gauge step `g` together with its blocks and derived fiber parameters.
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    pub g: Mat5T,
    /// Space-like: √|det A|. Time-like: ln|a₁₁| (the boost parameter).
    pub lambda: f64,
    /// Space-like rotation angle of A; `None` for time-like steps.
    pub theta: Option<f64>,
}

impl GaugeTransform {
    fn new(g: Mat5T, kind: SurfaceKind) -> Self {
        let e = G1Element::from_matrix(&g.values());
        let (lambda, theta) = match kind {
            SurfaceKind::TimeLike => (e.a[0][0].abs().ln(), None),
            _ => {
                let det = e.a[0][0] * e.a[1][1] - e.a[0][1] * e.a[1][0];
                let theta = (e.a[1][0] - e.a[0][1]).atan2(e.a[0][0] + e.a[1][1]);
                (det.abs().sqrt(), Some(theta))
            }
        };
        GaugeTransform { g, lambda, theta }
    }

    /// Block view of the constant term.
    pub fn element(&self) -> G1Element {
        G1Element::from_matrix(&self.g.values())
    }

    pub fn a(&self) -> Mat2T {
        Matrix([[self.g.0[1][1], self.g.0[1][2]], [self.g.0[2][1], self.g.0[2][2]]])
    }

    pub fn b(&self) -> Mat2T {
        Matrix([[self.g.0[3][3], self.g.0[3][4]], [self.g.0[4][3], self.g.0[4][4]]])
    }

    /// r03, r04, r13, r14, r23, r24
    pub fn r(&self) -> [Taylor; 6] {
        let g = &self.g.0;
        [g[0][3], g[0][4], g[1][3], g[1][4], g[2][3], g[2][4]]
    }

    /// Largest entry of `g − I` at the base point.
    pub fn distance_from_identity(&self) -> f64 {
        self.g.values().max_diff(&Mat5::identity())
    }
}

fn sym_matrix(s: &Sym2<Taylor>) -> Mat2T {
    s.to_matrix()
}

fn check_degree(fd: &FundamentalData) -> Result<usize> {
    Ok(fd.h0.a.degree())
}

/// Normalizes a space-like first-order frame to h³ = diag(1, −1),
/// h⁴ = offdiag(1), h⁰ = ε·I.
pub fn adapt2_spacelike(frame: &Frame, fd: &FundamentalData, tol: &Tolerances) -> Result<(Frame, i8, GaugeTransform)> {
    let d = check_degree(fd)?;
    let proto = Taylor::zero(d);
    let mut n = q_orthocomplement(&fd.h3, &fd.h4);
    if n.trace().value() < 0.0 {
        n = n.scale(-1.0);
    }
    let nd = n.det();
    if !(nd.value() > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = n.mul_scalar(nd.rsqrt(0.0)?);
    let a1 = sym_matrix(&spd2_sqrt(&n, tol.rank)?.inverse(tol.pivot)?);

    let h3 = fd.h3.congruence(&a1);
    let h4 = fd.h4.congruence(&a1);
    let h0 = fd.h0.congruence(&a1);
    // trace-free coordinates on the basis diag(1,−1), offdiag(1)
    let x = |h: &Sym2<Taylor>| (h.a - h.c).scale(0.5);
    let b = Matrix([[x(&h3), h3.b], [x(&h4), h4.b]]);

    let p = x(&h0);
    let q = h0.b;
    let s = h0.trace().scale(0.5);
    if s.value().abs() <= tol.gauge * h0.max_abs_value().max(1.0) {
        return Err(Error::DegenerateTraceComponent);
    }
    let eps: i8 = if s.value() > 0.0 { 1 } else { -1 };
    let lam = s.scale(eps as f64).rsqrt(0.0)?;
    let zero = proto.lift(0.0);
    let first = block(&a1, &b, &[p, q, zero, zero, zero, zero], proto);
    let lam_i = Matrix([[lam, zero], [zero, lam]]);
    let lam2 = lam * lam;
    let lam2_i = Matrix([[lam2, zero], [zero, lam2]]);
    let second = block(&lam_i, &lam2_i, &[zero; 6], proto);
    let g = first.matmul(&second);
    Ok((frame.apply(&g, 2), eps, GaugeTransform::new(g, SurfaceKind::SpaceLike)))
}

/// Normalizes a time-like first-order frame to h³ = E₁₁, h⁴ = E₂₂,
/// h⁰ = offdiag(1).
pub fn adapt2_timelike(frame: &Frame, fd: &FundamentalData, tol: &Tolerances) -> Result<(Frame, GaugeTransform)> {
    let d = check_degree(fd)?;
    let proto = Taylor::zero(d);
    let n = q_orthocomplement(&fd.h3, &fd.h4);
    let nd = n.det();
    if !(nd.value() < 0.0) {
        return Err(Error::NotIndefinite);
    }
    let n = n.mul_scalar((-nd).rsqrt(0.0)?);
    let (w1, w2) = null_basis2(&n, tol.rank)?;
    let a1 = Matrix([[w1[0], w2[0]], [w1[1], w2[1]]]);

    let h3 = fd.h3.congruence(&a1);
    let h4 = fd.h4.congruence(&a1);
    let h0 = fd.h0.congruence(&a1);
    let b = Matrix([[h3.a, h3.c], [h4.a, h4.c]]);

    let s = h0.b;
    if s.value().abs() <= tol.gauge * h0.max_abs_value().max(1.0) {
        return Err(Error::DegenerateOffdiagComponent);
    }
    let sign = if s.value() > 0.0 { 1.0 } else { -1.0 };
    let a11 = s.scale(sign).rsqrt(0.0)?;
    let a22 = a11.scale(sign);
    let zero = proto.lift(0.0);
    let first = block(&a1, &b, &[h0.a, h0.c, zero, zero, zero, zero], proto);
    let diag = Matrix([[a11, zero], [zero, a22]]);
    let diag2 = Matrix([[a11 * a11, zero], [zero, a22 * a22]]);
    let second = block(&diag, &diag2, &[zero; 6], proto);
    let g = first.matmul(&second);
    Ok((frame.apply(&g, 2), GaugeTransform::new(g, SurfaceKind::TimeLike)))
}

/// Removes the normal components ω⁰₃, ω⁰₄ of a 2-adapted frame using the
/// tangent-normal block R.
pub fn adapt3(frame: &Frame, ty: &SurfaceType, tol: &Tolerances) -> Result<(Frame, GaugeTransform)> {
    if frame.level != 2 {
        return Err(Error::Config(format!("adapt3 needs a 2-adapted frame, got level {}", frame.level)));
    }
    let mc = maurer_cartan(frame, tol)?;
    let cinv = mc.coframe_inverse(tol)?;
    let c = h_matrix(&mc, &cinv, 0);
    let dn = Matrix([
        MCField::coords_with(&cinv, &mc.form(0, 3)),
        MCField::coords_with(&cinv, &mc.form(0, 4)),
    ]);
    let rt = dn.matmul(&inverse2(&c, tol.pivot)?).scale(-1.0);
    let proto = rt.0[0][0];
    let zero = proto.lift(0.0);
    let id = Matrix::identity_like(proto);
    // R = rtᵀ: r13 = rt[0][0], r14 = rt[1][0], r23 = rt[0][1], r24 = rt[1][1]
    let r = [zero, zero, rt.0[0][0], rt.0[1][0], rt.0[0][1], rt.0[1][1]];
    let g = block(&id, &id, &r, proto);
    Ok((frame.apply(&g, 3), GaugeTransform::new(g, ty.kind)))
}

/// h⁰, h³, h⁴ of a 1-adapted (or further adapted) frame.
pub fn fundamental_of(frame: &Frame, tol: &Tolerances) -> Result<FundamentalData> {
    fundamental_matrices(&maurer_cartan(frame, tol)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptation::{classify_plane, frame1};
    use crate::dsl::{builtin, eval_surface};

    fn level1(name: &str, u: f64, v: f64, degree: usize) -> (Frame, FundamentalData) {
        let t = Tolerances::default();
        let jet = eval_surface(&builtin(name).unwrap(), u, v, degree).unwrap();
        let f = frame1(&jet, &t).unwrap();
        let fd = fundamental_of(&f, &t).unwrap();
        (f, fd)
    }

    #[test]
    fn h2_spacelike_normal_form() {
        let t = Tolerances::default();
        let (f, fd) = level1("h2", 0.3, -0.4, 4);
        assert_eq!(classify_plane(&fd, &t).unwrap().kind, SurfaceKind::SpaceLike);
        let (f2, eps, _) = adapt2_spacelike(&f, &fd, &t).unwrap();
        assert_eq!(eps, 1);
        let [h0, h3, h4] = fundamental_of(&f2, &t).unwrap().values();
        assert!(h3.max_diff(&Sym2::hyperbolic()) < 1e-9);
        assert!(h4.max_diff(&Sym2::offdiag()) < 1e-9);
        assert!(h0.max_diff(&Sym2::identity()) < 1e-9);
    }

    #[test]
    fn sphere_has_negative_epsilon() {
        let t = Tolerances::default();
        let (f, fd) = level1("sphere", 0.2, 0.5, 4);
        let (_, eps, _) = adapt2_spacelike(&f, &fd, &t).unwrap();
        assert_eq!(eps, -1);
    }

    #[test]
    fn s21_timelike_normal_form() {
        let t = Tolerances::default();
        let (f, fd) = level1("s21", 0.1, 0.2, 4);
        assert_eq!(classify_plane(&fd, &t).unwrap().kind, SurfaceKind::TimeLike);
        let (f2, _) = adapt2_timelike(&f, &fd, &t).unwrap();
        let [h0, h3, h4] = fundamental_of(&f2, &t).unwrap().values();
        assert!(h3.max_diff(&Sym2::e11()) < 1e-8);
        assert!(h4.max_diff(&Sym2::e22()) < 1e-8);
        assert!(h0.max_diff(&Sym2::offdiag()) < 1e-8);
    }

    #[test]
    fn adapted_frames_are_fixed_points() {
        let t = Tolerances::default();
        let (f, fd) = level1("h2", -0.2, 0.7, 5);
        let (f2, _, _) = adapt2_spacelike(&f, &fd, &t).unwrap();
        let fd2 = fundamental_of(&f2, &t).unwrap();
        let (_, eps, g) = adapt2_spacelike(&f2, &fd2, &t).unwrap();
        assert_eq!(eps, 1);
        assert!(g.distance_from_identity() < 1e-10);
        assert!((g.lambda - 1.0).abs() < 1e-10);

        let ty = classify_plane(&fd2, &t).unwrap();
        let (f3, _) = adapt3(&f2, &ty, &t).unwrap();
        let (_, g3) = adapt3(&Frame { m: f3.m, level: 2 }, &ty, &t).unwrap();
        assert!(g3.r().iter().all(|x| x.value().abs() < 1e-10));
    }

    #[test]
    fn law_matches_block_action() {
        let h = [Sym2::new(1.0, 0.2, 0.5), Sym2::new(-0.3, 1.0, 0.1), Sym2::new(0.4, -0.2, 2.0)];
        let e = G1Element {
            a: [[1.0, 2.0], [0.5, -1.0]],
            b: [[0.3, 1.0], [-2.0, 0.7]],
            r: [0.2, -0.1, 0.0, 0.0, 0.0, 0.0],
        };
        // acting twice with g and g⁻¹ is the identity
        let g = e.matrix();
        let gi = crate::linalg::inverse(&g, 1e-12).unwrap();
        let back = group_action(&group_action(&h, &g), &gi);
        for k in 0..3 {
            assert!(back[k].max_diff(&h[k]) < 1e-12);
        }
    }
}
