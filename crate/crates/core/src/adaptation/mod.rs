//! Frames along a surface jet, their Maurer–Cartan forms, the first-order
//! matrices h⁰, h³, h⁴ and the plane classification.

mod gauge;

pub use gauge::{
    adapt2_spacelike, adapt2_timelike, adapt3, fundamental_of, group_action, GaugeTransform, G1Element,
};

use serde::Serialize;

use crate::dsl::Jet5;
use crate::error::{Error, Result};
use crate::linalg::{
    det3, inverse2, lu, q_form, q_polar, Mat2T, Mat5T, Matrix, Sym2, Sym2T,
};
use crate::taylor::Taylor;

/// Numerical thresholds of the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Relative rank threshold for immersion, transversality and independence.
    pub rank: f64,
    /// |det G| ≤ null·‖G‖² declares a null plane.
    pub null: f64,
    /// Relative LU pivot threshold.
    pub pivot: f64,
    /// Smallest admissible |s| when normalizing h⁰.
    pub gauge: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-8,
            null: 1e-8,
            pivot: 1e-12,
            gauge: 1e-10,
        }
    }
}

/// Frame field e₀…e₄ as the columns of a 5×5 jet matrix.
#[derive(Clone, Debug)]
pub struct Frame {
    pub m: Mat5T,
    pub level: u8,
}

impl Frame {
    pub fn degree(&self) -> usize {
        self.m.degree()
    }

    pub fn column(&self, j: usize) -> [Taylor; 5] {
        self.m.col(j)
    }

    /// Right action `F·g`.
    pub fn apply(&self, g: &Mat5T, level: u8) -> Frame {
        let d = self.degree().min(g.degree());
        Frame {
            m: self.m.truncate(d).matmul(&g.truncate(d)),
            level,
        }
    }
}

fn dot(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn tdot(a: &[Taylor; 5], b: &[Taylor; 5]) -> Taylor {
    let mut acc = a[0] * b[0];
    for i in 1..5 {
        acc += a[i] * b[i];
    }
    acc
}

/// Index of the standard basis vector with the largest rejection from the
/// span of the orthonormal vectors `q`, skipping `exclude`.
fn best_rejection(q: &[[f64; 5]], exclude: Option<usize>) -> (usize, [f64; 5]) {
    let mut best = (0, [0.0; 5], -1.0);
    for k in 0..5 {
        if Some(k) == exclude {
            continue;
        }
        let mut r = [0.0; 5];
        r[k] = 1.0;
        for qi in q {
            let c = qi[k];
            for (x, y) in r.iter_mut().zip(qi) {
                *x -= c * y;
            }
        }
        let n = dot(&r, &r);
        if n > best.2 {
            best = (k, r, n);
        }
    }
    let n = best.2.sqrt();
    (best.0, best.1.map(|x| x / n))
}

/// `E_k` minus its Euclidean projection onto the span of `basis`.
fn reject<const N: usize>(basis: &[[Taylor; 5]; N], k: usize, tol: f64) -> Result<[Taylor; 5]> {
    let proto = basis[0][0];
    let gram = Matrix::<Taylor, N>::from_fn(|i, j| tdot(&basis[i], &basis[j]));
    let rhs: [Taylor; N] = std::array::from_fn(|i| basis[i][k]);
    let x = lu(&gram, tol)?.solve(&rhs);
    Ok(std::array::from_fn(|r| {
        let mut acc = proto.lift(if r == k { 1.0 } else { 0.0 });
        for i in 0..N {
            acc -= basis[i][r] * x[i];
        }
        acc
    }))
}

/// 1-adapted frame: e₀ = f, e₁ = f_u, e₂ = f_v and a Euclidean-orthogonal
/// completion by the two standard basis vectors of largest rejection.
pub fn frame1(jet: &Jet5, tol: &Tolerances) -> Result<Frame> {
    let d = jet[0].degree();
    if d < 1 {
        return Err(Error::DegreeTooLow { have: d, need: 1 });
    }
    let e0: [Taylor; 5] = std::array::from_fn(|i| jet[i].truncate(d - 1));
    let e1: [Taylor; 5] = std::array::from_fn(|i| jet[i].d_du());
    let e2: [Taylor; 5] = std::array::from_fn(|i| jet[i].d_dv());
    let p = e0.map(|t| t.value());
    let fu = e1.map(|t| t.value());
    let fv = e2.map(|t| t.value());

    let (pp, uu, vv, uv) = (dot(&p, &p), dot(&fu, &fu), dot(&fv, &fv), dot(&fu, &fv));
    let scale = pp.max(uu).max(vv);
    let g2 = uu * vv - uv * uv;
    if !(g2 > (tol.rank * scale).powi(2)) {
        return Err(Error::NotImmersed);
    }
    let (pu, pv) = (dot(&p, &fu), dot(&p, &fv));
    let g3 = pp * g2 - pu * (pu * vv - uv * pv) + pv * (pu * uv - uu * pv);
    if !(g3 > tol.rank.powi(2) * pp * g2) {
        return Err(Error::NotTransversal);
    }

    // orthonormal basis of span(p, fu, fv) for the pivot choice
    let mut q: Vec<[f64; 5]> = Vec::with_capacity(4);
    for v in [p, fu, fv] {
        let mut w = v;
        for qi in &q {
            let c = dot(&w, qi);
            for (x, y) in w.iter_mut().zip(qi) {
                *x -= c * y;
            }
        }
        let n = dot(&w, &w).sqrt();
        q.push(w.map(|x| x / n));
    }
    let (k3, r3) = best_rejection(&q, None);
    q.push(r3);
    let (k4, _) = best_rejection(&q, Some(k3));

    let e3 = reject(&[e0, e1, e2], k3, tol.pivot)?;
    let e4 = reject(&[e0, e1, e2, e3], k4, tol.pivot)?;
    let cols = [e0, e1, e2, e3, e4];
    Ok(Frame {
        m: Matrix::from_fn(|i, j| cols[j][i]),
        level: 1,
    })
}

/// Ω = F⁻¹dF split into du- and dv-coefficient matrices; ω^i_j = Ω[i][j].
#[derive(Clone, Debug)]
pub struct MCField {
    pub du: Mat5T,
    pub dv: Mat5T,
    /// Rows: (du, dv) coefficients of ω¹₀ and ω²₀.
    pub coframe: Mat2T,
}

pub fn maurer_cartan(frame: &Frame, tol: &Tolerances) -> Result<MCField> {
    let d = frame.degree();
    if d < 1 {
        return Err(Error::DegreeTooLow { have: d, need: 1 });
    }
    let f = lu(&frame.m.truncate(d - 1), tol.pivot)?;
    let du = f.solve_matrix(&frame.m.d_du());
    let dv = f.solve_matrix(&frame.m.d_dv());
    let coframe = Matrix([[du.0[1][0], dv.0[1][0]], [du.0[2][0], dv.0[2][0]]]);
    Ok(MCField { du, dv, coframe })
}

impl MCField {
    pub fn degree(&self) -> usize {
        self.du.degree()
    }

    /// (du, dv) coefficients of ω^i_j.
    pub fn form(&self, i: usize, j: usize) -> [Taylor; 2] {
        [self.du.0[i][j], self.dv.0[i][j]]
    }

    pub fn coframe_inverse(&self, tol: &Tolerances) -> Result<Mat2T> {
        inverse2(&self.coframe, tol.rank).map_err(|_| Error::NotImmersed)
    }

    /// Coordinates (x₁, x₂) of a 1-form w = x₁ω¹₀ + x₂ω²₀.
    pub fn coords_with(cinv: &Mat2T, w: &[Taylor; 2]) -> [Taylor; 2] {
        [
            w[0] * cinv.0[0][0] + w[1] * cinv.0[1][0],
            w[0] * cinv.0[0][1] + w[1] * cinv.0[1][1],
        ]
    }

    /// Largest constant term of ω⁰₀, ω³₀, ω⁴₀.
    pub fn vanishing_residual(&self) -> f64 {
        [0, 3, 4]
            .iter()
            .flat_map(|&i| self.form(i, 0))
            .fold(0.0, |m, t| m.max(t.value().abs()))
    }

    /// Largest constant term of dΩ + Ω∧Ω; `None` for degree-0 forms.
    pub fn structure_residual(&self) -> Option<f64> {
        if self.degree() < 1 {
            return None;
        }
        let d = self.du.d_dv().sub(&self.dv.d_du()).scale(-1.0);
        let du = self.du.truncate(self.degree() - 1);
        let dv = self.dv.truncate(self.degree() - 1);
        Some(d.add(&du.bracket(&dv)).max_abs_value())
    }
}

/// h⁰, h³, h⁴ from Cartan's lemma.
#[derive(Clone, Debug)]
pub struct FundamentalData {
    pub h0: Sym2T,
    pub h3: Sym2T,
    pub h4: Sym2T,
    /// |h^k_12 − h^k_21| for k = 0, 3, 4.
    pub symmetry_residual: [f64; 3],
    /// |det(h⁰, h³, h⁴)| relative to the product of their norms.
    pub rank_indicator: f64,
}

impl FundamentalData {
    pub fn values(&self) -> [Sym2<f64>; 3] {
        [self.h0.values(), self.h3.values(), self.h4.values()]
    }
}

/// Coordinates of ω^k₁, ω^k₂ in the coframe, as the matrix h^k_{jm}.
pub(crate) fn h_matrix(mc: &MCField, cinv: &Mat2T, k: usize) -> Mat2T {
    let x1 = MCField::coords_with(cinv, &mc.form(k, 1));
    let x2 = MCField::coords_with(cinv, &mc.form(k, 2));
    Matrix([x1, x2])
}

pub fn fundamental_matrices(mc: &MCField, tol: &Tolerances) -> Result<FundamentalData> {
    let cinv = mc.coframe_inverse(tol)?;
    let mut hs = Vec::with_capacity(3);
    let mut sym = [0.0; 3];
    for (slot, k) in [0usize, 3, 4].into_iter().enumerate() {
        let h = h_matrix(mc, &cinv, k);
        sym[slot] = (h.0[0][1].value() - h.0[1][0].value()).abs();
        hs.push(Sym2::new(h.0[0][0], (h.0[0][1] + h.0[1][0]).scale(0.5), h.0[1][1]));
    }
    let rows = [hs[0].values(), hs[1].values(), hs[2].values()].map(|h| [h.a, h.b, h.c]);
    let norm = |r: &[f64; 3]| r.iter().map(|x| x * x).sum::<f64>().sqrt();
    let denom = norm(&rows[0]) * norm(&rows[1]) * norm(&rows[2]);
    let rank_indicator = if denom > 0.0 { det3(&rows).abs() / denom } else { 0.0 };
    if !(rank_indicator > tol.rank) {
        return Err(Error::Degenerate);
    }
    Ok(FundamentalData {
        h0: hs[0],
        h3: hs[1],
        h4: hs[2],
        symmetry_residual: sym,
        rank_indicator,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    SpaceLike,
    TimeLike,
    Null,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::SpaceLike => "SpaceLike",
            SurfaceKind::TimeLike => "TimeLike",
            SurfaceKind::Null => "Null",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceType {
    pub kind: SurfaceKind,
    pub gram: [[f64; 2]; 2],
    pub det: f64,
    pub trace: f64,
}

/// Signature of Q restricted to span(h³, h⁴) at the base point.
pub fn classify_plane(fd: &FundamentalData, tol: &Tolerances) -> Result<SurfaceType> {
    classify_pair(&fd.h3.values(), &fd.h4.values(), tol)
}

pub fn classify_pair(h3: &Sym2<f64>, h4: &Sym2<f64>, tol: &Tolerances) -> Result<SurfaceType> {
    let (x, y) = ([h3.a, h3.b, h3.c], [h4.a, h4.b, h4.c]);
    let cross = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    let n = |v: &[f64; 3]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    if !(n(&cross) > tol.rank * n(&x) * n(&y)) {
        return Err(Error::IndependenceFailure);
    }
    let (q3, q4, b) = (q_form(h3), q_form(h4), q_polar(h3, h4));
    let gram = [[q3, b], [b, q4]];
    let det = q3 * q4 - b * b;
    let trace = q3 + q4;
    let norm = q3.abs().max(q4.abs()).max(b.abs());
    let kind = if det.abs() <= tol.null * norm * norm {
        SurfaceKind::Null
    } else if det < 0.0 {
        SurfaceKind::TimeLike
    } else if trace > 0.0 {
        SurfaceKind::SpaceLike
    } else {
        // Q has signature (2, 1): no plane is negative definite
        return Err(Error::IndependenceFailure);
    };
    Ok(SurfaceType { kind, gram, det, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{builtin, eval_surface, parse_surface};
    use crate::linalg::{Mat5, Sym2};

    #[test]
    fn plane_normal_forms() {
        let t = Tolerances::default();
        let c = |a: Sym2<f64>, b: Sym2<f64>| classify_pair(&a, &b, &t).unwrap().kind;
        assert_eq!(c(Sym2::hyperbolic(), Sym2::offdiag()), SurfaceKind::SpaceLike);
        assert_eq!(c(Sym2::identity(), Sym2::hyperbolic()), SurfaceKind::TimeLike);
        assert_eq!(c(Sym2::e11(), Sym2::offdiag()), SurfaceKind::Null);
        assert!(matches!(
            classify_pair(&Sym2::e11(), &Sym2::e11().scale(2.0), &t),
            Err(Error::IndependenceFailure)
        ));
    }

    #[test]
    fn h2_first_frame_at_origin() {
        let jet = eval_surface(&builtin("h2").unwrap(), 0.0, 0.0, 4).unwrap();
        let f = frame1(&jet, &Tolerances::default()).unwrap();
        let v = f.m.values();
        let s3 = 3f64.sqrt();
        let want = [[1.0, 0.0, 0.0, 0.0, 0.0], [0.0, s3, 0.0, 0.0, 0.0], [0.0, 0.0, s3, 0.0, 0.0]];
        for (j, w) in want.iter().enumerate() {
            for i in 0..5 {
                assert!((v.0[i][j] - w[i]).abs() < 1e-14, "e{j}");
            }
        }
    }

    #[test]
    fn immersion_failures() {
        let t = Tolerances::default();
        let same = parse_surface("1 + u + v; u + v; 0; 0; 0").unwrap();
        let jet = eval_surface(&same, 0.0, 0.0, 2).unwrap();
        assert_eq!(frame1(&jet, &t).unwrap_err(), Error::NotImmersed);
        // position equals f_u at the origin
        let radial = parse_surface("exp(u); v; 0; 0; 0").unwrap();
        let jet = eval_surface(&radial, 0.0, 0.0, 2).unwrap();
        assert_eq!(frame1(&jet, &t).unwrap_err(), Error::NotTransversal);
    }

    #[test]
    fn constant_frame_has_zero_forms() {
        let m = Mat5::from_fn(|i, j| if i == j { 2.0 } else { 0.1 * (i + 2 * j) as f64 });
        let f = Frame {
            m: Mat5T::constant(&m, 3),
            level: 1,
        };
        let mc = maurer_cartan(&f, &Tolerances::default()).unwrap();
        assert_eq!(mc.du.max_abs_value(), 0.0);
        assert_eq!(mc.dv.max_abs_value(), 0.0);
    }

    #[test]
    fn hyperplane_surface_is_degenerate() {
        let spec = parse_surface("1 + u^2 + v^2; u; v; u*v; 0").unwrap();
        let jet = eval_surface(&spec, 0.1, 0.2, 4).unwrap();
        let t = Tolerances::default();
        let mc = maurer_cartan(&frame1(&jet, &t).unwrap(), &t).unwrap();
        assert_eq!(fundamental_matrices(&mc, &t).unwrap_err(), Error::Degenerate);
    }
}
