//! Invariants read off the Maurer–Cartan forms of 2- and 3-adapted frames.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::adaptation::{maurer_cartan, Frame, MCField, SurfaceKind, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::Mat2T;
use crate::taylor::Taylor;

/// Ordered table of named structure functions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HTable(pub Vec<(&'static str, f64)>);

impl HTable {
    /// Value of `name`; panics on names that the table does not carry.
    pub fn get(&self, name: &str) -> f64 {
        self.try_get(name)
            .unwrap_or_else(|| panic!("structure function {name} is not in this table"))
    }

    pub fn try_get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => panic!("structure function {name} is not in this table"),
        }
    }

    fn push(&mut self, name: &'static str, value: f64) {
        self.0.push((name, value));
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(n, _)| *n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for HTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Structure-function names of the 2-adapted expansion, in table order.
pub const SPACE_LIKE_LEVEL2: [&str; 18] = [
    "h0_31", "h0_32", "h0_41", "h0_42", "h1_11", "h1_12", "h1_21", "h1_22", "h2_21", "h2_22", "h3_31", "h3_32",
    "h3_41", "h3_42", "h4_31", "h4_32", "h4_41", "h4_42",
];
pub const TIME_LIKE_LEVEL2: [&str; 18] = [
    "h0_31", "h0_32", "h0_41", "h0_42", "h1_11", "h2_22", "h1_21", "h1_22", "h2_11", "h2_12", "h3_31", "h3_32",
    "h3_41", "h3_42", "h4_31", "h4_32", "h4_41", "h4_42",
];
/// Names added by the 3-adapted expansion.
pub const SPACE_LIKE_LEVEL3: [&str; 6] = ["h1_31", "h1_32", "h1_41", "h1_42", "h2_32", "h2_42"];
pub const TIME_LIKE_LEVEL3: [&str; 6] = ["h1_31", "h1_32", "h1_41", "h1_42", "h2_31", "h2_41"];

fn half_sum(a: &[Taylor; 2], b: &[Taylor; 2], sign: f64) -> [Taylor; 2] {
    [(a[0] + b[0].scale(sign)).scale(0.5), (a[1] + b[1].scale(sign)).scale(0.5)]
}

fn minus(a: &[Taylor; 2], b: &[Taylor; 2], k: f64) -> [Taylor; 2] {
    [a[0] - b[0].scale(k), a[1] - b[1].scale(k)]
}

/// Connection form α as (du, dv) coefficients.
pub fn alpha_form(mc: &MCField, kind: SurfaceKind) -> [Taylor; 2] {
    match kind {
        SurfaceKind::TimeLike => half_sum(&mc.form(1, 1), &mc.form(2, 2), -1.0),
        _ => half_sum(&mc.form(1, 2), &mc.form(2, 1), -1.0),
    }
}

/// The 2-adapted Cartan-lemma family h^i_jk, valid for 2- and 3-adapted frames.
pub fn level2_functions(mc: &MCField, kind: SurfaceKind, tol: &Tolerances) -> Result<HTable> {
    let cinv = mc.coframe_inverse(tol)?;
    let xy = |w: [Taylor; 2]| {
        let c = MCField::coords_with(&cinv, &w);
        (c[0].value(), c[1].value())
    };
    let alpha = alpha_form(mc, kind);
    let mut t = HTable::default();
    let mut put = |names: [&'static str; 2], w: [Taylor; 2]| {
        let (x, y) = xy(w);
        t.push(names[0], x);
        t.push(names[1], y);
    };
    put(["h0_31", "h0_32"], mc.form(0, 3));
    put(["h0_41", "h0_42"], mc.form(0, 4));
    match kind {
        SurfaceKind::TimeLike => {
            put(["h1_11", "h2_22"], half_sum(&mc.form(1, 1), &mc.form(2, 2), 1.0));
            put(["h1_21", "h1_22"], mc.form(1, 2));
            put(["h2_11", "h2_12"], mc.form(2, 1));
            put(["h3_31", "h3_32"], minus(&mc.form(3, 3), &alpha, 2.0));
            put(["h3_41", "h3_42"], mc.form(3, 4));
            put(["h4_31", "h4_32"], mc.form(4, 3));
            put(["h4_41", "h4_42"], minus(&mc.form(4, 4), &alpha, -2.0));
        }
        _ => {
            put(["h1_11", "h1_12"], mc.form(1, 1));
            put(["h1_21", "h1_22"], half_sum(&mc.form(1, 2), &mc.form(2, 1), 1.0));
            put(["h2_21", "h2_22"], mc.form(2, 2));
            put(["h3_31", "h3_32"], mc.form(3, 3));
            put(["h3_41", "h3_42"], minus(&mc.form(3, 4), &alpha, 2.0));
            put(["h4_31", "h4_32"], minus(&mc.form(4, 3), &alpha, -2.0));
            put(["h4_41", "h4_42"], mc.form(4, 4));
        }
    }
    Ok(t)
}

/// Everything the pipeline reports at a 3-adapted frame.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InvariantSet {
    pub kind: SurfaceKind,
    /// Sign of h⁰ (space-like only).
    pub epsilon: Option<i8>,
    pub h: HTable,
    /// α in the coframe: α = a₁ω¹₀ + a₂ω²₀.
    pub alpha: [f64; 2],
    /// Gauss curvature from the algebraic Gauss equation.
    pub k: f64,
    /// Differences between the two Cartan-lemma readings of the paired entries.
    pub symmetry_residuals: [f64; 2],
    pub fiber_scalars: Vec<(String, f64)>,
}

pub fn extract_invariants(frame: &Frame, kind: SurfaceKind, tol: &Tolerances) -> Result<InvariantSet> {
    let mc = maurer_cartan(frame, tol)?;
    extract_from_mc(&mc, kind, tol)
}

pub fn extract_from_mc(mc: &MCField, kind: SurfaceKind, tol: &Tolerances) -> Result<InvariantSet> {
    if kind == SurfaceKind::Null {
        return Err(Error::NullTypeUnsupported);
    }
    let cinv = mc.coframe_inverse(tol)?;
    let xy = |i: usize, j: usize| {
        let c = MCField::coords_with(&cinv, &mc.form(i, j));
        (c[0].value(), c[1].value())
    };
    let mut h = level2_functions(mc, kind, tol)?;
    let (a13, b13) = xy(1, 3);
    let (a23, b23) = xy(2, 3);
    let (a14, b14) = xy(1, 4);
    let (a24, b24) = xy(2, 4);
    let symmetry_residuals;
    match kind {
        SurfaceKind::TimeLike => {
            // ω²₃ = h²₃₁ω¹ + h¹₃₁ω², ω²₄ = h²₄₁ω¹ + h¹₄₁ω²
            h.push("h1_31", a13);
            h.push("h1_32", b13);
            h.push("h1_41", a14);
            h.push("h1_42", b14);
            h.push("h2_31", a23);
            h.push("h2_41", a24);
            symmetry_residuals = [b23 - a13, b24 - a14];
        }
        _ => {
            // ω²₃ = h¹₃₂ω¹ + h²₃₂ω², ω²₄ = h¹₄₂ω¹ + h²₄₂ω²
            h.push("h1_31", a13);
            h.push("h1_32", b13);
            h.push("h1_41", a14);
            h.push("h1_42", b14);
            h.push("h2_32", b23);
            h.push("h2_42", b24);
            symmetry_residuals = [a23 - b13, a24 - b14];
        }
    }
    let alpha = MCField::coords_with(&cinv, &alpha_form(mc, kind)).map(|t| t.value());
    let epsilon = match kind {
        SurfaceKind::SpaceLike => {
            let (e, _) = xy(0, 1);
            Some(if e > 0.0 { 1 } else { -1 })
        }
        _ => None,
    };
    let mut inv = InvariantSet {
        kind,
        epsilon,
        h,
        alpha,
        k: 0.0,
        symmetry_residuals,
        fiber_scalars: Vec::new(),
    };
    inv.k = gauss_from_invariants(&inv);
    inv.fiber_scalars = fiber_invariant_scalars(&inv);
    Ok(inv)
}

/// Gauss curvature from the algebraic Gauss equation of the surface type.
pub fn gauss_from_invariants(inv: &InvariantSet) -> f64 {
    gauss_from_table(&inv.h, inv.kind, inv.epsilon)
}

/// The Gauss equation evaluated on a table carrying the level-3 names.
pub fn gauss_from_table(table: &HTable, kind: SurfaceKind, epsilon: Option<i8>) -> f64 {
    let h = |n: &str| table.get(n);
    match kind {
        SurfaceKind::TimeLike => {
            h("h3_41") * h("h4_32") - h("h3_32") * h("h4_41") + 0.5 * (h("h1_32") + h("h2_41")) - 1.0
        }
        _ => {
            let eps = epsilon.unwrap_or(1) as f64;
            0.5 * (-h("h3_32") * h("h4_31") - h("h4_41") * h("h3_42") + h("h3_41") * h("h4_42")
                - h("h3_32") * h("h4_42")
                + h("h4_32") * h("h3_31")
                + h("h4_32") * h("h3_42")
                - h("h4_41") * h("h3_31")
                + h("h3_41") * h("h4_31")
                + h("h1_31")
                - h("h2_32")
                + 2.0 * h("h1_42"))
                - eps
        }
    }
}

/// K from dα = K ω¹₀∧ω²₀, using the first-order Taylor data of α.
pub fn gauss_from_connection(mc: &MCField, kind: SurfaceKind) -> Result<f64> {
    if mc.degree() < 1 {
        return Err(Error::DegreeTooLow {
            have: mc.degree(),
            need: 1,
        });
    }
    let a = alpha_form(mc, kind);
    let da = a[1].d_du().value() - a[0].d_dv().value();
    let c = mc.coframe.values();
    let det = c.0[0][0] * c.0[1][1] - c.0[0][1] * c.0[1][0];
    Ok(da / det)
}

fn d_form(w: &[Taylor; 2]) -> f64 {
    w[1].d_du().value() - w[0].d_dv().value()
}

fn wedge(a: &[Taylor; 2], b: &[Taylor; 2]) -> f64 {
    a[0].value() * b[1].value() - a[1].value() * b[0].value()
}

/// Residuals of the Levi-Civita identities for α (du∧dv coefficients).
pub fn connection_residuals(mc: &MCField, kind: SurfaceKind) -> Result<[f64; 2]> {
    if mc.degree() < 1 {
        return Err(Error::DegreeTooLow {
            have: mc.degree(),
            need: 1,
        });
    }
    let a = alpha_form(mc, kind);
    let w1 = mc.form(1, 0);
    let w2 = mc.form(2, 0);
    Ok(match kind {
        SurfaceKind::TimeLike => [d_form(&w1) + wedge(&a, &w1), d_form(&w2) - wedge(&a, &w2)],
        _ => [d_form(&w1) + wedge(&a, &w2), d_form(&w2) - wedge(&a, &w1)],
    })
}

/// The signed residual of every displayed linear relation among the h^i_jk.
///
/// The first six are the 2-adapted relations; when the table carries the
/// 3-adapted functions, the two simplified relations follow.
pub fn relation_residuals(h: &HTable, kind: SurfaceKind, epsilon: Option<i8>) -> Vec<(&'static str, f64)> {
    let g = |n: &str| h.get(n);
    let mut out = match kind {
        SurfaceKind::TimeLike => vec![
            ("2h2_22 - h1_21 - h3_32", 2.0 * g("h2_22") - g("h1_21") - g("h3_32")),
            ("h1_22 + h3_41", g("h1_22") + g("h3_41")),
            ("h2_11 + h4_32", g("h2_11") + g("h4_32")),
            ("2h1_11 - h2_12 - h4_41", 2.0 * g("h1_11") - g("h2_12") - g("h4_41")),
            ("2h1_11 - 2h2_12 + h0_32", 2.0 * g("h1_11") - 2.0 * g("h2_12") + g("h0_32")),
            ("2h2_22 - 2h1_21 + h0_41", 2.0 * g("h2_22") - 2.0 * g("h1_21") + g("h0_41")),
        ],
        _ => {
            let e = epsilon.unwrap_or(1) as f64;
            vec![
                ("2h1_12 - h3_32 + h3_41", 2.0 * g("h1_12") - g("h3_32") + g("h3_41")),
                ("2h2_21 - h3_31 - h3_42", 2.0 * g("h2_21") - g("h3_31") - g("h3_42")),
                (
                    "h1_11 - 2h1_22 + h2_21 + h4_32 - h4_41",
                    g("h1_11") - 2.0 * g("h1_22") + g("h2_21") + g("h4_32") - g("h4_41"),
                ),
                (
                    "h1_12 - 2h1_21 + h2_22 - h4_31 - h4_42",
                    g("h1_12") - 2.0 * g("h1_21") + g("h2_22") - g("h4_31") - g("h4_42"),
                ),
                (
                    "h0_32 - h0_41 + 2eps(h1_21 - h1_12)",
                    g("h0_32") - g("h0_41") + 2.0 * e * (g("h1_21") - g("h1_12")),
                ),
                (
                    "h0_31 + h0_42 + 2eps(h2_21 - h1_22)",
                    g("h0_31") + g("h0_42") + 2.0 * e * (g("h2_21") - g("h1_22")),
                ),
            ]
        }
    };
    if h.try_get("h1_31").is_some() {
        match kind {
            SurfaceKind::TimeLike => {
                out.push(("h1_11 - h2_12", g("h1_11") - g("h2_12")));
                out.push(("h2_22 - h1_21", g("h2_22") - g("h1_21")));
            }
            _ => {
                out.push(("h1_21 - h1_12", g("h1_21") - g("h1_12")));
                out.push(("h2_21 - h1_22", g("h2_21") - g("h1_22")));
            }
        }
    }
    out
}

/// Scalars unchanged by the residual SO(2) or SO⁺(1,1) freedom of 3-adapted frames.
pub fn fiber_invariant_scalars(inv: &InvariantSet) -> Vec<(String, f64)> {
    let g = |n: &str| inv.h.get(n);
    let mut out = vec![("K".to_string(), inv.k)];
    match inv.kind {
        SurfaceKind::TimeLike => {
            for (name, v) in [
                ("h1_32", g("h1_32")),
                ("h2_41", g("h2_41")),
                ("h3_32*h4_41", g("h3_32") * g("h4_41")),
                ("h3_41*h4_32", g("h3_41") * g("h4_32")),
                ("h3_31*h4_42", g("h3_31") * g("h4_42")),
                ("h3_31*h3_32", g("h3_31") * g("h3_32")),
                ("h1_31*h1_41", g("h1_31") * g("h1_41")),
                ("h1_42*h2_31", g("h1_42") * g("h2_31")),
            ] {
                out.push((name.to_string(), v));
            }
        }
        _ => {
            let eps = inv.epsilon.unwrap_or(1) as f64;
            let s3 = [g("h1_31"), g("h1_32"), g("h2_32")];
            let s4 = [g("h1_41"), g("h1_42"), g("h2_42")];
            let tr = |s: &[f64; 3]| s[0] + s[2];
            let fro = |s: &[f64; 3]| s[0] * s[0] + 2.0 * s[1] * s[1] + s[2] * s[2];
            let sq = |x: f64, y: f64| x * x + y * y;
            for (name, v) in [
                ("eps", eps),
                ("tr(S3)^2 + tr(S4)^2", tr(&s3).powi(2) + tr(&s4).powi(2)),
                ("|S3|^2 + |S4|^2", fro(&s3) + fro(&s4)),
                ("|h3_3 + h4_4|^2", sq(g("h3_31") + g("h4_41"), g("h3_32") + g("h4_42"))),
                ("|h3_4 - h4_3|^2", sq(g("h3_41") - g("h4_31"), g("h3_42") - g("h4_32"))),
                (
                    "|h3_3 - h4_4|^2 + |h3_4 + h4_3|^2",
                    sq(g("h3_31") - g("h4_41"), g("h3_32") - g("h4_42"))
                        + sq(g("h3_41") + g("h4_31"), g("h3_42") + g("h4_32")),
                ),
            ] {
                out.push((name.to_string(), v));
            }
        }
    }
    out
}

/// First fundamental form and normal metric at a 3-adapted frame.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MetricData {
    /// Coefficients (E, F, G) of I = E du² + 2F du dv + G dv².
    pub first: [f64; 3],
    /// Gram matrix of the normal metric in the basis (e₃, e₄).
    pub normal_gram: [[f64; 2]; 2],
    /// e₃ and e₄ of the reporting frame.
    pub normal_basis: [[f64; 5]; 2],
    pub signature: &'static str,
}

pub fn metric_from_coframe(c: &Mat2T, kind: SurfaceKind) -> [f64; 3] {
    let c = c.values();
    let [[c11, c12], [c21, c22]] = c.0;
    match kind {
        SurfaceKind::TimeLike => [2.0 * c11 * c21, c11 * c22 + c12 * c21, 2.0 * c12 * c22],
        _ => [c11 * c11 + c21 * c21, c11 * c12 + c21 * c22, c12 * c12 + c22 * c22],
    }
}

pub fn metric_at(frame: &Frame, mc: &MCField, kind: SurfaceKind) -> MetricData {
    let m = frame.m.values();
    let col = |j: usize| std::array::from_fn(|i| m.0[i][j]);
    let (normal_gram, signature) = match kind {
        SurfaceKind::TimeLike => ([[0.0, 1.0], [1.0, 0.0]], "lorentzian"),
        _ => ([[1.0, 0.0], [0.0, 1.0]], "riemannian"),
    };
    MetricData {
        first: metric_from_coframe(&mc.coframe, kind),
        normal_gram,
        normal_basis: [col(3), col(4)],
        signature,
    }
}
