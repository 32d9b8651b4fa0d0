//! The three homogeneous surfaces: Lie-algebra bases, one-parameter
//! subgroups, parametrizations, implicit quadrics and metrics.
//!
//! ```
//! use centroframe::homogeneous::{bracket_check, exp_product_point, Model};
//! assert!(bracket_check(Model::H2) < 1e-14);
//! let (_, x) = exp_product_point(Model::H2, 0.0, 0.0, 0.7);
//! assert!((x[0] - 1.0).abs() < 1e-15);
//! ```

mod search;
mod structure;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use search::{search_constant_solutions, search_with, Cluster, Family, SearchConfig, SearchReport};
pub use structure::{
    equation_count, equation_labels, known_constants, reduced_omega, structure_residual, Case,
    ConstantInvariantVector, SPACE_LIKE_ORDER, TIME_LIKE_ORDER,
};

use crate::dsl::{builtin, SurfaceSpec};
use crate::error::{Error, Result};
use crate::linalg::{expm, expm5, lu, Mat5, Matrix, PIVOT_TOL};
use crate::taylor::{coordinate_jets, Taylor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    H2,
    Sphere,
    S21,
}

pub const MODELS: [Model; 3] = [Model::H2, Model::Sphere, Model::S21];

impl Model {
    /// Lower-case name, shared with the built-in surface specs.
    pub fn name(self) -> &'static str {
        match self {
            Model::H2 => "h2",
            Model::Sphere => "sphere",
            Model::S21 => "s21",
        }
    }

    pub fn case(self) -> Case {
        match self {
            Model::H2 => Case::SpaceLike { epsilon: 1 },
            Model::Sphere => Case::SpaceLike { epsilon: -1 },
            Model::S21 => Case::TimeLike,
        }
    }

    pub fn constants(self) -> ConstantInvariantVector {
        known_constants(self.case())
    }

    /// Gauss curvature from the Gauss equation.
    pub fn gauss_curvature(self) -> f64 {
        match self {
            Model::Sphere => 1.0 / 3.0,
            _ => -1.0 / 3.0,
        }
    }

    /// The parametrization as a surface spec.
    pub fn spec(self) -> SurfaceSpec {
        builtin(self.name()).expect("every model has a built-in spec")
    }

    /// Coordinate 3-planes (as indices into x₀..x₄) used for the figure projections.
    pub fn projections(self) -> &'static [[usize; 3]] {
        const SPACE: [[usize; 3]; 3] = [[1, 2, 0], [1, 2, 3], [1, 2, 4]];
        const TIME: [[usize; 3]; 5] = [[1, 2, 0], [1, 2, 3], [1, 2, 4], [1, 3, 0], [1, 4, 0]];
        match self {
            Model::S21 => &TIME,
            _ => &SPACE,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h2" => Ok(Model::H2),
            "sphere" => Ok(Model::Sphere),
            "s21" => Ok(Model::S21),
            _ => Err(Error::UnknownModel(s.to_string())),
        }
    }
}

/// (M₀, M₁, M₂) as printed for each model.
pub fn model_omega(model: Model) -> [Mat5; 3] {
    let t = 1.0 / 3.0;
    match model {
        Model::H2 | Model::Sphere => {
            let (e, s) = if model == Model::H2 { (1.0, t) } else { (-1.0, -t) };
            let m0 = Matrix([
                [0.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 2.0],
                [0.0, 0.0, 0.0, -2.0, 0.0],
            ]);
            let m1 = Matrix([
                [0.0, e, 0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0, s, 0.0],
                [0.0, 0.0, 0.0, 0.0, s],
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
            ]);
            let m2 = Matrix([
                [0.0, 0.0, e, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, s],
                [1.0, 0.0, 0.0, -s, 0.0],
                [0.0, 0.0, -1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0, 0.0],
            ]);
            [m0, m1, m2]
        }
        Model::S21 => {
            let m0 = Matrix([
                [0.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, -1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 2.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, -2.0],
            ]);
            let m1 = Matrix([
                [0.0, 0.0, 1.0, 0.0, 0.0],
                [1.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 2.0 * t],
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 0.0],
            ]);
            let m2 = Matrix([
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 2.0 * t, 0.0],
                [1.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
            ]);
            [m0, m1, m2]
        }
    }
}

/// Structure constants: row k gives the coordinates of
/// [M₀,M₁], [M₁,M₂], [M₂,M₀] (k = 0, 1, 2) in the basis (M₀, M₁, M₂).
pub type BracketTable = [[f64; 3]; 3];

pub fn expected_brackets(model: Model) -> BracketTable {
    let t = 1.0 / 3.0;
    match model {
        Model::H2 => [[0.0, 0.0, -1.0], [t, 0.0, 0.0], [0.0, -1.0, 0.0]],
        Model::Sphere => [[0.0, 0.0, -1.0], [-t, 0.0, 0.0], [0.0, -1.0, 0.0]],
        Model::S21 => [[0.0, 1.0, 0.0], [t, 0.0, 0.0], [0.0, 0.0, 1.0]],
    }
}

fn combo(m: &[Mat5; 3], c: &[f64; 3]) -> Mat5 {
    m[0].scale(c[0]).add(&m[1].scale(c[1])).add(&m[2].scale(c[2]))
}

/// Largest entry of the three bracket defects and the Jacobi defect.
pub fn bracket_check_with(m: &[Mat5; 3], table: &BracketTable) -> f64 {
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let mut worst: f64 = 0.0;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        worst = worst.max(m[i].bracket(&m[j]).max_diff(&combo(m, &table[k])));
    }
    let jacobi = m[0]
        .bracket(&m[1].bracket(&m[2]))
        .add(&m[1].bracket(&m[2].bracket(&m[0])))
        .add(&m[2].bracket(&m[0].bracket(&m[1])));
    worst.max(jacobi.max_abs_value())
}

pub fn bracket_check(model: Model) -> f64 {
    bracket_check_with(&model_omega(model), &expected_brackets(model))
}

/// Generators whose exponentials give g₀(t), g₁(u), g₂(v).
pub fn subgroup_generators(model: Model) -> [Mat5; 3] {
    let [m0, m1, m2] = model_omega(model);
    match model {
        Model::S21 => {
            let k = 1.5f64.sqrt();
            [m0, m1.sub(&m2).scale(k), m1.add(&m2).scale(k)]
        }
        _ => {
            let k = 3f64.sqrt();
            [m0, m1.scale(k), m2.scale(k)]
        }
    }
}

/// f(u, v, t) = g₁(u)·g₂(v)·g₀(t) and its first column.
pub fn exp_product_point(model: Model, u: f64, v: f64, t: f64) -> (Mat5, [f64; 5]) {
    let [a0, a1, a2] = subgroup_generators(model);
    let g = expm5(&a1, u).matmul(&expm5(&a2, v)).matmul(&expm5(&a0, t));
    let x = g.col(0);
    (g, x)
}

/// Closed forms of g₀(t), g₁(u), g₂(v) for the two space-like models.
pub fn printed_subgroups(model: Model, u: f64, v: f64, t: f64) -> Option<[Mat5; 3]> {
    let r3 = 3f64.sqrt();
    let (g1, g2): (Mat5, Mat5);
    match model {
        Model::S21 => return None,
        Model::H2 => {
            let (ch, sh) = (u.cosh(), u.sinh());
            let (ch2, sh2) = ((2.0 * u).cosh(), (2.0 * u).sinh());
            g1 = Matrix([
                [0.25 * (3.0 * ch2 + 1.0), 0.5 * r3 * sh2, 0.0, 0.25 * (ch2 - 1.0), 0.0],
                [0.5 * r3 * sh2, ch2, 0.0, sh2 / (2.0 * r3), 0.0],
                [0.0, 0.0, ch, 0.0, sh / r3],
                [0.75 * (ch2 - 1.0), 0.5 * r3 * sh2, 0.0, 0.25 * (ch2 + 3.0), 0.0],
                [0.0, 0.0, r3 * sh, 0.0, ch],
            ]);
            let (ch, sh) = (v.cosh(), v.sinh());
            let (ch2, sh2) = ((2.0 * v).cosh(), (2.0 * v).sinh());
            g2 = Matrix([
                [0.25 * (3.0 * ch2 + 1.0), 0.0, 0.5 * r3 * sh2, 0.25 * (1.0 - ch2), 0.0],
                [0.0, ch, 0.0, 0.0, sh / r3],
                [0.5 * r3 * sh2, 0.0, ch2, -sh2 / (2.0 * r3), 0.0],
                [0.75 * (1.0 - ch2), 0.0, -0.5 * r3 * sh2, 0.25 * (ch2 + 3.0), 0.0],
                [0.0, r3 * sh, 0.0, 0.0, ch],
            ]);
        }
        Model::Sphere => {
            let (cu, su) = (u.cos(), u.sin());
            let (cu2, su2) = ((2.0 * u).cos(), (2.0 * u).sin());
            g1 = Matrix([
                [0.25 * (3.0 * cu2 + 1.0), -0.5 * r3 * su2, 0.0, 0.25 * (1.0 - cu2), 0.0],
                [0.5 * r3 * su2, cu2, 0.0, -su2 / (2.0 * r3), 0.0],
                [0.0, 0.0, cu, 0.0, -su / r3],
                [0.75 * (1.0 - cu2), 0.5 * r3 * su2, 0.0, 0.25 * (cu2 + 3.0), 0.0],
                [0.0, 0.0, r3 * su, 0.0, cu],
            ]);
            let (cv, sv) = (v.cos(), v.sin());
            let (cv2, sv2) = ((2.0 * v).cos(), (2.0 * v).sin());
            g2 = Matrix([
                [0.25 * (3.0 * cv2 + 1.0), 0.0, -0.5 * r3 * sv2, 0.25 * (cv2 - 1.0), 0.0],
                [0.0, cv, 0.0, 0.0, -sv / r3],
                [0.5 * r3 * sv2, 0.0, cv2, sv2 / (2.0 * r3), 0.0],
                [0.75 * (cv2 - 1.0), 0.0, -0.5 * r3 * sv2, 0.25 * (cv2 + 3.0), 0.0],
                [0.0, r3 * sv, 0.0, 0.0, cv],
            ]);
        }
    }
    let (c, s, c2, s2) = (t.cos(), t.sin(), (2.0 * t).cos(), (2.0 * t).sin());
    let g0 = Matrix([
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, c, s, 0.0, 0.0],
        [0.0, -s, c, 0.0, 0.0],
        [0.0, 0.0, 0.0, c2, s2],
        [0.0, 0.0, 0.0, -s2, c2],
    ]);
    Some([g0, g1, g2])
}

/// The three quadratic polynomials cutting out the model's variety.
pub fn quadric_residual(model: Model, x: &[f64; 5]) -> [f64; 3] {
    let [x0, x1, x2, x3, x4] = *x;
    match model {
        Model::H2 => [
            x1 * (x0 - x3 - 1.0) - x2 * x4,
            x2 * (x0 + x3 - 1.0) - x1 * x4,
            (4.0 * x0 - 1.0).powi(2) - 12.0 * x1 * x1 - 12.0 * x2 * x2 - 9.0,
        ],
        Model::Sphere => [
            x1 * (x0 + x3 - 1.0) + x2 * x4,
            x2 * (x0 - x3 - 1.0) + x1 * x4,
            (4.0 * x0 - 1.0).powi(2) + 12.0 * x1 * x1 + 12.0 * x2 * x2 - 9.0,
        ],
        Model::S21 => [
            3.0 * x2 * x2 - x4 * (4.0 * x0 + 2.0),
            3.0 * x1 * x1 - x3 * (4.0 * x0 + 2.0),
            2.0 * x0 * x0 - x0 - 3.0 * x1 * x2 - 1.0,
        ],
    }
}

/// Smallest |cos v| at which the sphere coframe is still evaluated.
pub const SPHERE_COFRAME_TOL: f64 = 1e-12;

/// Closed-form metric coefficients (E, F, G) of E du² + 2F du dv + G dv².
pub fn model_metric(model: Model, u: f64, v: f64) -> Result<[f64; 3]> {
    let _ = u;
    match model {
        Model::H2 => Ok([3.0 * v.cosh().powi(2), 0.0, 3.0]),
        Model::Sphere => {
            let c = v.cos();
            if c.abs() < SPHERE_COFRAME_TOL {
                return Err(Error::DegenerateCoframe);
            }
            Ok([3.0 * c * c, 0.0, 3.0])
        }
        Model::S21 => Ok([-3.0 * v.cosh().powi(2), 0.0, 3.0]),
    }
}

/// Distance of the pulled-back Maurer–Cartan form f⁻¹df (at fixed t) from
/// span(M₀, M₁, M₂), measured entrywise on the du and dv parts.
pub fn pullback_span_residual(model: Model, u: f64, v: f64, t: f64) -> f64 {
    let [a0, a1, a2] = subgroup_generators(model);
    let (uj, vj) = coordinate_jets(u, v, 1);
    let lift = |m: &Mat5, s: &Taylor| Matrix::from_fn(|i, j| *s * m[(i, j)]);
    let g = expm(&lift(&a1, &uj))
        .matmul(&expm(&lift(&a2, &vj)))
        .matmul(&Matrix::constant(&expm5(&a0, t), 1));
    let f = lu(&g.truncate(0), PIVOT_TOL).expect("group elements are invertible");
    let basis = model_omega(model);
    let gram: [[f64; 3]; 3] = std::array::from_fn(|a| std::array::from_fn(|b| frobenius(&basis[a], &basis[b])));
    let mut worst: f64 = 0.0;
    for d in [g.d_du(), g.d_dv()] {
        let w = f.solve_matrix(&d).values();
        let rhs: [f64; 3] = std::array::from_fn(|a| frobenius(&basis[a], &w));
        let coef = crate::linalg::solve(&Matrix(gram), &rhs, PIVOT_TOL).expect("basis is independent");
        worst = worst.max(w.max_diff(&combo(&basis, &coef)));
    }
    worst
}

fn frobenius(a: &Mat5, b: &Mat5) -> f64 {
    (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| a[(i, j)] * b[(i, j)]).sum()
}
