//! Reduced Maurer–Cartan forms with constant structure functions and the
//! algebraic system their structure equations impose.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adaptation::{MCField, SurfaceKind, Tolerances};
use crate::error::{Error, Result};
use crate::invariants::{extract_from_mc, gauss_from_table, HTable, InvariantSet};
use crate::linalg::{Mat5, Matrix};
use crate::taylor::Taylor;

/// Which reduced form the constants belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Case {
    SpaceLike { epsilon: i8 },
    TimeLike,
}

impl Case {
    pub fn kind(self) -> SurfaceKind {
        match self {
            Case::SpaceLike { .. } => SurfaceKind::SpaceLike,
            Case::TimeLike => SurfaceKind::TimeLike,
        }
    }

    pub fn epsilon(self) -> Option<i8> {
        match self {
            Case::SpaceLike { epsilon } => Some(epsilon),
            Case::TimeLike => None,
        }
    }

    /// `spacelike+`, `spacelike-` or `timelike`.
    pub fn tag(self) -> &'static str {
        match self {
            Case::SpaceLike { epsilon } if epsilon > 0 => "spacelike+",
            Case::SpaceLike { .. } => "spacelike-",
            Case::TimeLike => "timelike",
        }
    }

    pub fn names(self) -> &'static [&'static str; 14] {
        match self {
            Case::SpaceLike { .. } => &SPACE_LIKE_ORDER,
            Case::TimeLike => &TIME_LIKE_ORDER,
        }
    }

    fn slot(self) -> usize {
        match self {
            Case::SpaceLike { epsilon } if epsilon > 0 => 0,
            Case::SpaceLike { .. } => 1,
            Case::TimeLike => 2,
        }
    }
}

/// Order of [`ConstantInvariantVector::values`] in the space-like case.
pub const SPACE_LIKE_ORDER: [&str; 14] = [
    "h3_31", "h3_32", "h3_41", "h3_42", "h4_31", "h4_32", "h4_41", "h4_42", "h1_31", "h1_32", "h1_41", "h1_42",
    "h2_32", "h2_42",
];
/// Order of [`ConstantInvariantVector::values`] in the time-like case.
pub const TIME_LIKE_ORDER: [&str; 14] = [
    "h3_31", "h3_32", "h3_41", "h3_42", "h4_31", "h4_32", "h4_41", "h4_42", "h1_31", "h1_32", "h1_41", "h1_42",
    "h2_31", "h2_41",
];

/// The fourteen constants h^i_jk of one case.
///
/// `values[k]` is the constant named `case.names()[k]`; the first eight are
/// h³ and h⁴, the last six the level-3 functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantInvariantVector {
    pub case: Case,
    pub values: [f64; 14],
}

impl ConstantInvariantVector {
    pub fn new(case: Case, values: [f64; 14]) -> Self {
        ConstantInvariantVector { case, values }
    }

    pub fn zero(case: Case) -> Self {
        Self::new(case, [0.0; 14])
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.case.names().iter().position(|n| *n == name).map(|k| self.values[k])
    }

    /// Builds a vector from named entries; unnamed constants are zero.
    pub fn from_named(case: Case, entries: &[(&str, f64)]) -> Result<Self> {
        let mut c = Self::zero(case);
        for (name, v) in entries {
            let k = case
                .names()
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
            c.values[k] = *v;
        }
        Ok(c)
    }

    pub fn table(&self) -> HTable {
        HTable(self.case.names().iter().copied().zip(self.values).collect())
    }

    /// (M₀, M₁, M₂) of the reduced form Ω = M₀α + M₁ω¹₀ + M₂ω²₀.
    pub fn omega(&self) -> [Mat5; 3] {
        reduced_omega(self.case, &self.values)
    }

    /// K from the Gauss equation of the case.
    pub fn gauss_curvature(&self) -> f64 {
        gauss_from_table(&self.table(), self.case.kind(), self.case.epsilon())
    }

    /// Runs the invariant extraction on the constant form, with ω¹₀ = du, ω²₀ = dv.
    pub fn invariant_set(&self) -> Result<InvariantSet> {
        let [_, m1, m2] = self.omega();
        let mc = MCField {
            du: Matrix::constant(&m1, 0),
            dv: Matrix::constant(&m2, 0),
            coframe: Matrix([
                [Taylor::constant(0, 1.0), Taylor::constant(0, 0.0)],
                [Taylor::constant(0, 0.0), Taylor::constant(0, 1.0)],
            ]),
        };
        extract_from_mc(&mc, self.case.kind(), &Tolerances::default())
    }
}

/// The reduced Maurer–Cartan form of a 3-adapted frame with constant h^i_jk.
pub fn reduced_omega(case: Case, c: &[f64; 14]) -> [Mat5; 3] {
    let [h331, h332, h341, h342, h431, h432, h441, h442, h131, h132, h141, h142, x, y] = *c;
    match case {
        Case::SpaceLike { epsilon } => {
            let e = epsilon as f64;
            let (h232, h242) = (x, y);
            let mut m0 = Mat5::zeros();
            m0[(1, 2)] = 1.0;
            m0[(2, 1)] = -1.0;
            m0[(3, 4)] = 2.0;
            m0[(4, 3)] = -2.0;
            let p = 0.5 * (h331 + h342);
            let q = 0.5 * (h332 - h341);
            let m1 = Matrix([
                [0.0, e, 0.0, 0.0, 0.0],
                [1.0, p - h432 + h441, q, h131, h141],
                [0.0, q, p, h132, h142],
                [0.0, 1.0, 0.0, h331, h341],
                [0.0, 0.0, 1.0, h431, h441],
            ]);
            let m2 = Matrix([
                [0.0, 0.0, e, 0.0, 0.0],
                [0.0, q, p, h132, h142],
                [1.0, p, q + h431 + h442, h232, h242],
                [0.0, 0.0, -1.0, h332, h342],
                [0.0, 1.0, 0.0, h432, h442],
            ]);
            [m0, m1, m2]
        }
        Case::TimeLike => {
            let (h231, h241) = (x, y);
            let mut m0 = Mat5::zeros();
            for (i, d) in [(1, 1.0), (2, -1.0), (3, 2.0), (4, -2.0)] {
                m0[(i, i)] = d;
            }
            let m1 = Matrix([
                [0.0, 0.0, 1.0, 0.0, 0.0],
                [1.0, h441, h332, h131, h141],
                [0.0, -h432, h441, h231, h241],
                [0.0, 1.0, 0.0, h331, h341],
                [0.0, 0.0, 0.0, h431, h441],
            ]);
            let m2 = Matrix([
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, h332, -h341, h132, h142],
                [1.0, h441, h332, h131, h141],
                [0.0, 0.0, 0.0, h332, h342],
                [0.0, 0.0, 1.0, h432, h442],
            ]);
            [m0, m1, m2]
        }
    }
}

/// All 75 wedge coefficients of dΩ + Ω∧Ω, grouped by α∧ω¹, α∧ω², ω¹∧ω².
///
/// With constant coefficients, dω¹₀ and dω²₀ are fixed by the column-0
/// entries and dα = Kω¹₀∧ω²₀ with K from the Gauss equation.
fn wedge_coefficients(case: Case, c: &[f64; 14]) -> [f64; 75] {
    let [m0, m1, m2] = reduced_omega(case, c);
    let k = ConstantInvariantVector::new(case, *c).gauss_curvature();
    let (r01, r02) = match case {
        Case::SpaceLike { .. } => (m2.add(&m0.bracket(&m1)), m0.bracket(&m2).sub(&m1)),
        Case::TimeLike => (m0.bracket(&m1).sub(&m1), m2.add(&m0.bracket(&m2))),
    };
    let r12 = m0.scale(k).add(&m1.bracket(&m2));
    let mut out = [0.0; 75];
    for (b, r) in [r01, r02, r12].iter().enumerate() {
        for i in 0..5 {
            for j in 0..5 {
                out[25 * b + 5 * i + j] = r[(i, j)];
            }
        }
    }
    out
}

/// Indices of the wedge coefficients that are not identically zero, keeping
/// one representative of each family equal up to sign.
fn equation_indices(case: Case) -> &'static [usize] {
    static CACHE: [OnceLock<Vec<usize>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[case.slot()].get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let probes: Vec<[f64; 75]> = (0..4)
            .map(|_| {
                let mut c = [0.0; 14];
                c.iter_mut().for_each(|x| *x = rng.gen_range(-2.0..2.0));
                wedge_coefficients(case, &c)
            })
            .collect();
        let same = |a: usize, b: usize, s: f64| probes.iter().all(|p| (p[a] - s * p[b]).abs() < 1e-9);
        let mut keep: Vec<usize> = Vec::new();
        for e in 0..75 {
            if probes.iter().all(|p| p[e].abs() < 1e-12) {
                continue;
            }
            if keep.iter().any(|&k| same(e, k, 1.0) || same(e, k, -1.0)) {
                continue;
            }
            keep.push(e);
        }
        keep
    })
}

/// Number of independent scalar equations for the case.
pub fn equation_count(case: Case) -> usize {
    equation_indices(case).len()
}

/// Labels of the equations, e.g. `a^w1[2][4]` for the α∧ω¹ coefficient of entry (2, 4).
pub fn equation_labels(case: Case) -> Vec<String> {
    const PAIR: [&str; 3] = ["a^w1", "a^w2", "w1^w2"];
    equation_indices(case)
        .iter()
        .map(|&e| format!("{}[{}][{}]", PAIR[e / 25], (e % 25) / 5, e % 5))
        .collect()
}

/// Residuals of the structure equations for constant h^i_jk.
pub fn structure_residual(c: &ConstantInvariantVector, case: Case) -> Result<Vec<f64>> {
    if c.case != case {
        return Err(Error::CaseMismatch(format!(
            "constants are {} but {} was requested",
            c.case.tag(),
            case.tag()
        )));
    }
    Ok(residual_unchecked(case, &c.values))
}

pub(crate) fn residual_unchecked(case: Case, values: &[f64; 14]) -> Vec<f64> {
    let w = wedge_coefficients(case, values);
    equation_indices(case).iter().map(|&e| w[e]).collect()
}

/// Constants of the three homogeneous examples.
pub fn known_constants(case: Case) -> ConstantInvariantVector {
    let third = 1.0 / 3.0;
    let entries: Vec<(&str, f64)> = match case {
        Case::SpaceLike { epsilon } => {
            let s = epsilon as f64;
            vec![("h1_31", s * third), ("h1_42", s * third), ("h2_32", -s * third)]
        }
        Case::TimeLike => vec![("h1_32", 2.0 * third), ("h2_41", 2.0 * third)],
    };
    ConstantInvariantVector::from_named(case, &entries).expect("names belong to the case")
}
