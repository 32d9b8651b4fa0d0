//! Small fixed-size linear algebra over any [`Scalar`]: LU solves, determinants,
//! the matrix exponential and the 2×2 symmetric primitives used for gauge fixing.
//!
//! Pivot and branch decisions look only at constant terms, so a degree-0 jet
//! follows exactly the same arithmetic as the plain `f64` path.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::taylor::Taylor;

/// Relative pivot threshold used when none is supplied.
pub const PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<S, const N: usize>(pub [[S; N]; N]);

pub type Mat2 = Matrix<f64, 2>;
pub type Mat5 = Matrix<f64, 5>;
pub type Mat2T = Matrix<Taylor, 2>;
pub type Mat5T = Matrix<Taylor, 5>;

impl<S, const N: usize> Index<(usize, usize)> for Matrix<S, N> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.0[i][j]
    }
}

impl<S, const N: usize> IndexMut<(usize, usize)> for Matrix<S, N> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.0[i][j]
    }
}

impl<S: Scalar, const N: usize> Matrix<S, N> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Identity whose entries have the kind (and jet degree) of `proto`.
    pub fn identity_like(proto: S) -> Self {
        Self::from_fn(|i, j| proto.lift(if i == j { 1.0 } else { 0.0 }))
    }

    pub fn zero_like(proto: S) -> Self {
        Self::from_fn(|_, _| proto.lift(0.0))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = self.0[i][0] * rhs.0[0][j];
            for k in 1..N {
                acc = acc + self.0[i][k] * rhs.0[k][j];
            }
            acc
        })
    }

    pub fn mul_vec(&self, x: &[S; N]) -> [S; N] {
        std::array::from_fn(|i| {
            let mut acc = self.0[i][0] * x[0];
            for k in 1..N {
                acc = acc + self.0[i][k] * x[k];
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j].scale(k))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T, N> {
        Matrix::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn col(&self, j: usize) -> [S; N] {
        std::array::from_fn(|i| self.0[i][j])
    }

    /// Matrix of constant terms.
    pub fn values(&self) -> Matrix<f64, N> {
        Matrix::from_fn(|i, j| self.0[i][j].value())
    }

    /// Maximum column sum of absolute constant terms.
    pub fn norm1_value(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.0[i][j].value().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_value(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m, x| m.max(x.value().abs()))
    }

    /// Commutator `self·rhs − rhs·self`.
    pub fn bracket(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }
}

impl<const N: usize> Matrix<f64, N> {
    pub fn identity() -> Self {
        Self::identity_like(0.0)
    }
    pub fn zeros() -> Self {
        Self::zero_like(0.0)
    }
    /// Largest absolute entry of `self − rhs`.
    pub fn max_diff(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs_value()
    }
}

impl<const N: usize> Matrix<Taylor, N> {
    /// Lifts a real matrix to constant jets of the given degree.
    pub fn constant(m: &Matrix<f64, N>, degree: usize) -> Self {
        Self::from_fn(|i, j| Taylor::constant(degree, m.0[i][j]))
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_fn(|i, j| self.0[i][j].truncate(degree))
    }

    pub fn d_du(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].d_du())
    }

    pub fn d_dv(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].d_dv())
    }

    pub fn degree(&self) -> usize {
        self.0[0][0].degree()
    }
}

/// LU factorization with partial pivoting on constant terms.
#[derive(Clone, Debug)]
pub struct Lu<S, const N: usize> {
    lu: [[S; N]; N],
    perm: [usize; N],
    sign: f64,
}

/// Factorizes `a`; fails when a pivot falls below `tol` times the largest
/// constant-term entry.
pub fn lu<S: Scalar, const N: usize>(a: &Matrix<S, N>, tol: f64) -> Result<Lu<S, N>> {
    let mut m = a.0;
    let mut perm: [usize; N] = std::array::from_fn(|i| i);
    let mut sign = 1.0;
    let scale = a.max_abs_value();
    let thresh = tol * scale;
    for k in 0..N {
        let mut p = k;
        let mut best = m[k][k].value().abs();
        for i in k + 1..N {
            let x = m[i][k].value().abs();
            if x > best {
                best = x;
                p = i;
            }
        }
        if best <= thresh || best == 0.0 {
            return Err(Error::SingularMatrix(best));
        }
        if p != k {
            m.swap(p, k);
            perm.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..N {
            let f = m[i][k] / m[k][k];
            m[i][k] = f;
            for j in k + 1..N {
                m[i][j] = m[i][j] - f * m[k][j];
            }
        }
    }
    Ok(Lu { lu: m, perm, sign })
}

impl<S: Scalar, const N: usize> Lu<S, N> {
    pub fn solve(&self, b: &[S; N]) -> [S; N] {
        let mut x: [S; N] = std::array::from_fn(|i| b[self.perm[i]]);
        for i in 0..N {
            for k in 0..i {
                x[i] = x[i] - self.lu[i][k] * x[k];
            }
        }
        for i in (0..N).rev() {
            for k in i + 1..N {
                x[i] = x[i] - self.lu[i][k] * x[k];
            }
            x[i] = x[i] / self.lu[i][i];
        }
        x
    }

    /// Solves `A·X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<S, N>) -> Matrix<S, N> {
        let mut out = *b;
        for j in 0..N {
            let x = self.solve(&b.col(j));
            for i in 0..N {
                out.0[i][j] = x[i];
            }
        }
        out
    }

    pub fn inverse(&self) -> Matrix<S, N> {
        let proto = self.lu[0][0];
        self.solve_matrix(&Matrix::identity_like(proto))
    }

    pub fn det(&self) -> S {
        let mut d = self.lu[0][0].scale(self.sign);
        for i in 1..N {
            d = d * self.lu[i][i];
        }
        d
    }
}

/// Solves `A·x = b`.
pub fn solve<S: Scalar, const N: usize>(a: &Matrix<S, N>, b: &[S; N], tol: f64) -> Result<[S; N]> {
    Ok(lu(a, tol)?.solve(b))
}

pub fn inverse<S: Scalar, const N: usize>(a: &Matrix<S, N>, tol: f64) -> Result<Matrix<S, N>> {
    Ok(lu(a, tol)?.inverse())
}

/// Determinant; zero when elimination meets an exactly vanishing pivot.
pub fn det<S: Scalar, const N: usize>(a: &Matrix<S, N>) -> S {
    match lu(a, 0.0) {
        Ok(f) => f.det(),
        Err(_) => a.0[0][0].lift(0.0),
    }
}

pub fn det2<S: Scalar>(m: &Matrix<S, 2>) -> S {
    m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0]
}

pub fn inverse2<S: Scalar>(m: &Matrix<S, 2>, tol: f64) -> Result<Matrix<S, 2>> {
    let d = det2(m);
    let scale = m.max_abs_value();
    if d.value().abs() <= tol * scale * scale || scale == 0.0 {
        return Err(Error::SingularMatrix(d.value()));
    }
    let [[a, b], [c, e]] = m.0;
    Ok(Matrix([[e / d, -b / d], [-c / d, a / d]]))
}

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

const PADE6: [f64; 7] = [
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

/// Matrix exponential: scaling until ‖M‖₁ ≤ 0.5, diagonal Padé(6,6), squaring.
pub fn expm<S: Scalar, const N: usize>(m: &Matrix<S, N>) -> Matrix<S, N> {
    let norm = m.norm1_value();
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 0.5 {
        s += 1;
    }
    let x = m.scale(0.5f64.powi(s as i32));
    let id = Matrix::identity_like(m.0[0][0]);
    let mut num = id.scale(PADE6[0]);
    let mut den = id.scale(PADE6[0]);
    let mut pow = id;
    for (k, c) in PADE6.iter().enumerate().skip(1) {
        pow = pow.matmul(&x);
        let term = pow.scale(*c);
        num = num.add(&term);
        den = if k % 2 == 0 { den.add(&term) } else { den.sub(&term) };
    }
    let mut r = lu(&den, 0.0)
        .expect("Padé denominator is invertible for ‖X‖₁ ≤ 0.5")
        .solve_matrix(&num);
    for _ in 0..s {
        r = r.matmul(&r);
    }
    r
}

/// `exp(t·M)` for a real 5×5 matrix.
pub fn expm5(m: &Mat5, t: f64) -> Mat5 {
    expm(&m.scale(t))
}

/// Symmetric 2×2 matrix `[[a, b], [b, c]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sym2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

pub type Sym2T = Sym2<Taylor>;

impl<S: Scalar> Sym2<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Sym2 { a, b, c }
    }

    pub fn det(&self) -> S {
        self.a * self.c - self.b * self.b
    }

    pub fn trace(&self) -> S {
        self.a + self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        Sym2::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Sym2::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }

    pub fn scale(&self, k: f64) -> Self {
        Sym2::new(self.a.scale(k), self.b.scale(k), self.c.scale(k))
    }

    pub fn mul_scalar(&self, k: S) -> Self {
        Sym2::new(self.a * k, self.b * k, self.c * k)
    }

    pub fn to_matrix(&self) -> Matrix<S, 2> {
        Matrix([[self.a, self.b], [self.b, self.c]])
    }

    /// `Aᵀ·h·A`.
    pub fn congruence(&self, m: &Matrix<S, 2>) -> Self {
        let [[p, q], [r, s]] = m.0;
        let (a, b, c) = (self.a, self.b, self.c);
        Sym2::new(
            a * p * p + (b * p * r).scale(2.0) + c * r * r,
            a * p * q + b * (p * s + r * q) + c * r * s,
            a * q * q + (b * q * s).scale(2.0) + c * s * s,
        )
    }

    pub fn values(&self) -> Sym2<f64> {
        Sym2::new(self.a.value(), self.b.value(), self.c.value())
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let d = self.det();
        let scale = self.max_abs_value();
        if d.value().abs() <= tol * scale * scale || scale == 0.0 {
            return Err(Error::SingularMatrix(d.value()));
        }
        Ok(Sym2::new(self.c / d, -self.b / d, self.a / d))
    }

    pub fn max_abs_value(&self) -> f64 {
        self.a.value().abs().max(self.b.value().abs()).max(self.c.value().abs())
    }

    /// Coordinates (a, b, c).
    pub fn to_array(&self) -> [S; 3] {
        [self.a, self.b, self.c]
    }
}

impl Sym2<f64> {
    pub fn identity() -> Self {
        Sym2::new(1.0, 0.0, 1.0)
    }
    /// diag(1, −1)
    pub fn hyperbolic() -> Self {
        Sym2::new(1.0, 0.0, -1.0)
    }
    /// [[0, 1], [1, 0]]
    pub fn offdiag() -> Self {
        Sym2::new(0.0, 1.0, 0.0)
    }
    pub fn e11() -> Self {
        Sym2::new(1.0, 0.0, 0.0)
    }
    pub fn e22() -> Self {
        Sym2::new(0.0, 0.0, 1.0)
    }
    pub fn lift(&self, degree: usize) -> Sym2T {
        Sym2::new(
            Taylor::constant(degree, self.a),
            Taylor::constant(degree, self.b),
            Taylor::constant(degree, self.c),
        )
    }
    pub fn max_diff(&self, o: &Self) -> f64 {
        (self.a - o.a).abs().max((self.b - o.b).abs()).max((self.c - o.c).abs())
    }
}

/// Principal square root `S = (M + √det·I)/√(tr + 2√det)` of a positive
/// definite symmetric matrix.
pub fn spd2_sqrt<S: Scalar>(m: &Sym2<S>, tol: f64) -> Result<Sym2<S>> {
    let d = m.det();
    let tr = m.trace();
    let scale = m.max_abs_value();
    if !(d.value() > tol * scale * scale && tr.value() > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let s = d.try_sqrt(0.0)?;
    let t = (tr + s.scale(2.0)).try_sqrt(0.0)?;
    Ok(Sym2::new((m.a + s) / t, m.b / t, (m.c + s) / t))
}

/// Two null directions of an indefinite form `n`, with `w₁ᵀ n w₂ = 1`.
///
/// Each direction is taken with its first significant component positive and
/// the pair is ordered lexicographically descending.
pub fn null_basis2<S: Scalar>(n: &Sym2<S>, tol: f64) -> Result<([S; 2], [S; 2])> {
    let (a, b, c) = (n.a, n.b, n.c);
    let disc = b * b - a * c;
    let scale = n.max_abs_value();
    if !(disc.value() > tol * scale * scale) {
        return Err(Error::NotIndefinite);
    }
    let root = disc.try_sqrt(0.0)?;
    let pick = |sigma: f64| -> [S; 2] {
        let r = root.scale(sigma);
        let v1 = [-b + r, a];
        let v2 = [c, -b - r];
        let n1 = v1[0].value().hypot(v1[1].value());
        let n2 = v2[0].value().hypot(v2[1].value());
        let w = if n1 >= n2 { v1 } else { v2 };
        let norm = n1.max(n2);
        let lead = if w[0].value().abs() > 1e-12 * norm {
            w[0].value()
        } else {
            w[1].value()
        };
        if lead < 0.0 {
            [-w[0], -w[1]]
        } else {
            w
        }
    };
    let mut w1 = pick(1.0);
    let mut w2 = pick(-1.0);
    let key = |w: &[S; 2]| (w[0].value(), w[1].value());
    if key(&w1) < key(&w2) {
        std::mem::swap(&mut w1, &mut w2);
    }
    let k = a * w1[0] * w2[0] + b * (w1[0] * w2[1] + w1[1] * w2[0]) + c * w1[1] * w2[1];
    let sign = if k.value() < 0.0 { -1.0 } else { 1.0 };
    let inv = k.scale(sign).try_sqrt(0.0)?;
    let w1 = [w1[0] / inv, w1[1] / inv];
    let w2 = [(w2[0] / inv).scale(sign), (w2[1] / inv).scale(sign)];
    Ok((w1, w2))
}

/// Q(h) = −det h.
pub fn q_form<S: Scalar>(h: &Sym2<S>) -> S {
    -h.det()
}

/// Polarization of [`q_form`]: B(h₁, h₂) = b₁b₂ − (a₁c₂ + a₂c₁)/2.
pub fn q_polar<S: Scalar>(h1: &Sym2<S>, h2: &Sym2<S>) -> S {
    -(h1.add(h2).det() - h1.det() - h2.det()).scale(0.5)
}

/// Covector of B(·, h) in (a, b, c) coordinates.
pub fn q_covector<S: Scalar>(h: &Sym2<S>) -> [S; 3] {
    [h.c.scale(-0.5), h.b, h.a.scale(-0.5)]
}

/// The B-orthocomplement of span(h₁, h₂), as a symmetric matrix.
pub fn q_orthocomplement<S: Scalar>(h1: &Sym2<S>, h2: &Sym2<S>) -> Sym2<S> {
    let p = q_covector(h1);
    let q = q_covector(h2);
    Sym2::new(
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )
}
