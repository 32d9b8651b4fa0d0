//! Truncated bivariate Taylor polynomials in the expansion variables (u, v).
//!
//! A [`Taylor`] of degree `d` stores the coefficients `c_ab` of `u^a v^b` for
//! `a + b <= d` in triangular order: all terms of total degree 0, then 1, and so
//! on, with increasing power of `v` inside each block.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 8;
/// Coefficient storage for [`MAX_DEGREE`].
pub const MAX_COEFFS: usize = (MAX_DEGREE + 1) * (MAX_DEGREE + 2) / 2;

/// Number of coefficients of a degree-`d` jet.
pub const fn n_coeffs(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Storage index of `u^a v^b`.
#[inline]
pub const fn index(a: usize, b: usize) -> usize {
    let n = a + b;
    n * (n + 1) / 2 + b
}

/// Truncated Taylor polynomial in two variables.
///
/// Binary operations between jets of different degree truncate to the smaller
/// one, which is the only degree at which the result is known.
#[derive(Clone, Copy)]
pub struct Taylor {
    degree: u8,
    c: [f64; MAX_COEFFS],
}

impl Taylor {
    /// The zero jet.
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Taylor {
            degree: degree as u8,
            c: [0.0; MAX_COEFFS],
        }
    }

    pub fn constant(degree: usize, value: f64) -> Self {
        let mut t = Self::zero(degree);
        t.c[0] = value;
        t
    }

    /// Jet of `u0 + u`.
    pub fn var_u(degree: usize, u0: f64) -> Self {
        let mut t = Self::constant(degree, u0);
        if degree >= 1 {
            t.c[index(1, 0)] = 1.0;
        }
        t
    }

    /// Jet of `v0 + v`.
    pub fn var_v(degree: usize, v0: f64) -> Self {
        let mut t = Self::constant(degree, v0);
        if degree >= 1 {
            t.c[index(0, 1)] = 1.0;
        }
        t
    }

    /// Builds a jet from triangular-order coefficients.
    pub fn from_coeffs(degree: usize, coeffs: &[f64]) -> Self {
        assert_eq!(coeffs.len(), n_coeffs(degree), "coefficient count");
        let mut t = Self::zero(degree);
        t.c[..coeffs.len()].copy_from_slice(coeffs);
        t
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..n_coeffs(self.degree())]
    }

    /// Coefficient of `u^a v^b` (zero above the truncation degree).
    pub fn coeff(&self, a: usize, b: usize) -> f64 {
        if a + b > self.degree() {
            0.0
        } else {
            self.c[index(a, b)]
        }
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, value: f64) {
        assert!(a + b <= self.degree());
        self.c[index(a, b)] = value;
    }

    /// Partial derivative `∂^{a+b} / ∂u^a ∂v^b` at the base point.
    pub fn derivative(&self, a: usize, b: usize) -> f64 {
        self.coeff(a, b) * factorial(a) * factorial(b)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let d = degree.min(self.degree());
        let mut t = Self::zero(d);
        let n = n_coeffs(d);
        t.c[..n].copy_from_slice(&self.c[..n]);
        t
    }

    /// The constant `value` at this jet's degree.
    pub fn lift(&self, value: f64) -> Self {
        Self::constant(self.degree(), value)
    }

    /// ∂/∂u; the result has degree one less (degree 0 stays 0 and is zeroed).
    pub fn d_du(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        let mut t = Self::zero(d - 1);
        for n in 0..d {
            for b in 0..=n {
                let a = n - b;
                t.c[index(a, b)] = (a + 1) as f64 * self.c[index(a + 1, b)];
            }
        }
        t
    }

    /// ∂/∂v; see [`Taylor::d_du`].
    pub fn d_dv(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        let mut t = Self::zero(d - 1);
        for n in 0..d {
            for b in 0..=n {
                let a = n - b;
                t.c[index(a, b)] = (b + 1) as f64 * self.c[index(a, b + 1)];
            }
        }
        t
    }

    /// Evaluates the polynomial at the offset (du, dv) from the base point.
    pub fn eval(&self, du: f64, dv: f64) -> f64 {
        let d = self.degree();
        let mut acc = 0.0;
        for n in (0..=d).rev() {
            let mut block = 0.0;
            for b in 0..=n {
                block += self.c[index(n - b, b)] * du.powi((n - b) as i32) * dv.powi(b as i32);
            }
            acc += block;
        }
        acc
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut t = *self;
        for x in t.c[..n_coeffs(self.degree())].iter_mut() {
            *x *= k;
        }
        t
    }

    /// Quotient with a check on the divisor's constant term.
    pub fn checked_div(&self, rhs: &Self, tol: f64) -> Result<Self> {
        if rhs.value().abs() <= tol {
            return Err(Error::ZeroConstantTerm(rhs.value()));
        }
        Ok(self.div_unchecked(rhs))
    }

    fn div_unchecked(&self, rhs: &Self) -> Self {
        let d = self.degree().min(rhs.degree());
        let mut q = Self::zero(d);
        let b00 = rhs.c[0];
        for n in 0..=d {
            for j in 0..=n {
                let i = n - j;
                let mut acc = self.c[index(i, j)];
                // all earlier quotient terms that contribute to u^i v^j
                for n1 in 0..n {
                    for j1 in 0..=n1 {
                        let i1 = n1 - j1;
                        if i1 <= i && j1 <= j {
                            acc -= q.c[index(i1, j1)] * rhs.c[index(i - i1, j - j1)];
                        }
                    }
                }
                q.c[index(i, j)] = acc / b00;
            }
        }
        q
    }

    /// Σ_k series[k]·(self − self₀₀)^k, evaluated by Horner's rule.
    ///
    /// `series[k]` must be the k-th Taylor coefficient of the outer function at
    /// the constant term; the constant term of the result is `series[0]`.
    pub fn compose(&self, series: &[f64]) -> Self {
        let d = self.degree();
        assert!(series.len() > d);
        let mut h = *self;
        h.c[0] = 0.0;
        let mut r = self.lift(series[d]);
        for k in (0..d).rev() {
            r = r * h;
            r.c[0] += series[k];
        }
        r
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        let series: Vec<f64> = (0..=self.degree()).map(|k| e / factorial(k)).collect();
        self.compose(&series)
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose(&cyclic_series([s, c, -s, -c], self.degree()))
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose(&cyclic_series([c, -s, -c, s], self.degree()))
    }

    pub fn sinh(&self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.compose(&cyclic_series([s, c, s, c], self.degree()))
    }

    pub fn cosh(&self) -> Self {
        let x = self.value();
        let (s, c) = (x.sinh(), x.cosh());
        self.compose(&cyclic_series([c, s, c, s], self.degree()))
    }

    /// Principal square root; the constant term must exceed `tol`.
    pub fn sqrt(&self, tol: f64) -> Result<Self> {
        let x = self.value();
        if x <= tol {
            return Err(Error::DomainError(format!("sqrt of {x:e}")));
        }
        let root = x.sqrt();
        Ok(self.compose(&power_series(root, x, 0.5, self.degree())))
    }

    /// Reciprocal square root; the constant term must exceed `tol`.
    pub fn rsqrt(&self, tol: f64) -> Result<Self> {
        let x = self.value();
        if x <= tol {
            return Err(Error::DomainError(format!("rsqrt of {x:e}")));
        }
        let r = 1.0 / x.sqrt();
        Ok(self.compose(&power_series(r, x, -0.5, self.degree())))
    }

    /// Integer power; negative exponents divide and check the constant term.
    pub fn powi(&self, n: i32, tol: f64) -> Result<Self> {
        let mut acc = self.lift(1.0);
        let mut base = *self;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            self.lift(1.0).checked_div(&acc, tol)
        } else {
            Ok(acc)
        }
    }
}

fn cyclic_series(cycle: [f64; 4], degree: usize) -> Vec<f64> {
    (0..=degree).map(|k| cycle[k % 4] / factorial(k)).collect()
}

/// Coefficients of (x + h)^p in h, given f0 = x^p.
fn power_series(f0: f64, x: f64, p: f64, degree: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut coef = f0;
    out.push(coef);
    for k in 1..=degree {
        coef *= (p - (k - 1) as f64) / (k as f64 * x);
        out.push(coef);
    }
    out
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

impl fmt::Debug for Taylor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Taylor(d={}; {:?})", self.degree, self.coeffs())
    }
}

impl PartialEq for Taylor {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs() == other.coeffs()
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        let d = self.degree().min(rhs.degree());
        let mut t = Self::zero(d);
        for i in 0..n_coeffs(d) {
            t.c[i] = self.c[i] + rhs.c[i];
        }
        t
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        let d = self.degree().min(rhs.degree());
        let mut t = Self::zero(d);
        for i in 0..n_coeffs(d) {
            t.c[i] = self.c[i] - rhs.c[i];
        }
        t
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(self) -> Taylor {
        let mut t = self;
        for x in t.c[..n_coeffs(self.degree())].iter_mut() {
            *x = -*x;
        }
        t
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        let d = self.degree().min(rhs.degree());
        let mut t = Self::zero(d);
        for n1 in 0..=d {
            for b1 in 0..=n1 {
                let x = self.c[index(n1 - b1, b1)];
                if x == 0.0 {
                    continue;
                }
                for n2 in 0..=(d - n1) {
                    let n = n1 + n2;
                    let base = n * (n + 1) / 2 + b1;
                    let src = n2 * (n2 + 1) / 2;
                    for b2 in 0..=n2 {
                        t.c[base + b2] += x * rhs.c[src + b2];
                    }
                }
            }
        }
        t
    }
}

impl Div for Taylor {
    type Output = Taylor;
    /// Unchecked quotient; see [`Taylor::checked_div`].
    fn div(self, rhs: Taylor) -> Taylor {
        self.div_unchecked(&rhs)
    }
}

impl Add<f64> for Taylor {
    type Output = Taylor;
    fn add(self, rhs: f64) -> Taylor {
        let mut t = self;
        t.c[0] += rhs;
        t
    }
}

impl Sub<f64> for Taylor {
    type Output = Taylor;
    fn sub(self, rhs: f64) -> Taylor {
        let mut t = self;
        t.c[0] -= rhs;
        t
    }
}

impl Mul<f64> for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: f64) -> Taylor {
        self.scale(rhs)
    }
}

impl AddAssign for Taylor {
    fn add_assign(&mut self, rhs: Taylor) {
        *self = *self + rhs;
    }
}

impl SubAssign for Taylor {
    fn sub_assign(&mut self, rhs: Taylor) {
        *self = *self - rhs;
    }
}

impl MulAssign for Taylor {
    fn mul_assign(&mut self, rhs: Taylor) {
        *self = *self * rhs;
    }
}

/// Jets of the coordinate functions `u0 + u` and `v0 + v`.
pub fn coordinate_jets(u0: f64, v0: f64, degree: usize) -> (Taylor, Taylor) {
    (Taylor::var_u(degree, u0), Taylor::var_v(degree, v0))
}
