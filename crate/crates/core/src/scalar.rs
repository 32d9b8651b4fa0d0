//! Common interface of `f64` and [`Taylor`] so the linear algebra runs on both.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::taylor::Taylor;

pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Constant term.
    fn value(&self) -> f64;
    /// A constant of the same kind (and jet degree) as `self`.
    fn lift(&self, c: f64) -> Self;
    fn scale(&self, k: f64) -> Self;
    fn try_div(&self, rhs: &Self, tol: f64) -> Result<Self>;
    fn try_sqrt(&self, tol: f64) -> Result<Self>;
}

impl Scalar for f64 {
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn lift(&self, c: f64) -> Self {
        c
    }
    #[inline]
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn try_div(&self, rhs: &Self, tol: f64) -> Result<Self> {
        if rhs.abs() <= tol {
            Err(Error::ZeroConstantTerm(*rhs))
        } else {
            Ok(self / rhs)
        }
    }
    fn try_sqrt(&self, tol: f64) -> Result<Self> {
        if *self <= tol {
            Err(Error::DomainError(format!("sqrt of {self:e}")))
        } else {
            Ok(self.sqrt())
        }
    }
}

impl Scalar for Taylor {
    #[inline]
    fn value(&self) -> f64 {
        Taylor::value(self)
    }
    #[inline]
    fn lift(&self, c: f64) -> Self {
        Taylor::lift(self, c)
    }
    #[inline]
    fn scale(&self, k: f64) -> Self {
        Taylor::scale(self, k)
    }
    fn try_div(&self, rhs: &Self, tol: f64) -> Result<Self> {
        self.checked_div(rhs, tol)
    }
    fn try_sqrt(&self, tol: f64) -> Result<Self> {
        self.sqrt(tol)
    }
}
