//! State vector, flux vector and admissibility predicates.

use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default absolute margin required on `gq - fb` for strict admissibility.
pub const DEFAULT_HYPERBOLICITY_MARGIN: f64 = 1e-10;

/// Primitive (and conserved) variables: lower film height `f`, lower
/// concentration gradient `b`, upper film height `g`, upper concentration
/// gradient `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State<T = f64> {
    pub f: T,
    pub b: T,
    pub g: T,
    pub q: T,
}

/// Flux vector, ordered like [`State`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxVector<T = f64>(pub [T; 4]);

/// How strictly a state must lie inside the hyperbolic region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdmissibilityLevel {
    /// All four components positive.
    Positive,
    /// Positive and `gq - fb` above the hyperbolicity margin.
    Strict,
}

impl<T: Scalar> State<T> {
    pub fn new(f: T, b: T, g: T, q: T) -> Self {
        Self { f, b, g, q }
    }

    pub fn from_array(a: [T; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [T; 4] {
        [self.f, self.b, self.g, self.q]
    }

    pub fn to_f64(self) -> [f64; 4] {
        self.to_array().map(Scalar::as_f64)
    }

    /// Lower-layer product `fb`.
    #[inline]
    pub fn lower_product(&self) -> T {
        self.f * self.b
    }

    /// Upper-layer product `gq`.
    #[inline]
    pub fn upper_product(&self) -> T {
        self.g * self.q
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    pub fn is_admissible(&self, level: AdmissibilityLevel, margin: T) -> bool {
        is_admissible(self, level, margin)
    }

    /// Fails with [`Error::NonPositiveState`] unless every component is
    /// finite and strictly positive.
    pub fn ensure_positive(&self) -> Result<()> {
        if self.is_finite() && is_admissible(self, AdmissibilityLevel::Positive, T::zero()) {
            Ok(())
        } else {
            Err(Error::NonPositiveState {
                state: self.to_f64(),
            })
        }
    }

    /// `gq - fb`, positive exactly on the strictly hyperbolic set.
    pub fn hyperbolicity_gap(&self) -> T {
        self.upper_product() - self.lower_product()
    }

    pub fn max_abs(&self) -> T {
        self.to_array()
            .iter()
            .fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn cast<S: Scalar>(self) -> State<S> {
        State::from_array(self.to_array().map(|x| S::lit(x.as_f64())))
    }
}

/// Membership test for the positive cone and the strictly hyperbolic set.
pub fn is_admissible<T: Scalar>(u: &State<T>, level: AdmissibilityLevel, margin: T) -> bool {
    let positive = u.to_array().iter().all(|&x| x > T::zero());
    match level {
        AdmissibilityLevel::Positive => positive,
        AdmissibilityLevel::Strict => positive && u.hyperbolicity_gap() > margin,
    }
}

impl<T: Scalar> Add for State<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.f + rhs.f,
            self.b + rhs.b,
            self.g + rhs.g,
            self.q + rhs.q,
        )
    }
}

impl<T: Scalar> Sub for State<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.f - rhs.f,
            self.b - rhs.b,
            self.g - rhs.g,
            self.q - rhs.q,
        )
    }
}

impl<T: Scalar> Mul<T> for State<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.f * s, self.b * s, self.g * s, self.q * s)
    }
}

impl<T: Scalar> FluxVector<T> {
    pub fn zero() -> Self {
        Self([T::zero(); 4])
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl<T: Scalar> Index<usize> for FluxVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> Add for FluxVector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<T: Scalar> Sub for FluxVector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<T: Scalar> Mul<T> for FluxVector<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self(self.0.map(|x| x * s))
    }
}
