//! Flux, Jacobian, closed-form eigenstructure and the Riemann-invariant
//! coordinate change `(f, b, g, q) <-> (xi, u, tau, eta)`.
//!
//! The Jacobian is block lower triangular, so every quantity here is an
//! explicit formula. With `u = fb` and `v = gq` the wave speeds are
//! `u/2 < 3u/2 < u + v/2 < u + 3v/2` whenever `u < v`.

use crate::error::{Error, Result};
use crate::roots::{bisect, expand_until_positive};
use crate::scalar::Scalar;
use crate::state::{FluxVector, State};

/// Relative tolerance for recovering `v = gq` from `(u, eta)`.
pub const INVERSION_TOL: f64 = 1e-14;

pub type Matrix4<T> = [[T; 4]; 4];

/// Ordered wave speeds and right eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomposition<T = f64> {
    pub lambdas: [T; 4],
    /// `rights[k]` is the eigenvector of `lambdas[k]`.
    pub rights: [[T; 4]; 4],
}

/// Riemann-invariant coordinates `xi = b/f`, `u = fb`, `tau = q/g`,
/// `eta = (fb + gq) / (gq)^(1/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoords<T = f64> {
    pub xi: T,
    pub u: T,
    pub tau: T,
    pub eta: T,
}

pub fn flux<T: Scalar>(s: &State<T>) -> Result<FluxVector<T>> {
    s.ensure_positive()?;
    Ok(flux_unchecked(s))
}

/// Flux without the positivity check; used in hot loops on states that
/// were validated upstream.
#[inline]
pub fn flux_unchecked<T: Scalar>(s: &State<T>) -> FluxVector<T> {
    let half = T::lit(0.5);
    let u = s.f * s.b;
    FluxVector([
        half * s.f * s.f * s.b,
        half * s.f * s.b * s.b,
        half * s.g * s.g * s.q + u * s.g,
        half * s.g * s.q * s.q + u * s.q,
    ])
}

pub fn jacobian<T: Scalar>(s: &State<T>) -> Result<Matrix4<T>> {
    s.ensure_positive()?;
    let State { f, b, g, q } = *s;
    let half = T::lit(0.5);
    let z = T::zero();
    let u = f * b;
    let v = g * q;
    Ok([
        [u, half * f * f, z, z],
        [half * b * b, u, z, z],
        [g * b, f * g, u + v, half * g * g],
        [b * q, f * q, half * q * q, u + v],
    ])
}

/// The four characteristic speeds in increasing order (for `fb < gq`).
#[inline]
pub fn wave_speeds<T: Scalar>(s: &State<T>) -> [T; 4] {
    let u = s.lower_product();
    let v = s.upper_product();
    let half = T::lit(0.5);
    let three_half = T::lit(1.5);
    [half * u, three_half * u, u + half * v, u + three_half * v]
}

pub fn eigen<T: Scalar>(s: &State<T>) -> Result<EigenDecomposition<T>> {
    s.ensure_positive()?;
    let State { f, b, g, q } = *s;
    let (z, one, four, three) = (T::zero(), T::one(), T::lit(4.0), T::lit(3.0));
    let d = f * b - three * g * q;
    Ok(EigenDecomposition {
        lambdas: wave_speeds(s),
        rights: [
            [-f / b, one, z, z],
            [d / (four * q * b), d / (four * q * f), g / q, one],
            [z, z, -g / q, one],
            [z, z, g / q, one],
        ],
    })
}

/// Eigenvector directions along which `grad(lambda_k) . r_k` takes the
/// closed forms of [`char_field_indicator`]: `r1` and `r3` as in
/// [`eigen`], `r2` rescaled by `4q fb / (fb - 3gq)` and `r4` rescaled by `q`.
/// The `r2` direction is singular where `fb = 3gq`.
pub fn indicator_directions<T: Scalar>(s: &State<T>) -> Result<[[T; 4]; 4]> {
    let e = eigen(s)?;
    let State { f, b, g, q } = *s;
    let u = f * b;
    let d = u - T::lit(3.0) * g * q;
    let four_u = T::lit(4.0) * u;
    Ok([
        e.rights[0],
        [f, b, four_u * g / d, four_u * q / d],
        e.rights[2],
        [T::zero(), T::zero(), g, q],
    ])
}

/// `grad(lambda_k) . r_k` for `k` in `1..=4`: zero for the linearly
/// degenerate fields 1 and 3, `3fb` for field 2 and `3gq` for field 4
/// (with the directions of [`indicator_directions`]).
pub fn char_field_indicator<T: Scalar>(s: &State<T>, k: usize) -> Result<T> {
    s.ensure_positive()?;
    let three = T::lit(3.0);
    match k {
        1 | 3 => Ok(T::zero()),
        2 => Ok(three * s.lower_product()),
        4 => Ok(three * s.upper_product()),
        _ => Err(Error::InvalidArgument(format!(
            "characteristic field index {k} not in 1..=4"
        ))),
    }
}

pub fn to_invariants<T: Scalar>(s: &State<T>) -> Result<InvariantCoords<T>> {
    s.ensure_positive()?;
    let u = s.lower_product();
    let v = s.upper_product();
    Ok(InvariantCoords {
        xi: s.b / s.f,
        u,
        tau: s.q / s.g,
        eta: eta_of(u, v),
    })
}

/// Inverse of [`to_invariants`] on the strictly hyperbolic set: the upper
/// product `v` is the root of `u + v = eta v^(1/4)` with `v > u`.
pub fn from_invariants<T: Scalar>(w: &InvariantCoords<T>) -> Result<State<T>> {
    let domain_err = || Error::InversionDomain {
        xi: w.xi.as_f64(),
        u: w.u.as_f64(),
        tau: w.tau.as_f64(),
        eta: w.eta.as_f64(),
    };
    let positive = [w.xi, w.u, w.tau, w.eta]
        .iter()
        .all(|x| x.is_finite() && *x > T::zero());
    if !positive {
        return Err(domain_err());
    }
    let v = upper_product_above(w.u, w.eta).map_err(|_| domain_err())?;
    Ok(State::new(
        (w.u / w.xi).sqrt(),
        (w.u * w.xi).sqrt(),
        (v / w.tau).sqrt(),
        (v * w.tau).sqrt(),
    ))
}

impl<T: Scalar> InvariantCoords<T> {
    /// Advection speeds of the diagonal system, given the upper product `v`.
    pub fn advection_speeds(&self, v: T) -> [T; 4] {
        let half = T::lit(0.5);
        let three_half = T::lit(1.5);
        [
            half * self.u,
            three_half * self.u,
            self.u + half * v,
            self.u + three_half * v,
        ]
    }
}

/// `eta = (u + v) / v^(1/4)`.
#[inline]
pub fn eta_of<T: Scalar>(u: T, v: T) -> T {
    (u + v) / v.sqrt().sqrt()
}

/// `u + v - eta v^(1/4)`; convex in `v`, minimal at [`fold_point`].
#[inline]
pub fn eta_residual<T: Scalar>(u: T, eta: T, v: T) -> T {
    u + v - eta * v.sqrt().sqrt()
}

/// Minimiser `v* = (eta/4)^(4/3)` of [`eta_residual`]. Along a curve of
/// constant `eta` this is where `3v = u`, i.e. where `lambda_2 = lambda_4`.
#[inline]
pub fn fold_point<T: Scalar>(eta: T) -> T {
    (eta / T::lit(4.0)).powf(T::lit(4.0 / 3.0))
}

/// Root `v > u` of `u + v = eta v^(1/4)`, bracketed on `[u, v_up]` with
/// `v_up` doubled from `max(u, 1)`.
pub fn upper_product_above<T: Scalar>(u: T, eta: T) -> Result<T> {
    let h = |v: T| eta_residual(u, eta, v);
    if h(u) >= T::zero() {
        return Err(Error::NoRoot {
            problem: "upper product above u",
            lo: u.as_f64(),
            hi: u.as_f64(),
            f_lo: h(u).as_f64(),
            f_hi: h(u).as_f64(),
        });
    }
    let hi = expand_until_positive("upper product above u", h, u.max(T::one()), T::lit(2.0))?;
    bisect("upper product above u", h, u, hi, T::tol(INVERSION_TOL))
}

/// Root of `u + v = eta v^(1/4)` on the same side of the fold as `v_ref`.
/// Fails when `u` exceeds the maximum `3 v*` reachable at this `eta`.
pub fn upper_product_on_branch<T: Scalar>(u: T, eta: T, v_ref: T) -> Result<T> {
    let h = |v: T| eta_residual(u, eta, v);
    let v_fold = fold_point(eta);
    if v_ref >= v_fold {
        let hi = expand_until_positive(
            "upper product (large branch)",
            h,
            v_ref.max(v_fold),
            T::lit(2.0),
        )?;
        bisect(
            "upper product (large branch)",
            h,
            v_fold,
            hi,
            T::tol(INVERSION_TOL),
        )
    } else {
        bisect(
            "upper product (small branch)",
            h,
            T::zero(),
            v_fold,
            T::tol(INVERSION_TOL),
        )
    }
}
