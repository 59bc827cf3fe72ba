//! Entropy/entropy-flux pairs.
//!
//! Every member of the family is built from three free functions
//! `rho(u)`, `mu(xi)`, `nu(tau)` of the Riemann invariants plus `psi` with
//! `psi'(w) = 1.5 w rho'(w)`:
//!
//! ```text
//! E = rho(u) + sqrt(u) mu(xi) + sqrt(v) nu(tau) + 1/(u + v)
//! Q = psi(u) + u^1.5 mu(xi)/2 + sqrt(v) nu(tau) (u + v/2)
//!     - 1.5 ln(u + v) - u / (2(u + v))
//! ```
//!
//! with `u = fb`, `v = gq`, `xi = b/f`, `tau = q/g`. The choice
//! `rho = 1/w`, `mu = 1/xi`, `nu = 1/tau` gives a strictly convex entropy on
//! the strictly hyperbolic set.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::State;
use crate::system::jacobian;

/// Relative finite-difference step for entropy gradients.
pub const GRADIENT_STEP: f64 = 1e-6;

/// Generator functions of one member of the entropy family. Implementations
/// must be pure.
pub trait EntropyGenerators<T: Scalar> {
    fn rho(&self, w: T) -> T;
    fn mu(&self, xi: T) -> T;
    fn nu(&self, tau: T) -> T;
    /// Antiderivative of `1.5 w rho'(w)`.
    fn psi(&self, w: T) -> T;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPairValue<T = f64> {
    pub entropy: T,
    pub flux: T,
}

/// `rho = mu = nu = psi = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroGenerators;

/// Generators of the strictly convex pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConvexGenerators;

/// Polynomial generators `sum_k c_k x^k`; `psi` follows analytically from
/// the `rho` coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolynomialGenerators<T = f64> {
    pub rho: Vec<T>,
    pub mu: Vec<T>,
    pub nu: Vec<T>,
}

impl<T: Scalar> EntropyGenerators<T> for ZeroGenerators {
    fn rho(&self, _: T) -> T {
        T::zero()
    }
    fn mu(&self, _: T) -> T {
        T::zero()
    }
    fn nu(&self, _: T) -> T {
        T::zero()
    }
    fn psi(&self, _: T) -> T {
        T::zero()
    }
}

impl<T: Scalar> EntropyGenerators<T> for ConvexGenerators {
    fn rho(&self, w: T) -> T {
        w.recip()
    }
    fn mu(&self, xi: T) -> T {
        xi.recip()
    }
    fn nu(&self, tau: T) -> T {
        tau.recip()
    }
    fn psi(&self, w: T) -> T {
        -T::lit(1.5) * w.ln()
    }
}

fn horner<T: Scalar>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

impl<T: Scalar> EntropyGenerators<T> for PolynomialGenerators<T> {
    fn rho(&self, w: T) -> T {
        horner(&self.rho, w)
    }
    fn mu(&self, xi: T) -> T {
        horner(&self.mu, xi)
    }
    fn nu(&self, tau: T) -> T {
        horner(&self.nu, tau)
    }
    fn psi(&self, w: T) -> T {
        // 1.5 * sum_k k c_k w^(k+1) / (k+1)
        let mut acc = T::zero();
        let mut pow = w;
        for (k, &c) in self.rho.iter().enumerate() {
            let kf = T::lit(k as f64);
            pow = pow * if k == 0 { T::one() } else { w };
            acc = acc + kf * c * pow / (kf + T::one());
        }
        T::lit(1.5) * acc
    }
}

fn checked<T: Scalar>(name: &'static str, arg: T, value: T) -> Result<T> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Generator {
            name,
            arg: arg.as_f64(),
        })
    }
}

/// Evaluates the pair generated by `gen` at `s`.
pub fn entropy<T: Scalar, G: EntropyGenerators<T> + ?Sized>(
    s: &State<T>,
    gen: &G,
) -> Result<EntropyPairValue<T>> {
    s.ensure_positive()?;
    let half = T::lit(0.5);
    let u = s.lower_product();
    let v = s.upper_product();
    let xi = s.b / s.f;
    let tau = s.q / s.g;
    let rho = checked("rho", u, gen.rho(u))?;
    let psi = checked("psi", u, gen.psi(u))?;
    let mu = checked("mu", xi, gen.mu(xi))?;
    let nu = checked("nu", tau, gen.nu(tau))?;
    let sum = u + v;
    let su = u.sqrt();
    let sv = v.sqrt();
    Ok(EntropyPairValue {
        entropy: rho + su * mu + sv * nu + sum.recip(),
        flux: psi + half * u * su * mu + sv * nu * (u + half * v)
            - T::lit(1.5) * sum.ln()
            - u / (T::lit(2.0) * sum),
    })
}

/// The strictly convex pair, written directly in `(f, b, g, q)`.
pub fn convex_entropy<T: Scalar>(s: &State<T>) -> Result<EntropyPairValue<T>> {
    s.ensure_positive()?;
    let State { f, b, g, q } = *s;
    let half = T::lit(0.5);
    let u = f * b;
    let v = g * q;
    let sum = u + v;
    let f32_ = f * f.sqrt();
    let g32 = g * g.sqrt();
    Ok(EntropyPairValue {
        entropy: u.recip() + f32_ / b.sqrt() + sum.recip() + g32 / q.sqrt(),
        flux: -T::lit(1.5) * (u * sum).ln() + half * f * f32_ * b.sqrt() - u / (T::lit(2.0) * sum)
            + g32 / q.sqrt() * (u + half * v),
    })
}

fn fd_gradient<T: Scalar, F: Fn(&State<T>) -> Result<T>>(s: &State<T>, func: F) -> Result<[T; 4]> {
    let base = s.to_array();
    let mut grad = [T::zero(); 4];
    for i in 0..4 {
        let h = (T::lit(GRADIENT_STEP) * (T::one() + base[i].abs())).min(base[i] * T::lit(0.5));
        let mut plus = base;
        let mut minus = base;
        plus[i] = plus[i] + h;
        minus[i] = minus[i] - h;
        grad[i] = (func(&State::from_array(plus))? - func(&State::from_array(minus))?)
            / (T::lit(2.0) * h);
    }
    Ok(grad)
}

/// `max_j |(grad E^T DF)_j - (grad Q)_j|` with both gradients from central
/// differences. Near zero for any member of the family.
pub fn compatibility_residual<T: Scalar, G: EntropyGenerators<T> + ?Sized>(
    s: &State<T>,
    gen: &G,
) -> Result<T> {
    compatibility_residual_with(s, |x| entropy(x, gen))
}

/// [`compatibility_residual`] for an arbitrary pair evaluator.
pub fn compatibility_residual_with<T, F>(s: &State<T>, pair: F) -> Result<T>
where
    T: Scalar,
    F: Fn(&State<T>) -> Result<EntropyPairValue<T>>,
{
    let grad_e = fd_gradient(s, |x| pair(x).map(|p| p.entropy))?;
    let grad_q = fd_gradient(s, |x| pair(x).map(|p| p.flux))?;
    let df = jacobian(s)?;
    let mut worst = T::zero();
    for j in 0..4 {
        let lhs = (0..4).fold(T::zero(), |acc, i| acc + grad_e[i] * df[i][j]);
        worst = worst.max((lhs - grad_q[j]).abs());
    }
    Ok(worst)
}

/// Quadratic forms `d_k^T H d_k` of the convex entropy Hessian in the
/// eigen-directions `d1 = b r1`, `d2 = 4q/(3gq - fb) r2`, `d3 = q r3`,
/// `d4 = q r4`, in closed form. All four are positive when `fb < gq`;
/// the last changes sign at `3gq = fb`.
pub fn hessian_quadratic_forms<T: Scalar>(s: &State<T>) -> Result<[T; 4]> {
    s.ensure_positive()?;
    let State { f, b, g, q } = *s;
    let (two, three, six) = (T::lit(2.0), T::lit(3.0), T::lit(6.0));
    let u = f * b;
    let v = g * q;
    let sum = u + v;
    let sum2 = sum * sum;
    let r1 = three * f * f.sqrt() / b.sqrt() + two * u / sum2 + two / u;
    let r2 = six * (three * v * v + two * u * (v - u)) / (u * u * u * (three * v - u) * sum);
    let r3 = two * v / sum2 + three * g * g.sqrt() / q.sqrt();
    let r4 = two * v * (three * v - u) / (sum2 * sum);
    Ok([r1, r2, r3, r4])
}

/// Entropy production `sigma [E] - [Q]` of the convex pair across a jump;
/// non-negative for admissible discontinuities.
pub fn shock_entropy_production<T: Scalar>(
    left: &State<T>,
    right: &State<T>,
    speed: T,
) -> Result<T> {
    let l = convex_entropy(left)?;
    let r = convex_entropy(right)?;
    Ok(speed * (r.entropy - l.entropy) - (r.flux - l.flux))
}

/// `|psi'(w) - 1.5 w rho'(w)|` by central differences.
pub fn psi_consistency_residual<T: Scalar, G: EntropyGenerators<T> + ?Sized>(gen: &G, w: T) -> T {
    let h = T::lit(1e-5) * (T::one() + w.abs());
    let two_h = T::lit(2.0) * h;
    let dpsi = (gen.psi(w + h) - gen.psi(w - h)) / two_h;
    let drho = (gen.rho(w + h) - gen.rho(w - h)) / two_h;
    (dpsi - T::lit(1.5) * w * drho).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn s(f: f64, b: f64, g: f64, q: f64) -> State {
        State::new(f, b, g, q)
    }

    #[test]
    fn convex_generators_value() {
        let p = entropy(&s(1.0, 1.0, 1.0, 2.0), &ConvexGenerators).unwrap();
        assert_relative_eq!(
            p.entropy,
            2.0 + 1.0 / 3.0 + 0.5f64.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(p.entropy, 3.040440, epsilon = 1e-6);
    }

    #[test]
    fn zero_generators_value() {
        let st = s(1.3, 0.7, 2.1, 1.9);
        let p = entropy(&st, &ZeroGenerators).unwrap();
        let (u, v) = (st.lower_product(), st.upper_product());
        assert_relative_eq!(p.entropy, 1.0 / (u + v), max_relative = 1e-14);
        assert_relative_eq!(
            p.flux,
            -1.5 * (u + v).ln() - u / (2.0 * (u + v)),
            max_relative = 1e-14
        );
    }

    #[test]
    fn convex_pair_reference_values() {
        let p = convex_entropy(&s(1.0, 1.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(p.entropy, 3.040440114519881, max_relative = 1e-13);
        // -1.5 ln 3 + 1/2 - 1/6 + sqrt(2)
        assert_relative_eq!(p.flux, 0.0996284627042638, max_relative = 1e-12);
    }

    #[test]
    fn convex_entropy_blows_up_at_thin_film() {
        assert!(convex_entropy(&s(1e-6, 1.0, 1.0, 2.0)).unwrap().entropy > 1e5);
    }

    #[test]
    fn compatibility_examples() {
        let st = s(1.24, 0.90, 2.2, 2.50);
        assert!(compatibility_residual_with(&st, convex_entropy).unwrap() <= 1e-5);
        assert!(compatibility_residual(&st, &ZeroGenerators).unwrap() <= 1e-5);
        let corrupted = |x: &State| {
            convex_entropy(x).map(|p| EntropyPairValue {
                entropy: p.entropy,
                flux: p.flux + 0.1 * x.lower_product(),
            })
        };
        assert!(compatibility_residual_with(&st, corrupted).unwrap() > 1e-2);
    }

    #[test]
    fn hessian_form_examples() {
        let h = hessian_quadratic_forms(&s(1.0, 1.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(h[2], 4.0 / 9.0 + 3.0 / 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(h[3], 20.0 / 27.0, max_relative = 1e-14);
        assert!(h.iter().all(|x| *x > 0.0));
    }

    #[test]
    fn fourth_form_sign_change_outside_state_space() {
        let h = hessian_quadratic_forms(&s(3.0, 1.0, 1.0, 0.9)).unwrap();
        assert!(h[3] < 0.0);
    }

    #[test]
    fn polynomial_psi_is_consistent() {
        let gen = PolynomialGenerators {
            rho: vec![0.3, -1.2, 0.5, 0.25],
            mu: vec![1.0, 2.0],
            nu: vec![0.0, 0.0, 1.0],
        };
        for w in [0.1, 0.5, 1.0, 2.5, 4.0] {
            assert!(psi_consistency_residual(&gen, w) <= 1e-8);
        }
        assert!(psi_consistency_residual(&ConvexGenerators, 0.7) <= 1e-8);
        assert!(psi_consistency_residual(&ZeroGenerators, 0.7f64) == 0.0);
    }

    #[test]
    fn generator_failure_propagates() {
        struct Bad;
        impl EntropyGenerators<f64> for Bad {
            fn rho(&self, _: f64) -> f64 {
                f64::NAN
            }
            fn mu(&self, _: f64) -> f64 {
                0.0
            }
            fn nu(&self, _: f64) -> f64 {
                0.0
            }
            fn psi(&self, _: f64) -> f64 {
                0.0
            }
        }
        assert!(matches!(
            entropy(&s(1.0, 1.0, 1.0, 2.0), &Bad),
            Err(Error::Generator { name: "rho", .. })
        ));
    }
}
