//! Elementary waves through a given left state.
//!
//! Fields 1 and 3 are linearly degenerate and carry contacts only. Field 2
//! has distinct shock and rarefaction curves, parameterised by the lower
//! product `fb`; field 4 is a Temple field whose shock and rarefaction
//! curves are the same straight line, parameterised by the upper product
//! `gq`.

use std::fmt;

use crate::error::{Error, Result};
use crate::roots::{bisect, expand_until_positive};
use crate::scalar::Scalar;
use crate::state::State;
use crate::system::{eta_of, flux_unchecked, upper_product_on_branch, wave_speeds};

/// Relative tolerance on the upper film height along the 2-shock curve.
pub const SHOCK2_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveFamily {
    Contact1,
    Shock2,
    Raref2,
    Contact3,
    Shock4,
    Raref4,
}

impl fmt::Display for WaveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WaveFamily::Contact1 => "J1",
            WaveFamily::Shock2 => "S2",
            WaveFamily::Raref2 => "R2",
            WaveFamily::Contact3 => "J3",
            WaveFamily::Shock4 => "S4",
            WaveFamily::Raref4 => "R4",
        };
        f.write_str(s)
    }
}

/// Speed of a discontinuity, or the head/tail speeds of a fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveSpeed<T = f64> {
    Discontinuity(T),
    Fan { head: T, tail: T },
}

impl<T: Scalar> WaveSpeed<T> {
    pub fn min(&self) -> T {
        match *self {
            WaveSpeed::Discontinuity(s) => s,
            WaveSpeed::Fan { head, tail } => head.min(tail),
        }
    }

    pub fn max(&self) -> T {
        match *self {
            WaveSpeed::Discontinuity(s) => s,
            WaveSpeed::Fan { head, tail } => head.max(tail),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveJump<T = f64> {
    pub left: State<T>,
    pub right: State<T>,
    pub family: WaveFamily,
    pub speed: WaveSpeed<T>,
}

impl<T: Scalar> WaveJump<T> {
    /// Scaled Rankine-Hugoniot residual; `None` for fans.
    pub fn rh_residual(&self) -> Option<T> {
        match self.speed {
            WaveSpeed::Discontinuity(s) => Some(scaled_rh_residual(&self.left, &self.right, s)),
            WaveSpeed::Fan { .. } => None,
        }
    }
}

/// `sigma [U] - [F(U)]`, componentwise.
pub fn rh_residual<T: Scalar>(left: &State<T>, right: &State<T>, speed: T) -> Result<[T; 4]> {
    left.ensure_positive()?;
    right.ensure_positive()?;
    Ok(rh_residual_unchecked(left, right, speed))
}

fn rh_residual_unchecked<T: Scalar>(left: &State<T>, right: &State<T>, speed: T) -> [T; 4] {
    let jump = (*right - *left).to_array();
    let flux_jump = flux_unchecked(right) - flux_unchecked(left);
    std::array::from_fn(|i| speed * jump[i] - flux_jump.0[i])
}

/// `max |sigma [U] - [F]|` divided by `1 + max(|F(left)|, |F(right)|)`.
pub fn scaled_rh_residual<T: Scalar>(left: &State<T>, right: &State<T>, speed: T) -> T {
    let r = rh_residual_unchecked(left, right, speed);
    let scale = T::one()
        + flux_unchecked(left)
            .max_abs()
            .max(flux_unchecked(right).max_abs());
    r.iter().fold(T::zero(), |m, x| m.max(x.abs())) / scale
}

fn positive_param<T: Scalar>(name: &str, x: T) -> Result<()> {
    if x.is_finite() && x > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

/// 1-contact: `fb`, `g`, `q` continuous, speed `fb/2`.
pub fn contact1<T: Scalar>(left: &State<T>, f_right: T) -> Result<WaveJump<T>> {
    left.ensure_positive()?;
    positive_param("f_r", f_right)?;
    let right = if f_right == left.f {
        *left
    } else {
        State::new(f_right, left.lower_product() / f_right, left.g, left.q)
    };
    Ok(WaveJump {
        left: *left,
        right,
        family: WaveFamily::Contact1,
        speed: WaveSpeed::Discontinuity(T::lit(0.5) * left.lower_product()),
    })
}

/// 3-contact: `f`, `b`, `gq` continuous, speed `fb + gq/2`.
pub fn contact3<T: Scalar>(left: &State<T>, g_right: T) -> Result<WaveJump<T>> {
    left.ensure_positive()?;
    positive_param("g_r", g_right)?;
    let right = if g_right == left.g {
        *left
    } else {
        State::new(left.f, left.b, g_right, left.upper_product() / g_right)
    };
    Ok(WaveJump {
        left: *left,
        right,
        family: WaveFamily::Contact3,
        speed: WaveSpeed::Discontinuity(left.lower_product() + T::lit(0.5) * left.upper_product()),
    })
}

/// State with the given lower product and the lower/upper ratios of `like`.
fn with_ratios<T: Scalar>(like: &State<T>, lower: T, upper: T) -> State<T> {
    let lower_ratio = like.f / like.b;
    let upper_ratio = like.g / like.q;
    State::new(
        (lower * lower_ratio).sqrt(),
        (lower / lower_ratio).sqrt(),
        (upper * upper_ratio).sqrt(),
        (upper / upper_ratio).sqrt(),
    )
}

/// 2-rarefaction from `left` up to lower product `fb_target >= fb_left`,
/// keeping `b/f`, `q/g` and `(fb + gq)/(gq)^(1/4)` fixed.
pub fn raref2<T: Scalar>(left: &State<T>, fb_target: T) -> Result<WaveJump<T>> {
    left.ensure_positive()?;
    let u_l = left.lower_product();
    if !(fb_target >= u_l) {
        return Err(Error::WrongBranch {
            family: "R2",
            current: u_l.as_f64(),
            target: fb_target.as_f64(),
        });
    }
    let right = if fb_target == u_l {
        *left
    } else {
        let v_l = left.upper_product();
        let v = upper_product_on_branch(fb_target, eta_of(u_l, v_l), v_l)?;
        with_ratios(left, fb_target, v)
    };
    let three_half = T::lit(1.5);
    Ok(WaveJump {
        left: *left,
        right,
        family: WaveFamily::Raref2,
        speed: WaveSpeed::Fan {
            head: three_half * u_l,
            tail: three_half * fb_target,
        },
    })
}

/// Point with lower product `fb_target` on the 2-Hugoniot locus through
/// `left`, and the jump speed. Either side of `left` is allowed.
pub fn hugoniot_locus2<T: Scalar>(left: &State<T>, fb_target: T) -> Result<(State<T>, T)> {
    left.ensure_positive()?;
    positive_param("fb_target", fb_target)?;
    let State {
        f: f_l,
        b: b_l,
        g: g_l,
        q: q_l,
    } = *left;
    let u_l = f_l * b_l;
    if fb_target == u_l {
        return Ok((*left, T::lit(1.5) * u_l));
    }
    let two = T::lit(2.0);
    let f = (fb_target * f_l / b_l).sqrt();
    let b = fb_target / f;
    let speed = b_l * (f_l * f_l + f_l * f + f * f) / (two * f_l);
    let slope = q_l / g_l;
    // Rows 3 and 4 of the jump conditions coincide once q = g q_l / g_l.
    let phi = |g: T| {
        slope * (g * g * g - g_l * g_l * g_l) + two * (fb_target * g - u_l * g_l)
            - two * speed * (g - g_l)
    };
    let tol = T::tol(SHOCK2_TOL);
    let g = if fb_target < u_l {
        let hi = expand_until_positive("2-shock upper film height", phi, g_l * two, two)?;
        bisect("2-shock upper film height", phi, g_l, hi, tol)?
    } else {
        let lo = expand_until_positive(
            "2-Hugoniot upper film height",
            |g| -phi(g),
            g_l / two,
            T::lit(0.5),
        )?;
        bisect("2-Hugoniot upper film height", phi, lo, g_l, tol)?
    };
    Ok((State::new(f, b, g, g * slope), speed))
}

/// Lax-admissible 2-shock to lower product `fb_target < fb_left`.
pub fn shock2<T: Scalar>(left: &State<T>, fb_target: T) -> Result<WaveJump<T>> {
    left.ensure_positive()?;
    let u_l = left.lower_product();
    if !(fb_target < u_l) || !(fb_target > T::zero()) {
        return Err(Error::WrongBranch {
            family: "S2",
            current: u_l.as_f64(),
            target: fb_target.as_f64(),
        });
    }
    let (right, speed) = hugoniot_locus2(left, fb_target)?;
    Ok(WaveJump {
        left: *left,
        right,
        family: WaveFamily::Shock2,
        speed: WaveSpeed::Discontinuity(speed),
    })
}

/// 4-wave to upper product `gq_target` along the line `f, b, q/g` fixed:
/// a shock when `gq` decreases, a rarefaction otherwise.
pub fn temple4<T: Scalar>(left: &State<T>, gq_target: T) -> Result<WaveJump<T>> {
    left.ensure_positive()?;
    positive_param("gq_target", gq_target)?;
    let State {
        f,
        b,
        g: g_l,
        q: q_l,
    } = *left;
    let v_l = g_l * q_l;
    let u = f * b;
    let right = if gq_target == v_l {
        *left
    } else {
        let g = (gq_target * g_l / q_l).sqrt();
        State::new(f, b, g, g * q_l / g_l)
    };
    let (family, speed) = if gq_target < v_l {
        let g = right.g;
        let s = u + q_l * (g_l * g_l + g_l * g + g * g) / (T::lit(2.0) * g_l);
        (WaveFamily::Shock4, WaveSpeed::Discontinuity(s))
    } else {
        let three_half = T::lit(1.5);
        (
            WaveFamily::Raref4,
            WaveSpeed::Fan {
                head: u + three_half * v_l,
                tail: u + three_half * gq_target,
            },
        )
    };
    Ok(WaveJump {
        left: *left,
        right,
        family,
        speed,
    })
}

/// Lax entropy inequalities for a 2- or 4-shock.
pub fn lax_admissible<T: Scalar>(jump: &WaveJump<T>) -> Result<bool> {
    let s = match jump.speed {
        WaveSpeed::Discontinuity(s) => s,
        WaveSpeed::Fan { .. } => {
            return Err(Error::InvalidArgument(format!(
                "Lax conditions need a shock, got {}",
                jump.family
            )))
        }
    };
    let l = wave_speeds(&jump.left);
    let r = wave_speeds(&jump.right);
    match jump.family {
        WaveFamily::Shock2 => Ok(r[1] < s && s < l[1] && l[0] < s),
        WaveFamily::Shock4 => Ok(r[3] < s && s < l[3] && l[2] < s),
        other => Err(Error::InvalidArgument(format!(
            "Lax conditions need a shock, got {other}"
        ))),
    }
}
