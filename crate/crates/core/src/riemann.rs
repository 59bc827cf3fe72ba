//! Exact solution of the Riemann problem.
//!
//! Every solution has the structure `J1 + (R2|S2) + J3 + (S4|R4)` with three
//! intermediate states. Once the upper film height `g_M` of the middle state
//! is known, everything else is explicit: `g_M` is the root of a scalar
//! equation whose form depends on whether the 2-wave is a rarefaction
//! (`f_R b_R >= f_L b_L`) or a shock.

use std::fmt;

use crate::error::{Error, Result};
use crate::roots::{bisect, expand_until_positive};
use crate::scalar::Scalar;
use crate::state::{AdmissibilityLevel, State, DEFAULT_HYPERBOLICITY_MARGIN};
use crate::system::{eta_of, eta_residual};
use crate::wavecurves::{WaveFamily, WaveJump, WaveSpeed};

/// Relative tolerance on `g_M`.
pub const ROOT_TOL: f64 = 1e-12;
/// Relative tolerance on `gq` inside a 2-rarefaction fan.
pub const FAN_TOL: f64 = 1e-13;
/// Relative slack allowed when checking wave-speed ordering.
pub const ORDERING_SLACK: f64 = 1e-12;

/// Which wave the 2-field produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// `f_R b_R >= f_L b_L`: 2-rarefaction.
    Case1,
    /// `f_R b_R < f_L b_L`: 2-shock.
    Case2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// J1 + R2 + J3 + S4
    Case1a,
    /// J1 + R2 + J3 + R4
    Case1b,
    /// J1 + S2 + J3 + S4
    Case2a,
    /// J1 + S2 + J3 + R4
    Case2b,
}

impl CaseTag {
    pub fn families(self) -> [WaveFamily; 4] {
        use WaveFamily::*;
        match self {
            CaseTag::Case1a => [Contact1, Raref2, Contact3, Shock4],
            CaseTag::Case1b => [Contact1, Raref2, Contact3, Raref4],
            CaseTag::Case2a => [Contact1, Shock2, Contact3, Shock4],
            CaseTag::Case2b => [Contact1, Shock2, Contact3, Raref4],
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.families();
        write!(f, "{a}+{b}+{c}+{d}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Conditions under which a solution is still produced but falls outside
/// the strictly hyperbolic theory.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `gq - fb` is not above the hyperbolicity margin.
    NotStrictlyHyperbolic { side: Side, gap: f64 },
    /// Case 1 with `f_R b_R >= g_L q_L`: a root was found although the
    /// sufficient existence condition fails.
    OutsideProvenRegime { fb_right: f64, gq_left: f64 },
    /// Wave speeds out of order (only with [`OrderingPolicy::Warn`]).
    SpeedOrdering {
        left_wave: &'static str,
        left_speed: f64,
        right_wave: &'static str,
        right_speed: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderingPolicy {
    #[default]
    Error,
    Warn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions<T = f64> {
    pub ordering: OrderingPolicy,
    pub hyperbolicity_margin: T,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self {
            ordering: OrderingPolicy::Error,
            hyperbolicity_margin: T::lit(DEFAULT_HYPERBOLICITY_MARGIN),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    F1,
    F2,
}

/// Scalar equation for the middle upper film height, with a bracket known
/// to contain exactly one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootProblem<T = f64> {
    pub kind: RootKind,
    pub left: State<T>,
    pub right: State<T>,
    pub bracket: (T, T),
}

impl<T: Scalar> RootProblem<T> {
    /// Builds the equation for `case` and its bracket. For F1 the bracket is
    /// between the minimiser `g_min` and `g_L`; F1 is convex in `sqrt(g)`, so
    /// that side of the minimum holds the root continuous with `g_L`. For F2
    /// the upper end doubles from `2 g_L` until the (convex) cubic is positive.
    pub fn new(left: &State<T>, right: &State<T>, case: CaseKind) -> Result<Self> {
        let mut p = Self {
            kind: match case {
                CaseKind::Case1 => RootKind::F1,
                CaseKind::Case2 => RootKind::F2,
            },
            left: *left,
            right: *right,
            bracket: (left.g, left.g),
        };
        let g_l = left.g;
        p.bracket = match case {
            CaseKind::Case1 => (p.g_min(), g_l),
            CaseKind::Case2 => {
                let two = T::lit(2.0);
                let hi = expand_until_positive("F2 upper bracket", |g| p.eval(g), g_l * two, two)?;
                (g_l, hi)
            }
        };
        Ok(p)
    }

    /// Minimiser of F1.
    pub fn g_min(&self) -> T {
        let l = &self.left;
        let sum = l.lower_product() + l.upper_product();
        (l.g.sqrt() * sum / (T::lit(4.0) * l.q)).powf(T::lit(2.0 / 3.0))
    }

    pub fn eval(&self, g: T) -> T {
        let (l, r) = (&self.left, &self.right);
        let u_l = l.lower_product();
        let v_l = l.upper_product();
        let u_r = r.lower_product();
        match self.kind {
            RootKind::F1 => g * g * l.q - (g * l.g).sqrt() * (u_l + v_l) + u_r * l.g,
            RootKind::F2 => {
                let s = (u_l * u_r).sqrt();
                l.q * g * g * g + g * l.g * (u_r - u_l - s) - l.g * l.g * (v_l + u_l - u_r - s)
            }
        }
    }

    /// Sum of term magnitudes at `g`, the natural scale for `|eval(g)|`.
    pub fn scale(&self, g: T) -> T {
        let (l, r) = (&self.left, &self.right);
        let u_l = l.lower_product();
        let v_l = l.upper_product();
        let u_r = r.lower_product();
        match self.kind {
            RootKind::F1 => g * g * l.q + (g * l.g).sqrt() * (u_l + v_l) + u_r * l.g,
            RootKind::F2 => {
                let s = (u_l * u_r).sqrt();
                l.q * g * g * g + g * l.g * (u_r + u_l + s) + l.g * l.g * (v_l + u_l + u_r + s)
            }
        }
    }

    pub fn solve(&self) -> Result<T> {
        let name = match self.kind {
            RootKind::F1 => "F1",
            RootKind::F2 => "F2",
        };
        bisect(
            name,
            |g| self.eval(g),
            self.bracket.0,
            self.bracket.1,
            T::tol(ROOT_TOL),
        )
    }
}

/// Self-similar solution of one Riemann problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannFan<T = f64> {
    pub left: State<T>,
    pub left_star: State<T>,
    pub mid_star: State<T>,
    pub right_star: State<T>,
    pub right: State<T>,
    pub wave1: T,
    pub wave2: WaveSpeed<T>,
    pub wave3: T,
    pub wave4: WaveSpeed<T>,
    pub case: CaseTag,
    pub g_mid: T,
    pub warnings: Vec<Warning>,
}

pub fn classify<T: Scalar>(left: &State<T>, right: &State<T>) -> CaseKind {
    if right.lower_product() >= left.lower_product() {
        CaseKind::Case1
    } else {
        CaseKind::Case2
    }
}

/// Middle upper film height `g_M`.
pub fn solve_g_mid<T: Scalar>(left: &State<T>, right: &State<T>, case: CaseKind) -> Result<T> {
    left.ensure_positive()?;
    right.ensure_positive()?;
    RootProblem::new(left, right, case)?.solve()
}

/// `(U_L*, U_M*, U_R*)` from the data and `g_M`.
pub fn intermediate_states<T: Scalar>(
    left: &State<T>,
    right: &State<T>,
    g_mid: T,
) -> Result<(State<T>, State<T>, State<T>)> {
    if !(g_mid > T::zero() && g_mid.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "g_M must be positive, got {g_mid}"
        )));
    }
    let u_l = left.lower_product();
    let (f_r, b_r) = (right.f, right.b);
    let left_star = State::new(
        (u_l * f_r / b_r).sqrt(),
        (u_l * b_r / f_r).sqrt(),
        left.g,
        left.q,
    );
    let mid_star = State::new(f_r, b_r, g_mid, g_mid * left.q / left.g);
    let right_star = State::new(
        f_r,
        b_r,
        g_mid * (left.q * right.g / (left.g * right.q)).sqrt(),
        g_mid * (left.q * right.q / (left.g * right.g)).sqrt(),
    );
    Ok((left_star, mid_star, right_star))
}

/// Shock when `g_M > sqrt(g_L g_R q_R / q_L)`, rarefaction otherwise.
pub fn classify_wave4<T: Scalar>(left: &State<T>, right: &State<T>, g_mid: T) -> WaveFamily {
    let threshold = (left.g * right.g * right.q / left.q).sqrt();
    if g_mid > threshold {
        WaveFamily::Shock4
    } else {
        WaveFamily::Raref4
    }
}

pub fn solve<T: Scalar>(left: &State<T>, right: &State<T>) -> Result<RiemannFan<T>> {
    solve_with(left, right, &SolveOptions::default())
}

pub fn solve_with<T: Scalar>(
    left: &State<T>,
    right: &State<T>,
    opts: &SolveOptions<T>,
) -> Result<RiemannFan<T>> {
    left.ensure_positive()?;
    right.ensure_positive()?;
    let mut warnings = Vec::new();
    for (side, st) in [(Side::Left, left), (Side::Right, right)] {
        if !st.is_admissible(AdmissibilityLevel::Strict, opts.hyperbolicity_margin) {
            warnings.push(Warning::NotStrictlyHyperbolic {
                side,
                gap: st.hyperbolicity_gap().as_f64(),
            });
        }
    }

    let case = classify(left, right);
    let problem = RootProblem::new(left, right, case)?;
    let g_mid = problem.solve()?;
    if case == CaseKind::Case1 && right.lower_product() >= left.upper_product() {
        warnings.push(Warning::OutsideProvenRegime {
            fb_right: right.lower_product().as_f64(),
            gq_left: left.upper_product().as_f64(),
        });
    }
    let (left_star, mid_star, right_star) = intermediate_states(left, right, g_mid)?;

    let (half, two, three_half) = (T::lit(0.5), T::lit(2.0), T::lit(1.5));
    let u_l = left.lower_product();
    let u_r = right.lower_product();
    let v_m = mid_star.upper_product();

    let wave1 = half * u_l;
    let wave2 = match case {
        CaseKind::Case1 => WaveSpeed::Fan {
            head: three_half * u_l,
            tail: three_half * u_r,
        },
        CaseKind::Case2 => {
            let (fl, bl, fm) = (left_star.f, left_star.b, mid_star.f);
            WaveSpeed::Discontinuity(bl * (fl * fl + fl * fm + fm * fm) / (two * fl))
        }
    };
    let wave3 = u_r + half * v_m;
    let family4 = classify_wave4(left, right, g_mid);
    let wave4 = match family4 {
        WaveFamily::Shock4 => {
            let (gs, qs, g) = (right_star.g, right_star.q, right.g);
            WaveSpeed::Discontinuity(u_r + qs * (gs * gs + gs * g + g * g) / (two * gs))
        }
        _ => WaveSpeed::Fan {
            head: u_r + three_half * v_m,
            tail: u_r + three_half * right.upper_product(),
        },
    };
    let tag = match (case, family4) {
        (CaseKind::Case1, WaveFamily::Shock4) => CaseTag::Case1a,
        (CaseKind::Case1, _) => CaseTag::Case1b,
        (CaseKind::Case2, WaveFamily::Shock4) => CaseTag::Case2a,
        (CaseKind::Case2, _) => CaseTag::Case2b,
    };

    let fan = RiemannFan {
        left: *left,
        left_star,
        mid_star,
        right_star,
        right: *right,
        wave1,
        wave2,
        wave3,
        wave4,
        case: tag,
        g_mid,
        warnings,
    };
    fan.finish_ordering(opts.ordering)
}

impl<T: Scalar> RiemannFan<T> {
    fn finish_ordering(mut self, policy: OrderingPolicy) -> Result<Self> {
        let [f1, f2, f3, f4] = self.case.families().map(|f| match f {
            WaveFamily::Contact1 => "J1",
            WaveFamily::Shock2 => "S2",
            WaveFamily::Raref2 => "R2",
            WaveFamily::Contact3 => "J3",
            WaveFamily::Shock4 => "S4",
            WaveFamily::Raref4 => "R4",
        });
        let seq = [
            (f1, self.wave1),
            (f2, self.wave2.min()),
            (f2, self.wave2.max()),
            (f3, self.wave3),
            (f4, self.wave4.min()),
            (f4, self.wave4.max()),
        ];
        let slack = T::tol(ORDERING_SLACK) * (T::one() + self.wave4.max().abs());
        for pair in seq.windows(2) {
            let ((lw, ls), (rw, rs)) = (pair[0], pair[1]);
            if ls > rs + slack {
                match policy {
                    OrderingPolicy::Error => {
                        return Err(Error::SpeedOrdering {
                            left_wave: lw,
                            left_speed: ls.as_f64(),
                            right_wave: rw,
                            right_speed: rs.as_f64(),
                        })
                    }
                    OrderingPolicy::Warn => {
                        self.warnings.push(Warning::SpeedOrdering {
                            left_wave: lw,
                            left_speed: ls.as_f64(),
                            right_wave: rw,
                            right_speed: rs.as_f64(),
                        });
                        break;
                    }
                }
            }
        }
        Ok(self)
    }

    /// The four elementary waves, left to right.
    pub fn waves(&self) -> [WaveJump<T>; 4] {
        let [f1, f2, f3, f4] = self.case.families();
        [
            WaveJump {
                left: self.left,
                right: self.left_star,
                family: f1,
                speed: WaveSpeed::Discontinuity(self.wave1),
            },
            WaveJump {
                left: self.left_star,
                right: self.mid_star,
                family: f2,
                speed: self.wave2,
            },
            WaveJump {
                left: self.mid_star,
                right: self.right_star,
                family: f3,
                speed: WaveSpeed::Discontinuity(self.wave3),
            },
            WaveJump {
                left: self.right_star,
                right: self.right,
                family: f4,
                speed: self.wave4,
            },
        ]
    }

    /// Solution at similarity coordinate `xi = x / t`.
    pub fn sample(&self, xi: T) -> State<T> {
        if xi < self.wave1 {
            return self.left;
        }
        match self.wave2 {
            WaveSpeed::Discontinuity(s) => {
                if xi < s {
                    return self.left_star;
                }
            }
            WaveSpeed::Fan { head, tail } => {
                if xi <= head {
                    return self.left_star;
                }
                if xi < tail {
                    return self.raref2_interior(xi);
                }
            }
        }
        if xi < self.wave3 {
            return self.mid_star;
        }
        match self.wave4 {
            WaveSpeed::Discontinuity(s) => {
                if xi < s {
                    self.right_star
                } else {
                    self.right
                }
            }
            WaveSpeed::Fan { head, tail } => {
                if xi <= head {
                    self.right_star
                } else if xi < tail {
                    self.raref4_interior(xi)
                } else {
                    self.right
                }
            }
        }
    }

    /// Inside the 2-fan: `fb = 2 xi / 3`, with `b/f`, `q/g` and `eta` taken
    /// from `U_L*`. The upper product is bracketed by its end values.
    fn raref2_interior(&self, xi: T) -> State<T> {
        let u = T::lit(2.0 / 3.0) * xi;
        let a = &self.left_star;
        let eta = eta_of(a.lower_product(), a.upper_product());
        let (va, vb) = (a.upper_product(), self.mid_star.upper_product());
        let v = bisect(
            "2-fan upper product",
            |v| eta_residual(u, eta, v),
            va,
            vb,
            T::tol(FAN_TOL),
        )
        .unwrap_or_else(|_| {
            if (u - a.lower_product()).abs() < (u - self.mid_star.lower_product()).abs() {
                va
            } else {
                vb
            }
        });
        let lower_ratio = a.f / a.b;
        let upper_ratio = a.g / a.q;
        State::new(
            (u * lower_ratio).sqrt(),
            (u / lower_ratio).sqrt(),
            (v * upper_ratio).sqrt(),
            (v / upper_ratio).sqrt(),
        )
    }

    /// Inside the 4-fan: `gq = 2 (xi - fb) / 3` with `f`, `b`, `q/g` fixed.
    fn raref4_interior(&self, xi: T) -> State<T> {
        let r = &self.right;
        let v = T::lit(2.0 / 3.0) * (xi - r.lower_product());
        let upper_ratio = r.g / r.q;
        State::new(r.f, r.b, (v * upper_ratio).sqrt(), (v / upper_ratio).sqrt())
    }

    pub fn is_strictly_hyperbolic(&self) -> bool {
        !self
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::NotStrictlyHyperbolic { .. }))
    }
}
