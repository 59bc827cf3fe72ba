use thiserror::Error;

/// Errors raised by the solver stack. Values are reported as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state {state:?} is outside the positive state space")]
    NonPositiveState { state: [f64; 4] },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant coordinates (xi={xi}, u={u}, tau={tau}, eta={eta}) have no preimage with gq > fb")]
    InversionDomain { xi: f64, u: f64, tau: f64, eta: f64 },

    #[error("{family} curve parameter {target} is on the wrong branch for left value {current}")]
    WrongBranch {
        family: &'static str,
        current: f64,
        target: f64,
    },

    #[error("{problem}: no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})")]
    NoRoot {
        problem: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("wave speeds out of order: {left_wave} at {left_speed} exceeds {right_wave} at {right_speed}")]
    SpeedOrdering {
        left_wave: &'static str,
        left_speed: f64,
        right_wave: &'static str,
        right_speed: f64,
    },

    #[error("cell {cell} became inadmissible at t={time}: {state:?}")]
    InadmissibleCell {
        cell: usize,
        time: f64,
        state: [f64; 4],
    },

    #[error("generator {name} returned non-finite value at {arg}")]
    Generator { name: &'static str, arg: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
