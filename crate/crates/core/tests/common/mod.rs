//! Reference computations written independently of the library.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use thinfilm_core::State;

pub fn flux_ref(s: &[f64; 4]) -> [f64; 4] {
    let [f, b, g, q] = *s;
    [
        0.5 * f * f * b,
        0.5 * f * b * b,
        0.5 * g * g * q + f * g * b,
        0.5 * g * q * q + f * b * q,
    ]
}

pub fn jacobian_ref(s: &[f64; 4]) -> [[f64; 4]; 4] {
    let [f, b, g, q] = *s;
    let u = f * b;
    let v = g * q;
    [
        [u, 0.5 * f * f, 0.0, 0.0],
        [0.5 * b * b, u, 0.0, 0.0],
        [g * b, f * g, v + u, 0.5 * g * g],
        [b * q, f * q, 0.5 * q * q, v + u],
    ]
}

pub fn lambdas_ref(s: &[f64; 4]) -> [f64; 4] {
    let u = s[0] * s[1];
    let v = s[2] * s[3];
    [0.5 * u, 1.5 * u, u + 0.5 * v, u + 1.5 * v]
}

/// Plain midpoint bisection, no early exit on tolerance.
pub fn bisect_ref(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Positive state with components in `[0.2, 5]`.
pub fn positive_state(rng: &mut StdRng) -> State {
    State::new(
        log_uniform(rng, 0.2, 5.0),
        log_uniform(rng, 0.2, 5.0),
        log_uniform(rng, 0.2, 5.0),
        log_uniform(rng, 0.2, 5.0),
    )
}

/// Positive state with `gq > 1.05 fb`.
pub fn strict_state(rng: &mut StdRng) -> State {
    loop {
        let s = positive_state(rng);
        if s.upper_product() > 1.05 * s.lower_product() {
            return s;
        }
    }
}

pub fn rh_residual_ref(l: &[f64; 4], r: &[f64; 4], sigma: f64) -> f64 {
    let fl = flux_ref(l);
    let fr = flux_ref(r);
    let scale = 1.0
        + fl.iter()
            .chain(fr.iter())
            .fold(0.0f64, |m, x| m.max(x.abs()));
    (0..4)
        .map(|k| (sigma * (r[k] - l[k]) - (fr[k] - fl[k])).abs())
        .fold(0.0, f64::max)
        / scale
}

/// Exact solution of `h_t + (h^2 b/2)_x = 0, b_t + (h b^2/2)_x = 0`.
/// A contact keeping `hb` fixed, then a wave keeping `h/b` fixed.
pub struct TempleSolution {
    pub left: (f64, f64),
    pub mid: (f64, f64),
    pub right: (f64, f64),
    pub contact_speed: f64,
    /// Shock speed, or fan head and tail.
    pub second: (f64, f64),
}

impl TempleSolution {
    pub fn new(left: (f64, f64), right: (f64, f64)) -> Self {
        let (hl, bl) = left;
        let (hr, br) = right;
        let ul = hl * bl;
        let ur = hr * br;
        let ratio = hr / br;
        let mid = ((ul * ratio).sqrt(), (ul / ratio).sqrt());
        let second = if ur >= ul {
            (1.5 * ul, 1.5 * ur)
        } else {
            let s = (0.5 * hr * hr * br - 0.5 * mid.0 * mid.0 * mid.1) / (hr - mid.0);
            (s, s)
        };
        Self {
            left,
            mid,
            right,
            contact_speed: 0.5 * ul,
            second,
        }
    }

    pub fn sample(&self, xi: f64) -> (f64, f64) {
        if xi < self.contact_speed {
            return self.left;
        }
        let (head, tail) = self.second;
        if xi < head || (head == tail && xi < head) {
            return self.mid;
        }
        if xi < tail {
            let u = 2.0 * xi / 3.0;
            let ratio = self.right.0 / self.right.1;
            return ((u * ratio).sqrt(), (u / ratio).sqrt());
        }
        self.right
    }
}
