//! Float helpers routed through `libm` so the crate builds without `std`
//! and produces bit-identical results either way.

pub(crate) use libm::{atan2, cos, fabs, hypot, sin, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const TAU: f64 = 2.0 * PI;

/// Reduce an angle to the half-open interval `(-PI, PI]`.
pub(crate) fn normalize_angle(a: f64) -> f64 {
    let mut r = libm::fmod(a, TAU);
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

pub(crate) fn max(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

pub(crate) fn min(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}
