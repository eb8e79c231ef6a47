//! Seeded polygon generators for scans, verification sweeps and the CLI.
//!
//! All randomness flows through [`SplitMix64`], a small hand-rolled
//! generator, so scan results are bit-identical across platforms and builds
//! regardless of `std` availability.

use alloc::vec::Vec;

use crate::geometry::{ConvexPolygon, GeometryError, Point};
use crate::scalar;

/// SplitMix64: 64 bits of state, full period, passes the usual batteries.
/// Plenty for jittering vertex angles.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Deterministic per-instance seed for scan cells, so instances can be
    /// generated independently and in parallel.
    pub fn derive(seed: u64, n: usize, instance: usize) -> Self {
        let mut mix = SplitMix64::new(seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let a = mix.next_u64();
        SplitMix64::new(a ^ (instance as u64).wrapping_mul(0xbf58476d1ce4e5b9))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Regular n-gon with the given circumradius, first vertex at angle zero.
pub fn regular_polygon(n: usize, circumradius: f64) -> Result<ConvexPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewVertices { got: n });
    }
    ConvexPolygon::new(
        (0..n)
            .map(|i| {
                let a = scalar::TAU * (i as f64) / (n as f64);
                Point::new(circumradius * scalar::cos(a), circumradius * scalar::sin(a))
            })
            .collect(),
    )
}

fn polygon_from_angles(angles: &[f64]) -> Result<ConvexPolygon, GeometryError> {
    ConvexPolygon::new(
        angles
            .iter()
            .map(|&a| Point::new(scalar::cos(a), scalar::sin(a)))
            .collect(),
    )
}

/// Regular n-gon on the unit circle with each vertex angle jittered by up to
/// a quarter of the regular spacing, which keeps the angles sorted.
pub fn regular_perturbed(n: usize, rng: &mut SplitMix64) -> Result<ConvexPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewVertices { got: n });
    }
    let spacing = scalar::TAU / (n as f64);
    for _ in 0..1000 {
        let angles: Vec<f64> = (0..n)
            .map(|i| spacing * (i as f64) + 0.25 * spacing * rng.next_range(-1.0, 1.0))
            .collect();
        if let Ok(p) = polygon_from_angles(&angles) {
            return Ok(p);
        }
    }
    unreachable!("quarter-spacing jitter keeps vertices in strictly convex position")
}

/// n points at uniform random angles on the unit circle. Points on a circle
/// are automatically in strictly convex position; draws with near-coincident
/// angles are rejected and resampled.
pub fn random_convex(n: usize, rng: &mut SplitMix64) -> Result<ConvexPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewVertices { got: n });
    }
    let min_gap = scalar::TAU / (n as f64) / 64.0;
    'attempt: for _ in 0..1000 {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.next_range(0.0, scalar::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        for i in 0..n {
            let next = if i + 1 == n {
                angles[0] + scalar::TAU
            } else {
                angles[i + 1]
            };
            if next - angles[i] < min_gap {
                continue 'attempt;
            }
        }
        if let Ok(p) = polygon_from_angles(&angles) {
            return Ok(p);
        }
    }
    // With the minimum-gap filter a valid draw is all but certain; bail out
    // loudly rather than loop forever on a broken caller-supplied n.
    panic!("failed to sample a strictly convex {n}-gon after 1000 attempts")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Generator {
    RegularExact,
    RegularPerturbed,
    RandomConvex,
}

impl Generator {
    pub fn generate(self, n: usize, rng: &mut SplitMix64) -> Result<ConvexPolygon, GeometryError> {
        match self {
            Generator::RegularExact => regular_polygon(n, 1.0),
            Generator::RegularPerturbed => regular_perturbed(n, rng),
            Generator::RandomConvex => random_convex(n, rng),
        }
    }
}
