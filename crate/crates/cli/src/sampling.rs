//! Seeded random inputs for the verify sweeps.
//!
//! Sample `i` of a suite draws from its own ChaCha8 stream, so the inputs do
//! not depend on how the sweep is split across threads.

use apollonia::half::HalfSpacePoint;
use apollonia::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for sample `index` of the suite numbered `suite`.
pub fn sample_rng(seed: u64, suite: u32, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | (index & 0xffff_ffff));
    rng
}

/// Radius cap cycling through `1 − 10⁻¹, 1 − 10⁻³, 1 − 10⁻⁶`, so a third of
/// the samples sit close to the boundary sphere.
pub fn ball_radius(index: u64) -> f64 {
    1.0 - 10f64.powi(-[1, 3, 6][(index % 3) as usize])
}

/// Uniform point of the ball of the given radius (rejection sampling).
pub fn in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Point {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let p = Point::new(v).expect("finite coordinates");
        if p.norm_sq() < 1.0 {
            return p.scale(radius);
        }
    }
}

/// Point of the half-space with horizontal part in `[−3, 3]ⁿ⁻¹` and
/// log-uniform height in `[10⁻³, 10]`.
pub fn in_half(rng: &mut ChaCha8Rng, n: usize) -> HalfSpacePoint {
    let mut v: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-3.0..3.0)).collect();
    v.push(10f64.powf(rng.random_range(-3.0..1.0)));
    HalfSpacePoint::new(Point::new(v).expect("finite coordinates")).expect("positive height")
}
