//! Simple random walk on `{0..a}` started at 0 and conditioned to reach `a`
//! before returning to 0, sampled exactly through the harmonic function `h(x) = x`.

use rand::Rng;

use super::WalkError;
use crate::seed::rng_from_seed;

pub fn sample_conditioned_excursion(a: u32, seed: u64, laziness: f64) -> Result<Vec<u32>, WalkError> {
    sample_conditioned_excursion_with(a, laziness, &mut rng_from_seed(seed))
}

/// From `x` in `1..a`: stay with probability `λ`, otherwise move to `x ± 1`
/// with probabilities `(x ± 1) / 2x`.
pub fn sample_conditioned_excursion_with<R: Rng + ?Sized>(
    a: u32,
    laziness: f64,
    rng: &mut R,
) -> Result<Vec<u32>, WalkError> {
    if a < 2 {
        return Err(WalkError::ExcursionTooShort(a));
    }
    if !(0.0..1.0).contains(&laziness) {
        return Err(WalkError::BadLaziness(laziness));
    }
    let mut path = vec![0u32, 1];
    let mut x = 1u32;
    while x < a {
        let u: f64 = rng.random();
        if u < laziness {
            path.push(x);
            continue;
        }
        let v = (u - laziness) / (1.0 - laziness);
        x = if v < (x + 1) as f64 / (2 * x) as f64 { x + 1 } else { x - 1 };
        path.push(x);
    }
    Ok(path)
}
