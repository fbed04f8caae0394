//! Bounds for simple random walk conditioned to reach `a` before returning
//! to 0, and an exact oracle on the absorbed chain `{0..a}`.
//!
//! The walk starts at 0 and its first step is forced to 1; the chain is then
//! lazy with holding probability `λ` and otherwise moves `±1` evenly, with 0
//! and `a` absorbing.

use nalgebra::{DMatrix, DVector};

use super::AnalysisError;

pub const MAX_ORACLE_A: u32 = 64;
pub const MAX_ORACLE_T: u64 = 10_000;

/// `2 a t e^{-a^2 / 4t}` (0 at `t = 0`).
pub fn chernoff_bound(a: u32, t: u64) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let (a, t) = (a as f64, t as f64);
    2.0 * a * t * (-a * a / (4.0 * t)).exp()
}

/// `2 e^{-2m/a}` for even `a`.
pub fn visits_bound(a: u32, m: u64) -> Result<f64, AnalysisError> {
    if a < 2 || a % 2 != 0 {
        return Err(AnalysisError::OddA(a));
    }
    Ok(2.0 * (-2.0 * m as f64 / a as f64).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrwBounds {
    pub chernoff: f64,
    pub visits: f64,
}

pub fn srw_bounds(a: u32, t: u64, m: u64) -> Result<SrwBounds, AnalysisError> {
    Ok(SrwBounds { chernoff: chernoff_bound(a, t), visits: visits_bound(a, m)? })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SrwOracle {
    pub a: u32,
    pub laziness: f64,
    /// Probability of reaching `a` before 0 after the forced first step.
    pub p_top: f64,
    /// `hit_before[t] = P(τ_a < t | τ_a < τ_0)` for `t = 0..=t_max`.
    pub hit_before: Vec<f64>,
    /// `visits_tail[m] = P(|B| > m | τ_a < τ_0)` for `m = 0..=m_max`, where `B`
    /// is the set of times at `a/2` before `τ_a`. Empty for odd `a`.
    pub visits_tail: Vec<f64>,
    /// Probability of returning to `a/2` before absorption.
    pub rho: f64,
    /// The `C` in `e^{-2 C m / a}` matching the tail's geometric rate.
    pub fitted_c: f64,
}

/// `P_x(hit hi before lo)` for `x = lo..=hi`, by a dense solve over the interior.
fn hit_top(lo: usize, hi: usize, laziness: f64) -> Vec<f64> {
    let k = hi - lo - 1;
    let mut out = vec![0.0; hi - lo + 1];
    out[hi - lo] = 1.0;
    if k == 0 {
        return out;
    }
    let step = (1.0 - laziness) / 2.0;
    let mut m = DMatrix::<f64>::zeros(k, k);
    let mut rhs = DVector::<f64>::zeros(k);
    for i in 0..k {
        m[(i, i)] = 1.0 - laziness;
        if i > 0 {
            m[(i, i - 1)] = -step;
        }
        if i + 1 < k {
            m[(i, i + 1)] = -step;
        } else {
            rhs[i] = step;
        }
    }
    let sol = m.lu().solve(&rhs).expect("interior of an absorbing chain is nonsingular");
    out[1..=k].copy_from_slice(sol.as_slice());
    out
}

pub fn exact_srw_oracle(a: u32, t_max: u64, m_max: u64, laziness: f64) -> Result<SrwOracle, AnalysisError> {
    if a < 2 {
        return Err(AnalysisError::SmallA(a));
    }
    if a > MAX_ORACLE_A || t_max > MAX_ORACLE_T {
        return Err(AnalysisError::OracleTooLarge { max_a: MAX_ORACLE_A, max_t: MAX_ORACLE_T });
    }
    if !(0.0..1.0).contains(&laziness) {
        return Err(AnalysisError::BadLaziness(laziness));
    }
    let n = a as usize;
    let p_top = hit_top(0, n, laziness)[1];

    // absorbed mass at `a` by time s, with X_1 = 1
    let step = (1.0 - laziness) / 2.0;
    let mut dist = vec![0.0; n + 1];
    dist[1] = 1.0;
    let mut next = vec![0.0; n + 1];
    let mut absorbed_top = 0.0;
    let mut hit_before = vec![0.0; t_max as usize + 1];
    // hit_before[t] needs the absorbed mass by time t - 1
    for t in 2..=t_max as usize {
        // advance from time t - 2 to t - 1 (time 1 is the initial state)
        if t >= 3 {
            next.iter_mut().for_each(|v| *v = 0.0);
            for x in 1..n {
                let p = dist[x];
                if p == 0.0 {
                    continue;
                }
                next[x] += laziness * p;
                next[x - 1] += step * p;
                next[x + 1] += step * p;
            }
            absorbed_top += next[n];
            next[n] = 0.0;
            next[0] = 0.0;
            std::mem::swap(&mut dist, &mut next);
        }
        hit_before[t] = (absorbed_top / p_top).min(1.0);
    }

    let (visits_tail, rho, fitted_c) = if a % 2 == 0 {
        let b = n / 2;
        let p_reach = hit_top(0, b, laziness)[1];
        let up = hit_top(b, n, laziness);
        let down = hit_top(0, b, laziness);
        let back_from_above = 1.0 - up[1];
        let back_from_below = if b >= 2 { down[b - 1] } else { 0.0 };
        let rho = laziness + step * (back_from_above + back_from_below);
        let q_top = step * up[1];
        let tail = (0..=m_max)
            .map(|m| p_reach * rho.powf(m as f64) * q_top / (1.0 - rho) / p_top)
            .collect();
        (tail, rho, -(a as f64) / 2.0 * rho.ln())
    } else {
        (Vec::new(), f64::NAN, f64::NAN)
    };
    Ok(SrwOracle { a, laziness, p_top, hit_before, visits_tail, rho, fitted_c })
}
