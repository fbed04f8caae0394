//! Hitting probabilities of the line network absorbed at its right end.

use super::AnalysisError;
use crate::generators::LineNetwork;
use crate::walk::pass_window;

/// Probability of hitting 0 before `L` from `j`: `η_j / η_0`.
pub fn return_prob(line: &LineNetwork, j: usize) -> Result<f64, AnalysisError> {
    if j > line.len() {
        return Err(AnalysisError::OutOfRange { j, len: line.len() });
    }
    Ok(line.eta[j] / line.eta[0])
}

/// Probability that the walk started at `j_plus` never returns to `j_minus`:
/// `1 - η_{j+} / η_{j-} = (r_{j-} + ... + r_{j+ - 1}) / η_{j-}`.
pub fn escape_prob_window(line: &LineNetwork, j_minus: usize, j_plus: usize) -> Result<f64, AnalysisError> {
    if j_plus > line.len() || j_minus > j_plus {
        return Err(AnalysisError::OutOfRange { j: j_plus.max(j_minus), len: line.len() });
    }
    if j_minus == line.len() {
        return Ok(0.0);
    }
    let span: f64 = line.r[j_minus..j_plus].iter().sum();
    Ok(span / line.eta[j_minus])
}

/// [`escape_prob_window`] over the pass window of centre `j`.
pub fn escape_prob(line: &LineNetwork, j: u32, beta: f64) -> Result<f64, AnalysisError> {
    let (lo, hi) = pass_window(j, beta)?;
    escape_prob_window(line, lo as usize, hi as usize)
}
