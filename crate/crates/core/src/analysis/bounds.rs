//! The degree/potential conductance bound and a uniform bound-check record.

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductanceBound {
    /// `12 ln d / ln(1/s)`.
    pub bound: f64,
    /// `ln(1/s) / ln d`.
    pub q: f64,
    /// The bound exceeds 1, which any conductance into a degree-one vertex already meets.
    pub vacuous: bool,
}

pub fn conductance_bound(d: f64, s: f64) -> Result<ConductanceBound, AnalysisError> {
    if !(d >= 2.0) || !d.is_finite() {
        return Err(AnalysisError::BadDegree(d));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(AnalysisError::BadS(s));
    }
    let q = (1.0 / s).ln() / d.ln();
    Ok(ConductanceBound { bound: 12.0 / q, q, vacuous: q < 12.0 })
}

/// One checked inequality `value <= bound`, with an optional Monte Carlo half-width.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub quantity: String,
    pub value: f64,
    pub half_width: Option<f64>,
    pub bound: f64,
    pub satisfied: bool,
    pub params: Vec<(String, String)>,
}

impl BoundReport {
    pub fn exact(quantity: &str, value: f64, bound: f64, params: &[(&str, String)]) -> Self {
        Self::build(quantity, value, None, bound, params)
    }

    pub fn empirical(quantity: &str, value: f64, half_width: f64, bound: f64, params: &[(&str, String)]) -> Self {
        Self::build(quantity, value, Some(half_width), bound, params)
    }

    fn build(quantity: &str, value: f64, half_width: Option<f64>, bound: f64, params: &[(&str, String)]) -> Self {
        BoundReport {
            quantity: quantity.to_string(),
            value,
            half_width,
            bound,
            satisfied: value <= bound + half_width.unwrap_or(0.0),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        let b = conductance_bound(4.0, (-24f64).exp()).unwrap();
        assert!((b.q - 24.0 / 4f64.ln()).abs() < 1e-12);
        assert!((b.bound - 0.5 * 4f64.ln()).abs() < 1e-12);
        assert!(!b.vacuous);
        let b = conductance_bound(2.0, 0.5).unwrap();
        assert!((b.q - 1.0).abs() < 1e-15 && (b.bound - 12.0).abs() < 1e-12 && b.vacuous);
        assert!(conductance_bound(4.0, 1.0).is_err());
        assert!(conductance_bound(4.0, 0.0).is_err());
        assert!(conductance_bound(1.0, 0.5).is_err());
    }

    #[test]
    fn report_flags() {
        assert!(BoundReport::exact("x", 1.0, 1.0, &[]).satisfied);
        assert!(!BoundReport::exact("x", 1.1, 1.0, &[]).satisfied);
        assert!(BoundReport::empirical("x", 1.1, 0.2, 1.0, &[("a", "3".into())]).satisfied);
    }
}
