//! Effective resistance from a root to a nested family of boundary sets.

use super::AnalysisError;
use crate::net::{effective_resistance, Network};

/// `{x : layer(x) >= n}` for each `n` in `levels`.
pub fn layer_boundaries(net: &Network, levels: &[u32]) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let labels = net.layers().ok_or(AnalysisError::Walk(crate::walk::WalkError::NoLayers))?;
    Ok(levels
        .iter()
        .map(|&n| (0..net.n()).filter(|&x| labels[x] >= n).collect())
        .collect())
}

/// `R_eff(root <-> boundary)` for each boundary set.
pub fn resistance_profile(net: &Network, root: usize, boundaries: &[Vec<usize>]) -> Result<Vec<f64>, AnalysisError> {
    boundaries
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if b.is_empty() {
                return Err(AnalysisError::EmptyBoundary(i));
            }
            Ok(effective_resistance(net, &[root], b)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::LineNetwork;

    #[test]
    fn unit_chain_grows_linearly() {
        let net = LineNetwork::unit_chain(12).unwrap().to_network().with_layers((0..13).collect()).unwrap();
        let bounds = layer_boundaries(&net, &[1, 2, 4, 8, 12]).unwrap();
        let r = resistance_profile(&net, 0, &bounds).unwrap();
        for (got, want) in r.iter().zip([1.0, 2.0, 4.0, 8.0, 12.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        assert!(resistance_profile(&net, 0, &[vec![]]).is_err());
    }

    #[test]
    fn doubling_chain_converges() {
        let line = LineNetwork::from_weights((0..20).map(|i| 2f64.powi(i)).collect(), vec![0.0; 21]).unwrap();
        let net = line.to_network().with_layers((0..21).collect()).unwrap();
        let bounds = layer_boundaries(&net, &[5, 10, 20]).unwrap();
        let r = resistance_profile(&net, 0, &bounds).unwrap();
        for (got, n) in r.iter().zip([5, 10, 20]) {
            let want: f64 = (0..n).map(|i| 2f64.powi(-i)).sum();
            assert!((got - want).abs() < 1e-10);
        }
        assert!(r[2] < 2.0);
    }
}
