//! Random d-regular graphs by stub matching, screened by spectral gap.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::GenError;
use crate::net::Network;
use crate::seed::{derive_seed, rng_from_seed};

/// Spectral screening attempts.
pub const MAX_ATTEMPTS: u32 = 200;
/// Shuffles per attempt while waiting for a simple pairing.
const MAX_SHUFFLES: u32 = 100_000;
const LANCZOS_STEPS: usize = 200;

/// Accepted upper bound on the second adjacency eigenvalue.
pub fn lambda_max(d: usize) -> f64 {
    d as f64 - 0.05
}

#[derive(Debug, Clone)]
pub struct RegularExpander {
    pub network: Network,
    pub lambda2: f64,
    pub attempts: u32,
}

/// Samples a simple `d`-regular graph on `n` vertices with `λ₂ <= lambda_max(d)`.
///
/// Stubs are matched by a uniform shuffle; samples with loops or repeated
/// edges are rejected, as are samples that fail the spectral screen (which
/// also rejects disconnected samples, since those have `λ₂ = d`).
pub fn gen_regular_expander(n: usize, d: usize, seed: u64) -> Result<RegularExpander, GenError> {
    if d < 3 {
        return Err(GenError::DegreeTooSmall { d, min: 3 });
    }
    if n <= d {
        return Err(GenError::TooFewVertices { n, d });
    }
    if (n * d) % 2 != 0 {
        return Err(GenError::Parity { n, d });
    }
    let mut rng = rng_from_seed(seed);
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|x| std::iter::repeat_n(x, d)).collect();
    for attempt in 1..=MAX_ATTEMPTS {
        let mut edges = None;
        for _ in 0..MAX_SHUFFLES {
            stubs.shuffle(&mut rng);
            edges = simple_pairing(&stubs);
            if edges.is_some() {
                break;
            }
        }
        let Some(edges) = edges else {
            return Err(GenError::RetriesExhausted(MAX_ATTEMPTS));
        };
        let network = Network::new(n, edges.iter().map(|&(u, v)| (u as usize, v as usize, 1.0)))?;
        let lambda2 = second_eigenvalue(&network, derive_seed(seed, 0x5eed, attempt as u64));
        if lambda2 <= lambda_max(d) {
            return Ok(RegularExpander { network, lambda2, attempts: attempt });
        }
    }
    Err(GenError::RetriesExhausted(MAX_ATTEMPTS))
}

fn simple_pairing(stubs: &[u32]) -> Option<Vec<(u32, u32)>> {
    let mut seen = HashSet::with_capacity(stubs.len() / 2);
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v || !seen.insert((u, v)) {
            return None;
        }
        edges.push((u, v));
    }
    Some(edges)
}

/// Second-largest adjacency eigenvalue of a regular graph.
///
/// Lanczos with full reorthogonalisation on the orthogonal complement of the
/// constant vector (the top eigenvector); the largest Ritz value of the
/// resulting tridiagonal matrix is returned. With `n - 1` steps this is exact.
pub fn second_eigenvalue(net: &Network, seed: u64) -> f64 {
    let n = net.n();
    let steps = LANCZOS_STEPS.min(n - 1);
    let mut rng = rng_from_seed(seed);
    let deflate = |x: &mut [f64]| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut q: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    deflate(&mut q);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|v| *v /= norm);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let mut alpha = Vec::with_capacity(steps);
    let mut beta: Vec<f64> = Vec::with_capacity(steps);
    let mut w = vec![0.0; n];
    for _ in 0..steps {
        for (v, out) in w.iter_mut().enumerate() {
            *out = net.neighbors(v).iter().map(|inc| q[inc.to as usize]).sum();
        }
        alpha.push(dot(&q, &w));
        basis.push(q);
        // two passes of Gram-Schmidt keep the basis orthogonal to working precision
        for _ in 0..2 {
            deflate(&mut w);
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = dot(&w, &w).sqrt();
        if b < 1e-10 {
            break;
        }
        beta.push(b);
        q = w.iter().map(|x| x / b).collect();
    }
    let k = alpha.len();
    let mut t = nalgebra::DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    nalgebra::SymmetricEigen::new(t).eigenvalues.iter().cloned().fold(f64::MIN, f64::max)
}
