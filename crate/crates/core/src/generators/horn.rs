//! Horns in `Z^d`: lattice points `x` with `0 <= x_1 <= x1_max` and
//! `x_2^2 + ... + x_d^2 <= f(x_1)^2`.

use std::collections::HashMap;

use super::GenError;
use crate::net::Network;

pub const DEFAULT_F_FLOOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HornSpec {
    pub d: usize,
    pub alpha: f64,
    pub x1_max: u32,
    pub f_floor: f64,
}

impl HornSpec {
    pub fn new(d: usize, alpha: f64, x1_max: u32) -> Self {
        HornSpec { d, alpha, x1_max, f_floor: DEFAULT_F_FLOOR }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.d || x[0] < 0 || x[0] > self.x1_max as i64 {
            return false;
        }
        let r2: i64 = x[1..].iter().map(|v| v * v).sum();
        (r2 as f64) <= horn_profile(x[0] as f64, self.d, self.alpha, self.f_floor).powi(2)
    }
}

/// Cross-section radius `max(floor, (x ln^α x)^{1/(d-1)})`, equal to `floor` for `x <= 1`.
pub fn horn_profile(x: f64, d: usize, alpha: f64, floor: f64) -> f64 {
    if x <= 1.0 {
        return floor;
    }
    (x * x.ln().powf(alpha)).powf(1.0 / (d as f64 - 1.0)).max(floor)
}

#[derive(Debug, Clone)]
pub struct Horn {
    pub spec: HornSpec,
    /// Layer labels are `x_1`.
    pub network: Network,
    /// Row-major coordinates, `d` per vertex.
    pub coords: Vec<i64>,
    pub origin: usize,
    pub layer_offsets: Vec<usize>,
}

impl Horn {
    pub fn coord(&self, v: usize) -> &[i64] {
        &self.coords[v * self.spec.d..(v + 1) * self.spec.d]
    }
}

pub fn build_horn(spec: HornSpec) -> Result<Horn, GenError> {
    if spec.d < 3 {
        return Err(GenError::BadDimension(spec.d));
    }
    if !(spec.alpha > 1.0) {
        return Err(GenError::BadAlpha(spec.alpha));
    }
    if spec.x1_max < 2 {
        return Err(GenError::TooShort { got: spec.x1_max as u64, min: 2 });
    }
    let d = spec.d;
    let mut coords: Vec<i64> = Vec::new();
    let mut layer_offsets = vec![0usize];
    let mut cross: Vec<i64> = vec![0; d - 1];
    for x1 in 0..=spec.x1_max {
        let f = horn_profile(x1 as f64, d, spec.alpha, spec.f_floor);
        let reach = f.floor() as i64;
        let bound = f * f;
        // odometer over the cube [-reach, reach]^{d-1}
        cross.iter_mut().for_each(|c| *c = -reach);
        'outer: loop {
            let r2: i64 = cross.iter().map(|v| v * v).sum();
            if (r2 as f64) <= bound {
                coords.push(x1 as i64);
                coords.extend_from_slice(&cross);
                if coords.len() as u64 / d as u64 > super::layered::MAX_VERTICES {
                    return Err(GenError::TooLarge(coords.len() as u64 / d as u64));
                }
            }
            for c in cross.iter_mut().rev() {
                if *c < reach {
                    *c += 1;
                    continue 'outer;
                }
                *c = -reach;
            }
            break;
        }
        layer_offsets.push(coords.len() / d);
    }
    let n = coords.len() / d;
    let index: HashMap<&[i64], usize> = coords.chunks_exact(d).enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = Vec::new();
    let mut probe = vec![0i64; d];
    for (i, c) in coords.chunks_exact(d).enumerate() {
        for axis in 0..d {
            probe.copy_from_slice(c);
            probe[axis] += 1;
            if let Some(&j) = index.get(probe.as_slice()) {
                edges.push((i, j, 1.0));
            }
        }
    }
    let origin = index[vec![0i64; d].as_slice()];
    let labels: Vec<u32> = coords.chunks_exact(d).map(|c| c[0] as u32).collect();
    let network = Network::new(n, edges)?.with_layers(labels)?;
    Ok(Horn { spec, network, coords, origin, layer_offsets })
}
