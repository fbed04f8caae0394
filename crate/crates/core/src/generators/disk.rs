//! Lattice disk in `Z^2` with the exterior collapsed to one sink.

use std::collections::HashMap;

use super::GenError;
use crate::net::Network;

#[derive(Debug, Clone)]
pub struct GridDisk {
    pub radius: u32,
    pub network: Network,
    pub points: Vec<(i64, i64)>,
    pub origin: usize,
    pub sink: usize,
}

pub fn build_grid_disk(r: u32) -> Result<GridDisk, GenError> {
    if r < 2 {
        return Err(GenError::TooShort { got: r as u64, min: 2 });
    }
    let ri = r as i64;
    let mut points = Vec::new();
    for x in -ri..=ri {
        for y in -ri..=ri {
            if x * x + y * y <= ri * ri {
                points.push((x, y));
            }
        }
    }
    let index: HashMap<(i64, i64), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let sink = points.len();
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            match index.get(&(x + dx, y + dy)) {
                Some(&j) if j > i => edges.push((i, j, 1.0)),
                Some(_) => {}
                None => edges.push((i, sink, 1.0)),
            }
        }
    }
    let network = Network::new(sink + 1, edges)?;
    Ok(GridDisk { radius: r, network, origin: index[&(0, 0)], points, sink })
}
