//! Harmonic potentials by solving the reduced Laplacian system.
//!
//! Terminals are eliminated and the remaining system `L_II v_I = b` is
//! symmetric positive definite. Small systems are factored densely
//! (Cholesky); larger ones use conjugate gradients with a Jacobi
//! preconditioner driven to a relative residual of 1e-13.

use nalgebra::{DMatrix, DVector};

use super::transforms::{contract_sets, level_index};
use super::{NetError, Network};

/// Unknown count at or below which the dense factorisation is used.
const DENSE_LIMIT: usize = 400;
const CG_TARGET: f64 = 1e-13;
/// Accepted relative residual after the solve.
const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Unit-voltage solution between a source (`v = 1`) and a sink (`v = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageSolution {
    pub source: usize,
    pub sink: usize,
    /// `v(x)`: probability that the walk from `x` hits the source before the
    /// sink. Vertices outside the source's component are set to 0.
    pub potential: Vec<f64>,
    /// Effective conductance between source and sink.
    pub conductance: f64,
    /// Largest potential among the sink's neighbours.
    pub s: f64,
    /// Largest degree over vertices other than the sink.
    pub max_degree: usize,
    /// Level index `i(x)` in base `max(max_degree, 2)`; `None` where `v = 0`.
    pub level: Vec<Option<u32>>,
}

impl VoltageSolution {
    pub fn resistance(&self) -> f64 {
        1.0 / self.conductance
    }

    /// Base used for [`Self::level`].
    pub fn level_base(&self) -> usize {
        self.max_degree.max(2)
    }
}

/// Solves for the harmonic potential with `v(source) = 1`, `v(sink) = 0`.
pub fn solve_voltage(net: &Network, source: usize, sink: usize) -> Result<VoltageSolution, NetError> {
    net.check_vertex(source)?;
    net.check_vertex(sink)?;
    if source == sink {
        return Err(NetError::SourceIsSink(source));
    }
    let reach = net.component_of(source);
    if !reach[sink] {
        return Err(NetError::Disconnected(source, sink));
    }

    let n = net.n();
    let mut index = vec![usize::MAX; n];
    let mut interior = Vec::new();
    for x in 0..n {
        if reach[x] && x != source && x != sink {
            index[x] = interior.len();
            interior.push(x);
        }
    }

    let system = ReducedLaplacian::assemble(net, &interior, &index, source);
    let values = if interior.is_empty() {
        Vec::new()
    } else if interior.len() <= DENSE_LIMIT {
        system.solve_dense()?
    } else {
        system.solve_cg()?
    };

    let mut potential = vec![0.0; n];
    potential[source] = 1.0;
    for (k, &x) in interior.iter().enumerate() {
        potential[x] = values[k].clamp(0.0, 1.0);
    }

    let conductance: f64 = net
        .neighbors(source)
        .iter()
        .filter(|inc| inc.to as usize != source)
        .map(|inc| net.edge(inc.edge as usize).c * (1.0 - potential[inc.to as usize]))
        .sum();

    let s = net
        .neighbors(sink)
        .iter()
        .map(|inc| inc.to as usize)
        .filter(|&y| y != sink)
        .map(|y| potential[y])
        .fold(0.0, f64::max);

    let max_degree = net.max_degree_excluding(Some(sink));
    let base = max_degree.max(2) as f64;
    let level = potential.iter().map(|&v| level_index(v, base)).collect();

    Ok(VoltageSolution { source, sink, potential, conductance, s, max_degree, level })
}

/// Effective conductance between vertex sets `a` and `b`, by contracting each
/// set to a single terminal.
pub fn effective_conductance(net: &Network, a: &[usize], b: &[usize]) -> Result<f64, NetError> {
    if a.is_empty() || b.is_empty() {
        return Err(NetError::BadTerminalSets);
    }
    let mut mark = vec![0u8; net.n()];
    for &x in a {
        net.check_vertex(x)?;
        mark[x] = 1;
    }
    for &x in b {
        net.check_vertex(x)?;
        if mark[x] == 1 {
            return Err(NetError::BadTerminalSets);
        }
        mark[x] = 2;
    }
    let (quotient, _) = contract_sets(net, &[a, b])?;
    Ok(solve_voltage(&quotient, 0, 1)?.conductance)
}

pub fn effective_resistance(net: &Network, a: &[usize], b: &[usize]) -> Result<f64, NetError> {
    effective_conductance(net, a, b).map(|c| 1.0 / c)
}

/// Reduced Laplacian in CSR form, parallel edges merged.
struct ReducedLaplacian {
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    diag: Vec<f64>,
    rhs: Vec<f64>,
}

impl ReducedLaplacian {
    fn assemble(net: &Network, interior: &[usize], index: &[usize], source: usize) -> Self {
        let k = interior.len();
        let mut row_start = Vec::with_capacity(k + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut diag = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        let mut row: Vec<(usize, f64)> = Vec::new();
        row_start.push(0);
        for (i, &x) in interior.iter().enumerate() {
            row.clear();
            for inc in net.neighbors(x) {
                let y = inc.to as usize;
                if y == x {
                    continue;
                }
                let c = net.edge(inc.edge as usize).c;
                diag[i] += c;
                if y == source {
                    rhs[i] += c;
                } else if index[y] != usize::MAX {
                    row.push((index[y], c));
                }
            }
            row.sort_unstable_by_key(|&(j, _)| j);
            let mut last = usize::MAX;
            for &(j, c) in row.iter() {
                if j == last {
                    *vals.last_mut().unwrap() -= c;
                } else {
                    cols.push(j);
                    vals.push(-c);
                    last = j;
                }
            }
            row_start.push(cols.len());
        }
        ReducedLaplacian { row_start, cols, vals, diag, rhs }
    }

    fn len(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.len() {
            let mut acc = self.diag[i] * x[i];
            for p in self.row_start[i]..self.row_start[i + 1] {
                acc += self.vals[p] * x[self.cols[p]];
            }
            out[i] = acc;
        }
    }

    fn relative_residual(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; self.len()];
        self.apply(x, &mut ax);
        let r = norm(&ax.iter().zip(&self.rhs).map(|(a, b)| b - a).collect::<Vec<_>>());
        let b = norm(&self.rhs);
        if b == 0.0 {
            r
        } else {
            r / b
        }
    }

    fn solve_dense(&self) -> Result<Vec<f64>, NetError> {
        let k = self.len();
        let mut m = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = self.diag[i];
            for p in self.row_start[i]..self.row_start[i + 1] {
                m[(i, self.cols[p])] = self.vals[p];
            }
        }
        let chol = m.cholesky().ok_or(NetError::NotConverged { residual: f64::NAN, iterations: 0 })?;
        let x = chol.solve(&DVector::from_column_slice(&self.rhs));
        let x: Vec<f64> = x.iter().copied().collect();
        self.accept(x, 0)
    }

    fn solve_cg(&self) -> Result<Vec<f64>, NetError> {
        let k = self.len();
        let b_norm = norm(&self.rhs);
        let mut x = vec![0.0; k];
        if b_norm == 0.0 {
            return Ok(x);
        }
        let inv_diag: Vec<f64> = self.diag.iter().map(|d| 1.0 / d).collect();
        let mut r = self.rhs.clone();
        let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(a, b)| a * b).collect();
        let mut p = z.clone();
        let mut ap = vec![0.0; k];
        let mut rz = dot(&r, &z);
        let max_iter = 20 * k + 1000;
        let mut iterations = 0;
        while iterations < max_iter {
            iterations += 1;
            self.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..k {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            if norm(&r) <= CG_TARGET * b_norm {
                break;
            }
            for i in 0..k {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..k {
                p[i] = z[i] + beta * p[i];
            }
        }
        self.accept(x, iterations)
    }

    fn accept(&self, x: Vec<f64>, iterations: usize) -> Result<Vec<f64>, NetError> {
        let residual = self.relative_residual(&x);
        if residual.is_finite() && residual <= RESIDUAL_TOLERANCE {
            Ok(x)
        } else {
            Err(NetError::NotConverged { residual, iterations })
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
