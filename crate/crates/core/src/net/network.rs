use super::NetError;

/// An undirected edge with positive conductance. Self-loops have `u == v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub c: f64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if self.u as usize == x {
            self.v as usize
        } else {
            self.u as usize
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// One entry of a vertex's incidence list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub to: u32,
    pub edge: u32,
}

/// Weighted undirected multigraph on vertices `0..n`.
///
/// Parallel edges and self-loops are kept as given. A self-loop appears once
/// in its vertex's incidence list, so it contributes its conductance once to
/// the vertex weight `C_x` and is taken with probability `c / C_x` by the
/// network walk.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    incidence: Vec<Incidence>,
    weight: Vec<f64>,
    layers: Option<Vec<u32>>,
}

impl Network {
    /// Validates and builds a network from `(u, v, c)` triples.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, NetError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(NetError::Empty);
        }
        if n > u32::MAX as usize {
            return Err(NetError::VertexOutOfRange(n));
        }
        let mut list = Vec::new();
        for (index, (u, v, c)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(NetError::EndpointOutOfRange { index, vertex: x, n });
                }
            }
            if !(c > 0.0 && c.is_finite()) {
                return Err(NetError::BadConductance { index, c });
            }
            list.push(Edge { u: u as u32, v: v as u32, c });
        }
        Ok(Self::from_validated(n, list))
    }

    pub(crate) fn from_validated(n: usize, edges: Vec<Edge>) -> Self {
        let mut count = vec![0usize; n + 1];
        for e in &edges {
            count[e.u as usize] += 1;
            if !e.is_loop() {
                count[e.v as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for x in 0..n {
            offsets[x + 1] = offsets[x] + count[x];
        }
        let mut fill = offsets.clone();
        let mut incidence = vec![Incidence { to: 0, edge: 0 }; offsets[n]];
        let mut weight = vec![0.0; n];
        for (i, e) in edges.iter().enumerate() {
            let (u, v) = (e.u as usize, e.v as usize);
            incidence[fill[u]] = Incidence { to: e.v, edge: i as u32 };
            fill[u] += 1;
            weight[u] += e.c;
            if u != v {
                incidence[fill[v]] = Incidence { to: e.u, edge: i as u32 };
                fill[v] += 1;
                weight[v] += e.c;
            }
        }
        Network { n, edges, offsets, incidence, weight, layers: None }
    }

    /// Attaches a layer label to every vertex.
    pub fn with_layers(mut self, layers: Vec<u32>) -> Result<Self, NetError> {
        if layers.len() != self.n {
            return Err(NetError::BadLabels { got: layers.len(), expected: self.n });
        }
        self.layers = Some(layers);
        Ok(self)
    }

    pub fn without_layers(mut self) -> Self {
        self.layers = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn neighbors(&self, x: usize) -> &[Incidence] {
        &self.incidence[self.offsets[x]..self.offsets[x + 1]]
    }

    /// Position of `x`'s incidence list within the flat incidence array.
    pub fn incidence_range(&self, x: usize) -> std::ops::Range<usize> {
        self.offsets[x]..self.offsets[x + 1]
    }

    /// Number of incident edge slots (a self-loop counts once).
    pub fn degree(&self, x: usize) -> usize {
        self.offsets[x + 1] - self.offsets[x]
    }

    /// Total incident conductance `C_x`.
    pub fn weight(&self, x: usize) -> f64 {
        self.weight[x]
    }

    pub fn layers(&self) -> Option<&[u32]> {
        self.layers.as_deref()
    }

    pub fn layer(&self, x: usize) -> Option<u32> {
        self.layers.as_ref().map(|l| l[x])
    }

    /// Largest degree over all vertices other than `excluded`.
    pub fn max_degree_excluding(&self, excluded: Option<usize>) -> usize {
        (0..self.n)
            .filter(|&x| Some(x) != excluded)
            .map(|x| self.degree(x))
            .max()
            .unwrap_or(0)
    }

    /// Same graph with every conductance replaced by `f(edge index, edge)`.
    /// Edges mapped to a nonpositive conductance are dropped.
    pub fn reweighted<F>(&self, mut f: F) -> Network
    where
        F: FnMut(usize, &Edge) -> f64,
    {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let c = f(i, e);
                (c > 0.0 && c.is_finite()).then_some(Edge { c, ..*e })
            })
            .collect();
        let mut net = Network::from_validated(self.n, edges);
        net.layers = self.layers.clone();
        net
    }

    pub fn check_vertex(&self, x: usize) -> Result<(), NetError> {
        if x < self.n {
            Ok(())
        } else {
            Err(NetError::VertexOutOfRange(x))
        }
    }

    /// Vertices reachable from `start`, as a membership mask.
    pub fn component_of(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for inc in self.neighbors(x) {
                let y = inc.to as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}
