//! The edge-labelled graph `G_C` of a code and the combinatorial and spectral
//! procedures run on it.

mod ramsey;
mod reduction;
mod spectral;

pub use ramsey::{greedy_independent_set, independent_set_of, is_monochromatic, ramsey_pair, MonochromaticPair};
pub use reduction::{reduction_pipeline, Accounting, Bucket, GarbageCheck, ReductionOutcome};
pub use spectral::{
    ball_lower_bound, ball_subgraph_lambda, catalog_lambda_checks, lambda_inequality_check, random_tree, spectral_radius,
    top_eigenpair, BallSubgraph,
};

use serde::{Deserialize, Serialize};

use crate::codes::{validate_code, AngleSet, Code};
use crate::error::{Error, Result};
use crate::matcore::SymMatrix;

/// Simple undirected graph as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Adds `uv`; loops and repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u].contains(&v) {
            return;
        }
        let pos = self.adj[u].partition_point(|&x| x < v);
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].partition_point(|&x| x < u);
        self.adj[v].insert(pos, u);
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.order()];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k;
        }
        let mut g = SimpleGraph::new(vertices.len());
        for (k, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                if index[u] != usize::MAX && index[u] > k {
                    g.add_edge(k, index[u]);
                }
            }
        }
        g
    }

    pub fn adjacency(&self) -> SymMatrix {
        SymMatrix::from_fn(self.order().max(1), |i, j| {
            if i < self.order() && self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
        .expect("order is positive")
    }

    /// Connected components, each as a sorted vertex list; isolated vertices included.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertices within distance `k` of `v0`, in BFS order.
    pub fn ball(&self, v0: usize, k: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[v0] = 0;
        let mut order = vec![v0];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            if dist[v] == k {
                continue;
            }
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    order.push(u);
                }
            }
        }
        order
    }
}

/// `G_C`: the complete graph on a code with inner products as edge labels and
/// the class of each label within an [`AngleSet`].
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    size: usize,
    labels: Vec<f64>,
    classes: Vec<u16>,
    num_classes: usize,
    negative_class: Option<usize>,
}

impl LabelledGraph {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: usize, j: usize) -> f64 {
        self.labels[i * self.size + j]
    }

    /// Class id of the edge `ij` (`i != j`).
    pub fn class(&self, i: usize, j: usize) -> usize {
        self.classes[i * self.size + j] as usize
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn negative_class(&self) -> Option<usize> {
        self.negative_class
    }

    /// A graph given directly by an edge colouring, `color(i, j) < colors` for `i < j`.
    pub fn from_coloring(size: usize, colors: usize, mut color: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        if colors == 0 || colors > u16::MAX as usize {
            return Err(Error::InvalidParams(format!("colour count {colors} out of range")));
        }
        let mut classes = vec![0u16; size * size];
        let mut labels = vec![0.0; size * size];
        for i in 0..size {
            labels[i * size + i] = 1.0;
            for j in (i + 1)..size {
                let c = color(i, j);
                if c >= colors {
                    return Err(Error::InvalidParams(format!("edge ({i}, {j}) has colour {c} >= {colors}")));
                }
                classes[i * size + j] = c as u16;
                classes[j * size + i] = c as u16;
                labels[i * size + j] = c as f64;
                labels[j * size + i] = c as f64;
            }
        }
        Ok(LabelledGraph { size, labels, classes, num_classes: colors, negative_class: None })
    }

    /// The graph formed by the edges of one class.
    pub fn class_graph(&self, class: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.size);
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                if self.class(i, j) == class {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

/// Builds `G_C`; every pair must match `angles`.
pub fn build_graph(code: &Code, angles: &AngleSet) -> Result<LabelledGraph> {
    let report = validate_code(code, angles);
    if !report.pass {
        return Err(Error::NotAnLCode { violations: report.violations.len() });
    }
    let n = code.len();
    let mut labels = vec![1.0; n * n];
    let mut classes = vec![0u16; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let g = code.inner(i, j);
            let (c, _) = angles.nearest(g);
            labels[i * n + j] = g;
            labels[j * n + i] = g;
            classes[i * n + j] = c as u16;
            classes[j * n + i] = c as u16;
        }
    }
    Ok(LabelledGraph {
        size: n,
        labels,
        classes,
        num_classes: angles.len(),
        negative_class: angles.negative_class(),
    })
}

/// Degree counts of one edge class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDegrees {
    pub class: usize,
    pub degrees: Vec<usize>,
    pub max: usize,
    pub average: f64,
}

/// Per-class degrees of every vertex, their maxima and averages.
pub fn gamma_degree_stats(g: &LabelledGraph) -> Vec<ClassDegrees> {
    let n = g.size();
    let mut counts = vec![vec![0usize; n]; g.num_classes()];
    for i in 0..n {
        for j in (i + 1)..n {
            let c = g.class(i, j);
            counts[c][i] += 1;
            counts[c][j] += 1;
        }
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(class, degrees)| {
            let max = degrees.iter().copied().max().unwrap_or(0);
            let average = degrees.iter().sum::<usize>() as f64 / n.max(1) as f64;
            ClassDegrees { class, degrees, max, average }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: usize,
    pub edges: usize,
    pub is_tree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeStructure {
    pub is_matching: bool,
    /// Components with at least one edge.
    pub components: Vec<ComponentSummary>,
    pub max_degree: usize,
}

/// Component decomposition of the negative-class graph.
pub fn negative_structure_report(g: &LabelledGraph) -> Result<NegativeStructure> {
    let class = g
        .negative_class()
        .ok_or_else(|| Error::WrongStructure("angle set has no negative element".into()))?;
    Ok(structure_of(&g.class_graph(class)))
}

pub(crate) fn structure_of(h: &SimpleGraph) -> NegativeStructure {
    let components: Vec<ComponentSummary> = h
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let edges = c.iter().map(|&v| h.degree(v)).sum::<usize>() / 2;
            ComponentSummary { vertices: c.len(), edges, is_tree: edges + 1 == c.len() }
        })
        .collect();
    let max_degree = h.max_degree();
    NegativeStructure { is_matching: max_degree <= 1, components, max_degree }
}
