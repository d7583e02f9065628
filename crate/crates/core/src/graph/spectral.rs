use super::{build_graph, SimpleGraph};
use crate::certificate::{Certificate, Witness};
use crate::codes::{angle_set_after_projection, dot, AngleParams, Code};
use crate::constructions::RngStream;
use crate::error::Result;
use crate::matcore::{sym_eigen, Tolerance};

/// Largest graph handled by the dense eigensolver; power iteration above.
const DENSE_LIMIT: usize = 500;
const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 200_000;

/// `λ₁(H)`, the largest adjacency eigenvalue.
pub fn spectral_radius(h: &SimpleGraph) -> f64 {
    top_eigenpair(h).0
}

/// `λ₁(H)` with a unit eigenvector whose entries sum to a non-negative value.
pub fn top_eigenpair(h: &SimpleGraph) -> (f64, Vec<f64>) {
    let n = h.order();
    if n == 0 {
        return (0.0, Vec::new());
    }
    let (lambda, mut x) = if n <= DENSE_LIMIT {
        let s = sym_eigen(&h.adjacency()).expect("adjacency entries are finite");
        let v = s.eigenvectors.expect("requested").swap_remove(0);
        (s.eigenvalues[0], v)
    } else {
        shifted_power(h)
    };
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    (lambda, x)
}

/// Power iteration on `A + Δ I`, whose dominant eigenvalue is `λ₁ + Δ`.
fn shifted_power(h: &SimpleGraph) -> (f64, Vec<f64>) {
    let n = h.order();
    let shift = h.max_degree() as f64;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut mu = 0.0;
    for _ in 0..POWER_MAX_ITERS {
        let mut y: Vec<f64> = (0..n)
            .map(|v| shift * x[v] + h.neighbors(v).iter().map(|&u| x[u]).sum::<f64>())
            .collect();
        let next = dot(&y, &x);
        let norm = dot(&y, &y).sqrt();
        if norm == 0.0 {
            return (0.0, x);
        }
        y.iter_mut().for_each(|v| *v /= norm);
        x = y;
        if (next - mu).abs() <= POWER_TOL * next.abs().max(1.0) {
            mu = next;
            break;
        }
        mu = next;
    }
    (mu - shift, x)
}

/// The ball of radius `k` around `v0` and its spectral radius.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSubgraph {
    /// Vertices of `G` in BFS order; vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: SimpleGraph,
    pub lambda1: f64,
}

pub fn ball_subgraph_lambda(g: &SimpleGraph, v0: usize, k: usize) -> BallSubgraph {
    let vertices = g.ball(v0, k);
    let graph = g.induced(&vertices);
    let lambda1 = spectral_radius(&graph);
    BallSubgraph { vertices, graph, lambda1 }
}

/// `2 (1 - 1/(k+1)) sqrt(δ - 1)`
pub fn ball_lower_bound(min_degree: usize, k: usize) -> f64 {
    2.0 * (1.0 - 1.0 / (k as f64 + 1.0)) * (min_degree.saturating_sub(1) as f64).sqrt()
}

/// Uniform labelled tree on `n` vertices from a random Prüfer sequence.
pub fn random_tree(n: usize, rng: &mut RngStream) -> SimpleGraph {
    if n <= 2 {
        return SimpleGraph::path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n)).collect();
    let mut degree = vec![1usize; n];
    code.iter().for_each(|&v| degree[v] += 1);
    let mut g = SimpleGraph::new(n);
    for &v in &code {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        g.add_edge(leaf, v);
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

/// Vertex 0 of degree exactly 4 plus four more edges, each touching a neighbour of 0.
///
/// The spectral bound for 8-edge graphs only holds in this form: a long tail
/// hanging off one leaf has `λ₁ ≈ 2.117`.
fn random_degree_four_graph(rng: &mut RngStream) -> SimpleGraph {
    let mut edges: Vec<(usize, usize)> = (1..=4).map(|i| (0, i)).collect();
    let mut n = 5;
    while edges.len() < 8 {
        let u = 1 + rng.below(4);
        let v = match rng.below(3) {
            0 => {
                n += 1;
                n - 1
            }
            _ => 1 + rng.below(n - 1),
        };
        let e = (u.min(v), u.max(v));
        if u != v && !edges.contains(&e) {
            edges.push(e);
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

fn catalog_entry(item: &str, witness: &str, h: &SimpleGraph, threshold: f64) -> Certificate {
    let lambda = spectral_radius(h);
    Certificate::inequality(&format!("catalog-{item}:{witness}"), "eigenvalues of small graphs", threshold, lambda, 1e-9)
        .with_witness(Witness::Eigenvalue { value: lambda })
        .measure("vertices", h.order() as f64)
        .measure("edges", h.edge_count() as f64)
}

/// Checks the five spectral thresholds on canonical and sampled witnesses.
pub fn catalog_lambda_checks() -> Vec<Certificate> {
    let mut out = Vec::new();
    out.push(catalog_entry("i", "path-11", &SimpleGraph::path(11), 20.0 / 11.0));
    let mut rng = RngStream::new(0x7ee5);
    for s in 0..20 {
        out.push(catalog_entry("i", &format!("random-tree-{s}"), &random_tree(11, &mut rng), 20.0 / 11.0));
    }
    for k in 3..=10 {
        out.push(catalog_entry("ii", &format!("cycle-{k}"), &SimpleGraph::cycle(k), 2.0));
    }
    let star = SimpleGraph::star(5);
    let lambda = spectral_radius(&star);
    out.push(
        catalog_entry("iii", "star-1-5", &star, 2.2)
            .require((lambda - 5f64.sqrt()).abs() <= 1e-9)
            .measure("sqrt5_deviation", (lambda - 5f64.sqrt()).abs()),
    );
    let mut dart = SimpleGraph::star(4);
    dart.add_edge(1, 2);
    out.push(catalog_entry("iv", "star-1-4-plus-edge", &dart, 2.25));
    let spider = SimpleGraph::from_edges(9, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7), (4, 8)]);
    out.push(catalog_entry("v", "spider-2-2-2-2", &spider, 2.2));
    let double = SimpleGraph::from_edges(9, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)]);
    out.push(catalog_entry("v", "star-1-4-two-forks", &double, 2.2));
    let mut rng = RngStream::new(0x8ed9e);
    for s in 0..20 {
        out.push(catalog_entry("v", &format!("random-{s}"), &random_degree_four_graph(&mut rng), 2.2));
    }
    out
}

/// The exact form `0 <= 1 - ε + ε<Jx,x> - σ(1-ε) λ₁(H)` of `<M_C x, x> >= 0`,
/// where `x` is the top eigenvector of the negative-edge graph `H`.
pub fn lambda_inequality_check(code: &Code, params: &AngleParams, tol: &Tolerance) -> Result<Certificate> {
    let angles = angle_set_after_projection(params, tol.angle_tol)?;
    let g = build_graph(code, &angles)?;
    let h = g.class_graph(0);
    let (lambda, x) = top_eigenpair(&h);
    let eps = params.epsilon;
    let sigma = params.sigma;
    let jx: f64 = x.iter().sum::<f64>().powi(2);
    let value = 1.0 - eps + eps * jx - sigma * (1.0 - eps) * lambda;
    let direct: f64 = (0..code.len())
        .map(|i| x[i] * (0..code.len()).map(|j| code.inner(i, j) * x[j]).sum::<f64>())
        .sum();
    let upper = 1.0 - sigma * lambda + eps * (code.len() as f64 + sigma * lambda);
    Ok(Certificate::inequality("lambda-inequality", "relating angle and eigenvalue", 0.0, value, tol.psd_slack)
        .with_witness(Witness::Vector { values: x })
        .measure("lambda1", lambda)
        .measure("sigma_lambda1", sigma * lambda)
        .measure("quadratic_form_direct", direct)
        .measure("upper_form", upper))
}
