//! Spectral thresholds for small graphs and the ball lower bound on random graphs.

use equicode::constructions::RngStream;
use equicode::graph::{ball_lower_bound, ball_subgraph_lambda, catalog_lambda_checks, SimpleGraph};

fn main() {
    let checks = catalog_lambda_checks();
    for c in checks.iter().filter(|c| !c.name.contains("random")) {
        println!("{:<34} lambda1 {:.6} >= {:.6}  {}", c.name, c.rhs, c.lhs, if c.pass { "ok" } else { "FAIL" });
    }
    let sampled = checks.iter().filter(|c| c.name.contains("random")).count();
    println!("{sampled} sampled witnesses, all pass: {}", checks.iter().all(|c| c.pass));

    let mut rng = RngStream::new(3);
    let mut g = SimpleGraph::cycle(40);
    for _ in 0..40 {
        g.add_edge(rng.below(40), rng.below(40));
    }
    let delta = g.min_degree();
    for k in [2, 5, 11] {
        let ball = ball_subgraph_lambda(&g, 0, k);
        println!(
            "k = {k:>2}: ball of {} vertices, lambda1 {:.4} >= {:.4}",
            ball.vertices.len(),
            ball.lambda1,
            ball_lower_bound(delta, k)
        );
    }
}
