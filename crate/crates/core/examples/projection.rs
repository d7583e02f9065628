//! Projects vectors off a positive clique and compares the new angles with the
//! closed-form prediction.

use equicode::codes::{predicted_projection_angle, project_onto_complement};
use equicode::matcore::{embed_from_gram, SymMatrix};
use equicode::Tolerance;

/// A `gamma`-clique of size `t` plus two vectors meeting it at `gamma` and each other at `p`.
fn scenario(gamma: f64, t: usize, p: f64) -> equicode::Result<equicode::Code> {
    let m = SymMatrix::from_fn(t + 2, |i, j| match (i == j, i >= t && j >= t) {
        (true, _) => 1.0,
        (false, true) => p,
        _ => gamma,
    })?;
    embed_from_gram(&m, &Tolerance::default())
}

fn main() -> equicode::Result<()> {
    let tol = Tolerance::default();
    println!("{:>6} {:>3} {:>7} {:>14} {:>14}", "gamma", "t", "p", "predicted", "measured");
    for (gamma, t, p) in [(1.0 / 3.0, 4, -1.0 / 3.0), (1.0 / 3.0, 4, 1.0 / 3.0), (0.2, 10, -0.2), (0.25, 3, 0.0)] {
        let code = scenario(gamma, t, p)?;
        let y: Vec<usize> = (0..t).collect();
        let projected = project_onto_complement(&code, &[t, t + 1], &y, &tol)?;
        let predicted = predicted_projection_angle(gamma, t, p)?;
        println!("{gamma:>6.3} {t:>3} {p:>7.3} {predicted:>14.10} {:>14.10}", projected.inner(0, 1));
    }
    Ok(())
}
