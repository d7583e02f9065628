//! Cardinality certificates on small codes, and the reference bound table.

use equicode::bounds::{
    beta_energy_check, bound_table, matching_full_rank_certificate, multipartite_certificate,
    negative_clique_certificate,
};
use equicode::codes::AngleParams;
use equicode::constructions::regular_simplex;
use equicode::matcore::{embed_from_gram, SymMatrix};
use equicode::{Certificate, Tolerance};

fn show(c: &Certificate) {
    println!("{:<20} {:>10.4} <= {:<10.4} {}", c.name, c.lhs, c.rhs, if c.pass { "pass" } else { "FAIL" });
}

fn main() -> equicode::Result<()> {
    let tol = Tolerance::default();
    let simplex = regular_simplex(6)?;
    show(&negative_clique_certificate(&simplex, 1.0 / 6.0, &tol)?);
    let singletons: Vec<Vec<usize>> = (0..7).map(|i| vec![i]).collect();
    show(&multipartite_certificate(&simplex, &singletons, 0.5, 1.0 / 6.0, &tol)?);
    show(&beta_energy_check(&simplex, 0, 0.5, 1.0 / 6.0, &tol)?);

    // two matched pairs and two singletons in L(1/5, 10)
    let params = AngleParams::new(0.2, 10)?;
    let (eps, neg) = (params.epsilon, params.negative_value());
    let gram = SymMatrix::from_fn(6, |i, j| match (i == j, i / 2 == j / 2 && i < 4) {
        (true, _) => 1.0,
        (false, true) => neg,
        _ => eps,
    })?;
    show(&matching_full_rank_certificate(&embed_from_gram(&gram, &tol)?, &params, &tol)?);

    let table = bound_table(23, 2, 0.2, 0.2);
    println!("\nn = 23: gerzon {}  dgs {}  neg clique {}", table.gerzon, table.dgs, table.neg_clique);
    println!("targets {:?}", table.targets);
    Ok(())
}
