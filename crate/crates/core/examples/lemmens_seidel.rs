//! Builds the `2n - 2` equiangular lines at angle `1/3` and checks the exact
//! rank and eigenvalue multiplicity of their Gram matrix.
//!
//! ```bash
//! cargo run --example lemmens_seidel -- 12
//! ```

use equicode::codes::{detect_equiangular, gram_of};
use equicode::constructions::{exact_gram_rank, lemmens_seidel_code, lemmens_seidel_gram};
use equicode::matcore::sym_eigenvalues;
use equicode::Tolerance;

fn main() -> equicode::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let tol = Tolerance::default();

    let code = lemmens_seidel_code(n)?;
    let alpha = detect_equiangular(&code, &tol).expect("construction is equiangular");
    let rank = exact_gram_rank(&lemmens_seidel_gram(n)?)?;
    let zeros = sym_eigenvalues(&gram_of(&code))?.iter().filter(|v| v.abs() < 1e-9).count();

    println!("n = {n}: {} unit vectors in R^{}", code.len(), code.dim());
    println!("angle          {alpha:.15}");
    println!("exact rank     {rank}");
    println!("zero eigvals   {zeros} (expected {})", n - 2);
    Ok(())
}
