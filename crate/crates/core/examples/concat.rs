//! The randomized construction: rotated binary k-codes hung off a simplex.
//!
//! ```bash
//! cargo run --release --example concat -- 7
//! ```

use equicode::constructions::{concatenated_code, ConcatParams};

fn main() -> equicode::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let params = ConcatParams::new(30, 2, 3, 0.5, seed)?;
    println!("target size {}  beta_target {:.4}  alphas {:?}", params.size(), params.beta_target, params.alphas);

    let out = concatenated_code(&params)?;
    let r = &out.report;
    println!("{} vectors in R^{}", out.code.len(), out.code.dim());
    println!("attempts {}  seed used {}  success {}", r.attempts, r.seed_used, r.success);
    println!("achieved beta {:.4}  within-copy deviation {:.2e}", r.achieved_beta, r.within_copy_deviation);
    Ok(())
}
