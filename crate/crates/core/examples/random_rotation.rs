//! Empirical tail of inner products between independent uniform unit vectors.

use equicode::codes::Code;
use equicode::constructions::{random_unit_vectors, RngStream};

fn main() -> equicode::Result<()> {
    let (n, pairs, t) = (200usize, 10_000usize, 0.2f64);
    let mut rng = RngStream::new(42);
    let code: Code = random_unit_vectors(2 * pairs, n, &mut rng)?;
    let hits = (0..pairs).filter(|&i| code.inner(2 * i, 2 * i + 1) >= t).count();
    let freq = hits as f64 / pairs as f64;
    let bound = (-t * t * n as f64 / 2.0).exp();
    println!("P[<u, v> >= {t}] ~ {freq:.5}  (bound {bound:.5})");
    Ok(())
}
