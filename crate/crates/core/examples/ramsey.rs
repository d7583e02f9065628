//! Monochromatic pair extraction and greedy independent sets.

use equicode::constructions::RngStream;
use equicode::graph::{greedy_independent_set, is_monochromatic, ramsey_pair, LabelledGraph};

fn main() -> equicode::Result<()> {
    let mut rng = RngStream::new(11);
    let g = LabelledGraph::from_coloring(70, 2, |_, _| rng.below(2))?;
    let pair = ramsey_pair(&g, 2, 3, 1)?;
    println!("X {:?}  Y {:?}  colour {}", pair.x, pair.y, pair.color);
    println!("chain sizes {:?}", pair.chain_sizes);
    println!("invariant holds: {}", is_monochromatic(&g, &pair));

    for class in 0..2 {
        let h = g.class_graph(class);
        let set = greedy_independent_set(&g, class);
        let bound = g.size() as f64 / (h.max_degree() + 1) as f64;
        println!("class {class}: independent set of {} >= {bound:.2}", set.len());
    }
    Ok(())
}
