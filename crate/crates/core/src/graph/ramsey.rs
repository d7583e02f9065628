use serde::{Deserialize, Serialize};

use super::{LabelledGraph, SimpleGraph};
use crate::error::{Error, Result};

/// `(X, Y)` where every edge of `X ∪ Y` touching `Y` has colour `color`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonochromaticPair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub color: usize,
    /// `|X_1|, ..., |X_kt|` along the majority chain.
    pub chain_sizes: Vec<usize>,
}

/// Extracts a monochromatic pair with `|X| = m`, `|Y| = t` from a `k`-coloured graph.
///
/// Each step picks the lowest-index vertex of the current set, keeps the
/// neighbours along its majority colour (ties go to the lowest colour) and
/// records that colour. After `kt` steps some colour occurs `t` times.
pub fn ramsey_pair(g: &LabelledGraph, k: usize, t: usize, m: usize) -> Result<MonochromaticPair> {
    if k == 0 || t == 0 || m == 0 {
        return Err(Error::InvalidParams("k, t and m must be positive".into()));
    }
    if g.num_classes() > k {
        return Err(Error::InvalidParams(format!("graph has {} colours, expected at most {k}", g.num_classes())));
    }
    let needed = (k as u128)
        .checked_pow((k * t) as u32)
        .and_then(|p| p.checked_mul(m as u128));
    match needed {
        Some(p) if (g.size() as u128) > p => {}
        _ => {
            return Err(Error::TooSmall(format!(
                "need more than {k}^{} * {m} vertices, have {}",
                k * t,
                g.size()
            )))
        }
    }

    let mut current: Vec<usize> = (0..g.size()).collect();
    let mut picked = Vec::with_capacity(k * t);
    let mut colors = Vec::with_capacity(k * t);
    let mut chain_sizes = Vec::with_capacity(k * t);
    for _ in 0..k * t {
        let v = current[0];
        let rest = &current[1..];
        let mut count = vec![0usize; k];
        for &u in rest {
            count[g.class(v, u)] += 1;
        }
        let best = (0..k).max_by(|&a, &b| count[a].cmp(&count[b]).then(b.cmp(&a))).expect("k > 0");
        current = rest.iter().copied().filter(|&u| g.class(v, u) == best).collect();
        picked.push(v);
        colors.push(best);
        chain_sizes.push(current.len());
    }
    let color = (0..k)
        .find(|&c| colors.iter().filter(|&&x| x == c).count() >= t)
        .expect("pigeonhole over kt steps");
    let y: Vec<usize> = picked.iter().zip(&colors).filter(|(_, &c)| c == color).map(|(&v, _)| v).take(t).collect();
    if current.len() < m {
        return Err(Error::InternalError(format!("chain ended with {} < {m} vertices", current.len())));
    }
    current.truncate(m);
    Ok(MonochromaticPair { x: current, y, color, chain_sizes })
}

/// Checks the pair invariant directly from the graph.
pub fn is_monochromatic(g: &LabelledGraph, pair: &MonochromaticPair) -> bool {
    let mut seen = vec![false; g.size()];
    for &v in pair.x.iter().chain(&pair.y) {
        if v >= g.size() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    pair.y.iter().enumerate().all(|(a, &y)| {
        pair.y[a + 1..].iter().chain(&pair.x).all(|&u| g.class(y, u) == pair.color)
    })
}

/// Greedy independent set in the graph of one edge class.
pub fn greedy_independent_set(g: &LabelledGraph, class: usize) -> Vec<usize> {
    independent_set_of(&g.class_graph(class))
}

/// Takes vertices by ascending degree (ties by index), deleting each chosen
/// vertex's neighbourhood; the result has at least `n/(Δ+1)` vertices.
pub fn independent_set_of(h: &SimpleGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.order()).collect();
    order.sort_by_key(|&v| (h.degree(v), v));
    let mut removed = vec![false; h.order()];
    let mut out = Vec::new();
    for v in order {
        if removed[v] {
            continue;
        }
        out.push(v);
        removed[v] = true;
        h.neighbors(v).iter().for_each(|&u| removed[u] = true);
    }
    out.sort_unstable();
    out
}
