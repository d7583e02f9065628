use serde::{Deserialize, Serialize};

use super::{ramsey_pair, LabelledGraph};
use crate::codes::{
    angle_set_after_projection, detect_equiangular, project_onto_complement, switch_vertices, validate_code,
    AngleParams, Code,
};
use crate::error::{Error, Result};
use crate::matcore::Tolerance;

/// Exact `T ⊆ Y` is kept only for cliques up to this size.
const EXACT_KEY_LIMIT: usize = 24;
/// Node budget of the backtracking clique search.
const SEARCH_BUDGET: usize = 2_000_000;

/// Vertices outside `Y` sharing the same positive attachment `T ⊆ Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    /// Positions in `Y` of the positive neighbours; absent for large cliques,
    /// where buckets are keyed by `|T|` alone.
    pub members: Option<Vec<usize>>,
    pub size: usize,
    pub vertices: Vec<usize>,
}

/// `|C| = |S_Y| + Σ_{T≠Y} |S_T| + |Y|`, counted after switching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Accounting {
    pub total: usize,
    pub s_y: usize,
    pub others: usize,
    pub clique: usize,
    pub holds: bool,
    /// Every `S_T` with `|T| < t/2` is empty after switching.
    pub low_buckets_empty: bool,
}

/// Bound `|S_T| < 2/α²` for a bucket with `t/2 <= |T| < t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GarbageCheck {
    pub t_size: usize,
    pub bucket_size: usize,
    pub bound: f64,
    /// The bound is only claimed when `|T| >= 2/α²`.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub alpha: f64,
    pub t: usize,
    pub clique: Vec<usize>,
    /// `"ramsey"` or `"search"`.
    pub clique_method: String,
    pub switched: Vec<usize>,
    pub buckets: Vec<Bucket>,
    pub s_y: Vec<usize>,
    pub accounting: Accounting,
    pub garbage: Vec<GarbageCheck>,
    /// Whether `p_Y(S_Y)` validated against `L(α, t)`; absent when `S_Y` is empty.
    pub projected_valid: Option<bool>,
    #[serde(skip)]
    pub projected: Option<Code>,
}

/// Finds a positive `t`-clique `Y`, switches weakly attached vertices, buckets
/// the rest by attachment and projects `S_Y` onto `span(Y)^⊥`.
pub fn reduction_pipeline(code: &Code, t: usize, tol: &Tolerance) -> Result<ReductionOutcome> {
    if t == 0 {
        return Err(Error::InvalidParams("clique size t must be positive".into()));
    }
    let alpha = detect_equiangular(code, tol).ok_or(Error::NotEquiangular)?;
    if alpha <= tol.angle_tol {
        return Err(Error::InvalidParams("codes with alpha = 0 have no positive edges".into()));
    }
    let n = code.len();
    let signs = LabelledGraph::from_coloring(n, 2, |i, j| usize::from(code.inner(i, j) > 0.0))?;
    let (clique, clique_method) = find_positive_clique(&signs, alpha, t)?;

    let mut in_y = vec![false; n];
    clique.iter().for_each(|&y| in_y[y] = true);
    let attach = |c: &Code, v: usize| -> Vec<usize> {
        (0..t).filter(|&p| c.inner(v, clique[p]) > 0.0).collect()
    };
    let switched: Vec<usize> =
        (0..n).filter(|&v| !in_y[v] && 2 * attach(code, v).len() < t).collect();
    let code = switch_vertices(code, &switched)?;

    let mut buckets: Vec<Bucket> = Vec::new();
    for v in (0..n).filter(|&v| !in_y[v]) {
        let members = attach(&code, v);
        let size = members.len();
        let key = (t <= EXACT_KEY_LIMIT).then_some(members);
        match buckets.iter_mut().find(|b| b.members == key && b.size == size) {
            Some(b) => b.vertices.push(v),
            None => buckets.push(Bucket { members: key, size, vertices: vec![v] }),
        }
    }
    buckets.sort_by(|a, b| b.size.cmp(&a.size).then_with(|| a.members.cmp(&b.members)));

    let s_y: Vec<usize> = buckets.iter().filter(|b| b.size == t).flat_map(|b| b.vertices.clone()).collect();
    let others: usize = buckets.iter().filter(|b| b.size < t).map(|b| b.vertices.len()).sum();
    let accounting = Accounting {
        total: n,
        s_y: s_y.len(),
        others,
        clique: t,
        holds: n == s_y.len() + others + t,
        low_buckets_empty: buckets.iter().all(|b| 2 * b.size >= t),
    };

    let bound = 2.0 / (alpha * alpha);
    let garbage = buckets
        .iter()
        .filter(|b| 2 * b.size >= t && b.size < t)
        .map(|b| {
            let applicable = b.size as f64 >= bound;
            GarbageCheck {
                t_size: b.size,
                bucket_size: b.vertices.len(),
                bound,
                applicable,
                holds: !applicable || (b.vertices.len() as f64) < bound,
            }
        })
        .collect();

    let (projected, projected_valid) = if s_y.is_empty() {
        (None, None)
    } else {
        let p = project_onto_complement(&code, &s_y, &clique, tol)?;
        let params = AngleParams::new(alpha, t)?;
        let angles = angle_set_after_projection(&params, tol.angle_tol)?;
        let ok = validate_code(&p, &angles).pass;
        (Some(p), Some(ok))
    };

    Ok(ReductionOutcome {
        alpha,
        t,
        clique,
        clique_method,
        switched,
        buckets,
        s_y,
        accounting,
        garbage,
        projected_valid,
        projected,
    })
}

/// Ramsey extraction when the graph is large enough to force a positive
/// clique past the negative-clique cap, backtracking search otherwise.
fn find_positive_clique(signs: &LabelledGraph, alpha: f64, t: usize) -> Result<(Vec<usize>, String)> {
    let cap = (1.0 / alpha).ceil() as usize + 2;
    let forced = t.max(cap);
    if let Ok(pair) = ramsey_pair(signs, 2, forced, 1) {
        if pair.color == 1 {
            let mut y = pair.y;
            y.truncate(t);
            return Ok((y, "ramsey".into()));
        }
    }
    let mut budget = SEARCH_BUDGET;
    let mut clique = Vec::with_capacity(t);
    let candidates: Vec<usize> = (0..signs.size()).collect();
    if extend(signs, t, &mut clique, &candidates, &mut budget) {
        Ok((clique, "search".into()))
    } else {
        Err(Error::NoClique { t })
    }
}

fn extend(g: &LabelledGraph, t: usize, clique: &mut Vec<usize>, candidates: &[usize], budget: &mut usize) -> bool {
    if clique.len() == t {
        return true;
    }
    for (k, &v) in candidates.iter().enumerate() {
        if clique.len() + candidates.len() - k < t || *budget == 0 {
            return false;
        }
        *budget -= 1;
        let next: Vec<usize> = candidates[k + 1..].iter().copied().filter(|&u| g.class(v, u) == 1).collect();
        clique.push(v);
        if extend(g, t, clique, &next, budget) {
            return true;
        }
        clique.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{lemmens_seidel_code, regular_simplex, seven_dim_28_lines};

    #[test]
    fn lemmens_seidel_partial_clique() {
        let tol = Tolerance::default();
        let c = lemmens_seidel_code(8).unwrap();
        let out = reduction_pipeline(&c, 5, &tol).unwrap();
        assert_eq!(out.clique, vec![0, 2, 4, 6, 8]);
        assert!(out.accounting.holds);
        assert!(out.accounting.low_buckets_empty);
        // the untouched blocks attach positively to all of Y
        assert_eq!(out.s_y, vec![10, 11, 12, 13]);
        assert_eq!(out.projected_valid, Some(true));
    }

    #[test]
    fn lemmens_seidel_full_clique_leaves_partners_in_garbage() {
        let tol = Tolerance::default();
        let c = lemmens_seidel_code(10).unwrap();
        let out = reduction_pipeline(&c, 9, &tol).unwrap();
        assert!(out.s_y.is_empty());
        assert!(out.projected.is_none());
        assert!(out.switched.is_empty());
        assert_eq!(out.accounting.others, 9);
        assert!(out.accounting.holds);
    }

    #[test]
    fn simplex_has_no_positive_clique() {
        let c = regular_simplex(4).unwrap();
        assert!(matches!(reduction_pipeline(&c, 2, &Tolerance::default()), Err(Error::NoClique { t: 2 })));
    }

    #[test]
    fn lines28_accounting() {
        let out = reduction_pipeline(&seven_dim_28_lines(), 4, &Tolerance::default()).unwrap();
        assert_eq!(out.clique.len(), 4);
        assert!(out.accounting.holds);
        assert_eq!(out.accounting.total, 28);
    }
}
