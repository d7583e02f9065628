//! Cardinality bounds and proof inequalities as executable certificates.
//!
//! Asymptotic statements are checked only in the exact finite form that the
//! proofs display before limits are taken; each certificate names its source.

mod witness;

pub use witness::{garbage_witness, one_angle_garbage_witness};

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Witness};
use crate::codes::{
    angle_set_after_projection, detect_equiangular, gram_of, validate_code, AngleParams, AngleSet, Code,
};
use crate::constructions::binomial;
use crate::error::{Error, Result};
use crate::graph::{build_graph, gamma_degree_stats, negative_structure_report};
use crate::matcore::{embed_from_gram, float_rank, frac, rank_of, sym_eigenvalues, SymMatrix, Tolerance};

/// `|C| <= 1/α + 1` for a `[-1, -α]`-code; on equality the Gram must be the simplex Gram.
pub fn negative_clique_certificate(code: &Code, alpha: f64, tol: &Tolerance) -> Result<Certificate> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParams(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let angles = AngleSet::interval(-1.0, -alpha, tol.angle_tol)?;
    let report = validate_code(code, &angles);
    if !report.pass {
        return Err(Error::NotAnLCode { violations: report.violations.len() });
    }
    let m = code.len() as f64;
    let rhs = 1.0 / alpha + 1.0;
    let mut cert = Certificate::inequality("negative-clique", "bounding size of a negative clique", m, rhs, 1e-9);
    if (rhs - m).abs() <= 1e-9 && code.len() > 1 {
        let target = -1.0 / (m - 1.0);
        let mut max_deviation = 0.0_f64;
        for i in 0..code.len() {
            for j in (i + 1)..code.len() {
                max_deviation = max_deviation.max((code.inner(i, j) - target).abs());
            }
        }
        let confirmed = max_deviation <= tol.angle_tol;
        cert = cert.with_witness(Witness::Simplex { confirmed, max_deviation }).require(confirmed);
    }
    Ok(cert)
}

/// Linear independence of the outer products `x_i x_i^T`, hence `m <= C(r+1, 2)`.
pub fn gerzon_certificate(code: &Code, tol: &Tolerance) -> Result<Certificate> {
    let m = code.len();
    let anchor = "outer products are linearly independent";
    if m == 1 {
        return Ok(Certificate::inequality("gerzon", anchor, 1.0, 1.0, 0.0)
            .measure("rank", 1.0)
            .measure("outer_rank", 1.0));
    }
    let alpha = detect_equiangular(code, tol).ok_or(Error::NotEquiangular)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::NotEquiangular);
    }
    let embedded = embed_from_gram(&gram_of(code), tol)?;
    let r = embedded.dim();
    let flat: Vec<Vec<f64>> = embedded
        .vectors()
        .iter()
        .map(|x| x.iter().flat_map(|a| x.iter().map(move |b| a * b)).collect())
        .collect();
    let outer = SymMatrix::from_fn(m, |i, j| crate::codes::dot(&flat[i], &flat[j]))?;
    let mut identity_dev = 0.0_f64;
    for i in 0..m {
        for j in 0..m {
            identity_dev = identity_dev.max((outer.get(i, j) - code.inner(i, j).powi(2)).abs());
        }
    }
    let outer_rank = float_rank(&sym_eigenvalues(&outer)?, tol);
    let mut cert = Certificate::inequality("gerzon", anchor, m as f64, binomial(r as u64 + 1, 2) as f64, 0.0)
        .require(outer_rank == m)
        .measure("rank", r as f64)
        .measure("outer_rank", outer_rank as f64)
        .measure("alpha", alpha)
        .measure("outer_identity_deviation", identity_dev);
    // exact Gram of outer products: (1 - α²) I + α² J
    if let Some(a) = crate::matcore::snap_rational(alpha) {
        let a2 = &a * &a;
        let exact = SymMatrix::from_fn_rational(m, |i, j| if i == j { frac(1, 1) } else { a2.clone() })?;
        let exact_rank = rank_of(&exact, tol)?;
        cert = cert.require(exact_rank == m).measure("outer_rank_exact", exact_rank as f64);
    }
    Ok(cert)
}

/// `|C| <= (1 + σ² d)(n + 1)` for an `L(α, t)`-code with average negative degree `d`.
pub fn schnirelman_applied_certificate(code: &Code, params: &AngleParams, tol: &Tolerance) -> Result<Certificate> {
    let angles = angle_set_after_projection(params, tol.angle_tol)?;
    let g = build_graph(code, &angles)?;
    let d = gamma_degree_stats(&g)[0].average;
    let gram = gram_of(code);
    let n = rank_of(&gram, tol)?;
    let sigma = params.sigma;
    let rhs = (1.0 + sigma * sigma * d) * (n as f64 + 1.0);
    // the trace-ratio step: tr(N)²/tr(N²) <= n + 1 for N = M_C - εJ
    let nmat = gram.add_scaled_ones(-params.epsilon);
    let ratio = nmat.trace().powi(2) / nmat.trace_of_square();
    Ok(
        Certificate::inequality("schnirelman-applied", "schnirelman trick applied", code.len() as f64, rhs, 1e-9)
            .measure("average_negative_degree", d)
            .measure("rank", n as f64)
            .measure("trace_ratio", ratio),
    )
}

/// For an `L(α, t)`-code whose negative edges form a matching:
/// `rank(M_C - εJ) = |C|` and therefore `|C| <= rank(M_C) + 1`.
pub fn matching_full_rank_certificate(code: &Code, params: &AngleParams, tol: &Tolerance) -> Result<Certificate> {
    if (params.alpha - 1.0 / 3.0).abs() <= tol.angle_tol {
        return Err(Error::ExcludedAngle);
    }
    let angles = angle_set_after_projection(params, tol.angle_tol)?;
    let g = build_graph(code, &angles)?;
    let structure = negative_structure_report(&g)?;
    if !structure.is_matching {
        return Err(Error::WrongStructure(format!(
            "negative edges have maximum degree {}",
            structure.max_degree
        )));
    }
    let m = code.len();
    let gram = gram_of(code);
    let rank_m = rank_of(&gram, tol)?;
    let float_n_rank = rank_of(&gram.add_scaled_ones(-params.epsilon), tol)?;
    let n_rank = match params.exact() {
        Some((_, eps, sigma)) => {
            let one = frac(1, 1);
            let diag = &one - &eps;
            let neg = -(&sigma * &diag);
            let zero = frac(0, 1);
            let exact = SymMatrix::from_fn_rational(m, |i, j| {
                if i == j {
                    diag.clone()
                } else if g.class(i, j) == 0 {
                    neg.clone()
                } else {
                    zero.clone()
                }
            })?;
            rank_of(&exact, tol)?
        }
        None => float_n_rank,
    };
    Ok(Certificate::inequality("matching-full-rank", "full rank", m as f64, rank_m as f64 + 1.0, 0.0)
        .require(n_rank == m)
        .measure("rank_n", n_rank as f64)
        .measure("rank_n_float", float_n_rank as f64)
        .measure("rank_m", rank_m as f64)
        .measure("matching_edges", g.class_graph(0).edge_count() as f64))
}

/// `2B(β+1) + 2A(1-α) <= |C|²` on the union of `parts`, where `A` counts
/// edges at value `α` and `B` edges at most `-β`. With `ℓ >= 2` equal parts of
/// size `t`, also reports the part-count bound
/// `(β + α + (1-α)/t - δ(1+β)) / (β - δ(1+β))`, with `δ` the measured
/// fraction of missing `β`-edges between parts.
pub fn multipartite_certificate(
    code: &Code,
    parts: &[Vec<usize>],
    alpha: f64,
    beta: f64,
    tol: &Tolerance,
) -> Result<Certificate> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParams(format!("beta must lie in (0, 1], got {beta}")));
    }
    let mut owner = vec![usize::MAX; code.len()];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::WrongStructure(format!("part {p} is empty")));
        }
        for &v in part {
            if v >= code.len() {
                return Err(Error::InvalidIndex { index: v, len: code.len() });
            }
            if owner[v] != usize::MAX {
                return Err(Error::WrongStructure(format!("vertex {v} lies in two parts")));
            }
            owner[v] = p;
        }
        for (a, &i) in part.iter().enumerate() {
            for &j in &part[a + 1..] {
                if (code.inner(i, j) - alpha).abs() > tol.angle_tol {
                    return Err(Error::WrongStructure(format!("part {p} is not an alpha-clique")));
                }
            }
        }
    }
    let vertices: Vec<usize> = parts.iter().flatten().copied().collect();
    let (mut a_edges, mut b_edges, mut b_between) = (0u64, 0u64, 0u64);
    for (k, &i) in vertices.iter().enumerate() {
        for &j in &vertices[k + 1..] {
            let g = code.inner(i, j);
            if (g - alpha).abs() <= tol.angle_tol {
                a_edges += 1;
            } else if g <= -beta + tol.angle_tol {
                b_edges += 1;
                if owner[i] != owner[j] {
                    b_between += 1;
                }
            }
        }
    }
    let size = vertices.len() as f64;
    let lhs = 2.0 * b_edges as f64 * (beta + 1.0) + 2.0 * a_edges as f64 * (1.0 - alpha);
    let rhs = size * size;
    let mut cert = Certificate::inequality("multipartite", "multipartite graphs", lhs, rhs, 1e-12 * rhs)
        .measure("A", a_edges as f64)
        .measure("B", b_edges as f64)
        .measure("parts", parts.len() as f64);
    let ell = parts.len();
    let t = parts[0].len();
    if ell >= 2 && parts.iter().all(|p| p.len() == t) {
        let pairs = (ell * (ell - 1) / 2) as f64 * (t * t) as f64;
        let delta = 1.0 - b_between as f64 / pairs;
        let denom = beta - delta * (1.0 + beta);
        cert = cert.measure("delta", delta);
        if denom > 0.0 {
            let bound = (beta + alpha + (1.0 - alpha) / t as f64 - delta * (1.0 + beta)) / denom;
            cert = cert.measure("ell_bound", bound).measure("ell_limit", 1.0 + alpha / beta);
        }
    }
    Ok(cert)
}

/// `|C| <= C(r + s, s)` for a code with `s` admissible inner products and Gram rank `r`.
pub fn dgs_bound_check(code: &Code, angles: &AngleSet, tol: &Tolerance) -> Result<Certificate> {
    if !angles.is_finite() {
        return Err(Error::NotFinite);
    }
    let report = validate_code(code, angles);
    if !report.pass {
        return Err(Error::NotAnLCode { violations: report.violations.len() });
    }
    let r = rank_of(&gram_of(code), tol)?;
    let s = angles.len();
    let bound = binomial((r + s) as u64, s as u64);
    Ok(Certificate::inequality("dgs", "finite bound", code.len() as f64, bound as f64, 0.0)
        .measure("rank", r as f64)
        .measure("angles", s as f64))
}

/// `Σβ_i² <= 1 + αNΣβ_i²` over the `N` negative edges at `x`, the finite form of
/// `<Mw, w> >= 0` with `w = (β_1, ..., β_N, 1)`.
pub fn beta_energy_check(code: &Code, x: usize, alpha: f64, beta: f64, tol: &Tolerance) -> Result<Certificate> {
    if x >= code.len() {
        return Err(Error::InvalidIndex { index: x, len: code.len() });
    }
    let angles = AngleSet::beta_with_points(beta, &[alpha], tol.angle_tol)?;
    let report = validate_code(code, &angles);
    if !report.pass {
        return Err(Error::NotAnLCode { violations: report.violations.len() });
    }
    let negatives: Vec<usize> = (0..code.len())
        .filter(|&j| j != x && code.inner(x, j) <= -beta + tol.angle_tol)
        .collect();
    let betas: Vec<f64> = negatives.iter().map(|&j| -code.inner(x, j)).collect();
    let energy: f64 = betas.iter().map(|b| b * b).sum();
    let n = negatives.len() as f64;
    // <Mw, w> evaluated directly on the Gram of N_β(x) ∪ {x}
    let mut form = 1.0 - 2.0 * energy;
    for (a, &i) in negatives.iter().enumerate() {
        for (b, &j) in negatives.iter().enumerate() {
            form += betas[a] * betas[b] * code.inner(i, j);
        }
    }
    Ok(Certificate::inequality("beta-energy", "beta edges", energy, 1.0 + alpha * n * energy, 1e-9)
        .with_witness(Witness::Indices { indices: negatives })
        .measure("energy", energy)
        .measure("alpha_n", alpha * n)
        .measure("quadratic_form", form))
}

/// Closed-form reference values for a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    pub n: u64,
    pub k: u64,
    pub alpha: f64,
    pub beta: f64,
    /// `C(n+1, 2)`
    pub gerzon: u64,
    /// `C(n+k, k)`
    pub dgs: u64,
    /// `1/β + 1`
    pub neg_clique: f64,
    pub targets: TheoremTargets,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremTargets {
    /// `2n - 2` at `α = 1/3`, else `1.93n`.
    pub equiangular: f64,
    /// The sharper `1.92n` proved for the projected code (recorded, not reconciled).
    pub projected: f64,
    /// `2(1 + max(α/β, 0)) n`
    pub one_angle: f64,
    /// `2^k (k-1)! (1 + α/β) n^k`, with `α` playing the role of `α_1`.
    pub k_angles: f64,
}

pub fn bound_table(n: u64, k: u64, alpha: f64, beta: f64) -> BoundTable {
    let nf = n as f64;
    let equiangular = if (alpha - 1.0 / 3.0).abs() < 1e-12 { 2.0 * nf - 2.0 } else { 1.93 * nf };
    let ratio = if beta > 0.0 { alpha / beta } else { f64::INFINITY };
    let factorial: f64 = (1..k.max(1)).map(|i| i as f64).product();
    BoundTable {
        n,
        k,
        alpha,
        beta,
        gerzon: binomial(n + 1, 2),
        dgs: binomial(n + k, k),
        neg_clique: 1.0 / beta + 1.0,
        targets: TheoremTargets {
            equiangular,
            projected: 1.92 * nf,
            one_angle: 2.0 * (1.0 + ratio.max(0.0)) * nf,
            k_angles: 2f64.powi(k as i32) * factorial * (1.0 + ratio) * nf.powi(k as i32),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_kcode, kcode_angles, lemmens_seidel_code, regular_simplex, seven_dim_28_lines};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn negative_clique() {
        let c = negative_clique_certificate(&regular_simplex(4).unwrap(), 0.25, &tol()).unwrap();
        assert!(c.pass);
        assert_eq!(c.witness, Some(Witness::Simplex { confirmed: true, max_deviation: c_dev(&c) }));
        let antipodal = Code::new(1, vec![vec![1.0], vec![-1.0]]).unwrap();
        assert!(negative_clique_certificate(&antipodal, 1.0, &tol()).unwrap().pass);
        let basis = Code::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(negative_clique_certificate(&basis, 0.5, &tol()), Err(Error::NotAnLCode { .. })));
    }

    fn c_dev(c: &Certificate) -> f64 {
        match c.witness {
            Some(Witness::Simplex { max_deviation, .. }) => max_deviation,
            _ => f64::NAN,
        }
    }

    #[test]
    fn gerzon() {
        let c = gerzon_certificate(&seven_dim_28_lines(), &tol()).unwrap();
        assert!(c.pass);
        assert_eq!(c.lhs, 28.0);
        assert_eq!(c.rhs, 28.0);
        assert_eq!(c.measurements["rank"], 7.0);
        assert_eq!(c.measurements["outer_rank"], 28.0);
        assert!(c.measurements["outer_identity_deviation"] < 1e-10);
        let hex: Vec<Vec<f64>> = (0..3)
            .map(|k| {
                let a = std::f64::consts::PI * k as f64 / 3.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        let c = gerzon_certificate(&Code::new(2, hex).unwrap(), &tol()).unwrap();
        assert!(c.pass && c.rhs == 3.0 && c.lhs == 3.0);
        let single = Code::new(3, vec![vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(gerzon_certificate(&single, &tol()).unwrap().pass);
        assert!(matches!(gerzon_certificate(&binary_kcode(4, 2).unwrap(), &tol()), Err(Error::NotEquiangular)));
    }

    #[test]
    fn dgs() {
        let c = dgs_bound_check(&binary_kcode(6, 2).unwrap(), &AngleSet::points(&kcode_angles(2), 1e-9).unwrap(), &tol())
            .unwrap();
        assert!(c.pass && c.lhs == 15.0 && c.rhs == 28.0);
        let pm = AngleSet::points(&[-1.0 / 3.0, 1.0 / 3.0], 1e-9).unwrap();
        let c = dgs_bound_check(&seven_dim_28_lines(), &pm, &tol()).unwrap();
        assert_eq!(c.rhs, 36.0);
        let interval = AngleSet::interval(-1.0, -0.5, 1e-9).unwrap();
        assert!(matches!(dgs_bound_check(&seven_dim_28_lines(), &interval, &tol()), Err(Error::NotFinite)));
    }

    #[test]
    fn multipartite_simplex_equality() {
        for r in 1..=12 {
            let c = regular_simplex(r).unwrap();
            let parts: Vec<Vec<usize>> = (0..=r).map(|i| vec![i]).collect();
            let cert = multipartite_certificate(&c, &parts, 0.5, 1.0 / r as f64, &tol()).unwrap();
            assert!(cert.pass);
            assert!(cert.margin.abs() < 1e-10, "r = {r}: {}", cert.margin);
        }
    }

    #[test]
    fn multipartite_single_clique() {
        let c = lemmens_seidel_code(5).unwrap();
        let part = vec![0, 2, 4, 6];
        let cert = multipartite_certificate(&c, &[part], 1.0 / 3.0, 1.0 / 3.0, &tol()).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.measurements["A"], 6.0);
        assert!(matches!(
            multipartite_certificate(&c, &[vec![0, 1]], 1.0 / 3.0, 0.5, &tol()),
            Err(Error::WrongStructure(_))
        ));
    }

    #[test]
    fn beta_energy() {
        for r in [2usize, 3, 6] {
            let c = regular_simplex(r).unwrap();
            let cert = beta_energy_check(&c, 0, 0.5, 1.0 / r as f64, &tol()).unwrap();
            assert!(cert.pass);
            assert!((cert.measurements["energy"] - 1.0 / r as f64).abs() < 1e-12);
            assert!(cert.measurements["quadratic_form"] >= -1e-12);
        }
        let basis = Code::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let cert = beta_energy_check(&basis, 0, 0.0, 0.5, &tol()).unwrap();
        assert_eq!(cert.lhs, 0.0);
    }

    #[test]
    fn table_values() {
        assert_eq!(bound_table(7, 2, 1.0 / 3.0, 1.0 / 3.0).gerzon, 28);
        assert_eq!(bound_table(23, 2, 0.2, 0.2).gerzon, 276);
        let t = bound_table(10, 2, 1.0 / 3.0, 1.0 / 3.0);
        assert_eq!(t.targets.equiangular, 18.0);
        assert_eq!(t.dgs, 66);
        assert_eq!(t.neg_clique, 4.0);
        assert_eq!(bound_table(10, 1, 0.2, 0.2).targets.equiangular, 19.3);
    }
}
