use super::{dot, Code};
use crate::error::{Error, Result};
use crate::matcore::Tolerance;

const ZERO_PROJECTION: f64 = 1e-10;

/// Inner product of `p_Y(x1)` and `p_Y(x2)` when every inner product with
/// the `t` vectors of a `gamma`-clique `Y` equals `gamma` and `<x1, x2> = p`.
pub fn predicted_projection_angle(gamma: f64, t: usize, p: f64) -> Result<f64> {
    if !(gamma > -1.0 && gamma < 1.0) {
        return Err(Error::InvalidParams(format!("gamma must lie in (-1, 1), got {gamma}")));
    }
    if t == 0 {
        return Err(Error::InvalidParams("clique size must be positive".into()));
    }
    if gamma < 0.0 && t != 1 {
        return Err(Error::InvalidParams("a negative clique must be a single vector".into()));
    }
    if !(-1.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("inner product {p} outside [-1, 1]")));
    }
    let t = t as f64;
    Ok((p - gamma) / (1.0 - gamma) + gamma * (1.0 - p) / ((1.0 + gamma * t) * (1.0 - gamma)))
}

/// Inner product of two vectors in `span(Y)` from their inner products with `Y`.
///
/// `Y` is a `{gamma}`-code of size `t`; `s1`, `s2` hold `<v_i, y>` for `y` in `Y`.
pub fn span_inner_product(s1: &[f64], s2: &[f64], gamma: f64, t: usize) -> Result<f64> {
    if !(-1.0..1.0).contains(&gamma) {
        return Err(Error::InvalidParams(format!("gamma must lie in [-1, 1), got {gamma}")));
    }
    if s1.len() != t {
        return Err(Error::DimensionMismatch { expected: t, got: s1.len() });
    }
    if s2.len() != t {
        return Err(Error::DimensionMismatch { expected: t, got: s2.len() });
    }
    let denom = 1.0 + gamma * (t as f64 - 1.0);
    if denom.abs() < 1e-12 {
        return Err(Error::SingularGram);
    }
    let sum1: f64 = s1.iter().sum();
    let sum2: f64 = s2.iter().sum();
    Ok((dot(s1, s2) - gamma / denom * sum1 * sum2) / (1.0 - gamma))
}

/// `p_Y(X)`: normalized projections of `x_indices` onto `span(y_indices)^perp`.
///
/// `Y` must be a `gamma`-clique (pairwise inner products within `angle_tol`
/// of their mean), and a single vector when `gamma < 0`.
pub fn project_onto_complement(
    code: &Code,
    x_indices: &[usize],
    y_indices: &[usize],
    tol: &Tolerance,
) -> Result<Code> {
    let n = code.len();
    let mut seen = vec![false; n];
    for &i in x_indices.iter().chain(y_indices) {
        if i >= n {
            return Err(Error::InvalidIndex { index: i, len: n });
        }
        if seen[i] {
            return Err(Error::InvalidParams(format!("index {i} repeated or shared between X and Y")));
        }
        seen[i] = true;
    }
    if x_indices.is_empty() || y_indices.is_empty() {
        return Err(Error::InvalidParams("X and Y must be non-empty".into()));
    }
    clique_gamma(code, y_indices, tol)?;

    // orthonormal basis of span(Y), Gram-Schmidt applied twice
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(y_indices.len());
    for &y in y_indices {
        let mut u = code.vector(y).to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&u, q);
                u.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = dot(&u, &u).sqrt();
        if norm < ZERO_PROJECTION {
            return Err(Error::SingularGram);
        }
        u.iter_mut().for_each(|a| *a /= norm);
        basis.push(u);
    }

    let mut projected = Vec::with_capacity(x_indices.len());
    for &x in x_indices {
        let mut u = code.vector(x).to_vec();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&u, q);
                u.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = dot(&u, &u).sqrt();
        if norm < ZERO_PROJECTION {
            return Err(Error::ZeroProjection { index: x });
        }
        u.iter_mut().for_each(|a| *a /= norm);
        projected.push(u);
    }
    Code::new(code.dim(), projected)
}

/// Mean pairwise inner product of `indices`, if they form a clique.
pub(crate) fn clique_gamma(code: &Code, indices: &[usize], tol: &Tolerance) -> Result<Option<f64>> {
    if indices.len() < 2 {
        return Ok(None);
    }
    let mut values = Vec::new();
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            values.push(code.inner(i, j));
        }
    }
    let gamma = values.iter().sum::<f64>() / values.len() as f64;
    let max_deviation = values.iter().fold(0.0_f64, |m, v| m.max((v - gamma).abs()));
    if max_deviation >= tol.angle_tol {
        return Err(Error::NotAClique { max_deviation });
    }
    if gamma < 0.0 {
        return Err(Error::InvalidParams("a negative clique must be a single vector".into()));
    }
    Ok(Some(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_value() {
        // p = gamma gives 1/(t + 1/gamma)
        for &(g, t) in &[(1.0 / 3.0, 1usize), (0.2, 4), (0.5, 7)] {
            let v = predicted_projection_angle(g, t, g).unwrap();
            assert!((v - 1.0 / (t as f64 + 1.0 / g)).abs() < 1e-15);
        }
    }

    #[test]
    fn single_vector_form() {
        let g = 1.0 / 3.0;
        let v = predicted_projection_angle(g, 1, -1.0 / 3.0).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
        let v2 = predicted_projection_angle(-g, 1, -1.0 / 3.0).unwrap();
        assert!((v2 - (-1.0 / 3.0 - g * g) / (1.0 - g * g)).abs() < 1e-15);
    }

    #[test]
    fn two_clique_value() {
        let v = predicted_projection_angle(1.0 / 3.0, 2, -1.0 / 3.0).unwrap();
        assert!((v + 0.6).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(predicted_projection_angle(1.0, 1, 0.0).is_err());
        assert!(predicted_projection_angle(-0.2, 2, 0.0).is_err());
        assert!(predicted_projection_angle(0.2, 0, 0.0).is_err());
        assert!(predicted_projection_angle(0.2, 2, 1.5).is_err());
    }

    #[test]
    fn span_inner_product_special_cases() {
        assert_eq!(span_inner_product(&[1.0, 2.0], &[3.0, 4.0], 0.0, 2).unwrap(), 11.0);
        let g = 0.4;
        assert!((span_inner_product(&[g], &[g], g, 1).unwrap() - g * g).abs() < 1e-15);
        // t = 1 - 1/gamma makes the clique Gram singular
        assert_eq!(span_inner_product(&[0.0; 3], &[0.0; 3], -0.5, 3), Err(Error::SingularGram));
        assert!(span_inner_product(&[0.0; 2], &[0.0; 3], 0.1, 2).is_err());
    }

    #[test]
    fn orthogonal_input_is_unchanged() {
        let e = |i: usize| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect::<Vec<_>>();
        let code = Code::new(3, vec![e(0), e(1), e(2)]).unwrap();
        let p = project_onto_complement(&code, &[1, 2], &[0], &Tolerance::default()).unwrap();
        assert_eq!(p.vectors(), &[e(1), e(2)]);
    }

    #[test]
    fn projection_errors() {
        let tol = Tolerance::default();
        // Y spans the whole plane
        let code = Code::normalized(2, vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(project_onto_complement(&code, &[0], &[1, 2], &tol), Err(Error::ZeroProjection { index: 0 })));
        let dup = Code::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            project_onto_complement(&dup, &[1], &[0], &tol),
            Err(Error::ZeroProjection { index: 1 })
        ));
        assert!(matches!(project_onto_complement(&dup, &[0], &[0], &tol), Err(Error::InvalidParams(_))));
        assert!(matches!(project_onto_complement(&dup, &[5], &[0], &tol), Err(Error::InvalidIndex { .. })));
        let not_clique = Code::normalized(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]])
            .unwrap();
        assert!(matches!(
            project_onto_complement(&not_clique, &[3], &[0, 1, 2], &tol),
            Err(Error::NotAClique { .. })
        ));
    }
}
