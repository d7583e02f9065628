use equicode::cli::{CodeFile, Metadata};
use equicode::codes::{gram_of, predicted_projection_angle, switch_vertices, validate_code, AngleSet, Code};
use equicode::constructions::{random_unit_vectors, RngStream};
use equicode::graph::{
    ball_lower_bound, ball_subgraph_lambda, greedy_independent_set, is_monochromatic, ramsey_pair, spectral_radius,
    LabelledGraph, SimpleGraph,
};
use equicode::matcore::{
    embed_from_gram, frac, is_psd, quadratic_form, rank_of, sym_eigenvalues, trace_rank_lower_bound, SymMatrix,
};
use equicode::Tolerance;
use proptest::prelude::*;

fn sym_matrix() -> impl Strategy<Value = SymMatrix> {
    (2usize..=20).prop_flat_map(|n| {
        proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
            SymMatrix::from_fn(n, |i, j| v[i.min(j) * n + i.max(j)]).unwrap()
        })
    })
}

/// `B B^T` for an integer `n x k` matrix `B`, so the rank is at most `k`.
fn low_rank_integer() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=12, 1usize..=6).prop_flat_map(|(n, k)| {
        proptest::collection::vec(-3i64..=3, n * k).prop_map(move |b| {
            let mut m = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    m[i * n + j] = (0..k).map(|c| b[i * k + c] * b[j * k + c]).sum();
                }
            }
            (n, m)
        })
    })
}

fn random_graph(n: usize, p: f64, seed: u64) -> SimpleGraph {
    let mut rng = RngStream::new(seed);
    let mut g = SimpleGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.next_f64() < p {
                g.add_edge(i, j);
            }
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_dominates_trace_ratio(m in sym_matrix()) {
        let tol = Tolerance::default();
        let rank = rank_of(&m, &tol).unwrap() as f64;
        prop_assert!(rank >= trace_rank_lower_bound(&m).unwrap() - 1e-9);
    }

    #[test]
    fn eigenvalues_match_traces(m in sym_matrix()) {
        let ev = sym_eigenvalues(&m).unwrap();
        let n = m.order() as f64;
        prop_assert!((ev.iter().sum::<f64>() - m.trace()).abs() <= 1e-9 * n);
        prop_assert!((ev.iter().map(|v| v * v).sum::<f64>() - m.trace_of_square()).abs() <= 1e-9 * n);
    }

    #[test]
    fn rational_and_float_rank_agree((n, m) in low_rank_integer()) {
        let tol = Tolerance::default();
        let exact = SymMatrix::from_fn_rational(n, |i, j| frac(m[i * n + j], 1)).unwrap();
        let float = SymMatrix::from_fn(n, |i, j| m[i * n + j] as f64).unwrap();
        prop_assert_eq!(rank_of(&exact, &tol).unwrap(), rank_of(&float, &tol).unwrap());
    }

    #[test]
    fn embedding_round_trips(seed in any::<u64>(), count in 1usize..15, dim in 1usize..8) {
        let tol = Tolerance::default();
        let code = random_unit_vectors(count, dim, &mut RngStream::new(seed)).unwrap();
        let gram = gram_of(&code);
        let back = embed_from_gram(&gram, &tol).unwrap();
        prop_assert!(back.dim() <= dim);
        for i in 0..count {
            for j in 0..count {
                prop_assert!((back.inner(i, j) - gram.get(i, j)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn psd_forms_are_nonnegative(seed in any::<u64>(), count in 1usize..12, dim in 1usize..6) {
        let tol = Tolerance::default();
        let mut rng = RngStream::new(seed);
        let gram = gram_of(&random_unit_vectors(count, dim, &mut rng).unwrap());
        prop_assert!(is_psd(&gram, &tol).unwrap().pass);
        for _ in 0..8 {
            let v: Vec<f64> = (0..count).map(|_| rng.gaussian()).collect();
            let norm2: f64 = v.iter().map(|x| x * x).sum();
            prop_assert!(quadratic_form(&gram, &v).unwrap() >= -tol.psd_slack * norm2);
        }
    }

    #[test]
    fn projection_lowers_angles(gamma in 0.01f64..0.9, t in 1usize..40, p in -1.0f64..0.99, dp in 0.0f64..0.5) {
        let a = predicted_projection_angle(gamma, t, p).unwrap();
        prop_assert!(a <= p + 1e-12);
        let q = (p + dp).min(0.99);
        prop_assert!(predicted_projection_angle(gamma, t, q).unwrap() >= a - 1e-12);
    }

    #[test]
    fn ball_bound_holds(seed in any::<u64>(), n in 10usize..=200, k in 2usize..=11) {
        let mut g = random_graph(n, 4.0 / n as f64, seed);
        // a Hamiltonian cycle lifts the minimum degree to at least 2
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        let delta = g.min_degree();
        let ball = ball_subgraph_lambda(&g, seed as usize % n, k);
        prop_assert!(ball.lambda1 >= ball_lower_bound(delta, k) - 1e-9);
    }

    #[test]
    fn spectral_radius_is_monotone(seed in any::<u64>(), n in 2usize..40, keep in 0.0f64..1.0) {
        let g = random_graph(n, 0.3, seed);
        let mut rng = RngStream::new(seed ^ 0x5eed);
        let mut h = SimpleGraph::new(n);
        for u in 0..n {
            for &v in g.neighbors(u) {
                if u < v && rng.next_f64() < keep {
                    h.add_edge(u, v);
                }
            }
        }
        prop_assert!(spectral_radius(&h) <= spectral_radius(&g) + 1e-9);
    }

    #[test]
    fn switching_preserves_lines(seed in any::<u64>(), count in 2usize..12, mask in any::<u16>()) {
        let code = random_unit_vectors(count, 4, &mut RngStream::new(seed)).unwrap();
        let flip: Vec<usize> = (0..count).filter(|i| mask >> i & 1 == 1).collect();
        let s = switch_vertices(&code, &flip).unwrap();
        for i in 0..count {
            for j in 0..count {
                let sign = if flip.contains(&i) != flip.contains(&j) { -1.0 } else { 1.0 };
                prop_assert!((s.inner(i, j) - sign * code.inner(i, j)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ramsey_pairs_are_monochromatic(seed in any::<u64>(), k in 2usize..=3) {
        let mut rng = RngStream::new(seed);
        let (t, m) = (if k == 2 { 2 } else { 1 }, 1);
        let n = k.pow((k * t) as u32) * m + 1 + rng.below(20);
        let g = LabelledGraph::from_coloring(n, k, |_, _| rng.below(k)).unwrap();
        let pair = ramsey_pair(&g, k, t, m).unwrap();
        prop_assert!(is_monochromatic(&g, &pair));
        prop_assert_eq!((pair.x.len(), pair.y.len()), (m, t));
    }

    #[test]
    fn greedy_meets_turan(seed in any::<u64>(), n in 1usize..80, p in 0.0f64..1.0) {
        let g = random_graph(n, p, seed);
        let lg = LabelledGraph::from_coloring(n, 2, |i, j| usize::from(g.has_edge(i, j))).unwrap();
        let set = greedy_independent_set(&lg, 1);
        prop_assert!(set.len() * (g.max_degree() + 1) >= n);
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                prop_assert!(!g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn code_files_round_trip(seed in any::<u64>(), count in 1usize..10, dim in 1usize..6) {
        let code = random_unit_vectors(count, dim, &mut RngStream::new(seed)).unwrap();
        let text = CodeFile::from_code(&code, Metadata::named("random").with("seed", seed)).to_json().unwrap();
        let parsed = CodeFile::from_json(&text).unwrap();
        prop_assert_eq!(parsed.to_json().unwrap(), text);
        let back: Code = parsed.to_code(&Tolerance::default()).unwrap();
        prop_assert_eq!(back.vectors(), code.vectors());
    }

    #[test]
    fn switched_equiangular_codes_stay_valid(mask in any::<u32>()) {
        let code = equicode::constructions::seven_dim_28_lines();
        let flip: Vec<usize> = (0..28).filter(|i| mask >> i & 1 == 1).collect();
        let angles = AngleSet::points(&[-1.0 / 3.0, 1.0 / 3.0], 1e-9).unwrap();
        prop_assert!(validate_code(&switch_vertices(&code, &flip).unwrap(), &angles).pass);
    }
}
