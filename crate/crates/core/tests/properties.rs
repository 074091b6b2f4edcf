use nalgebra::DMatrix;
use proptest::prelude::*;

use dalpha_core::graph::{automorphism_mapping, DistanceProfile};
use dalpha_core::spectral::{alpha_matrix, full_spectrum, rayleigh, spectral_radius};
use dalpha_core::{Graph, Tolerances};

/// Random connected graph: a tree from parent choices plus a mask of extra pairs.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
                proptest::collection::vec(prop::bool::weighted(0.25), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if extra[k] && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
}

fn alpha() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(0.5), Just(0.9), 0.0..0.99f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distances_are_a_metric(g in connected_graph()) {
        let p = DistanceProfile::new(&g).unwrap();
        let n = g.n();
        for u in 0..n {
            prop_assert_eq!(p.dist(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(p.dist(u, v), p.dist(v, u));
                if u != v {
                    prop_assert!(p.dist(u, v) >= 1);
                    prop_assert_eq!(p.dist(u, v) == 1, g.has_edge(u, v));
                }
                for w in 0..n {
                    prop_assert!(p.dist(u, w) <= p.dist(u, v) + p.dist(v, w));
                }
            }
        }
    }

    #[test]
    fn row_sums_are_transmissions(g in connected_graph(), a in alpha()) {
        let m = alpha_matrix(&g, a).unwrap();
        let p = DistanceProfile::new(&g).unwrap();
        for (r, &t) in m.row_sums().iter().zip(&p.transmissions) {
            prop_assert!((r - t as f64).abs() <= 1e-12 * (1.0 + t as f64));
        }
        let tr = m.trace();
        prop_assert!((tr - 2.0 * a * p.sigma as f64).abs() <= 1e-9 * (1.0 + tr));
    }

    #[test]
    fn rayleigh_quotient_is_dominated(g in connected_graph(), a in alpha(), seed in proptest::collection::vec(0.01f64..1.0, 9)) {
        let n = g.n();
        let norm = seed[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
        let x: Vec<f64> = seed[..n].iter().map(|v| v / norm).collect();
        let s = full_spectrum(&g, a, &Tolerances::default()).unwrap();
        let q = rayleigh(&g, a, &x).unwrap();
        prop_assert!(q <= s.mu * (1.0 + 1e-12) + 1e-12);
        let at_perron = rayleigh(&g, a, &s.perron).unwrap();
        prop_assert!((at_perron - s.mu).abs() <= 1e-9 * (1.0 + s.mu));
    }

    #[test]
    fn adding_an_edge_lowers_the_radius(g in connected_graph(), a in alpha(), pick in any::<prop::sample::Index>()) {
        let missing = g.non_edges();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let tol = Tolerances::default();
        let before = spectral_radius(&g, a, &tol).unwrap().mu;
        let after = spectral_radius(&g.with_edge(u, v), a, &tol).unwrap().mu;
        prop_assert!(tol.strictly_less(after, before), "{} !< {}", after, before);
    }

    #[test]
    fn perron_vector_respects_automorphisms(g in connected_graph(), a in alpha()) {
        let s = full_spectrum(&g, a, &Tolerances::default()).unwrap();
        prop_assert!(s.perron.iter().all(|&x| x > 0.0));
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if automorphism_mapping(&g, u, v).unwrap().is_some() {
                    prop_assert!((s.perron[u] - s.perron[v]).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn spectrum_matches_nalgebra(g in connected_graph(), a in alpha()) {
        let tol = Tolerances::default();
        let m = alpha_matrix(&g, a).unwrap();
        let n = g.n();
        let mut oracle: Vec<f64> = DMatrix::from_row_slice(n, n, m.entries())
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        oracle.sort_by(|x, y| y.total_cmp(x));
        let s = full_spectrum(&g, a, &tol).unwrap();
        let tmax = DistanceProfile::new(&g).unwrap().t_max() as f64;
        for (ours, theirs) in s.eigenvalues.iter().zip(&oracle) {
            prop_assert!((ours - theirs).abs() <= 1e-9 * (1.0 + tmax), "{} vs {}", ours, theirs);
        }
        let power = spectral_radius(&g, a, &tol).unwrap();
        prop_assert!((power.mu - oracle[0]).abs() <= 1e-8 * oracle[0]);
        prop_assert!(power.residual <= tol.residual_band(tmax));
    }
}
