mod common;

use common::*;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use sawgadget::{
    automorphisms, count_midedge_saws, count_saws_from_vertex, cycle_graph, fisher, gadget_genfun,
    gadget_genfun_between, generalized_fisher, generate_lattice, iterate_mu, monotone_solve,
    predict_mu_transformed, transform_all, two_terminal_series, validate_gadget, CountPolynomial, Depth,
    EdgeId, EndFilter, FinitePatch, MuValue, TypeVector, VertexQuery,
};

/// Random simple graph on `n` vertices with every degree at most `max_deg`.
fn graph(max_n: usize, max_deg: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let mut deg = vec![0; n];
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for (u, v) in pairs {
                let (u, v) = (u.min(v), u.max(v));
                if u == v || edges.contains(&(u, v)) || deg[u] == max_deg || deg[v] == max_deg {
                    continue;
                }
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
            (n, edges)
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    // a random spanning tree plus extra edges
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..n),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<(usize, usize)> =
                    (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
                for (u, v) in extra {
                    let e = (u.min(v), u.max(v));
                    if u != v && !edges.contains(&e) {
                        edges.push(e);
                    }
                }
                (n, edges)
            })
    })
}

fn poly(max_deg: usize, max_coeff: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..=max_coeff, 0..=max_deg)
}

fn u64s(v: &[num_bigint::BigUint]) -> Vec<u64> {
    v.iter().map(|c| c.to_u64().unwrap()).collect()
}

fn i128s(v: &[u64]) -> Vec<i128> {
    v.iter().map(|&c| c as i128).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_naive_on_random_graphs((n, edges) in graph(14, 3), origin in 0usize..14) {
        let origin = origin % n;
        let mut patch = to_patch(n, &edges);
        patch = patch.with_origin(origin as u32).unwrap();
        let got = VertexQuery::new(origin as u32, n).run(&patch).unwrap();
        prop_assert_eq!(u64s(got.counts()), naive_sigma(&patch_adj(&patch), origin, n));
    }

    #[test]
    fn mid_edge_engine_matches_subdivided_oracle((n, edges) in graph(12, 3), pick in any::<prop::sample::Index>(), parity in 0usize..2) {
        prop_assume!(!edges.is_empty());
        let patch = to_patch(n, &edges);
        let pe = patch_edges(&patch);
        let s = pick.index(pe.len());
        let ends: Vec<EdgeId> = (0..pe.len()).filter(|i| i % 2 == parity).map(|i| EdgeId(i as u32)).collect();
        let got = count_midedge_saws(&patch, &[EdgeId(s as u32)], &EndFilter::edges(&patch, &ends), n).unwrap();
        let walks = subdivided_walks(n, &pe, &[s], &|e| e % 2 == parity, &[], n);
        prop_assert_eq!(u64s(got.counts()), count_by_len(&walks, n));
    }

    #[test]
    fn automorphisms_match_brute_force((n, edges) in graph(7, 6)) {
        let patch = to_patch(n, &edges);
        let mut got: Vec<Vec<usize>> = automorphisms(&patch)
            .into_iter()
            .map(|p| p.into_iter().map(|v| v as usize).collect())
            .collect();
        got.sort();
        prop_assert_eq!(got, brute_automorphisms(n, &patch_edges(&patch)));
    }

    #[test]
    fn patch_json_round_trips((n, edges) in graph(14, 4)) {
        let patch = to_patch(n, &edges);
        let json = patch.to_json();
        let back = FinitePatch::from_json(&json).unwrap();
        prop_assert_eq!(&back, &patch);
        prop_assert_eq!(back.to_json(), json);
        for &(u, v) in &edges {
            let e = patch.edge_between(u as u32, v as u32).unwrap();
            let (a, b) = patch.edge(e);
            prop_assert_eq!((a as usize, b as usize), (u.min(v), u.max(v)));
        }
    }

    #[test]
    fn generalized_fisher_law((n, edges) in connected_graph(6), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let v1 = a.index(n);
        let v2 = (v1 + 1 + b.index(n - 1)) % n;
        let h = to_patch(n, &edges);
        let g = generalized_fisher(&h, v1 as u32, v2 as u32).unwrap();
        let f = i128s(&u64s(two_terminal_series(&h, v1 as u32, v2 as u32).unwrap().coeffs()));
        // f + f^2 / x
        let deg = g.vertex_count() + 2;
        let sq = pmul(&f, &f, deg);
        let mut expected = vec![0i128; deg + 1];
        for (i, c) in f.iter().enumerate() { expected[i] += c; }
        for (i, c) in sq.iter().enumerate().skip(1) { expected[i - 1] += c; }
        prop_assert_eq!(sq[0], 0);
        prop_assert_eq!(trim(as_i128(&gadget_genfun(&g).unwrap())), trim(expected));
        // the ring rotation is an automorphism, so every port pair agrees
        let report = validate_gadget(&g).unwrap();
        prop_assert!(report.accepted());
        let g01 = gadget_genfun_between(&g, 0, 1).unwrap();
        prop_assert_eq!(&gadget_genfun_between(&g, 0, 2).unwrap(), &g01);
        prop_assert_eq!(&gadget_genfun_between(&g, 1, 2).unwrap(), &g01);
        prop_assert_eq!(trim(as_i128(&g01)), trim(i128s(&naive_two_port(&g, 0, 1))));
    }

    #[test]
    fn polynomial_arithmetic(a in poly(6, 9), b in poly(6, 9), c in poly(4, 5)) {
        let (pa, pb, pc) = (CountPolynomial::from_u64s(&a), CountPolynomial::from_u64s(&b), CountPolynomial::from_u64s(&c));
        let (ia, ib) = (i128s(&a), i128s(&b));
        prop_assert_eq!(trim(as_i128(&(&pa * &pb))), trim(pmul(&ia, &ib, 12)));
        prop_assert_eq!(trim(as_i128(&(&pa + &pb))), trim({
            let mut s = vec![0; 7];
            for (i, x) in ia.iter().enumerate() { s[i] += x; }
            for (i, x) in ib.iter().enumerate() { s[i] += x; }
            s
        }));
        prop_assert_eq!(trim(as_i128(&pa.compose(&pb))), trim(pcompose(&ia, &ib, 36)));
        prop_assert_eq!(pa.compose_truncated(&pb, 5), pa.compose(&pb).truncated(5));
        // composition is associative
        prop_assert_eq!(pa.compose(&pb).compose(&pc), pa.compose(&pb.compose(&pc)));
        prop_assert_eq!(pa.shift_up(3).shift_down(3).unwrap(), pa.clone());
        prop_assert_eq!(CountPolynomial::from_json(&pa.to_json()).unwrap(), pa);
    }

    #[test]
    fn solver_hits_target(mut coeffs in poly(8, 50), target in 1e-6f64..20.0) {
        coeffs.insert(0, 0);
        prop_assume!(coeffs.iter().any(|&c| c > 0));
        let p = CountPolynomial::from_u64s(&coeffs);
        let x = monotone_solve(&p, target, 1e-12).unwrap();
        prop_assert!(x > 0.0);
        prop_assert!((p.evaluate(x) - target).abs() <= 1e-12 * target.max(1.0) * 8.0);
    }

    #[test]
    fn predict_and_iterate_agree(mu in 1.2f64..3.0, which in 0usize..3, k in 1usize..6) {
        let g = match which {
            0 => CountPolynomial::from_u64s(&[0, 0, 1, 1]),
            1 => CountPolynomial::from_u64s(&[0, 0, 1, 2, 2]),
            _ => CountPolynomial::from_u64s(&[0, 0, 0, 1, 0, 1]),
        };
        let xs = iterate_mu(1.0 / mu, &g, k).unwrap();
        let mut m = MuValue::exact(mu, "mu");
        for x in &xs {
            m = predict_mu_transformed(&m, &g).unwrap();
            prop_assert!((m.value - 1.0 / x).abs() <= 1e-10 * m.value);
        }
    }

    #[test]
    fn doubling_bound_on_cubic_lattices(which in 0usize..5, radius in 4u32..9) {
        let name = ["6,6,6", "3,12,12", "4,6,12", "4,8,8", "4,4,inf"][which];
        let patch = generate_lattice(&name.parse().unwrap(), radius).unwrap();
        let n = patch.safe_walk_length().finite().unwrap() as usize;
        let c = u64s(count_saws_from_vertex(&patch, 0, n).unwrap().counts());
        for i in 1..n {
            prop_assert!(c[i + 1] <= 2 * c[i], "{} n={}", name, i);
        }
    }

    #[test]
    fn contraction_inverts_transformation(radius in 2u32..6, which in 0usize..3) {
        let gadget = match which {
            0 => fisher(),
            1 => sawgadget::complete_gadget(5).unwrap(),
            _ => generalized_fisher(&cycle_graph(5).unwrap(), 0, 2).unwrap(),
        };
        let patch = generate_lattice(&TypeVector::square_octagon(), radius).unwrap();
        let tp = transform_all(&patch, &gadget).unwrap();
        let back = tp.contract().unwrap();
        prop_assert_eq!(back.edges(), patch.edges());
        for v in 0..patch.vertex_count() as u32 {
            prop_assert_eq!(tp.is_replaced(v), patch.depth(v) != Depth::Finite(0));
        }
    }

    #[test]
    fn evaluation_commutes_with_composition(a in poly(5, 9), b in poly(5, 9), x in 0.0f64..=1.0) {
        let (pa, pb) = (CountPolynomial::from_u64s(&a), CountPolynomial::from_u64s(&b));
        let lhs = pa.compose(&pb).evaluate(x);
        let rhs = pa.evaluate(pb.evaluate(x));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn power_is_repeated_multiplication(a in poly(5, 9), n in 0u32..=6) {
        let ia = i128s(&a);
        let mut expected = vec![1i128];
        for _ in 0..n {
            expected = pmul(&expected, &ia, 64);
        }
        prop_assert_eq!(trim(as_i128(&CountPolynomial::from_u64s(&a).power(n))), trim(expected));
    }

    #[test]
    fn edges_and_boundary_depths((n, edges) in graph(14, 4), flags in proptest::collection::vec(any::<bool>(), 14)) {
        let incomplete = &flags[..n];
        let patch = to_patch(n, &edges).with_boundary(incomplete);
        let degree_sum: usize = (0..n as u32).map(|v| patch.degree(v)).sum();
        prop_assert_eq!(patch.edge_count() * 2, degree_sum);
        let adj = patch_adj(&patch);
        for v in 0..n {
            // nearest incomplete vertex, one BFS per vertex
            let dist = bfs(&adj, &[v]);
            let best = (0..n).filter(|&u| incomplete[u]).filter_map(|u| dist[u]).min();
            let want = best.map_or(Depth::Infinite, |d| Depth::Finite(d as u32));
            prop_assert_eq!(patch.depth(v as u32), want);
        }
    }

    #[test]
    fn generalized_fisher_size((n, edges) in connected_graph(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let v1 = a.index(n);
        let v2 = (v1 + 1 + b.index(n - 1)) % n;
        let g = generalized_fisher(&to_patch(n, &edges), v1 as u32, v2 as u32).unwrap();
        prop_assert_eq!(g.vertex_count(), 3 * n - 3);
        prop_assert!(validate_gadget(&g).unwrap().port_transitive);
    }
}
