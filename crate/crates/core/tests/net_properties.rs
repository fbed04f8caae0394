use cutpath_core::net::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

/// Connected multigraph: a random spanning tree plus extra edges.
fn connected(max_n: usize, unit: bool) -> impl Strategy<Value = Network> {
    (3..max_n).prop_flat_map(move |n| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), 0.1f64..10.0), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 0.1f64..10.0), 0..2 * n);
        (Just(n), tree, extra).prop_map(move |(n, tree, extra)| {
            let mut edges = Vec::new();
            for (v, (parent, c)) in tree.into_iter().enumerate() {
                let v = v + 1;
                edges.push((parent.index(v), v, if unit { 1.0 } else { c }));
            }
            for (a, b, c) in extra {
                if a != b {
                    edges.push((a, b, if unit { 1.0 } else { c }));
                }
            }
            Network::new(n, edges).unwrap()
        })
    })
}

/// Dense reference: solve the full Laplacian with both terminals pinned.
fn dense_potential(net: &Network, source: usize, sink: usize) -> (Vec<f64>, f64) {
    let n = net.n();
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for e in net.edges() {
        let (u, v) = (e.u as usize, e.v as usize);
        if u != v {
            lap[(u, u)] += e.c;
            lap[(v, v)] += e.c;
            lap[(u, v)] -= e.c;
            lap[(v, u)] -= e.c;
        }
    }
    let mut a = lap.clone();
    let mut rhs = DVector::<f64>::zeros(n);
    for (t, val) in [(source, 1.0), (sink, 0.0)] {
        for j in 0..n {
            a[(t, j)] = 0.0;
        }
        a[(t, t)] = 1.0;
        rhs[t] = val;
    }
    let v = a.lu().solve(&rhs).unwrap();
    let current: f64 = (0..n).map(|j| lap[(source, j)] * v[j]).sum();
    (v.as_slice().to_vec(), current)
}

#[test]
fn series_parallel_and_triangle() {
    let series = Network::new(4, [(0, 1, 2.0), (1, 2, 3.0), (2, 3, 6.0)]).unwrap();
    assert!((effective_conductance(&series, &[0], &[3]).unwrap() - 1.0).abs() < 1e-12);
    let parallel = Network::new(2, [(0, 1, 2.0), (0, 1, 3.5), (1, 0, 0.5)]).unwrap();
    assert!((effective_conductance(&parallel, &[0], &[1]).unwrap() - 6.0).abs() < 1e-12);
    let tri = Network::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
    let sol = solve_voltage(&tri, 0, 2).unwrap();
    assert!((sol.conductance - 1.5).abs() < 1e-12);
    assert!((sol.potential[1] - 0.5).abs() < 1e-12);
}

#[test]
fn iterative_branch_matches_dense_reference() {
    // 600 vertices forces the iterative solver
    let n = 600;
    let mut edges: Vec<(usize, usize, f64)> = (1..n).map(|v| (v / 2, v, 1.0 + (v % 7) as f64)).collect();
    edges.extend((0..n).map(|v| (v, (v * 37 + 11) % n, 0.5 + (v % 3) as f64)).filter(|e| e.0 != e.1));
    let net = Network::new(n, edges).unwrap();
    let sol = solve_voltage(&net, 3, 577).unwrap();
    let (v, c) = dense_potential(&net, 3, 577);
    for x in 0..n {
        assert!((sol.potential[x] - v[x]).abs() < 1e-9, "vertex {x}");
    }
    assert!((sol.conductance - c).abs() < 1e-9 * c);
}

#[test]
fn worked_trace_counts_on_three_vertex_path() {
    let p3 = Network::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
    let tr = trace_network_exact(&p3, 0, 2).unwrap();
    assert!((tr.crossings[0] - 3.0).abs() < 1e-12);
    assert!((tr.crossings[1] - 1.0).abs() < 1e-12);
}

#[test]
fn contraction_keeps_parallel_edges() {
    let net = Network::new(4, [(0, 1, 1.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0), (1, 2, 5.0)]).unwrap();
    let (q, map) = contract_sets(&net, &[&[1, 2], &[3]]).unwrap();
    assert_eq!(map, vec![2, 0, 0, 1]);
    // 0-{1,2} twice, {1,2}-3 twice; the internal 1-2 edge disappears
    assert_eq!(q.m(), 4);
    assert!((effective_conductance(&q, &[0], &[1]).unwrap() - 2.0).abs() < 1e-12);
    assert!((effective_conductance(&q, &[2], &[1]).unwrap() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_agrees_with_dense_reference(net in connected(40, false), s in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let (s, t) = (s.index(net.n()), t.index(net.n()));
        prop_assume!(s != t);
        let sol = solve_voltage(&net, s, t).unwrap();
        let (v, c) = dense_potential(&net, s, t);
        for x in 0..net.n() {
            prop_assert!((sol.potential[x] - v[x]).abs() < 1e-9);
        }
        prop_assert!((sol.conductance - c).abs() < 1e-9 * c.max(1.0));
    }

    #[test]
    fn harmonic_and_bounded(net in connected(40, false)) {
        let sink = net.n() - 1;
        let sol = solve_voltage(&net, 0, sink).unwrap();
        for x in 0..net.n() {
            let v = sol.potential[x];
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
            if x == 0 || x == sink {
                continue;
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for inc in net.neighbors(x) {
                let c = net.edge(inc.edge as usize).c;
                num += c * sol.potential[inc.to as usize];
                den += c;
            }
            prop_assert!((num / den - v).abs() < 1e-9);
        }
    }

    #[test]
    fn series_law(cs in proptest::collection::vec(0.01f64..100.0, 1..30)) {
        let n = cs.len() + 1;
        let net = Network::new(n, cs.iter().enumerate().map(|(i, &c)| (i, i + 1, c))).unwrap();
        let want = 1.0 / cs.iter().map(|c| 1.0 / c).sum::<f64>();
        let got = effective_conductance(&net, &[0], &[n - 1]).unwrap();
        prop_assert!((got - want).abs() < 1e-9 * want.max(1.0));
    }

    #[test]
    fn parallel_law(cs in proptest::collection::vec(0.01f64..100.0, 1..30)) {
        let net = Network::new(2, cs.iter().map(|&c| (0, 1, c))).unwrap();
        let want: f64 = cs.iter().sum();
        prop_assert!((effective_conductance(&net, &[0], &[1]).unwrap() - want).abs() < 1e-9 * want);
    }

    #[test]
    fn raising_a_conductance_never_lowers_the_total(net in connected(30, false), e in any::<prop::sample::Index>(), factor in 1.0f64..10.0) {
        let sink = net.n() - 1;
        let before = effective_conductance(&net, &[0], &[sink]).unwrap();
        let k = e.index(net.m());
        let raised = Network::new(net.n(), net.edges().iter().enumerate().map(|(i, ed)| {
            (ed.u as usize, ed.v as usize, if i == k { ed.c * factor } else { ed.c })
        })).unwrap();
        let after = effective_conductance(&raised, &[0], &[sink]).unwrap();
        prop_assert!(after >= before * (1.0 - 1e-12));
    }

    #[test]
    fn set_conductance_is_symmetric(net in connected(30, false)) {
        let n = net.n();
        let a: Vec<usize> = (0..n / 3).collect();
        let b: Vec<usize> = (2 * n / 3 + 1..n).collect();
        prop_assume!(!a.is_empty() && !b.is_empty());
        let ab = effective_conductance(&net, &a, &b).unwrap();
        let ba = effective_conductance(&net, &b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-9 * ab.max(1.0));
    }

    #[test]
    fn neighbour_potentials_within_degree_factor(net in connected(40, true)) {
        let sink = net.n() - 1;
        let sol = solve_voltage(&net, 0, sink).unwrap();
        let d = sol.max_degree as f64;
        for e in net.edges() {
            let (x, y) = (e.u as usize, e.v as usize);
            if x == sink || y == sink {
                continue;
            }
            prop_assert!(sol.potential[x] <= d * sol.potential[y] * (1.0 + 1e-9) + 1e-15);
            prop_assert!(sol.potential[y] <= d * sol.potential[x] * (1.0 + 1e-9) + 1e-15);
        }
        let levels = level_sets(&sol, sol.level_base()).unwrap();
        prop_assert!(levels.only_adjacent_levels(&net));
    }

    #[test]
    fn subdivision_preserves_solution(net in connected(40, true)) {
        let sink = net.n() - 1;
        let sol = solve_voltage(&net, 0, sink).unwrap();
        let d = sol.level_base();
        let levels = level_sets(&sol, d).unwrap();
        for i in levels.eligible() {
            let sub = subdivide_between_levels(&net, &sol, i, d).unwrap();
            let sol2 = solve_voltage(&sub.network, 0, sink).unwrap();
            prop_assert!((sol2.conductance - sol.conductance).abs() < 1e-9 * sol.conductance.max(1.0));
            for x in 0..net.n() {
                prop_assert!((sol2.potential[x] - sol.potential[x]).abs() < 1e-9);
            }
            for (k, &t) in sub.new_potential.iter().enumerate() {
                prop_assert!((sol2.potential[net.n() + k] - t).abs() < 1e-9);
            }
            // every unit of current crosses each threshold set
            let zc = effective_conductance(&sub.network, &sub.z, &sub.z_prime).unwrap();
            let (hi, lo) = sub.thresholds;
            prop_assert!((zc - sol.conductance / (hi - lo)).abs() < 1e-7 * zc.max(1.0));
        }
    }

    #[test]
    fn expected_crossings_balance_visits(net in connected(30, false)) {
        let sink = net.n() - 1;
        let tr = trace_network_exact(&net, 0, sink).unwrap();
        // each visit to x enters and leaves once, except the start (no entry) and the sink (no exit)
        let mut through = vec![0.0; net.n()];
        for (e, ed) in net.edges().iter().enumerate() {
            through[ed.u as usize] += tr.crossings[e];
            through[ed.v as usize] += tr.crossings[e];
        }
        prop_assert!((through[sink] - 1.0).abs() < 1e-9);
        prop_assert!((through[0] - (2.0 * tr.visits[0] - 1.0)).abs() < 1e-8 * tr.visits[0].max(1.0));
        for x in 1..sink {
            prop_assert!((through[x] - 2.0 * tr.visits[x]).abs() < 1e-8 * tr.visits[x].max(1.0));
        }
    }

    #[test]
    fn ugraph_round_trip_keeps_solution(net in connected(20, false)) {
        let back = Network::from_ugraph_str(&net.to_ugraph_string()).unwrap();
        let sink = net.n() - 1;
        prop_assert_eq!(
            solve_voltage(&net, 0, sink).unwrap().conductance.to_bits(),
            solve_voltage(&back, 0, sink).unwrap().conductance.to_bits()
        );
    }
}
