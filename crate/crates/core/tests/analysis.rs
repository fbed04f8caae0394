use cutpath_core::analysis::*;
use cutpath_core::generators::*;
use cutpath_core::seed::{derive_seed, rng_from_seed, WalkRng};
use cutpath_core::walk::{cut_times, pass_window, sample_conditioned_excursion_with};
use proptest::prelude::*;
use rand::Rng;

fn mean_and_sigma(hits: u64, n: u64) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt().max(1.0 / n as f64))
}

/// Runs the line walk from `x` until it reaches one of the two ends; true for the top.
fn exits_top(line: &LineNetwork, mut x: usize, bottom: usize, top: usize, rng: &mut WalkRng) -> bool {
    while x != bottom && x != top {
        x = line.step(x, rng);
    }
    x == top
}

#[test]
fn return_probabilities_match_simulation() {
    let line = LineNetwork::layered_schedule(2.0, 3, 60).unwrap();
    let mut rng = rng_from_seed(31);
    let n = 20_000u64;
    for j in [1usize, 3, 10, 25, 50] {
        let back = (0..n).filter(|_| !exits_top(&line, j, 0, 60, &mut rng)).count() as u64;
        let (p, sd) = mean_and_sigma(back, n);
        let want = return_prob(&line, j).unwrap();
        assert!((p - want).abs() <= 3.0 * sd, "j={j}: {p} vs {want}");
    }
}

#[test]
fn escape_probability_matches_simulation() {
    let len = 80;
    let line = LineNetwork::layered_schedule(2.0, 3, len).unwrap();
    let (lo, hi) = pass_window(40, 0.7).unwrap();
    let want = escape_prob(&line, 40, 0.7).unwrap();
    let mut rng = rng_from_seed(32);
    let n = 100_000u64;
    let escaped = (0..n).filter(|_| exits_top(&line, hi as usize, lo as usize, len as usize, &mut rng)).count() as u64;
    let (p, sd) = mean_and_sigma(escaped, n);
    assert!((p - want).abs() <= 3.0 * sd, "{p} vs {want}");
}

#[test]
fn srw_bound_examples() {
    assert!((chernoff_bound(20, 10) - 400.0 * (-10f64).exp()).abs() < 1e-15);
    assert!((chernoff_bound(20, 10) - 0.01816).abs() < 1e-5);
    assert!((chernoff_bound(10, 10) - 16.417).abs() < 1e-3);
    assert_eq!(visits_bound(4, 0).unwrap(), 2.0);
    assert!(visits_bound(5, 0).is_err());
    let o = exact_srw_oracle(20, 10, 0, 0.0).unwrap();
    assert_eq!(o.hit_before[10], 0.0);
    let o = exact_srw_oracle(8, 0, 0, 0.0).unwrap();
    assert!((o.p_top - 1.0 / 8.0).abs() < 1e-12);
}

#[test]
fn oracle_stays_under_bounds() {
    for a in [4u32, 8, 16, 32] {
        let m_max = if a == 4 { 40 } else { 10 * a as u64 };
        let o = exact_srw_oracle(a, 2000, m_max, 0.0).unwrap();
        for (t, &p) in o.hit_before.iter().enumerate() {
            assert!(p <= chernoff_bound(a, t as u64), "a={a} t={t}");
        }
        for (m, &p) in o.visits_tail.iter().enumerate() {
            assert!(p <= visits_bound(a, m as u64).unwrap(), "a={a} m={m}");
            if a == 4 {
                assert!(p <= 2.0 * (-(m as f64) / 2.0).exp());
            }
        }
    }
}

#[test]
fn oracle_matches_sampled_excursions() {
    let a = 8u32;
    for laziness in [0.0, 0.25] {
        let o = exact_srw_oracle(a, 400, 30, laziness).unwrap();
        let mut rng = rng_from_seed(derive_seed(44, 0, (laziness * 100.0) as u64));
        let n = 50_000u64;
        let mut lengths = Vec::with_capacity(n as usize);
        let mut visits = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let p = sample_conditioned_excursion_with(a, laziness, &mut rng).unwrap();
            lengths.push(p.len() as u64 - 1);
            visits.push(p.iter().filter(|&&x| x == a / 2).count() as u64);
        }
        for t in [20u64, 40, 80, 160] {
            let (p, sd) = mean_and_sigma(lengths.iter().filter(|&&l| l < t).count() as u64, n);
            assert!((p - o.hit_before[t as usize]).abs() <= 3.0 * sd, "λ={laziness} t={t}: {p} vs {}", o.hit_before[t as usize]);
        }
        for m in [0u64, 1, 3, 6, 10] {
            let (p, sd) = mean_and_sigma(visits.iter().filter(|&&v| v > m).count() as u64, n);
            assert!((p - o.visits_tail[m as usize]).abs() <= 3.0 * sd, "λ={laziness} m={m}: {p} vs {}", o.visits_tail[m as usize]);
        }
        // the tail is geometric in m with the reported ratio
        for m in 1..30 {
            assert!((o.visits_tail[m] / o.visits_tail[m - 1] - o.rho).abs() < 1e-9);
        }
    }
}

#[test]
fn conductance_bound_examples() {
    let b = conductance_bound(4.0, (-24f64).exp()).unwrap();
    assert!((b.q - 17.3123).abs() < 1e-3);
    assert!((b.bound - 0.693147).abs() < 1e-5);
    assert!(!b.vacuous);
    let b = conductance_bound(2.0, 0.5).unwrap();
    assert!((b.q - 1.0).abs() < 1e-12 && (b.bound - 12.0).abs() < 1e-12 && b.vacuous);
    assert!(conductance_bound(4.0, 1.0).is_err());
    assert!(conductance_bound(4.0, 0.0).is_err());
}

/// Transient line walk from 0 until absorption at the top.
fn absorbed_trace(line: &LineNetwork, rng: &mut WalkRng) -> Vec<u32> {
    let mut x = 0;
    let mut trace = vec![0u32];
    while x < line.len() {
        x = line.step(x, rng);
        trace.push(x as u32);
    }
    trace
}

#[test]
fn certified_minima_are_cut_times() {
    let line = LineNetwork::layered_schedule(2.0, 3, 40).unwrap();
    let mut rng = rng_from_seed(51);
    for _ in 0..200 {
        let trace = absorbed_trace(&line, &mut rng);
        let rec = minima_analysis(&trace, &line).unwrap();
        assert!(rec.minima.windows(2).all(|w| w[1].value < w[0].value && w[1].time > w[0].time));
        let cuts = cut_times(&trace, 0).unwrap();
        for t in &rec.certified_cut_times {
            assert!(cuts.binary_search(t).is_ok(), "certified {t} is not a cut-time");
        }
    }
}

#[test]
fn recovery_frequency_respects_ratio_per_decile() {
    let line = LineNetwork::layered_schedule(2.0, 3, 40).unwrap();
    let mut rng = rng_from_seed(52);
    let mut bins = [(0u64, 0u64); 10];
    for _ in 0..10_000 {
        let trace = absorbed_trace(&line, &mut rng);
        for m in minima_analysis(&trace, &line).unwrap().minima {
            let bin = ((m.ratio() * 10.0) as usize).min(9);
            bins[bin].0 += 1;
            bins[bin].1 += m.recovery.is_some() as u64;
        }
    }
    let mut populated = 0;
    for (k, &(n, rec)) in bins.iter().enumerate() {
        if n == 0 {
            continue;
        }
        populated += 1;
        let (p, sd) = mean_and_sigma(rec, n);
        let q = k as f64 / 10.0;
        assert!(p <= q + 0.1 + 3.0 * sd, "bin {k}: {p} over {n}");
    }
    assert!(populated >= 5);
}

#[test]
fn recurrent_chain_gains_little() {
    let line = LineNetwork::unit_chain(100_000).unwrap();
    let mut rng = rng_from_seed(53);
    let mut x = 0usize;
    let mut trace = vec![0u32];
    for _ in 0..10_000 {
        x = line.step(x, &mut rng);
        trace.push(x as u32);
    }
    let rec = minima_analysis(&trace, &line).unwrap();
    let early = minima_analysis(&trace[..1001], &line).unwrap();
    assert!(rec.lower_bound_sum < 0.02, "{}", rec.lower_bound_sum);
    assert!(rec.lower_bound_sum >= early.lower_bound_sum);
}

#[test]
fn two_block_chain_switches_at_cut_times() {
    // states 0..3 communicate, 3..6 communicate, and 2 -> 3 is the only bridge, one way
    let moves: [&[usize]; 6] = [&[1, 2], &[0, 2], &[0, 1, 3], &[4, 5], &[3, 5], &[3, 4]];
    let mut rng = rng_from_seed(54);
    for _ in 0..100 {
        let mut x = 0usize;
        let mut trace = vec![0u32];
        for _ in 0..200 {
            let next = moves[x];
            x = next[rng.random_range(0..next.len())];
            trace.push(x as u32);
        }
        let cuts = cut_times(&trace, 0).unwrap();
        for (t, w) in trace.windows(2).enumerate() {
            if w[0] < 3 && w[1] >= 3 {
                assert!(cuts.contains(&(t as u64)), "bridge step at {t} not a cut-time");
            }
        }
    }
}

#[test]
fn layered_resistance_increments_shrink() {
    let g = build_layered_graph(LayeredGraphSpec { alpha: 2.0, d: 3, j_max: 32, seed: 6 }).unwrap();
    let depths = [1u32, 2, 4, 8, 16, 32];
    let bounds = layer_boundaries(&g.network, &depths).unwrap();
    let r = resistance_profile(&g.network, 0, &bounds).unwrap();
    let inc: Vec<f64> = std::iter::once(r[0]).chain(r.windows(2).map(|w| w[1] - w[0])).collect();
    assert!(inc.iter().all(|&d| d >= -1e-12), "{r:?}");
    assert!(inc.windows(2).all(|w| w[1] < w[0]), "{inc:?}");
}

proptest! {
    #[test]
    fn conductance_bound_decreases_in_s(d in 2.0f64..64.0, s in 1e-12f64..0.99, shrink in 0.01f64..0.99) {
        let a = conductance_bound(d, s).unwrap();
        let b = conductance_bound(d, s * shrink).unwrap();
        prop_assert!(b.bound < a.bound);
        prop_assert_eq!(a.vacuous, a.bound > 1.0);
    }

    #[test]
    fn return_prob_is_monotone_and_bounded(rungs in proptest::collection::vec(0.1f64..100.0, 1..40)) {
        let len = rungs.len();
        let line = LineNetwork::from_weights(rungs, vec![0.0; len + 1]).unwrap();
        prop_assert_eq!(return_prob(&line, 0).unwrap(), 1.0);
        prop_assert_eq!(return_prob(&line, len).unwrap(), 0.0);
        for j in 0..len {
            prop_assert!(return_prob(&line, j + 1).unwrap() < return_prob(&line, j).unwrap());
            let e = escape_prob_window(&line, j, len).unwrap();
            prop_assert!((e - 1.0).abs() < 1e-12);
        }
    }
}
