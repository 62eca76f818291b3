use biram::bigraph::{complete_bigraph, incidence_bigraph, random_biregular, sym3_bigraph, Bigraph};
use biram::classify::biexpander_eps;
use biram::dynamics::{
    clash_count, counts_from_primes, eml_check, ihara_denominator, ihara_from_traces, nb_closed_walks_dfs,
    nb_closed_walks_dp, nb_closed_walks_spectral, nbrw_support, nbrw_tv_profile, prime_counts,
    pseudorandom_pairs, sparsify_norm, srw_cutoff_time, srw_tv_profile,
};
use biram::jobs::{construct, ActionKind, InstanceSpec};
use biram::lattice::LatticeKind;
use biram::spectral::{b_direct, spectrum_report, SpectrumOptions};
use biram::Budgets;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(p: u32, q: u32, action: ActionKind) -> Bigraph {
    construct(&InstanceSpec::new(LatticeKind::Eisenstein, p, q, action), &Budgets::default()).unwrap()
}

proptest! {
    #[test]
    fn mobius_inversion_round_trip(n in prop::collection::vec(-1_000_000i128..1_000_000, 1..40)) {
        let back = counts_from_primes(&prime_counts(&n));
        for (a, b) in n.iter().zip(&back) {
            prop_assert!((*a as f64 - b).abs() < 1e-6);
        }
    }
}

#[test]
fn closed_walk_counts_three_ways() {
    let b = Budgets::default();
    for g in [
        sym3_bigraph(),
        complete_bigraph(3, 6),
        random_biregular(10, 2, 1, 1).unwrap(),
        random_biregular(12, 3, 2, 2).unwrap(),
    ] {
        let dfs = nb_closed_walks_dfs(&g, 8);
        let dp = nb_closed_walks_dp(&g, 8);
        assert_eq!(dfs, dp);
        let spec = nb_closed_walks_spectral(&b_direct(&g, &b).unwrap(), 8).unwrap();
        assert_eq!(dp.iter().map(|&x| x as i128).collect::<Vec<_>>(), spec);
        // bipartite and non-backtracking: odd lengths and length 2 vanish
        assert!(dp.iter().step_by(2).all(|&x| x == 0));
        assert_eq!(dp[1], 0);
    }
}

#[test]
fn traces_determine_the_ihara_denominator() {
    let g = sym3_bigraph();
    let two_n = g.n_directed();
    let traces: Vec<i128> = nb_closed_walks_dp(&g, two_n).into_iter().map(|x| x as i128).collect();
    let from_traces = ihara_from_traces(&traces);
    let den = ihara_denominator(&b_direct(&g, &Budgets::default()).unwrap());
    assert!(den.rounding_error < 1e-6);
    assert_eq!(from_traces, den.rounded);
}

/// Left-transitivity moves (x, j) to (gx, j), so profiles agree across starts
/// that share the class index j. Different j may give different profiles.
#[test]
fn nbrw_profile_depends_only_on_start_class() {
    let g = instance(5, 2, ActionKind::Regular);
    let kp1 = g.big_k + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for j in [0, 17, 101] {
        let base = nbrw_tv_profile(&g, j, 8, &[0.25]).unwrap();
        for _ in 0..5 {
            let x = rng.gen_range(0..g.n_left);
            let p = nbrw_tv_profile(&g, x * kp1 + j, 8, &[0.25]).unwrap();
            for (a, b) in base.tv.iter().zip(&p.tv) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn nbrw_support_grows_like_the_tree() {
    let mut graphs = vec![sym3_bigraph(), instance(5, 2, ActionKind::Regular)];
    for seed in 0..4 {
        graphs.push(random_biregular(60, 2, 1, seed).unwrap());
    }
    for g in &graphs {
        let girth = g.girth().unwrap();
        let kk = g.big_k * g.small_k;
        for t in 1..=4 {
            if 2 * t >= girth {
                break;
            }
            let reachable = g.nb_reach(0, 2 * t);
            let expected = kk.pow(t as u32).min(reachable);
            assert_eq!(nbrw_support(g, 0, t), expected, "girth {girth} t={t}");
        }
    }
}

#[test]
fn mixing_lower_bound() {
    for g in [instance(5, 2, ActionKind::Regular), random_biregular(42, 3, 2, 8).unwrap()] {
        let s = ((g.big_k * g.small_k) as f64).sqrt().ln();
        let n = (g.n_edges() as f64).ln() / s;
        for eps in [0.9, 0.5, 0.1] {
            let p = nbrw_tv_profile(&g, 0, 24, &[1.0 - eps]).unwrap();
            let t = p.mixing_time(1.0 - eps).expect("mixes within the window") as f64;
            assert!(n - (1.0 / eps).ln() / s <= t, "ε={eps}: t={t}");
        }
    }
}

#[test]
fn walks_start_at_distance_one_minus_one_over_n() {
    let g = instance(2, 7, ActionKind::ProjectivePlane);
    let p = srw_tv_profile(&g, 3, 4, &[0.5]).unwrap();
    assert!((p.tv[0] - (1.0 - 1.0 / g.n_left as f64)).abs() < 1e-12);
    assert!(nbrw_tv_profile(&g, 0, 4, &[0.5]).is_err(), "NBRW needs an unweighted graph");
}

#[test]
fn srw_cutoff_on_y27() {
    let g = instance(2, 7, ActionKind::ProjectivePlane);
    let p = srw_tv_profile(&g, 0, 40, &[0.25]).unwrap();
    let t = p.mixing_time(0.25).unwrap() as f64;
    let predicted = srw_cutoff_time(&g);
    assert!((t - predicted).abs() <= 0.25 * predicted, "t={t} predicted={predicted}");
}

#[test]
fn clash_extremes() {
    let g = instance(5, 2, ActionKind::Regular);
    let r = spectrum_report(&g, &SpectrumOptions::default()).unwrap();
    let all: Vec<usize> = (0..g.n_left).collect();
    let eps = 0.7;
    let c = clash_count(&g, &all, &all, eps);
    assert_eq!(c.clashes, (g.n_left * (g.big_k + 1) * g.small_k) as u64);
    assert!(c.error_bound.abs() < 1e-9 && c.slack.abs() < 1e-6);
    let single = clash_count(&g, &[3], &[3], eps);
    assert_eq!(single.clashes, 0);
    let rights: Vec<usize> = (0..g.n_right).collect();
    let e = eml_check(&g, &all, &rights, r.lambdas[1]);
    assert_eq!(e.edges as usize, g.n_edges());
    assert!((e.main_term - g.n_edges() as f64).abs() < 1e-9);
    let empty = eml_check(&g, &[], &rights, r.lambdas[1]);
    assert_eq!(empty.edges, 0);
}

#[test]
fn clash_identity_on_random_pairs() {
    let g = instance(2, 5, ActionKind::Isotropic);
    let r = spectrum_report(&g, &SpectrumOptions::default()).unwrap();
    let eps = biexpander_eps(&r).unwrap();
    let rep = pseudorandom_pairs(&g, eps, r.lambdas[1], 30, 99);
    assert!(rep.clash_identity_gap < 1e-6);
    assert_eq!(rep.clash_violations, 0);
    assert_eq!(rep.eml_violations, 0);
}

/// With x = 𝒫^{3,2} the difference operator is (1/14)(6I+J): 6/14 on
/// nonconstant functions and 21/14 on constants.
#[test]
fn sparsify_on_the_incidence_graph_itself() {
    let p = incidence_bigraph(3, 2).unwrap();
    let ident: Vec<usize> = (0..p.n_left).collect();
    let r = sparsify_norm(&p, 3, 2, &ident, 0.0).unwrap();
    assert!((r.nonconstant_norm - 6.0 / 14.0).abs() < 1e-12);
    assert!((r.norm - 1.5).abs() < 1e-12);
    assert!(r.norm <= r.bound);
}

#[test]
fn sparsify_bound_on_random_biexpanders() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for seed in 0..40 {
        let x = random_biregular(15, 6, 2, seed).unwrap();
        let r = spectrum_report(&x, &SpectrumOptions::default()).unwrap();
        let Some(eps) = biexpander_eps(&r) else { continue };
        for _ in 0..5 {
            let mut ident: Vec<usize> = (0..15).collect();
            ident.shuffle(&mut rng);
            let s = sparsify_norm(&x, 3, 2, &ident, eps).unwrap();
            assert!(s.norm <= s.bound + 1e-9, "seed {seed}: {} > {}", s.norm, s.bound);
        }
        checked += 1;
    }
    assert!(checked > 0, "no ε-biexpander among the samples");
}
