//! Acceptance suite: one PASS/FAIL line per criterion, with the measured values
//! and wall time. Exits nonzero when any criterion fails.

use biram::bigraph::{complete_bigraph, incidence_bigraph, sym3_bigraph, Bigraph};
use biram::classify::{biexpander_eps, classify, satake_histogram};
use biram::complexes::hecke_a1;
use biram::dynamics::{
    counts_from_primes, ihara_from_traces, nb_closed_walks_dfs, nb_closed_walks_dp,
    nb_closed_walks_spectral, nbrw_worst_profile, prime_counts, pseudorandom_pairs, zeta_report,
};
use biram::jobs::{construct, ActionKind, InstanceSpec};
use biram::lattice::{generator_system, mat_mul, LatticeKind, LatticeSpec, Mode, QMat};
use biram::rings::QuadInt;
use biram::spectral::{
    b_direct, b_spectrum_from_a, build_f_g_vectors, coefficient_gap, cycle_vectors, edge_norm,
    eig_residual, extend_to_vertices, fundamental_cycles, gram_eigenpairs, gram_matrix,
    ihara_product_form, multiset_distance, spectrum_report, tilde, SpectrumOptions, SpectrumReport,
};
use biram::Budgets;
use num_complex::Complex64;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn eis(p: u32, q: u32, action: ActionKind) -> Bigraph {
    construct(&InstanceSpec::new(LatticeKind::Eisenstein, p, q, action), &Budgets::default())
        .expect("construction")
}

fn report(g: &Bigraph) -> SpectrumReport {
    spectrum_report(g, &SpectrumOptions::default()).expect("spectrum")
}

// Explicit p = 2 Eisenstein generators, built independently of the enumeration:
// conjugates σ^a τ^b A^{±1} τ^{−b} σ^{−a} of the order-2 element A, scaled by 2.
fn explicit_p2_classes(spec: &LatticeSpec) -> BTreeSet<BTreeSet<QMat>> {
    let r = &spec.ring;
    let z = QuadInt::ZERO;
    let one = QuadInt::ONE;
    let w = QuadInt::TAU;
    let w2 = r.mul(w, w);
    let s3 = QuadInt::new(1, 2); // 1 + 2ω = √−3
    let two_a = [[QuadInt::int(-1), z, s3], [z, QuadInt::int(2), z], [s3, z, QuadInt::int(-1)]];
    let two_a_inv = [[QuadInt::int(-1), z, s3.neg()], [z, QuadInt::int(2), z], [s3.neg(), z, QuadInt::int(-1)]];
    let sigma = [[one, z, z], [z, w, z], [z, z, w2]];
    let sigma_inv = [[one, z, z], [z, w2, z], [z, z, w]];
    let tau = [[z, one, z], [z, z, one], [one, z, z]];
    let tau_inv = [[z, z, one], [one, z, z], [z, one, z]];
    let pow = |m: &QMat, k: usize| (0..k).fold(biram::lattice::identity(), |acc, _| mat_mul(r, &acc, m));
    let mut out = BTreeSet::new();
    for a in 0..3 {
        for b in 0..3 {
            let left = mat_mul(r, &pow(&sigma, a), &pow(&tau, b));
            let right = mat_mul(r, &pow(&tau_inv, b), &pow(&sigma_inv, a));
            let class: BTreeSet<QMat> = [two_a, two_a_inv]
                .iter()
                .map(|m| spec.canonical(&mat_mul(r, &mat_mul(r, &left, m), &right)))
                .collect();
            out.insert(class);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut detail = Vec::new();
    for (kind, p, count, classes, size) in [
        (LatticeKind::Eisenstein, 2, 18, 9, 2),
        (LatticeKind::Eisenstein, 5, 630, 126, 5),
        (LatticeKind::Mumford, 3, 84, 28, 3),
    ] {
        let g = generator_system(kind, p, Mode::InertBigraph).map_err(|e| e.to_string())?;
        let sizes: BTreeSet<usize> = g.classes.iter().map(|c| c.len()).collect();
        check(
            g.scaled_gens.len() == count && g.classes.len() == classes && sizes == BTreeSet::from([size]),
            format!("{kind:?} p={p}: {} generators in {} classes of sizes {sizes:?}", g.scaled_gens.len(), g.classes.len()),
        )?;
        detail.push(format!("{kind:?} p={p}: {count}/{classes}"));
    }
    let spec = LatticeSpec::new(LatticeKind::Eisenstein);
    let g = generator_system(LatticeKind::Eisenstein, 2, Mode::InertBigraph).map_err(|e| e.to_string())?;
    let enumerated: BTreeSet<BTreeSet<QMat>> = g
        .classes
        .iter()
        .map(|c| c.iter().map(|&s| spec.canonical(&g.scaled_gens[s])).collect())
        .collect();
    check(enumerated == explicit_p2_classes(&spec), "p=2 classes differ from the explicit conjugates")?;
    detail.push("p=2 classes equal the explicit set".into());
    Ok(detail.join("; "))
}

fn criterion_2() -> Outcome {
    let g = eis(5, 2, ActionKind::Regular);
    check(
        (g.n_left, g.big_k + 1, g.small_k + 1) == (72, 126, 6),
        format!("shape |L|={} ({},{})", g.n_left, g.big_k + 1, g.small_k + 1),
    )?;
    let r = report(&g);
    let v = classify(&r, 1e-8);
    check(v.adj && !v.fully, format!("adj={} fully={}", v.adj, v.fully))?;
    let target = 5f64.powf(1.5);
    let tol = 1e-8 * target;
    for sign in [1.0, -1.0] {
        let z = Complex64::new(0.0, sign * target);
        check(r.b_spectrum.iter().any(|m| (m - z).norm() <= tol), format!("{z} missing from B-spectrum"))?;
    }
    let a_type = satake_histogram(&r).map_err(|e| e.to_string())?.a_type;
    check(a_type == r.excessiveness && a_type >= 1, format!("A-type {a_type}, E={}", r.excessiveness))?;
    Ok(format!("adj=true fully=false E_X={} (exact {:?}) ±i·5^1.5 present, A-type={a_type}", r.excessiveness, r.e_exact))
}

fn criterion_3() -> Outcome {
    let mut detail = Vec::new();
    for (q, action, n_left) in [(5, ActionKind::Isotropic, 126), (7, ActionKind::ProjectivePlane, 57)] {
        let g = eis(2, q, action);
        check(g.n_left == n_left, format!("Y(2,{q}) has |L|={}", g.n_left))?;
        let r = report(&g);
        let v = classify(&r, 1e-8);
        check(r.e_exact == Some(0), format!("Y(2,{q}) exact E = {:?}", r.e_exact))?;
        check(v.fully, format!("Y(2,{q}) not fully Ramanujan: {:?}", v.offending))?;
        detail.push(format!("Y(2,{q}) |L|={n_left} E_exact=0 primes={:?} fully", r.rank_primes));
    }
    Ok(detail.join("; "))
}

fn criterion_4() -> Outcome {
    let inst = InstanceSpec::new(LatticeKind::Mumford, 5, 3, ActionKind::Regular);
    let g = construct(&inst, &Budgets::default()).map_err(|e| e.to_string())?;
    check(
        (g.n_left, g.big_k + 1, g.small_k + 1) == (6048, 126, 6),
        format!("shape |L|={} ({},{})", g.n_left, g.big_k + 1, g.small_k + 1),
    )?;
    let r = report(&g);
    let v = classify(&r, 1e-8);
    check(v.fully, format!("verdict adj={} E={} offending={}", v.adj, r.excessiveness, v.offending.len()))?;
    Ok(format!("|L|=6048 (126,6) E_exact={:?} fully", r.e_exact))
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    for (name, g) in [("Sym(3)", sym3_bigraph()), ("K(3,6)", complete_bigraph(3, 6))] {
        let r = report(&g);
        let transfer = b_spectrum_from_a(&r).map_err(|e| e.to_string())?;
        let direct = b_direct(&g, &Budgets::default()).map_err(|e| e.to_string())?;
        let dist = multiset_distance(&transfer, &direct).map_err(|e| e.to_string())?;
        check(dist < 1e-8, format!("{name}: B multiset distance {dist:e}"))?;

        let mut worst: f64 = 0.0;
        let mut vanishing = 0;
        for (mu2, f_left) in gram_eigenpairs(&g).map_err(|e| e.to_string())? {
            let lambda = mu2.max(0.0).sqrt();
            if lambda < 1e-6 {
                continue;
            }
            let f = extend_to_vertices(&g, &f_left, lambda);
            let fg = build_f_g_vectors(&g, &f, lambda).map_err(|e| e.to_string())?;
            let family = [
                (&fg.f_plus, fg.mu_plus),
                (&fg.f_minus, fg.mu_minus),
                (&fg.g_plus, fg.mu_plus),
                (&fg.g_minus, fg.mu_minus),
            ];
            let scale = family.iter().map(|(v, _)| edge_norm(v)).fold(0.0, f64::max);
            for (v, mu) in family {
                let n = edge_norm(v);
                // at λ = pf the μ = ±1 members vanish identically
                if n <= 1e-12 * scale {
                    vanishing += 1;
                    continue;
                }
                worst = worst.max(eig_residual(&g, v, mu) / n);
                worst = worst.max(eig_residual(&g, &tilde(&g, v), -mu) / n);
            }
        }
        for cyc in fundamental_cycles(&g, usize::MAX) {
            let (p, n) = cycle_vectors(&g, &cyc);
            worst = worst.max(eig_residual(&g, &p, Complex64::new(1.0, 0.0)) / edge_norm(&p));
            worst = worst.max(eig_residual(&g, &n, Complex64::new(-1.0, 0.0)) / edge_norm(&n));
        }
        check(worst < 1e-9, format!("{name}: eigenvector residual {worst:e}"))?;

        // det(I − uB) from exact traces via Newton's identities
        let traces: Vec<i128> =
            nb_closed_walks_dp(&g, 2 * g.n_edges()).into_iter().map(|x| x as i128).collect();
        let exact: Vec<Complex64> =
            ihara_from_traces(&traces).into_iter().map(|c| Complex64::new(c as f64, 0.0)).collect();
        let gap = coefficient_gap(&exact, &ihara_product_form(&r));
        check(gap < 1e-6, format!("{name}: det(I−uB) coefficient gap {gap:e}"))?;
        detail.push(format!(
            "{name}: B dist {dist:.1e}, residual {worst:.1e} ({vanishing} vanishing), det gap {gap:.1e}"
        ));
    }
    Ok(detail.join("; "))
}

fn criterion_6() -> Outcome {
    let small = sym3_bigraph();
    check(nb_closed_walks_dfs(&small, 12) == nb_closed_walks_dp(&small, 12), "DFS and DP differ on Sym(3)")?;
    let g = eis(2, 7, ActionKind::ProjectivePlane);
    let r = report(&g);
    let z = zeta_report(&g, &r, 12, Budgets::default().nm_brute).map_err(|e| e.to_string())?;
    check(z.counts == z.counts_spectral, format!("N_m {:?} vs spectral {:?}", z.counts, z.counts_spectral))?;
    let spectral = nb_closed_walks_spectral(&r.b_spectrum, 12).map_err(|e| e.to_string())?;
    check(spectral == z.counts_spectral, "spectral counts not reproducible")?;
    let back = counts_from_primes(&prime_counts(&z.counts));
    check(
        back.iter().zip(&z.counts).all(|(a, &b)| (a - b as f64).abs() < 0.5),
        "Möbius round trip failed",
    )?;
    let bad: Vec<usize> = z.pnt.iter().filter(|row| !row.ok).map(|row| row.length).collect();
    check(!z.pnt.is_empty() && bad.is_empty(), format!("PNT fails at lengths {bad:?}"))?;
    let lengths: Vec<usize> = z.pnt.iter().map(|row| row.length).collect();
    Ok(format!("N_1..12 exact = spectral {:?}; PNT holds at 2m ∈ {lengths:?}", z.counts))
}

fn criterion_7() -> Outcome {
    let mut detail = Vec::new();
    for (q, action) in [(7, ActionKind::ProjectivePlane), (5, ActionKind::Isotropic)] {
        let g = eis(2, q, action);
        let r = report(&g);
        let eps = biexpander_eps(&r).ok_or(format!("Y(2,{q}) is not a biexpander"))?;
        let rep = pseudorandom_pairs(&g, eps, r.lambdas[1], 100, 2024 + q as u64);
        check(
            rep.clash_violations == 0 && rep.eml_violations == 0,
            format!("Y(2,{q}): clash violations {}, EML violations {}", rep.clash_violations, rep.eml_violations),
        )?;
        check(rep.clash_identity_gap < 1e-6, format!("Y(2,{q}): clash identity gap {}", rep.clash_identity_gap))?;
        let min_clash = rep.clash.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min);
        let min_eml = rep.eml.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min);
        detail.push(format!("Y(2,{q}) ε={eps:.4} seed={} min slack clash {min_clash:.2} EML {min_eml:.2}", rep.seed));
    }
    Ok(detail.join("; "))
}

fn criterion_8() -> Outcome {
    let g = eis(5, 2, ActionKind::Regular);
    let (kb, ks) = (g.big_k as f64, g.small_k as f64);
    let log = |x: f64| x.ln() / (kb * ks).sqrt().ln();
    let n = g.n_edges() as f64;
    let starts: Vec<usize> = g.edges_at_left(0).collect();
    let prof = nbrw_worst_profile(&g, &starts, 16, &[0.5, 0.25, 0.75]).map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    for eps in [0.5, 0.25] {
        let lower = log(n) - log(1.0 / eps);
        let upper = log(n) + 4.0 * log(1.0 / eps) + 3.0 + 2.0;
        let t_hi = prof.mixing_time(1.0 - eps).ok_or("profile did not reach 1−ε")? as f64;
        let t_lo = prof.mixing_time(eps).ok_or("profile did not reach ε")? as f64;
        check(lower <= t_hi, format!("ε={eps}: t_mix(1−ε)={t_hi} below {lower:.3}"))?;
        check(t_lo <= upper, format!("ε={eps}: t_mix(ε)={t_lo} above {upper:.3}"))?;
        detail.push(format!("ε={eps}: {lower:.2} ≤ t_mix(1−ε)={t_hi}, t_mix(ε)={t_lo} ≤ {upper:.2}"));
    }
    let girth = g.girth().map_err(|e| e.to_string())?;
    check(girth % 2 == 0 && girth as f64 > 2.0 * 2f64.ln() / 5f64.ln(), format!("girth {girth}"))?;
    let diam = g.nb_diameter().ok_or("NB-diameter undefined")?;
    let bound = 2.0 * log(n) + 12.0;
    check(diam as f64 <= bound, format!("NB-diameter {diam} > {bound:.2}"))?;
    detail.push(format!("girth {girth}, NB-diameter {diam} ≤ {bound:.2}"));
    Ok(detail.join("; "))
}

fn criterion_9() -> Outcome {
    let g = incidence_bigraph(3, 2).map_err(|e| e.to_string())?;
    let n = g.n_left;
    // two points span one line and every point lies on 7 lines: A²|_L = 6I + J
    let gram = gram_matrix(&g);
    let oracle_ok = (0..n).all(|i| (0..n).all(|j| gram[i * n + j] == if i == j { 7.0 } else { 1.0 }));
    check(oracle_ok, "Gram matrix differs from 6I + J")?;
    let r = report(&g);
    let mut evs: Vec<f64> = r.gram_eigenvalues.clone();
    evs.iter_mut().for_each(|x| {
        if (*x - x.round()).abs() <= 1e-9 {
            *x = x.round();
        }
    });
    let expected: Vec<f64> = std::iter::once(21.0).chain(std::iter::repeat_n(6.0, 14)).collect();
    check(evs == expected, format!("Spec(A²|_L) = {evs:?}"))?;
    let eps = biexpander_eps(&r);
    check(eps == Some(0.0) || eps.is_some_and(|e| e < 1e-9), format!("biexpander ε = {eps:?}"))?;
    Ok(format!("Spec(A²|_L) = {{21}} ∪ {{6}}^14, ε = {:.1e}", eps.unwrap_or(f64::NAN)))
}

fn criterion_10() -> Outcome {
    let c = hecke_a1(7, 2, Budgets::default().direct_b, Budgets::default().closure).map_err(|e| e.to_string())?;
    check(c.normality_residual < 1e-10, format!("normality residual {:e}", c.normality_residual))?;
    check(c.perron_present(), "Perron eigenvalue 57 missing")?;
    let slack = 1e-6 * 7f64.powf(1.5);
    let outside: Vec<Complex64> = c
        .points
        .iter()
        .filter(|e| {
            e.d_tempered > c.tempered_resolution + slack
                && e.d_endoscopic > c.endoscopic_resolution + slack
                && e.d_trivial > slack
        })
        .map(|e| e.value)
        .collect();
    check(c.all_contained() && outside.is_empty(), format!("eigenvalues outside the regions: {outside:?}"))?;
    let endoscopic = c.points.iter().filter(|e| e.d_tempered > c.tempered_resolution + slack && !e.trivial).count();
    let trivial = c.points.iter().filter(|e| e.trivial).count();
    Ok(format!(
        "|G|={} points, normality {:.1e}, trivial {trivial}, endoscopic-only {endoscopic}, all contained",
        c.group_order, c.normality_residual
    ))
}

fn criterion_11() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_biram");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for (run, threads) in ["1", "4"].into_iter().enumerate() {
        let path = dir.path().join(format!("run{run}.json"));
        let status = Command::new(exe)
            .args(["pipeline", "--lattice", "eisenstein", "--p", "5", "--q", "2", "--threads", threads, "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        check(status.success(), format!("pipeline run {run} exited with {status}"))?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    check(outputs[0] == outputs[1], "pipeline JSON differs between runs")?;
    Ok(format!("pipeline on X(5,2) with 1 and 4 threads: {} identical bytes", outputs[0].len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("generator enumeration", Duration::from_secs(10), criterion_1),
        ("X_E^{5,2} adj but not fully Ramanujan", Duration::from_secs(60), criterion_2),
        ("Y_E^{2,5}, Y_E^{2,7} fully Ramanujan", Duration::from_secs(30), criterion_3),
        ("X_M^{5,3} fully Ramanujan", Duration::from_secs(15 * 60), criterion_4),
        ("spectral cross-check", Duration::from_secs(5), criterion_5),
        ("zeta / PNT", Duration::from_secs(120), criterion_6),
        ("clash counting and EML", Duration::from_secs(60), criterion_7),
        ("NBRW mixing, girth, NB-diameter", Duration::from_secs(180), criterion_8),
        ("incidence bigraph spectrum", Duration::from_secs(1), criterion_9),
        ("Hecke A1 containment", Duration::from_secs(60), criterion_10),
        ("determinism", Duration::from_secs(120), criterion_11),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.1?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] {id:>2}. {name} ({:.1?}): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
