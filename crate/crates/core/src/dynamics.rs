//! Random walks, clash counting, mixing lemmas, sparsification and closed
//! non-backtracking walk counts.
//!
//! On orbigraphs every count is the push-down of the covering graph's count:
//! right vertex `r` carries each member edge `stabilizer(r)` times.

use crate::bigraph::{incidence_bigraph, Bigraph, BigraphError};
use crate::linalg;
use crate::spectral::{gram_matrix, SpectrumReport};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Bigraph(#[from] BigraphError),
    #[error("{what}: {size} exceeds the budget {limit}")]
    BudgetExceeded { what: String, size: usize, limit: usize },
    #[error("spectral count N_{m} = {value} is {gap} from the nearest integer")]
    SpectralIntegerMismatch { m: usize, value: f64, gap: f64 },
    #[error("left side has {got} vertices, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("start {start} out of range")]
    BadStart { start: usize },
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkProfile {
    pub kind: String,
    pub start: usize,
    /// even times 0, 2, …, t_max
    pub times: Vec<usize>,
    pub tv: Vec<f64>,
    /// (ε, smallest even t with TV < ε)
    pub t_mix: Vec<(f64, Option<usize>)>,
}

impl WalkProfile {
    fn finish(kind: &str, start: usize, tv: Vec<f64>, eps: &[f64]) -> WalkProfile {
        let times: Vec<usize> = (0..tv.len()).map(|i| 2 * i).collect();
        let t_mix = eps
            .iter()
            .map(|&e| (e, tv.iter().position(|&v| v < e).map(|i| 2 * i)))
            .collect();
        WalkProfile { kind: kind.into(), start, times, tv, t_mix }
    }

    pub fn mixing_time(&self, eps: f64) -> Option<usize> {
        self.tv.iter().position(|&v| v < eps).map(|i| 2 * i)
    }
}

fn tv_to_uniform(p: &[f64]) -> f64 {
    let u = 1.0 / p.len() as f64;
    0.5 * p.iter().map(|&x| (x - u).abs()).sum::<f64>()
}

/// One double step of the NBRW on L→R edges: e ↦ other members of r ↦ other
/// edges at their left endpoints.
fn nbrw_double_step(g: &Bigraph, p: &[f64]) -> Vec<f64> {
    let (kb, ks) = (g.big_k as f64, g.small_k as f64);
    let mut q = vec![0.0; p.len()];
    for mem in &g.right_members {
        let total: f64 = mem.iter().map(|&e| p[e as usize]).sum();
        for &e in mem {
            q[e as usize] = (total - p[e as usize]) / ks;
        }
    }
    let kp1 = g.big_k + 1;
    let mut out = vec![0.0; p.len()];
    out.par_chunks_mut(kp1).zip(q.par_chunks(kp1)).for_each(|(o, qs)| {
        let s: f64 = qs.iter().sum();
        for (x, &y) in o.iter_mut().zip(qs) {
            *x = (s - y) / kb;
        }
    });
    out
}

/// Exact NBRW distribution from the L→R edge `e0` at even times up to `t_max`,
/// with total variation to the uniform law on L→R edges.
pub fn nbrw_tv_profile(
    g: &Bigraph,
    e0: usize,
    t_max: usize,
    eps: &[f64],
) -> Result<WalkProfile, DynamicsError> {
    if g.is_weighted() {
        return Err(BigraphError::Weighted.into());
    }
    if e0 >= g.n_edges() {
        return Err(DynamicsError::BadStart { start: e0 });
    }
    let mut p = vec![0.0; g.n_edges()];
    p[e0] = 1.0;
    let mut tv = vec![tv_to_uniform(&p)];
    for _ in 0..t_max / 2 {
        p = nbrw_double_step(g, &p);
        tv.push(tv_to_uniform(&p));
    }
    Ok(WalkProfile::finish("nbrw", e0, tv, eps))
}

/// Support size of the NBRW distribution after `2t` steps from `e0`.
pub fn nbrw_support(g: &Bigraph, e0: usize, t: usize) -> usize {
    let mut p = vec![0.0; g.n_edges()];
    p[e0] = 1.0;
    for _ in 0..t {
        p = nbrw_double_step(g, &p);
    }
    p.iter().filter(|&&x| x > 0.0).count()
}

/// Worst-case profile over a set of start edges (pointwise maximum of TV).
pub fn nbrw_worst_profile(
    g: &Bigraph,
    starts: &[usize],
    t_max: usize,
    eps: &[f64],
) -> Result<WalkProfile, DynamicsError> {
    let profiles: Vec<WalkProfile> = starts
        .par_iter()
        .map(|&e| nbrw_tv_profile(g, e, t_max, eps))
        .collect::<Result<_, _>>()?;
    let len = profiles[0].tv.len();
    let tv = (0..len).map(|i| profiles.iter().map(|p| p.tv[i]).fold(0.0, f64::max)).collect();
    Ok(WalkProfile::finish("nbrw-worst", starts[0], tv, eps))
}

/// Exact SRW distribution from left vertex `v0` at even times, compared with the
/// uniform law on L. A right vertex moves to a uniform member edge, which is the
/// projection of the covering walk.
pub fn srw_tv_profile(
    g: &Bigraph,
    v0: usize,
    t_max: usize,
    eps: &[f64],
) -> Result<WalkProfile, DynamicsError> {
    if v0 >= g.n_left {
        return Err(DynamicsError::BadStart { start: v0 });
    }
    let kp1 = (g.big_k + 1) as f64;
    let mut p = vec![0.0; g.n_left];
    p[v0] = 1.0;
    let mut tv = vec![tv_to_uniform(&p)];
    for _ in 0..t_max / 2 {
        let q: Vec<f64> = g
            .right_members
            .iter()
            .map(|mem| mem.iter().map(|&e| p[g.left_of(e as usize)]).sum::<f64>() / kp1)
            .collect();
        let mut next = vec![0.0; g.n_left];
        for (r, mem) in g.right_members.iter().enumerate() {
            let share = q[r] / mem.len() as f64;
            for &e in mem {
                next[g.left_of(e as usize)] += share;
            }
        }
        p = next;
        tv.push(tv_to_uniform(&p));
    }
    Ok(WalkProfile::finish("srw", v0, tv, eps))
}

/// Predicted SRW cutoff time (K+1)(k+1)/(Kk−1)·log_{√Kk} N with N = |E|.
pub fn srw_cutoff_time(g: &Bigraph) -> f64 {
    srw_cutoff_at(g, g.n_edges() as f64)
}

/// Same drift constant with the logarithm of |L| in place of N; it differs from
/// [`srw_cutoff_time`] by the constant log_{√Kk}(K+1).
pub fn srw_cutoff_time_left(g: &Bigraph) -> f64 {
    srw_cutoff_at(g, g.n_left as f64)
}

fn srw_cutoff_at(g: &Bigraph, size: f64) -> f64 {
    let (kb, ks) = (g.big_k as f64, g.small_k as f64);
    (kb + 1.0) * (ks + 1.0) / (kb * ks - 1.0) * size.ln() / (kb * ks).sqrt().ln()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClashReport {
    pub s_size: usize,
    pub t_size: usize,
    pub overlap: usize,
    /// |Cl(S,T)| by enumeration of non-backtracking 2-paths
    pub clashes: u64,
    /// ⟨(A²−(K+1))1_S, 1_T⟩
    pub clashes_spectral: f64,
    pub eps: f64,
    pub main_term: f64,
    pub error_bound: f64,
    /// error_bound − |clashes − main_term|
    pub slack: f64,
}

fn indicator(n: usize, set: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &x in set {
        v[x] = true;
    }
    v
}

/// Clash count for S, T ⊆ L with the ε-biexpander bound.
pub fn clash_count(g: &Bigraph, s: &[usize], t: &[usize], eps: f64) -> ClashReport {
    let n = g.n_left;
    let (in_s, in_t) = (indicator(n, s), indicator(n, t));
    let ne = g.n_edges();
    let mut clashes = 0u64;
    for x in s {
        for e in g.edges_at_left(*x) {
            for (d, m) in g.nb_successors(e) {
                if in_t[g.left_of(d - ne)] {
                    clashes += m as u64;
                }
            }
        }
    }
    let gram = gram_matrix(g);
    let kp1 = (g.big_k + 1) as f64;
    let overlap = (0..n).filter(|&x| in_s[x] && in_t[x]).count();
    let pair: f64 = s.iter().map(|&x| t.iter().map(|&y| gram[x * n + y]).sum::<f64>()).sum();
    let clashes_spectral = pair - kp1 * overlap as f64;
    let (kb, ks) = (g.big_k as f64, g.small_k as f64);
    let (ss, ts, nf) = (s.len() as f64, t.len() as f64, n as f64);
    let e2 = eps * eps;
    let main_term = (kb * ks + ks + 1.0 - e2) / nf * ss * ts + (e2 - 1.0) * overlap as f64;
    let error_bound =
        2.0 * kb.sqrt() * eps * (ss * (1.0 - ss / nf) * ts * (1.0 - ts / nf)).max(0.0).sqrt();
    ClashReport {
        s_size: s.len(),
        t_size: t.len(),
        overlap,
        clashes,
        clashes_spectral,
        eps,
        main_term,
        error_bound,
        slack: error_bound - (clashes as f64 - main_term).abs(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmlReport {
    pub s_size: usize,
    /// W(T) = Σ_{r∈T} |r|/(k+1); equals |T| on unweighted bigraphs
    pub t_weight: f64,
    pub edges: u64,
    pub main_term: f64,
    pub error_bound: f64,
    pub slack: f64,
}

/// Expander mixing bound for S ⊆ L, T ⊆ R with ε = λ₂.
pub fn eml_check(g: &Bigraph, s: &[usize], t: &[usize], lambda2: f64) -> EmlReport {
    let in_s = indicator(g.n_left, s);
    let mut edges = 0u64;
    let mut t_weight = 0.0;
    for &r in t {
        t_weight += g.weight(r);
        edges += g.right_members[r].iter().filter(|&&e| in_s[g.left_of(e as usize)]).count() as u64;
    }
    let nf = g.n_left as f64;
    let r_weight: f64 = (0..g.n_right).map(|r| g.weight(r)).sum();
    let ss = s.len() as f64;
    let main_term = (g.small_k + 1) as f64 / nf * ss * t_weight;
    let error_bound = lambda2
        * (ss * (1.0 - ss / nf) * t_weight * (1.0 - t_weight / r_weight)).max(0.0).sqrt();
    EmlReport {
        s_size: s.len(),
        t_weight,
        edges,
        main_term,
        error_bound,
        slack: error_bound - (edges as f64 - main_term).abs(),
    }
}

/// Subset densities used by [`pseudorandom_pairs`].
pub const PAIR_DENSITIES: [f64; 3] = [0.1, 0.3, 0.5];

/// Uniform subset of {0..n−1} with ⌈density·n⌉ elements, sorted.
pub fn random_subset<R: rand::Rng>(n: usize, density: f64, rng: &mut R) -> Vec<usize> {
    let size = ((density * n as f64).ceil() as usize).min(n);
    let mut v = rand::seq::index::sample(rng, n, size).into_vec();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairsReport {
    pub seed: u64,
    pub eps: f64,
    pub lambda2: f64,
    pub clash: Vec<ClashReport>,
    pub eml: Vec<EmlReport>,
    pub clash_violations: usize,
    pub eml_violations: usize,
    /// largest |clashes − ⟨(A²−(K+1))1_S,1_T⟩|
    pub clash_identity_gap: f64,
}

/// `pairs` seeded (S,T) draws: clash counts for S,T ⊆ L and EML for S ⊆ L,
/// T ⊆ R. Pair i uses density PAIR_DENSITIES[i mod 3] for both sets.
pub fn pseudorandom_pairs(g: &Bigraph, eps: f64, lambda2: f64, pairs: usize, seed: u64) -> PairsReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut clash = Vec::with_capacity(pairs);
    let mut eml = Vec::with_capacity(pairs);
    for i in 0..pairs {
        let d = PAIR_DENSITIES[i % PAIR_DENSITIES.len()];
        let s = random_subset(g.n_left, d, &mut rng);
        let t = random_subset(g.n_left, d, &mut rng);
        clash.push(clash_count(g, &s, &t, eps));
        let tr = random_subset(g.n_right, d, &mut rng);
        eml.push(eml_check(g, &s, &tr, lambda2));
    }
    // slack is compared against a 1e−9 relative floor for rounding in the bound
    let tol = |b: f64| 1e-9 * b.abs().max(1.0);
    PairsReport {
        seed,
        eps,
        lambda2,
        clash_violations: clash.iter().filter(|c| c.slack < -tol(c.error_bound)).count(),
        eml_violations: eml.iter().filter(|c| c.slack < -tol(c.error_bound)).count(),
        clash_identity_gap: clash
            .iter()
            .map(|c| (c.clashes as f64 - c.clashes_spectral).abs())
            .fold(0.0, f64::max),
        clash,
        eml,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyReport {
    pub norm: f64,
    /// largest |eigenvalue| on functions with zero sum
    pub nonconstant_norm: f64,
    pub bound: f64,
    pub eps: f64,
}

/// ‖ n/(k(K+1))·A_x²|_L − A_𝒫²|_𝓛 ‖ for the left side of `x` identified with the
/// points of 𝒫^{d,k} through `ident` (x-vertex ↦ point index).
pub fn sparsify_norm(
    x: &Bigraph,
    d: usize,
    k: u32,
    ident: &[usize],
    eps: f64,
) -> Result<SparsifyReport, DynamicsError> {
    let p = incidence_bigraph(d, k)?;
    let n = p.n_left;
    if x.n_left != n || ident.len() != n {
        return Err(DynamicsError::ShapeMismatch { expected: n, got: x.n_left });
    }
    let gx = gram_matrix(x);
    let gp = gram_matrix(&p);
    let kf = k as f64;
    let kb = x.big_k as f64;
    let scale = n as f64 / (kf * (kb + 1.0));
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[ident[i] * n + ident[j]] = scale * gx[i * n + j];
        }
    }
    for (a, b) in t.iter_mut().zip(&gp) {
        *a -= b;
    }
    let evs = linalg::sym_eigenvalues(n, &t)?;
    let norm = evs.iter().map(|v| v.abs()).fold(0.0, f64::max);
    // T preserves constants; deflate them to read the nonconstant part
    let row0: f64 = t[..n].iter().sum();
    let mut defl = t.clone();
    for v in defl.iter_mut() {
        *v -= row0 / n as f64;
    }
    let nonconstant_norm = linalg::sym_eigenvalues(n, &defl)?
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let bound = (kf + 1.0) / kf
        + ((eps * eps - 1.0).abs() + 2.0 * kb.sqrt() * eps) / ((kb + 1.0) * kf) * n as f64;
    Ok(SparsifyReport { norm, nonconstant_norm, bound, eps })
}

/// tr(B^m) for m = 1..=m_max by depth-first enumeration of closed NB walks.
pub fn nb_closed_walks_dfs(g: &Bigraph, m_max: usize) -> Vec<u128> {
    fn go(g: &Bigraph, start: usize, cur: usize, len: usize, w: u128, m_max: usize, acc: &mut [u128]) {
        for (s, m) in g.nb_successors(cur) {
            let w2 = w * m as u128;
            if s == start {
                acc[len] += w2;
            }
            if len < m_max {
                go(g, start, s, len + 1, w2, m_max, acc);
            }
        }
    }
    let totals: Vec<Vec<u128>> = (0..g.n_directed())
        .into_par_iter()
        .map(|d| {
            let mut acc = vec![0u128; m_max + 1];
            if m_max > 0 {
                go(g, d, d, 1, 1, m_max, &mut acc);
            }
            acc
        })
        .collect();
    (1..=m_max).map(|m| totals.iter().map(|a| a[m]).sum()).collect()
}

/// tr(B^m) for m = 1..=m_max by exact propagation of walk counts from every start.
pub fn nb_closed_walks_dp(g: &Bigraph, m_max: usize) -> Vec<u128> {
    let nd = g.n_directed();
    let succ: Vec<Vec<(usize, u32)>> = (0..nd).map(|d| g.nb_successors(d)).collect();
    let totals: Vec<Vec<u128>> = (0..nd)
        .into_par_iter()
        .map(|d| {
            let mut acc = vec![0u128; m_max];
            let mut cur = vec![0u128; nd];
            cur[d] = 1;
            for slot in acc.iter_mut() {
                let mut next = vec![0u128; nd];
                for (x, &c) in cur.iter().enumerate() {
                    if c != 0 {
                        for &(y, m) in &succ[x] {
                            next[y] += c * m as u128;
                        }
                    }
                }
                *slot = next[d];
                cur = next;
            }
            acc
        })
        .collect();
    (0..m_max).map(|i| totals.iter().map(|a| a[i]).sum()).collect()
}

/// Σ μ^m over the B-spectrum, rounded; fails if any value is 0.4 or more from an integer.
pub fn nb_closed_walks_spectral(b: &[Complex64], m_max: usize) -> Result<Vec<i128>, DynamicsError> {
    let mut pow: Vec<Complex64> = b.to_vec();
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let s: Complex64 = pow.iter().sum();
        let r = s.re.round();
        let gap = (s.re - r).abs().max(s.im.abs());
        if gap >= 0.4 {
            return Err(DynamicsError::SpectralIntegerMismatch { m, value: s.re, gap });
        }
        out.push(r as i128);
        for (p, z) in pow.iter_mut().zip(b) {
            *p *= z;
        }
    }
    Ok(out)
}

pub fn mobius(mut n: usize) -> i32 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// π(m) from N_1..N_M via m·π(m) = Σ_{d|m} μ(m/d) N_d. Entry `m−1` holds π(m).
pub fn prime_counts(n: &[i128]) -> Vec<f64> {
    (1..=n.len())
        .map(|m| {
            let s: i128 =
                (1..=m).filter(|d| m % d == 0).map(|d| mobius(m / d) as i128 * n[d - 1]).sum();
            s as f64 / m as f64
        })
        .collect()
}

/// Reconstruct N_m = Σ_{d|m} d·π(d).
pub fn counts_from_primes(pi: &[f64]) -> Vec<f64> {
    (1..=pi.len())
        .map(|m| (1..=m).filter(|d| m % d == 0).map(|d| d as f64 * pi[d - 1]).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PntRow {
    /// cycle length 2m
    pub length: usize,
    pub primes: f64,
    pub main: f64,
    pub residual: f64,
    pub bound: f64,
    pub ok: bool,
}

/// |π(2m) − (Kk)^m/m − 𝓔(−K)^m/(2m)| ≤ 2N(Kk)^{m/2} for even lengths in [from, to].
pub fn pnt_check(report: &SpectrumReport, pi: &[f64], from: usize, to: usize) -> Vec<PntRow> {
    let sh = &report.shape;
    let (kb, ks) = (sh.k_big(), sh.k_small());
    let e = report.excessiveness as f64;
    let n = sh.n_edges as f64;
    (from.max(2)..=to.min(pi.len()))
        .filter(|l| l % 2 == 0)
        .map(|length| {
            let m = (length / 2) as i32;
            let main = (kb * ks).powi(m) / m as f64 + e * (-kb).powi(m) / (2 * m) as f64;
            let primes = pi[length - 1];
            let residual = (primes - main).abs();
            let bound = 2.0 * n * (kb * ks).powf(m as f64 / 2.0);
            PntRow { length, primes, main, residual, bound, ok: residual <= bound }
        })
        .collect()
}

/// Coefficients of det(I − uB) from exact traces via Newton's identities:
/// j·c_j = −Σ_{i=1}^{j} N_i c_{j−i}.
pub fn ihara_from_traces(traces: &[i128]) -> Vec<i128> {
    let mut c = vec![1i128];
    for j in 1..=traces.len() {
        let s: i128 = (1..=j).map(|i| traces[i - 1] * c[j - i]).sum();
        debug_assert_eq!(s % j as i128, 0);
        c.push(-s / j as i128);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IharaDenominator {
    /// real parts of ∏(1 − μu), lowest degree first
    pub coefficients: Vec<f64>,
    pub rounded: Vec<i128>,
    /// largest |c − round(c)| / max(1, |c|), imaginary parts included
    pub rounding_error: f64,
}

/// det(I − uB) from the B-spectrum.
pub fn ihara_denominator(b: &[Complex64]) -> IharaDenominator {
    let c = crate::spectral::poly_from_roots(b);
    let rounded: Vec<i128> = c.iter().map(|z| z.re.round() as i128).collect();
    let rounding_error = c
        .iter()
        .map(|z| ((z.re - z.re.round()).abs().max(z.im.abs())) / z.norm().max(1.0))
        .fold(0.0, f64::max);
    IharaDenominator { coefficients: c.iter().map(|z| z.re).collect(), rounded, rounding_error }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub m_max: usize,
    /// N_1..N_{m_max} by exhaustive counting
    pub counts: Vec<i128>,
    /// N_1..N_{m_max} from the B-spectrum
    pub counts_spectral: Vec<i128>,
    pub primes: Vec<f64>,
    pub pnt: Vec<PntRow>,
}

/// Closed-walk counts both ways, prime counts and the PNT residuals from the girth.
pub fn zeta_report(
    g: &Bigraph,
    report: &SpectrumReport,
    m_max: usize,
    budget: usize,
) -> Result<ZetaReport, DynamicsError> {
    if m_max > budget {
        return Err(DynamicsError::BudgetExceeded {
            what: "closed walk length".into(),
            size: m_max,
            limit: budget,
        });
    }
    let counts: Vec<i128> = nb_closed_walks_dp(g, m_max).into_iter().map(|x| x as i128).collect();
    let counts_spectral = nb_closed_walks_spectral(&report.b_spectrum, m_max)?;
    let primes = prime_counts(&counts);
    let girth = g.girth()?;
    let pnt = pnt_check(report, &primes, girth, m_max);
    Ok(ZetaReport { m_max, counts, counts_spectral, primes, pnt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::sym3_bigraph;

    #[test]
    fn mobius_values() {
        let v: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn dfs_matches_dp_on_sym3() {
        let g = sym3_bigraph();
        assert_eq!(nb_closed_walks_dfs(&g, 10), nb_closed_walks_dp(&g, 10));
    }

    #[test]
    fn walk_starts_far_from_uniform() {
        let g = sym3_bigraph();
        let p = nbrw_tv_profile(&g, 0, 6, &[0.5]).unwrap();
        assert!((p.tv[0] - (1.0 - 1.0 / g.n_edges() as f64)).abs() < 1e-15);
        let s = srw_tv_profile(&g, 0, 6, &[0.5]).unwrap();
        assert!((s.tv[0] - (1.0 - 1.0 / g.n_left as f64)).abs() < 1e-15);
    }

    #[test]
    fn newton_identities_roundtrip() {
        // roots 2 and 3: det = 1 − 5u + 6u²
        let traces = [5i128, 13, 35];
        assert_eq!(ihara_from_traces(&traces), vec![1, -5, 6, 0]);
    }
}
