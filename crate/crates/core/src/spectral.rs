//! Adjacency and non-backtracking spectra of bigraphs.
//!
//! The adjacency spectrum is read off the |L|×|L| Gram matrix `CᵀHC`, where
//! `C[r][x]` counts the edges between `r` and `x` and `H = diag(stabilizer(r))`.
//! On unweighted bigraphs this is `A²|_L`; on orbigraphs it is the push-down of
//! the covering graph's `A²|_L`.

use crate::bigraph::Bigraph;
use crate::linalg::{self, LinalgError, MAX_RANK_PRIME};
use crate::Budgets;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::f64::consts::PI;
use thiserror::Error;

/// Complex function on directed edges: `e` is ℓ→r, `N + e` is ℓ←r.
pub type EdgeFunction = Vec<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("{what} has dimension {size}, above the budget {limit}")]
    BudgetExceeded { what: String, size: usize, limit: usize },
    #[error("modular ranks disagree: rank {r1} mod {p1}, rank {r2} mod {p2}")]
    RankMismatch { p1: u64, r1: usize, p2: u64, r2: usize },
    #[error("exact excessiveness {exact} differs from numeric count {numeric}")]
    ExcessivenessMismatch { exact: usize, numeric: usize },
    #[error("top eigenvalue {got} differs from Perron value {expected}")]
    PfMismatch { expected: f64, got: f64 },
    #[error("eigenvalue {lambda} outside [0, {pf}]")]
    OutOfRange { lambda: f64, pf: f64 },
    #[error("multiplicities sum to {got}, expected {expected}")]
    CountMismatch { expected: usize, got: usize },
    #[error("vertex function is not an eigenfunction (residual {residual:e})")]
    NotEigenfunction { residual: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub big_k: usize,
    pub small_k: usize,
    pub n_left: usize,
    pub n_right: usize,
    /// undirected edge count N
    pub n_edges: usize,
    /// N − |V| + 1
    pub chi: i64,
    pub weighted: bool,
}

impl Shape {
    pub fn of(g: &Bigraph) -> Shape {
        Shape {
            big_k: g.big_k,
            small_k: g.small_k,
            n_left: g.n_left,
            n_right: g.n_right,
            n_edges: g.n_edges(),
            chi: g.n_edges() as i64 - g.n_vertices() as i64 + 1,
            weighted: g.is_weighted(),
        }
    }

    pub fn k_big(&self) -> f64 {
        self.big_k as f64
    }

    pub fn k_small(&self) -> f64 {
        self.small_k as f64
    }

    /// √((K+1)(k+1))
    pub fn pf(&self) -> f64 {
        (((self.big_k + 1) * (self.small_k + 1)) as f64).sqrt()
    }

    /// √(Kk)
    pub fn sqrt_kk(&self) -> f64 {
        ((self.big_k * self.small_k) as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub shape: Shape,
    pub pf: f64,
    /// eigenvalues of `A²|_L`, descending
    pub gram_eigenvalues: Vec<f64>,
    /// positive adjacency eigenvalues with multiplicity, descending; `lambdas[0]` is pf
    pub lambdas: Vec<f64>,
    pub kernel_tol: f64,
    pub e_numeric: usize,
    pub e_exact: Option<usize>,
    /// primes used for the exact count
    pub rank_primes: Vec<u64>,
    /// authoritative 𝓔_X: exact when computed, numeric otherwise
    pub excessiveness: usize,
    /// 𝓝_X = |R| − |L| + 𝓔_X
    pub n_x: usize,
    /// ϑ for each nontrivial λ (`lambdas[1..]`)
    pub theta: Vec<Complex64>,
    pub mu_pairs: Vec<(Complex64, Complex64)>,
    /// nontrivial λ with ϑ ∈ {0, π}
    pub degenerate: Vec<f64>,
    pub b_spectrum: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    pub budgets: Budgets,
    /// compute 𝓔_X by modular rank
    pub exact: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { budgets: Budgets::default(), exact: true }
    }
}

/// Dense row-major `CᵀHC`.
pub fn gram_matrix(g: &Bigraph) -> Vec<f64> {
    let n = g.n_left;
    let mut m = vec![0.0; n * n];
    for (r, row) in g.count_rows().iter().enumerate() {
        let h = g.stabilizer(r) as f64;
        for &(x, cx) in row {
            for &(y, cy) in row {
                m[x * n + y] += h * (cx * cy) as f64;
            }
        }
    }
    m
}

/// Dense row-major integer `CᵀC`; its rank over ℚ is rank(C) = |L| − 𝓔_X.
pub fn count_gram(g: &Bigraph) -> Vec<i64> {
    let n = g.n_left;
    let mut m = vec![0i64; n * n];
    for row in g.count_rows() {
        for &(x, cx) in &row {
            for &(y, cy) in &row {
                m[x * n + y] += (cx * cy) as i64;
            }
        }
    }
    m
}

/// 𝓔_X = |L| − rank(C), from ranks of CᵀC modulo the two smallest primes
/// above max(2N, 2^20). Returns the excessiveness and the primes used.
pub fn exact_excessiveness(g: &Bigraph) -> Result<(usize, Vec<u64>), SpectralError> {
    let n = g.n_left;
    let two_n = g.n_directed() as u64;
    let primes = linalg::primes_above(two_n.max(1 << 20), 2);
    if primes[1] >= MAX_RANK_PRIME {
        return Err(SpectralError::BudgetExceeded {
            what: "directed edge count for modular rank".into(),
            size: two_n as usize,
            limit: MAX_RANK_PRIME as usize,
        });
    }
    let m = count_gram(g);
    let (r1, r2) = rayon::join(
        || linalg::rank_mod_p(n, n, &m, primes[0]),
        || linalg::rank_mod_p(n, n, &m, primes[1]),
    );
    if r1 != r2 {
        return Err(SpectralError::RankMismatch { p1: primes[0], r1, p2: primes[1], r2 });
    }
    Ok((n - r1, primes))
}

/// Distance within which λ is identified with a degenerate value √K ± √k.
pub const DEGENERATE_TOL: f64 = 1e-9;

/// `Some(0)` or `Some(π)` when λ is within [`DEGENERATE_TOL`] of √K+√k or |√K−√k|.
pub fn degenerate_theta(lambda: f64, big_k: f64, small_k: f64) -> Option<f64> {
    let (a, b) = (big_k.sqrt(), small_k.sqrt());
    if (lambda - (a + b)).abs() <= DEGENERATE_TOL {
        Some(0.0)
    } else if (lambda - (a - b).abs()).abs() <= DEGENERATE_TOL {
        Some(PI)
    } else {
        None
    }
}

/// ϑ_λ with `cos ϑ = (λ²−K−k)/(2√Kk)`; values off `[0,π]` lie on the segments
/// `−i·ℝ₊` (for large λ) and `π + i·ℝ₊` (for small λ).
pub fn theta_of_lambda(lambda: f64, big_k: f64, small_k: f64) -> Result<Complex64, SpectralError> {
    let pf = ((big_k + 1.0) * (small_k + 1.0)).sqrt();
    if !(lambda >= -1e-9 * pf && lambda <= pf * (1.0 + 1e-9)) {
        return Err(SpectralError::OutOfRange { lambda, pf });
    }
    if let Some(t) = degenerate_theta(lambda, big_k, small_k) {
        return Ok(Complex64::new(t, 0.0));
    }
    let lambda = lambda.clamp(0.0, pf);
    let s = (big_k * small_k).sqrt();
    let x = (lambda * lambda - big_k - small_k) / (2.0 * s);
    Ok(if x.abs() <= 1.0 {
        Complex64::new(x.acos(), 0.0)
    } else if x > 1.0 {
        Complex64::new(0.0, -x.acosh())
    } else {
        Complex64::new(PI, (-x).acosh())
    })
}

/// Square root in the closed upper half plane, positive reals included.
fn upper_sqrt(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
        -r
    } else {
        r
    }
}

/// (μ⁺, μ⁻) with `(μ±)² = e^{±iϑ}√Kk`.
pub fn mu_of_lambda(
    lambda: f64,
    big_k: f64,
    small_k: f64,
) -> Result<(Complex64, Complex64), SpectralError> {
    let theta = theta_of_lambda(lambda, big_k, small_k)?;
    Ok(mu_of_theta(theta, big_k, small_k))
}

pub fn mu_of_theta(theta: Complex64, big_k: f64, small_k: f64) -> (Complex64, Complex64) {
    let s = (big_k * small_k).sqrt();
    let i = Complex64::i();
    (upper_sqrt((i * theta).exp() * s), upper_sqrt((-i * theta).exp() * s))
}

/// Gram spectrum, excessiveness, ϑ/μ parameters and the transferred B-spectrum.
pub fn spectrum_report(g: &Bigraph, opts: &SpectrumOptions) -> Result<SpectrumReport, SpectralError> {
    let n = g.n_left;
    if n > opts.budgets.gram {
        return Err(SpectralError::BudgetExceeded {
            what: "Gram matrix |L|".into(),
            size: n,
            limit: opts.budgets.gram,
        });
    }
    let shape = Shape::of(g);
    let (kb, ks) = (shape.k_big(), shape.k_small());
    let pf = shape.pf();
    let mut gram_eigenvalues = linalg::sym_eigenvalues(n, &gram_matrix(g))?;
    gram_eigenvalues.reverse();
    let kernel_tol = f64::EPSILON.sqrt() * kb * ks;
    let e_numeric = gram_eigenvalues.iter().filter(|&&v| v < kernel_tol).count();
    let (e_exact, rank_primes) = if opts.exact {
        let (e, ps) = exact_excessiveness(g)?;
        (Some(e), ps)
    } else {
        (None, Vec::new())
    };
    if let Some(exact) = e_exact {
        if exact != e_numeric {
            return Err(SpectralError::ExcessivenessMismatch { exact, numeric: e_numeric });
        }
    }
    let excessiveness = e_exact.unwrap_or(e_numeric);
    let lambdas: Vec<f64> =
        gram_eigenvalues[..n - excessiveness].iter().map(|&v| v.max(0.0).sqrt()).collect();
    if (lambdas[0] - pf).abs() > 1e-10 * pf {
        return Err(SpectralError::PfMismatch { expected: pf, got: lambdas[0] });
    }
    let mut report = report_from_lambdas(shape, lambdas, excessiveness)?;
    report.gram_eigenvalues = gram_eigenvalues;
    report.kernel_tol = kernel_tol;
    report.e_numeric = e_numeric;
    report.e_exact = e_exact;
    report.rank_primes = rank_primes;
    Ok(report)
}

/// Complete a report from the positive adjacency eigenvalues (pf first) and 𝓔_X.
/// The Gram data is synthesized as λ² followed by 𝓔 zeros.
pub fn report_from_lambdas(
    shape: Shape,
    lambdas: Vec<f64>,
    excessiveness: usize,
) -> Result<SpectrumReport, SpectralError> {
    let (kb, ks) = (shape.k_big(), shape.k_small());
    let n = shape.n_left;
    if lambdas.is_empty() || lambdas.len() + excessiveness != n {
        return Err(SpectralError::CountMismatch { expected: n, got: lambdas.len() + excessiveness });
    }
    let theta = lambdas[1..]
        .iter()
        .map(|&l| theta_of_lambda(l, kb, ks))
        .collect::<Result<Vec<_>, _>>()?;
    let mu_pairs = theta.iter().map(|&t| mu_of_theta(t, kb, ks)).collect();
    let degenerate = lambdas[1..]
        .iter()
        .copied()
        .filter(|&l| degenerate_theta(l, kb, ks).is_some())
        .collect();
    let n_x = (shape.n_right + excessiveness)
        .checked_sub(n)
        .ok_or(SpectralError::CountMismatch { expected: n, got: shape.n_right + excessiveness })?;
    let mut gram_eigenvalues: Vec<f64> = lambdas.iter().map(|l| l * l).collect();
    gram_eigenvalues.resize(n, 0.0);
    let mut report = SpectrumReport {
        shape,
        pf: shape.pf(),
        gram_eigenvalues,
        lambdas,
        kernel_tol: f64::EPSILON.sqrt() * kb * ks,
        e_numeric: excessiveness,
        e_exact: None,
        rank_primes: Vec::new(),
        excessiveness,
        n_x,
        theta,
        mu_pairs,
        degenerate,
        b_spectrum: Vec::new(),
    };
    report.b_spectrum = b_spectrum_from_a(&report)?;
    Ok(report)
}

/// Non-backtracking spectrum assembled from the adjacency data:
/// ±√Kk, ±μ± per nontrivial λ, 𝓔 pairs ±i√K, 𝓝 pairs ±i√k and χ pairs ±1.
pub fn b_spectrum_from_a(report: &SpectrumReport) -> Result<Vec<Complex64>, SpectralError> {
    let sh = &report.shape;
    let expected = 2 * sh.n_edges;
    let chi = usize::try_from(sh.chi)
        .map_err(|_| SpectralError::CountMismatch { expected, got: 0 })?;
    let mut out = Vec::with_capacity(expected);
    let mut pair = |z: Complex64, times: usize| {
        for _ in 0..times {
            out.push(z);
            out.push(-z);
        }
    };
    pair(Complex64::new(sh.sqrt_kk(), 0.0), 1);
    for &(mp, mm) in &report.mu_pairs {
        pair(mp, 1);
        pair(mm, 1);
    }
    pair(Complex64::new(0.0, sh.k_big().sqrt()), report.excessiveness);
    pair(Complex64::new(0.0, sh.k_small().sqrt()), report.n_x);
    pair(Complex64::new(1.0, 0.0), chi);
    if out.len() != expected {
        return Err(SpectralError::CountMismatch { expected, got: out.len() });
    }
    Ok(out)
}

/// Dense row-major non-backtracking matrix, `(Bf)(d) = Σ f(successor)`.
pub fn b_matrix(g: &Bigraph) -> Vec<f64> {
    let m = g.n_directed();
    let mut b = vec![0.0; m * m];
    for d in 0..m {
        for (s, mult) in g.nb_successors(d) {
            b[d * m + s] += mult as f64;
        }
    }
    b
}

/// Eigenvalues of B by a dense general eigensolve.
pub fn b_direct(g: &Bigraph, budgets: &Budgets) -> Result<Vec<Complex64>, SpectralError> {
    let m = g.n_directed();
    if m > budgets.direct_b {
        return Err(SpectralError::BudgetExceeded {
            what: "non-backtracking matrix 2N".into(),
            size: m,
            limit: budgets.direct_b,
        });
    }
    Ok(linalg::general_eigenvalues(m, &b_matrix(g))?)
}

/// Largest distance in a minimum-cost matching of two equal-size multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64, SpectralError> {
    if a.len() != b.len() {
        return Err(SpectralError::CountMismatch { expected: a.len(), got: b.len() });
    }
    let n = a.len();
    let cost: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| (x - y).norm())).collect();
    let assign = linalg::min_cost_assignment(n, &cost);
    Ok(assign.iter().enumerate().map(|(i, &j)| cost[i * n + j]).fold(0.0, f64::max))
}

/// Apply B to an edge function.
pub fn nb_apply(g: &Bigraph, f: &[Complex64]) -> EdgeFunction {
    (0..g.n_directed())
        .map(|d| g.nb_successors(d).iter().map(|&(s, m)| f[s] * m as f64).sum())
        .collect()
}

/// Apply the adjacency operator to a function on L ∪ R (left vertices first).
/// On orbigraphs a right vertex sees each member edge `stabilizer` times.
pub fn adjacency_apply(g: &Bigraph, f: &[f64]) -> Vec<f64> {
    let n = g.n_left;
    let mut out = vec![0.0; g.n_vertices()];
    for e in 0..g.n_edges() {
        let x = g.left_of(e);
        let r = g.edge_right[e] as usize;
        out[x] += f[n + r];
        out[n + r] += g.stabilizer(r) as f64 * f[x];
    }
    out
}

/// Extend a Gram eigenvector on L to an adjacency eigenfunction on L ∪ R with
/// eigenvalue `lambda`. For λ = 0 the right part vanishes.
pub fn extend_to_vertices(g: &Bigraph, f_left: &[f64], lambda: f64) -> Vec<f64> {
    let n = g.n_left;
    let mut f = f_left.to_vec();
    f.resize(g.n_vertices(), 0.0);
    if lambda > 0.0 {
        let af = adjacency_apply(g, &f);
        for r in 0..g.n_right {
            f[n + r] = af[n + r] / lambda;
        }
    }
    f
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖Bf − μf‖.
pub fn eig_residual(g: &Bigraph, f: &[Complex64], mu: Complex64) -> f64 {
    let bf = nb_apply(g, f);
    bf.iter().zip(f).map(|(b, x)| (b - mu * x).norm_sqr()).sum::<f64>().sqrt()
}

pub fn edge_norm(f: &[Complex64]) -> f64 {
    norm(f)
}

/// `f̃(ℓ→r) = −f(ℓ→r)`, `f̃(ℓ←r) = f(ℓ←r)`.
pub fn tilde(g: &Bigraph, f: &[Complex64]) -> EdgeFunction {
    let n = g.n_edges();
    f.iter().enumerate().map(|(d, &z)| if d < n { -z } else { z }).collect()
}

/// B-eigenfunctions built from an adjacency eigenfunction.
#[derive(Clone, Debug)]
pub struct FgVectors {
    pub mu_plus: Complex64,
    pub mu_minus: Complex64,
    pub f_plus: EdgeFunction,
    pub f_minus: EdgeFunction,
    pub g_plus: EdgeFunction,
    pub g_minus: EdgeFunction,
}

/// The F± and G± functions of an eigenfunction `f` of A on L ∪ R with eigenvalue
/// `lambda ∈ [0, pf]`. `BF± = μ±F±`, `BF̃± = −μ±F̃±`, and likewise for G.
pub fn build_f_g_vectors(g: &Bigraph, f: &[f64], lambda: f64) -> Result<FgVectors, SpectralError> {
    let af = adjacency_apply(g, f);
    let fnorm = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    let residual = af.iter().zip(f).map(|(a, x)| (a - lambda * x).powi(2)).sum::<f64>().sqrt();
    let pf = Shape::of(g).pf();
    if residual > 1e-10 * pf * fnorm.max(f64::MIN_POSITIVE) {
        return Err(SpectralError::NotEigenfunction { residual });
    }
    let (kb, ks) = (g.big_k as f64, g.small_k as f64);
    let (mu_plus, mu_minus) = mu_of_lambda(lambda, kb, ks)?;
    let n = g.n_edges();
    let nl = g.n_left;
    let lam = Complex64::new(lambda, 0.0);
    let build = |mu: Complex64, is_f: bool| -> EdgeFunction {
        (0..2 * n)
            .map(|d| {
                let e = d % n;
                let fl = f[g.left_of(e)];
                let fr = f[nl + g.edge_right[e] as usize];
                match (is_f, d < n) {
                    (true, true) => lam * fl - (mu * mu + kb) * fr,
                    (true, false) => -mu * lam * fl + (mu + kb / mu) * fr,
                    (false, true) => (mu + ks / mu) * fl - mu * lam * fr,
                    (false, false) => -(mu * mu + ks) * fl + lam * fr,
                }
            })
            .collect()
    };
    Ok(FgVectors {
        mu_plus,
        mu_minus,
        f_plus: build(mu_plus, true),
        f_minus: build(mu_minus, true),
        g_plus: build(mu_plus, false),
        g_minus: build(mu_minus, false),
    })
}

/// The four functions f_ℓo, f_ri, f_ℓi, f_ro spanning W_f.
pub fn w_basis(g: &Bigraph, f: &[f64]) -> [EdgeFunction; 4] {
    let n = g.n_edges();
    let nl = g.n_left;
    let mk = |left: bool, out: bool| -> EdgeFunction {
        (0..2 * n)
            .map(|d| {
                let e = d % n;
                if (d < n) != out {
                    return Complex64::new(0.0, 0.0);
                }
                let v = if left { f[g.left_of(e)] } else { f[nl + g.edge_right[e] as usize] };
                Complex64::new(v, 0.0)
            })
            .collect()
    };
    [mk(true, true), mk(false, true), mk(true, false), mk(false, false)]
}

/// Simple cycles from a BFS spanning tree, one per non-tree edge (at most `limit`).
/// Each cycle is an edge sequence `ℓ₁r₁, r₁ℓ₂, ℓ₂r₂, …` starting at a left vertex.
pub fn fundamental_cycles(g: &Bigraph, limit: usize) -> Vec<Vec<usize>> {
    let nl = g.n_left;
    let nv = g.n_vertices();
    // vertex ids: left x ↦ x, right r ↦ nl + r
    let mut parent_edge = vec![usize::MAX; nv];
    let mut parent = vec![usize::MAX; nv];
    let mut depth = vec![usize::MAX; nv];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let nbrs: Vec<(usize, usize)> = if v < nl {
            g.edges_at_left(v).map(|e| (e, nl + g.edge_right[e] as usize)).collect()
        } else {
            g.right_members[v - nl].iter().map(|&e| (e as usize, g.left_of(e as usize))).collect()
        };
        for (e, w) in nbrs {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }
    let mut cycles = Vec::new();
    for e in 0..g.n_edges() {
        if cycles.len() >= limit {
            break;
        }
        let l = g.left_of(e);
        let r = nl + g.edge_right[e] as usize;
        if parent_edge[r] == e || parent_edge[l] == e {
            continue;
        }
        let (mut a, mut b) = (l, r);
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        while depth[a] > depth[b] {
            up_a.push(parent_edge[a]);
            a = parent[a];
        }
        while depth[b] > depth[a] {
            up_b.push(parent_edge[b]);
            b = parent[b];
        }
        while a != b {
            up_a.push(parent_edge[a]);
            a = parent[a];
            up_b.push(parent_edge[b]);
            b = parent[b];
        }
        up_b.reverse();
        let mut cyc = up_a;
        cyc.extend(up_b);
        cyc.push(e);
        cycles.push(cyc);
    }
    cycles
}

/// The cycle functions (p_γ, n_γ) of an edge cycle from [`fundamental_cycles`].
pub fn cycle_vectors(g: &Bigraph, cycle: &[usize]) -> (EdgeFunction, EdgeFunction) {
    let n = g.n_edges();
    let zero = Complex64::new(0.0, 0.0);
    let mut p = vec![zero; 2 * n];
    let mut q = vec![zero; 2 * n];
    for pair in cycle.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        p[a] += 1.0;
        p[n + b] += 1.0;
        p[n + a] -= 1.0;
        p[b] -= 1.0;
        q[a] += 1.0;
        q[n + a] += 1.0;
        q[n + b] -= 1.0;
        q[b] -= 1.0;
    }
    (p, q)
}

/// Hermitian inner product ⟨f, g⟩ = Σ f·conj(g).
pub fn inner(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    f.iter().zip(g).map(|(a, b)| a * b.conj()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCounts {
    pub pf: usize,
    /// nontrivial λ with ϑ ∈ [0, π]
    pub type_2a: usize,
    /// nontrivial λ with ϑ off the real segment
    pub type_2b: usize,
    pub e_blocks: usize,
    pub n_blocks: usize,
    pub chi: usize,
}

impl BlockCounts {
    pub fn dimension(&self) -> usize {
        2 * self.pf + 4 * (self.type_2a + self.type_2b) + 2 * self.e_blocks + 2 * self.n_blocks
            + 2 * self.chi
    }
}

pub fn block_structure_counts(report: &SpectrumReport) -> Result<BlockCounts, SpectralError> {
    let expected = 2 * report.shape.n_edges;
    let type_2a = report.theta.iter().filter(|t| t.im.abs() <= 1e-9).count();
    let counts = BlockCounts {
        pf: 1,
        type_2a,
        type_2b: report.theta.len() - type_2a,
        e_blocks: report.excessiveness,
        n_blocks: report.n_x,
        chi: usize::try_from(report.shape.chi)
            .map_err(|_| SpectralError::CountMismatch { expected, got: 0 })?,
    };
    let got = counts.dimension();
    if got != expected || counts.type_2a + counts.type_2b + 1 + counts.e_blocks != report.shape.n_left {
        return Err(SpectralError::CountMismatch { expected, got });
    }
    Ok(counts)
}

/// Laplace spectrum of D − A, ascending. The trivial eigenvalue pair is {0, K+k+2}.
pub fn laplace_spectrum(report: &SpectrumReport) -> Vec<f64> {
    let sh = &report.shape;
    let (kb, ks) = (sh.k_big(), sh.k_small());
    let mut out = vec![0.0, kb + ks + 2.0];
    for &l in &report.lambdas[1..] {
        let d = ((kb - ks).powi(2) + 4.0 * l * l).sqrt();
        out.push((kb + ks + 2.0 - d) / 2.0);
        out.push((kb + ks + 2.0 + d) / 2.0);
    }
    out.extend(std::iter::repeat_n(ks + 1.0, report.n_x));
    out.extend(std::iter::repeat_n(kb + 1.0, report.excessiveness));
    out.sort_by(f64::total_cmp);
    out
}

/// Coefficients of ∏(1 − zu) over the given roots, lowest degree first.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in roots {
        c.push(Complex64::new(0.0, 0.0));
        for i in (1..c.len()).rev() {
            let prev = c[i - 1];
            c[i] -= z * prev;
        }
    }
    c
}

/// det(I − uB) in product form:
/// (1−u²)^χ (1−Kku²) (1+Ku²)^𝓔 (1+ku²)^𝓝 ∏ⱼ (1−(μⱼ⁺)²u²)(1−(μⱼ⁻)²u²).
pub fn ihara_product_form(report: &SpectrumReport) -> Vec<Complex64> {
    let sh = &report.shape;
    // polynomial in v = u², then spread to u
    let mut sq: Vec<Complex64> = Vec::new();
    let push = |sq: &mut Vec<Complex64>, a: Complex64, times: usize| {
        for _ in 0..times {
            sq.push(a);
        }
    };
    let one = Complex64::new(1.0, 0.0);
    push(&mut sq, one, sh.chi.max(0) as usize);
    push(&mut sq, Complex64::new(sh.k_big() * sh.k_small(), 0.0), 1);
    push(&mut sq, Complex64::new(-sh.k_big(), 0.0), report.excessiveness);
    push(&mut sq, Complex64::new(-sh.k_small(), 0.0), report.n_x);
    for &(a, b) in &report.mu_pairs {
        sq.push(a * a);
        sq.push(b * b);
    }
    let in_v = poly_from_roots(&sq);
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * in_v.len() - 1];
    for (i, c) in in_v.into_iter().enumerate() {
        out[2 * i] = c;
    }
    out
}

/// Largest coefficientwise relative difference `|a−b| / max(1, |a|, |b|)`.
pub fn coefficient_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    let len = a.len().max(b.len());
    let zero = Complex64::new(0.0, 0.0);
    (0..len)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&zero);
            let y = *b.get(i).unwrap_or(&zero);
            (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
        })
        .fold(0.0, f64::max)
}

/// Dense eigendecomposition of the Gram matrix with eigenvectors, descending.
pub fn gram_eigenpairs(g: &Bigraph) -> Result<Vec<(f64, Vec<f64>)>, SpectralError> {
    let n = g.n_left;
    let (vals, vecs) = linalg::sym_eigen(n, &gram_matrix(g))?;
    let mut pairs: Vec<(f64, Vec<f64>)> = vals.into_iter().zip(vecs).collect();
    pairs.reverse();
    Ok(pairs)
}

/// Full adjacency spectrum ±λ and zeros, descending (length |V|).
pub fn full_adjacency_spectrum(report: &SpectrumReport) -> Vec<f64> {
    let total = report.shape.n_left + report.shape.n_right;
    let mut out: Vec<f64> = report.lambdas.iter().flat_map(|&l| [l, -l]).collect();
    out.resize(total, 0.0);
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Dense L∪R adjacency matrix of an unweighted bigraph.
pub fn dense_adjacency(g: &Bigraph) -> Vec<f64> {
    let nv = g.n_vertices();
    let nl = g.n_left;
    let mut a = vec![0.0; nv * nv];
    for e in 0..g.n_edges() {
        let x = g.left_of(e);
        let r = nl + g.edge_right[e] as usize;
        a[x * nv + r] += 1.0;
        a[r * nv + x] += 1.0;
    }
    a
}

/// Check μ⁺μ⁻ and (μ⁺)²+(μ⁻)² against the root relations for every nontrivial λ.
pub fn root_relation_gap(report: &SpectrumReport) -> f64 {
    let sh = &report.shape;
    let kk = sh.k_big() * sh.k_small();
    report.lambdas[1..]
        .par_iter()
        .zip(&report.mu_pairs)
        .map(|(&l, &(a, b))| {
            let prod = ((a * b).powi(2) - kk).norm() / kk;
            let sum = (a * a + b * b - (l * l - sh.k_big() - sh.k_small())).norm() / kk.sqrt();
            prod.max(sum)
        })
        .reduce(|| 0.0, f64::max)
}
