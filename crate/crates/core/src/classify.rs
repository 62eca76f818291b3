//! Ramanujan taxonomy, biexpander constants, Satake-type labels and the
//! density exponent of the excessiveness.

use crate::spectral::{degenerate_theta, SpectrumReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("Satake labels need K = k³ with k prime, got K={big_k}, k={small_k}")]
    NotUnitaryShape { big_k: usize, small_k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    Weakly,
    Adj,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Offending {
    pub lambda: f64,
    pub level: Level,
    /// distance past the allowed region (positive)
    pub margin: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeHistogram {
    pub trivial: usize,
    pub steinberg: usize,
    pub principal: usize,
    pub complementary: usize,
    pub a_type: usize,
    pub b_type: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityCheck {
    /// ln 𝓔_X / ln |L|; `None` stands for −∞ (𝓔_X = 0)
    pub exponent: Option<f64>,
    /// ln 𝓔_X / ln |V|
    pub exponent_vertices: Option<f64>,
    pub bound: f64,
    pub bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamanujanVerdict {
    pub weakly: bool,
    pub adj: bool,
    pub fully: bool,
    pub offending: Vec<Offending>,
    /// nontrivial λ within 10·tol of an interval boundary
    pub borderline: Vec<f64>,
    pub biexpander_eps: Option<f64>,
    pub satake_histogram: Option<SatakeHistogram>,
    pub satake_error: Option<String>,
    pub density: DensityCheck,
    pub tol: f64,
}

/// Default interval tolerance 1e−8·√Kk.
pub fn default_tol(report: &SpectrumReport) -> f64 {
    1e-8 * report.shape.sqrt_kk()
}

pub fn classify(report: &SpectrumReport, tol: f64) -> RamanujanVerdict {
    let sh = &report.shape;
    let (kb, ks) = (sh.k_big(), sh.k_small());
    let s = sh.sqrt_kk();
    let rho = kb.sqrt() + ks.sqrt();
    let mut offending = Vec::new();
    let mut borderline = Vec::new();
    for &l in &report.lambdas[1..] {
        if l > rho + tol {
            offending.push(Offending { lambda: l, level: Level::Weakly, margin: l - rho });
        }
        let dev = (l * l - kb - ks).abs() - 2.0 * s;
        if dev > tol {
            offending.push(Offending { lambda: l, level: Level::Adj, margin: dev });
        }
        if dev.abs() <= 10.0 * tol || (l - rho).abs() <= 10.0 * tol {
            borderline.push(l);
        }
    }
    let weakly = offending.iter().all(|o| o.level != Level::Weakly);
    let adj = weakly && offending.is_empty();
    let fully = adj && report.excessiveness == 0;
    let (satake_histogram, satake_error) = match satake_histogram(report) {
        Ok(h) => (Some(h), None),
        Err(e) => (None, Some(e.to_string())),
    };
    RamanujanVerdict {
        weakly,
        adj,
        fully,
        offending,
        borderline,
        biexpander_eps: biexpander_eps(report),
        satake_histogram,
        satake_error,
        density: density_check(report),
        tol,
    }
}

/// Smallest ε with every nontrivial nonzero λ in [√K−ε, √K+ε]; undefined when
/// 𝓔_X > 0 or when that ε is not below √K.
pub fn biexpander_eps(report: &SpectrumReport) -> Option<f64> {
    if report.excessiveness > 0 {
        return None;
    }
    let a = report.shape.k_big().sqrt();
    let eps = report.lambdas[1..].iter().map(|&l| (l - a).abs()).fold(0.0, f64::max);
    (eps < a).then_some(eps)
}

/// Labels of the adjacency data by unitary representation type.
pub fn satake_histogram(report: &SpectrumReport) -> Result<SatakeHistogram, ClassifyError> {
    let sh = &report.shape;
    let (big_k, small_k) = (sh.big_k, sh.small_k);
    if !crate::rings::is_prime(small_k as u64) || small_k.pow(3) != big_k {
        return Err(ClassifyError::NotUnitaryShape { big_k, small_k });
    }
    let (kb, ks) = (sh.k_big(), sh.k_small());
    let principal = report
        .lambdas[1..]
        .iter()
        .zip(&report.theta)
        .filter(|(&l, t)| t.im.abs() <= 1e-12 || degenerate_theta(l, kb, ks).is_some())
        .count();
    Ok(SatakeHistogram {
        trivial: 1,
        steinberg: sh.chi.max(0) as usize,
        principal,
        complementary: report.theta.len() - principal,
        a_type: report.excessiveness,
        b_type: report.n_x,
    })
}

/// Density exponent ln 𝓔_X / ln |L| against 3/8 (no slack).
pub fn density_check(report: &SpectrumReport) -> DensityCheck {
    let e = report.excessiveness;
    let bound = 3.0 / 8.0;
    if e == 0 {
        return DensityCheck { exponent: None, exponent_vertices: None, bound, bound_ok: true };
    }
    let sh = &report.shape;
    let ln_e = (e as f64).ln();
    let exponent = ln_e / (sh.n_left as f64).ln();
    DensityCheck {
        exponent: Some(exponent),
        exponent_vertices: Some(ln_e / ((sh.n_left + sh.n_right) as f64).ln()),
        bound,
        bound_ok: exponent <= bound,
    }
}

/// Riemann-hypothesis form: every B-eigenvalue other than ±√Kk has modulus at
/// most (Kk)^{1/4} + tol.
pub fn riemann_hypothesis(report: &SpectrumReport, tol: f64) -> bool {
    let s = report.shape.sqrt_kk();
    let mut skipped = 0;
    report.b_spectrum.iter().all(|z| {
        if skipped < 2 && (z.im.abs() <= 1e-9 * s) && ((z.re.abs() - s).abs() <= 1e-9 * s) {
            skipped += 1;
            return true;
        }
        z.norm() <= s.sqrt() + tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{report_from_lambdas, Shape};

    fn shape(n_left: usize, big_k: usize, small_k: usize) -> Shape {
        let n_edges = n_left * (big_k + 1);
        let n_right = n_edges / (small_k + 1);
        Shape {
            big_k,
            small_k,
            n_left,
            n_right,
            n_edges,
            chi: n_edges as i64 - (n_left + n_right) as i64 + 1,
            weighted: false,
        }
    }

    #[test]
    fn tempered_spectrum_is_fully() {
        let sh = shape(4, 8, 2);
        let l = vec![sh.pf(), 8f64.sqrt(), 2.5, 3.0];
        let r = report_from_lambdas(sh, l, 0).unwrap();
        let v = classify(&r, default_tol(&r));
        assert!(v.weakly && v.adj && v.fully);
        assert!(riemann_hypothesis(&r, 1e-9));
        assert!(v.biexpander_eps.unwrap() <= 2f64.sqrt());
    }

    #[test]
    fn kernel_breaks_fully_only() {
        let sh = shape(4, 8, 2);
        let r = report_from_lambdas(sh, vec![sh.pf(), 3.0, 2.5], 1).unwrap();
        let v = classify(&r, default_tol(&r));
        assert!(v.adj && !v.fully);
        assert!(v.biexpander_eps.is_none());
        assert!(!riemann_hypothesis(&r, 1e-9));
    }

    #[test]
    fn outlier_breaks_adj() {
        let sh = shape(4, 8, 2);
        // √8+√2 ≈ 4.243 is the tree bound
        let r = report_from_lambdas(sh, vec![sh.pf(), 4.0, 0.5, 3.0], 0).unwrap();
        let v = classify(&r, default_tol(&r));
        assert!(v.weakly && !v.adj);
        assert_eq!(v.offending.len(), 1);
        assert!((v.offending[0].lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn satake_needs_unitary_shape() {
        let sh = shape(15, 6, 2);
        let r = report_from_lambdas(sh, vec![sh.pf(); 1].into_iter().chain([6f64.sqrt(); 14]).collect(), 0)
            .unwrap();
        assert!(satake_histogram(&r).is_err());
        assert_eq!(biexpander_eps(&r), Some(0.0));
    }
}
