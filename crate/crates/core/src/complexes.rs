//! Colored Hecke operator A₁ on split-prime Cayley complexes and distances of
//! its eigenvalues to the tempered region and the endoscopic curve.

use crate::groups::{close_group, reduce_generators, GroupError};
use crate::lattice::{generator_system, LatticeError, LatticeKind, LatticeSpec, Mode};
use crate::linalg::{self, LinalgError};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("group order {size} exceeds the dense budget {limit}")]
    BudgetExceeded { size: usize, limit: usize },
}

/// Torus grid side for the coarse tempered search.
const TORUS_COARSE: usize = 512;
/// Each refinement divides the step by this factor.
const REFINE_FACTOR: usize = 8;
/// Effective torus resolution after two refinements: 512·8·8 ≥ 4096.
pub const TORUS_EFFECTIVE: usize = TORUS_COARSE * REFINE_FACTOR * REFINE_FACTOR;
pub const CIRCLE_POINTS: usize = 65536;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPoint {
    pub value: Complex64,
    pub d_tempered: f64,
    pub d_endoscopic: f64,
    pub d_trivial: f64,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpectrum {
    pub p: u32,
    pub q: u32,
    pub group_order: usize,
    /// distinct reduced color-1 generators equal p²+p+1
    pub injective_color1: bool,
    pub points: Vec<EigenPoint>,
    pub normality_residual: f64,
    /// tr A₁ computed from the matrix diagonal
    pub trace: f64,
    /// tr A₁ = |G|·#{color-1 generators reducing to 1}
    pub trace_combinatorial: f64,
    pub tempered_resolution: f64,
    pub endoscopic_resolution: f64,
}

impl ComplexSpectrum {
    /// Every eigenvalue lies near T_p ∪ 𝔈_p ∪ trivial within resolution + 1e−6·p^{3/2}.
    pub fn all_contained(&self) -> bool {
        let slack = 1e-6 * (self.p as f64).powf(1.5);
        self.points.iter().all(|e| {
            e.d_tempered <= self.tempered_resolution + slack
                || e.d_endoscopic <= self.endoscopic_resolution + slack
                || e.d_trivial <= slack
        })
    }

    pub fn perron_present(&self) -> bool {
        let pr = perron(self.p);
        self.points.iter().any(|e| (e.value - Complex64::new(pr, 0.0)).norm() <= 1e-9 * pr)
    }
}

fn perron(p: u32) -> f64 {
    let p = p as f64;
    p * p + p + 1.0
}

fn tempered_point(p: f64, a: f64, b: f64) -> Complex64 {
    let (x, y) = (Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b));
    (x + y + (x * y).conj()) * p
}

fn endoscopic_point(p: f64, t: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, t);
    z * p.powf(1.5) + p / (z * z) + z * p.sqrt()
}

/// Upper bound on the distance from `z` to T_p, with its resolution 2p·h for the
/// final torus step h. Branch and bound: a cell survives a level when its value is
/// within 2p·step of the level minimum. The cell nearest a true minimiser is within
/// step/2 in each angle and |∂/∂α|, |∂/∂β| ≤ 2p, so it always survives.
pub fn distance_tempered(z: Complex64, p: u32) -> (f64, f64) {
    let pf = p as f64;
    let unit_per_coarse = (REFINE_FACTOR * REFINE_FACTOR) as i64;
    let n = TORUS_COARSE as i64 * unit_per_coarse;
    let unit = TAU / n as f64;
    let eval = |i: i64, j: i64| (tempered_point(pf, i as f64 * unit, j as f64 * unit) - z).norm();
    let mut step = unit_per_coarse;
    let mut level: Vec<(f64, i64, i64)> = (0..TORUS_COARSE as i64)
        .flat_map(|i| (0..TORUS_COARSE as i64).map(move |j| (i * step, j * step)))
        .map(|(i, j)| (eval(i, j), i, j))
        .collect();
    let mut best = level.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    loop {
        let cut = best + 2.0 * pf * step as f64 * unit;
        level.retain(|c| c.0 <= cut);
        if step == 1 {
            break;
        }
        step /= REFINE_FACTOR as i64;
        let r = REFINE_FACTOR as i64 / 2;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &(_, ci, cj) in &level {
            for di in -r..=r {
                for dj in -r..=r {
                    let (i, j) = ((ci + di * step).rem_euclid(n), (cj + dj * step).rem_euclid(n));
                    if seen.insert((i, j)) {
                        let d = eval(i, j);
                        best = best.min(d);
                        next.push((d, i, j));
                    }
                }
            }
        }
        level = next;
    }
    (best, 2.0 * pf * unit)
}

/// Upper bound on the distance from `z` to 𝔈_p with its resolution, by the same
/// branch and bound over the circle.
pub fn distance_endoscopic(z: Complex64, p: u32) -> (f64, f64) {
    let pf = p as f64;
    // |d/dt| ≤ p^{3/2} + 2p + √p
    let lip = pf.powf(1.5) + 2.0 * pf + pf.sqrt();
    let unit_per_coarse = (REFINE_FACTOR * REFINE_FACTOR) as i64;
    let n = CIRCLE_POINTS as i64 * unit_per_coarse;
    let unit = TAU / n as f64;
    let eval = |i: i64| (endoscopic_point(pf, i as f64 * unit) - z).norm();
    let mut step = unit_per_coarse;
    let mut level: Vec<(f64, i64)> = (0..CIRCLE_POINTS as i64).map(|i| (eval(i * step), i * step)).collect();
    let mut best = level.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    loop {
        let cut = best + lip * step as f64 * unit;
        level.retain(|c| c.0 <= cut);
        if step == 1 {
            break;
        }
        step /= REFINE_FACTOR as i64;
        let r = REFINE_FACTOR as i64 / 2;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &(_, ci) in &level {
            for di in -r..=r {
                let i = (ci + di * step).rem_euclid(n);
                if seen.insert(i) {
                    let d = eval(i);
                    best = best.min(d);
                    next.push((d, i));
                }
            }
        }
        level = next;
    }
    (best, lip * unit)
}

/// (d_tempered, d_endoscopic).
pub fn region_distance(z: Complex64, p: u32) -> (f64, f64) {
    (distance_tempered(z, p).0, distance_endoscopic(z, p).0)
}

/// Distance to the trivial set {(p²+p+1)·ω^j}.
pub fn distance_trivial(z: Complex64, p: u32) -> f64 {
    let pr = perron(p);
    (0..3)
        .map(|j| (z - Complex64::from_polar(pr, TAU * j as f64 / 3.0)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Sampled boundary of T_p (α = β) and the curve 𝔈_p, for plotting.
pub fn reference_polylines(p: u32, samples: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let pf = p as f64;
    let ts = (0..=samples).map(|i| TAU * i as f64 / samples as f64);
    let deltoid = ts.clone().map(|t| tempered_point(pf, t, t)).collect();
    let curve = ts.map(|t| endoscopic_point(pf, t)).collect();
    (deltoid, curve)
}

/// A₁ on the Cayley complex of the Eisenstein split prime `p` reduced mod `q`:
/// the sum over color-1 generators of right multiplication.
pub fn hecke_a1(p: u32, q: u32, budget: usize, closure_cap: usize) -> Result<ComplexSpectrum, ComplexError> {
    let spec = LatticeSpec::new(LatticeKind::Eisenstein);
    let gens = generator_system(LatticeKind::Eisenstein, p, Mode::SplitComplex)?;
    let rg = reduce_generators(&spec, &gens, q)?;
    let cl = close_group(&rg, closure_cap)?;
    let n = cl.order();
    if n > budget {
        return Err(ComplexError::BudgetExceeded { size: n, limit: budget });
    }
    let color1 = gens.color_class(1);
    let distinct: BTreeSet<u128> = color1.iter().map(|&s| rg.group.key(&rg.gen_images[s])).collect();
    let injective_color1 = distinct.len() as f64 == perron(p) && color1.len() as f64 == perron(p);
    let mut a = vec![0.0; n * n];
    for v in 0..n {
        for &s in &color1 {
            a[v * n + cl.right_mul(v, s)] += 1.0;
        }
    }
    let mut normality: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            // (AAᵀ − AᵀA)[i][j]
            let mut s = 0.0f64;
            for k in 0..n {
                s += a[i * n + k] * a[j * n + k] - a[k * n + i] * a[k * n + j];
            }
            normality = normality.max(s.abs());
        }
    }
    let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
    let id_key = rg.group.key(&rg.group.identity());
    let fixing = color1.iter().filter(|&&s| rg.group.key(&rg.gen_images[s]) == id_key).count();
    let eig = linalg::general_eigenvalues(n, &a)?;
    let pr = perron(p);
    let (_, tempered_resolution) = distance_tempered(Complex64::new(0.0, 0.0), p);
    let (_, endoscopic_resolution) = distance_endoscopic(Complex64::new(0.0, 0.0), p);
    let points = eig
        .par_iter()
        .map(|&value| {
            let (d_tempered, _) = distance_tempered(value, p);
            let (d_endoscopic, _) = distance_endoscopic(value, p);
            EigenPoint {
                value,
                d_tempered,
                d_endoscopic,
                d_trivial: distance_trivial(value, p),
                trivial: (value.norm() - pr).abs() <= 1e-9 * pr,
            }
        })
        .collect();
    Ok(ComplexSpectrum {
        p,
        q,
        group_order: n,
        injective_color1,
        points,
        normality_residual: normality,
        trace,
        trace_combinatorial: (n * fixing) as f64,
        tempered_resolution,
        endoscopic_resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_point_distance_zero() {
        let (d, res) = distance_tempered(Complex64::new(21.0, 0.0), 7);
        assert!(d <= res);
    }

    #[test]
    fn curve_point_distance_zero() {
        let p = 7f64;
        let z = Complex64::new(p.powf(1.5) + p + p.sqrt(), 0.0);
        let (d, res) = distance_endoscopic(z, 7);
        assert!(d <= res && d < 1e-9);
    }

    #[test]
    fn trivial_set_has_three_points() {
        let w = Complex64::from_polar(57.0, TAU / 3.0);
        assert!(distance_trivial(w, 7) < 1e-12);
    }
}
