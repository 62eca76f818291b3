//! Generator sets S_p of the Eisenstein, Gauss and Mumford lattices.
//!
//! Generators are stored scaled, t = p·s, so all arithmetic stays integral.

use crate::rings::{QuadInt, RingError, RingKind, RingSpec};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;
use thiserror::Error;

pub type QMat = [[QuadInt; 3]; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("prime {p} is not admissible for the {kind:?} lattice in {mode:?} mode")]
    InvalidPrime { p: u32, kind: LatticeKind, mode: Mode },
    #[error("partition has {classes} classes with sizes {sizes:?}; expected {expected_classes} of size {expected_size}")]
    PartitionShapeError {
        classes: usize,
        sizes: Vec<usize>,
        expected_classes: usize,
        expected_size: usize,
    },
    #[error("generator {0} has no inverse in the generator set")]
    MissingInverse(usize),
    #[error("generator {0} has determinant valuation divisible by 3")]
    DegenerateColor(usize),
    #[error("expected {expected} generators, enumeration found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeKind {
    Eisenstein,
    Gauss,
    Mumford,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    InertBigraph,
    SplitComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub ring: RingSpec,
    pub phi: QMat,
    pub excluded_primes: Vec<u32>,
}

pub fn identity() -> QMat {
    scalar(QuadInt::ONE)
}

pub fn scalar(x: QuadInt) -> QMat {
    let mut m = [[QuadInt::ZERO; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = x;
    }
    m
}

pub fn mat_mul(r: &RingSpec, x: &QMat, y: &QMat) -> QMat {
    let mut out = [[QuadInt::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = QuadInt::ZERO;
            for l in 0..3 {
                acc = acc.add(r.mul(x[i][l], y[l][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Conjugate transpose.
pub fn star(r: &RingSpec, x: &QMat) -> QMat {
    let mut out = [[QuadInt::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = r.conj(x[j][i]);
        }
    }
    out
}

pub fn det(r: &RingSpec, m: &QMat) -> QuadInt {
    let minor = |i0: usize, i1: usize, j0: usize, j1: usize| {
        r.mul(m[i0][j0], m[i1][j1]).sub(r.mul(m[i0][j1], m[i1][j0]))
    };
    r.mul(m[0][0], minor(1, 2, 1, 2))
        .sub(r.mul(m[0][1], minor(1, 2, 0, 2)))
        .add(r.mul(m[0][2], minor(1, 2, 0, 1)))
}

pub fn adjugate(r: &RingSpec, m: &QMat) -> QMat {
    let mut out = [[QuadInt::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let c = r
                .mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]])
                .sub(r.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]));
            out[i][j] = if (i + j) % 2 == 0 { c } else { c.neg() };
        }
    }
    out
}

pub fn mat_scale(r: &RingSpec, m: &QMat, c: QuadInt) -> QMat {
    m.map(|row| row.map(|x| r.mul(x, c)))
}

pub fn is_scalar(m: &QMat) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { m[i][j] == m[0][0] } else { m[i][j].is_zero() }))
}

/// True iff every entry has both coordinates divisible by p.
pub fn p_divides_matrix(m: &QMat, p: i64) -> bool {
    m.iter().flatten().all(|x| x.divisible_by_int(p))
}

fn flat(m: &QMat) -> [i64; 18] {
    let mut out = [0i64; 18];
    for (i, x) in m.iter().flatten().enumerate() {
        out[2 * i] = x.a;
        out[2 * i + 1] = x.b;
    }
    out
}

/// ℓ(T/p^m) = −2·min ord_p of the entries, for inert p.
pub fn level(t: &QMat, p: i64, m: i64) -> i64 {
    let ord = |x: QuadInt| {
        let mut v = 0i64;
        let mut y = x;
        while y.divisible_by_int(p) {
            y = y.div_int(p).unwrap();
            v += 1;
        }
        v
    };
    let min = t
        .iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|&x| ord(x) - m)
        .min()
        .expect("zero matrix has no level");
    -2 * min
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind) -> LatticeSpec {
        match kind {
            LatticeKind::Eisenstein => LatticeSpec {
                kind,
                ring: RingSpec::EISENSTEIN,
                phi: identity(),
                excluded_primes: vec![3],
            },
            LatticeKind::Gauss => LatticeSpec {
                kind,
                ring: RingSpec::GAUSS,
                phi: identity(),
                excluded_primes: vec![2],
            },
            LatticeKind::Mumford => {
                let r = RingSpec::MUMFORD;
                let l = QuadInt::TAU;
                let lb = r.conj(l);
                let three = QuadInt::int(3);
                LatticeSpec {
                    kind,
                    ring: r,
                    phi: [[three, lb, lb], [l, three, lb], [l, l, three]],
                    excluded_primes: vec![2, 7],
                }
            }
        }
    }

    pub fn ring_kind(&self) -> RingKind {
        self.ring.kind
    }

    pub fn is_inert(&self, p: u32) -> bool {
        crate::rings::is_prime(p as u64)
            && self.ring.discriminant().rem_euclid(p as i64) != 0
            && self.ring.roots_mod(p).is_empty()
    }

    pub fn is_split(&self, p: u32) -> bool {
        crate::rings::is_prime(p as u64) && self.ring.roots_mod(p).len() == 2
    }

    pub fn admit(&self, p: u32, mode: Mode) -> Result<(), LatticeError> {
        let ok = !self.excluded_primes.contains(&p)
            && match mode {
                Mode::InertBigraph => self.is_inert(p),
                Mode::SplitComplex => self.is_split(p) && self.kind == LatticeKind::Eisenstein,
            };
        if ok {
            Ok(())
        } else {
            Err(LatticeError::InvalidPrime { p, kind: self.kind, mode })
        }
    }

    pub fn congruence(&self, t: &QMat) -> bool {
        let r = &self.ring;
        match self.kind {
            LatticeKind::Eisenstein => {
                (0..3).all(|i| (t[i][i].a - 1).rem_euclid(3) == 0 && t[i][i].b.rem_euclid(3) == 0)
            }
            LatticeKind::Gauss => {
                let m = QuadInt::new(2, 2);
                (0..3).all(|i| r.div_exact(t[i][i].sub(QuadInt::ONE), m).is_some())
            }
            LatticeKind::Mumford => {
                (0..3).all(|i| (0..i).all(|j| t[i][j].a.rem_euclid(2) == 0))
            }
        }
    }

    /// Hermitian form v*Φw.
    pub fn herm(&self, v: &[QuadInt; 3], w: &[QuadInt; 3]) -> QuadInt {
        let r = &self.ring;
        let mut acc = QuadInt::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.add(r.mul(r.conj(v[i]), r.mul(self.phi[i][j], w[j])));
            }
        }
        acc
    }

    /// t*Φt = cΦ.
    pub fn is_similitude(&self, t: &QMat, c: i64) -> bool {
        let r = &self.ring;
        let lhs = mat_mul(r, &star(r, t), &mat_mul(r, &self.phi, t));
        lhs == mat_scale(r, &self.phi, QuadInt::int(c))
    }

    /// Representative of the projective class of `m`: 𝒪-primitive, then the unit
    /// satisfying the congruence (largest flattened form among ties).
    pub fn canonical(&self, m: &QMat) -> QMat {
        let r = &self.ring;
        let mut g = QuadInt::ZERO;
        for &x in m.iter().flatten() {
            g = r.gcd(x, g);
        }
        assert!(!g.is_zero(), "zero matrix");
        let prim = m.map(|row| row.map(|x| r.div_exact(x, g).unwrap()));
        let cands: Vec<QMat> = r.units().iter().map(|&u| mat_scale(r, &prim, u)).collect();
        let valid: Vec<&QMat> = cands.iter().filter(|c| self.congruence(c)).collect();
        let pool: Vec<&QMat> = if valid.is_empty() { cands.iter().collect() } else { valid };
        **pool.iter().max_by_key(|c| flat(c)).unwrap()
    }

    /// Projective inverse of a similitude, adj(Φ)·t*·Φ up to scalars.
    pub fn projective_inverse(&self, t: &QMat) -> QMat {
        let r = &self.ring;
        let u = mat_mul(r, &adjugate(r, &self.phi), &mat_mul(r, &star(r, t), &self.phi));
        self.canonical(&u)
    }

    /// All v ∈ 𝒪³ with v*Φv = c.
    pub fn vectors_of_norm(&self, c: i64) -> Vec<[QuadInt; 3]> {
        let to_vec = |x: &[i64; 6]| {
            [
                QuadInt::new(x[0], x[1]),
                QuadInt::new(x[2], x[3]),
                QuadInt::new(x[4], x[5]),
            ]
        };
        let qf = |x: &[i64; 6]| {
            let v = to_vec(x);
            let h = self.herm(&v, &v);
            debug_assert_eq!(h.b, 0);
            h.a
        };
        let mut gram = [[0f64; 6]; 6];
        for k in 0..6 {
            for l in 0..6 {
                let mut ek = [0i64; 6];
                ek[k] += 1;
                let mut el = [0i64; 6];
                el[l] += 1;
                let mut ekl = ek;
                ekl[l] += 1;
                gram[k][l] = (qf(&ekl) - qf(&ek) - qf(&el)) as f64 / 2.0;
            }
        }
        let mut out: Vec<[QuadInt; 3]> = fincke_pohst(&gram, c as f64 + 0.5)
            .iter()
            .filter(|x| qf(x) == c)
            .map(to_vec)
            .collect();
        out.sort();
        out
    }
}

/// Integer points x with xᵀGx ≤ bound, G positive definite.
fn fincke_pohst(g: &[[f64; 6]; 6], bound: f64) -> Vec<[i64; 6]> {
    const D: usize = 6;
    // Q(x) = Σ_i q[i][i]·(x_i + Σ_{j>i} q[i][j]·x_j)²
    let mut q = *g;
    for i in 0..D {
        for j in i + 1..D {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..D {
            for l in k..D {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = [0i64; D];
    fn rec(
        i: usize,
        rem: f64,
        q: &[[f64; 6]; 6],
        x: &mut [i64; 6],
        out: &mut Vec<[i64; 6]>,
    ) {
        let center: f64 = -(i + 1..6).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let half = (rem.max(0.0) / q[i][i]).sqrt();
        let lo = (center - half - 1e-9).ceil() as i64;
        let hi = (center + half + 1e-9).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let d = v as f64 - center;
            let r = rem - q[i][i] * d * d;
            if r < -1e-9 {
                continue;
            }
            if i == 0 {
                out.push(*x);
            } else {
                rec(i - 1, r, q, x, out);
            }
        }
        x[i] = 0;
    }
    rec(D - 1, bound, &q, &mut x, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSystem {
    pub kind: LatticeKind,
    pub p: u32,
    pub mode: Mode,
    pub scaled_gens: Vec<QMat>,
    /// Sⁱ as index lists; empty until partitioned (inert) or colored (split).
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// index of s⁻¹
    pub inverse: Vec<usize>,
    /// split mode: color 1 or 2 per generator
    pub colors: Vec<u8>,
}

impl GeneratorSystem {
    pub fn k_plus_one(&self) -> usize {
        self.classes.len()
    }

    /// i(s⁻¹): class index containing the inverse of generator `s`.
    pub fn inv_map(&self, s: usize) -> usize {
        self.class_of[self.inverse[s]]
    }

    pub fn color_class(&self, c: u8) -> Vec<usize> {
        (0..self.scaled_gens.len()).filter(|&i| self.colors[i] == c).collect()
    }
}

pub fn expected_count(p: u32, mode: Mode) -> usize {
    let p = p as usize;
    match mode {
        Mode::InertBigraph => p * (p * p * p + 1),
        Mode::SplitComplex => 2 * (p * p + p + 1),
    }
}

/// Exhaustive search for {t : t*Φt = cΦ, t non-scalar, congruence}, modulo units.
pub fn enumerate_generators(
    spec: &LatticeSpec,
    p: u32,
    mode: Mode,
) -> Result<GeneratorSystem, LatticeError> {
    spec.admit(p, mode)?;
    let c = match mode {
        Mode::InertBigraph => (p as i64) * (p as i64),
        Mode::SplitComplex => p as i64,
    };
    let r = &spec.ring;
    let mut cols: Vec<Vec<[QuadInt; 3]>> = Vec::new();
    for j in 0..3 {
        let target = spec.phi[j][j];
        assert_eq!(target.b, 0);
        let vs = spec.vectors_of_norm(c * target.a);
        cols.push(vs);
    }
    let col_ok = |j: usize, v: &[QuadInt; 3]| -> bool {
        let mut m = identity();
        for i in 0..3 {
            m[i][j] = v[i];
        }
        match spec.kind {
            LatticeKind::Mumford => (j + 1..3).all(|i| v[i].a.rem_euclid(2) == 0),
            _ => {
                // congruence restricted to the diagonal entry of column j
                let mut d = identity();
                d[j][j] = v[j];
                spec.congruence(&d)
            }
        }
    };
    let filtered: Vec<Vec<[QuadInt; 3]>> = (0..3)
        .map(|j| cols[j].iter().filter(|v| col_ok(j, v)).copied().collect())
        .collect();
    let want = |i: usize, j: usize| r.mul(QuadInt::int(c), spec.phi[i][j]);
    let mut found: Vec<QMat> = Vec::new();
    for c0 in &filtered[0] {
        let c1s: Vec<&[QuadInt; 3]> =
            filtered[1].iter().filter(|v| spec.herm(c0, v) == want(0, 1)).collect();
        if c1s.is_empty() {
            continue;
        }
        let c2s: Vec<&[QuadInt; 3]> =
            filtered[2].iter().filter(|v| spec.herm(c0, v) == want(0, 2)).collect();
        for c1 in &c1s {
            for c2 in &c2s {
                if spec.herm(c1, c2) != want(1, 2) {
                    continue;
                }
                let mut t = [[QuadInt::ZERO; 3]; 3];
                for i in 0..3 {
                    t[i][0] = c0[i];
                    t[i][1] = c1[i];
                    t[i][2] = c2[i];
                }
                if is_scalar(&t) || !spec.congruence(&t) {
                    continue;
                }
                debug_assert!(spec.is_similitude(&t, c));
                found.push(spec.canonical(&t));
            }
        }
    }
    found.sort_by_key(flat);
    found.dedup();
    let n = found.len();
    let index: HashMap<QMat, usize> = found.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut inverse = Vec::with_capacity(n);
    for (i, t) in found.iter().enumerate() {
        let u = spec.projective_inverse(t);
        inverse.push(*index.get(&u).ok_or(LatticeError::MissingInverse(i))?);
    }
    Ok(GeneratorSystem {
        kind: spec.kind,
        p,
        mode,
        scaled_gens: found,
        classes: Vec::new(),
        class_of: Vec::new(),
        inverse,
        colors: Vec::new(),
    })
}

/// t ~ t' iff p·det Φ divides adj(Φ)·t*·Φ·t'.
pub fn neighbor_related(spec: &LatticeSpec, p: u32, t: &QMat, u: &QMat) -> bool {
    let r = &spec.ring;
    let d = det(r, &spec.phi);
    assert_eq!(d.b, 0, "det Φ is rational");
    let m = mat_mul(
        r,
        &adjugate(r, &spec.phi),
        &mat_mul(r, &star(r, t), &mat_mul(r, &spec.phi, u)),
    );
    p_divides_matrix(&m, p as i64 * d.a)
}

pub fn partition_by_neighbor(
    spec: &LatticeSpec,
    mut gens: GeneratorSystem,
) -> Result<GeneratorSystem, LatticeError> {
    let n = gens.scaled_gens.len();
    let p = gens.p as usize;
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n)
            .filter(|&j| {
                j == i || neighbor_related(spec, gens.p, &gens.scaled_gens[i], &gens.scaled_gens[j])
            })
            .collect();
        for &j in &members {
            if class_of[j] != usize::MAX {
                return Err(shape_err(&classes, p));
            }
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let expected_classes = p * p * p + 1;
    if classes.len() != expected_classes || classes.iter().any(|c| c.len() != p) {
        return Err(shape_err(&classes, p));
    }
    gens.classes = classes;
    gens.class_of = class_of;
    Ok(gens)
}

fn shape_err(classes: &[Vec<usize>], p: usize) -> LatticeError {
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    LatticeError::PartitionShapeError {
        classes: classes.len(),
        sizes,
        expected_classes: p * p * p + 1,
        expected_size: p,
    }
}

/// Color v_𝔭(det t) mod 3 of a split-mode generator.
pub fn split_color(spec: &LatticeSpec, t: &QMat, p: u32) -> Result<u8, LatticeError> {
    let d = det(&spec.ring, t);
    let v = spec.ring.ideal_valuation(d, p, false)?;
    match v % 3 {
        0 => Err(LatticeError::DegenerateColor(0)),
        c => Ok(c as u8),
    }
}

/// Assign colors; classes become [color 1, color 2].
pub fn color_split_generators(
    spec: &LatticeSpec,
    mut gens: GeneratorSystem,
) -> Result<GeneratorSystem, LatticeError> {
    let mut colors = Vec::with_capacity(gens.scaled_gens.len());
    for (i, t) in gens.scaled_gens.iter().enumerate() {
        colors.push(split_color(spec, t, gens.p).map_err(|e| match e {
            LatticeError::DegenerateColor(_) => LatticeError::DegenerateColor(i),
            e => e,
        })?);
    }
    gens.colors = colors;
    gens.classes = vec![gens.color_class(1), gens.color_class(2)];
    gens.class_of = gens.colors.iter().map(|&c| c as usize - 1).collect();
    Ok(gens)
}

/// Full inert pipeline: enumerate, check the count, partition.
pub fn generator_system(
    kind: LatticeKind,
    p: u32,
    mode: Mode,
) -> Result<GeneratorSystem, LatticeError> {
    let spec = LatticeSpec::new(kind);
    let gens = enumerate_generators(&spec, p, mode)?;
    let expected = expected_count(p, mode);
    if gens.scaled_gens.len() != expected {
        return Err(LatticeError::CountMismatch { expected, found: gens.scaled_gens.len() });
    }
    match mode {
        Mode::InertBigraph => partition_by_neighbor(&spec, gens),
        Mode::SplitComplex => color_split_generators(&spec, gens),
    }
}

/// Abstract group used by the axiom checker.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash + std::fmt::Debug;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomViolation {
    ContainsIdentity { s: usize },
    NotSymmetric { s: usize },
    ClassesNotDisjoint { s: usize },
    ClassProduct { s: usize, t: usize },
}

/// Def 2.1 on a concrete realization `elems` of the generators.
pub fn check_bicayley_axioms<G: GroupOps>(
    group: &G,
    elems: &[G::Elem],
    classes: &[Vec<usize>],
) -> Result<(), AxiomViolation> {
    let mut class_of: HashMap<G::Elem, usize> = HashMap::new();
    for (ci, c) in classes.iter().enumerate() {
        for &s in c {
            if class_of.insert(elems[s].clone(), ci).is_some_and(|old| old != ci) {
                return Err(AxiomViolation::ClassesNotDisjoint { s });
            }
        }
    }
    let id = group.identity();
    for c in classes {
        for &s in c {
            if elems[s] == id {
                return Err(AxiomViolation::ContainsIdentity { s });
            }
            if !class_of.contains_key(&group.inv(&elems[s])) {
                return Err(AxiomViolation::NotSymmetric { s });
            }
        }
    }
    for c in classes {
        for &s in c {
            let sinv = group.inv(&elems[s]);
            let target = class_of[&sinv];
            for &t in c {
                if s == t {
                    continue;
                }
                let prod = group.mul(&sinv, &elems[t]);
                if class_of.get(&prod) != Some(&target) {
                    return Err(AxiomViolation::ClassProduct { s, t });
                }
            }
        }
    }
    Ok(())
}

/// Λ as projective classes of integral matrices.
pub struct LambdaGroup<'a> {
    pub spec: &'a LatticeSpec,
}

impl GroupOps for LambdaGroup<'_> {
    type Elem = QMat;
    fn mul(&self, a: &QMat, b: &QMat) -> QMat {
        self.spec.canonical(&mat_mul(&self.spec.ring, a, b))
    }
    fn inv(&self, a: &QMat) -> QMat {
        self.spec.projective_inverse(a)
    }
    fn identity(&self) -> QMat {
        self.spec.canonical(&identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_examples() {
        let s = generator_system(LatticeKind::Eisenstein, 2, Mode::InertBigraph).unwrap();
        for t in &s.scaled_gens {
            assert_eq!(level(t, 2, 1), 2);
        }
        assert_eq!(level(&identity(), 5, 0), 0);
        assert_eq!(level(&scalar(QuadInt::TAU), 5, 0), 0);
    }

    #[test]
    fn p_divides_examples() {
        assert!(p_divides_matrix(&scalar(QuadInt::int(5)), 5));
        assert!(!p_divides_matrix(&identity(), 5));
        let mut m = scalar(QuadInt::int(10));
        m[0][1] = QuadInt::new(0, 5);
        assert!(p_divides_matrix(&m, 5));
    }

    #[test]
    fn excluded_primes_rejected() {
        let e = LatticeSpec::new(LatticeKind::Eisenstein);
        assert!(enumerate_generators(&e, 3, Mode::InertBigraph).is_err());
        assert!(enumerate_generators(&e, 7, Mode::InertBigraph).is_err());
        let m = LatticeSpec::new(LatticeKind::Mumford);
        assert!(enumerate_generators(&m, 7, Mode::InertBigraph).is_err());
        assert!(enumerate_generators(&m, 2, Mode::InertBigraph).is_err());
    }

    #[test]
    fn mumford_form_is_hermitian() {
        let m = LatticeSpec::new(LatticeKind::Mumford);
        assert_eq!(star(&m.ring, &m.phi), m.phi);
        let d = det(&m.ring, &m.phi);
        assert_eq!(d.b, 0);
        assert!(d.a > 0);
    }

    #[test]
    fn merged_classes_violate_axioms() {
        let spec = LatticeSpec::new(LatticeKind::Eisenstein);
        let s = generator_system(LatticeKind::Eisenstein, 2, Mode::InertBigraph).unwrap();
        let g = LambdaGroup { spec: &spec };
        assert!(check_bicayley_axioms(&g, &s.scaled_gens, &s.classes).is_ok());
        let mut merged = s.classes.clone();
        let second = merged.remove(1);
        merged[0].extend(second);
        assert!(matches!(
            check_bicayley_axioms(&g, &s.scaled_gens, &merged),
            Err(AxiomViolation::ClassProduct { .. })
        ));
    }
}
