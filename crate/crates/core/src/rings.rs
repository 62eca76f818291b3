//! Exact arithmetic in the orders ℤ[ω], ℤ[i], ℤ[λ] and reduction to F_q, F_{q²}.
//!
//! Every order is ℤ[τ] with τ² = tτ − n. Coordinates are `i64`; overflow panics.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("prime {q} ramifies in the {ring:?} order")]
    RamifiedPrime { q: u32, ring: RingKind },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} does not split in the {ring:?} order")]
    NotSplit { p: u32, ring: RingKind },
    #[error("valuation of zero")]
    ZeroElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    Eisenstein,
    Gauss,
    Mumford7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub kind: RingKind,
    /// τ² = tτ − n
    pub t: i64,
    pub n: i64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };
    pub const TAU: QuadInt = QuadInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub const fn int(a: i64) -> Self {
        QuadInt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, o: Self) -> Self {
        QuadInt::new(ck(self.a.checked_add(o.a)), ck(self.b.checked_add(o.b)))
    }

    pub fn sub(self, o: Self) -> Self {
        QuadInt::new(ck(self.a.checked_sub(o.a)), ck(self.b.checked_sub(o.b)))
    }

    pub fn neg(self) -> Self {
        QuadInt::new(-self.a, -self.b)
    }

    pub fn scale(self, c: i64) -> Self {
        QuadInt::new(ck(self.a.checked_mul(c)), ck(self.b.checked_mul(c)))
    }

    /// Exact division by a rational integer, `None` unless both coordinates divide.
    pub fn div_int(self, c: i64) -> Option<Self> {
        (self.a % c == 0 && self.b % c == 0).then(|| QuadInt::new(self.a / c, self.b / c))
    }

    pub fn divisible_by_int(self, c: i64) -> bool {
        self.a % c == 0 && self.b % c == 0
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}τ"),
            (a, b) if b < 0 => write!(f, "{a}{b}τ"),
            (a, b) => write!(f, "{a}+{b}τ"),
        }
    }
}

#[inline]
fn ck(x: Option<i64>) -> i64 {
    x.expect("64-bit overflow in quadratic integer arithmetic")
}

impl RingSpec {
    pub const EISENSTEIN: RingSpec = RingSpec { kind: RingKind::Eisenstein, t: -1, n: 1 };
    pub const GAUSS: RingSpec = RingSpec { kind: RingKind::Gauss, t: 0, n: 1 };
    pub const MUMFORD: RingSpec = RingSpec { kind: RingKind::Mumford7, t: -1, n: 2 };

    pub fn of(kind: RingKind) -> RingSpec {
        match kind {
            RingKind::Eisenstein => Self::EISENSTEIN,
            RingKind::Gauss => Self::GAUSS,
            RingKind::Mumford7 => Self::MUMFORD,
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.t * self.t - 4 * self.n
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        // (a+bτ)(c+dτ) = ac − n·bd + (ad + bc + t·bd)τ
        let bd = ck(x.b.checked_mul(y.b));
        let a = ck(ck(x.a.checked_mul(y.a)).checked_sub(ck(bd.checked_mul(self.n))));
        let b = ck(ck(ck(x.a.checked_mul(y.b)).checked_add(ck(x.b.checked_mul(y.a))))
            .checked_add(ck(bd.checked_mul(self.t))));
        QuadInt::new(a, b)
    }

    pub fn conj(&self, x: QuadInt) -> QuadInt {
        QuadInt::new(ck(x.a.checked_add(ck(self.t.checked_mul(x.b)))), -x.b)
    }

    pub fn norm(&self, x: QuadInt) -> i64 {
        let aa = ck(x.a.checked_mul(x.a));
        let ab = ck(ck(x.a.checked_mul(x.b)).checked_mul(self.t));
        let bb = ck(ck(x.b.checked_mul(x.b)).checked_mul(self.n));
        ck(ck(aa.checked_add(ab)).checked_add(bb))
    }

    pub fn norm_conj(&self, x: QuadInt) -> (i64, QuadInt) {
        (self.norm(x), self.conj(x))
    }

    /// Units of the order, in a fixed order starting with 1.
    pub fn units(&self) -> Vec<QuadInt> {
        match self.kind {
            RingKind::Eisenstein => vec![
                QuadInt::new(1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(-1, -1),
                QuadInt::new(-1, 0),
                QuadInt::new(0, -1),
                QuadInt::new(1, 1),
            ],
            RingKind::Gauss => vec![
                QuadInt::new(1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(-1, 0),
                QuadInt::new(0, -1),
            ],
            RingKind::Mumford7 => vec![QuadInt::new(1, 0), QuadInt::new(-1, 0)],
        }
    }

    /// Exact quotient x / y when y divides x.
    pub fn div_exact(&self, x: QuadInt, y: QuadInt) -> Option<QuadInt> {
        let ny = self.norm(y);
        if ny == 0 {
            return None;
        }
        self.mul(x, self.conj(y)).div_int(ny)
    }

    /// Euclidean remainder of x by y (all three orders are norm-Euclidean).
    pub fn rem(&self, x: QuadInt, y: QuadInt) -> QuadInt {
        let ny = self.norm(y) as i128;
        let z = self.mul(x, self.conj(y));
        let (fa, fb) = (
            (z.a as i128).div_euclid(ny) as i64,
            (z.b as i128).div_euclid(ny) as i64,
        );
        let mut best = x;
        let mut best_n = self.norm(x);
        for da in 0..2 {
            for db in 0..2 {
                let q = QuadInt::new(fa + da, fb + db);
                let r = x.sub(self.mul(q, y));
                let nr = self.norm(r);
                if nr < best_n {
                    best = r;
                    best_n = nr;
                }
            }
        }
        debug_assert!(best_n < self.norm(y));
        best
    }

    pub fn gcd(&self, mut x: QuadInt, mut y: QuadInt) -> QuadInt {
        while !y.is_zero() {
            let r = self.rem(x, y);
            x = y;
            y = r;
        }
        x
    }

    /// Residue field of q: F_q when τ's minimal polynomial splits, otherwise F_{q²}.
    pub fn residue_field(&self, q: u32) -> Result<GfField, RingError> {
        if !is_prime(q as u64) {
            return Err(RingError::NotPrime(q as u64));
        }
        if self.discriminant().rem_euclid(q as i64) == 0 {
            return Err(RingError::RamifiedPrime { q, ring: self.kind });
        }
        let tq = self.t.rem_euclid(q as i64) as u32;
        let nq = self.n.rem_euclid(q as i64) as u32;
        match self.roots_mod(q).first() {
            Some(&r) => Ok(GfField { q, deg: 1, t: tq, n: nq, root: r }),
            None => Ok(GfField { q, deg: 2, t: tq, n: nq, root: 0 }),
        }
    }

    /// Roots of x² − tx + n mod p, ascending.
    pub fn roots_mod(&self, p: u32) -> Vec<u32> {
        let pi = p as i64;
        (0..pi)
            .filter(|&r| (r * r - self.t * r + self.n).rem_euclid(pi) == 0)
            .map(|r| r as u32)
            .collect()
    }

    pub fn reduce(&self, x: QuadInt, f: &GfField) -> GfElem {
        let q = f.q as i64;
        let a = x.a.rem_euclid(q) as u32;
        let b = x.b.rem_euclid(q) as u32;
        if f.deg == 1 {
            GfElem::new(((a as u64 + b as u64 * f.root as u64) % f.q as u64) as u32, 0)
        } else {
            GfElem::new(a, b)
        }
    }

    /// Valuation at 𝔭 = (p, τ − r) with r the smallest root, or at its conjugate.
    pub fn ideal_valuation(&self, x: QuadInt, p: u32, conj_prime: bool) -> Result<u32, RingError> {
        if x.is_zero() {
            return Err(RingError::ZeroElement);
        }
        let roots = self.roots_mod(p);
        if roots.len() != 2 {
            return Err(RingError::NotSplit { p, ring: self.kind });
        }
        let r = if conj_prime { roots[1] } else { roots[0] } as i64;
        let pi = p as i64;
        let mut y = x;
        let mut v = 0u32;
        while y.divisible_by_int(pi) {
            y = y.div_int(pi).unwrap();
            v += 1;
        }
        // y is prime to p, so at most one of 𝔭, conj 𝔭 divides it
        if (y.a + y.b * r).rem_euclid(pi) == 0 {
            let mut n = self.norm(y);
            while n % pi == 0 {
                n /= pi;
                v += 1;
            }
        }
        Ok(v)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// F_q (deg 1) or F_q[x]/(x² − tx + n) (deg 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GfField {
    pub q: u32,
    pub deg: u8,
    pub t: u32,
    pub n: u32,
    /// image of τ when deg = 1
    pub root: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GfElem {
    pub c0: u32,
    pub c1: u32,
}

impl GfElem {
    pub const fn new(c0: u32, c1: u32) -> Self {
        GfElem { c0, c1 }
    }
}

impl GfField {
    pub fn size(&self) -> u32 {
        if self.deg == 1 {
            self.q
        } else {
            self.q * self.q
        }
    }

    pub fn zero(&self) -> GfElem {
        GfElem::new(0, 0)
    }

    pub fn one(&self) -> GfElem {
        GfElem::new(1 % self.q, 0)
    }

    pub fn from_int(&self, a: i64) -> GfElem {
        GfElem::new(a.rem_euclid(self.q as i64) as u32, 0)
    }

    /// Bijection with 0..size(), c0 + q·c1.
    pub fn index(&self, x: GfElem) -> u32 {
        x.c0 + self.q * x.c1
    }

    pub fn from_index(&self, i: u32) -> GfElem {
        GfElem::new(i % self.q, i / self.q)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.size()).map(|i| self.from_index(i))
    }

    #[inline]
    pub fn add(&self, x: GfElem, y: GfElem) -> GfElem {
        let q = self.q;
        GfElem::new((x.c0 + y.c0) % q, (x.c1 + y.c1) % q)
    }

    #[inline]
    pub fn sub(&self, x: GfElem, y: GfElem) -> GfElem {
        let q = self.q;
        GfElem::new((x.c0 + q - y.c0) % q, (x.c1 + q - y.c1) % q)
    }

    #[inline]
    pub fn neg(&self, x: GfElem) -> GfElem {
        self.sub(self.zero(), x)
    }

    #[inline]
    pub fn mul(&self, x: GfElem, y: GfElem) -> GfElem {
        let q = self.q as u64;
        if self.deg == 1 {
            return GfElem::new(((x.c0 as u64 * y.c0 as u64) % q) as u32, 0);
        }
        let (a, b, c, d) = (x.c0 as u64, x.c1 as u64, y.c0 as u64, y.c1 as u64);
        let bd = b * d % q;
        let c0 = (a * c + (q - self.n as u64) * bd) % q;
        let c1 = (a * d + b * c + self.t as u64 * bd) % q;
        GfElem::new(c0 as u32, c1 as u32)
    }

    pub fn pow(&self, x: GfElem, mut e: u64) -> GfElem {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: GfElem) -> Option<GfElem> {
        (x != self.zero()).then(|| self.pow(x, self.size() as u64 - 2))
    }

    /// z ↦ z^q; the identity on F_q.
    pub fn frob(&self, x: GfElem) -> GfElem {
        if self.deg == 1 {
            x
        } else {
            self.pow(x, self.q as u64)
        }
    }

    pub fn is_zero(&self, x: GfElem) -> bool {
        x.c0 == 0 && x.c1 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: RingSpec = RingSpec::EISENSTEIN;

    #[test]
    fn omega_squared() {
        let w = QuadInt::TAU;
        assert_eq!(E.mul(w, w), QuadInt::new(-1, -1));
        assert_eq!(RingSpec::GAUSS.mul(w, w), QuadInt::new(-1, 0));
        let l = QuadInt::TAU;
        let m = RingSpec::MUMFORD;
        assert_eq!(m.mul(l, m.conj(l)), QuadInt::new(2, 0));
    }

    #[test]
    fn norm_and_conj_examples() {
        assert_eq!(E.norm_conj(QuadInt::TAU), (1, QuadInt::new(-1, -1)));
        assert_eq!(E.norm_conj(QuadInt::new(3, 1)), (7, QuadInt::new(2, -1)));
        assert_eq!(RingSpec::GAUSS.norm_conj(QuadInt::new(1, 1)), (2, QuadInt::new(1, -1)));
    }

    #[test]
    fn reduction_examples() {
        let f7 = E.residue_field(7).unwrap();
        assert_eq!((f7.deg, E.reduce(QuadInt::TAU, &f7)), (1, GfElem::new(2, 0)));
        let f5 = E.residue_field(5).unwrap();
        assert_eq!((f5.deg, E.reduce(QuadInt::TAU, &f5)), (2, GfElem::new(0, 1)));
        let f2 = E.residue_field(2).unwrap();
        let w = E.reduce(QuadInt::TAU, &f2);
        assert_eq!(f2.size(), 4);
        assert_eq!(f2.pow(w, 3), f2.one());
        assert_ne!(w, f2.one());
        assert!(matches!(E.residue_field(3), Err(RingError::RamifiedPrime { .. })));
        assert!(RingSpec::MUMFORD.residue_field(7).is_err());
        assert!(RingSpec::GAUSS.residue_field(2).is_err());
    }

    #[test]
    fn valuation_examples() {
        let x = QuadInt::new(-2, 1);
        assert_eq!(E.ideal_valuation(x, 7, false), Ok(1));
        assert_eq!(E.ideal_valuation(x, 7, true), Ok(0));
        assert_eq!(E.ideal_valuation(QuadInt::int(7), 7, false), Ok(1));
        assert_eq!(E.ideal_valuation(QuadInt::int(7), 7, true), Ok(1));
        assert_eq!(E.ideal_valuation(QuadInt::int(3), 7, false), Ok(0));
        assert_eq!(E.ideal_valuation(QuadInt::ZERO, 7, false), Err(RingError::ZeroElement));
        assert!(E.ideal_valuation(QuadInt::ONE, 5, false).is_err());
    }

    #[test]
    fn gcd_divides() {
        for ring in [E, RingSpec::GAUSS, RingSpec::MUMFORD] {
            let x = ring.mul(QuadInt::new(3, 2), QuadInt::new(5, -1));
            let y = ring.mul(QuadInt::new(3, 2), QuadInt::new(1, 4));
            let g = ring.gcd(x, y);
            assert!(ring.div_exact(x, g).is_some());
            assert!(ring.div_exact(y, g).is_some());
            assert_eq!(ring.norm(g) % ring.norm(QuadInt::new(3, 2)), 0);
        }
    }

    #[test]
    fn inverse_in_field() {
        let f = E.residue_field(5).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }
}
