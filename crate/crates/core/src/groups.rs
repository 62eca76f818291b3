//! Projective 3×3 matrix groups over F_q, F_{q²} and their G-sets.

use crate::lattice::{GeneratorSystem, GroupOps, LatticeSpec, QMat};
use crate::rings::{GfElem, GfField, RingError};
use std::collections::HashMap;
use thiserror::Error;

pub type FMat = [[GfElem; 3]; 3];
pub type FVec = [GfElem; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {cap} elements")]
    Oversize { cap: usize },
    #[error("reduction mod {q} is not admissible: {reason}")]
    BadModulus { q: u32, reason: String },
    #[error("the {0} action is not available for this lattice")]
    UnsupportedAction(&'static str),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// PGL₃ over a finite field; elements are scaled so the first nonzero entry is 1.
#[derive(Clone, Copy, Debug)]
pub struct ProjGroup {
    pub field: GfField,
}

impl ProjGroup {
    pub fn mul_raw(&self, x: &FMat, y: &FMat) -> FMat {
        let f = &self.field;
        let mut out = [[f.zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = f.zero();
                for l in 0..3 {
                    acc = f.add(acc, f.mul(x[i][l], y[l][j]));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    pub fn canonical(&self, m: &FMat) -> FMat {
        let f = &self.field;
        let lead = *m.iter().flatten().find(|x| !f.is_zero(**x)).expect("zero matrix");
        let s = f.inv(lead).unwrap();
        m.map(|row| row.map(|x| f.mul(x, s)))
    }

    pub fn key(&self, m: &FMat) -> u128 {
        let size = self.field.size() as u128;
        m.iter().flatten().fold(0u128, |acc, &x| acc * size + self.field.index(x) as u128)
    }

    pub fn adjugate(&self, m: &FMat) -> FMat {
        let f = &self.field;
        let mut out = [[f.zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let rows: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let c = f.sub(
                    f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                    f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]),
                );
                out[i][j] = if (i + j) % 2 == 0 { c } else { f.neg(c) };
            }
        }
        out
    }

    pub fn det(&self, m: &FMat) -> GfElem {
        let f = &self.field;
        let adj = self.adjugate(m);
        (0..3).fold(f.zero(), |acc, l| f.add(acc, f.mul(m[0][l], adj[l][0])))
    }

    pub fn identity(&self) -> FMat {
        let f = &self.field;
        let mut m = [[f.zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f.one();
        }
        m
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &FVec, m: &FMat) -> FVec {
        let f = &self.field;
        let mut out = [f.zero(); 3];
        for (j, o) in out.iter_mut().enumerate() {
            for l in 0..3 {
                *o = f.add(*o, f.mul(v[l], m[l][j]));
            }
        }
        out
    }

    pub fn canonical_vec(&self, v: &FVec) -> FVec {
        let f = &self.field;
        let lead = *v.iter().find(|x| !f.is_zero(**x)).expect("zero vector");
        let s = f.inv(lead).unwrap();
        v.map(|x| f.mul(x, s))
    }

    pub fn vec_key(&self, v: &FVec) -> u64 {
        let size = self.field.size() as u64;
        v.iter().fold(0u64, |acc, &x| acc * size + self.field.index(x) as u64)
    }

    /// Points of P² as canonical row vectors, in index order.
    pub fn projective_points(&self) -> Vec<FVec> {
        let f = &self.field;
        let els: Vec<GfElem> = f.elements().collect();
        let mut pts = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    let v = [a, b, c];
                    if v.iter().all(|x| f.is_zero(*x)) {
                        continue;
                    }
                    if self.canonical_vec(&v) == v {
                        pts.push(v);
                    }
                }
            }
        }
        pts
    }
}

impl GroupOps for ProjGroup {
    type Elem = FMat;
    fn mul(&self, a: &FMat, b: &FMat) -> FMat {
        self.canonical(&self.mul_raw(a, b))
    }
    fn inv(&self, a: &FMat) -> FMat {
        self.canonical(&self.adjugate(a))
    }
    fn identity(&self) -> FMat {
        ProjGroup::identity(self)
    }
}

/// Reduced generator images in PGL₃(F).
#[derive(Clone, Debug)]
pub struct ReducedGens {
    pub q: u32,
    pub group: ProjGroup,
    /// canonical images of the scaled generators
    pub gen_images: Vec<FMat>,
    /// |reduced S ∪ {1}| = |S| + 1
    pub injective: bool,
}

/// The group generated by reduced generators, with its right-multiplication table.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    /// elements in BFS discovery order from the identity
    pub elements: Vec<FMat>,
    /// mult[x·|S| + s] = index of elements[x]·gen_images[s]
    pub mult: Vec<u32>,
    pub n_gens: usize,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn right_mul(&self, x: usize, s: usize) -> usize {
        self.mult[x * self.n_gens + s] as usize
    }
}

pub fn reduce_matrix(spec: &LatticeSpec, t: &QMat, field: &GfField) -> FMat {
    t.map(|row| row.map(|x| spec.ring.reduce(x, field)))
}

/// Reduce the scaled generators mod q.
pub fn reduce_generators(
    spec: &LatticeSpec,
    gens: &GeneratorSystem,
    q: u32,
) -> Result<ReducedGens, GroupError> {
    if q == gens.p || spec.excluded_primes.contains(&q) {
        return Err(GroupError::BadModulus { q, reason: "q equals p or is excluded".into() });
    }
    let field = spec.ring.residue_field(q)?;
    let group = ProjGroup { field };
    let gen_images: Vec<FMat> = gens
        .scaled_gens
        .iter()
        .map(|t| group.canonical(&reduce_matrix(spec, t, &field)))
        .collect();
    let mut distinct: Vec<u128> = gen_images.iter().map(|m| group.key(m)).collect();
    distinct.push(group.key(&group.identity()));
    distinct.sort_unstable();
    distinct.dedup();
    let injective = distinct.len() == gen_images.len() + 1;
    Ok(ReducedGens { q, group, gen_images, injective })
}

/// Breadth-first closure from the identity under right multiplication.
pub fn close_group(rg: &ReducedGens, cap: usize) -> Result<GroupClosure, GroupError> {
    let group = &rg.group;
    let id = group.identity();
    let mut index: HashMap<u128, u32> = HashMap::new();
    let mut elements = vec![id];
    index.insert(group.key(&id), 0);
    let mut mult: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        for g in &rg.gen_images {
            let y = group.canonical(&group.mul_raw(&x, g));
            let next = elements.len() as u32;
            let id = *index.entry(group.key(&y)).or_insert_with(|| {
                elements.push(y);
                next
            });
            mult.push(id);
        }
        if elements.len() > cap {
            return Err(GroupError::Oversize { cap });
        }
        head += 1;
    }
    Ok(GroupClosure { elements, mult, n_gens: rg.gen_images.len() })
}

/// |PSL₃(q)| for split q, |PSU₃(q)| for inert q.
pub fn expected_group_order(q: u64, split: bool) -> u64 {
    let q3 = q * q * q;
    let g = if split { (q3 - 1) * (q * q - 1) * q3 } else { (q3 + 1) * (q * q - 1) * q3 };
    let d = if split { num_gcd(3, q - 1) } else { num_gcd(3, q + 1) };
    g / d
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// A finite right G-set given by one permutation per generator.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub size: usize,
    /// act[s][y] = y·s
    pub act: Vec<Vec<u32>>,
    pub name: String,
}

impl GroupAction {
    /// G acting on itself by right multiplication.
    pub fn regular(cl: &GroupClosure) -> GroupAction {
        let n = cl.order();
        let ns = cl.n_gens;
        let act = (0..ns).map(|s| (0..n).map(|x| cl.mult[x * ns + s]).collect()).collect();
        GroupAction { size: n, act, name: "regular".into() }
    }

    fn on_points(rg: &ReducedGens, pts: Vec<FVec>, name: &str) -> GroupAction {
        let g = &rg.group;
        let index: HashMap<u64, u32> =
            pts.iter().enumerate().map(|(i, v)| (g.vec_key(v), i as u32)).collect();
        let act = rg
            .gen_images
            .iter()
            .map(|m| {
                pts.iter()
                    .map(|v| index[&g.vec_key(&g.canonical_vec(&g.vec_mul(v, m)))])
                    .collect()
            })
            .collect();
        GroupAction { size: pts.len(), act, name: name.into() }
    }

    /// Right action on P²(F) by row vectors.
    pub fn projective_plane(rg: &ReducedGens) -> GroupAction {
        let pts = rg.group.projective_points();
        Self::on_points(rg, pts, "projective-plane")
    }

    /// Right action on the points v of P²(F_{q²}) with v·v* = 0 (Φ = I only).
    pub fn isotropic(spec: &LatticeSpec, rg: &ReducedGens) -> Result<GroupAction, GroupError> {
        let f = rg.group.field;
        if spec.phi != crate::lattice::identity() || f.deg != 2 {
            return Err(GroupError::UnsupportedAction("isotropic"));
        }
        let pts: Vec<FVec> = rg
            .group
            .projective_points()
            .into_iter()
            .filter(|v| {
                let s = v.iter().fold(f.zero(), |acc, &x| f.add(acc, f.mul(x, f.frob(x))));
                f.is_zero(s)
            })
            .collect();
        Ok(Self::on_points(rg, pts, "isotropic"))
    }
}

/// Permutations of {0..n−1} composed left to right: (a·b)(x) = b(a(x)).
#[derive(Clone, Copy, Debug)]
pub struct PermGroup {
    pub n: usize,
}

impl GroupOps for PermGroup {
    type Elem = Vec<usize>;
    fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&x| b[x]).collect()
    }
    fn inv(&self, a: &Vec<usize>) -> Vec<usize> {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x] = i;
        }
        out
    }
    fn identity(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
}

/// Closure of a generating set of permutations with its right-multiplication table.
pub fn perm_closure(n: usize, gens: &[Vec<usize>]) -> (Vec<Vec<usize>>, GroupAction) {
    let g = PermGroup { n };
    let mut elements = vec![g.identity()];
    let mut index: HashMap<Vec<usize>, u32> = HashMap::new();
    index.insert(g.identity(), 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        for s in gens {
            let y = g.mul(&x, s);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
        }
        head += 1;
    }
    let act = gens
        .iter()
        .map(|s| elements.iter().map(|x| index[&g.mul(x, s)]).collect())
        .collect();
    (elements.clone(), GroupAction { size: elements.len(), act, name: "regular".into() })
}
