//! Biregular bipartite graphs: Cayley/Schreier construction, incidence bigraphs,
//! girth and non-backtracking reachability.
//!
//! Edge `e = x·(K+1) + j` joins left vertex `x` to `edge_right[e]`. Directed edges
//! are numbered `e` for x→r and `N + e` for r→x.

use crate::groups::GroupAction;
use crate::lattice::GeneratorSystem;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigraphError {
    #[error("equivalence relation fails at (x={x}, j={j})")]
    AxiomViolation { x: usize, j: usize },
    #[error("bigraph is disconnected")]
    Disconnected,
    #[error("right vertex {r} has {size} members, more than k+1 = {max}")]
    BadRightDegree { r: usize, size: usize, max: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("bigraph is acyclic")]
    Acyclic,
    #[error("operation requires an unweighted bigraph")]
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bigraph {
    pub n_left: usize,
    pub n_right: usize,
    /// left degree K+1
    pub big_k: usize,
    /// right degree k+1
    pub small_k: usize,
    pub edge_right: Vec<u32>,
    /// sorted edge ids at each right vertex
    pub right_members: Vec<Vec<u32>>,
    pub left_transitive: bool,
    pub labels: BTreeMap<String, String>,
}

impl Bigraph {
    /// Build from explicit right-vertex member lists over edges x·(K+1)+j.
    pub fn from_members(
        n_left: usize,
        big_k: usize,
        small_k: usize,
        right_members: Vec<Vec<u32>>,
    ) -> Result<Bigraph, BigraphError> {
        let n_edges = n_left * (big_k + 1);
        let mut edge_right = vec![u32::MAX; n_edges];
        for (r, mem) in right_members.iter().enumerate() {
            if mem.len() > small_k + 1 {
                return Err(BigraphError::BadRightDegree { r, size: mem.len(), max: small_k + 1 });
            }
            for &e in mem {
                if edge_right[e as usize] != u32::MAX {
                    return Err(BigraphError::BadParams(format!("edge {e} in two right vertices")));
                }
                edge_right[e as usize] = r as u32;
            }
        }
        if edge_right.contains(&u32::MAX) {
            return Err(BigraphError::BadParams("edge without right endpoint".into()));
        }
        let g = Bigraph {
            n_left,
            n_right: right_members.len(),
            big_k,
            small_k,
            edge_right,
            right_members,
            left_transitive: false,
            labels: BTreeMap::new(),
        };
        if !g.is_connected() {
            return Err(BigraphError::Disconnected);
        }
        Ok(g)
    }

    /// Build from an explicit (left, right) edge list with constant left degree.
    pub fn from_edge_list(
        n_left: usize,
        n_right: usize,
        edges: &[(usize, usize)],
    ) -> Result<Bigraph, BigraphError> {
        let mut at_left: Vec<Vec<usize>> = vec![Vec::new(); n_left];
        for &(x, r) in edges {
            if x >= n_left || r >= n_right {
                return Err(BigraphError::BadParams("endpoint out of range".into()));
            }
            at_left[x].push(r);
        }
        let deg = at_left.first().map_or(0, |v| v.len());
        if deg == 0 || at_left.iter().any(|v| v.len() != deg) {
            return Err(BigraphError::BadParams("left side is not regular".into()));
        }
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); n_right];
        for (x, rs) in at_left.iter().enumerate() {
            for (j, &r) in rs.iter().enumerate() {
                members[r].push((x * deg + j) as u32);
            }
        }
        let rdeg = members.iter().map(|m| m.len()).max().unwrap_or(0);
        if rdeg == 0 {
            return Err(BigraphError::BadParams("empty right side".into()));
        }
        Bigraph::from_members(n_left, deg - 1, rdeg - 1, members)
    }

    pub fn n_edges(&self) -> usize {
        self.n_left * (self.big_k + 1)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn left_of(&self, e: usize) -> usize {
        e / (self.big_k + 1)
    }

    pub fn edges_at_left(&self, x: usize) -> std::ops::Range<usize> {
        x * (self.big_k + 1)..(x + 1) * (self.big_k + 1)
    }

    pub fn is_weighted(&self) -> bool {
        self.right_members.iter().any(|m| m.len() != self.small_k + 1)
    }

    /// w_r = |r|/(k+1)
    pub fn weight(&self, r: usize) -> f64 {
        self.right_members[r].len() as f64 / (self.small_k + 1) as f64
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n_edges()).map(|e| (self.left_of(e), self.edge_right[e] as usize)).collect()
    }

    /// Counts C[r][x] = #{j : [x,j] = r} as sparse rows.
    pub fn count_rows(&self) -> Vec<Vec<(usize, u32)>> {
        self.right_members
            .iter()
            .map(|mem| {
                let mut row: BTreeMap<usize, u32> = BTreeMap::new();
                for &e in mem {
                    *row.entry(self.left_of(e as usize)).or_insert(0) += 1;
                }
                row.into_iter().collect()
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n_left == 0 {
            return false;
        }
        let mut seen_l = vec![false; self.n_left];
        let mut seen_r = vec![false; self.n_right];
        let mut stack = vec![0usize];
        seen_l[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for e in self.edges_at_left(x) {
                let r = self.edge_right[e] as usize;
                if seen_r[r] {
                    continue;
                }
                seen_r[r] = true;
                count += 1;
                for &f in &self.right_members[r] {
                    let y = self.left_of(f as usize);
                    if !seen_l[y] {
                        seen_l[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == self.n_vertices()
    }

    /// Degree and count identities; for unweighted graphs |R|(k+1) = |L|(K+1).
    pub fn check_shape(&self) -> Result<(), BigraphError> {
        if !self.is_connected() {
            return Err(BigraphError::Disconnected);
        }
        if self.edge_right.len() != self.n_edges() {
            return Err(BigraphError::BadParams("edge array length".into()));
        }
        if !self.is_weighted() && self.n_right * (self.small_k + 1) != self.n_edges() {
            return Err(BigraphError::BadParams("|R|(k+1) ≠ |L|(K+1)".into()));
        }
        Ok(())
    }

    /// Neighbours in the combined vertex numbering (right vertices offset by |L|),
    /// paired with the undirected edge id.
    fn vertex_neighbors(&self, v: usize) -> Vec<(usize, usize)> {
        if v < self.n_left {
            self.edges_at_left(v).map(|e| (self.n_left + self.edge_right[e] as usize, e)).collect()
        } else {
            self.right_members[v - self.n_left]
                .iter()
                .map(|&e| (self.left_of(e as usize), e as usize))
                .collect()
        }
    }

    fn shortest_cycle_through(&self, src: usize) -> Option<usize> {
        let nv = self.n_vertices();
        let mut dist = vec![usize::MAX; nv];
        let mut parent_edge = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        let mut best: Option<usize> = None;
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for (w, e) in self.vertex_neighbors(u) {
                if e == parent_edge[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        best
    }

    /// Length of the shortest cycle. Left-transitive graphs are searched from vertex 0 only.
    pub fn girth(&self) -> Result<usize, BigraphError> {
        let sources: Vec<usize> =
            if self.left_transitive { vec![0] } else { (0..self.n_left).collect() };
        sources
            .par_iter()
            .filter_map(|&s| self.shortest_cycle_through(s))
            .min()
            .ok_or(BigraphError::Acyclic)
    }

    /// Directed-edge count 2N.
    pub fn n_directed(&self) -> usize {
        2 * self.n_edges()
    }

    /// Order of the stabilizer of a lift of `r` in the covering graph, (k+1)/|r|.
    pub fn stabilizer(&self, r: usize) -> usize {
        let size = self.right_members[r].len();
        debug_assert_eq!((self.small_k + 1) % size, 0);
        (self.small_k + 1) / size
    }

    /// Non-backtracking successors with multiplicity. On orbigraphs this is the
    /// push-down of the covering graph's operator: a lift of r carries each member
    /// edge `stabilizer(r)` times.
    pub fn nb_successors(&self, d: usize) -> Vec<(usize, u32)> {
        let n = self.n_edges();
        if d < n {
            let r = self.edge_right[d] as usize;
            let h = self.stabilizer(r) as u32;
            self.right_members[r]
                .iter()
                .map(|&f| (n + f as usize, if f as usize == d { h - 1 } else { h }))
                .filter(|&(_, m)| m > 0)
                .collect()
        } else {
            let e = d - n;
            self.edges_at_left(self.left_of(e)).filter(|&f| f != e).map(|f| (f, 1)).collect()
        }
    }

    /// Reverse of a directed edge.
    pub fn reverse(&self, d: usize) -> usize {
        let n = self.n_edges();
        if d < n {
            d + n
        } else {
            d - n
        }
    }

    /// Number of directed edges reached by NB paths of length exactly `len`.
    pub fn nb_reach(&self, d: usize, len: usize) -> usize {
        let m = self.n_directed();
        let mut cur = vec![false; m];
        cur[d] = true;
        for _ in 0..len {
            let mut next = vec![false; m];
            for (x, _) in cur.iter().enumerate().filter(|(_, &b)| b) {
                for (y, _) in self.nb_successors(x) {
                    next[y] = true;
                }
            }
            cur = next;
        }
        cur.iter().filter(|&&b| b).count()
    }

    fn nb_eccentricity(&self, d: usize) -> Option<usize> {
        let m = self.n_directed();
        let mut dist = vec![usize::MAX; m];
        dist[d] = 0;
        let mut queue = VecDeque::from([d]);
        let mut seen = 1;
        let mut ecc = 0;
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.nb_successors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    ecc = dist[y];
                    seen += 1;
                    queue.push_back(y);
                }
            }
        }
        (seen == m).then_some(ecc)
    }

    /// Max over ordered pairs of the shortest NB path length; `None` if some pair
    /// is unreachable. Left-transitive graphs use the edges at vertex 0 as orbit
    /// representatives.
    pub fn nb_diameter(&self) -> Option<usize> {
        let n = self.n_edges();
        let reps: Vec<usize> = if self.left_transitive {
            self.edges_at_left(0).flat_map(|e| [e, e + n]).collect()
        } else {
            (0..self.n_directed()).collect()
        };
        let eccs: Vec<Option<usize>> = reps.par_iter().map(|&d| self.nb_eccentricity(d)).collect();
        eccs.into_iter().try_fold(0, |acc, e| e.map(|v| acc.max(v)))
    }
}

/// Schreier bigraph SchB(G, Y, S) from a generator action on Y and the class data.
/// With the regular action this is the Cayley bigraph.
pub fn schreier_bigraph(
    action: &GroupAction,
    classes: &[Vec<usize>],
    class_of: &[usize],
    inverse: &[usize],
) -> Result<Bigraph, BigraphError> {
    let kp1 = classes.len();
    let small_k = classes.first().map_or(0, |c| c.len());
    if classes.iter().any(|c| c.len() != small_k) {
        return Err(BigraphError::BadParams("classes of unequal size".into()));
    }
    let n = action.size;
    let n_edges = n * kp1;
    let mut assign = vec![u32::MAX; n_edges];
    let mut members: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        for j in 0..kp1 {
            let e = x * kp1 + j;
            if assign[e] != u32::MAX {
                continue;
            }
            // [x,j] = {(x,j)} ∪ {(x·s, i(s⁻¹)) : s ∈ Sʲ}
            let mut mem: Vec<u32> = vec![e as u32];
            for &s in &classes[j] {
                let y = action.act[s][x] as usize;
                mem.push((y * kp1 + class_of[inverse[s]]) as u32);
            }
            mem.sort_unstable();
            mem.dedup();
            let r = members.len() as u32;
            for &f in &mem {
                if assign[f as usize] != u32::MAX {
                    return Err(BigraphError::AxiomViolation { x, j });
                }
                assign[f as usize] = r;
            }
            members.push(mem);
        }
    }
    // transitivity: every member generates the same class
    for mem in &members {
        for &f in mem {
            let (y, jj) = (f as usize / kp1, f as usize % kp1);
            let r = assign[f as usize];
            for &s in &classes[jj] {
                let z = action.act[s][y] as usize;
                if assign[z * kp1 + class_of[inverse[s]]] != r {
                    return Err(BigraphError::AxiomViolation { x: y, j: jj });
                }
            }
        }
    }
    let mut g = Bigraph::from_members(n, kp1 - 1, small_k, members)?;
    g.labels.insert("action".into(), action.name.clone());
    g.left_transitive = action.name == "regular";
    Ok(g)
}

pub fn schreier_from_system(
    action: &GroupAction,
    gens: &GeneratorSystem,
) -> Result<Bigraph, BigraphError> {
    schreier_bigraph(action, &gens.classes, &gens.class_of, &gens.inverse)
}

/// Incidence bigraph of 1-subspaces (left) and 2-subspaces (right) of F_k^{d+1}, k prime.
pub fn incidence_bigraph(d: usize, k: u32) -> Result<Bigraph, BigraphError> {
    if d < 3 || !crate::rings::is_prime(k as u64) {
        return Err(BigraphError::BadParams(format!("need d ≥ 3 and k prime, got d={d}, k={k}")));
    }
    let dim = d + 1;
    let kk = k as u64;
    // canonical points: first nonzero coordinate is 1
    let mut points: Vec<Vec<u64>> = Vec::new();
    let total = kk.pow(dim as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(dim);
        let mut c = code;
        for _ in 0..dim {
            v.push(c % kk);
            c /= kk;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            points.push(v);
        }
    }
    let index: HashMap<Vec<u64>, usize> =
        points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let canon = |v: &[u64]| -> Vec<u64> {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = (1..kk).find(|&i| i * lead % kk == 1).unwrap();
        v.iter().map(|&x| x * inv % kk).collect()
    };
    // a plane is identified by the sorted list of its points
    let mut planes: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let mut pts = Vec::new();
            for s in 0..kk {
                for t in 0..kk {
                    if s == 0 && t == 0 {
                        continue;
                    }
                    let v: Vec<u64> =
                        (0..dim).map(|i| (s * points[a][i] + t * points[b][i]) % kk).collect();
                    pts.push(index[&canon(&v)]);
                }
            }
            pts.sort_unstable();
            pts.dedup();
            planes.insert(pts, ());
        }
    }
    let mut edges = Vec::new();
    for (r, pts) in planes.keys().enumerate() {
        for &x in pts {
            edges.push((x, r));
        }
    }
    edges.sort_unstable();
    let mut g = Bigraph::from_edge_list(points.len(), planes.len(), &edges)?;
    g.labels.insert("family".into(), format!("incidence d={d} k={k}"));
    Ok(g)
}

/// Complete bipartite graph K_{a,b} (all right vertices see every left vertex).
pub fn complete_bigraph(a: usize, b: usize) -> Bigraph {
    let edges: Vec<(usize, usize)> = (0..a).flat_map(|x| (0..b).map(move |r| (x, r))).collect();
    let mut g = Bigraph::from_edge_list(a, b, &edges).expect("complete bigraph");
    g.left_transitive = true;
    g
}

/// Uniform simple connected (K+1,k+1)-biregular bigraph on `n_left` left vertices
/// from the configuration model, resampled until simple and connected.
pub fn random_biregular(
    n_left: usize,
    big_k: usize,
    small_k: usize,
    seed: u64,
) -> Result<Bigraph, BigraphError> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let n_edges = n_left * (big_k + 1);
    if n_left == 0 || !n_edges.is_multiple_of(small_k + 1) || small_k + 1 > n_left {
        return Err(BigraphError::BadParams(format!(
            "no simple ({},{})-biregular bigraph with {n_left} left vertices",
            big_k + 1,
            small_k + 1
        )));
    }
    let n_right = n_edges / (small_k + 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..n_edges).map(|e| e / (small_k + 1)).collect();
    for _ in 0..10_000 {
        slots.shuffle(&mut rng);
        let simple = (0..n_left).all(|x| {
            let mut rs = slots[x * (big_k + 1)..(x + 1) * (big_k + 1)].to_vec();
            rs.sort_unstable();
            rs.windows(2).all(|w| w[0] != w[1])
        });
        if !simple {
            continue;
        }
        let edges: Vec<(usize, usize)> = slots.iter().enumerate().map(|(e, &r)| (e / (big_k + 1), r)).collect();
        match Bigraph::from_edge_list(n_left, n_right, &edges) {
            Ok(mut g) => {
                g.labels.insert("family".into(), format!("random seed={seed}"));
                return Ok(g);
            }
            Err(BigraphError::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(BigraphError::BadParams("configuration model did not produce a simple connected graph".into()))
}

/// Barycentric subdivision of Cay(Sym(3), transpositions) as a Cayley bigraph.
pub fn sym3_bigraph() -> Bigraph {
    let t = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
    let (_, action) = crate::groups::perm_closure(3, &t);
    let classes = vec![vec![0], vec![1], vec![2]];
    schreier_bigraph(&action, &classes, &[0, 1, 2], &[0, 1, 2]).expect("Sym(3) bigraph")
}
