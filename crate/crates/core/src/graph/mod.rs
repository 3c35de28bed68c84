//! Supersingular l-isogeny graphs.
//!
//! Vertices are the supersingular j-invariants in characteristic p (all of
//! which lie in F_{p^2}); there is one directed edge per order-l subgroup
//! of the source curve, realized here as a root of Phi_l(X, j) counted with
//! multiplicity. The vertex list is sorted by the canonical (a, b) order so
//! the construction is bit-reproducible no matter how the class is
//! discovered.

pub mod modpoly;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{poly::roots_in_fp2, FieldCtx, Fp2};
use modpoly::ModPoly;

/// Number of supersingular j-invariants in characteristic p (Eichler mass
/// formula): floor(p/12) + eps with eps = 0, 1, 1, 2 for
/// p = 1, 5, 7, 11 mod 12.
pub fn supersingular_count(p: u64) -> usize {
    let eps = match p % 12 {
        1 => 0,
        5 | 7 => 1,
        11 => 2,
        _ => unreachable!("p > 3 prime"),
    };
    (p / 12) as usize + eps
}

/// Supersingularity test via the Hasse invariant: the curve y^2 = f(x) with
/// cubic f is supersingular iff the coefficient of x^(p-1) in f^((p-1)/2)
/// vanishes.
///
/// That single coefficient comes out of the first-order recurrence induced
/// by g' f = m f' g for g = f^m, which costs O(p) field operations instead
/// of a full polynomial power.
pub fn is_supersingular(j: Fp2, ctx: &FieldCtx) -> bool {
    let one = Fp2::new(1, 0);
    let j1728 = ctx.embed(1728);
    // cubic f = x^3 + f2 x^2 + f1 x + f0
    let (mut f2, mut f1, mut f0) = if j.is_zero() {
        // y^2 = x^3 + 1
        (Fp2::ZERO, Fp2::ZERO, one)
    } else if j == j1728 {
        // y^2 = x^3 + x
        (Fp2::ZERO, one, Fp2::ZERO)
    } else {
        let u = ctx.mul(j, ctx.inv(ctx.sub(j1728, j)).expect("j != 1728"));
        (Fp2::ZERO, ctx.scale(3, u), ctx.scale(2, u))
    };
    // the recurrence divides by f(0); substitute x -> x + c (an isomorphic
    // model) until the constant term is nonzero
    let mut c = 0u64;
    while f0.is_zero() {
        c += 1;
        debug_assert!(c <= 3, "cubic has at most 3 roots");
        let ce = ctx.embed(c);
        let c2 = ctx.mul(ce, ce);
        let c3 = ctx.mul(c2, ce);
        let (a, b) = (f1, f2);
        f0 = ctx.add(ctx.add(c3, ctx.mul(b, c2)), ctx.mul(a, ce));
        f1 = ctx.add(ctx.add(ctx.scale(3, c2), ctx.scale(2, ctx.mul(b, ce))), a);
        f2 = ctx.add(ctx.scale(3, ce), b);
        // note: starting models have zero constant term only at j = 1728
    }
    hasse_coeff_x_pm1(f2, f1, f0, ctx).is_zero()
}

/// Coefficient of x^(p-1) in (x^3 + f2 x^2 + f1 x + f0)^((p-1)/2), f0 != 0.
fn hasse_coeff_x_pm1(f2: Fp2, f1: Fp2, f0: Fp2, ctx: &FieldCtx) -> Fp2 {
    let p = ctx.p();
    let m = (p - 1) / 2;
    let f0_inv = ctx.inv(f0).expect("constant term nonzero");
    let f = [f0, f1, f2, Fp2::new(1, 0)];

    // g' f = m f' g termwise:
    //   g_{n+1} f0 (n+1) = - sum_{i=1..3} f_i ((n+1-i) - m i) g_{n+1-i}
    let scalar = |v: i128| -> u64 { v.rem_euclid(p as i128) as u64 };
    let mut g = [Fp2::ZERO, Fp2::ZERO, ctx.pow(f0, m)]; // g_{n-2}, g_{n-1}, g_n
    for n in 0..(p - 1) {
        let mut num = Fp2::ZERO;
        for i in 1..=3u64 {
            if n + 1 < i {
                continue;
            }
            let coeff = scalar((n as i128 + 1 - i as i128) - m as i128 * i as i128);
            let gi = g[3 - i as usize];
            num = ctx.add(num, ctx.scale(coeff, ctx.mul(f[i as usize], gi)));
        }
        let inv_n1 = ctx.invp((n + 1) % p);
        let g_next = ctx.neg(ctx.scale(inv_n1, ctx.mul(f0_inv, num)));
        g = [g[1], g[2], g_next];
    }
    g[2]
}

/// First supersingular j-invariant, chosen deterministically:
/// 1728 when p = 3 mod 4, else 0 when p = 2 mod 3, else (p = 1 mod 12) the
/// smallest supersingular j in F_p found by a Hasse-invariant scan.
pub fn initial_supersingular_j(ctx: &FieldCtx) -> Result<Fp2> {
    let p = ctx.p();
    if p % 4 == 3 {
        return Ok(ctx.embed(1728));
    }
    if p % 3 == 2 {
        return Ok(Fp2::ZERO);
    }
    (0..p)
        .map(|a| Fp2::new(a, 0))
        .find(|&j| is_supersingular(j, ctx))
        .ok_or(Error::NotFound)
}

/// The l+1 out-neighbors of j, with multiplicity: the root multiset of
/// Phi_l(X, j) over F_{p^2}. Fails with `IncompleteSplitting` when the total
/// multiplicity is not l+1, which flags a non-supersingular j.
pub fn neighbors(j: Fp2, phi: &ModPoly, ctx: &FieldCtx, seed: u64) -> Result<Vec<(Fp2, u32)>> {
    if phi.l() == ctx.p() {
        return Err(Error::LEqualsP(phi.l()));
    }
    let f = phi.specialize_y(j, ctx);
    let roots = roots_in_fp2(&f, ctx, seed);
    let total: u32 = roots.iter().map(|&(_, m)| m).sum();
    let want = (phi.l() + 1) as u32;
    if total != want {
        return Err(Error::IncompleteSplitting { l: phi.l(), found: total, want });
    }
    Ok(roots)
}

/// A bijection on vertex indices, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPermutation {
    pub image: Vec<usize>,
}

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation { image: (0..n).collect() }
    }

    pub fn new(image: Vec<usize>) -> Self {
        VertexPermutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.image.len();
        let mut seen = vec![false; n];
        for &v in &self.image {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// (self . other)(i) = self[other[i]]
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut img = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            img[v] = i;
        }
        VertexPermutation { image: img }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut ord = 1u64;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            ord += 1;
        }
        ord
    }
}

/// The supersingular l-isogeny graph G(p, l): ordered vertex list plus the
/// directed multi-adjacency matrix. `adjacency[i][k]` counts order-l
/// subgroups C of E_i with E_i/C isomorphic to E_k; every row sums to l+1.
/// This matrix is the Hecke operator T_l on the free module over the
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyGraph {
    p: u64,
    l: u64,
    nu: u64,
    vertices: Vec<Fp2>,
    adjacency: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    p: u64,
    l: u64,
    nu: u64,
    vertices: Vec<String>,
    adjacency: Vec<Vec<u32>>,
}

impl IsogenyGraph {
    /// Build G(p, l) by breadth-first closure from the canonical initial
    /// vertex.
    pub fn build(ctx: &FieldCtx, phi: &ModPoly, seed: u64) -> Result<Self> {
        let start = initial_supersingular_j(ctx)?;
        Self::build_from(ctx, phi, start, seed)
    }

    /// Build G(p, l) starting the closure at a chosen supersingular
    /// j-invariant. The output is independent of the start vertex because
    /// the vertex list is canonically sorted afterwards.
    pub fn build_from(ctx: &FieldCtx, phi: &ModPoly, start: Fp2, seed: u64) -> Result<Self> {
        let p = ctx.p();
        let l = phi.l();
        if l == p {
            return Err(Error::LEqualsP(l));
        }
        if !is_supersingular(start, ctx) {
            return Err(Error::StartNotSupersingular(start.to_string()));
        }

        let mut adj_by_j: BTreeMap<Fp2, Vec<(Fp2, u32)>> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        while let Some(j) = queue.pop_front() {
            if adj_by_j.contains_key(&j) {
                continue;
            }
            let nbrs = neighbors(j, phi, ctx, seed)?;
            for &(nj, _) in &nbrs {
                if !adj_by_j.contains_key(&nj) {
                    queue.push_back(nj);
                }
            }
            adj_by_j.insert(j, nbrs);
        }

        let expected = supersingular_count(p);
        if adj_by_j.len() != expected {
            return Err(Error::VertexCountMismatch { want: expected, got: adj_by_j.len() });
        }

        let vertices: Vec<Fp2> = adj_by_j.keys().copied().collect(); // BTreeMap keys are sorted
        let index: BTreeMap<Fp2, usize> = vertices.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let n = vertices.len();
        let mut adjacency = vec![vec![0u32; n]; n];
        for (j, nbrs) in &adj_by_j {
            let row = &mut adjacency[index[j]];
            for &(nj, m) in nbrs {
                let k = *index.get(&nj).ok_or_else(|| {
                    Error::Internal(format!("neighbor {nj} escaped the closure"))
                })?;
                row[k] += m;
            }
        }
        for row in &adjacency {
            let sum: u32 = row.iter().sum();
            if sum as u64 != l + 1 {
                return Err(Error::Internal(format!("row sum {sum} != l+1 = {}", l + 1)));
            }
        }
        Ok(IsogenyGraph { p, l, nu: ctx.nu(), vertices, adjacency })
    }

    /// Assemble a graph from parts, checking only shape. Intended for
    /// synthetic graphs in tests and for deserialization internals; built
    /// graphs always satisfy the full invariants.
    pub fn from_raw_parts(p: u64, l: u64, vertices: Vec<Fp2>, adjacency: Vec<Vec<u32>>) -> Result<Self> {
        let ctx = FieldCtx::new(p)?;
        let n = vertices.len();
        if adjacency.len() != n || adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { want: n, got: adjacency.len() });
        }
        Ok(IsogenyGraph { p, l, nu: ctx.nu(), vertices, adjacency })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// g = |vertices| - 1, the dimension of the degree-zero submodule.
    pub fn genus(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Fp2] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn edge_count(&self, i: usize, k: usize) -> u32 {
        self.adjacency[i][k]
    }

    pub fn vertex_index(&self, j: Fp2) -> Option<usize> {
        self.vertices.binary_search(&j).ok()
    }

    pub fn ctx(&self) -> FieldCtx {
        FieldCtx::new(self.p).expect("graph carries a valid prime")
    }

    /// Eichler weight of vertex i: 3 at j = 0, 2 at j = 1728, else 1
    /// (half the automorphism-group order of the curve).
    pub fn weight(&self, i: usize) -> u32 {
        let j = self.vertices[i];
        if j.is_zero() {
            3
        } else if j == Fp2::new(1728 % self.p, 0) {
            2
        } else {
            1
        }
    }

    /// The vertex permutation induced by the p-power Frobenius j -> j^p.
    pub fn frobenius_permutation(&self) -> Result<VertexPermutation> {
        let image = self
            .vertices
            .iter()
            .map(|&j| {
                let conj = Fp2::new(j.a, if j.b == 0 { 0 } else { self.p - j.b });
                self.vertex_index(conj)
                    .ok_or_else(|| Error::Internal(format!("Frobenius conjugate of {j} is not a vertex")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(VertexPermutation { image })
    }

    // ---- serialization -----------------------------------------------------

    pub fn to_json_string(&self) -> String {
        let doc = GraphJson {
            p: self.p,
            l: self.l,
            nu: self.nu,
            vertices: self.vertices.iter().map(Fp2::to_string).collect(),
            adjacency: self.adjacency.clone(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        let doc = GraphJson {
            p: self.p,
            l: self.l,
            nu: self.nu,
            vertices: self.vertices.iter().map(Fp2::to_string).collect(),
            adjacency: self.adjacency.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text)?;
        let ctx = FieldCtx::new(doc.p)?;
        if doc.nu != ctx.nu() {
            return Err(Error::Parse(format!(
                "cache says nu = {}, canonical representation has nu = {}",
                doc.nu,
                ctx.nu()
            )));
        }
        if !crate::field::is_prime_u64(doc.l) || doc.l == doc.p {
            return Err(Error::Parse(format!("invalid level l = {}", doc.l)));
        }
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for s in &doc.vertices {
            let v: Fp2 = s.parse()?;
            if v.a >= doc.p || v.b >= doc.p {
                return Err(Error::Parse(format!("vertex {s} is not reduced mod {}", doc.p)));
            }
            vertices.push(v);
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Parse("vertex list is not in canonical sorted order".into()));
        }
        let n = vertices.len();
        if doc.adjacency.len() != n || doc.adjacency.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("adjacency matrix shape mismatch".into()));
        }
        for row in &doc.adjacency {
            let sum: u64 = row.iter().map(|&x| x as u64).sum();
            if sum != doc.l + 1 {
                return Err(Error::Parse(format!("row sum {sum} != l+1 = {}", doc.l + 1)));
            }
        }
        Ok(IsogenyGraph { p: doc.p, l: doc.l, nu: doc.nu, vertices, adjacency: doc.adjacency })
    }

    /// DOT rendering: one edge line per unit of multiplicity, vertices
    /// labelled by their j-invariant string.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph isogeny_{}_{} {{\n", self.p, self.l));
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (i, row) in self.adjacency.iter().enumerate() {
            for (k, &m) in row.iter().enumerate() {
                for _ in 0..m {
                    out.push_str(&format!("  \"{}\" -> \"{}\";\n", self.vertices[i], self.vertices[k]));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
