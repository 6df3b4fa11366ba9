//! Lattice polytopes as intersections of half-spaces `⟨x, n_i⟩ ≤ μ_i`.
//!
//! Facet order is fixed by the input document and indexes every per-facet
//! quantity downstream (offsets, volume-polynomial variables, incidence sets).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

/// Largest ambient dimension accepted.
pub const MAX_DIMENSION: usize = 4;
/// Facet counts above this are accepted with a warning.
pub const SOFT_FACET_LIMIT: usize = 12;

/// Half-space presentation with primitive integer normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRep {
    dim: usize,
    normals: Vec<Vec<i64>>,
    offsets: Vec<Rational>,
}

/// Vertices together with the facets active at each one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    incidence: Vec<BTreeSet<usize>>,
}

/// The set of vertex incidence sets; fixed within a chamber of offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinatorialType(pub BTreeSet<BTreeSet<usize>>);

/// An offset in the input document: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OffsetValue {
    Int(i64),
    Text(String),
}

/// The JSON input schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<OffsetValue>,
}

/// Splits `v` into its primitive direction and the gcd of its entries.
pub fn primitivize(v: &[i64]) -> Result<(Vec<i64>, u64)> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    let g = g.unsigned_abs();
    Ok((v.iter().map(|&x| x / g as i64).collect(), g))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub(crate) fn dot(a: &[i64], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .map(|(&ai, xi)| xi * BigInt::from(ai))
        .sum()
}

/// Affine dimension of a point set; `None` when empty.
pub fn affine_dimension(points: &[&Vec<Rational>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(if diffs.is_empty() { 0 } else { linalg::rank(&diffs) })
}

impl HRep {
    /// Validates and normalizes a half-space presentation.
    ///
    /// Non-primitive normals are divided by their gcd and the offsets
    /// rescaled to match, with a warning.
    pub fn new(dim: usize, normals: Vec<Vec<i64>>, offsets: Vec<Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        if dim > MAX_DIMENSION {
            return Err(Error::DimensionLimit(dim));
        }
        if normals.len() != offsets.len() {
            return Err(Error::Parse(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        if let Some(i) = normals.iter().position(|n| n.len() != dim) {
            return Err(Error::Parse(format!(
                "normal {i} has length {}, expected {dim}",
                normals[i].len()
            )));
        }
        if normals.len() > SOFT_FACET_LIMIT {
            log::warn!(
                "{} half-spaces exceeds the recommended limit of {SOFT_FACET_LIMIT}",
                normals.len()
            );
        }
        let mut prim_normals = Vec::with_capacity(normals.len());
        let mut prim_offsets = Vec::with_capacity(offsets.len());
        for (i, (n, mu)) in normals.iter().zip(offsets).enumerate() {
            let (p, g) = primitivize(n).map_err(|_| Error::Parse(format!("normal {i} is zero")))?;
            if g != 1 {
                log::warn!("normal {i} {n:?} is not primitive; using {p:?} with offset divided by {g}");
            }
            prim_normals.push(p);
            prim_offsets.push(mu / BigInt::from(g));
        }
        let h = Self {
            dim,
            normals: prim_normals,
            offsets: prim_offsets,
        };
        h.check_bounded()?;
        let v = enumerate_vertices(&h);
        let all: Vec<&Vec<Rational>> = v.vertices.iter().collect();
        if affine_dimension(&all) != Some(dim) {
            return Err(Error::Empty);
        }
        let mut seen: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        for i in 0..h.facet_count() {
            let on: BTreeSet<usize> = v.facet_vertex_indices(i).into_iter().collect();
            let pts: Vec<&Vec<Rational>> = on.iter().map(|&j| &v.vertices[j]).collect();
            if affine_dimension(&pts) != Some(dim - 1) || seen.contains_key(&on) {
                return Err(Error::Redundant(i));
            }
            seen.insert(on, i);
        }
        Ok(h)
    }

    /// Same normals, new offsets, without revalidation. Used for the
    /// parametric family `Δ(λ)`.
    pub fn with_offsets(&self, offsets: Vec<Rational>) -> Self {
        assert_eq!(offsets.len(), self.facet_count());
        Self {
            dim: self.dim,
            normals: self.normals.clone(),
            offsets,
        }
    }

    pub fn from_document(doc: &PolytopeDocument) -> Result<Self> {
        let offsets = doc
            .offsets
            .iter()
            .map(|o| match o {
                OffsetValue::Int(v) => Ok(rational::int(*v)),
                OffsetValue::Text(s) => rational::parse(s),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.dimension, doc.normals.clone(), offsets)
    }

    pub fn to_document(&self, name: Option<String>) -> PolytopeDocument {
        PolytopeDocument {
            name,
            dimension: self.dim,
            normals: self.normals.clone(),
            offsets: self
                .offsets
                .iter()
                .map(|q| match rational::to_i64(q) {
                    Some(v) => OffsetValue::Int(v),
                    None => OffsetValue::Text(rational::render(q)),
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[i64] {
        &self.normals[i]
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// Squared Euclidean length of normal `i`.
    pub fn normal_norm_sq(&self, i: usize) -> i64 {
        self.normals[i].iter().map(|x| x * x).sum()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, mu)| dot(n, x) <= *mu)
    }

    fn normal_matrix(&self, rows: &[usize]) -> linalg::Matrix {
        rows.iter()
            .map(|&i| self.normals[i].iter().map(|&v| rational::int(v)).collect())
            .collect()
    }

    /// The recession cone `{x : ⟨x, n_i⟩ ≤ 0}` must be trivial. If the normals
    /// span, the cone is pointed and any nonzero element implies an extreme
    /// ray cut out by `dim - 1` independent normals.
    fn check_bounded(&self) -> Result<()> {
        let all: Vec<usize> = (0..self.facet_count()).collect();
        if linalg::rank(&self.normal_matrix(&all)) < self.dim {
            return Err(Error::Unbounded);
        }
        for subset in combinations(self.facet_count(), self.dim - 1) {
            let m = self.normal_matrix(&subset);
            let ns = linalg::nullspace(&m, self.dim);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r: Vec<Rational> = ns[0].iter().map(|v| v * BigInt::from(sign)).collect();
                if self.normals.iter().all(|n| !dot(n, &r).is_positive()) {
                    return Err(Error::Unbounded);
                }
            }
        }
        Ok(())
    }

    /// Short stable identifier: SHA-256 of the canonical document.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_string(&self.to_document(None)).expect("serializable");
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Parses and validates a JSON polytope document.
pub fn parse_hrep(document: &str) -> Result<HRep> {
    let doc: PolytopeDocument =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    HRep::from_document(&doc)
}

/// Solves every nonsingular `n`-subset of facet equations and keeps the
/// feasible solutions, each with its full active set.
pub fn enumerate_vertices(h: &HRep) -> VRep {
    let n = h.dim;
    let mut found: BTreeMap<Vec<Rational>, BTreeSet<usize>> = BTreeMap::new();
    for subset in combinations(h.facet_count(), n) {
        let a = h.normal_matrix(&subset);
        let b: Vec<Rational> = subset.iter().map(|&i| h.offsets[i].clone()).collect();
        let Ok(x) = linalg::solve_linear_system(&a, &b) else {
            continue;
        };
        if found.contains_key(&x) || !h.contains(&x) {
            continue;
        }
        let active = (0..h.facet_count())
            .filter(|&i| dot(&h.normals[i], &x) == h.offsets[i])
            .collect();
        found.insert(x, active);
    }
    let (vertices, incidence) = found.into_iter().unzip();
    VRep {
        dim: n,
        vertices,
        incidence,
    }
}

/// Number of facet `n`-subsets with a nonsingular normal matrix whose solution
/// is feasible. Equals the vertex count for simple polytopes.
pub fn count_feasible_bases(h: &HRep) -> usize {
    combinations(h.facet_count(), h.dim)
        .into_iter()
        .filter(|subset| {
            let a = h.normal_matrix(subset);
            let b: Vec<Rational> = subset.iter().map(|&i| h.offsets[i].clone()).collect();
            linalg::solve_linear_system(&a, &b).is_ok_and(|x| h.contains(&x))
        })
        .count()
}

impl VRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn incidence(&self) -> &[BTreeSet<usize>] {
        &self.incidence
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Indices of vertices lying on facet `i`.
    pub fn facet_vertex_indices(&self, i: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&j| self.incidence[j].contains(&i))
            .collect()
    }

    /// Neighbours of vertex `j`: vertices sharing an edge with it.
    pub fn neighbours(&self, j: usize) -> Vec<usize> {
        let here = &self.incidence[j];
        (0..self.vertices.len())
            .filter(|&u| u != j)
            .filter(|&u| {
                let common: Vec<usize> = here.intersection(&self.incidence[u]).copied().collect();
                if common.len() < self.dim.saturating_sub(1) {
                    return false;
                }
                // the common face must be exactly the segment [j, u]
                let face: Vec<&Vec<Rational>> = (0..self.vertices.len())
                    .filter(|&w| common.iter().all(|f| self.incidence[w].contains(f)))
                    .map(|w| &self.vertices[w])
                    .collect();
                face.len() == 2 && affine_dimension(&face) == Some(1)
            })
            .collect()
    }

    /// Primitive integer direction of the edge from vertex `j` to `u`.
    pub fn primitive_edge(&self, j: usize, u: usize) -> Vec<i64> {
        let diff: Vec<Rational> = self.vertices[u]
            .iter()
            .zip(&self.vertices[j])
            .map(|(a, b)| a - b)
            .collect();
        let l = rational::denominator_lcm(&diff);
        let ints: Vec<i64> = diff
            .iter()
            .map(|q| {
                (q * &l)
                    .to_integer()
                    .to_i64()
                    .expect("edge coordinates fit in i64")
            })
            .collect();
        primitivize(&ints).expect("distinct vertices").0
    }
}

/// Every vertex lies on exactly `n` facets and has `n` linearly independent
/// edge directions.
pub fn is_simple(v: &VRep) -> bool {
    let n = v.dim;
    (0..v.len()).all(|j| {
        if v.incidence[j].len() != n {
            return false;
        }
        let nb = v.neighbours(j);
        if nb.len() != n {
            return false;
        }
        let edges: Vec<Vec<Rational>> = nb
            .iter()
            .map(|&u| v.primitive_edge(j, u).into_iter().map(rational::int).collect())
            .collect();
        linalg::rank(&edges) == n
    })
}

/// Every vertex's primitive edge vectors form a basis of `ℤⁿ`.
///
/// Non-simple input is reported as [`Error::NotSimple`] rather than `false`.
pub fn is_delzant(h: &HRep, v: &VRep) -> Result<bool> {
    if v.dim != h.dim {
        return Err(Error::DimensionMismatch("HRep and VRep dimensions differ".into()));
    }
    if !is_simple(v) {
        return Err(Error::NotSimple);
    }
    Ok((0..v.len()).all(|j| {
        let edges: Vec<Vec<Rational>> = v
            .neighbours(j)
            .iter()
            .map(|&u| v.primitive_edge(j, u).into_iter().map(rational::int).collect())
            .collect();
        linalg::determinant(&edges).abs().is_one()
    }))
}

pub fn is_integral(v: &VRep) -> bool {
    v.vertices.iter().flatten().all(rational::is_integer)
}

pub fn combinatorial_type(h: &HRep) -> CombinatorialType {
    CombinatorialType(enumerate_vertices(h).incidence.into_iter().collect())
}

/// Recovers the supporting half-spaces of each facet from the vertex data:
/// for every facet index in use, the primitive outward normal and offset of
/// the hyperplane through its vertices.
pub fn supporting_halfspaces(v: &VRep) -> BTreeMap<usize, (Vec<i64>, Rational)> {
    let n = v.dim;
    let facets: BTreeSet<usize> = v.incidence.iter().flatten().copied().collect();
    let mut out = BTreeMap::new();
    for f in facets {
        let on = v.facet_vertex_indices(f);
        // rows [x, -1]; null vector (a, c) gives ⟨a, x⟩ = c
        let rows: Vec<Vec<Rational>> = on
            .iter()
            .map(|&j| {
                let mut r = v.vertices[j].clone();
                r.push(-Rational::one());
                r
            })
            .collect();
        let ns = linalg::nullspace(&rows, n + 1);
        if ns.len() != 1 {
            continue;
        }
        let l = rational::denominator_lcm(&ns[0]);
        let ints: Vec<i64> = ns[0]
            .iter()
            .map(|q| (q * &l).to_integer().to_i64().expect("small"))
            .collect();
        let g = ints[..n].iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            continue;
        }
        let mut normal: Vec<i64> = ints[..n].iter().map(|x| x / g).collect();
        let mut offset = Rational::new(BigInt::from(ints[n]), BigInt::from(g));
        let outward = v
            .vertices
            .iter()
            .all(|x| dot(&normal, x) <= offset);
        if !outward {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        out.insert(f, (normal, offset));
    }
    out
}

/// Checks the gate every counting operation requires.
pub fn require_delzant_integral(h: &HRep, v: &VRep) -> Result<()> {
    if !is_integral(v) {
        return Err(Error::NotIntegral);
    }
    if !is_delzant(h, v)? {
        return Err(Error::NotDelzant);
    }
    Ok(())
}

impl From<&HRep> for VRep {
    fn from(h: &HRep) -> Self {
        enumerate_vertices(h)
    }
}
