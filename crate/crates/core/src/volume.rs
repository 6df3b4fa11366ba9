//! Exact volumes and the parametric volume polynomial `vol(Δ(λ))`.
//!
//! Volumes come from a pulling triangulation of the face lattice recovered
//! from vertex incidences. Facet volumes are measured in the facet's own
//! lattice (`n_i^⊥ ∩ ℤⁿ`), which equals the Euclidean facet volume divided by
//! `‖n_i‖`; every facet simplex is checked against the squared Euclidean
//! volume so the two conventions cannot drift apart.
//!
//! The volume polynomial is interpolated from exact volumes of perturbed
//! polytopes `Δ(μ + s·t)` on the principal lattice `{t ∈ ℕ^d : |t| ≤ n}`,
//! which is unisolvent for total degree `≤ n`. Every sample must keep the
//! combinatorial type of `Δ`; otherwise the step `s` is halved and sampling
//! restarts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::par::{self, Execution};
use crate::poly::{MultiPoly, UniPoly};
use crate::polytope::{self, affine_dimension, CombinatorialType, HRep, VRep};
use crate::rational::{self, Rational};

/// Step-halving retries before giving up on staying inside the chamber.
pub const MAX_CHAMBER_RETRIES: usize = 10;
/// Held-out offsets checked against direct volumes after interpolation.
pub const HELD_OUT_SAMPLES: usize = 6;

/// `vol(Δ(λ_1, …, λ_d))` near the base offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumePolynomial {
    pub poly: MultiPoly,
    pub hrep: HRep,
    pub chamber: CombinatorialType,
    /// Offsets `μ + step·t` with `t ≥ 0`, `|t| ≤ n` stay inside the chamber.
    pub step: Rational,
}

/// `vol(∂Δ(λ_1, …, λ_d))`, facets measured in their own lattices.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryVolumePolynomial {
    pub poly: MultiPoly,
    pub base_offsets: Vec<Rational>,
}

impl VolumePolynomial {
    pub fn base_offsets(&self) -> &[Rational] {
        self.hrep.offsets()
    }

    /// `vol(kΔ)` as a polynomial in `k`.
    pub fn dilated(&self) -> Result<UniPoly> {
        self.poly.substitute_scaled(self.base_offsets())
    }
}

impl BoundaryVolumePolynomial {
    pub fn dilated(&self) -> Result<UniPoly> {
        self.poly.substitute_scaled(&self.base_offsets)
    }
}

/// `|det(v_1 − v_0, …, v_n − v_0)| / n!` for `n + 1` points in `ℝⁿ`.
///
/// Degenerate simplices have volume zero.
pub fn simplex_volume(points: &[Vec<Rational>]) -> Result<Rational> {
    let Some((v0, rest)) = points.split_first() else {
        return Err(Error::DimensionMismatch("simplex needs at least one point".into()));
    };
    let n = v0.len();
    if rest.len() != n || rest.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "a simplex in dimension {n} needs {} points",
            n + 1
        )));
    }
    let m: linalg::Matrix = rest
        .iter()
        .map(|p| p.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    Ok(linalg::determinant(&m).abs() / Rational::from_integer(rational::factorial(n)))
}

/// Pulling triangulation of a face given by vertex indices.
///
/// Subfaces are the maximal intersections with facets, recognised by their
/// affine dimension. Each simplex is a list of `face_dim + 1` vertex indices.
fn triangulate_face(v: &VRep, face: &[usize], face_dim: usize) -> Vec<Vec<usize>> {
    triangulate_memo(v, face, face_dim, &mut BTreeMap::new())
}

type FaceMemo = BTreeMap<Vec<usize>, Vec<Vec<usize>>>;

fn triangulate_memo(v: &VRep, face: &[usize], face_dim: usize, memo: &mut FaceMemo) -> Vec<Vec<usize>> {
    if face_dim == 0 {
        return vec![vec![face[0]]];
    }
    if let Some(done) = memo.get(face) {
        return done.clone();
    }
    let apex = face[0];
    let facets: BTreeSet<usize> = face
        .iter()
        .flat_map(|&j| v.incidence()[j].iter().copied())
        .collect();
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let sub: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&j| v.incidence()[j].contains(&f))
            .collect();
        if sub.len() == face.len() || sub.contains(&apex) || subfaces.contains(&sub) {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = sub.iter().map(|&j| &v.vertices()[j]).collect();
        if affine_dimension(&pts) == Some(face_dim - 1) {
            subfaces.insert(sub);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces {
        for mut simplex in triangulate_memo(v, &sub, face_dim - 1, memo) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    memo.insert(face.to_vec(), out.clone());
    out
}

/// Exact Euclidean volume of a full-dimensional polytope.
pub fn polytope_volume(v: &VRep) -> Result<Rational> {
    let all: Vec<usize> = (0..v.len()).collect();
    let pts: Vec<&Vec<Rational>> = v.vertices().iter().collect();
    if affine_dimension(&pts) != Some(v.dim()) {
        return Err(Error::Empty);
    }
    let mut total = Rational::zero();
    for simplex in triangulate_face(v, &all, v.dim()) {
        let pts: Vec<Vec<Rational>> = simplex.iter().map(|&j| v.vertices()[j].clone()).collect();
        total += simplex_volume(&pts)?;
    }
    Ok(total)
}

/// Basis of the lattice `{x ∈ ℤⁿ : ⟨x, normal⟩ = 0}` for a primitive normal.
///
/// Column-reduces `normal` by unimodular operations until a single `±1`
/// remains; the other columns of the accumulated transform span the
/// hyperplane lattice.
pub fn hyperplane_lattice_basis(normal: &[i64]) -> Vec<Vec<i64>> {
    let n = normal.len();
    let mut a = normal.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&j| a[j] != 0).collect();
        assert!(!nonzero.is_empty(), "normal must be nonzero");
        if nonzero.len() == 1 {
            let p = nonzero[0];
            assert_eq!(a[p].abs(), 1, "normal must be primitive");
            return (0..n)
                .filter(|&j| j != p)
                .map(|j| (0..n).map(|i| u[i][j]).collect())
                .collect();
        }
        let p = *nonzero.iter().min_by_key(|&&j| a[j].abs()).unwrap();
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = a[j].div_euclid(a[p]);
            a[j] -= q * a[p];
            for row in u.iter_mut() {
                row[j] -= q * row[p];
            }
        }
    }
}

/// Volume of facet `i` relative to its own lattice.
///
/// Each simplex of the facet triangulation is measured in lattice
/// coordinates and cross-checked against its squared Euclidean volume,
/// `gram = ((n−1)!)² · ‖n_i‖² · s²`. In dimension one facets are points with
/// volume one.
pub fn facet_volume_normalized(h: &HRep, v: &VRep, i: usize) -> Result<Rational> {
    let n = h.dim();
    let on = v.facet_vertex_indices(i);
    if on.is_empty() {
        return Err(Error::Invariant(format!("facet {i} has no vertices")));
    }
    if n == 1 {
        return Ok(Rational::one());
    }
    let basis = hyperplane_lattice_basis(h.normal(i));
    let b: linalg::Matrix = basis
        .iter()
        .map(|r| r.iter().map(|&x| rational::int(x)).collect())
        .collect();
    // normal equations B Bᵀ c = B x recover lattice coordinates of x ∈ span(B)
    let gram_b: linalg::Matrix = b
        .iter()
        .map(|r| b.iter().map(|s| dot_q(r, s)).collect())
        .collect();
    let gram_b_inv = linalg::inverse(&gram_b)?;
    let norm_sq = Rational::from_integer(BigInt::from(h.normal_norm_sq(i)));
    let fact = Rational::from_integer(rational::factorial(n - 1));
    let fact_sq = &fact * &fact;

    let mut total = Rational::zero();
    for simplex in triangulate_face(v, &on, n - 1) {
        let base = &v.vertices()[simplex[0]];
        let edges: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&j| v.vertices()[j].iter().zip(base).map(|(a, c)| a - c).collect())
            .collect();
        let coords: linalg::Matrix = edges
            .iter()
            .map(|e| {
                let rhs: Vec<Rational> = b.iter().map(|r| dot_q(r, e)).collect();
                gram_b_inv.iter().map(|row| dot_q(row, &rhs)).collect()
            })
            .collect();
        let lattice_vol = linalg::determinant(&coords).abs() / &fact;
        let gram: linalg::Matrix = edges
            .iter()
            .map(|r| edges.iter().map(|s| dot_q(r, s)).collect())
            .collect();
        let euclid_sq = linalg::determinant(&gram);
        if euclid_sq != &fact_sq * &norm_sq * &lattice_vol * &lattice_vol {
            return Err(Error::Invariant(format!(
                "facet {i}: lattice and Euclidean facet volumes disagree"
            )));
        }
        total += lattice_vol;
    }
    Ok(total)
}

fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sum of the lattice-normalized facet volumes.
pub fn boundary_volume(h: &HRep, v: &VRep) -> Result<Rational> {
    (0..h.facet_count())
        .map(|i| facet_volume_normalized(h, v, i))
        .sum()
}

/// Volume of `Δ(λ)` by full vertex enumeration, if it has the given
/// combinatorial type.
fn chamber_volume(h: &HRep, offsets: Vec<Rational>, chamber: &CombinatorialType) -> Option<Rational> {
    let v = polytope::enumerate_vertices(&h.with_offsets(offsets));
    let ty = CombinatorialType(v.incidence().iter().cloned().collect());
    if &ty != chamber {
        return None;
    }
    polytope_volume(&v).ok()
}

/// Principal-lattice nodes `{t ∈ ℕ^d : |t| ≤ degree}`.
pub fn principal_lattice(d: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree as u32, &mut vec![0; d], &mut out);
    out
}

/// Exact volumes of `Δ(μ + step·t)` on the principal lattice.
#[derive(Clone, Debug)]
pub struct ChamberSamples {
    pub step: Rational,
    pub nodes: Vec<Vec<u32>>,
    pub values: Vec<Rational>,
    pub chamber: CombinatorialType,
}

/// Combinatorial data of a simple polytope that stays fixed inside its
/// chamber: each vertex's facet basis with the inverse of its normal matrix,
/// and a triangulation by vertex index.
///
/// Inside the chamber a vertex is `N_S⁻¹ λ_S`. If every such point is
/// feasible with exactly `S` tight, the vertex graph is unchanged, so
/// `Δ(λ)` has the base combinatorial type.
struct ChamberFrame {
    bases: Vec<Vec<usize>>,
    inverses: Vec<linalg::Matrix>,
    simplices: Vec<Vec<usize>>,
}

impl ChamberFrame {
    fn new(h: &HRep) -> Result<Self> {
        let n = h.dim();
        let v = polytope::enumerate_vertices(h);
        let bases: Vec<Vec<usize>> = v.incidence().iter().map(|s| s.iter().copied().collect()).collect();
        if bases.iter().any(|b| b.len() != n) {
            return Err(Error::NotSimple);
        }
        let inverses = bases
            .iter()
            .map(|b| {
                let m: linalg::Matrix = b
                    .iter()
                    .map(|&i| h.normal(i).iter().map(|&x| rational::int(x)).collect())
                    .collect();
                linalg::inverse(&m)
            })
            .collect::<Result<_>>()?;
        let all: Vec<usize> = (0..v.len()).collect();
        Ok(Self {
            bases,
            inverses,
            simplices: triangulate_face(&v, &all, n),
        })
    }

    fn vertices_at(&self, h: &HRep, lambda: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        let mut out = Vec::with_capacity(self.bases.len());
        for (basis, inv) in self.bases.iter().zip(&self.inverses) {
            let x: Vec<Rational> = inv
                .iter()
                .map(|row| row.iter().zip(basis).map(|(a, &i)| a * &lambda[i]).sum())
                .collect();
            let strict = (0..h.facet_count())
                .filter(|i| !basis.contains(i))
                .all(|i| polytope::dot(h.normal(i), &x) < lambda[i]);
            if !strict {
                return None;
            }
            out.push(x);
        }
        Some(out)
    }

    fn volume_at(&self, h: &HRep, lambda: &[Rational]) -> Option<Rational> {
        let verts = self.vertices_at(h, lambda)?;
        let mut total = Rational::zero();
        for s in &self.simplices {
            let pts: Vec<Vec<Rational>> = s.iter().map(|&j| verts[j].clone()).collect();
            total += simplex_volume(&pts).ok()?;
        }
        Some(total)
    }
}

fn initial_step(h: &HRep) -> Rational {
    let v = polytope::enumerate_vertices(h);
    let denom = rational::denominator_lcm(h.offsets().iter().chain(v.vertices().iter().flatten()));
    Rational::new(BigInt::one(), denom * BigInt::from(4 * h.dim()))
}

fn offsets_at(h: &HRep, step: &Rational, t: &[Rational]) -> Vec<Rational> {
    h.offsets()
        .iter()
        .zip(t)
        .map(|(mu, ti)| mu + step * ti)
        .collect()
}

fn held_out_points(d: usize) -> Vec<Vec<Rational>> {
    (0..HELD_OUT_SAMPLES)
        .map(|j| {
            (0..d)
                .map(|i| rational::frac((((i + 1) * (j + 2)) % 7 + 1) as i64, 8))
                .collect()
        })
        .collect()
}

/// Samples volumes inside the chamber of the base offsets, halving the step
/// whenever a sample (or a held-out point) changes combinatorial type.
pub fn sample_chamber(h: &HRep, exec: Execution) -> Result<ChamberSamples> {
    let chamber = polytope::combinatorial_type(h);
    let frame = ChamberFrame::new(h)?;
    let nodes = principal_lattice(h.facet_count(), h.dim());
    let held_out = held_out_points(h.facet_count());
    let mut step = initial_step(h);
    for _ in 0..=MAX_CHAMBER_RETRIES {
        let values = par::map(exec, &nodes, |t| {
            let t: Vec<Rational> = t.iter().map(|&k| rational::int(k.into())).collect();
            frame.volume_at(h, &offsets_at(h, &step, &t))
        });
        let held_ok = held_out
            .iter()
            .all(|t| frame.vertices_at(h, &offsets_at(h, &step, t)).is_some());
        if held_ok && values.iter().all(Option::is_some) {
            return Ok(ChamberSamples {
                step,
                nodes,
                values: values.into_iter().map(Option::unwrap).collect(),
                chamber,
            });
        }
        log::debug!("sample left the chamber at step {step}; halving");
        step /= rational::int(2);
    }
    Err(Error::ChamberRetriesExhausted(MAX_CHAMBER_RETRIES))
}

/// Newton form on the principal lattice: forward differences at the origin
/// times falling-factorial binomials `C(t_i, α_i)`, rewritten in `λ`.
fn interpolate_newton(h: &HRep, s: &ChamberSamples) -> MultiPoly {
    let d = h.facet_count();
    let n = h.dim();
    let index: std::collections::HashMap<&[u32], usize> =
        s.nodes.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();

    // basis[i][a] = C((λ_i − μ_i)/step, a)
    let inv = Rational::one() / &s.step;
    let basis: Vec<Vec<MultiPoly>> = (0..d)
        .map(|i| {
            let shifted = MultiPoly::var(d, i)
                .scale(&inv)
                .add(&MultiPoly::constant(d, -(&h.offsets()[i] * &inv)))
                .expect("same variable count");
            let mut out = vec![MultiPoly::one(d)];
            for a in 1..=n {
                let factor = shifted
                    .add(&MultiPoly::constant(d, rational::int(1 - a as i64)))
                    .expect("same variable count")
                    .scale(&rational::frac(1, a as i64));
                let next = out[a - 1].mul(&factor).expect("same variable count");
                out.push(next);
            }
            out
        })
        .collect();

    let mut poly = MultiPoly::zero(d);
    for alpha in &s.nodes {
        let mut diff = Rational::zero();
        for beta in sub_multi_indices(alpha) {
            let sign_odd = alpha.iter().zip(&beta).map(|(a, b)| a - b).sum::<u32>() % 2 == 1;
            let weight: BigInt = alpha
                .iter()
                .zip(&beta)
                .map(|(&a, &b)| rational::binomial(a as usize, b as usize))
                .product();
            let term = &s.values[index[beta.as_slice()]] * Rational::from_integer(weight);
            if sign_odd {
                diff -= term;
            } else {
                diff += term;
            }
        }
        if diff.is_zero() {
            continue;
        }
        let mut term = MultiPoly::constant(d, diff);
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                term = term.mul(&basis[i][a as usize]).expect("same variable count");
            }
        }
        poly = poly.add(&term).expect("same variable count");
    }
    poly
}

fn sub_multi_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |b| {
                    let mut p = prefix.clone();
                    p.push(b);
                    p
                })
            })
            .collect();
    }
    out
}

/// Dense monomial interpolation on the same samples through
/// [`linalg::solve_linear_system`]. Independent of the Newton route; the
/// system has `C(d+n, n)` unknowns, so this is for small facet counts.
pub fn interpolate_dense(h: &HRep, s: &ChamberSamples) -> Result<MultiPoly> {
    let d = h.facet_count();
    let monomials = &s.nodes;
    let a: linalg::Matrix = s
        .nodes
        .iter()
        .map(|t| {
            monomials
                .iter()
                .map(|e| {
                    let v: BigInt = t
                        .iter()
                        .zip(e)
                        .map(|(&ti, &ei)| BigInt::from(ti).pow(ei))
                        .product();
                    Rational::from_integer(v)
                })
                .collect()
        })
        .collect();
    let coeffs = linalg::solve_linear_system(&a, &s.values)?;
    let in_t = MultiPoly::from_terms(d, monomials.iter().cloned().zip(coeffs));
    let inv = Rational::one() / &s.step;
    let scale = vec![inv.clone(); d];
    let shift: Vec<Rational> = h.offsets().iter().map(|mu| -(mu * &inv)).collect();
    in_t.affine_substitute(&scale, &shift)
}

fn verify_volume_polynomial(h: &HRep, s: &ChamberSamples, poly: &MultiPoly) -> Result<()> {
    if poly.total_degree() != Some(h.dim()) {
        return Err(Error::Invariant(format!(
            "volume polynomial has degree {:?}, expected {}",
            poly.total_degree(),
            h.dim()
        )));
    }
    for t in held_out_points(h.facet_count()) {
        let lambda = offsets_at(h, &s.step, &t);
        let direct = chamber_volume(h, lambda.clone(), &s.chamber)
            .ok_or_else(|| Error::Invariant("held-out sample left the chamber".into()))?;
        if poly.eval(&lambda)? != direct {
            return Err(Error::Invariant(
                "volume polynomial disagrees with a held-out volume".into(),
            ));
        }
    }
    Ok(())
}

/// Interpolates `vol(Δ(λ))` and verifies it on held-out offsets.
pub fn volume_polynomial(h: &HRep) -> Result<VolumePolynomial> {
    volume_polynomial_with(h, Execution::available())
}

pub fn volume_polynomial_with(h: &HRep, exec: Execution) -> Result<VolumePolynomial> {
    let samples = sample_chamber(h, exec)?;
    let poly = interpolate_newton(h, &samples);
    verify_volume_polynomial(h, &samples, &poly)?;
    Ok(VolumePolynomial {
        poly,
        hrep: h.clone(),
        chamber: samples.chamber,
        step: samples.step,
    })
}

/// `Σ_i ∂vol/∂λ_i`, checked at the base offsets against the direct
/// boundary volume.
pub fn boundary_volume_polynomial(vp: &VolumePolynomial) -> Result<BoundaryVolumePolynomial> {
    let poly = vp.poly.divergence_sum();
    let v = polytope::enumerate_vertices(&vp.hrep);
    let direct = boundary_volume(&vp.hrep, &v)?;
    let at_mu = poly.eval(vp.base_offsets())?;
    if at_mu != direct {
        return Err(Error::Invariant(format!(
            "derivative boundary volume {at_mu} differs from facet sum {direct}"
        )));
    }
    Ok(BoundaryVolumePolynomial {
        poly,
        base_offsets: vp.base_offsets().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::enumerate_vertices;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn delta2() -> HRep {
        HRep::new(2, vec![vec![-1, 0], vec![0, -1], vec![1, 1]], ints(&[0, 0, 1])).unwrap()
    }

    fn square() -> HRep {
        HRep::new(
            2,
            vec![vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1]],
            ints(&[0, 0, 1, 1]),
        )
        .unwrap()
    }

    fn delta3() -> HRep {
        HRep::new(
            3,
            vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1], vec![1, 1, 1]],
            ints(&[0, 0, 0, 1]),
        )
        .unwrap()
    }

    fn segment() -> HRep {
        HRep::new(1, vec![vec![-1], vec![1]], ints(&[0, 1])).unwrap()
    }

    #[test]
    fn simplex_volumes() {
        assert_eq!(simplex_volume(&[ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])]).unwrap(), frac(1, 2));
        assert_eq!(
            simplex_volume(&[ints(&[0, 0, 0]), ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])])
                .unwrap(),
            frac(1, 6)
        );
        assert_eq!(simplex_volume(&[ints(&[0, 0]), ints(&[2, 0]), ints(&[0, 3])]).unwrap(), int(3));
        assert_eq!(simplex_volume(&[ints(&[0, 0]), ints(&[1, 1]), ints(&[2, 2])]).unwrap(), int(0));
        assert!(simplex_volume(&[ints(&[0, 0]), ints(&[1, 1])]).is_err());
    }

    #[test]
    fn polytope_volumes() {
        let trap = HRep::new(
            2,
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 1]],
            ints(&[0, 0, 1, 2]),
        )
        .unwrap();
        // unit square [0,1]² plus the triangle (1,0),(2,0),(1,1)
        assert_eq!(polytope_volume(&enumerate_vertices(&trap)).unwrap(), frac(3, 2));
        assert_eq!(polytope_volume(&enumerate_vertices(&delta3())).unwrap(), frac(1, 6));
        assert_eq!(polytope_volume(&enumerate_vertices(&segment())).unwrap(), int(1));
    }

    #[test]
    fn lattice_basis_is_orthogonal_and_unimodular() {
        for normal in [vec![1, 1], vec![1, 1, 1], vec![2, -3, 5], vec![0, 0, 1, 0], vec![3, 5]] {
            let b = hyperplane_lattice_basis(&normal);
            assert_eq!(b.len(), normal.len() - 1);
            for r in &b {
                assert_eq!(r.iter().zip(&normal).map(|(a, c)| a * c).sum::<i64>(), 0);
            }
            let mut full: linalg::Matrix =
                b.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            full.push(normal.iter().map(|&x| int(x)).collect());
            // det of [basis; n] is ±‖n‖² exactly when the basis has covolume ‖n‖
            let norm_sq: i64 = normal.iter().map(|x| x * x).sum();
            assert_eq!(linalg::determinant(&full).abs(), int(norm_sq));
        }
    }

    #[test]
    fn facet_volumes() {
        let h2 = delta2();
        let v2 = enumerate_vertices(&h2);
        assert_eq!(facet_volume_normalized(&h2, &v2, 2).unwrap(), int(1));
        let h3 = delta3();
        let v3 = enumerate_vertices(&h3);
        assert_eq!(facet_volume_normalized(&h3, &v3, 3).unwrap(), frac(1, 2));
        let sq = square();
        let vs = enumerate_vertices(&sq);
        for i in 0..4 {
            assert_eq!(facet_volume_normalized(&sq, &vs, i).unwrap(), int(1));
        }
        let seg = segment();
        assert_eq!(facet_volume_normalized(&seg, &enumerate_vertices(&seg), 0).unwrap(), int(1));
    }

    #[test]
    fn boundary_volumes() {
        let h2 = delta2();
        assert_eq!(boundary_volume(&h2, &enumerate_vertices(&h2)).unwrap(), int(3));
        let h3 = delta3();
        assert_eq!(boundary_volume(&h3, &enumerate_vertices(&h3)).unwrap(), int(2));
        let sq = square();
        assert_eq!(boundary_volume(&sq, &enumerate_vertices(&sq)).unwrap(), int(4));
    }

    #[test]
    fn segment_volume_polynomial() {
        let vp = volume_polynomial(&segment()).unwrap();
        let expect = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1)).unwrap();
        assert_eq!(vp.poly, expect);
        let bvp = boundary_volume_polynomial(&vp).unwrap();
        assert_eq!(bvp.poly, MultiPoly::constant(2, int(2)));
    }

    #[test]
    fn square_volume_polynomial() {
        let vp = volume_polynomial(&square()).unwrap();
        let x = MultiPoly::var(4, 0).add(&MultiPoly::var(4, 2)).unwrap();
        let y = MultiPoly::var(4, 1).add(&MultiPoly::var(4, 3)).unwrap();
        assert_eq!(vp.poly, x.mul(&y).unwrap());
        let bvp = boundary_volume_polynomial(&vp).unwrap();
        assert_eq!(bvp.poly, x.scale(&int(2)).add(&y.scale(&int(2))).unwrap());
        assert_eq!(bvp.poly.eval(&ints(&[0, 0, 1, 1])).unwrap(), int(4));
    }

    #[test]
    fn triangle_volume_polynomial() {
        let vp = volume_polynomial(&delta2()).unwrap();
        let s = MultiPoly::var(3, 0)
            .add(&MultiPoly::var(3, 1))
            .unwrap()
            .add(&MultiPoly::var(3, 2))
            .unwrap();
        assert_eq!(vp.poly, s.pow(2).scale(&frac(1, 2)));
        let bvp = boundary_volume_polynomial(&vp).unwrap();
        assert_eq!(bvp.poly, s.scale(&int(3)));
    }

    #[test]
    fn dense_and_newton_routes_agree() {
        for h in [segment(), delta2(), square(), delta3()] {
            let s = sample_chamber(&h, Execution::Sequential).unwrap();
            let newton = interpolate_newton(&h, &s);
            assert_eq!(interpolate_dense(&h, &s).unwrap(), newton);
        }
    }

    #[test]
    fn principal_lattice_size() {
        assert_eq!(principal_lattice(8, 4).len(), 495);
        assert_eq!(principal_lattice(3, 2).len(), 10);
    }
}
