//! The three counting polynomials and the brute-force lattice oracle.
//!
//! * Ehrhart: `Π Td(∂_i) vol(Δ(λ))` at `λ = kμ`.
//! * Interior: `Π Td(−∂_i) vol(Δ(λ))` at `λ = kμ`.
//! * Boundary: `Π Â(∂_i) · (1/Â)(Σ ∂_i) vol(∂Δ(λ))` at `λ = kμ`.
//!
//! The oracle walks the bounding box of `kΔ`, solving the innermost
//! coordinate as an interval so each line costs one pass over the facets.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::poly::UniPoly;
use crate::polytope::{self, HRep, VRep};
use crate::rational::{self, Rational};
use crate::series;
use crate::volume::{self, BoundaryVolumePolynomial, VolumePolynomial};

/// Default cap on bounding-box cells for the oracle.
pub const DEFAULT_GUARD: u128 = 100_000_000;

/// Ehrhart, interior and boundary counting polynomials of one polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomials {
    pub ehrhart: UniPoly,
    pub interior: UniPoly,
    pub boundary: UniPoly,
    pub digest: String,
}

/// Oracle counts for one dilation factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub k: u64,
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    /// Sorted lattice points, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i64>>>,
}

/// A validated integral Delzant polytope with its vertex data.
#[derive(Clone, Debug)]
pub struct DelzantPolytope {
    pub hrep: HRep,
    pub vrep: VRep,
}

impl DelzantPolytope {
    pub fn new(hrep: HRep) -> Result<Self> {
        let vrep = polytope::enumerate_vertices(&hrep);
        polytope::require_delzant_integral(&hrep, &vrep)?;
        Ok(Self { hrep, vrep })
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim()
    }
}

/// Every intermediate of the polynomial pipeline, for reporting.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub volume: VolumePolynomial,
    pub boundary_volume: BoundaryVolumePolynomial,
    pub polynomials: CountingPolynomials,
    /// `ehrhart − interior`, which must equal `polynomials.boundary`.
    pub by_subtraction: UniPoly,
}

impl Pipeline {
    pub fn run(p: &DelzantPolytope) -> Result<Self> {
        Self::run_with(p, Execution::available())
    }

    pub fn run_with(p: &DelzantPolytope, exec: Execution) -> Result<Self> {
        let h = &p.hrep;
        let n = h.dim();
        let d = h.facet_count();
        let volume = volume::volume_polynomial_with(h, exec)?;
        let boundary_volume = volume::boundary_volume_polynomial(&volume)?;

        let ehrhart = apply_and_dilate(&series::todd_operator(d, n), &volume.poly, h)?;
        let interior = apply_and_dilate(&series::todd_neg_operator(d, n), &volume.poly, h)?;
        let boundary = apply_and_dilate(
            &series::boundary_operator(d, n.saturating_sub(1)),
            &boundary_volume.poly,
            h,
        )?;
        let by_subtraction = ehrhart.sub(&interior);
        Ok(Self {
            volume,
            boundary_volume,
            polynomials: CountingPolynomials {
                ehrhart,
                interior,
                boundary,
                digest: h.digest(),
            },
            by_subtraction,
        })
    }
}

fn apply_and_dilate(
    op: &series::DiffOperator,
    p: &crate::poly::MultiPoly,
    h: &HRep,
) -> Result<UniPoly> {
    series::apply_operator(op, p)?.substitute_scaled(h.offsets())
}

pub fn ehrhart_polynomial(h: &HRep) -> Result<UniPoly> {
    let p = DelzantPolytope::new(h.clone())?;
    let vp = volume::volume_polynomial(&p.hrep)?;
    apply_and_dilate(&series::todd_operator(h.facet_count(), h.dim()), &vp.poly, h)
}

pub fn interior_polynomial(h: &HRep) -> Result<UniPoly> {
    let p = DelzantPolytope::new(h.clone())?;
    let vp = volume::volume_polynomial(&p.hrep)?;
    apply_and_dilate(&series::todd_neg_operator(h.facet_count(), h.dim()), &vp.poly, h)
}

/// The boundary counting polynomial `R_∂Δ(k)` via the `Â` operator.
pub fn boundary_polynomial(h: &HRep) -> Result<UniPoly> {
    let p = DelzantPolytope::new(h.clone())?;
    let vp = volume::volume_polynomial(&p.hrep)?;
    let bvp = volume::boundary_volume_polynomial(&vp)?;
    apply_and_dilate(
        &series::boundary_operator(h.facet_count(), h.dim().saturating_sub(1)),
        &bvp.poly,
        h,
    )
}

/// `ehrhart − interior`, required to equal [`boundary_polynomial`].
pub fn boundary_polynomial_by_subtraction(h: &HRep) -> Result<UniPoly> {
    let p = DelzantPolytope::new(h.clone())?;
    let pipe = Pipeline::run(&p)?;
    if pipe.by_subtraction != pipe.polynomials.boundary {
        return Err(Error::Invariant(format!(
            "ehrhart − interior = {} but the boundary operator gives {}",
            pipe.by_subtraction, pipe.polynomials.boundary
        )));
    }
    Ok(pipe.by_subtraction)
}

pub fn counting_polynomials(h: &HRep) -> Result<CountingPolynomials> {
    let p = DelzantPolytope::new(h.clone())?;
    Ok(Pipeline::run(&p)?.polynomials)
}

/// Integer data of `kΔ`: normals, right-hand sides, and bounding box.
struct Dilate {
    normals: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Dilate {
    fn new(h: &HRep, v: &VRep, k: u64, guard: u128) -> Result<Self> {
        if !polytope::is_integral(v) {
            return Err(Error::NotIntegral);
        }
        let k = i64::try_from(k).map_err(|_| Error::GuardExceeded {
            cells: u128::MAX,
            guard,
        })?;
        let kq = rational::int(k);
        // integral vertices and primitive normals force integral offsets
        let rhs = h
            .offsets()
            .iter()
            .map(|mu| rational::to_i64(&(mu * &kq)).ok_or(Error::NotIntegral))
            .collect::<Result<Vec<_>>>()?;
        let n = h.dim();
        let coord = |j: usize| v.vertices().iter().map(move |x| rational::to_i64(&x[j]).unwrap() * k);
        let lo: Vec<i64> = (0..n).map(|j| coord(j).min().unwrap()).collect();
        let hi: Vec<i64> = (0..n).map(|j| coord(j).max().unwrap()).collect();
        let cells = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| (b - a + 1) as u128)
            .try_fold(1u128, |acc, s| acc.checked_mul(s))
            .unwrap_or(u128::MAX);
        if cells > guard {
            return Err(Error::GuardExceeded { cells, guard });
        }
        Ok(Self {
            normals: h.normals().to_vec(),
            rhs,
            lo,
            hi,
        })
    }

    fn dim(&self) -> usize {
        self.lo.len()
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    interior: u64,
    weights: Vec<Vec<i64>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.interior += other.interior;
        self.weights.extend(other.weights);
        self
    }
}

/// Walks coordinates `depth..n-1`; the last coordinate is solved as an interval.
fn walk(dl: &Dilate, prefix: &mut Vec<i64>, partial: &mut Vec<i64>, want: bool, out: &mut Tally) {
    let c = prefix.len();
    let n = dl.dim();
    if c + 1 < n {
        for x in dl.lo[c]..=dl.hi[c] {
            prefix.push(x);
            for (s, nrm) in partial.iter_mut().zip(&dl.normals) {
                *s += nrm[c] * x;
            }
            walk(dl, prefix, partial, want, out);
            for (s, nrm) in partial.iter_mut().zip(&dl.normals) {
                *s -= nrm[c] * x;
            }
            prefix.pop();
        }
        return;
    }
    // innermost coordinate: n_ic · x ≤ r_i, strict for interior
    let (mut lo, mut hi) = (dl.lo[c], dl.hi[c]);
    let (mut slo, mut shi) = (lo, hi);
    let mut strict_ok = true;
    for ((nrm, b), s) in dl.normals.iter().zip(&dl.rhs).zip(partial.iter()) {
        let a = nrm[c];
        let r = b - s;
        match a.signum() {
            1 => {
                hi = hi.min(Integer::div_floor(&r, &a));
                shi = shi.min(Integer::div_ceil(&r, &a) - 1);
            }
            -1 => {
                lo = lo.max(Integer::div_ceil(&r, &a));
                slo = slo.max(Integer::div_floor(&r, &a) + 1);
            }
            _ => {
                if r < 0 {
                    return;
                }
                if r == 0 {
                    strict_ok = false;
                }
            }
        }
    }
    if lo > hi {
        return;
    }
    out.total += (hi - lo + 1) as u64;
    if strict_ok && slo <= shi {
        out.interior += (shi - slo + 1) as u64;
    }
    if want {
        for x in lo..=hi {
            let tight = dl
                .normals
                .iter()
                .zip(&dl.rhs)
                .zip(partial.iter())
                .any(|((nrm, b), s)| s + nrm[c] * x == *b);
            if tight {
                let mut p = prefix.clone();
                p.push(x);
                out.weights.push(p);
            }
        }
    }
}

fn enumerate(dl: &Dilate, want_weights: bool, exec: Execution) -> Tally {
    let n = dl.dim();
    let d = dl.normals.len();
    if n == 1 {
        let mut t = Tally::default();
        walk(dl, &mut Vec::new(), &mut vec![0; d], want_weights, &mut t);
        return t;
    }
    let slabs: Vec<i64> = (dl.lo[0]..=dl.hi[0]).collect();
    let parts = par::map(exec, &slabs, |&x0| {
        let mut t = Tally::default();
        let mut partial: Vec<i64> = dl.normals.iter().map(|nrm| nrm[0] * x0).collect();
        walk(dl, &mut vec![x0], &mut partial, want_weights, &mut t);
        t
    });
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// Brute-force counts of `kΔ ∩ ℤⁿ`, split into boundary and interior.
pub fn count_lattice_points(
    h: &HRep,
    k: u64,
    with_weights: bool,
    guard: u128,
) -> Result<CountReport> {
    count_lattice_points_with(h, k, with_weights, guard, Execution::available())
}

pub fn count_lattice_points_with(
    h: &HRep,
    k: u64,
    with_weights: bool,
    guard: u128,
    exec: Execution,
) -> Result<CountReport> {
    if k == 0 {
        return Err(Error::DimensionMismatch("dilation factor must be positive".into()));
    }
    let v = polytope::enumerate_vertices(h);
    let dl = Dilate::new(h, &v, k, guard)?;
    let mut tally = enumerate(&dl, with_weights, exec);
    let weights = with_weights.then(|| {
        tally.weights.sort();
        std::mem::take(&mut tally.weights)
    });
    Ok(CountReport {
        k,
        total: tally.total,
        boundary: tally.total - tally.interior,
        interior: tally.interior,
        weights,
    })
}

/// Sorted lattice points of `kΔ`, or of `k∂Δ` with `boundary_only`.
pub fn quantization_weights(
    h: &HRep,
    k: u64,
    boundary_only: bool,
    guard: u128,
) -> Result<Vec<Vec<i64>>> {
    if boundary_only {
        return Ok(count_lattice_points(h, k, true, guard)?
            .weights
            .unwrap_or_default());
    }
    let v = polytope::enumerate_vertices(h);
    let dl = Dilate::new(h, &v, k, guard)?;
    let mut all = Vec::new();
    let n = dl.dim();
    let mut idx = dl.lo.clone();
    loop {
        let x: Vec<Rational> = idx.iter().map(|&c| rational::int(c)).collect();
        let inside = dl
            .normals
            .iter()
            .zip(&dl.rhs)
            .all(|(nrm, b)| polytope::dot(nrm, &x) <= rational::int(*b));
        if inside {
            all.push(idx.clone());
        }
        // odometer over the box, last coordinate fastest
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(all);
            }
            j -= 1;
            if idx[j] < dl.hi[j] {
                idx[j] += 1;
                for (t, l) in idx.iter_mut().zip(&dl.lo).skip(j + 1) {
                    *t = *l;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn segment() -> HRep {
        HRep::new(1, vec![vec![-1], vec![1]], ints(&[0, 1])).unwrap()
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

    #[test]
    fn interval_polynomials() {
        let h = segment();
        assert_eq!(ehrhart_polynomial(&h).unwrap(), UniPoly::from_ints(&[1, 1]));
        assert_eq!(interior_polynomial(&h).unwrap(), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(boundary_polynomial(&h).unwrap(), UniPoly::from_ints(&[2]));
        assert_eq!(boundary_polynomial_by_subtraction(&h).unwrap(), UniPoly::from_ints(&[2]));
    }

    #[test]
    fn square_polynomials() {
        let h = square();
        assert_eq!(ehrhart_polynomial(&h).unwrap(), UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(interior_polynomial(&h).unwrap(), UniPoly::from_ints(&[1, -2, 1]));
        assert_eq!(boundary_polynomial_by_subtraction(&h).unwrap(), UniPoly::from_ints(&[0, 4]));
    }

    #[test]
    fn triangle_counts() {
        let r = count_lattice_points(&delta2(), 1, true, DEFAULT_GUARD).unwrap();
        assert_eq!((r.total, r.boundary, r.interior), (3, 3, 0));
        assert_eq!(r.weights.unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn interval_weights() {
        assert_eq!(
            quantization_weights(&segment(), 3, true, DEFAULT_GUARD).unwrap(),
            vec![vec![0], vec![3]]
        );
        assert_eq!(quantization_weights(&segment(), 3, false, DEFAULT_GUARD).unwrap().len(), 4);
        assert_eq!(quantization_weights(&delta2(), 2, false, DEFAULT_GUARD).unwrap().len(), 6);
    }

    #[test]
    fn guard_and_validation() {
        assert!(matches!(
            count_lattice_points(&square(), 1000, false, 1000),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(count_lattice_points(&square(), 0, false, DEFAULT_GUARD).is_err());
        let half = HRep::new(
            2,
            vec![vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1]],
            vec![int(0), int(0), crate::rational::frac(1, 2), crate::rational::frac(1, 2)],
        )
        .unwrap();
        assert_eq!(count_lattice_points(&half, 1, false, DEFAULT_GUARD), Err(Error::NotIntegral));
        assert_eq!(boundary_polynomial(&half).unwrap_err(), Error::NotIntegral);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for k in 1..4 {
            let a = count_lattice_points_with(&delta2(), k, true, DEFAULT_GUARD, Execution::Sequential)
                .unwrap();
            let b = count_lattice_points_with(&delta2(), k, true, DEFAULT_GUARD, Execution::Parallel)
                .unwrap();
            assert_eq!(a, b);
        }
    }
}
