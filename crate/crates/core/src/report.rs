//! Serializable verification reports.
//!
//! Rationals are encoded as `"p/q"` strings exactly as in the input schema,
//! and polynomial coefficients are listed in ascending degree.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{self, CountingPolynomials, DelzantPolytope, Pipeline};
use crate::error::Result;
use crate::par::Execution;
use crate::poly::UniPoly;
use crate::polytope::{self, HRep};
use crate::rational::{self, Rational};
use crate::volume;

/// Dilations at which the boundary polynomial must take integer values.
pub const INTEGRALITY_RANGE: u64 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub integral: bool,
    pub simple: bool,
    pub delzant: bool,
}

impl Validation {
    pub fn of(h: &HRep) -> Self {
        let v = polytope::enumerate_vertices(h);
        let integral = polytope::is_integral(&v);
        let simple = polytope::is_simple(&v);
        let delzant = integral && simple && polytope::is_delzant(h, &v).unwrap_or(false);
        Self {
            integral,
            simple,
            delzant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialEntry {
    pub text: String,
    pub coefficients: Vec<String>,
}

impl From<&UniPoly> for PolynomialEntry {
    fn from(p: &UniPoly) -> Self {
        Self {
            text: p.to_string(),
            coefficients: p.coeffs().iter().map(rational::render).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialsDocument {
    pub digest: String,
    pub ehrhart: PolynomialEntry,
    pub interior: PolynomialEntry,
    pub boundary: PolynomialEntry,
}

impl From<&CountingPolynomials> for PolynomialsDocument {
    fn from(p: &CountingPolynomials) -> Self {
        Self {
            digest: p.digest.clone(),
            ehrhart: (&p.ehrhart).into(),
            interior: (&p.interior).into(),
            boundary: (&p.boundary).into(),
        }
    }
}

/// Polynomial values against oracle counts at one dilation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub k: u64,
    pub total: u64,
    pub boundary: u64,
    pub interior: u64,
    pub ehrhart_value: String,
    pub interior_value: String,
    pub boundary_value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub digest: String,
    pub dimension: usize,
    pub facets: usize,
    pub validation: Validation,
    pub polynomials: PolynomialsDocument,
    pub oracle: Vec<OracleRow>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Lacunarity: coefficients at degrees `n−2, n−4, …` vanish.
pub fn lacunary(boundary: &UniPoly, n: usize) -> bool {
    (2..=n)
        .step_by(2)
        .all(|gap| boundary.coeff(n - gap).is_zero())
}

fn show_degree(p: &UniPoly) -> String {
    p.degree().map_or_else(|| "-inf".into(), |d| d.to_string())
}

fn int_poly_value(p: &UniPoly, k: u64) -> Rational {
    p.eval(&rational::int(k as i64))
}

/// Runs the full checklist plus oracle comparison for `k = 1..=kmax`.
pub fn verify_polytope(h: &HRep, kmax: u64, guard: u128, exec: Execution) -> Result<VerifyReport> {
    let validation = Validation::of(h);
    let p = DelzantPolytope::new(h.clone())?;
    let pipe = Pipeline::run_with(&p, exec)?;
    let polys = &pipe.polynomials;
    let n = h.dim();
    let mut checks = Vec::new();

    checks.push(Check::new(
        "subtraction identity",
        pipe.by_subtraction == polys.boundary,
        format!("ehrhart - interior = {}", pipe.by_subtraction),
    ));

    let degree_ok = polys.boundary.degree() == Some(n - 1) && polys.ehrhart.degree() == Some(n);
    checks.push(Check::new(
        "degree",
        degree_ok,
        format!(
            "boundary degree {}, ehrhart degree {}, dimension {n}",
            show_degree(&polys.boundary),
            show_degree(&polys.ehrhart)
        ),
    ));

    let bvol = volume::boundary_volume(&p.hrep, &p.vrep)?;
    checks.push(Check::new(
        "leading coefficient",
        polys.boundary.leading() == bvol && polys.boundary.degree() == Some(n - 1),
        format!(
            "leading {} vs boundary volume {}",
            rational::render(&polys.boundary.leading()),
            rational::render(&bvol)
        ),
    ));

    checks.push(Check::new(
        "lacunarity",
        lacunary(&polys.boundary, n),
        format!("boundary = {}", polys.boundary),
    ));

    let reflected = polys.ehrhart.reflect();
    let reflected = if n % 2 == 1 {
        reflected.scale(&rational::int(-1))
    } else {
        reflected
    };
    checks.push(Check::new(
        "reciprocity",
        reflected == polys.interior,
        format!("(-1)^n ehrhart(-k) = {reflected}"),
    ));

    // Σ∂ vol(Δ(λ)) = vol(∂Δ(λ)): along the dilation ray and facet by facet
    let vol = volume::polytope_volume(&p.vrep)?;
    let along_ray = pipe.boundary_volume.dilated()?;
    let mut monomial = vec![Rational::zero(); n];
    monomial[n - 1] = bvol.clone();
    let ray_ok = along_ray == UniPoly::new(monomial);
    let mut facet_ok = true;
    for i in 0..h.facet_count() {
        let slope = pipe.volume.poly.partial(i)?.eval(h.offsets())?;
        facet_ok &= slope == volume::facet_volume_normalized(&p.hrep, &p.vrep, i)?;
    }
    let mut vol_mono = vec![Rational::zero(); n + 1];
    vol_mono[n] = vol.clone();
    let homogeneous = pipe.volume.dilated()? == UniPoly::new(vol_mono);
    checks.push(Check::new(
        "derivative identity",
        ray_ok && facet_ok && homogeneous,
        format!(
            "vol = {}, vol(boundary) = {}, per-facet slopes {}",
            rational::render(&vol),
            rational::render(&bvol),
            if facet_ok { "match" } else { "differ" }
        ),
    ));

    let integral_ok = (1..=INTEGRALITY_RANGE).all(|k| {
        let v = int_poly_value(&polys.boundary, k);
        rational::is_integer(&v) && !v.is_negative()
    });
    checks.push(Check::new(
        "integrality",
        integral_ok,
        format!("boundary values at k = 1..{INTEGRALITY_RANGE}"),
    ));

    let mut oracle = Vec::new();
    for k in 1..=kmax {
        let c = counting::count_lattice_points_with(h, k, false, guard, exec)?;
        let e = int_poly_value(&polys.ehrhart, k);
        let i = int_poly_value(&polys.interior, k);
        let b = int_poly_value(&polys.boundary, k);
        let pass = e == rational::int(c.total as i64)
            && i == rational::int(c.interior as i64)
            && b == rational::int(c.boundary as i64);
        oracle.push(OracleRow {
            k,
            total: c.total,
            boundary: c.boundary,
            interior: c.interior,
            ehrhart_value: rational::render(&e),
            interior_value: rational::render(&i),
            boundary_value: rational::render(&b),
            pass,
        });
    }
    let oracle_ok = oracle.iter().all(|r| r.pass);
    checks.push(Check::new(
        "oracle agreement",
        oracle_ok,
        format!("k = 1..{kmax}"),
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        digest: polys.digest.clone(),
        dimension: n,
        facets: h.facet_count(),
        validation,
        polynomials: polys.into(),
        oracle,
        checks,
        pass,
    })
}
