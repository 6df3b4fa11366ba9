mod common;

use common::{derivative_identity_on_lattice, dilate_translate, product};
use delzant::rational::{frac, int};
use delzant::report::lacunary;
use delzant::{bundled, counting, polytope, volume, DelzantPolytope, HRep, Pipeline, UniPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn pipeline(h: &HRep) -> Pipeline {
    Pipeline::run(&DelzantPolytope::new(h.clone()).unwrap()).unwrap()
}

fn interval() -> HRep {
    delzant::parse_hrep(bundled::INTERVAL).unwrap()
}

fn monomial(c: delzant::Rational, degree: usize) -> UniPoly {
    let mut v = vec![delzant::Rational::zero(); degree + 1];
    v[degree] = c;
    UniPoly::new(v)
}

#[test]
fn volume_is_homogeneous() {
    for (name, h) in bundled::suite() {
        let vp = volume::volume_polynomial(&h).unwrap();
        let vol = volume::polytope_volume(&polytope::enumerate_vertices(&h)).unwrap();
        assert_eq!(vp.dilated().unwrap(), monomial(vol, h.dim()), "{name}");
    }
}

#[test]
fn divergence_is_boundary_volume() {
    for (name, h) in bundled::suite() {
        let vp = volume::volume_polynomial(&h).unwrap();
        assert!(derivative_identity_on_lattice(&vp), "{name}");
    }
}

#[test]
fn facet_slopes_at_perturbed_offsets() {
    for (name, h) in bundled::suite() {
        let vp = volume::volume_polynomial(&h).unwrap();
        for shift in [frac(1, 97), frac(1, 61), frac(1, 37)] {
            let offsets: Vec<_> = h
                .offsets()
                .iter()
                .enumerate()
                .map(|(i, mu)| mu + &shift * frac(i as i64 % 3, 2))
                .collect();
            let moved = HRep::new(h.dim(), h.normals().to_vec(), offsets.clone()).unwrap();
            assert_eq!(polytope::combinatorial_type(&moved), vp.chamber, "{name}");
            let v = polytope::enumerate_vertices(&moved);
            for i in 0..h.facet_count() {
                let slope = vp.poly.partial(i).unwrap().eval(&offsets).unwrap();
                let facet = volume::facet_volume_normalized(&moved, &v, i).unwrap();
                assert_eq!(slope, facet, "{name}, facet {i}");
            }
        }
    }
}

#[test]
fn dense_and_newton_interpolation_agree() {
    for name in ["delta2", "square", "trapezoid", "delta3"] {
        let h = bundled::load(name).unwrap();
        let samples = volume::sample_chamber(&h, delzant::Execution::available()).unwrap();
        let dense = volume::interpolate_dense(&h, &samples).unwrap();
        assert_eq!(dense, volume::volume_polynomial(&h).unwrap().poly, "{name}");
    }
}

#[test]
fn products_multiply_counting_polynomials() {
    let pairs = [("delta2", "delta2"), ("square", "trapezoid"), ("delta3", "interval")];
    for (a, b) in pairs {
        let load = |n: &str| bundled::load(n).unwrap();
        let (p, q) = (load(a), load(b));
        let (pp, pq) = (pipeline(&p).polynomials, pipeline(&q).polynomials);
        let prod = pipeline(&product(&p, &q)).polynomials;
        assert_eq!(prod.ehrhart, pp.ehrhart.mul(&pq.ehrhart), "{a} x {b}");
        assert_eq!(prod.interior, pp.interior.mul(&pq.interior), "{a} x {b}");
    }
}

#[test]
fn dilation_rescales_polynomials() {
    let h = bundled::load("trapezoid").unwrap();
    let base = pipeline(&h).polynomials;
    let big = pipeline(&dilate_translate(&h, 3, &[-1, 2])).polynomials;
    for k in 1..=6 {
        assert_eq!(big.boundary.eval_int(k), base.boundary.eval_int(3 * k));
        assert_eq!(big.ehrhart.eval_int(k), base.ehrhart.eval_int(3 * k));
    }
}

fn shapes() -> Vec<HRep> {
    let i = interval();
    let b = |n| bundled::load(n).unwrap();
    vec![
        product(&i, &i),
        product(&i, &b("delta2")),
        product(&b("trapezoid"), &i),
        product(&i, &b("delta3")),
        product(&b("prism"), &i),
        product(&b("delta2"), &b("delta2")),
        b("rectangle"),
        b("delta4"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn derived_polytopes_satisfy_identities(
        which in 0usize..8,
        m in 1i64..=3,
        t in prop::collection::vec(-2i64..=2, 4),
    ) {
        let base = &shapes()[which];
        let h = dilate_translate(base, m, &t[..base.dim()]);
        let n = h.dim();
        let p = DelzantPolytope::new(h.clone()).unwrap();
        let pipe = Pipeline::run(&p).unwrap();
        let polys = &pipe.polynomials;

        prop_assert_eq!(polys.boundary.degree(), Some(n - 1));
        let bvol = volume::boundary_volume(&p.hrep, &p.vrep).unwrap();
        prop_assert_eq!(polys.boundary.leading(), bvol);
        prop_assert!(lacunary(&polys.boundary, n));

        prop_assert_eq!(&pipe.by_subtraction, &polys.boundary);
        let sign = if n % 2 == 1 { int(-1) } else { int(1) };
        prop_assert_eq!(polys.ehrhart.reflect().scale(&sign), polys.interior.clone());
        prop_assert_eq!(pipe.volume.poly.divergence_sum(), pipe.boundary_volume.poly.clone());

        for k in 1..=2u64 {
            let c = counting::count_lattice_points(&h, k, false, counting::DEFAULT_GUARD).unwrap();
            prop_assert_eq!(polys.ehrhart.eval_int(k as i64), int(c.total as i64));
            prop_assert_eq!(polys.boundary.eval_int(k as i64), int(c.boundary as i64));
        }
    }
}
