#![allow(dead_code)]

use delzant::rational::int;
use delzant::{HRep, Rational};

/// `P × Q` in `ℝ^{n+m}`: normals padded with zeros, offsets concatenated.
pub fn product(p: &HRep, q: &HRep) -> HRep {
    let (n, m) = (p.dim(), q.dim());
    let mut normals = Vec::new();
    for a in p.normals() {
        normals.push(a.iter().copied().chain(std::iter::repeat_n(0, m)).collect());
    }
    for b in q.normals() {
        normals.push(std::iter::repeat_n(0, n).chain(b.iter().copied()).collect());
    }
    let offsets = p.offsets().iter().chain(q.offsets()).cloned().collect();
    HRep::new(n + m, normals, offsets).expect("product of polytopes is a polytope")
}

/// `m·P + t` for an integer dilation `m` and translation `t`.
pub fn dilate_translate(p: &HRep, m: i64, t: &[i64]) -> HRep {
    let offsets: Vec<Rational> = p
        .normals()
        .iter()
        .zip(p.offsets())
        .map(|(nrm, mu)| {
            let shift: i64 = nrm.iter().zip(t).map(|(a, b)| a * b).sum();
            mu * int(m) + int(shift)
        })
        .collect();
    HRep::new(p.dim(), p.normals().to_vec(), offsets).expect("dilate of a polytope")
}

/// Checks `Σ_i ∂_i vol(Δ(λ)) = vol(∂Δ(λ))` on the degree `n − 1` principal
/// lattice inside the chamber, where a polynomial of that degree is pinned
/// down by its values; the right side is measured facet by facet.
pub fn derivative_identity_on_lattice(vp: &delzant::volume::VolumePolynomial) -> bool {
    use delzant::{polytope, volume};
    let h = &vp.hrep;
    let div = vp.poly.divergence_sum();
    volume::principal_lattice(h.facet_count(), h.dim() - 1)
        .into_iter()
        .all(|t| {
            let lambda: Vec<Rational> = h
                .offsets()
                .iter()
                .zip(&t)
                .map(|(mu, &ti)| mu + &vp.step * int(ti.into()))
                .collect();
            let moved = h.with_offsets(lambda.clone());
            let v = polytope::enumerate_vertices(&moved);
            let direct = volume::boundary_volume(&moved, &v).expect("facet volumes");
            div.eval(&lambda).expect("same arity") == direct
        })
}
