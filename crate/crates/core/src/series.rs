//! Truncated power series for `Td(x)`, `Td(−x)`, `Â(x)`, `1/Â(x)`, `e^{x/2}`
//! and the constant-coefficient differential operators built from them.
//!
//! Coefficients are produced by exact series arithmetic (inversion of the
//! defining quotients) rather than tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{degree_of, Exponent, MultiPoly};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `x / (1 − e^{−x})`
    Todd,
    /// `−x / (1 − e^{x})`
    ToddNeg,
    /// `(x/2) / sinh(x/2)`
    Ahat,
    /// `sinh(x/2) / (x/2)`
    AhatInv,
    /// `e^{x/2}`
    ExpHalf,
}

/// Coefficients `s_0 … s_m` of a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub kind: SeriesKind,
    pub coeffs: Vec<Rational>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Product of two series truncated at `order`.
pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|k| {
            (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .map(|i| &a[i] * &b[k - i])
                .sum()
        })
        .collect()
}

/// Multiplicative inverse of a series with nonzero constant term.
pub fn series_inverse(a: &[Rational], order: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series must have an invertible constant term");
    let inv0 = Rational::one() / &a[0];
    let mut out = vec![inv0.clone()];
    for k in 1..=order {
        let acc: Rational = (1..=k)
            .filter(|&i| i < a.len())
            .map(|i| &a[i] * &out[k - i])
            .sum();
        out.push(-acc * &inv0);
    }
    out
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::one(), rational::factorial(n))
}

/// `sinh(x/2)/(x/2) = Σ (x/2)^{2j} / (2j+1)!`, odd entries zero.
pub fn ahat_inv_coeffs(order: usize) -> SeriesCoeffs {
    let coeffs = (0..=order)
        .map(|k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                inv_factorial(k + 1) / Rational::from_integer(BigInt::from(2).pow(k as u32))
            }
        })
        .collect();
    SeriesCoeffs {
        kind: SeriesKind::AhatInv,
        coeffs,
    }
}

/// `Â(x)` as the series inverse of `sinh(x/2)/(x/2)`.
pub fn ahat_coeffs(order: usize) -> SeriesCoeffs {
    SeriesCoeffs {
        kind: SeriesKind::Ahat,
        coeffs: series_inverse(&ahat_inv_coeffs(order).coeffs, order),
    }
}

/// `Td(x)` from `Td(x) · (1 − e^{−x})/x = 1`; with `negate`, `Td(−x)`.
pub fn todd_coeffs(order: usize, negate: bool) -> SeriesCoeffs {
    // (1 − e^{−x})/x = Σ (−1)^j x^j / (j+1)!
    let quotient: Vec<Rational> = (0..=order)
        .map(|j| {
            let c = inv_factorial(j + 1);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let mut coeffs = series_inverse(&quotient, order);
    if negate {
        for (j, c) in coeffs.iter_mut().enumerate() {
            if j % 2 == 1 {
                *c = -c.clone();
            }
        }
    }
    SeriesCoeffs {
        kind: if negate {
            SeriesKind::ToddNeg
        } else {
            SeriesKind::Todd
        },
        coeffs,
    }
}

/// `e^{x/2} = Σ x^j / (2^j j!)`.
pub fn exp_half_coeffs(order: usize) -> SeriesCoeffs {
    SeriesCoeffs {
        kind: SeriesKind::ExpHalf,
        coeffs: (0..=order)
            .map(|j| inv_factorial(j) / Rational::from_integer(BigInt::from(2).pow(j as u32)))
            .collect(),
    }
}

/// `Σ_α c_α ∂^α` in commuting symbols, truncated at a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    symbols: MultiPoly,
    truncation: usize,
}

impl DiffOperator {
    pub fn identity(nvars: usize, truncation: usize) -> Self {
        Self {
            symbols: MultiPoly::one(nvars),
            truncation,
        }
    }

    pub fn from_symbol(symbols: MultiPoly, truncation: usize) -> Self {
        Self {
            symbols: truncate(&symbols, truncation),
            truncation,
        }
    }

    pub fn nvars(&self) -> usize {
        self.symbols.nvars()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// The operator's symbol as a polynomial in `∂_1 … ∂_d`.
    pub fn symbol(&self) -> &MultiPoly {
        &self.symbols
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        let truncation = self.truncation.min(other.truncation);
        let product = mul_truncated(&self.symbols, &other.symbols, truncation)?;
        Ok(Self {
            symbols: product,
            truncation,
        })
    }
}

fn truncate(p: &MultiPoly, order: usize) -> MultiPoly {
    MultiPoly::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(e, _)| degree_of(e) <= order)
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

fn mul_truncated(a: &MultiPoly, b: &MultiPoly, order: usize) -> Result<MultiPoly> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableCount {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        let da = degree_of(ea);
        if da > order {
            continue;
        }
        for (eb, cb) in b.terms() {
            if da + degree_of(eb) > order {
                continue;
            }
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    Ok(MultiPoly::from_terms(a.nvars(), acc))
}

/// Compositions of `total` into `parts` non-negative parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(∂_1 + … + ∂_d)^m` expanded with multinomial coefficients.
fn diagonal_power(d: usize, m: u32) -> MultiPoly {
    let m_fact = rational::factorial(m as usize);
    MultiPoly::from_terms(
        d,
        compositions(m, d).into_iter().map(|e| {
            let denom: BigInt = e.iter().map(|&k| rational::factorial(k as usize)).product();
            (e, Rational::from_integer(&m_fact / denom))
        }),
    )
}

/// `Π_i S_i(∂_i) · S_diag(Σ_i ∂_i)`, truncated at total degree `truncation`.
pub fn build_product_operator(
    per_variable: &[SeriesCoeffs],
    diagonal: Option<&SeriesCoeffs>,
    truncation: usize,
) -> DiffOperator {
    let d = per_variable.len();
    let mut symbols = MultiPoly::one(d);
    for (i, s) in per_variable.iter().enumerate() {
        let factor = MultiPoly::from_terms(
            d,
            (0..=truncation.min(s.order())).map(|j| {
                let mut e = vec![0; d];
                e[i] = j as u32;
                (e, s.coeffs[j].clone())
            }),
        );
        symbols = mul_truncated(&symbols, &factor, truncation).expect("same variable count");
    }
    if let Some(s) = diagonal {
        let mut diag = MultiPoly::zero(d);
        for j in 0..=truncation.min(s.order()) {
            if s.coeffs[j].is_zero() {
                continue;
            }
            diag = diag
                .add(&diagonal_power(d, j as u32).scale(&s.coeffs[j]))
                .expect("same variable count");
        }
        symbols = mul_truncated(&symbols, &diag, truncation).expect("same variable count");
    }
    DiffOperator {
        symbols,
        truncation,
    }
}

/// `Σ_α c_α ∂^α p`.
///
/// The operator must be truncated no lower than the degree of `p`, otherwise
/// dropped terms would change the result.
pub fn apply_operator(op: &DiffOperator, p: &MultiPoly) -> Result<MultiPoly> {
    if op.nvars() != p.nvars() {
        return Err(Error::VariableCount {
            left: op.nvars(),
            right: p.nvars(),
        });
    }
    let degree = p.total_degree().unwrap_or(0);
    if op.truncation < degree {
        return Err(Error::TruncationTooSmall {
            truncation: op.truncation,
            degree,
        });
    }
    let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
    for (alpha, c) in op.symbols.terms() {
        for (e, pc) in p.terms() {
            if alpha.iter().zip(e).any(|(a, k)| a > k) {
                continue;
            }
            // ∂^α x^e = Π e_i!/(e_i − α_i)! x^{e − α}
            let falling: BigInt = alpha
                .iter()
                .zip(e)
                .map(|(&a, &k)| {
                    rational::factorial(k as usize) / rational::factorial((k - a) as usize)
                })
                .product();
            let out_e: Exponent = e.iter().zip(alpha).map(|(k, a)| k - a).collect();
            *acc.entry(out_e).or_insert_with(Rational::zero) +=
                c * pc * Rational::from_integer(falling);
        }
    }
    Ok(MultiPoly::from_terms(p.nvars(), acc))
}

/// `Π_i Td(∂_i)`.
pub fn todd_operator(d: usize, truncation: usize) -> DiffOperator {
    let td = todd_coeffs(truncation, false);
    build_product_operator(&vec![td; d], None, truncation)
}

/// `Π_i Td(−∂_i)`.
pub fn todd_neg_operator(d: usize, truncation: usize) -> DiffOperator {
    let td = todd_coeffs(truncation, true);
    build_product_operator(&vec![td; d], None, truncation)
}

/// `Π_i Â(∂_i) · (1/Â)(Σ_i ∂_i)`.
pub fn boundary_operator(d: usize, truncation: usize) -> DiffOperator {
    let ahat = ahat_coeffs(truncation);
    let inv = ahat_inv_coeffs(truncation);
    build_product_operator(&vec![ahat; d], Some(&inv), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn ahat_inverse_examples() {
        assert_eq!(ahat_inv_coeffs(0).coeffs, vec![int(1)]);
        let d = ahat_inv_coeffs(4);
        assert_eq!(d.coeff(2), frac(1, 24));
        assert_eq!(d.coeff(4), frac(1, 1920));
        assert_eq!(d.coeff(1), int(0));
    }

    #[test]
    fn todd_negation_flips_odd() {
        let t = todd_coeffs(4, false);
        let tn = todd_coeffs(4, true);
        assert_eq!(tn.coeff(1), frac(-1, 2));
        assert_eq!(tn.coeff(2), t.coeff(2));
        assert_eq!(tn.kind, SeriesKind::ToddNeg);
    }

    #[test]
    fn single_variable_todd_operator() {
        let op = build_product_operator(&[todd_coeffs(1, false)], None, 1);
        let expect = MultiPoly::from_terms(1, [(vec![0], int(1)), (vec![1], frac(1, 2))]);
        assert_eq!(op.symbol(), &expect);
    }

    #[test]
    fn two_variable_boundary_operator() {
        let op = boundary_operator(2, 2);
        let expect = MultiPoly::from_terms(2, [(vec![0, 0], int(1)), (vec![1, 1], frac(1, 12))]);
        assert_eq!(op.symbol(), &expect);
    }

    #[test]
    fn truncation_zero_is_identity() {
        for d in 1..5 {
            assert_eq!(boundary_operator(d, 0).symbol(), &MultiPoly::one(d));
            assert_eq!(todd_operator(d, 0).symbol(), &MultiPoly::one(d));
        }
    }

    #[test]
    fn apply_examples() {
        let p = MultiPoly::from_terms(2, [(vec![2, 1], int(3)), (vec![0, 1], int(1))]);
        assert_eq!(apply_operator(&DiffOperator::identity(2, 3), &p).unwrap(), p);

        // KP in one dimension: (1+½∂₁)(1+½∂₂)(λ₁+λ₂) = λ₁+λ₂+1
        let interval = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1)).unwrap();
        let td = todd_operator(2, 1);
        let out = apply_operator(&td, &interval).unwrap();
        assert_eq!(out, interval.add(&MultiPoly::one(2)).unwrap());
        let counts = out.substitute_scaled(&[int(0), int(1)]).unwrap();
        assert_eq!(counts, crate::poly::UniPoly::from_ints(&[1, 1]));

        let lin = MultiPoly::from_terms(2, [(vec![1, 0], int(5)), (vec![0, 0], int(-2))]);
        assert_eq!(apply_operator(&boundary_operator(2, 2), &lin).unwrap(), lin);
    }

    #[test]
    fn apply_rejects_short_truncation() {
        let p = MultiPoly::monomial(vec![2, 0], int(1));
        assert_eq!(
            apply_operator(&todd_operator(2, 1), &p),
            Err(Error::TruncationTooSmall {
                truncation: 1,
                degree: 2
            })
        );
        assert!(apply_operator(&todd_operator(3, 2), &p).is_err());
    }

    #[test]
    fn compose_matches_joint_build() {
        let a = build_product_operator(&[ahat_coeffs(4), ahat_coeffs(4)], None, 4);
        let b = build_product_operator(
            &vec![SeriesCoeffs { kind: SeriesKind::Ahat, coeffs: vec![int(1)] }; 2],
            Some(&ahat_inv_coeffs(4)),
            4,
        );
        assert_eq!(a.compose(&b).unwrap(), boundary_operator(2, 4));
    }
}
