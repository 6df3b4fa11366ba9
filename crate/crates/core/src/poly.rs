//! Sparse multivariate and dense univariate polynomials over [`Rational`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse polynomial in a fixed number of variables.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponent: Exponent, coeff: Rational) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coeff);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree_of(e)).max()
    }

    pub(crate) fn add_term(&mut self, exponent: Exponent, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same variable count");
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "variable index {i} out of range for {} variables",
                self.nvars
            )));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    /// `Σ_i ∂p/∂x_i`.
    pub fn divergence_sum(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for i in 0..self.nvars {
            out = out.add(&self.partial(i).expect("index in range")).expect("same variable count");
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `q(k) = p(k·μ_1, …, k·μ_d)`.
    pub fn substitute_scaled(&self, mu: &[Rational]) -> Result<UniPoly> {
        if mu.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "scale vector has length {}, polynomial has {} variables",
                mu.len(),
                self.nvars
            )));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        for (e, c) in &self.terms {
            let deg = degree_of(e);
            let mut t = c.clone();
            for (m, &k) in mu.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(m.clone(), k as usize);
                }
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Rational::zero());
            }
            coeffs[deg] += t;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Substitutes `x_i ↦ scale_i · x_i + shift_i` in every variable.
    pub fn affine_substitute(&self, scale: &[Rational], shift: &[Rational]) -> Result<Self> {
        if scale.len() != self.nvars || shift.len() != self.nvars {
            return Err(Error::DimensionMismatch("affine substitution length".into()));
        }
        let d = self.nvars;
        let linear: Vec<Self> = (0..d)
            .map(|i| {
                Self::var(d, i)
                    .scale(&scale[i])
                    .add(&Self::constant(d, shift[i].clone()))
                    .expect("same variable count")
            })
            .collect();
        let mut out = Self::zero(d);
        for (e, c) in &self.terms {
            let mut t = Self::constant(d, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&linear[i].pow(k)).expect("same variable count");
                }
            }
            out = out.add(&t).expect("same variable count");
        }
        Ok(out)
    }

    /// Renders with the given variable names; terms by decreasing total degree.
    pub fn render_with(&self, names: &[String]) -> String {
        let mut terms: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| degree_of(b.0).cmp(&degree_of(a.0)).then_with(|| b.0.cmp(a.0)));
        render_terms(terms.into_iter().map(|(e, c)| {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            (factors.join("*"), c)
        }))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("l{i}")).collect();
        f.write_str(&self.render_with(&names))
    }
}

pub(crate) fn degree_of(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

/// Joins `(monomial, coefficient)` pairs as `"5/6*k^3 + 25/6*k"`.
fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&rational::render(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&rational::render(&mag));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Dense univariate polynomial `a_0 + a_1 k + … + a_m k^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> Rational {
        self.eval(&rational::int(k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(-k)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Renders in the variable `var`, e.g. `"5/6*k^3 + 25/6*k"`.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    let mono = match j {
                        0 => String::new(),
                        1 => var.to_string(),
                        _ => format!("{var}^{j}"),
                    };
                    (mono, c)
                }),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}
