//! Sparse truncated series with exact rational coefficients, graded by a
//! positive linear functional on integer exponent vectors.
//!
//! A term is keyed by a stored exponent vector `e` of one to three integers.
//! Stored exponents are scaled: variable `i` carries a rational unit `u_i`,
//! and stored exponent `k` represents the monomial `exp(pi*i * k*u_i * z_i)`.
//! Picking units per form keeps every stored exponent an integer (theta
//! constants live on quarter-integers, eta powers on 24th-integers, weight-0
//! Jacobi forms on the exp(2*pi*i*z) lattice), and makes support assertions
//! exact. Two series combine only when their units, grading and bound agree;
//! conversions are explicit `rescale` calls.
//!
//! The grading `lambda(e) = <w, e>` with integer weights `w` must be
//! non-negative on the support of every stored series. Products are truncated
//! to `lambda <= bound`, which is exact because lambda is additive and
//! non-negative on all inputs.

mod ops;

pub use ops::{
    exp, extract_product_exponents, formal_log_exp, inverse, log, product_expand, LogDirection,
};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Per-variable exponent unit, as a fraction of exp(pi*i*z).
pub type Unit = Ratio<i64>;

/// Stored exponent vector. Unused trailing variables are zero.
pub type Exponent = [i64; 3];

/// Integer grading functional with an inclusive truncation bound.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Grading {
    pub weights: [i64; 3],
    pub bound: i64,
}

impl Grading {
    pub fn new(weights: [i64; 3], bound: i64) -> Self {
        Grading { weights, bound }
    }

    #[inline]
    pub fn lambda(&self, e: &Exponent) -> i64 {
        self.weights[0] * e[0] + self.weights[1] * e[1] + self.weights[2] * e[2]
    }

}

#[derive(Clone, Debug)]
pub struct GradedSeries {
    dim: usize,
    units: [Unit; 3],
    grading: Grading,
    terms: HashMap<Exponent, BigRational>,
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GradedSeries {
    pub fn zero(dim: usize, units: [Unit; 3], grading: Grading) -> Self {
        assert!((1..=3).contains(&dim), "series dimension must be 1..=3");
        for u in units.iter().take(dim) {
            assert!(u.numer() > &0 && u.denom() > &0, "units must be positive");
        }
        GradedSeries { dim, units, grading, terms: HashMap::new() }
    }

    pub fn one(dim: usize, units: [Unit; 3], grading: Grading) -> Self {
        let mut s = Self::zero(dim, units, grading);
        s.terms.insert([0, 0, 0], BigRational::one());
        s
    }

    /// A single term `c * x^e`.
    pub fn monomial(
        dim: usize,
        units: [Unit; 3],
        grading: Grading,
        e: Exponent,
        c: BigRational,
    ) -> Result<Self> {
        let mut s = Self::zero(dim, units, grading);
        s.add_term(e, c)?;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn units(&self) -> &[Unit; 3] {
        &self.units
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn bound(&self) -> i64 {
        self.grading.bound
    }

    pub fn lambda(&self, e: &Exponent) -> i64 {
        self.grading.lambda(e)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    /// Terms sorted by (lambda, lexicographic exponent); the canonical order
    /// for reproducible output and for triangular solves.
    pub fn sorted_terms(&self) -> Vec<(Exponent, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| (self.grading.lambda(e), *e));
        v
    }

    /// Insert `c * x^e`, accumulating. Exponents above the bound are dropped;
    /// negative-lambda exponents are a domain error.
    pub fn add_term(&mut self, e: Exponent, c: BigRational) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let lam = self.grading.lambda(&e);
        if lam < 0 {
            return Err(Error::Domain(format!(
                "term {e:?} has negative grading value {lam}"
            )));
        }
        if lam > self.grading.bound {
            return Ok(());
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim
            || self.units != other.units
            || self.grading != other.grading
        {
            return Err(Error::Config(format!(
                "incompatible series: dim {} vs {}, units {:?} vs {:?}, grading {:?} vs {:?}",
                self.dim, other.dim, self.units, other.units, self.grading, other.grading
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim, self.units, self.grading);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k.clone();
        }
        out
    }

    /// Truncated product. Both operands must share dim/units/grading and have
    /// all support at lambda >= 0 (an insertion invariant), so dropping
    /// lambda > bound is exact.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let bound = self.grading.bound;
        // Iterate the smaller operand outermost, the larger sorted by lambda
        // so the inner loop can stop early.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let large_sorted = {
            let mut v: Vec<(Exponent, i64, &BigRational)> = large
                .terms
                .iter()
                .map(|(e, c)| (*e, self.grading.lambda(e), c))
                .collect();
            v.sort_by_key(|(e, lam, _)| (*lam, *e));
            v
        };
        let mut acc: HashMap<Exponent, BigRational> = HashMap::new();
        for (ea, ca) in &small.terms {
            let la = self.grading.lambda(ea);
            for (eb, lb, cb) in &large_sorted {
                if la + lb > bound {
                    break;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let entry = acc.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * *cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GradedSeries { dim: self.dim, units: self.units, grading: self.grading, terms: acc })
    }

    /// Multiply by a plain monomial (no compatibility constraints beyond the
    /// shifted support staying inside [0, bound]).
    pub fn mul_monomial(&self, shift: Exponent, c: &BigRational) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.units, self.grading);
        for (e, coeff) in &self.terms {
            let ne = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
            out.add_term(ne, coeff * c)?;
        }
        Ok(out)
    }

    /// Convert stored exponents to new units (and a matching new grading).
    /// Each rescaled exponent must be an integer and keep lambda in range.
    pub fn rescale(&self, new_units: [Unit; 3], new_grading: Grading) -> Result<Self> {
        let mut factors = [Unit::one(); 3];
        for i in 0..self.dim {
            factors[i] = self.units[i] / new_units[i];
        }
        let mut out = Self::zero(self.dim, new_units, new_grading);
        for (e, c) in &self.terms {
            let mut ne = [0i64; 3];
            for i in 0..self.dim {
                let scaled = Unit::from_integer(e[i]) * factors[i];
                if !scaled.is_integer() {
                    return Err(Error::Domain(format!(
                        "exponent {e:?} does not rescale integrally from units {:?} to {:?}",
                        self.units, new_units
                    )));
                }
                ne[i] = scaled.to_integer();
            }
            out.add_term(ne, c.clone())?;
        }
        Ok(out)
    }

    /// Re-key the series through an exponent map (e.g. slicing or embedding).
    /// The caller guarantees the map is injective on the support.
    pub fn map_exponents<F>(&self, dim: usize, units: [Unit; 3], grading: Grading, f: F) -> Result<Self>
    where
        F: Fn(&Exponent) -> Exponent,
    {
        let mut out = Self::zero(dim, units, grading);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone())?;
        }
        Ok(out)
    }

    /// True if the series is exactly 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// All coefficients integral?
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// First difference against `other` in canonical order, if any.
    pub fn first_difference(&self, other: &Self) -> Option<(Exponent, BigRational, BigRational)> {
        let mut keys: Vec<Exponent> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort_by_key(|e| (self.grading.lambda(e), *e));
        keys.dedup();
        for e in keys {
            let a = self.coeff(&e);
            let b = other.coeff(&e);
            if a != b {
                return Some((e, a, b));
            }
        }
        None
    }
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.units == other.units
            && self.grading == other.grading
            && self.terms == other.terms
    }
}

impl Eq for GradedSeries {}
