//! Genus-2 theta constants and the weight-5 cusp form Delta_5, the product
//! of the ten even theta constants:
//!   theta_{a,b}(Z) = sum_{l in Z^2} exp(pi i (Z[l + a/2] + tb l)),
//!   Z[v] = v1^2 z1 + 2 v1 v2 z2 + v2^2 z3.
//!
//! Theta terms live on quarter-integers of the exp(pi i z) lattice, so the
//! factors are stored with unit 1/4 per variable and rescaled to unit 1 in
//! the final integer table
//!   Delta_5 = sum f(n,l,m) exp(pi i (n z1 + l z2 + m z3)),
//! supported on odd n, l, m with n, m > 0 and 4nm - l^2 > 0, and with every
//! f(n,l,m) divisible by 64. Everything is truncated by the trace n + m,
//! which is additive and non-negative on all theta terms, so truncation
//! after each pairwise multiply is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{big, GradedSeries, Grading, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaCharacteristic {
    pub a: [u8; 2],
    pub b: [u8; 2],
}

impl ThetaCharacteristic {
    pub fn is_even(&self) -> bool {
        (self.a[0] * self.b[0] + self.a[1] * self.b[1]) % 2 == 0
    }
}

/// The ten even characteristics, in a fixed order: a runs over
/// (0,0),(0,1),(1,0),(1,1) lexicographically, b likewise within each a,
/// keeping the pairs with a1 b1 + a2 b2 even.
pub fn even_characteristics() -> Vec<ThetaCharacteristic> {
    let mut out = Vec::new();
    for a1 in 0..2u8 {
        for a2 in 0..2u8 {
            for b1 in 0..2u8 {
                for b2 in 0..2u8 {
                    let c = ThetaCharacteristic { a: [a1, a2], b: [b1, b2] };
                    if c.is_even() {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

pub fn quarter_units() -> [Unit; 3] {
    [Unit::new(1, 4), Unit::new(1, 4), Unit::new(1, 4)]
}

pub fn pi_units() -> [Unit; 3] {
    [Unit::one(), Unit::one(), Unit::one()]
}

pub fn trace_grading(bound: i64) -> Grading {
    Grading::new([1, 0, 1], bound)
}

/// One theta constant, complete through trace n + m <= trace_bound (true
/// units). Terms are indexed by k_i = 2 l_i + a_i; the stored exponents are
/// (k1^2, 2 k1 k2, k2^2) on the quarter lattice with sign (-1)^{b . l}.
pub fn theta_constant(c: &ThetaCharacteristic, trace_bound: i64) -> Result<GradedSeries> {
    if !c.is_even() {
        return Err(Error::Domain(format!("odd theta characteristic {c:?}")));
    }
    if trace_bound < 0 {
        return Err(Error::Domain("trace bound must be non-negative".into()));
    }
    let stored_bound = 4 * trace_bound;
    let mut s = GradedSeries::zero(3, quarter_units(), trace_grading(stored_bound));
    let mut k1 = -(crate::arith::isqrt(stored_bound) + 2);
    while k1 <= crate::arith::isqrt(stored_bound) + 2 {
        if k1.rem_euclid(2) == c.a[0] as i64 {
            let mut k2 = -(crate::arith::isqrt(stored_bound) + 2);
            while k2 <= crate::arith::isqrt(stored_bound) + 2 {
                if k2.rem_euclid(2) == c.a[1] as i64 && k1 * k1 + k2 * k2 <= stored_bound {
                    let l1 = (k1 - c.a[0] as i64) / 2;
                    let l2 = (k2 - c.a[1] as i64) / 2;
                    let sign = (c.b[0] as i64 * l1 + c.b[1] as i64 * l2).rem_euclid(2);
                    s.add_term(
                        [k1 * k1, 2 * k1 * k2, k2 * k2],
                        if sign == 0 { big(1) } else { big(-1) },
                    )?;
                }
                k2 += 1;
            }
        }
        k1 += 1;
    }
    Ok(s)
}

/// Integer coefficient table of a Siegel-form Fourier expansion.
#[derive(Clone, Debug)]
pub struct SiegelCoefficientTable {
    pub name: String,
    entries: BTreeMap<[i64; 3], BigInt>,
    units: [Unit; 3],
    grading: Grading,
}

impl SiegelCoefficientTable {
    pub fn from_series(series: &GradedSeries, name: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (e, c) in series.iter() {
            if !c.denom().is_one() {
                return Err(Error::Identity(format!(
                    "{name}: non-integral coefficient {c} at {e:?}"
                )));
            }
            entries.insert(*e, c.numer().clone());
        }
        Ok(SiegelCoefficientTable {
            name: name.to_string(),
            entries,
            units: *series.units(),
            grading: series.grading(),
        })
    }

    pub fn to_series(&self) -> GradedSeries {
        let mut s = GradedSeries::zero(3, self.units, self.grading);
        for (e, c) in &self.entries {
            s.add_term(*e, BigRational::from_integer(c.clone()))
                .expect("table entries are inside the bound");
        }
        s
    }

    pub fn coeff(&self, n: i64, l: i64, m: i64) -> BigInt {
        self.entries.get(&[n, l, m]).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64; 3], &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
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

    /// The Fourier-Jacobi slice at z3-exponent m: sum_{n,l} f(n,l,m) x^{(n,l)}.
    pub fn fourier_jacobi_slice(&self, m: i64) -> Result<GradedSeries> {
        if m > self.grading.bound {
            return Err(Error::Config(format!(
                "slice index {m} beyond table bound {}",
                self.grading.bound
            )));
        }
        let units = [self.units[0], self.units[1], Unit::one()];
        let mut s = GradedSeries::zero(
            2,
            units,
            Grading::new([1, 0, 0], self.grading.bound - m),
        );
        for (e, c) in &self.entries {
            if e[2] == m {
                s.add_term([e[0], e[1], 0], BigRational::from_integer(c.clone()))?;
            }
        }
        Ok(s)
    }

    /// Scale every coefficient by an exact rational (must stay integral).
    pub fn scaled(&self, num: i64, den: i64, name: &str) -> Result<Self> {
        let factor = BigRational::new(BigInt::from(num), BigInt::from(den));
        let mut entries = BTreeMap::new();
        for (e, c) in &self.entries {
            let v = BigRational::from_integer(c.clone()) * &factor;
            if !v.denom().is_one() {
                return Err(Error::Identity(format!(
                    "{name}: scaling {c} by {num}/{den} is not integral at {e:?}"
                )));
            }
            entries.insert(*e, v.numer().clone());
        }
        Ok(SiegelCoefficientTable {
            name: name.to_string(),
            entries,
            units: self.units,
            grading: self.grading,
        })
    }
}

/// Delta_5 through trace n + m <= trace_bound, as the product of the ten
/// even theta constants, with all support and divisibility claims asserted.
pub fn delta5(trace_bound: i64) -> Result<SiegelCoefficientTable> {
    if trace_bound < 3 {
        return Err(Error::Domain(
            "delta5 needs trace_bound >= 3 to see its leading coefficient".into(),
        ));
    }
    let mut product: Option<GradedSeries> = None;
    for c in even_characteristics() {
        let th = theta_constant(&c, trace_bound)?;
        product = Some(match product {
            None => th,
            Some(p) => p.mul(&th)?,
        });
    }
    let product = product.expect("ten factors");
    // The full product lands back on the integer exp(pi i z) lattice.
    for (e, _) in product.iter() {
        if e.iter().any(|x| x.rem_euclid(4) != 0) {
            return Err(Error::Identity(format!(
                "Delta_5 term {e:?} not on the integer lattice"
            )));
        }
    }
    let rescaled = product.rescale(pi_units(), trace_grading(trace_bound))?;
    let table = SiegelCoefficientTable::from_series(&rescaled, "delta5")?;
    for (e, f) in table.iter() {
        let (n, l, m) = (e[0], e[1], e[2]);
        if n.rem_euclid(2) != 1 || l.rem_euclid(2) != 1 || m.rem_euclid(2) != 1 {
            return Err(Error::Identity(format!("Delta_5 support parity violated at {e:?}")));
        }
        if n <= 0 || m <= 0 || 4 * n * m - l * l <= 0 {
            return Err(Error::Identity(format!("Delta_5 support cone violated at {e:?}")));
        }
        if (f % BigInt::from(64)) != BigInt::zero() {
            return Err(Error::Identity(format!(
                "Delta_5 coefficient {f} at {e:?} not divisible by 64"
            )));
        }
    }
    Ok(table)
}

/// Coefficient-level symmetry audit of a Siegel table against its
/// reflection group: antisymmetry f(n,-l,m) = -f(n,l,m), the z1/z3 swap
/// f(n,l,m) = f(m,l,n), vanishing on reflection walls, and antisymmetry
/// under every generator reflection wherever both exponents sit inside the
/// table bound.
pub fn symmetry_audit(
    table: &SiegelCoefficientTable,
    example: crate::lattice::Example,
) -> Result<crate::error::CheckReport> {
    use crate::lattice::{exponent_of, lattice_data, reflection, vec_int, vector_of};
    let mut report = crate::error::CheckReport::new(format!(
        "symmetry audit of {} (example {})",
        table.name,
        example.index()
    ));
    let (lattice, fd) = lattice_data(example);
    let reflections: Vec<_> = fd
        .roots
        .iter()
        .map(|d| reflection(&lattice, d))
        .collect::<Result<Vec<_>>>()?;
    let mut checked_pairs = 0usize;
    for (e, c) in table.iter() {
        let (n, l, m) = (e[0], e[1], e[2]);
        if table.coeff(n, -l, m) != -c.clone() {
            report.violation(format!("f({n},{},{m}) != -f({n},{l},{m})", -l));
        }
        if table.coeff(m, l, n) != *c {
            report.violation(format!("f({n},{l},{m}) != f({m},{l},{n})"));
        }
        let v = vector_of(example, e);
        for (i, d) in fd.roots.iter().enumerate() {
            if lattice.bilinear(&v, &vec_int(d)) == crate::lattice::rz(0) {
                report.violation(format!(
                    "nonzero coefficient at {e:?} on the reflection wall of root {i}"
                ));
            }
        }
        for s in &reflections {
            let image = s.apply(&v);
            let ie = match exponent_of(example, &image) {
                Some(ie) => ie,
                None => {
                    report.violation(format!("reflection image of {e:?} left the lattice"));
                    continue;
                }
            };
            if table.grading().lambda(&ie) <= table.bound() {
                checked_pairs += 1;
                if table.coeff(ie[0], ie[1], ie[2]) != -c.clone() {
                    report.violation(format!(
                        "f({:?}) != -f({e:?}) under a generator reflection",
                        ie
                    ));
                }
            }
        }
        if !report.passed && report.violations.len() > 8 {
            return Ok(report);
        }
    }
    report.note(format!(
        "{} entries audited, {} reflection pairs inside the bound",
        table.len(),
        checked_pairs
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{psi_half_form, PsiKind};
    use crate::series::product_expand;

    #[test]
    fn ten_even_characteristics() {
        let cs = even_characteristics();
        assert_eq!(cs.len(), 10);
        assert!(cs.contains(&ThetaCharacteristic { a: [0, 0], b: [0, 0] }));
        assert!(cs.contains(&ThetaCharacteristic { a: [1, 1], b: [1, 1] }));
        assert!(!cs.iter().any(|c| c.a == [1, 0] && c.b == [1, 0]));
    }

    #[test]
    fn theta_constant_basics() {
        let zero = ThetaCharacteristic { a: [0, 0], b: [0, 0] };
        let th = theta_constant(&zero, 4).unwrap();
        assert_eq!(th.coeff(&[0, 0, 0]), big(1));
        // Rank-one terms: 4 n m = l^2 on stored exponents.
        for (e, _) in th.iter() {
            assert_eq!(4 * e[0] * e[2], e[1] * e[1]);
        }
        // b = (1,1): the l = (1,0) and l = (-1,0) terms both carry sign -1.
        let c = ThetaCharacteristic { a: [0, 0], b: [1, 1] };
        let th = theta_constant(&c, 4).unwrap();
        assert_eq!(th.coeff(&[4, 0, 0]), big(-2));
        // Odd characteristic refused.
        let odd = ThetaCharacteristic { a: [1, 0], b: [1, 0] };
        assert!(theta_constant(&odd, 4).is_err());
    }

    #[test]
    fn delta5_leading_coefficients() {
        let d = delta5(6).unwrap();
        assert_eq!(d.coeff(1, 1, 1), BigInt::from(64));
        assert_eq!(d.coeff(1, -1, 1), BigInt::from(-64));
        assert_eq!(d.coeff(3, 1, 1), BigInt::from(-576));
        assert_eq!(d.coeff(3, -1, 1), BigInt::from(576));
        assert_eq!(d.coeff(2, 0, 2), BigInt::zero());
    }

    #[test]
    fn even_fourier_jacobi_slices_vanish() {
        let d = delta5(6).unwrap();
        for m in [0, 2, 4] {
            assert!(d.fourier_jacobi_slice(m).unwrap().is_empty());
        }
    }

    #[test]
    fn first_slice_is_psi_5_half() {
        let d = delta5(8).unwrap();
        let slice = d.fourier_jacobi_slice(1).unwrap().scale(&BigRational::new(
            BigInt::one(),
            BigInt::from(64),
        ));
        let psi = psi_half_form(PsiKind::Psi5Half, 7).unwrap().series;
        assert_eq!(slice, psi);
    }

    #[test]
    fn slices_reassemble_to_the_table() {
        let d = delta5(8).unwrap();
        let mut total = 0;
        for m in 0..=8 {
            let slice = d.fourier_jacobi_slice(m).unwrap();
            for (e, c) in slice.iter() {
                assert_eq!(
                    BigRational::from_integer(d.coeff(e[0], e[1], m)),
                    c.clone()
                );
                total += 1;
            }
        }
        assert_eq!(total, d.len());
    }

    #[test]
    fn symmetry_audit_passes_for_delta5() {
        let d = delta5(10).unwrap();
        let report = symmetry_audit(&d, crate::lattice::Example::One).unwrap();
        assert!(report.passed, "{}", report.render());
    }

    #[test]
    fn symmetry_audit_catches_tampering() {
        use num_rational::BigRational;
        let d = delta5(8).unwrap();
        let mut series = d.to_series();
        series
            .add_term([3, 1, 3], BigRational::from_integer(BigInt::from(64)))
            .unwrap();
        let bad = SiegelCoefficientTable::from_series(&series, "tampered").unwrap();
        let report = symmetry_audit(&bad, crate::lattice::Example::One).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn eq_1_8_through_q3() {
        // 1 + (1/64) sum_t f(1+2t,1,1) q^t = prod (1-q^k)^9.
        let d = delta5(10).unwrap();
        let order = (10 - 2) / 2;
        let units = [Unit::new(2, 1), Unit::one(), Unit::one()];
        let mut lhs = GradedSeries::one(1, units, Grading::new([1, 0, 0], order));
        for t in 1..=order {
            let f = d.coeff(1 + 2 * t, 1, 1);
            lhs.add_term(
                [t, 0, 0],
                BigRational::new(f, BigInt::from(64)),
            )
            .unwrap();
        }
        let proto = GradedSeries::zero(1, units, Grading::new([1, 0, 0], order));
        let factors: Vec<_> = (1..=order).map(|k| ([k, 0, 0], 9)).collect();
        let rhs = product_expand(&factors, &proto).unwrap();
        assert_eq!(lhs, rhs);
    }
}
