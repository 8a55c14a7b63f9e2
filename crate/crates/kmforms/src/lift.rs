//! Arithmetic lifts of Jacobi-form coefficients to Siegel coefficient
//! tables by divisor sums:
//!   example 1 (Maass lift of psi_{5,1/2}):
//!     F(n,l,m) = sum_{d | (n,l,m)} d^4 g(nm/d^2, l/d), n,l,m odd,
//!   example 2 (character lift of psi_{2,1/2}):
//!     F2(n,l,m) = sum_{d | (n,l,m)} d (-4/d) c(nm/d^2, l/d),
//!     n, m = 1 mod 4, l odd,
//! each supported strictly inside its cone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, gcd3, isqrt, kronecker};
use crate::error::{Error, Result};
use crate::series::{GradedSeries, Grading, Unit};
use crate::theta::SiegelCoefficientTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftCharacter {
    Trivial,
    KroneckerMinus4,
}

/// (-4/d) for odd d: +1 if d = 1 mod 4, -1 if d = 3 mod 4.
pub fn kronecker_minus4(d: i64) -> Result<i64> {
    if d <= 0 || d % 2 == 0 {
        return Err(Error::Domain(format!(
            "kronecker_minus4 needs odd positive d, got {d}"
        )));
    }
    Ok(kronecker(-4, d))
}

#[derive(Clone, Copy, Debug)]
pub struct LiftSpec {
    pub divisor_weight: u32,
    pub character: LiftCharacter,
    /// Residues of (n, m) and parity of l on the output support.
    pub nm_modulus: i64,
    /// Discriminant form: coefficient of n*m in the positivity condition
    /// (4 for example 1's 4nm - l^2 > 0, 2 for example 2's 2nm - l^2 > 0).
    pub disc_scale: i64,
    /// Output exponent units per variable.
    pub units: [Unit; 3],
}

impl LiftSpec {
    /// Maass lift of psi_{5,1/2}: d^4, trivial character, odd support.
    pub fn example1() -> Self {
        LiftSpec {
            divisor_weight: 4,
            character: LiftCharacter::Trivial,
            nm_modulus: 2,
            disc_scale: 4,
            units: [Unit::one(), Unit::one(), Unit::one()],
        }
    }

    /// Character lift of psi_{2,1/2}: d (-4/d), support n, m = 1 mod 4.
    pub fn example2() -> Self {
        LiftSpec {
            divisor_weight: 1,
            character: LiftCharacter::KroneckerMinus4,
            nm_modulus: 4,
            disc_scale: 2,
            units: [Unit::new(1, 2), Unit::one(), Unit::new(1, 2)],
        }
    }

    fn chi(&self, d: i64) -> Result<i64> {
        match self.character {
            LiftCharacter::Trivial => Ok(1),
            LiftCharacter::KroneckerMinus4 => kronecker_minus4(d),
        }
    }
}

/// Assemble the lift through trace n + m <= trace_bound (stored units).
/// The input series must be complete to depth nm <= (trace_bound/2)^2.
pub fn arithmetic_lift(
    input: &GradedSeries,
    spec: &LiftSpec,
    trace_bound: i64,
    name: &str,
) -> Result<SiegelCoefficientTable> {
    let needed_depth = (trace_bound / 2) * (trace_bound - trace_bound / 2);
    if input.bound() < needed_depth {
        return Err(Error::Config(format!(
            "lift input complete to {} but trace bound {} needs depth {}",
            input.bound(),
            trace_bound,
            needed_depth
        )));
    }
    let mut out = GradedSeries::zero(3, spec.units, Grading::new([1, 0, 1], trace_bound));
    let step = spec.nm_modulus;
    let mut n = 1i64;
    while n < trace_bound {
        let mut m = 1i64;
        while n + m <= trace_bound {
            let lmax = isqrt(spec.disc_scale * n * m - 1);
            for l in -lmax..=lmax {
                if l.rem_euclid(2) != 1 {
                    continue;
                }
                let mut value = BigRational::zero();
                for d in divisors(gcd3(n, l, m)) {
                    let chi = spec.chi(d)?;
                    if chi == 0 {
                        continue;
                    }
                    let div_sq = (n / d) * (m / d);
                    debug_assert_eq!(n * m % (d * d), 0);
                    let g = input.coeff(&[div_sq, l / d, 0]);
                    if g.is_zero() {
                        continue;
                    }
                    let weight = BigInt::from(chi) * BigInt::from(d).pow(spec.divisor_weight);
                    value += g * BigRational::from_integer(weight);
                }
                if !value.is_zero() {
                    out.add_term([n, l, m], value)?;
                }
            }
            m += step;
        }
        n += step;
    }
    SiegelCoefficientTable::from_series(&out, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{psi_half_form, PsiKind};
    use crate::theta::delta5;

    #[test]
    fn kronecker_minus4_values() {
        assert_eq!(kronecker_minus4(1).unwrap(), 1);
        assert_eq!(kronecker_minus4(3).unwrap(), -1);
        assert_eq!(kronecker_minus4(5).unwrap(), 1);
        assert!(kronecker_minus4(2).is_err());
        assert!(kronecker_minus4(-3).is_err());
    }

    #[test]
    fn lift_psi5_leading_values() {
        let psi = psi_half_form(PsiKind::Psi5Half, 16).unwrap();
        let lift = arithmetic_lift(&psi.series, &LiftSpec::example1(), 8, "lift1").unwrap();
        // Single-divisor entries reproduce g itself.
        assert_eq!(lift.coeff(1, 1, 1), BigInt::from(1));
        assert_eq!(lift.coeff(3, 1, 1), BigInt::from(-9));
        // gcd > 1 entry: (3,3,3) sums g(9,3) + 3^4 g(1,1).
        let g93 = psi.series.coeff(&[9, 3, 0]).numer().clone();
        assert_eq!(lift.coeff(3, 3, 3), g93 + BigInt::from(81));
    }

    #[test]
    fn lift_matches_theta_product_to_trace_10() {
        let psi = psi_half_form(PsiKind::Psi5Half, 25).unwrap();
        let lift = arithmetic_lift(&psi.series, &LiftSpec::example1(), 10, "lift1").unwrap();
        let theta = delta5(10).unwrap().scaled(1, 64, "delta5/64").unwrap();
        assert_eq!(lift.len(), theta.len());
        for (e, c) in theta.iter() {
            assert_eq!(lift.coeff(e[0], e[1], e[2]), *c, "mismatch at {e:?}");
        }
    }

    #[test]
    fn lift_psi2_leading_value() {
        let psi = psi_half_form(PsiKind::Psi2Half, 25).unwrap();
        let lift = arithmetic_lift(&psi.series, &LiftSpec::example2(), 10, "f2").unwrap();
        assert_eq!(lift.coeff(1, -1, 1), BigInt::from(1));
        assert_eq!(lift.coeff(1, 1, 1), BigInt::from(-1));
        for (e, _) in lift.iter() {
            assert_eq!(e[0].rem_euclid(4), 1);
            assert_eq!(e[2].rem_euclid(4), 1);
            assert_eq!(e[1].rem_euclid(2), 1);
            assert!(2 * e[0] * e[2] > e[1] * e[1]);
        }
    }

    #[test]
    fn lift_depth_guard() {
        let psi = psi_half_form(PsiKind::Psi5Half, 5).unwrap();
        assert!(matches!(
            arithmetic_lift(&psi.series, &LiftSpec::example1(), 10, "lift1"),
            Err(Error::Config(_))
        ));
    }
}
