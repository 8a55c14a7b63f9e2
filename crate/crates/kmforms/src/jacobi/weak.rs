//! The weight-12 index-1 Jacobi cusp form and the weak weight-0 forms:
//!   phi_{12,1} = (E_4^2 E_{4,1} - E_6 E_{6,1}) / 144
//!   phi_{0,1}  = phi_{12,1} / Delta_12
//!   phi_{0,2}  = (E_4 E_{4,1}^2 - E_{6,1}^2) / (288 Delta_12)
//! All divisions are exact; a nonzero remainder or a non-integral
//! coefficient aborts with an identity violation.

use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::arith::rat;
use crate::error::{Error, Result};
use crate::series::{product_expand, GradedSeries, Grading};

use super::eisenstein::{jacobi_eisenstein, two_pi_units};
use super::qseries::{classical_qseries, embed_in_two_vars, QSeriesKind};
use super::JacobiSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakKind {
    Phi12_1,
    Phi0_1,
    Phi0_2,
}

/// Build one of the named forms through q^order (order >= 1).
pub fn weak_jacobi(kind: WeakKind, order: i64) -> Result<JacobiSeries> {
    assert!(order >= 1);
    match kind {
        WeakKind::Phi12_1 => phi_12_1(order),
        WeakKind::Phi0_1 => {
            let num = phi_12_1(order + 1)?;
            let s = divide_by_delta12(&num.series, order)?;
            assert_integral(&s, "phi_0_1")?;
            // Weak weight-0 index-1 support and evenness.
            for (e, c) in s.iter() {
                if e[0] < 0 || 4 * e[0] - e[1] * e[1] < -1 {
                    return Err(Error::Identity(format!(
                        "phi_0_1 support violation at {e:?}"
                    )));
                }
                if s.coeff(&[e[0], -e[1], 0]) != *c {
                    return Err(Error::Identity(format!(
                        "phi_0_1 evenness violation at {e:?}"
                    )));
                }
            }
            // f(n, l) depends only on 4n - l^2 on the computed support.
            let mut by_disc: std::collections::BTreeMap<i64, (BigRational, [i64; 3])> =
                std::collections::BTreeMap::new();
            for (e, c) in s.iter() {
                let disc = 4 * e[0] - e[1] * e[1];
                match by_disc.get(&disc) {
                    None => {
                        by_disc.insert(disc, (c.clone(), *e));
                    }
                    Some((c0, e0)) => {
                        if c0 != c {
                            return Err(Error::Identity(format!(
                                "phi_0_1 coefficient at {e:?} differs from {e0:?} in the same 4n-l^2 class"
                            )));
                        }
                    }
                }
            }
            Ok(JacobiSeries::new(s, Ratio::zero(), Ratio::one(), "phi_0_1"))
        }
        WeakKind::Phi0_2 => {
            let e4 = embed_in_two_vars(&classical_qseries(QSeriesKind::E4, order + 1)?, Ratio::new(2, 1));
            let e41 = jacobi_eisenstein(4, order + 1)?.series;
            let e61 = jacobi_eisenstein(6, order + 1)?.series;
            let num = e4
                .mul(&e41.mul(&e41)?)?
                .sub(&e61.mul(&e61)?)?
                .scale(&rat(1, 288));
            let s = divide_by_delta12(&num, order)?;
            assert_integral(&s, "phi_0_2")?;
            for (e, _) in s.iter() {
                if e[0] < 0 || 8 * e[0] - e[1] * e[1] < -4 {
                    return Err(Error::Identity(format!(
                        "phi_0_2 support violation at {e:?}"
                    )));
                }
                if s.coeff(&[e[0], -e[1], 0]) != s.coeff(e) {
                    return Err(Error::Identity(format!(
                        "phi_0_2 evenness violation at {e:?}"
                    )));
                }
            }
            Ok(JacobiSeries::new(s, Ratio::zero(), Ratio::new(2, 1), "phi_0_2"))
        }
    }
}

fn phi_12_1(order: i64) -> Result<JacobiSeries> {
    let e4 = classical_qseries(QSeriesKind::E4, order)?;
    let e6 = embed_in_two_vars(&classical_qseries(QSeriesKind::E6, order)?, Ratio::new(2, 1));
    let e4sq = embed_in_two_vars(&e4.mul(&e4)?, Ratio::new(2, 1));
    let e41 = jacobi_eisenstein(4, order)?.series;
    let e61 = jacobi_eisenstein(6, order)?.series;
    let s = e4sq
        .mul(&e41)?
        .sub(&e6.mul(&e61)?)?
        .scale(&rat(1, 144));
    assert_integral(&s, "phi_12_1")?;
    // Cusp form: support strictly inside 4n - l^2 > 0.
    for (e, _) in s.iter() {
        if e[0] < 1 || 4 * e[0] - e[1] * e[1] <= 0 {
            return Err(Error::Identity(format!("phi_12_1 support violation at {e:?}")));
        }
    }
    Ok(JacobiSeries::new(s, Ratio::from_integer(12), Ratio::one(), "phi_12_1"))
}

fn assert_integral(s: &GradedSeries, name: &str) -> Result<()> {
    for (e, c) in s.iter() {
        if !c.denom().is_one() {
            return Err(Error::Identity(format!(
                "{name} coefficient at {e:?} is not integral: {c}"
            )));
        }
    }
    Ok(())
}

/// Exact division by Delta_12 = q prod (1-q^n)^24: multiply by the inverse
/// unit series and shift the q-exponent down by one. Support at q^0 in the
/// numerator (a nonzero "remainder") is an identity violation.
pub fn divide_by_delta12(num: &GradedSeries, order: i64) -> Result<GradedSeries> {
    let bound_in = num.bound();
    // Inverse of prod (1-q^n)^24 up to the numerator's bound.
    let proto = GradedSeries::zero(2, two_pi_units(), Grading::new([1, 0, 0], bound_in));
    let factors: Vec<_> = (1..=bound_in).map(|n| ([n, 0, 0], -24)).collect();
    let inv = product_expand(&factors, &proto)?;
    let quotient = num.mul(&inv)?;
    let mut out = GradedSeries::zero(2, two_pi_units(), Grading::new([1, 0, 0], order));
    for (e, c) in quotient.iter() {
        if e[0] < 1 {
            return Err(Error::Identity(format!(
                "division by Delta_12 leaves a remainder at {e:?}"
            )));
        }
        if e[0] - 1 <= order {
            out.add_term([e[0] - 1, e[1], 0], c.clone())?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::big;

    #[test]
    fn phi_12_1_q1_row() {
        let p = weak_jacobi(WeakKind::Phi12_1, 2).unwrap().series;
        // (r^-1 + 10 + r) q
        assert_eq!(p.coeff(&[1, -1, 0]), big(1));
        assert_eq!(p.coeff(&[1, 0, 0]), big(10));
        assert_eq!(p.coeff(&[1, 1, 0]), big(1));
        assert_eq!(p.coeff(&[1, 2, 0]), big(0));
    }

    #[test]
    fn phi_12_1_q2_row_is_even_in_l() {
        // (10 r^-2 - 88 r^-1 - 132 - 88 r + 10 r^2) q^2; the r^2 and r^-2
        // coefficients agree (evenness in l pins both to 10).
        let p = weak_jacobi(WeakKind::Phi12_1, 2).unwrap().series;
        assert_eq!(p.coeff(&[2, -2, 0]), big(10));
        assert_eq!(p.coeff(&[2, -1, 0]), big(-88));
        assert_eq!(p.coeff(&[2, 0, 0]), big(-132));
        assert_eq!(p.coeff(&[2, 1, 0]), big(-88));
        assert_eq!(p.coeff(&[2, 2, 0]), big(10));
    }

    #[test]
    fn phi_0_1_rows() {
        let p = weak_jacobi(WeakKind::Phi0_1, 3).unwrap().series;
        // q^0: r^-1 + 10 + r
        assert_eq!(p.coeff(&[0, -1, 0]), big(1));
        assert_eq!(p.coeff(&[0, 0, 0]), big(10));
        assert_eq!(p.coeff(&[0, 1, 0]), big(1));
        // q^1: 10r^-2 - 64r^-1 + 108 - 64r + 10r^2
        assert_eq!(p.coeff(&[1, -2, 0]), big(10));
        assert_eq!(p.coeff(&[1, -1, 0]), big(-64));
        assert_eq!(p.coeff(&[1, 0, 0]), big(108));
        assert_eq!(p.coeff(&[1, 1, 0]), big(-64));
        assert_eq!(p.coeff(&[1, 2, 0]), big(10));
    }

    #[test]
    fn phi_0_2_q0_row() {
        let p = weak_jacobi(WeakKind::Phi0_2, 2).unwrap().series;
        // q^0: r^-1 + 4 + r
        assert_eq!(p.coeff(&[0, -1, 0]), big(1));
        assert_eq!(p.coeff(&[0, 0, 0]), big(4));
        assert_eq!(p.coeff(&[0, 1, 0]), big(1));
        assert_eq!(p.coeff(&[0, 2, 0]), big(0));
    }
}
