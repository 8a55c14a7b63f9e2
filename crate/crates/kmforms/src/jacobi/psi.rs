//! The index-1/2 Jacobi cusp forms
//!   psi_{5,1/2} = eta^9 theta_11
//!     = -q^{1/2} r^{-1/2} prod (1-q^{n-1}r)(1-q^n r^{-1})(1-q^n)^{10}
//!   psi_{2,1/2} = q^{1/4} r^{-1/2} prod (1-q^{n-1}r)(1-q^n r^{-1})(1-q^n)^4
//! with q = exp(2 pi i z1), r = exp(2 pi i z2).
//!
//! psi_{5,1/2} is stored on exp(pi i z) units with g(n, l) supported on odd
//! n, l; psi_{2,1/2} on exp(pi i z / 2) units for z1 with c(n, l) supported
//! on n = 1 mod 4, l odd, 2n > l^2. The sign convention for psi_{2,1/2} is
//! pinned by c(1, -1) = +1 (the leading factor +q^{1/4} r^{-1/2} (1 - r)),
//! which makes it -eta^3 theta_11 under the theta sign convention used here;
//! both the eta*theta route and the theta-type sum form are cross-checked.

use num_rational::{BigRational, Ratio};
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::{big, product_expand, GradedSeries, Grading, Unit};

use super::qseries::eta_power_bounded;
use super::theta11::{theta11, theta11_units, Theta11Form};
use super::JacobiSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiKind {
    Psi5Half,
    Psi2Half,
}

/// Build psi_{5,1/2} or psi_{2,1/2} complete through stored z1-exponent
/// `order` (odd support starts at n = 1). Both independent constructions are
/// computed and compared before returning.
pub fn psi_half_form(kind: PsiKind, order: i64) -> Result<JacobiSeries> {
    assert!(order >= 1);
    match kind {
        PsiKind::Psi5Half => psi_5_half(order),
        PsiKind::Psi2Half => psi_2_half(order),
    }
}

fn triple_product(
    units: [Unit; 3],
    q_step: i64,
    eta_exponent: i64,
    leading: ([i64; 3], i64),
    bound: i64,
) -> Result<GradedSeries> {
    // prod (1-q^{n-1} r)(1-q^n r^{-1})(1-q^n)^k times (1 - r), shifted.
    let grading = Grading::new([1, 0, 0], bound);
    let mut factors = Vec::new();
    for n in 1..=(bound / q_step + 1) {
        factors.push(([q_step * n, 2, 0], 1));
        factors.push(([q_step * n, -2, 0], 1));
        factors.push(([q_step * n, 0, 0], eta_exponent));
    }
    let proto = GradedSeries::zero(2, units, grading);
    let p = product_expand(&factors, &proto)?;
    let mut one_minus_r = GradedSeries::zero(2, units, grading);
    one_minus_r.add_term([0, 0, 0], BigRational::one())?;
    one_minus_r.add_term([0, 2, 0], big(-1))?;
    p.mul(&one_minus_r)?.mul_monomial(leading.0, &big(leading.1))
}

fn psi_5_half(order: i64) -> Result<JacobiSeries> {
    let units = [Unit::one(); 3];
    // Product form: -q^{1/2} r^{-1/2} * triple product with (1-q^n)^10.
    // In pi*i units q = 2, r = 2, and the leading monomial is (1, -1).
    let product = triple_product(units, 2, 10, ([1, -1, 0], -1), order)?;

    // eta^9 * theta_11 in 1/12-units for z1, then rescaled down.
    let internal = 12 * order;
    let eta9 = eta_power_bounded(9, internal)?;
    let eta9 = eta9.map_exponents(
        2,
        [Unit::new(1, 12), Unit::one(), Unit::one()],
        Grading::new([1, 0, 0], internal),
        |e| *e,
    )?;
    let th = theta11((internal / 24) + 1, Theta11Form::Sum)?.series.rescale(
        [Unit::new(1, 12), Unit::one(), Unit::one()],
        Grading::new([1, 0, 0], internal),
    )?;
    let eta_theta = eta9.mul(&th)?.rescale(units, Grading::new([1, 0, 0], order))?;

    if let Some((e, a, b)) = product.first_difference(&eta_theta) {
        return Err(Error::Identity(format!(
            "psi_5_half: product form and eta^9*theta_11 differ at {e:?}: {a} vs {b}"
        )));
    }
    for (e, _) in product.iter() {
        if e[0] % 2 == 0 || e[1] % 2 == 0 || e[0] < 1 || 4 * e[0] - e[1] * e[1] <= 0 {
            return Err(Error::Identity(format!("psi_5_half support violation at {e:?}")));
        }
    }
    Ok(JacobiSeries::new(product, Ratio::from_integer(5), Ratio::new(1, 2), "psi_5_half"))
}

fn psi_2_half(order: i64) -> Result<JacobiSeries> {
    let units = [Unit::new(1, 2), Unit::one(), Unit::one()];
    // Product form: +q^{1/4} r^{-1/2} * triple product with (1-q^n)^4.
    // In these units q = 4, r = 2, and the leading monomial is (1, -1).
    let product = triple_product(units, 4, 4, ([1, -1, 0], 1), order)?;

    // Sum form: product of the two theta-type series
    //   sum_{n odd} (-1)^{(n+1)/2} exp(pi i/4 n^2 z1 + pi i n z2)
    //   sum_{m = 1 mod 4} m exp(pi i/4 m^2 z1)
    // computed on 1/4-units and rescaled down by 2.
    let internal = 2 * order;
    let grading = Grading::new([1, 0, 0], internal);
    let quarter = theta11_units();
    let mut first = GradedSeries::zero(2, quarter, grading);
    let mut n = 1i64;
    while n * n <= internal {
        for m in [n, -n] {
            // (-1)^{(m+1)/2}
            let sign = if ((m + 1) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            first.add_term([m * m, m, 0], big(sign))?;
        }
        n += 2;
    }
    let mut second = GradedSeries::zero(2, quarter, grading);
    let mut m = 1i64;
    while m * m <= internal {
        for v in [m, -m] {
            if v.rem_euclid(4) == 1 {
                second.add_term([v * v, 0, 0], big(v))?;
            }
        }
        m += 1;
    }
    let sum_form = first.mul(&second)?.rescale(units, Grading::new([1, 0, 0], order))?;
    if let Some((e, a, b)) = product.first_difference(&sum_form) {
        return Err(Error::Identity(format!(
            "psi_2_half: product form and theta-sum form differ at {e:?}: {a} vs {b}"
        )));
    }

    // eta^3 * theta_11 equals minus this series.
    let internal12 = 6 * order;
    let eta3 = eta_power_bounded(3, internal12)?.map_exponents(
        2,
        [Unit::new(1, 12), Unit::one(), Unit::one()],
        Grading::new([1, 0, 0], internal12),
        |e| *e,
    )?;
    let th = theta11(internal12 / 24 + 1, Theta11Form::Sum)?.series.rescale(
        [Unit::new(1, 12), Unit::one(), Unit::one()],
        Grading::new([1, 0, 0], internal12),
    )?;
    let eta_theta = eta3.mul(&th)?.rescale(units, Grading::new([1, 0, 0], order))?;
    if let Some((e, a, b)) = product.first_difference(&eta_theta.neg()) {
        return Err(Error::Identity(format!(
            "psi_2_half: product form and -eta^3*theta_11 differ at {e:?}: {a} vs {b}"
        )));
    }

    for (e, _) in product.iter() {
        if e[0].rem_euclid(4) != 1 || e[1] % 2 == 0 || 2 * e[0] - e[1] * e[1] <= 0 {
            return Err(Error::Identity(format!("psi_2_half support violation at {e:?}")));
        }
    }
    Ok(JacobiSeries::new(product, Ratio::from_integer(2), Ratio::new(1, 2), "psi_2_half"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_5_half_leading_g_values() {
        let p = psi_half_form(PsiKind::Psi5Half, 3).unwrap().series;
        assert_eq!(p.coeff(&[1, 1, 0]), big(1));
        assert_eq!(p.coeff(&[1, -1, 0]), big(-1));
        // q^{3/2} row from expanding the product by hand.
        assert_eq!(p.coeff(&[3, -3, 0]), big(1));
        assert_eq!(p.coeff(&[3, -1, 0]), big(9));
        assert_eq!(p.coeff(&[3, 1, 0]), big(-9));
        assert_eq!(p.coeff(&[3, 3, 0]), big(-1));
    }

    #[test]
    fn psi_2_half_leading_c_values() {
        let p = psi_half_form(PsiKind::Psi2Half, 5).unwrap().series;
        assert_eq!(p.coeff(&[1, -1, 0]), big(1));
        assert_eq!(p.coeff(&[1, 1, 0]), big(-1));
    }

    #[test]
    fn psi_2_half_support_is_1_mod_4() {
        let p = psi_half_form(PsiKind::Psi2Half, 21).unwrap().series;
        assert!(!p.is_empty());
        for (e, _) in p.iter() {
            assert_eq!(e[0].rem_euclid(4), 1);
            assert_eq!(e[1].rem_euclid(2), 1);
            assert!(2 * e[0] > e[1] * e[1]);
        }
    }
}
