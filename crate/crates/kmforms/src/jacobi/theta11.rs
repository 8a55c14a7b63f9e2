//! The Jacobi theta series theta_11(z1, z2), in sum form
//!   sum_n (-1)^n exp(pi*i/4 (2n+1)^2 z1 + pi*i (2n+1) z2)
//! and in triple-product form
//!   -q^{1/8} r^{-1/2} prod_{n>=1} (1-q^{n-1}r)(1-q^n r^{-1})(1-q^n),
//! with q = exp(2 pi i z1), r = exp(2 pi i z2).
//!
//! Stored units: z1 on 1/4 (so q = 8, and the leading q^{1/8} is stored 1),
//! z2 on 1 (r = 2, r^{1/2} = 1).

use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::series::{big, product_expand, GradedSeries, Grading, Unit};

use super::JacobiSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta11Form {
    Sum,
    Product,
}

pub fn theta11_units() -> [Unit; 3] {
    [Unit::new(1, 4), Unit::one(), Unit::one()]
}

/// theta_11 complete through q^order (stored z1 exponent 8*order + 1).
pub fn theta11(order: i64, form: Theta11Form) -> Result<JacobiSeries> {
    assert!(order >= 0);
    let bound = 8 * order + 1;
    let grading = Grading::new([1, 0, 0], bound);
    let series = match form {
        Theta11Form::Sum => {
            let mut s = GradedSeries::zero(2, theta11_units(), grading);
            let mut n = 0i64;
            loop {
                let mut hit = false;
                for m in [2 * n + 1, -(2 * n + 1)] {
                    if m * m > bound {
                        continue;
                    }
                    hit = true;
                    // m = 2k+1 gives sign (-1)^k.
                    let k = (m - 1).div_euclid(2);
                    let sign = if k.rem_euclid(2) == 0 { big(1) } else { big(-1) };
                    s.add_term([m * m, m, 0], sign)?;
                }
                if !hit {
                    break;
                }
                n += 1;
            }
            s
        }
        Theta11Form::Product => {
            let mut factors = Vec::new();
            for n in 1..=(bound / 8 + 1) {
                factors.push(([8 * n, 2, 0], 1)); // (1 - q^n r), n >= 1
                factors.push(([8 * n, -2, 0], 1)); // (1 - q^n / r)
                factors.push(([8 * n, 0, 0], 1)); // (1 - q^n)
            }
            let proto = GradedSeries::zero(2, theta11_units(), grading);
            let p = product_expand(&factors, &proto)?;
            // The n = 1 factor (1 - q^0 r) sits at grading level 0 and is
            // multiplied in directly.
            let mut one_minus_r = GradedSeries::zero(2, theta11_units(), grading);
            one_minus_r.add_term([0, 0, 0], BigRational::one())?;
            one_minus_r.add_term([0, 2, 0], big(-1))?;
            p.mul(&one_minus_r)?.mul_monomial([1, -1, 0], &big(-1))?
        }
    };
    Ok(JacobiSeries::new(
        series,
        Unit::new(1, 2),
        Unit::new(1, 2),
        "theta11",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_equals_product_to_order_10() {
        let s = theta11(10, Theta11Form::Sum).unwrap();
        let p = theta11(10, Theta11Form::Product).unwrap();
        assert_eq!(s.series, p.series);
    }

    #[test]
    fn leading_terms() {
        // -q^{1/8} r^{-1/2} + q^{1/8} r^{1/2} + ...
        let s = theta11(2, Theta11Form::Sum).unwrap().series;
        assert_eq!(s.coeff(&[1, -1, 0]), big(-1));
        assert_eq!(s.coeff(&[1, 1, 0]), big(1));
    }

    #[test]
    fn r_inversion_flips_sign() {
        let s = theta11(6, Theta11Form::Sum).unwrap().series;
        for (e, c) in s.iter() {
            assert_eq!(s.coeff(&[e[0], -e[1], 0]), -c.clone());
        }
    }
}
