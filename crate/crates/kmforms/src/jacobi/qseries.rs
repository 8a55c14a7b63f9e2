//! Classical one-variable q-series: eta powers, the level-1 Eisenstein
//! series E_4 and E_6, and the cusp form Delta_12 = q prod (1-q^n)^24.

use num_rational::BigRational;
use num_traits::One;

use crate::arith::sigma;
use crate::error::Result;
use crate::series::{product_expand, GradedSeries, Grading, Unit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSeriesKind {
    /// eta(z)^p = q^{p/24} prod (1-q^n)^p, p >= 1.
    EtaPower(u32),
    E4,
    E6,
    Delta12,
}

pub fn q_units() -> [Unit; 3] {
    [Unit::new(2, 1), Unit::one(), Unit::one()]
}

pub fn eta_units() -> [Unit; 3] {
    [Unit::new(1, 12), Unit::one(), Unit::one()]
}

/// Exact q-expansion. `order` is the number of q-powers past the leading
/// term: E-series and Delta_12 are complete through q^order; eta^p is
/// complete through q^{p/24 + order}.
pub fn classical_qseries(kind: QSeriesKind, order: i64) -> Result<GradedSeries> {
    assert!(order >= 0);
    match kind {
        QSeriesKind::EtaPower(p) => {
            assert!(p >= 1);
            eta_power_bounded(p, p as i64 + 24 * order)
        }
        QSeriesKind::E4 => {
            let mut s = GradedSeries::one(1, q_units(), Grading::new([1, 0, 0], order));
            for n in 1..=order {
                s.add_term([n, 0, 0], BigRational::from_integer(240 * sigma(n, 3)))?;
            }
            Ok(s)
        }
        QSeriesKind::E6 => {
            let mut s = GradedSeries::one(1, q_units(), Grading::new([1, 0, 0], order));
            for n in 1..=order {
                s.add_term([n, 0, 0], BigRational::from_integer(-504 * sigma(n, 5)))?;
            }
            Ok(s)
        }
        QSeriesKind::Delta12 => {
            let proto = GradedSeries::zero(1, q_units(), Grading::new([1, 0, 0], order - 1));
            let factors: Vec<_> = (1..=(order - 1).max(0)).map(|n| ([n, 0, 0], 24)).collect();
            let prod = product_expand(&factors, &proto)?;
            let mut s = GradedSeries::zero(1, q_units(), Grading::new([1, 0, 0], order));
            for (e, c) in prod.iter() {
                s.add_term([e[0] + 1, 0, 0], c.clone())?;
            }
            Ok(s)
        }
    }
}

/// eta^p complete through stored exponent `stored_bound` in 1/12-units
/// (stored exponent k represents exp(pi*i*k*z/12), so q = 24).
pub fn eta_power_bounded(p: u32, stored_bound: i64) -> Result<GradedSeries> {
    let product_bound = (stored_bound - p as i64).max(0);
    let proto = GradedSeries::zero(1, eta_units(), Grading::new([1, 0, 0], product_bound));
    let factors: Vec<_> = (1..=product_bound / 24).map(|n| ([24 * n, 0, 0], p as i64)).collect();
    let prod = product_expand(&factors, &proto)?;
    let mut s = GradedSeries::zero(1, eta_units(), Grading::new([1, 0, 0], stored_bound));
    for (e, c) in prod.iter() {
        s.add_term([e[0] + p as i64, 0, 0], c.clone())?;
    }
    Ok(s)
}

/// Re-dimension a one-variable series as the first variable of a
/// two-variable series with the given z_2 unit.
pub fn embed_in_two_vars(s: &GradedSeries, z2_unit: Unit) -> GradedSeries {
    let units = [s.units()[0], z2_unit, Unit::one()];
    let grading = Grading::new([s.grading().weights[0], 0, 0], s.bound());
    s.map_exponents(2, units, grading, |e| *e)
        .expect("embedding preserves support")
}

#[cfg(test)]
mod tests {
    use crate::series::big;
    use super::*;

    #[test]
    fn e4_first_terms() {
        let e4 = classical_qseries(QSeriesKind::E4, 2).unwrap();
        assert_eq!(e4.coeff(&[0, 0, 0]), big(1));
        assert_eq!(e4.coeff(&[1, 0, 0]), big(240));
        assert_eq!(e4.coeff(&[2, 0, 0]), big(2160));
    }

    #[test]
    fn e6_first_terms() {
        let e6 = classical_qseries(QSeriesKind::E6, 2).unwrap();
        assert_eq!(e6.coeff(&[1, 0, 0]), big(-504));
        assert_eq!(e6.coeff(&[2, 0, 0]), big(-16632));
    }

    #[test]
    fn delta12_first_terms() {
        // q - 24q^2 + 252q^3 - ...
        let d = classical_qseries(QSeriesKind::Delta12, 3).unwrap();
        assert_eq!(d.coeff(&[1, 0, 0]), big(1));
        assert_eq!(d.coeff(&[2, 0, 0]), big(-24));
        assert_eq!(d.coeff(&[3, 0, 0]), big(252));
        assert_eq!(d.coeff(&[0, 0, 0]), big(0));
    }

    #[test]
    fn eta_24_is_delta12_rescaled() {
        let eta24 = classical_qseries(QSeriesKind::EtaPower(24), 3).unwrap();
        let d = eta24
            .rescale(q_units(), Grading::new([1, 0, 0], 4))
            .unwrap();
        let direct = classical_qseries(QSeriesKind::Delta12, 4).unwrap();
        assert_eq!(d, direct);
    }

    #[test]
    fn eta_leading_exponent_carries_prefix() {
        // eta^9 starts at q^{9/24} = stored exponent 9 in 1/12-units.
        let eta9 = classical_qseries(QSeriesKind::EtaPower(9), 1).unwrap();
        assert_eq!(eta9.coeff(&[9, 0, 0]), big(1));
        assert_eq!(eta9.coeff(&[9 + 24, 0, 0]), big(-9));
    }
}
