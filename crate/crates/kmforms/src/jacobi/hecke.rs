//! The "minus" Hecke operators T_-(m) on Jacobi forms, acting on Fourier
//! coefficients, and the logarithmic identity they induce on the m > 0
//! factor of the Borcherds product for Delta_5.
//!
//! For a weight-k index-t form phi~ = phi(z1,z2) exp(2 pi i t z3) the
//! normalization is
//!   (phi~ |_k T_-(m)) = m^{2k-3} sum_{ad=m} d^{1-k}
//!         sum_{n,l} f(dn, l) exp(2 pi i (a n z1 + a l z2 + m t z3)).
//! `t_minus` returns the m^2-scaled image m^2 (phi~ |_k T_-(m)); at weight 0
//! and index 1 its (an, al, ad)-coefficient is a^{-1} f(dn, l), and summing
//! over m >= 1 reproduces, coefficient by coefficient,
//!   -log prod_{n >= 0, c > 0, l} (1 - e(n z1 + l z2 + c z3))^{f(nc, l)}
//! whose e(a z1 + b z2 + c z3)-coefficient is
//!   -sum_{s | (a,b,c)} s^{-1} f(ac/s^2, b/s).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, gcd3, isqrt, rat};
use crate::error::{CheckReport, Error, Result};
use crate::series::{log, product_expand, Exponent, GradedSeries, Grading, Unit};

use super::JacobiSeries;

fn three_var_two_pi() -> [Unit; 3] {
    [Unit::new(2, 1), Unit::new(2, 1), Unit::new(2, 1)]
}

/// Return m^2 (phi~ |_k T_-(m)) as a 3-variable table truncated by
/// `out_grading` (which must weight the z1 and z3 exponents positively).
/// Insufficient input depth is a configuration error.
pub fn t_minus(phi: &JacobiSeries, m: i64, out_grading: Grading) -> Result<GradedSeries> {
    if m < 1 {
        return Err(Error::Domain("t_minus: m must be >= 1".into()));
    }
    if !phi.weight.is_integer() {
        return Err(Error::Domain("t_minus: integral weight required".into()));
    }
    let k = phi.weight.to_integer();
    if out_grading.weights[0] < 1 || out_grading.weights[2] < 1 {
        return Err(Error::Config(
            "t_minus: output grading must weight z1 and z3 positively".into(),
        ));
    }
    let mut out = GradedSeries::zero(3, three_var_two_pi(), out_grading);
    let phi_bound = phi.series.bound();
    for a in divisors(m) {
        let d = m / a;
        let mt = num_rational::Ratio::new(m, 1) * phi.index;
        if !mt.is_integer() {
            return Err(Error::Domain("t_minus: non-integral output index".into()));
        }
        let mt = mt.to_integer();
        // m^{2k-1} d^{1-k}: the operator normalization times the extra m^2.
        let norm = pow_rat(m, 2 * k - 1) * pow_rat(d, 1 - k);
        let needed = max_input_depth(&out_grading, a, d, mt, phi.index);
        if needed > phi_bound {
            return Err(Error::Config(format!(
                "t_minus: input complete to q-order {phi_bound} but divisor pair ({a},{d}) needs {needed}"
            )));
        }
        for (e, c) in phi.series.iter() {
            if e[0] % d != 0 {
                continue;
            }
            let n = e[0] / d;
            out.add_term([a * n, a * e[1], mt], c * &norm)?;
        }
    }
    Ok(out)
}

fn pow_rat(base: i64, exp: i64) -> BigRational {
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Largest input z1-exponent d*n that can still contribute inside the box.
/// The output lands at (a n, a l, mt), and a weak form of index t is
/// supported on l^2 <= 4 t N + t^2; scan n with a hard cap (the gradings
/// used here grow at least linearly in n across that window).
fn max_input_depth(grading: &Grading, a: i64, d: i64, mt: i64, index: num_rational::Ratio<i64>) -> i64 {
    let w = grading.weights;
    let bound = grading.bound;
    let mut max_dn = 0;
    for n in 0..=(4 * bound.abs() + 16) {
        let dn = d * n;
        let cap = num_rational::Ratio::new(4, 1) * index * num_rational::Ratio::from_integer(dn)
            + index * index;
        let lwin = isqrt(cap.ceil().to_integer().max(0));
        let l_opt = if w[1] >= 0 { -lwin } else { lwin };
        let lam_min = w[0] * a * n + w[1] * a * l_opt + w[2] * mt;
        if lam_min <= bound {
            max_dn = max_dn.max(dn);
        }
    }
    max_dn
}

/// Factor exponents (n, l, c) with c >= 1, n >= 0 and multiplicity
/// f(n c, l) != 0 inside the lambda = 2(n+c) - l <= bound box. Errors if the
/// input table is too shallow to decide a needed coefficient.
pub fn m_positive_factors(phi01: &JacobiSeries, bound: i64) -> Result<Vec<(Exponent, i64)>> {
    let mut factors = Vec::new();
    for c in 1..=(bound + 1) {
        for n in 0..=(bound + 1 - c) {
            let window = isqrt(4 * n * c + 1);
            let lo = (2 * (n + c) - bound).max(-window);
            let hi = (n + c + 1).min(window);
            if lo > hi {
                continue;
            }
            if n * c > phi01.series.bound() {
                return Err(Error::Config(format!(
                    "m_positive_factors: need f({}, l) but input stops at q-order {}",
                    n * c,
                    phi01.series.bound()
                )));
            }
            for l in lo..=hi {
                let coeff = phi01.series.coeff(&[n * c, l, 0]);
                if coeff.is_zero() {
                    continue;
                }
                let mult = i64::try_from(coeff.numer()).map_err(|_| {
                    Error::Domain("m_positive_factors: exponent overflows i64".into())
                })?;
                factors.push(([n, l, c], mult));
            }
        }
    }
    Ok(factors)
}

/// Verify the log identity on the box lambda(a,b,c) = 2(a+c) - b <= bound:
/// three routes must agree exactly -- the formal log of the expanded m > 0
/// product factor, the divisor sums over phi_{0,1} coefficients, and the
/// accumulated Hecke images -sum_m m^2 (phi~_{0,1} |_0 T_-(m)).
pub fn log_identity_check(phi01: &JacobiSeries, bound: i64) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("log-identity (m>0 factor, lambda <= {bound})"));
    let grading = Grading::new([2, -1, 2], bound);
    let f = |n: i64, l: i64| phi01.series.coeff(&[n, l, 0]);

    let proto = GradedSeries::zero(3, three_var_two_pi(), grading);
    let factors = m_positive_factors(phi01, bound)?;
    let product = product_expand(&factors, &proto)?;
    let lg = log(&product)?;

    // Route 2: divisor sums.
    let mut mismatches = 0;
    for (e, via_log) in lg.iter() {
        let (a, b, c) = (e[0], e[1], e[2]);
        if c < 1 {
            report.violation(format!("log support leaked to m = 0 at {e:?}"));
            continue;
        }
        let mut divisor_sum = BigRational::zero();
        for s in divisors(gcd3(a, b, c).max(1)) {
            if a % s == 0 && b % s == 0 && c % s == 0 {
                divisor_sum += f((a / s) * (c / s), b / s) / rat(s, 1);
            }
        }
        let expected = -divisor_sum;
        if *via_log != expected {
            mismatches += 1;
            if mismatches < 5 {
                report.violation(format!(
                    "divisor sum at ({a},{b},{c}): log gives {via_log}, sum gives {expected}"
                ));
            }
        }
    }
    report.note(format!(
        "checked {} log coefficients against divisor sums",
        lg.len()
    ));

    // Route 3: Hecke accumulation; z3-exponents c = m run to bound + 1.
    let mut hecke_sum = GradedSeries::zero(3, three_var_two_pi(), grading);
    for m in 1..=(bound + 1) {
        let image = t_minus(phi01, m, grading)?;
        hecke_sum = hecke_sum.add(&image)?;
    }
    if let Some((e, a, b)) = lg.first_difference(&hecke_sum.neg()) {
        report.violation(format!("Hecke route differs at {e:?}: log {a} vs -sum {b}"));
    } else {
        report.note("log of product equals -sum_m m^2 (phi | T_-(m)) on the whole box");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{weak_jacobi, WeakKind};
    use crate::series::big;

    #[test]
    fn t_minus_1_is_identity_on_coefficients() {
        let phi = weak_jacobi(WeakKind::Phi0_1, 6).unwrap();
        let grading = Grading::new([2, -1, 2], 8);
        let out = t_minus(&phi, 1, grading).unwrap();
        assert!(!out.is_empty());
        for (e, c) in out.iter() {
            assert_eq!(e[2], 1);
            assert_eq!(*c, phi.series.coeff(&[e[0], e[1], 0]));
        }
        assert_eq!(out.coeff(&[1, 1, 1]), big(-64));
    }

    #[test]
    fn t_minus_depth_guard() {
        let phi = weak_jacobi(WeakKind::Phi0_1, 2).unwrap();
        let grading = Grading::new([2, -1, 2], 12);
        assert!(matches!(
            t_minus(&phi, 4, grading),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn log_identity_small_box() {
        let phi = weak_jacobi(WeakKind::Phi0_1, 16).unwrap();
        let report = log_identity_check(&phi, 8).unwrap();
        assert!(report.passed, "{}", report.render());
    }

    #[test]
    fn log_coefficient_values() {
        // Coefficient of log at (1,1,1) is -f(1,1) = 64; at (2,2,2) it is
        // -f(4,2) - f(1,1)/2 by the divisor-sum oracle.
        let phi = weak_jacobi(WeakKind::Phi0_1, 16).unwrap();
        let grading = Grading::new([2, -1, 2], 8);
        let proto = GradedSeries::zero(3, three_var_two_pi(), grading);
        let f11 = phi.series.coeff(&[1, 1, 0]);
        let f42 = phi.series.coeff(&[4, 2, 0]);
        assert_eq!(f11, big(-64));
        let factors = m_positive_factors(&phi, 8).unwrap();
        let lg = log(&product_expand(&factors, &proto).unwrap()).unwrap();
        assert_eq!(lg.coeff(&[1, 1, 1]), big(64));
        assert_eq!(lg.coeff(&[2, 2, 2]), -(f42 + f11 / big(2)));
        // Frozen from the divisor-sum oracle: f(4,2) = 4016, f(1,1) = -64,
        // so the coefficient is -4016 + 32 = -3984.
        assert_eq!(lg.coeff(&[2, 2, 2]), big(-3984));
    }
}
