//! Formal log/exp, infinite-product expansion and product-exponent
//! extraction on graded series.
//!
//! All four operations work level-by-level in the grading: because lambda is
//! additive and >= 1 on every non-constant term involved, the recursions are
//! triangular and exact up to the truncation bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};

use super::{big, Exponent, GradedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogDirection {
    Log,
    Exp,
}

/// Dispatch wrapper: `Log` needs constant term 1, `Exp` constant term 0.
pub fn formal_log_exp(s: &GradedSeries, direction: LogDirection) -> Result<GradedSeries> {
    match direction {
        LogDirection::Log => log(s),
        LogDirection::Exp => exp(s),
    }
}

fn check_positive_support(s: &GradedSeries, what: &str) -> Result<()> {
    for (e, _) in s.iter() {
        if *e != [0, 0, 0] && s.lambda(e) == 0 {
            return Err(Error::Domain(format!(
                "{what}: non-constant term {e:?} sits at grading level 0"
            )));
        }
    }
    Ok(())
}

/// Euler operator for the grading: x^e -> lambda(e) x^e.
fn euler(s: &GradedSeries) -> GradedSeries {
    let mut out = GradedSeries::zero(s.dim(), *s.units(), s.grading());
    for (e, c) in s.iter() {
        let lam = s.lambda(e);
        if lam != 0 {
            out.add_term(*e, c * big(lam)).expect("support stays in range");
        }
    }
    out
}

/// Multiplicative inverse of a series with constant term 1.
pub fn inverse(s: &GradedSeries) -> Result<GradedSeries> {
    if !s.coeff(&[0, 0, 0]).is_one() {
        return Err(Error::Domain("inverse requires constant term 1".into()));
    }
    check_positive_support(s, "inverse")?;
    let bound = s.bound();
    // Group the non-constant part of s by level.
    let mut s_by_level: Vec<Vec<(Exponent, BigRational)>> =
        vec![Vec::new(); (bound + 1).max(1) as usize];
    for (e, c) in s.iter() {
        let lam = s.lambda(e);
        if lam >= 1 {
            s_by_level[lam as usize].push((*e, c.clone()));
        }
    }
    let mut inv_by_level: Vec<HashMap<Exponent, BigRational>> =
        vec![HashMap::new(); (bound + 1).max(1) as usize];
    inv_by_level[0].insert([0, 0, 0], BigRational::one());
    for level in 1..=bound.max(0) {
        let mut acc: HashMap<Exponent, BigRational> = HashMap::new();
        for mu in 1..=level {
            for (es, cs) in &s_by_level[mu as usize] {
                for (ei, ci) in &inv_by_level[(level - mu) as usize] {
                    let e = [es[0] + ei[0], es[1] + ei[1], es[2] + ei[2]];
                    let entry = acc.entry(e).or_insert_with(BigRational::zero);
                    *entry -= cs * ci;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        inv_by_level[level as usize] = acc;
    }
    let mut out = GradedSeries::zero(s.dim(), *s.units(), s.grading());
    for level in inv_by_level {
        for (e, c) in level {
            out.add_term(e, c)?;
        }
    }
    Ok(out)
}

/// Formal logarithm of a series with constant term 1, via the Euler-operator
/// identity D(log s) = D(s) * s^{-1}.
pub fn log(s: &GradedSeries) -> Result<GradedSeries> {
    if !s.coeff(&[0, 0, 0]).is_one() {
        return Err(Error::Domain("log requires constant term 1".into()));
    }
    check_positive_support(s, "log")?;
    let inv = inverse(s)?;
    let ds = euler(s);
    let prod = ds.mul(&inv)?;
    let mut out = GradedSeries::zero(s.dim(), *s.units(), s.grading());
    for (e, c) in prod.iter() {
        let lam = s.lambda(e);
        debug_assert!(lam >= 1);
        out.add_term(*e, c / big(lam))?;
    }
    Ok(out)
}

/// Formal exponential of a series with constant term 0, via
/// D(exp u) = D(u) * exp u, solved level by level.
pub fn exp(u: &GradedSeries) -> Result<GradedSeries> {
    if !u.coeff(&[0, 0, 0]).is_zero() {
        return Err(Error::Domain("exp requires constant term 0".into()));
    }
    check_positive_support(u, "exp")?;
    let bound = u.bound();
    let du = euler(u);
    let mut du_by_level: Vec<Vec<(Exponent, BigRational)>> =
        vec![Vec::new(); (bound + 1).max(1) as usize];
    for (e, c) in du.iter() {
        du_by_level[u.lambda(e) as usize].push((*e, c.clone()));
    }
    let mut x_by_level: Vec<HashMap<Exponent, BigRational>> =
        vec![HashMap::new(); (bound + 1).max(1) as usize];
    x_by_level[0].insert([0, 0, 0], BigRational::one());
    for level in 1..=bound.max(0) {
        let mut acc: HashMap<Exponent, BigRational> = HashMap::new();
        for mu in 1..=level {
            for (eu, cu) in &du_by_level[mu as usize] {
                for (ex, cx) in &x_by_level[(level - mu) as usize] {
                    let e = [eu[0] + ex[0], eu[1] + ex[1], eu[2] + ex[2]];
                    let entry = acc.entry(e).or_insert_with(BigRational::zero);
                    *entry += cu * cx;
                }
            }
        }
        let lev = big(level);
        acc.retain(|_, c| !c.is_zero());
        for c in acc.values_mut() {
            *c /= lev.clone();
        }
        x_by_level[level as usize] = acc;
    }
    let mut out = GradedSeries::zero(u.dim(), *u.units(), u.grading());
    for level in x_by_level {
        for (e, c) in level {
            out.add_term(e, c)?;
        }
    }
    Ok(out)
}

/// Expand `prod (1 - x^alpha)^{mult(alpha)}` truncated by the grading of
/// `proto` (a template carrying dim/units/grading). Every factor exponent
/// must sit at lambda >= 1; multiplicities may be negative (formal
/// reciprocals via the negative binomial series).
pub fn product_expand(
    factors: &[(Exponent, i64)],
    proto: &GradedSeries,
) -> Result<GradedSeries> {
    let bound = proto.bound();
    let mut out = GradedSeries::one(proto.dim(), *proto.units(), proto.grading());
    // Highest level first: those factors expand to the fewest terms, keeping
    // intermediate products small.
    let mut ordered: Vec<&(Exponent, i64)> = factors.iter().collect();
    ordered.sort_by_key(|(e, _)| std::cmp::Reverse(proto.grading().lambda(e)));
    for (alpha, mult) in ordered {
        if *mult == 0 {
            continue;
        }
        let lam = proto.grading().lambda(alpha);
        if lam < 1 {
            return Err(Error::Domain(format!(
                "product factor {alpha:?} has non-positive grading value {lam}"
            )));
        }
        let kmax = bound / lam;
        let mut factor = GradedSeries::zero(proto.dim(), *proto.units(), proto.grading());
        for k in 0..=kmax {
            let c = if *mult > 0 {
                if k > *mult {
                    break;
                }
                let b = binomial(&BigInt::from(*mult), k as u64);
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            } else {
                // (1-x)^m with m<0: sum_k C(-m+k-1, k) x^k
                binomial(&BigInt::from(-*mult + k - 1), k as u64)
            };
            factor.add_term(
                [alpha[0] * k, alpha[1] * k, alpha[2] * k],
                BigRational::from_integer(c),
            )?;
        }
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Invert a product form: find the unique integer exponents e(alpha) with
/// `s = prod (1 - x^alpha)^{e(alpha)}` up to the bound.
///
/// Taking logs, the coefficient of x^beta in log(s) is
/// `c(beta) = -sum_{k >= 1, k*alpha = beta} e(alpha) / k`,
/// a triangular system in increasing lambda. Non-integer e(alpha) is an
/// identity violation and reports the offending exponent.
pub fn extract_product_exponents(s: &GradedSeries) -> Result<BTreeMap<Exponent, i64>> {
    if !s.coeff(&[0, 0, 0]).is_one() {
        return Err(Error::Domain(
            "product extraction requires constant term 1".into(),
        ));
    }
    check_positive_support(s, "extract_product_exponents")?;
    let l = log(s)?;
    let bound = s.bound();
    let mut todo: BTreeSet<(i64, Exponent)> = BTreeSet::new();
    for (e, _) in l.iter() {
        todo.insert((s.lambda(e), *e));
    }
    let mut found: BTreeMap<Exponent, i64> = BTreeMap::new();
    while let Some((lam, beta)) = todo.iter().next().copied() {
        todo.remove(&(lam, beta));
        // value = -(c(beta) + sum_{k>=2, beta = k*alpha} e(alpha)/k)
        let mut value = -l.coeff(&beta);
        for k in 2..=lam {
            if beta.iter().all(|&b| b % k == 0) {
                let alpha = [beta[0] / k, beta[1] / k, beta[2] / k];
                if let Some(ea) = found.get(&alpha) {
                    value -= BigRational::new(BigInt::from(*ea), BigInt::from(k));
                }
            }
        }
        if value.is_zero() {
            continue;
        }
        if !value.denom().is_one() {
            return Err(Error::Identity(format!(
                "product exponent at {beta:?} is not an integer: {value}"
            )));
        }
        let as_int = value.numer().clone();
        let e_beta = i64::try_from(&as_int).map_err(|_| {
            Error::Domain(format!("product exponent at {beta:?} overflows i64: {as_int}"))
        })?;
        found.insert(beta, e_beta);
        // Multiples of beta may now acquire corrections even where log(s)
        // has no coefficient; queue them.
        let mut k = 2;
        while k * lam <= bound {
            let mult = [beta[0] * k, beta[1] * k, beta[2] * k];
            if !found.contains_key(&mult) {
                todo.insert((k * lam, mult));
            }
            k += 1;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Grading, Unit};

    fn qs(bound: i64) -> GradedSeries {
        GradedSeries::zero(
            1,
            [Unit::new(2, 1), Unit::one(), Unit::one()],
            Grading::new([1, 0, 0], bound),
        )
    }

    fn poly(coeffs: &[(i64, i64)], bound: i64) -> GradedSeries {
        let mut s = qs(bound);
        for &(e, c) in coeffs {
            s.add_term([e, 0, 0], big(c)).unwrap();
        }
        s
    }

    #[test]
    fn mercator_series() {
        // log(1 - q) = -q - q^2/2 - q^3/3
        let s = poly(&[(0, 1), (1, -1)], 3);
        let l = log(&s).unwrap();
        assert_eq!(l.coeff(&[1, 0, 0]), big(-1));
        assert_eq!(l.coeff(&[2, 0, 0]), BigRational::new((-1).into(), 2.into()));
        assert_eq!(l.coeff(&[3, 0, 0]), BigRational::new((-1).into(), 3.into()));
    }

    #[test]
    fn exp_log_round_trip() {
        let s = poly(&[(0, 1), (1, -9), (2, 27)], 2);
        let back = exp(&log(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        // Same through the direction dispatch.
        let l = formal_log_exp(&s, LogDirection::Log).unwrap();
        assert_eq!(formal_log_exp(&l, LogDirection::Exp).unwrap(), s);
    }

    #[test]
    fn log_wrong_constant_term() {
        let s = poly(&[(0, 2), (1, 1)], 3);
        assert!(matches!(log(&s), Err(Error::Domain(_))));
        assert!(matches!(exp(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn product_expand_hand_oracle() {
        // (1-q)^9 (1-q^2)^9 (1-q^3)^9 -> 1 - 9q + 27q^2 - 12q^3
        let proto = qs(3);
        let p = product_expand(
            &[([1, 0, 0], 9), ([2, 0, 0], 9), ([3, 0, 0], 9)],
            &proto,
        )
        .unwrap();
        assert_eq!(p, poly(&[(0, 1), (1, -9), (2, 27), (3, -12)], 3));
    }

    #[test]
    fn product_expand_empty_and_geometric() {
        let proto = qs(3);
        assert!(product_expand(&[], &proto).unwrap().is_one());
        // (1-q)^{-1} = 1 + q + q^2 + q^3
        let g = product_expand(&[([1, 0, 0], -1)], &proto).unwrap();
        assert_eq!(g, poly(&[(0, 1), (1, 1), (2, 1), (3, 1)], 3));
    }

    #[test]
    fn extract_single_factor() {
        let s = poly(&[(0, 1), (1, -1)], 6);
        let e = extract_product_exponents(&s).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&[1, 0, 0]], 1);
    }

    #[test]
    fn extract_inverts_hand_oracle() {
        let s = poly(&[(0, 1), (1, -9), (2, 27), (3, -12)], 3);
        let e = extract_product_exponents(&s).unwrap();
        let expect: BTreeMap<Exponent, i64> =
            [([1, 0, 0], 9), ([2, 0, 0], 9), ([3, 0, 0], 9)].into_iter().collect();
        assert_eq!(e, expect);
    }

    #[test]
    fn extract_rejects_non_integer_exponent() {
        // 1 - q/2 has log coefficient -1/2 at q: not an integer exponent.
        let mut s = qs(4);
        s.add_term([0, 0, 0], big(1)).unwrap();
        s.add_term([1, 0, 0], BigRational::new((-1).into(), 2.into())).unwrap();
        assert!(matches!(
            extract_product_exponents(&s),
            Err(Error::Identity(_))
        ));
    }

    #[test]
    fn two_variable_round_trip() {
        // Factors with mixed signs of the second exponent, lambda = 2a - b.
        let proto = GradedSeries::zero(
            2,
            [Unit::new(2, 1), Unit::new(2, 1), Unit::one()],
            Grading::new([2, -1, 0], 10),
        );
        let factors = vec![
            ([0, -1, 0], 1),
            ([1, 1, 0], -64),
            ([1, 0, 0], 10),
            ([1, -1, 0], 3),
            ([2, 1, 0], 7),
        ];
        let p = product_expand(&factors, &proto).unwrap();
        let e = extract_product_exponents(&p).unwrap();
        let expect: BTreeMap<Exponent, i64> = factors.into_iter().collect();
        assert_eq!(e, expect);
    }
}
