//! Jacobi-Eisenstein series E_{4,1} and E_{6,1} with coefficients
//! H(k-1, 4n-l^2) / zeta(3-2k), where H(r, N) are the Cohen numbers.
//!
//! H(r, N) is computed from the closed formula: H(r, 0) = zeta(1-2r), and
//! for N > 0 with (-1)^r N = D f^2 (D a fundamental discriminant)
//!   H(r, N) = L_D(1-r) * sum_{d | f} mu(d) (D/d) d^{r-1} sigma_{2r-1}(f/d),
//! with L_D(1-r) = -B_{r, chi_D} / r evaluated through Bernoulli polynomials:
//!   B_{r, chi} = |D|^{r-1} sum_{a=1}^{|D|} chi(a) B_r(a/|D|).
//! Only r = 3 and r = 5 are needed here.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::arith::{
    bernoulli_poly, divisors, kronecker, moebius, rat, sigma, squarefree_decomposition,
    zeta_odd_negative,
};
use crate::error::{Error, Result};
use crate::series::{GradedSeries, Grading, Unit};

use super::JacobiSeries;

/// Cohen number H(r, N) for r in {3, 5}, N >= 0.
pub fn cohen_number(r: u32, n_disc: i64) -> Result<BigRational> {
    if r != 3 && r != 5 {
        return Err(Error::Domain(format!("cohen_number: r = {r} not in {{3, 5}}")));
    }
    if n_disc < 0 {
        return Err(Error::Domain("cohen_number: N must be >= 0".into()));
    }
    if n_disc == 0 {
        return Ok(zeta_odd_negative(r));
    }
    // r is odd, so (-1)^r N = -N must be 0 or 1 mod 4.
    let m = n_disc.rem_euclid(4);
    if m == 1 || m == 2 {
        return Ok(BigRational::zero());
    }
    let (s, f) = squarefree_decomposition(n_disc);
    let (d_fund, f_cond) = if s.rem_euclid(4) == 3 {
        (-s, f)
    } else {
        debug_assert!(f % 2 == 0, "N = 0 mod 4 forces an even square part here");
        (-4 * s, f / 2)
    };
    // L_D(1-r) = -B_{r, chi_D} / r.
    let abs_d = -d_fund;
    let mut b_chi = BigRational::zero();
    for a in 1..=abs_d {
        let chi = kronecker(d_fund, a);
        if chi != 0 {
            b_chi += rat(chi, 1) * bernoulli_poly(r, &rat(a, abs_d));
        }
    }
    b_chi *= BigRational::from_integer(BigInt::from(abs_d).pow(r - 1));
    let l_value = -b_chi / rat(r as i64, 1);
    // Divisor correction over the conductor part.
    let mut corr = BigRational::zero();
    for d in divisors(f_cond) {
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d_fund, d);
        if chi == 0 {
            continue;
        }
        let term = BigInt::from(mu * chi) * BigInt::from(d).pow(r - 1) * sigma(f_cond / d, 2 * r - 1);
        corr += BigRational::from_integer(term);
    }
    Ok(l_value * corr)
}

pub fn two_pi_units() -> [Unit; 3] {
    [Unit::new(2, 1), Unit::new(2, 1), Unit::one()]
}

/// E_{k,1} through q^order, k in {4, 6}. Coefficients are asserted integral
/// with constant term 1; a failure here signals a Cohen-formula bug.
pub fn jacobi_eisenstein(k: u32, order: i64) -> Result<JacobiSeries> {
    if k != 4 && k != 6 {
        return Err(Error::Domain(format!("jacobi_eisenstein: k = {k} not in {{4, 6}}")));
    }
    let r = k - 1;
    let zeta = zeta_odd_negative(r);
    // The coefficient depends only on the discriminant 4n - l^2; evaluate
    // each Cohen number once.
    let mut by_disc: Vec<Option<BigRational>> = vec![None; (4 * order + 1) as usize];
    let mut s = GradedSeries::zero(2, two_pi_units(), Grading::new([1, 0, 0], order));
    for n in 0..=order {
        let mut l = 0i64;
        while l * l <= 4 * n {
            let disc = (4 * n - l * l) as usize;
            if by_disc[disc].is_none() {
                let c = cohen_number(r, disc as i64)? / zeta.clone();
                if !c.denom().is_one() {
                    return Err(Error::Identity(format!(
                        "E_{{{k},1}} coefficient at (n, l) = ({n}, {l}) is not integral: {c}"
                    )));
                }
                by_disc[disc] = Some(c);
            }
            let c = by_disc[disc].clone().expect("just filled");
            for sl in if l == 0 { vec![0] } else { vec![l, -l] } {
                s.add_term([n, sl, 0], c.clone())?;
            }
            l += 1;
        }
    }
    if !s.coeff(&[0, 0, 0]).is_one() {
        return Err(Error::Identity(format!("E_{{{k},1}} constant term is not 1")));
    }
    Ok(JacobiSeries::new(s, Ratio::from_integer(k as i64), Ratio::one(), &format!("e{k}_1")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::big;

    #[test]
    fn cohen_ground_values() {
        // H(3, 0) = zeta(-5) = -1/252 and H(5, 0) = zeta(-9) = -1/132.
        assert_eq!(cohen_number(3, 0).unwrap(), rat(-1, 252));
        assert_eq!(cohen_number(5, 0).unwrap(), rat(-1, 132));
        // N = 1, 2 mod 4 vanish for odd r.
        assert_eq!(cohen_number(3, 1).unwrap(), BigRational::zero());
        assert_eq!(cohen_number(5, 6).unwrap(), BigRational::zero());
        // Hand-evaluated through Bernoulli polynomials at thirds/quarters.
        assert_eq!(cohen_number(3, 3).unwrap(), rat(-2, 9));
        assert_eq!(cohen_number(3, 4).unwrap(), rat(-1, 2));
        assert_eq!(cohen_number(5, 3).unwrap(), rat(2, 3));
        assert_eq!(cohen_number(5, 4).unwrap(), rat(5, 2));
        // Composite square part: H(3, 12) uses D = -3, f = 2.
        assert_eq!(cohen_number(3, 12).unwrap(), rat(-2, 9) * rat(37, 1));
    }

    #[test]
    fn e41_q1_row() {
        let e = jacobi_eisenstein(4, 3).unwrap().series;
        assert_eq!(e.coeff(&[0, 0, 0]), big(1));
        assert_eq!(e.coeff(&[1, 0, 0]), big(126));
        assert_eq!(e.coeff(&[1, 1, 0]), big(56));
        assert_eq!(e.coeff(&[1, -1, 0]), big(56));
        assert_eq!(e.coeff(&[1, 2, 0]), big(1));
        assert_eq!(e.coeff(&[1, -2, 0]), big(1));
    }

    #[test]
    fn e61_q1_row() {
        let e = jacobi_eisenstein(6, 3).unwrap().series;
        assert_eq!(e.coeff(&[1, 0, 0]), big(-330));
        assert_eq!(e.coeff(&[1, 1, 0]), big(-88));
        assert_eq!(e.coeff(&[1, 2, 0]), big(1));
    }

    #[test]
    fn rejects_other_weights() {
        assert!(jacobi_eisenstein(8, 2).is_err());
        assert!(cohen_number(4, 3).is_err());
    }
}
