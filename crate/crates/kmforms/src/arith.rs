//! Elementary exact number theory used across the crate: binomials, divisor
//! sums, Moebius, Kronecker symbols and the handful of Bernoulli values the
//! Eisenstein machinery needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k) for integer n >= 0 (k > n gives 0).
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n < &BigInt::from(k) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// gcd of non-negative integers with gcd(0, x) = x.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Integer square root: largest s with s^2 <= n (n >= 0).
pub fn isqrt(n: i64) -> i64 {
    assert!(n >= 0);
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a.abs(), b.abs()), c.abs())
}

/// Positive divisors of n > 0, ascending.
pub fn divisors(n: i64) -> Vec<i64> {
    assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// sigma_k(n) = sum of d^k over divisors of n.
pub fn sigma(n: i64, k: u32) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Moebius function.
pub fn moebius(n: i64) -> i64 {
    assert!(n > 0);
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Largest f with f^2 | n, so n = s * f^2 with s squarefree (n > 0).
pub fn squarefree_decomposition(n: i64) -> (i64, i64) {
    assert!(n > 0);
    let mut s = n;
    let mut f = 1;
    let mut p = 2;
    while p * p <= s {
        while s % (p * p) == 0 {
            s /= p * p;
            f *= p;
        }
        p += 1;
    }
    (s, f)
}

/// Kronecker symbol (a/n) for n >= 0.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out twos of n: (a/2) = 0 for even a, else (-1)^((a^2-1)/8).
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let m = a.rem_euclid(8);
        if m == 3 || m == 5 {
            result = -result;
        }
    }
    a = a.rem_euclid(n);
    // Jacobi symbol by quadratic reciprocity.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let m = n.rem_euclid(8);
            if m == 3 || m == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Bernoulli polynomial values B_3(x) and B_5(x), exact.
pub fn bernoulli_poly(r: u32, x: &BigRational) -> BigRational {
    match r {
        3 => {
            // B_3(x) = x^3 - (3/2)x^2 + (1/2)x
            x * x * x - rat(3, 2) * x * x + rat(1, 2) * x
        }
        5 => {
            // B_5(x) = x^5 - (5/2)x^4 + (5/3)x^3 - (1/6)x
            let x2 = x * x;
            let x3 = &x2 * x;
            &x3 * &x2 - rat(5, 2) * &x2 * &x2 + rat(5, 3) * x3 - rat(1, 6) * x
        }
        _ => panic!("bernoulli_poly implemented for r in {{3, 5}} only"),
    }
}

/// zeta(1 - 2r) = -B_{2r} / (2r) for r = 3, 5.
/// B_6 = 1/42 gives zeta(-5) = -1/252; B_10 = 5/66 gives zeta(-9) = -1/132.
pub fn zeta_odd_negative(r: u32) -> BigRational {
    match r {
        3 => rat(-1, 252),
        5 => rat(-1, 132),
        _ => panic!("zeta_odd_negative implemented for r in {{3, 5}} only"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigInt::from(9), 2), BigInt::from(36));
        assert_eq!(binomial(&BigInt::from(3), 5), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(0), 0), BigInt::one());
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(2, 3), BigInt::from(9));
        assert_eq!(sigma(2, 5), BigInt::from(33));
        assert_eq!(sigma(6, 1), BigInt::from(12));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(12), (3, 2));
        assert_eq!(squarefree_decomposition(49), (1, 7));
        assert_eq!(squarefree_decomposition(7), (7, 1));
    }

    #[test]
    fn kronecker_symbols() {
        // (-4/d) is 1 for d = 1 mod 4, -1 for d = 3 mod 4.
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 2), 0);
        // chi_{-3} on 1, 2 and chi_{-7} samples used by the Cohen formula.
        assert_eq!(kronecker(-3, 1), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, 3), 0);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-7, 3), -1);
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(-8, 5), -1);
    }

    #[test]
    fn bernoulli_values() {
        // B_3(1/3) = 1/27, B_5(1/4) = -25/1024 (hand-checked).
        assert_eq!(bernoulli_poly(3, &rat(1, 3)), rat(1, 27));
        assert_eq!(bernoulli_poly(5, &rat(1, 4)), rat(-25, 1024));
    }
}
