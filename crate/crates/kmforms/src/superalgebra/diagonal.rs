//! Closed-form denominator identities for diagonal generalized Cartan
//! matrices B = diag(b_1..b_k), b_ii <= 0, with odd index set tau: for the
//! plain character
//!   prod_{i not in tau_0} (1 - e(-a_i)) prod_{i in tau_0} sum_k (-1)^k e(-k a_i),
//! and for the super character
//!   prod_{i not in tau} (1 - e(-a_i)) prod_{tau, b<0} (1 + e(-a_i))
//!     prod_{tau_0} sum_k e(-k a_i),
//! where tau_0 = { i in tau : b_ii = 0 }. The multiset enumerator must
//! reproduce both; this is the calibration bed for the epsilon-sum rules.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{CheckReport, Error, Result};

use super::{enumerate_epsilon_sum, EpsilonSign, RootGroup};

type Key = [i64; 4];
type Poly = BTreeMap<Key, BigInt>;

fn total_degree(k: &Key) -> i64 {
    k.iter().sum()
}

fn poly_one() -> Poly {
    let mut p = Poly::new();
    p.insert([0; 4], BigInt::one());
    p
}

fn poly_mul(a: &Poly, b: &Poly, bound: i64) -> Poly {
    let mut out = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]];
            if total_degree(&k) > bound {
                continue;
            }
            let entry = out.entry(k).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn unit_key(i: usize, power: i64) -> Key {
    let mut k = [0; 4];
    k[i] = power;
    k
}

/// Verify the enumerator against both closed forms for one diagonal system.
pub fn diagonal_denominator_check(
    b_diag: &[i64],
    tau: &[bool],
    bound: i64,
) -> Result<CheckReport> {
    if b_diag.len() > 4 || b_diag.len() != tau.len() {
        return Err(Error::Config(
            "diagonal check supports up to 4 indices with matching tau flags".into(),
        ));
    }
    if b_diag.iter().any(|&b| b > 0) {
        return Err(Error::Domain("diagonal entries must be non-positive".into()));
    }
    let mut report = CheckReport::new(format!(
        "diagonal denominator closed forms (B = {b_diag:?}, tau = {tau:?}, bound {bound})"
    ));
    let groups: Vec<RootGroup<Key>> = b_diag
        .iter()
        .enumerate()
        .map(|(i, &b)| RootGroup {
            exponent: unit_key(i, 1),
            count: 1,
            odd: tau[i],
            isotropic: b == 0,
        })
        .collect();
    let add = |a: &Key, b: &Key| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];

    for sign in [EpsilonSign::EvenRootsOnly, EpsilonSign::AllRoots] {
        let enumerated = enumerate_epsilon_sum(
            &groups,
            add,
            total_degree,
            |_, _| true,
            [0; 4],
            bound,
            sign,
        );
        let mut closed = poly_one();
        for (i, &b) in b_diag.iter().enumerate() {
            let tau_zero = tau[i] && b == 0;
            let factor: Poly = match sign {
                EpsilonSign::AllRoots => {
                    if tau_zero {
                        // sum_k (-1)^k x^k
                        (0..=bound)
                            .map(|k| {
                                (unit_key(i, k), if k % 2 == 0 { BigInt::one() } else { -BigInt::one() })
                            })
                            .collect()
                    } else {
                        [(unit_key(i, 0), BigInt::one()), (unit_key(i, 1), -BigInt::one())]
                            .into_iter()
                            .collect()
                    }
                }
                EpsilonSign::EvenRootsOnly => {
                    if tau_zero {
                        (0..=bound).map(|k| (unit_key(i, k), BigInt::one())).collect()
                    } else if tau[i] {
                        // odd negative norm: 1 + x
                        [(unit_key(i, 0), BigInt::one()), (unit_key(i, 1), BigInt::one())]
                            .into_iter()
                            .collect()
                    } else {
                        [(unit_key(i, 0), BigInt::one()), (unit_key(i, 1), -BigInt::one())]
                            .into_iter()
                            .collect()
                    }
                }
            };
            closed = poly_mul(&closed, &factor, bound);
        }
        if enumerated == closed {
            report.note(format!("{sign:?}: enumeration matches the closed form"));
        } else {
            let keys: Vec<Key> = enumerated
                .keys()
                .chain(closed.keys())
                .copied()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for k in keys {
                let a = enumerated.get(&k).cloned().unwrap_or_else(BigInt::zero);
                let b = closed.get(&k).cloned().unwrap_or_else(BigInt::zero);
                if a != b {
                    report.violation(format!("{sign:?}: at {k:?} enumeration {a} vs closed {b}"));
                    break;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(b: &[i64], tau: &[bool], bound: i64) -> CheckReport {
        diagonal_denominator_check(b, tau, bound).unwrap()
    }

    #[test]
    fn two_even_roots() {
        // B = diag(-2,-2), tau empty: 1 - x1 - x2 + x1 x2.
        let r = run(&[-2, -2], &[false, false], 12);
        assert!(r.passed, "{}", r.render());
    }

    #[test]
    fn odd_isotropic_and_odd_negative() {
        // B = diag(0), tau = {1}: geometric series. B = diag(-2), tau = {1}: 1 + x.
        assert!(run(&[0], &[true], 12).passed);
        assert!(run(&[-2], &[true], 12).passed);
    }

    #[test]
    fn all_small_systems() {
        // Every diagonal system with <= 4 indices, entries in {0, -2, -4},
        // any tau, bound 12.
        let choices = [0i64, -2, -4];
        for n in 1..=4usize {
            let mut idx = vec![0usize; n];
            loop {
                let b: Vec<i64> = idx.iter().map(|&i| choices[i]).collect();
                for mask in 0..(1u32 << n) {
                    let tau: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
                    let r = run(&b, &tau, 12);
                    assert!(r.passed, "{}", r.render());
                }
                // Next multi-index.
                let mut pos = 0;
                loop {
                    if pos == n {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < choices.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
}
