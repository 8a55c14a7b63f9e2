//! Simple-root systems assembled from extracted multiplicities, the
//! epsilon-correction sums of the denominator identities, and end-to-end
//! verification that the Weyl-orbit sum side, the infinite-product side and
//! the weak-Jacobi exponent function all agree.
//!
//! The correction sum runs over multisets s of imaginary simple roots that
//! are pairwise perpendicular, where roots attached to the same lattice
//! vector may be combined only if the vector is isotropic (distinct even
//! indices at most once each; odd isotropic indices may repeat), with sign
//! epsilon(s) = (-1)^{number of even roots in s}. In the rank-3 cone two
//! distinct root vectors are perpendicular exactly when they span a common
//! isotropic ray, so the sum decomposes over rays; the enumerator never
//! assumes this -- it checks pairwise Gram values and reports crossing
//! perpendicular pairs as unexpected geometry.

mod diagonal;

pub use diagonal::diagonal_denominator_check;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, isqrt};
use crate::error::{CheckReport, Error, Result};
use crate::jacobi::JacobiSeries;
use crate::lattice::{
    lattice_data, Example, SimpleMultiplicityTable,
};
use crate::series::{
    extract_product_exponents, product_expand, Exponent, GradedSeries, Grading, Unit,
};
use crate::theta::SiegelCoefficientTable;

/// A set of simple-root indices sharing one lattice vector.
#[derive(Clone, Debug)]
pub struct RootGroup<E> {
    pub exponent: E,
    /// Number of distinct simple-root indices at this vector (|mu|).
    pub count: i64,
    pub odd: bool,
    pub isotropic: bool,
}

/// Which character the correction sum belongs to: the super character
/// counts only even roots in the sign, the plain character counts all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonSign {
    EvenRootsOnly,
    AllRoots,
}

/// Honest multiset enumeration of sum_s epsilon(s) x^{pi(s)}.
pub(crate) fn enumerate_epsilon_sum<E, FAdd, FLam, FPerp>(
    groups: &[RootGroup<E>],
    add: FAdd,
    lam: FLam,
    perp: FPerp,
    zero: E,
    bound: i64,
    sign: EpsilonSign,
) -> BTreeMap<E, BigInt>
where
    E: Copy + Ord,
    FAdd: Fn(&E, &E) -> E + Copy,
    FLam: Fn(&E) -> i64 + Copy,
    FPerp: Fn(usize, usize) -> bool + Copy,
{
    let mut out: BTreeMap<E, BigInt> = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec<E, FAdd, FLam, FPerp>(
        groups: &[RootGroup<E>],
        add: FAdd,
        lam: FLam,
        perp: FPerp,
        bound: i64,
        sign: EpsilonSign,
        start: usize,
        chosen: &mut Vec<usize>,
        e: E,
        coeff: BigInt,
        out: &mut BTreeMap<E, BigInt>,
    ) where
        E: Copy + Ord,
        FAdd: Fn(&E, &E) -> E + Copy,
        FLam: Fn(&E) -> i64 + Copy,
        FPerp: Fn(usize, usize) -> bool + Copy,
    {
        let entry = out.entry(e).or_insert_with(BigInt::zero);
        *entry += &coeff;
        for i in start..groups.len() {
            if !chosen.iter().all(|&c| perp(c, i)) {
                continue;
            }
            let g = &groups[i];
            let mut j = 1i64;
            let mut acc = e;
            loop {
                acc = add(&acc, &g.exponent);
                if lam(&acc) > bound {
                    break;
                }
                let ways = if g.isotropic && g.odd {
                    binomial(&BigInt::from(g.count + j - 1), j as u64)
                } else if g.isotropic {
                    if j > g.count {
                        break;
                    }
                    binomial(&BigInt::from(g.count), j as u64)
                } else {
                    if j > 1 {
                        break;
                    }
                    BigInt::from(g.count)
                };
                let signed = match sign {
                    EpsilonSign::EvenRootsOnly if g.odd => ways,
                    _ => {
                        if j % 2 == 0 {
                            ways
                        } else {
                            -ways
                        }
                    }
                };
                chosen.push(i);
                rec(
                    groups,
                    add,
                    lam,
                    perp,
                    bound,
                    sign,
                    i + 1,
                    chosen,
                    acc,
                    &coeff * signed,
                    out,
                );
                chosen.pop();
                j += 1;
            }
        }
    }
    rec(
        groups, add, lam, perp, bound, sign, 0, &mut chosen, zero, BigInt::one(), &mut out,
    );
    out.retain(|_, v| !v.is_zero());
    out
}

/// Real simple roots plus the signed imaginary multiplicity table.
#[derive(Clone, Debug)]
pub struct SimpleRootSystem {
    pub example: Example,
    pub real: Vec<[i64; 3]>,
    /// Lattice vector -> signed multiplicity mu(a): positive even, negative
    /// odd. Isotropic vectors carry tau, negative-norm vectors carry m(a).
    pub imaginary: BTreeMap<[i64; 3], i64>,
}

/// Assemble the simple-root system of the corrected superalgebra from the
/// extracted multiplicity data, asserting the Serre conditions.
pub fn build_simple_roots(
    mult: &SimpleMultiplicityTable,
    example: Example,
) -> Result<SimpleRootSystem> {
    let (lattice, fd) = lattice_data(example);
    let mut imaginary: BTreeMap<[i64; 3], i64> = BTreeMap::new();
    for (a, m) in &mult.entries {
        let norm = lattice.bilinear_int(a, a);
        if norm > 0 {
            return Err(Error::Identity(format!(
                "multiplicity table contains positive-norm vector {a:?}"
            )));
        }
        if norm < 0 {
            let mu = i64::try_from(m)
                .map_err(|_| Error::Domain(format!("multiplicity at {a:?} overflows i64")))?;
            if mu != 0 {
                imaginary.insert(*a, mu);
            }
        }
    }
    for ray in &mult.rays {
        for (k, tau) in &ray.tau {
            if *tau != 0 {
                let a = [
                    k * ray.generator[0],
                    k * ray.generator[1],
                    k * ray.generator[2],
                ];
                imaginary.insert(a, *tau);
            }
        }
    }
    // Serre data: real roots have positive norm and integral Cartan entries;
    // all distinct simple-root pairs pair non-positively.
    for r in &fd.roots {
        let rr = lattice.bilinear_int(r, r);
        if rr <= 0 {
            return Err(Error::Identity(format!("real root {r:?} has norm {rr}")));
        }
        for rp in fd.roots.iter().filter(|rp| *rp != r) {
            let pairing = lattice.bilinear_int(r, rp);
            if pairing > 0 || (2 * pairing) % rr != 0 {
                return Err(Error::Identity(format!(
                    "Cartan condition fails for real pair {r:?}, {rp:?}"
                )));
            }
        }
        for a in imaginary.keys() {
            if lattice.bilinear_int(r, a) > 0 {
                return Err(Error::Identity(format!(
                    "real root {r:?} pairs positively with imaginary {a:?}"
                )));
            }
        }
    }
    let keys: Vec<_> = imaginary.keys().copied().collect();
    for (i, a) in keys.iter().enumerate() {
        for b in keys.iter().skip(i + 1) {
            if lattice.bilinear_int(a, b) > 0 {
                return Err(Error::Identity(format!(
                    "imaginary pair {a:?}, {b:?} pairs positively"
                )));
            }
        }
    }
    Ok(SimpleRootSystem { example, real: fd.roots.clone(), imaginary })
}

/// Grading on lattice a-coordinates matching the table box functional:
/// lambda(a) = -2 (a, rho) doubled; weights (2,2,2) for example 1 and
/// (2,-2,2) for example 2.
pub fn correction_grading(example: Example, bound: i64) -> Grading {
    match example {
        Example::One => Grading::new([2, 2, 2], bound),
        Example::Two => Grading::new([2, -2, 2], bound),
    }
}

/// The correction series S / e(rho) = sum_s epsilon(s) x^{pi(s)} over the
/// imaginary simple roots, truncated by the a-coordinate grading.
pub fn epsilon_correction_sum(
    system: &SimpleRootSystem,
    bound: i64,
) -> Result<GradedSeries> {
    let (lattice, _) = lattice_data(system.example);
    let grading = correction_grading(system.example, bound);
    let mut groups: Vec<RootGroup<[i64; 3]>> = Vec::new();
    for (a, mu) in &system.imaginary {
        let lam = grading.lambda(a);
        if lam <= 0 {
            return Err(Error::Domain(format!(
                "imaginary root {a:?} sits at non-positive level {lam}"
            )));
        }
        if lam > bound {
            continue;
        }
        groups.push(RootGroup {
            exponent: *a,
            count: mu.abs(),
            odd: *mu < 0,
            isotropic: lattice.bilinear_int(a, a) == 0,
        });
    }
    // Factorization assertion: perpendicular pairs must lie on one
    // isotropic ray; a crossing pair falsifies the ray decomposition.
    let mut perp_matrix = vec![vec![false; groups.len()]; groups.len()];
    for i in 0..groups.len() {
        for j in (i + 1)..groups.len() {
            let a = &groups[i].exponent;
            let b = &groups[j].exponent;
            if lattice.bilinear_int(a, b) == 0 {
                let parallel = a[0] * b[1] == a[1] * b[0]
                    && a[1] * b[2] == a[2] * b[1]
                    && a[0] * b[2] == a[2] * b[0];
                if !(parallel && groups[i].isotropic && groups[j].isotropic) {
                    return Err(Error::Domain(format!(
                        "unexpected geometry: perpendicular roots {a:?}, {b:?} off a common isotropic ray"
                    )));
                }
                perp_matrix[i][j] = true;
                perp_matrix[j][i] = true;
            }
        }
    }
    let table = enumerate_epsilon_sum(
        &groups,
        |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
        |e| grading.lambda(e),
        |i, j| perp_matrix[i][j],
        [0, 0, 0],
        bound,
        EpsilonSign::EvenRootsOnly,
    );
    let mut out = GradedSeries::zero(3, [Unit::one(); 3], grading);
    for (e, c) in table {
        out.add_term(e, BigRational::from_integer(c))?;
    }
    Ok(out)
}

/// Check that the epsilon enumeration reproduces the bracketed correction
/// factor 1 - sum_a m(a) x^a of the orbit sum, coefficient-exactly.
pub fn correction_factor_check(
    mult: &SimpleMultiplicityTable,
    bound: i64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!(
        "epsilon correction sum (example {}, level <= {bound})",
        mult.example.index()
    ));
    let system = build_simple_roots(mult, mult.example)?;
    report.note(format!(
        "{} imaginary root vectors, {} real roots",
        system.imaginary.len(),
        system.real.len()
    ));
    let s = epsilon_correction_sum(&system, bound)?;
    let grading = correction_grading(mult.example, bound);
    let mut bracket = GradedSeries::one(3, [Unit::one(); 3], grading);
    for (a, m) in &mult.entries {
        if grading.lambda(a) <= bound {
            bracket.add_term(*a, BigRational::from_integer(-m.clone()))?;
        }
    }
    if let Some((e, got, expected)) = s.first_difference(&bracket) {
        report.violation(format!(
            "correction sum differs from 1 - sum m(a) e(a) at {e:?}: {got} vs {expected}"
        ));
    } else {
        report.note(format!(
            "epsilon sum equals the bracketed factor on {} exponents",
            s.len()
        ));
    }
    Ok(report)
}

/// Normalize a coefficient table by its leading monomial into product-side
/// exponent coordinates (the exp(2 pi i z) lattice), graded by the
/// product-inversion functional.
pub fn normalized_product_series(
    table: &SiegelCoefficientTable,
    normalizer: i64,
    example: Example,
    lambda_bound: i64,
) -> Result<GradedSeries> {
    let required_trace = match example {
        // Support inside 4nm - l^2 > 0 keeps n + m <= 2 lambda + 2.
        Example::One => 2 * lambda_bound + 2,
        // Support inside 2nm - l^2 > 0 keeps (2 - sqrt(2)/...) scaled trace;
        // integer-safe: (2 lambda + 3) * 2 / (4 - sqrt(2)) rounded up.
        Example::Two => ((2.0 * lambda_bound as f64 + 3.0) * 2.0 / (4.0 - 2f64.sqrt())).ceil() as i64,
    };
    if table.bound() < required_trace {
        return Err(Error::Config(format!(
            "table depth {} too shallow for lambda bound {lambda_bound} (need trace {required_trace})",
            table.bound()
        )));
    }
    let (weights, shift, divisor) = match example {
        Example::One => ([2i64, -1, 2], [1i64, 1, 1], 2i64),
        Example::Two => ([4i64, 1, 4], [1i64, -1, 1], 4i64),
    };
    let norm = BigInt::from(normalizer);
    let grading = Grading::new(weights, lambda_bound);
    let mut out = GradedSeries::zero(3, [Unit::new(2, 1); 3], grading);
    for (e, c) in table.iter() {
        let v = BigRational::new(c.clone(), norm.clone());
        if !v.denom().is_one() {
            return Err(Error::Identity(format!(
                "coefficient at {e:?} not divisible by {normalizer}"
            )));
        }
        let num = [e[0] - shift[0], e[1] - shift[1], e[2] - shift[2]];
        if num[0] % divisor != 0 || num[1] % 2 != 0 || num[2] % divisor != 0 {
            return Err(Error::Identity(format!(
                "exponent {e:?} is not on the shifted product lattice"
            )));
        }
        let mapped = [num[0] / divisor, num[1] / 2, num[2] / divisor];
        if grading.lambda(&mapped) <= lambda_bound {
            out.add_term(mapped, v)?;
        }
    }
    if !out.coeff(&[0, 0, 0]).is_one() {
        return Err(Error::Identity(
            "normalized series does not lead with coefficient 1".into(),
        ));
    }
    Ok(out)
}

/// Factor exponents (n, l, m) of the positive-root product with their
/// weak-Jacobi multiplicities, inside the lambda box. The "(n,l,m) > 0"
/// support is: n, m >= 0; l arbitrary when n + m > 0; and the boundary
/// row at n = m = 0 keeps l < 0 for example 1, l > 0 for example 2.
pub fn product_support_factors(
    example: Example,
    phi: &JacobiSeries,
    lambda_bound: i64,
) -> Result<Vec<(Exponent, i64)>> {
    let (weights, disc_scale, disc_offset, boundary_sign) = match example {
        Example::One => ([2i64, -1, 2], 4i64, 1i64, -1i64),
        Example::Two => ([4i64, 1, 4], 8i64, 4i64, 1i64),
    };
    let lam = |e: &Exponent| weights[0] * e[0] + weights[1] * e[1] + weights[2] * e[2];
    let mut factors = Vec::new();
    let tmax = lambda_bound + 1;
    for n in 0..=tmax {
        for m in 0..=(tmax - n) {
            let (lo, hi) = if n == 0 && m == 0 {
                if boundary_sign < 0 {
                    (-lambda_bound.max(1), -1)
                } else {
                    (1, lambda_bound.max(1))
                }
            } else {
                let window = isqrt(disc_scale * n * m + disc_offset);
                (-window, window)
            };
            for l in lo..=hi {
                let e = [n, l, m];
                if lam(&e) < 1 || lam(&e) > lambda_bound {
                    continue;
                }
                if n * m > phi.series.bound() {
                    return Err(Error::Config(format!(
                        "need weak-Jacobi coefficient at q^{} beyond input depth {}",
                        n * m,
                        phi.series.bound()
                    )));
                }
                let c = phi.series.coeff(&[n * m, l, 0]);
                if c.is_zero() {
                    continue;
                }
                let mult = i64::try_from(c.numer()).map_err(|_| {
                    Error::Domain("product multiplicity overflows i64".into())
                })?;
                factors.push((e, mult));
            }
        }
    }
    Ok(factors)
}

/// Verify the denominator identity for one example on the lambda box:
/// the product with weak-Jacobi exponents equals the normalized table, and
/// product-exponent extraction of the normalized table recovers exactly the
/// weak-Jacobi coefficient function on the support.
pub fn denominator_identity_verify(
    table: &SiegelCoefficientTable,
    normalizer: i64,
    example: Example,
    phi: &JacobiSeries,
    lambda_bound: i64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!(
        "denominator identity (example {}, lambda <= {lambda_bound})",
        example.index()
    ));
    let s = normalized_product_series(table, normalizer, example, lambda_bound)?;
    let factors = product_support_factors(example, phi, lambda_bound)?;

    // Route 1: expand the product and compare series.
    let proto = GradedSeries::zero(3, [Unit::new(2, 1); 3], s.grading());
    let product = product_expand(&factors, &proto)?;
    if let Some((e, got, expected)) = product.first_difference(&s) {
        report.violation(format!(
            "product side differs from the table at {e:?}: {got} vs {expected}"
        ));
    } else {
        report.note(format!(
            "product over {} factors reproduces the normalized table ({} terms)",
            factors.len(),
            s.len()
        ));
    }

    // Route 2: extract exponents from the table and compare pointwise.
    let extracted = extract_product_exponents(&s)?;
    let factor_map: BTreeMap<Exponent, i64> = factors.iter().copied().collect();
    let mut keys: Vec<Exponent> = extracted.keys().copied().collect();
    keys.extend(factor_map.keys().copied());
    keys.sort();
    keys.dedup();
    let mut mismatches = 0;
    for e in keys {
        let got = extracted.get(&e).copied().unwrap_or(0);
        let expected = factor_map.get(&e).copied().unwrap_or(0);
        if got != expected {
            mismatches += 1;
            if mismatches <= 4 {
                report.violation(format!(
                    "extracted exponent at {e:?} is {got}, weak Jacobi form gives {expected}"
                ));
            }
        }
    }
    if mismatches == 0 {
        report.note(format!(
            "{} extracted exponents all match the weak-Jacobi coefficients",
            extracted.len()
        ));
    }
    Ok(report)
}
