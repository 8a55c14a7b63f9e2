//! Extremal rays of the dual cone R_+ Q_+^* = { x : (x, delta_i) <= 0 } and
//! the cone-inclusion certificate.
//!
//! In rank 3 each extremal ray is cut out by a pair of walls, so ray
//! enumeration is exact: the ray direction orthogonal to delta_i and
//! delta_j is the cross product of the two integer normal functionals
//! G delta_i and G delta_j, sign-fixed by the remaining wall conditions.
//! Certifying (r, r) <= 0 and (r, v0) < 0 for the interior vector
//! v0 = f2 + f-2 places R_+ Q_+^* inside the closed light half-cone; the
//! light half-cone is self-dual, so dualizing (which reverses inclusions)
//! yields the second inclusion, closing the chain
//!   R_+ Q_+^*  subset  closure(V^+)  subset  R_+ Q_+.

use num_integer::Integer;

use crate::error::{CheckReport, Result};

use super::{rz, vec_int, FundamentalData, HyperbolicLattice};

fn cross(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn primitive(v: &[i64; 3]) -> [i64; 3] {
    let g = v[0].abs().gcd(&v[1].abs()).gcd(&v[2].abs());
    if g == 0 {
        return *v;
    }
    [v[0] / g, v[1] / g, v[2] / g]
}

/// Primitive generators (in M_0) of the extremal rays of R_+ Q_+^*.
pub fn extremal_rays(
    lattice: &HyperbolicLattice,
    fundamental: &FundamentalData,
) -> Vec<[i64; 3]> {
    let normals: Vec<[i64; 3]> = fundamental
        .roots
        .iter()
        .map(|d| {
            let mut n = [0i64; 3];
            for (i, ni) in n.iter_mut().enumerate() {
                for j in 0..3 {
                    *ni += lattice.gram[i][j] * d[j];
                }
            }
            n
        })
        .collect();
    let mut rays: Vec<[i64; 3]> = Vec::new();
    let k = fundamental.roots.len();
    for i in 0..k {
        for j in (i + 1)..k {
            let dir = primitive(&cross(&normals[i], &normals[j]));
            if dir == [0, 0, 0] {
                continue;
            }
            for cand in [dir, [-dir[0], -dir[1], -dir[2]]] {
                let ok = fundamental
                    .roots
                    .iter()
                    .all(|d| lattice.bilinear_int(&cand, d) <= 0);
                if ok && !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
    }
    rays.sort();
    rays
}

/// Scale a primitive M_0 ray generator to the primitive generator of the
/// same ray inside M_II.
pub fn primitive_in_m2(lattice: &HyperbolicLattice, ray: &[i64; 3]) -> [i64; 3] {
    for t in 1..=lattice.m2_divisor {
        let scaled = [t * ray[0], t * ray[1], t * ray[2]];
        if lattice.in_m2(&vec_int(&scaled)) {
            return scaled;
        }
    }
    unreachable!("m2_divisor * ray is always in M_II");
}

/// The isotropic chamber rays, as primitive M_II generators.
pub fn isotropic_chamber_rays(
    lattice: &HyperbolicLattice,
    fundamental: &FundamentalData,
) -> Vec<[i64; 3]> {
    extremal_rays(lattice, fundamental)
        .iter()
        .filter(|r| lattice.bilinear_int(r, r) == 0)
        .map(|r| primitive_in_m2(lattice, r))
        .collect()
}

/// Certify the cone inclusions for one example.
pub fn cone_inclusion_check(
    lattice: &HyperbolicLattice,
    fundamental: &FundamentalData,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!(
        "cone inclusion (example {})",
        lattice.example.index()
    ));
    let rays = extremal_rays(lattice, fundamental);
    let expected = fundamental.roots.len();
    if rays.len() != expected {
        report.violation(format!(
            "expected {expected} extremal rays, found {}",
            rays.len()
        ));
    }
    let v0 = vec_int(&[1, 0, 1]);
    if lattice.norm(&v0) >= rz(0) {
        report.violation("reference vector f2 + f-2 is not inside the light cone");
    }
    for r in &rays {
        let norm = lattice.bilinear_int(r, r);
        if norm > 0 {
            report.violation(format!("ray {r:?} has positive norm {norm}"));
        }
        let pairing = lattice.bilinear(&vec_int(r), &v0);
        if pairing >= rz(0) {
            report.violation(format!("ray {r:?} does not point into the half-cone"));
        }
        report.note(format!("ray {r:?}: norm {norm}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_data, Example};

    #[test]
    fn example_1_rays() {
        let (lat, fd) = lattice_data(Example::One);
        let rays = extremal_rays(&lat, &fd);
        assert_eq!(rays.len(), 3);
        for r in &rays {
            assert_eq!(lat.bilinear_int(r, r), 0);
        }
        let m2: Vec<_> = isotropic_chamber_rays(&lat, &fd);
        assert!(m2.contains(&[2, 0, 0]));
        assert!(m2.contains(&[0, 0, 2]));
        assert!(m2.contains(&[2, -2, 2]));
        // (v0, v0) = -2.
        assert_eq!(lat.norm(&vec_int(&[1, 0, 1])), rz(-2));
    }

    #[test]
    fn example_2_rays() {
        let (lat, fd) = lattice_data(Example::Two);
        let rays = extremal_rays(&lat, &fd);
        assert_eq!(rays.len(), 4, "quadrangle with vertices at infinity");
        for r in &rays {
            assert_eq!(lat.bilinear_int(r, r), 0);
        }
        let m2 = isotropic_chamber_rays(&lat, &fd);
        assert!(m2.contains(&[4, 0, 0]));
        assert!(m2.contains(&[0, 0, 4]));
        assert!(m2.contains(&[8, 4, 4]));
        assert!(m2.contains(&[4, 4, 8]));
    }

    #[test]
    fn certification_reports_pass() {
        for ex in [Example::One, Example::Two] {
            let (lat, fd) = lattice_data(ex);
            let report = cone_inclusion_check(&lat, &fd).unwrap();
            assert!(report.passed, "{}", report.render());
        }
    }
}
