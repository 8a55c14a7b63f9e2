//! Hyperbolic lattices of signature (2,1), their reflection groups, Weyl
//! vectors, cone data and the dictionary between lattice vectors and Fourier
//! exponents.
//!
//! Two fixed examples are built here, in the basis (f2, f3, f-2):
//!   example 1: U + <2>  with (f3,f3) = 2, (f2,f-2) = -1,
//!     simple roots 2f2 - f3, 2f-2 - f3, f3 (pairwise Gram entries -2),
//!     Weyl vector rho = f2 - f3/2 + f-2;
//!   example 2: U + <4>  with (f3,f3) = 4,
//!     simple roots -f3, 4f2 + f3, 4f2 + 3f3 + 4f-2, f3 + 4f-2
//!     (diagonal 4, off-diagonal -4 / -12), rho = f2 + f3/2 + f-2.
//! The relevant sublattice M_II is 2*(dual) resp. 4*(dual): coordinates
//! (c2, c3, c-2) with c2, c-2 divisible by 2 resp. 4.

mod cone;
mod expmap;
mod mult;
mod wedge;
mod weyl;

pub use cone::{cone_inclusion_check, extremal_rays, isotropic_chamber_rays};
pub use expmap::{exponent_of, vector_of};
pub use mult::{
    extract_simple_multiplicities, sum_side_reconstruct, verify_sum_side, RayTau,
    SimpleMultiplicityTable,
};
pub use wedge::wedge_square_check;
pub use weyl::{reflection, weyl_enumerate, WeylElement};

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;
/// Rational lattice vector in the (f2, f3, f-2) basis.
pub type Vec3 = [Rat; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Example {
    One,
    Two,
}

impl Example {
    pub fn index(&self) -> u8 {
        match self {
            Example::One => 1,
            Example::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Example::One),
            2 => Ok(Example::Two),
            _ => Err(Error::Config(format!("unknown example {i}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HyperbolicLattice {
    pub example: Example,
    /// Gram matrix in the (f2, f3, f-2) basis.
    pub gram: [[i64; 3]; 3],
    /// Divisibility of the f2 and f-2 coordinates cutting out M_II.
    pub m2_divisor: i64,
}

#[derive(Clone, Debug)]
pub struct FundamentalData {
    /// Orthogonal vectors P(M) to the fundamental polyhedron (integer coords).
    pub roots: Vec<[i64; 3]>,
    /// Lattice Weyl vector with (rho, delta_i) = -(delta_i, delta_i)/2.
    pub rho: Vec3,
}

pub fn rz(n: i64) -> Rat {
    Ratio::from_integer(n)
}

pub fn vec_int(v: &[i64; 3]) -> Vec3 {
    [rz(v[0]), rz(v[1]), rz(v[2])]
}

pub fn vec_add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn vec_sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn vec_scale(k: Rat, a: &Vec3) -> Vec3 {
    [k * a[0], k * a[1], k * a[2]]
}

impl HyperbolicLattice {
    pub fn bilinear(&self, x: &Vec3, y: &Vec3) -> Rat {
        let mut acc = Ratio::from_integer(0);
        for i in 0..3 {
            for j in 0..3 {
                acc += x[i] * y[j] * rz(self.gram[i][j]);
            }
        }
        acc
    }

    pub fn bilinear_int(&self, x: &[i64; 3], y: &[i64; 3]) -> i64 {
        let mut acc = 0;
        for i in 0..3 {
            for j in 0..3 {
                acc += x[i] * y[j] * self.gram[i][j];
            }
        }
        acc
    }

    pub fn norm(&self, x: &Vec3) -> Rat {
        self.bilinear(x, x)
    }

    /// Is v in the sublattice M_II?
    pub fn in_m2(&self, v: &Vec3) -> bool {
        let d = rz(self.m2_divisor);
        (v[0] / d).is_integer() && v[1].is_integer() && (v[2] / d).is_integer()
    }

    /// Signature by exact Descartes count on the characteristic polynomial
    /// (symmetric integer matrix: all roots real).
    pub fn signature(&self) -> (usize, usize) {
        let g = &self.gram;
        let trace = g[0][0] + g[1][1] + g[2][2];
        let minors = g[0][0] * g[1][1] - g[0][1] * g[1][0]
            + g[0][0] * g[2][2] - g[0][2] * g[2][0]
            + g[1][1] * g[2][2] - g[1][2] * g[2][1];
        let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        // p(x) = x^3 - trace x^2 + minors x - det
        let pos = sign_changes(&[1, -trace, minors, -det]);
        // p(-x) has coefficients (-1, -trace, -minors, -det) up to sign.
        let neg = sign_changes(&[-1, -trace, -minors, -det]);
        (pos, neg)
    }
}

fn sign_changes(coeffs: &[i64]) -> usize {
    let mut changes = 0;
    let mut last = 0i64;
    for &c in coeffs {
        if c == 0 {
            continue;
        }
        let s = c.signum();
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// The hard-coded lattice and fundamental data of one of the two examples,
/// with all defining invariants asserted at construction.
pub fn lattice_data(example: Example) -> (HyperbolicLattice, FundamentalData) {
    let (lattice, roots, rho, gram_p): (HyperbolicLattice, Vec<[i64; 3]>, Vec3, Vec<Vec<i64>>) =
        match example {
            Example::One => (
                HyperbolicLattice {
                    example,
                    gram: [[0, 0, -1], [0, 2, 0], [-1, 0, 0]],
                    m2_divisor: 2,
                },
                vec![[2, -1, 0], [0, -1, 2], [0, 1, 0]],
                [rz(1), Ratio::new(-1, 2), rz(1)],
                vec![
                    vec![2, -2, -2],
                    vec![-2, 2, -2],
                    vec![-2, -2, 2],
                ],
            ),
            Example::Two => (
                HyperbolicLattice {
                    example,
                    gram: [[0, 0, -1], [0, 4, 0], [-1, 0, 0]],
                    m2_divisor: 4,
                },
                vec![[0, -1, 0], [4, 1, 0], [4, 3, 4], [0, 1, 4]],
                [rz(1), Ratio::new(1, 2), rz(1)],
                vec![
                    vec![4, -4, -12, -4],
                    vec![-4, 4, -4, -12],
                    vec![-12, -4, 4, -4],
                    vec![-4, -12, -4, 4],
                ],
            ),
        };
    assert_eq!(lattice.signature(), (2, 1), "lattice must have signature (2,1)");
    for (i, di) in roots.iter().enumerate() {
        for (j, dj) in roots.iter().enumerate() {
            assert_eq!(
                lattice.bilinear_int(di, dj),
                gram_p[i][j],
                "Gram of P mismatch at ({i},{j})"
            );
        }
        // (rho, delta_i) = -(delta_i, delta_i)/2.
        let lhs = lattice.bilinear(&rho, &vec_int(di));
        let rhs = -Ratio::new(lattice.bilinear_int(di, di), 2);
        assert_eq!(lhs, rhs, "Weyl vector property fails at root {i}");
    }
    (lattice, FundamentalData { roots, rho })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_1_data() {
        let (lat, fd) = lattice_data(Example::One);
        assert_eq!(lat.signature(), (2, 1));
        assert_eq!(fd.roots.len(), 3);
        // Gram(P) diagonal 2, off-diagonal -2 (asserted in the constructor;
        // spot-check one entry here).
        assert_eq!(lat.bilinear_int(&fd.roots[0], &fd.roots[1]), -2);
        // rho = f2 - f3/2 + f-2 has norm -3/2.
        assert_eq!(lat.norm(&fd.rho), Ratio::new(-3, 2));
    }

    #[test]
    fn example_2_data() {
        let (lat, fd) = lattice_data(Example::Two);
        assert_eq!(fd.roots.len(), 4);
        assert_eq!(lat.bilinear_int(&fd.roots[0], &fd.roots[2]), -12);
        // (rho, delta_1) = -2 for delta_1 = -f3.
        assert_eq!(lat.bilinear(&fd.rho, &vec_int(&fd.roots[0])), rz(-2));
    }

    #[test]
    fn m2_membership() {
        let (lat1, _) = lattice_data(Example::One);
        assert!(lat1.in_m2(&vec_int(&[2, -1, 0])));
        assert!(!lat1.in_m2(&vec_int(&[1, 0, 0])));
        let (lat2, _) = lattice_data(Example::Two);
        assert!(lat2.in_m2(&vec_int(&[4, 1, 0])));
        assert!(!lat2.in_m2(&vec_int(&[2, 1, 0])));
    }
}
