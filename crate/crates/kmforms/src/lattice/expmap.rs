//! Dictionary between lattice vectors and Fourier exponents.
//!
//! With z = z3 f2 + z2 f3 + z1 f-2 and v = c2 f2 + c3 f3 + c-2 f-2, the
//! pairing gives -(v, z) = c2 z1 - (f3,f3) c3 z2 + c-2 z3, so the table
//! exponent attached to exp(-pi i (v, z)) (example 1, where (f3,f3) = 2)
//! or exp(-pi i (v, z)/2) (example 2, where (f3,f3) = 4, stored on
//! half-units for z1, z3) is in both cases
//!   (n, l, m) = (c2, -2 c3, c-2).
//! The anchor rho -> (1, 1, 1) (example 1) resp. (1, -1, 1) (example 2)
//! pins the convention; the map is a bijection onto its image and is
//! asserted to round-trip.

use num_rational::Ratio;

use crate::lattice::{rz, Example, Vec3};

/// Exponent triple of a lattice vector, if it lies on the exponent lattice.
pub fn exponent_of(_example: Example, v: &Vec3) -> Option<[i64; 3]> {
    let l = -v[1] * rz(2);
    if !v[0].is_integer() || !l.is_integer() || !v[2].is_integer() {
        return None;
    }
    Some([v[0].to_integer(), l.to_integer(), v[2].to_integer()])
}

/// Lattice vector of an exponent triple.
pub fn vector_of(_example: Example, e: &[i64; 3]) -> Vec3 {
    [rz(e[0]), Ratio::new(-e[1], 2), rz(e[2])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_data, vec_add, vec_int, Example};

    #[test]
    fn rho_anchors() {
        let (_, fd1) = lattice_data(Example::One);
        assert_eq!(exponent_of(Example::One, &fd1.rho), Some([1, 1, 1]));
        let (_, fd2) = lattice_data(Example::Two);
        assert_eq!(exponent_of(Example::Two, &fd2.rho), Some([1, -1, 1]));
    }

    #[test]
    fn shift_by_2f2_moves_n() {
        let (_, fd) = lattice_data(Example::One);
        let shifted = vec_add(&fd.rho, &vec_int(&[2, 0, 0]));
        assert_eq!(exponent_of(Example::One, &shifted), Some([3, 1, 1]));
    }

    #[test]
    fn round_trip() {
        for ex in [Example::One, Example::Two] {
            for e in [[1, 1, 1], [3, -5, 7], [2, 0, 4]] {
                let v = vector_of(ex, &e);
                assert_eq!(exponent_of(ex, &v), Some(e));
            }
        }
        // Vectors off the exponent lattice are rejected.
        assert_eq!(
            exponent_of(Example::One, &[Ratio::new(1, 2), rz(0), rz(0)]),
            None
        );
        assert_eq!(
            exponent_of(Example::One, &[rz(1), Ratio::new(1, 4), rz(0)]),
            None
        );
    }
}
