//! Reflections s_delta: x -> x - (2(x,delta)/(delta,delta)) delta and
//! breadth-first enumeration of the Weyl group they generate, deduplicated
//! by exact matrix equality.

use std::collections::HashSet;

use num_rational::Ratio;

use crate::error::{Error, Result};

use super::{rz, vec_int, FundamentalData, HyperbolicLattice, Rat, Vec3};

pub type Matrix3 = [[Rat; 3]; 3];

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Matrix in the (f2, f3, f-2) basis; column j is the image of basis j.
    pub matrix: Matrix3,
    pub det: i64,
    /// Generator word (indices into P) of minimal length found.
    pub word: Vec<u8>,
}

pub fn identity_matrix() -> Matrix3 {
    let mut m = [[rz(0); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = rz(1);
    }
    m
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[rz(0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = rz(0);
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_apply(m: &Matrix3, v: &Vec3) -> Vec3 {
    let mut out = [rz(0); 3];
    for (i, o) in out.iter_mut().enumerate() {
        for j in 0..3 {
            *o += m[i][j] * v[j];
        }
    }
    out
}

pub fn mat_det(m: &Matrix3) -> Rat {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { matrix: identity_matrix(), det: 1, word: Vec::new() }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        mat_apply(&self.matrix, v)
    }

    /// t^M G M = G.
    pub fn preserves_gram(&self, lattice: &HyperbolicLattice) -> bool {
        let cols: Vec<Vec3> = (0..3)
            .map(|j| [self.matrix[0][j], self.matrix[1][j], self.matrix[2][j]])
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                if lattice.bilinear(&cols[i], &cols[j]) != rz(lattice.gram[i][j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// The reflection in a positive-norm lattice vector.
pub fn reflection(lattice: &HyperbolicLattice, delta: &[i64; 3]) -> Result<WeylElement> {
    let dd = lattice.bilinear_int(delta, delta);
    if dd <= 0 {
        return Err(Error::Domain(format!(
            "reflection needs (delta,delta) > 0, got {dd} for {delta:?}"
        )));
    }
    let mut matrix = identity_matrix();
    for j in 0..3 {
        let mut basis = [rz(0); 3];
        basis[j] = rz(1);
        let coeff = Ratio::new(2 * lattice.bilinear(&basis, &vec_int(delta)).to_integer(), dd);
        for i in 0..3 {
            matrix[i][j] -= coeff * rz(delta[i]);
        }
    }
    let el = WeylElement { matrix, det: -1, word: vec![u8::MAX] };
    debug_assert_eq!(mat_det(&el.matrix), rz(-1));
    Ok(el)
}

/// All distinct elements expressible with at most `max_len` generators,
/// deduplicated by matrix, each with a minimal-length word and determinant
/// (-1)^{word length}.
pub fn weyl_enumerate(
    lattice: &HyperbolicLattice,
    fundamental: &FundamentalData,
    max_len: usize,
) -> Result<Vec<WeylElement>> {
    let gens: Vec<Matrix3> = fundamental
        .roots
        .iter()
        .map(|d| reflection(lattice, d).map(|e| e.matrix))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<Matrix3> = HashSet::new();
    let mut out = vec![WeylElement::identity()];
    seen.insert(identity_matrix());
    let mut frontier = vec![WeylElement::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for (gi, g) in gens.iter().enumerate() {
                let m = mat_mul(&w.matrix, g);
                if seen.insert(m) {
                    let mut word = w.word.clone();
                    word.push(gi as u8);
                    let det = if word.len() % 2 == 0 { 1 } else { -1 };
                    debug_assert_eq!(mat_det(&m), rz(det));
                    let el = WeylElement { matrix: m, det, word };
                    next.push(el.clone());
                    out.push(el);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_data, Example};

    #[test]
    fn reflection_in_f3_negates_l_coordinate() {
        let (lat, _) = lattice_data(Example::One);
        let s = reflection(&lat, &[0, 1, 0]).unwrap();
        // diag(1, -1, 1) in the (f2, f3, f-2) basis.
        assert_eq!(s.matrix[0][0], rz(1));
        assert_eq!(s.matrix[1][1], rz(-1));
        assert_eq!(s.matrix[2][2], rz(1));
        assert_eq!(s.matrix[0][1], rz(0));
    }

    #[test]
    fn reflection_in_delta1_columnwise() {
        let (lat, _) = lattice_data(Example::One);
        let s = reflection(&lat, &[2, -1, 0]).unwrap();
        // f2 fixed; f3 -> 4f2 - f3; f-2 -> 4f2 - 2f3 + f-2.
        assert_eq!(s.apply(&vec_int(&[1, 0, 0])), vec_int(&[1, 0, 0]));
        assert_eq!(s.apply(&vec_int(&[0, 1, 0])), vec_int(&[4, -1, 0]));
        assert_eq!(s.apply(&vec_int(&[0, 0, 1])), vec_int(&[4, -2, 1]));
    }

    #[test]
    fn reflections_are_involutions_sending_delta_to_minus_delta() {
        for ex in [Example::One, Example::Two] {
            let (lat, fd) = lattice_data(ex);
            for d in &fd.roots {
                let s = reflection(&lat, d).unwrap();
                let two = mat_mul(&s.matrix, &s.matrix);
                assert_eq!(two, identity_matrix());
                assert_eq!(s.apply(&vec_int(d)), vec_int(&[-d[0], -d[1], -d[2]]));
                assert!(s.preserves_gram(&lat));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let (lat1, fd1) = lattice_data(Example::One);
        let els = weyl_enumerate(&lat1, &fd1, 3).unwrap();
        // Free product of three involutions: 1 + 3 + 6 + 12.
        assert_eq!(els.len(), 22);
        let (lat2, fd2) = lattice_data(Example::Two);
        let els = weyl_enumerate(&lat2, &fd2, 3).unwrap();
        // Four involutions: 1 + 4 + 12 + 36.
        assert_eq!(els.len(), 53);
        // Identity first: det +1, empty word.
        assert_eq!(els[0].det, 1);
        assert!(els[0].word.is_empty());
    }
}
