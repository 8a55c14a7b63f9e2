//! The exterior-square homomorphism Sp_4(Z) -> SO(U + U + <2>).
//!
//! L_4 wedge L_4 carries the Pfaffian pairing u ^ v = (u,v) e1^e2^e3^e4 of
//! signature (3,3). A symplectic g fixes h = e1^e3 + e2^e4, hence acts on
//! L = h-perp with basis
//!   f1 = e1^e2, f2 = e2^e3, f3 = e1^e3 - e2^e4, f-2 = e4^e1, f-1 = e4^e3,
//! whose Gram form is U + U + <2>. The three generator families of Sp_4(Z)
//! have closed-form images; `wedge_square_check` recomputes each image from
//! scratch and compares against the closed forms, checks that h is fixed
//! and that the Gram form is preserved.

use num_rational::Ratio;

use crate::error::{CheckReport, Result};

use super::Rat;

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn rz(n: i64) -> Rat {
    Ratio::from_integer(n)
}

/// Sign of (i, j, k, l) as a permutation of (0,1,2,3); 0 if not a permutation.
fn perm_sign(p: [usize; 4]) -> i64 {
    let mut seen = [false; 4];
    for &x in &p {
        if x > 3 || seen[x] {
            return 0;
        }
        seen[x] = true;
    }
    let mut inversions = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pfaffian Gram matrix on the e_i ^ e_j basis.
fn pfaffian_gram() -> [[i64; 6]; 6] {
    let mut g = [[0i64; 6]; 6];
    for (r, &(i, j)) in PAIRS.iter().enumerate() {
        for (c, &(k, l)) in PAIRS.iter().enumerate() {
            g[r][c] = perm_sign([i, j, k, l]);
        }
    }
    g
}

/// Exterior square of a 4x4 matrix on the pair basis.
fn wedge2(g: &[[Rat; 4]; 4]) -> [[Rat; 6]; 6] {
    let mut w = [[rz(0); 6]; 6];
    for (c, &(i, j)) in PAIRS.iter().enumerate() {
        for (r, &(k, l)) in PAIRS.iter().enumerate() {
            w[r][c] = g[k][i] * g[l][j] - g[k][j] * g[l][i];
        }
    }
    w
}

/// Pair-basis coordinates -> (f1, f2, f3, f-2, f-1, h) coordinates.
fn to_f_coords(y: &[Rat; 6]) -> [Rat; 6] {
    let half = Ratio::new(1, 2);
    [
        y[0],
        y[3],
        (y[1] - y[4]) * half,
        -y[2],
        -y[5],
        (y[1] + y[4]) * half,
    ]
}

/// (f1, f2, f3, f-2, f-1, h) coordinates -> pair-basis coordinates.
fn from_f_coords(x: &[Rat; 6]) -> [Rat; 6] {
    [x[0], x[2] + x[5], -x[3], x[1], -x[2] + x[5], -x[4]]
}

/// The (f..., h) matrix of wedge2(g); column j is the image of basis j.
fn in_f_basis(w: &[[Rat; 6]; 6]) -> [[Rat; 6]; 6] {
    let mut out = [[rz(0); 6]; 6];
    for j in 0..6 {
        let mut basis = [rz(0); 6];
        basis[j] = rz(1);
        let y = from_f_coords(&basis);
        let mut img = [rz(0); 6];
        for (r, row) in w.iter().enumerate() {
            for c in 0..6 {
                img[r] += row[c] * y[c];
            }
        }
        let f = to_f_coords(&img);
        for i in 0..6 {
            out[i][j] = f[i];
        }
    }
    out
}

/// Gram of L = U + U + <2> in the ordering (f1, f2, f3, f-2, f-1).
fn gram_l() -> [[i64; 5]; 5] {
    [
        [0, 0, 0, 0, -1],
        [0, 0, 0, -1, 0],
        [0, 0, 2, 0, 0],
        [0, -1, 0, 0, 0],
        [-1, 0, 0, 0, 0],
    ]
}

fn is_symplectic(g: &[[Rat; 4]; 4]) -> bool {
    // t^g J g = J with J = [[0, E], [-E, 0]].
    let j: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = rz(0);
            for k in 0..4 {
                for l in 0..4 {
                    acc += g[k][a] * rz(j[k][l]) * g[l][b];
                }
            }
            if acc != rz(j[a][b]) {
                return false;
            }
        }
    }
    true
}

fn check_one(
    report: &mut CheckReport,
    label: &str,
    g: &[[Rat; 4]; 4],
    expected: &[[Rat; 5]; 5],
) {
    if !is_symplectic(g) {
        report.violation(format!("{label}: input is not symplectic"));
        return;
    }
    let w = wedge2(g);
    let mf = in_f_basis(&w);
    // h is fixed and does not mix into L.
    for i in 0..5 {
        if mf[i][5] != rz(0) {
            report.violation(format!("{label}: image of h leaks into L"));
            return;
        }
    }
    if mf[5][5] != rz(1) {
        report.violation(format!("{label}: h is not fixed"));
        return;
    }
    for j in 0..5 {
        if mf[5][j] != rz(0) {
            report.violation(format!("{label}: image of f-basis vector {j} has an h component"));
            return;
        }
    }
    for i in 0..5 {
        for j in 0..5 {
            if mf[i][j] != expected[i][j] {
                report.violation(format!(
                    "{label}: entry ({i},{j}) is {} but the closed form gives {}",
                    mf[i][j], expected[i][j]
                ));
                return;
            }
        }
    }
    // Gram preservation: t^M G M = G.
    let gl = gram_l();
    for a in 0..5 {
        for b in 0..5 {
            let mut acc = rz(0);
            for k in 0..5 {
                for l in 0..5 {
                    acc += mf[k][a] * rz(gl[k][l]) * mf[l][b];
                }
            }
            if acc != rz(gl[a][b]) {
                report.violation(format!("{label}: Gram form not preserved at ({a},{b})"));
                return;
            }
        }
    }
}

fn rational4(m: [[i64; 4]; 4]) -> [[Rat; 4]; 4] {
    let mut out = [[rz(0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = rz(m[i][j]);
        }
    }
    out
}

fn rational5(m: [[i64; 5]; 5]) -> [[Rat; 5]; 5] {
    let mut out = [[rz(0); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = rz(m[i][j]);
        }
    }
    out
}

/// Verify the displayed images of the Sp_4(Z) generator families.
pub fn wedge_square_check() -> Result<CheckReport> {
    let mut report = CheckReport::new("wedge-square generator images");

    // Sanity: the Pfaffian Gram restricted to (f..., h) is U+U+<2> (+) <-2>.
    let pf = pfaffian_gram();
    let gl = gram_l();
    for a in 0..6 {
        for b in 0..6 {
            let ya = from_f_coords(&{
                let mut v = [rz(0); 6];
                v[a] = rz(1);
                v
            });
            let yb = from_f_coords(&{
                let mut v = [rz(0); 6];
                v[b] = rz(1);
                v
            });
            let mut acc = rz(0);
            for i in 0..6 {
                for j in 0..6 {
                    acc += ya[i] * rz(pf[i][j]) * yb[j];
                }
            }
            let expected = if a < 5 && b < 5 {
                rz(gl[a][b])
            } else if a == 5 && b == 5 {
                rz(-2)
            } else {
                rz(0)
            };
            if acc != expected {
                report.violation(format!("Pfaffian Gram mismatch at ({a},{b})"));
            }
        }
    }

    // J_4 -> the anti-diagonal with central +1.
    let j4 = rational4([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
    let expected_j4 = rational5([
        [0, 0, 0, 0, -1],
        [0, 0, 0, -1, 0],
        [0, 0, 1, 0, 0],
        [0, -1, 0, 0, 0],
        [-1, 0, 0, 0, 0],
    ]);
    check_one(&mut report, "J_4", &j4, &expected_j4);
    report.note("J_4 image matches the displayed anti-diagonal matrix");

    // Upper-triangular B-translations over a symmetric grid.
    let mut b_cases = 0;
    for b1 in -2..=2i64 {
        for b2 in -2..=2i64 {
            for b3 in -2..=2i64 {
                let g = rational4([
                    [1, 0, b1, b2],
                    [0, 1, b2, b3],
                    [0, 0, 1, 0],
                    [0, 0, 0, 1],
                ]);
                let expected = rational5([
                    [1, -b1, 2 * b2, -b3, b2 * b2 - b1 * b3],
                    [0, 1, 0, 0, b3],
                    [0, 0, 1, 0, b2],
                    [0, 0, 0, 1, b1],
                    [0, 0, 0, 0, 1],
                ]);
                check_one(&mut report, &format!("B = ({b1},{b2},{b3})"), &g, &expected);
                b_cases += 1;
            }
        }
    }
    report.note(format!("{b_cases} B-translations match (B = 0 gives the identity)"));

    // diag(U*, U) for a grid of GL_2(Z) elements.
    let us: [[i64; 4]; 9] = [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [1, 1, 0, 1],
        [1, 0, 1, 1],
        [0, -1, 1, 0],
        [-1, 0, 0, 1],
        [2, 1, 1, 1],
        [3, 2, 1, 1],
        [1, -1, 1, 0],
    ];
    for [a, b, c, d] in us {
        let det = a * d - b * c;
        assert!(det == 1 || det == -1);
        // U* = t^U^{-1} = det * [[d, -c], [-b, a]] for det = +-1.
        let g = rational4([
            [det * d, -det * c, 0, 0],
            [-det * b, det * a, 0, 0],
            [0, 0, a, b],
            [0, 0, c, d],
        ]);
        let expected = rational5([
            [det, 0, 0, 0, 0],
            [0, det * a * a, det * -2 * a * b, det * b * b, 0],
            [0, det * -a * c, det * (a * d + b * c), det * -b * d, 0],
            [0, det * c * c, det * -2 * c * d, det * d * d, 0],
            [0, 0, 0, 0, det],
        ]);
        check_one(&mut report, &format!("U = [[{a},{b}],[{c},{d}]]"), &g, &expected);
    }
    report.note(format!("{} U-block images match det(U) times the displayed matrix", us.len()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_generator_families_verify() {
        let report = wedge_square_check().unwrap();
        assert!(report.passed, "{}", report.render());
    }

    #[test]
    fn pair_gram_signs() {
        let pf = pfaffian_gram();
        // (e1^e2, e3^e4) = +1, (e1^e3, e2^e4) = -1, (e1^e4, e2^e3) = +1.
        assert_eq!(pf[0][5], 1);
        assert_eq!(pf[1][4], -1);
        assert_eq!(pf[2][3], 1);
        assert_eq!(pf[0][1], 0);
    }
}
