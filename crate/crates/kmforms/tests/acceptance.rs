//! Acceptance suite: one test per criterion, every comparison
//! coefficient-exact. Each test prints a single PASS/FAIL line (visible
//! with `cargo test --test acceptance -- --nocapture`).

use kmforms::checks;
use kmforms::error::CheckReport;

fn gate(report: CheckReport) {
    println!(
        "ACCEPTANCE {}: {}",
        if report.passed { "PASS" } else { "FAIL" },
        report.name
    );
    assert!(report.passed, "{}", report.render());
}

#[test]
fn a01_delta5_construction() {
    gate(checks::check_delta5_construction().unwrap());
}

#[test]
fn a02_power_series_identity() {
    gate(checks::check_eq_1_8(8).unwrap());
}

#[test]
fn a03_fourier_jacobi_slice() {
    gate(checks::check_fourier_jacobi_slice().unwrap());
}

#[test]
fn a04_lift_consistency() {
    gate(checks::check_lift_consistency().unwrap());
}

#[test]
fn a05_product_exponents() {
    gate(checks::check_product_exponents_example1().unwrap());
}

#[test]
fn a06_symmetry_audit() {
    gate(checks::check_symmetry_audit().unwrap());
}

#[test]
fn a07_weyl_orbit_sum_side() {
    gate(checks::check_sum_side_example1().unwrap());
}

#[test]
fn a08_tau_on_isotropic_rays() {
    gate(checks::check_tau_example1().unwrap());
}

#[test]
fn a09_example_2_end_to_end() {
    gate(checks::check_example2().unwrap());
}

#[test]
fn a10_epsilon_combinatorics() {
    gate(checks::check_epsilon_combinatorics().unwrap());
}

#[test]
fn a11_wedge_square_images() {
    gate(checks::check_wedge_square().unwrap());
}

#[test]
fn a12_lattice_data_and_weyl_counts() {
    gate(checks::check_lattice_data().unwrap());
}

#[test]
fn a13_eisenstein_integrality_and_rows() {
    gate(checks::check_eisenstein_rows().unwrap());
}

#[test]
fn log_identity_module_invariant() {
    gate(checks::check_log_identity(12).unwrap());
}
