//! The q-series and Jacobi-form tower: eta powers, theta_11, Eisenstein
//! series with Cohen-number coefficients, Delta_12, the weak Jacobi forms
//! phi_{0,1} and phi_{0,2}, the half-integral-index cusp forms
//! psi_{5,1/2} and psi_{2,1/2}, and the T_-(m) Hecke operators.
//!
//! Exponent-unit conventions (stored exponent k represents
//! exp(pi*i * k*u * z) for the variable's unit u):
//!   * one-variable q-series E_4, E_6, Delta_12 and the two-variable
//!     Eisenstein/weak forms live on the exp(2*pi*i*z) lattice (u = 2);
//!   * eta powers live on u = 1/12 so that q^{p/24} shifts are integral;
//!   * theta_11 uses u = 1/4 for z_1 (odd squares over 8 in q-units) and
//!     u = 1 for z_2;
//!   * psi_{5,1/2} uses u = 1 (odd integer support), psi_{2,1/2} uses
//!     u = 1/2 for z_1 (support 1 mod 4) and u = 1 for z_2.

mod eisenstein;
mod hecke;
mod psi;
mod qseries;
mod theta11;
mod weak;

pub use eisenstein::{cohen_number, jacobi_eisenstein};
pub use hecke::{log_identity_check, t_minus};
pub use psi::{psi_half_form, PsiKind};
pub use qseries::{classical_qseries, QSeriesKind};
pub use theta11::{theta11, Theta11Form};
pub use weak::{weak_jacobi, WeakKind};

use num_rational::Ratio;

use crate::series::GradedSeries;

/// A two-variable series tagged with Jacobi weight and index.
#[derive(Clone, Debug)]
pub struct JacobiSeries {
    pub series: GradedSeries,
    pub weight: Ratio<i64>,
    pub index: Ratio<i64>,
    pub name: String,
}

impl JacobiSeries {
    pub fn new(series: GradedSeries, weight: Ratio<i64>, index: Ratio<i64>, name: &str) -> Self {
        JacobiSeries { series, weight, index, name: name.to_string() }
    }

    pub fn coeff(&self, n: i64, l: i64) -> num_rational::BigRational {
        self.series.coeff(&[n, l, 0])
    }
}
