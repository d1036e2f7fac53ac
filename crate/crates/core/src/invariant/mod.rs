//! The Moebius-invariant semi-norm `‖f‖² = Σ_m c_m ‖f_m‖²` on H-harmonic
//! functions, the integral identities that pin down its coefficients, and the
//! holomorphic analogue on the complex ball.

mod coefficients;
mod holomorphic;
mod integrals;
mod seminorm;

pub use coefficients::{
    invariant_reference, negative_binomial, recurrence_solve_d, reference_difference, series_identity_coefficients,
    series_identity_residual, CoefficientSequence,
};
pub use holomorphic::{holo_c_recurrence_check, holo_f_closed, holo_pair_closed, holo_pair_quadrature};
pub use integrals::{
    double_exp_closed, double_exp_quadrature, exp_integral_closed, exp_integral_quadrature, f_value,
    laguerre_transform_closed, laguerre_transform_quadrature, moebius_pair_closed, moebius_pair_quadrature,
    moebius_pair_residual, phi_m_eval, poisson_pair_closed, poisson_pair_quadrature, FEstimate, FPath, LAGUERRE_POINTS,
};
pub use seminorm::{semi_norm_sq, SemiNorm};
