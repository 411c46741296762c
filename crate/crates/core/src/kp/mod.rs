//! KP tau-function verification: exact Hirota and KP residuals, the Gr(2,4)
//! quadric, and floating-point checks of the Airy example.

pub mod airy;
pub mod example;
mod exact;
pub mod numeric;
pub mod pipeline;

pub use exact::{
    formal_combination, hirota_residual, kp_residual, pi_var, pin_exponential_sign, quadric_extraction, skn_labels,
    u_from_tau, QuadricReport,
};
