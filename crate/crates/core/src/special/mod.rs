//! Special functions: Gamma, incomplete Gamma, Bessel and Whittaker.

pub mod bessel;
pub mod gamma;
pub mod incgamma;
pub mod whittaker;

pub use bessel::{bessel_i, bessel_j, bessel_jet, bessel_jet_with, BesselKind};
pub use gamma::{gamma_fn, gamma_jet, gamma_real, rgamma_jet, zeta_even};
pub use incgamma::inc_gamma_upper;
pub use whittaker::{
    mplus, mplus_jet, u_eval, u_jet, whittaker_M, whittaker_W, whittaker_m_jet, whittaker_s_deriv,
    whittaker_w_jet, FdPolicy, Sign, WhittakerKind, WhittakerParams,
};
