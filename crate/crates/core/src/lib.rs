//! Polyharmonic weak Maass forms for `SL_2(Z)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`qseries`]: exact formal Laurent series in `q` over the rationals.
//! * [`modforms`]: classical q-expansions (`Delta`, `E_k`, `j`), Faber
//!   polynomials and the Duke-Jenkins basis `f_{k,m}`.
//! * [`special`]: Gamma, incomplete Gamma, Bessel and Whittaker functions,
//!   including Taylor jets in the spectral parameter `s`.
//! * [`kloosterman`]: Kloosterman sums and the Kloosterman-Bessel series
//!   `L_{m,n}(s)`.
//! * [`poincare`]: Maass-Poincare series, their Taylor coefficients
//!   `F_{k,m,r}` / `G_{k,m,r}` as Fourier-Whittaker tables, Eisenstein sums.
//! * [`operators`]: the `xi_k` and `Delta_k` operators, numerically and on
//!   coefficient tables.
//! * [`checks`]: the verification suite producing [`CheckReport`]s.

pub mod checks;
pub mod error;
pub mod jet;
pub mod kloosterman;
pub mod modforms;
pub mod operators;
pub mod poincare;
pub mod qseries;
pub mod quad;
pub mod special;

pub use checks::{run_suite, CheckReport};
pub use error::{Error, Result};
pub use jet::Jet;
pub use modforms::{BasisElement, WeightProfile};
pub use poincare::{EvalPoint, FourierWhittakerExpansion, PoincareSpec, TruncationPolicy};
pub use qseries::QSeries;

pub use num_complex::Complex64;
