//! Numerical toolkit for the q-starlike class `ST^λ_q(k, α)` defined through
//! the Ruscheweyh q-differential operator.
//!
//! * [`qcore`]: basic numbers, q-factorials, q-Pochhammer symbols, `Ψ_q` and `Φ_n`.
//! * [`series`]: truncated power series, Hadamard product, Jackson q-derivative
//!   and the Ruscheweyh operator.
//! * [`classes`]: coefficient membership test, analytic criterion sampling,
//!   extremal functions and a seeded member sampler.
//! * [`analysis`]: integral means, Schwarz witness, Wilf positivity and the
//!   sharp subordination constant.
//! * [`cli`]: the `qstar` command-line front end.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the precision.

pub mod analysis;
pub mod classes;
pub mod cli;
pub mod error;
pub mod qcore;
pub mod scalar;
pub mod series;

pub use analysis::{
    check_subordination, circle_mean, integral_means, integral_means_sweep, realpart_bound,
    schwarz_witness, sharpness_minimum, subordination_constant, subordination_report,
    verify_integral_means, wilf_positivity, ComparisonMap, IntegralMeansCheck, QuadratureConfig,
    SubordinationEvidence, SubordinationReport,
};
pub use classes::{
    analytic_criterion_margin, coefficient_test, criterion_grid_min, extremal_function,
    random_member, DiscGrid, MembershipReport, Verdict,
};
pub use error::{Error, Result};
pub use qcore::{basic_number, phi, psi, q_factorial, q_pochhammer, ClassParams};
pub use scalar::Scalar;
pub use series::{
    hadamard, q_derivative, ruscheweyh, ruscheweyh_kernel, ruscheweyh_q_derivative, CoeffSeq,
    DiscPoint, PowerSeries, Sign,
};

pub type ClassParams64 = ClassParams<f64>;
pub type ClassParams32 = ClassParams<f32>;
pub type PowerSeries64 = PowerSeries<f64>;
pub type PowerSeries32 = PowerSeries<f32>;
pub type QuadratureConfig64 = QuadratureConfig<f64>;
pub type QuadratureConfig32 = QuadratureConfig<f32>;
pub type MembershipReport64 = MembershipReport<f64>;
pub type SubordinationReport64 = SubordinationReport<f64>;
