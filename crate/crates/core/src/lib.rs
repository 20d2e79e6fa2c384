//! Exact symbolic computation of Čech–de Rham representatives of the
//! exponential Atiyah classes `tr expat^k`, by two routes:
//!
//! * [`lift`]: solve the staircase `δ c_{i-1} = ±d c_i` by exact linear
//!   algebra over cyclic trace monomials;
//! * [`simplicial`]: integrate traced powers of the barycentric curvature over
//!   the simplices.
//!
//! [`verification`] compares the two.

pub mod algebra;
pub mod cech;
pub mod error;
pub mod expr;
pub mod green;
pub mod lift;
pub mod linalg;
pub mod perm;
pub mod reference;
pub mod simplicial;
pub mod trace;
pub mod verification;

pub use algebra::{int, rat, FormPolynomial, Generator, Letter, Monomial, Rational};
pub use cech::{atiyah_cocycle, cech_delta, skew_symmetrise, Alternator, CechCochain, LiftTuple};
pub use error::{Error, Result};
pub use lift::{
    enumerate_trace_basis, lift_exponential_atiyah, solve_lift_step, verify_total_closed, ClosureReport,
    DeltaMatrix, Lift, StepOutcome, TraceBasis, SIGN_CONVENTION,
};
pub use simplicial::{
    barycentric_curvature, fibre_integrate_level, monomial_simplex_integral, simplicial_atiyah_cochain,
    simplicial_atiyah_power, SimplexIntegralTable,
};
pub use trace::{normalize_trace_word, TracePolynomial, TraceWord};
