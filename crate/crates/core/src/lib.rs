//! Contraction metrics for quantum channels and Bures-type Lyapunov
//! certificates for Lindblad master equations.
//!
//! The crate is organised in five layers:
//!
//! - [`linalg`] — dense complex-matrix kernels: a cyclic Jacobi Hermitian
//!   eigensolver, spectral matrix functions, and the weighted Sylvester /
//!   Lyapunov solvers everything else is built on.
//! - [`states`] — density matrices, truncated oscillator operators,
//!   coherent and cat states, and six contractive distances between states
//!   (trace, Bures, Chernoff, relative entropy, chi-squared, Hilbert
//!   projective).
//! - [`dynamics`] — Kraus channels and their duals, the Lindblad
//!   right-hand side, a fixed-step RK4 integrator with tangent
//!   co-propagation, superoperator assembly, steady-state extraction and
//!   the Hermitian-closure test on jump-operator spans.
//! - [`petz`] — the family of channel-contractive Riemannian metrics
//!   parameterised by a positive measure on [0, 1], the Bures quadratic
//!   Lyapunov function for full-rank equilibria, and its analytic decay
//!   rate.
//! - [`cat`] — an engineered reservoir that stabilises two-component cat
//!   states of a truncated field mode: its Kraus operators, rotating-frame
//!   Lindblad models, analytic equilibrium, and convergence-certification
//!   experiments.
//!
//! [`random`] provides seeded generators (states, channels, Lindblad
//! generators) used by the randomized verification suites.

pub mod cat;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod petz;
pub mod random;
pub mod states;

pub use error::{Error, Result};
