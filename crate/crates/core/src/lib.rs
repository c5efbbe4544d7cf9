//! Spectral collocation solver for nonlinear fractional Fredholm
//! integro-differential equations
//!
//! ```text
//! D^alpha y(x) = g(x) + int_0^1 k(x,t) f(t, y(t)) dt,    y(0) = c,
//! ```
//!
//! on x in [0, 1] with 0 < alpha <= 1. Solutions of such problems behave
//! like x^alpha near the origin, so the discretization uses a basis of
//! orthogonal polynomials in x^nu (fractional Chelyshkov functions). The
//! fractional integral of the basis is represented by a dense operational
//! matrix, the Fredholm integral by Gauss quadrature adapted to fractional
//! powers, and the resulting nonlinear algebraic system is solved by Newton
//! iteration.
//!
//! Modules:
//! - [`basis`]: the fractional basis, roots, collocation nodes, projections
//! - [`quadrature`]: Gauss-Legendre rules and weighted integrals
//! - [`special`]: Gamma/Beta utilities
//! - [`opmatrix`]: operational matrix, exact fractional integrals, Caputo
//!   derivatives of fractional polynomials
//! - [`solver`]: problem assembly, Newton iteration, solution reconstruction
//! - [`analysis`]: error metrics, computable error bounds, convergence sweeps
//!
//! Solving the classical limit of a small benchmark:
//!
//! ```
//! use fide_core::{solve, Problem, SolveOptions};
//!
//! // y'(x) = 1 - x/4 + int_0^1 x t y(t)^2 dt, y(0) = 0; solution y = x
//! let problem = Problem::new(1.0, 0.0, |x| 1.0 - x / 4.0, |x, t| x * t, |_, y| y * y)
//!     .unwrap()
//!     .with_derivative(|_, y| 2.0 * y);
//! let result = solve(&problem, &SolveOptions::new(2)).unwrap();
//! assert!(result.converged);
//! assert!((result.solution.eval(0.5) - 0.5).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod basis;
mod dd;
pub mod error;
pub mod opmatrix;
pub mod quadrature;
pub mod solver;
pub mod special;

pub use analysis::{
    best_approx_bound, convergence_sweep, default_sample, gram_error_bounds, l2_error,
    max_error_at, operational_matrix_error_norms, uniform_grid, ErrorReport, SweepCell,
    SweepEntry,
};
pub use basis::{
    chelyshkov_roots, collocation_nodes, inner_product, project, projection_quad_order, Basis,
    BasisConfig, BasisVector, CollocationNodes,
};
pub use error::{Error, Result};
pub use opmatrix::{
    apply_matrix, caputo_fracpoly, frac_integral_exact, operational_matrix, xi_table,
    OperationalMatrix, XiTable,
};
pub use quadrature::{fractional_gauss_01, gauss_legendre_01, weighted_integral, QuadratureRule};
pub use solver::{
    ide_residual, newton_solve, solvability_check, solve, AssembledSystem, Problem, Scalar2Fn,
    ScalarFn, Solution, SolveOptions, SolveResult,
};
pub use special::{beta, gamma, ln_gamma};
