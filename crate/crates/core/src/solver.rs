//! Implicit collocation for the fractional Fredholm integro-differential
//! equation
//!
//! ```text
//! D^alpha y(x) = g(x) + int_0^1 k(x,t) f(t, y(t)) dt,    y(0) = c,
//! ```
//!
//! reformulated through the transformed unknown w(x) (the Fredholm functional
//! of the solution). The expansion coefficients of w solve the nonlinear
//! system F_N(W) = 0 enforced at the collocation nodes; Newton iteration from
//! W_0 = -G~ converges quadratically, and the solution is reconstructed as
//! y_N(x) = (C + G + W P) Phi(x).

use crate::basis::{collocation_nodes, Basis, BasisConfig, CollocationNodes};
use crate::error::{Error, Result};
use crate::opmatrix::{apply_matrix, caputo_fracpoly, operational_matrix, OperationalMatrix};
use crate::quadrature::{fractional_gauss_01, QuadratureRule};
use crate::special::gamma;
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Scalar2Fn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Problem data for the integro-differential equation.
#[derive(Clone)]
pub struct Problem {
    /// Fractional order alpha in (0, 1]. alpha = 1 is admitted for the
    /// classical limit.
    pub alpha: f64,
    /// Initial value y(0).
    pub y0: f64,
    /// Source term g(x).
    pub g: ScalarFn,
    /// Kernel k(x, t).
    pub k: Scalar2Fn,
    /// Nonlinearity f(t, y).
    pub f: Scalar2Fn,
    /// Analytic partial derivative f_y(t, y); central differences are used
    /// when absent.
    pub f_dy: Option<Scalar2Fn>,
    /// Optional Lipschitz constant of f in y.
    pub lipschitz_f: Option<f64>,
    /// Optional bound on |k|.
    pub kernel_bound: Option<f64>,
}

impl Problem {
    pub fn new<G, K, F>(alpha: f64, y0: f64, g: G, k: K, f: F) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        K: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        Ok(Problem {
            alpha,
            y0,
            g: Arc::new(g),
            k: Arc::new(k),
            f: Arc::new(f),
            f_dy: None,
            lipschitz_f: None,
            kernel_bound: None,
        })
    }

    pub fn with_derivative<D>(mut self, f_dy: D) -> Self
    where
        D: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        self.f_dy = Some(Arc::new(f_dy));
        self
    }

    pub fn with_bounds(mut self, lipschitz_f: f64, kernel_bound: f64) -> Self {
        self.lipschitz_f = Some(lipschitz_f);
        self.kernel_bound = Some(kernel_bound);
        self
    }

    /// Unique-solution condition L_f M_k < Gamma(alpha + 1), when both
    /// bounds were supplied. Advisory: solving proceeds regardless.
    pub fn solvability(&self) -> Option<bool> {
        match (self.lipschitz_f, self.kernel_bound) {
            (Some(l), Some(m)) => Some(solvability_check(l, m, self.alpha)),
            _ => None,
        }
    }
}

/// L_f * M_k < Gamma(alpha + 1) guarantees a unique continuous solution.
pub fn solvability_check(lipschitz_f: f64, kernel_bound: f64, alpha: f64) -> bool {
    lipschitz_f * kernel_bound < gamma(alpha + 1.0)
}

/// Discretization and iteration controls.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Highest basis index; N+1 unknowns.
    pub n: usize,
    /// Fractional exponent of the basis; defaults to alpha.
    pub nu: Option<f64>,
    /// Stopping tolerance on the max-norm of F_N.
    pub tol: f64,
    /// Newton iteration cap.
    pub max_iter: usize,
    /// Quadrature order for the Fredholm integral; defaults to
    /// (n + 1) * oversample.
    pub quad_order: Option<usize>,
    /// Multiplier on the default Fredholm quadrature order.
    pub oversample: usize,
    /// Quadrature order for projection integrals (the G~ vector).
    pub projection_quad_order: Option<usize>,
}

impl SolveOptions {
    pub fn new(n: usize) -> Self {
        SolveOptions {
            n,
            nu: None,
            tol: 1e-12,
            max_iter: 50,
            quad_order: None,
            oversample: 1,
            projection_quad_order: None,
        }
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = Some(nu);
        self
    }

    pub fn with_quad_order(mut self, order: usize) -> Self {
        self.quad_order = Some(order);
        self
    }

    pub fn with_oversample(mut self, m: usize) -> Self {
        self.oversample = m.max(1);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Everything assembled once per (problem, options) pair; immutable during
/// the Newton iteration and shareable across solves.
pub struct AssembledSystem {
    pub basis: Basis,
    pub pmat: OperationalMatrix,
    /// C_i = c (2i+1)/(N+1)
    pub c_vec: Vec<f64>,
    /// G~: projection coefficients of g / Gamma(alpha)
    pub g_tilde: Vec<f64>,
    /// G = G~ P
    pub g_vec: Vec<f64>,
    pub nodes: CollocationNodes,
    pub quad: QuadratureRule,
    /// Phi(x_i) by row
    phi_nodes: Vec<Vec<f64>>,
    /// Phi(z_l) by row
    phi_quad: Vec<Vec<f64>>,
    /// (P Phi(z_l))_j by row l
    pphi_quad: Vec<Vec<f64>>,
    /// k(x_i, z_l)
    kernel_cache: Vec<Vec<f64>>,
    inv_gamma_alpha: f64,
}

impl AssembledSystem {
    pub fn new(problem: &Problem, opts: &SolveOptions) -> Result<Self> {
        let n = opts.n;
        let nu = opts.nu.unwrap_or(problem.alpha);
        let basis = Basis::new(BasisConfig::new(n, nu)?)?;
        let pmat = operational_matrix(&basis, problem.alpha)?;
        let ga = gamma(problem.alpha);
        let c_vec: Vec<f64> =
            (0..=n).map(|i| problem.y0 * (2.0 * i as f64 + 1.0) / (n as f64 + 1.0)).collect();
        let proj_order = opts
            .projection_quad_order
            .unwrap_or_else(|| crate::basis::projection_quad_order(n));
        let g = problem.g.clone();
        let mut g_tilde = crate::basis::project(&basis, move |x| g(x), proj_order);
        for v in &mut g_tilde {
            *v /= ga;
        }
        let g_vec = apply_matrix(&g_tilde, &pmat)?;
        let nodes = collocation_nodes(n, nu)?;
        let quad_order = opts.quad_order.unwrap_or((n + 1) * opts.oversample);
        let quad = fractional_gauss_01(quad_order, nu);
        let phi_nodes: Vec<Vec<f64>> =
            nodes.points.iter().map(|&x| basis.eval_vector_stable(x)).collect();
        let phi_quad: Vec<Vec<f64>> =
            quad.nodes.iter().map(|&z| basis.eval_vector_stable(z)).collect();
        let m = n + 1;
        let pphi_quad: Vec<Vec<f64>> = phi_quad
            .iter()
            .map(|phi| {
                (0..m)
                    .map(|j| (0..m).map(|k| pmat.entry(j, k) * phi[k]).sum())
                    .collect()
            })
            .collect();
        let kernel_cache: Vec<Vec<f64>> = nodes
            .points
            .iter()
            .map(|&x| quad.nodes.iter().map(|&z| (problem.k)(x, z)).collect())
            .collect();
        Ok(AssembledSystem {
            basis,
            pmat,
            c_vec,
            g_tilde,
            g_vec,
            nodes,
            quad,
            phi_nodes,
            phi_quad,
            pphi_quad,
            kernel_cache,
            inv_gamma_alpha: 1.0 / ga,
        })
    }

    fn size(&self) -> usize {
        self.basis.len()
    }

    /// u(z_l) = (C + G + W P) Phi(z_l) for every quadrature node.
    fn u_at_quad(&self, w: &[f64]) -> Vec<f64> {
        let m = self.size();
        self.phi_quad
            .iter()
            .zip(&self.pphi_quad)
            .map(|(phi, pphi)| {
                let mut u = 0.0;
                for k in 0..m {
                    u += (self.c_vec[k] + self.g_vec[k]) * phi[k];
                }
                for j in 0..m {
                    u += w[j] * pphi[j];
                }
                u
            })
            .collect()
    }

    /// F_N(W): component i is W Phi(x_i) minus the quadrature of
    /// k(x_i, z) H(z) with H(z) = f(z, u(z)) / Gamma(alpha).
    pub fn residual(&self, w: &[f64], problem: &Problem) -> Result<Vec<f64>> {
        let m = self.size();
        if w.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: w.len() });
        }
        let u = self.u_at_quad(w);
        let mut h = Vec::with_capacity(u.len());
        for (&z, &uz) in self.quad.nodes.iter().zip(&u) {
            let v = (problem.f)(z, uz) * self.inv_gamma_alpha;
            if !v.is_finite() {
                return Err(Error::NonFinite { context: "f(z, u(z))", arg: z });
            }
            h.push(v);
        }
        let mut out = vec![0.0; m];
        for i in 0..m {
            let mut lhs = 0.0;
            for j in 0..m {
                lhs += w[j] * self.phi_nodes[i][j];
            }
            let mut integral = 0.0;
            for (l, &wl) in self.quad.weights.iter().enumerate() {
                integral += wl * self.kernel_cache[i][l] * h[l];
            }
            out[i] = lhs - integral;
        }
        Ok(out)
    }

    /// J_ij = Phi_j(x_i) - sum_l w_l k(x_i, z_l) f_y(z_l, u(z_l))/Gamma(alpha)
    ///        * (P Phi(z_l))_j
    pub fn jacobian(&self, w: &[f64], problem: &Problem) -> Result<DMatrix<f64>> {
        let m = self.size();
        if w.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: w.len() });
        }
        let u = self.u_at_quad(w);
        let fy: Vec<f64> = self
            .quad
            .nodes
            .iter()
            .zip(&u)
            .map(|(&z, &uz)| self.df_dy(problem, z, uz) * self.inv_gamma_alpha)
            .collect();
        let mut jac = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let mut s = self.phi_nodes[i][j];
                for (l, &wl) in self.quad.weights.iter().enumerate() {
                    s -= wl * self.kernel_cache[i][l] * fy[l] * self.pphi_quad[l][j];
                }
                jac[(i, j)] = s;
            }
        }
        Ok(jac)
    }

    fn df_dy(&self, problem: &Problem, t: f64, y: f64) -> f64 {
        match &problem.f_dy {
            Some(d) => d(t, y),
            None => {
                let h = 1e-7 * (1.0 + y.abs());
                ((problem.f)(t, y + h) - (problem.f)(t, y - h)) / (2.0 * h)
            }
        }
    }
}

/// Evaluable approximate solution y_N(x) = coeffs . Phi(x).
#[derive(Debug, Clone)]
pub struct Solution {
    basis: Basis,
    /// Expansion coefficients C + G + W P.
    pub coeffs: Vec<f64>,
    /// Fractional order of the problem the solution came from.
    pub alpha: f64,
}

impl Solution {
    pub fn eval(&self, x: f64) -> f64 {
        let phi = self.basis.eval_vector_stable(x);
        self.coeffs.iter().zip(&phi).map(|(c, p)| c * p).sum()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Coefficients of the monomial form sum_j m_j x^(j nu).
    ///
    /// Exact as a linear map, but the m_j inherit the 4^N growth of the
    /// integer table; meaningful at moderate degree only.
    pub fn monomial_coeffs(&self) -> Vec<f64> {
        let n = self.basis.degree_index();
        (0..=n)
            .map(|j| {
                (0..=j)
                    .map(|k| self.coeffs[k] * self.basis.coeff(k, j) as f64)
                    .sum()
            })
            .collect()
    }
}

/// Newton outcome plus the reconstructed solution.
pub struct SolveResult {
    pub w: Vec<f64>,
    pub iterations: usize,
    pub residual_norm: f64,
    pub converged: bool,
    /// Max-norm of F at every iterate, starting with W_0.
    pub residual_history: Vec<f64>,
    pub solution: Solution,
    /// Outcome of the solvability test when bounds were supplied.
    pub solvability: Option<bool>,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Newton iteration J delta = -F from W_0 = -G~ with step halving.
pub fn newton_solve(
    sys: &AssembledSystem,
    problem: &Problem,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let m = sys.size();
    let mut w: Vec<f64> = sys.g_tilde.iter().map(|&g| -g).collect();
    let mut history = Vec::new();
    let mut best_w = w.clone();
    let mut best_norm = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    let mut fvec = sys.residual(&w, problem)?;
    let mut fnorm = max_norm(&fvec);
    history.push(fnorm);
    for iter in 0..opts.max_iter {
        if fnorm <= opts.tol {
            converged = true;
            break;
        }
        if fnorm < best_norm {
            best_norm = fnorm;
            best_w.copy_from_slice(&w);
        }
        let jac = sys.jacobian(&w, problem)?;
        let min_pivot = jac.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
        let lu = jac.lu();
        let rhs = DVector::from_iterator(m, fvec.iter().map(|&f| -f));
        let delta = lu.solve(&rhs).ok_or(Error::SingularJacobian {
            iteration: iter,
            min_pivot,
        })?;
        // step halving: accept unless the residual blows up by 10x
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=8 {
            let trial: Vec<f64> =
                w.iter().zip(delta.iter()).map(|(&wi, &di)| wi + scale * di).collect();
            let ftrial = sys.residual(&trial, problem)?;
            let ntrial = max_norm(&ftrial);
            if ntrial <= 10.0 * fnorm {
                w = trial;
                fvec = ftrial;
                fnorm = ntrial;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        iterations = iter + 1;
        if !accepted {
            break; // diverged; fall back to the best iterate
        }
        history.push(fnorm);
        if fnorm <= opts.tol {
            converged = true;
            break;
        }
    }
    if !converged && fnorm > best_norm {
        w = best_w;
        fnorm = best_norm;
    }
    let wp = apply_matrix(&w, &sys.pmat)?;
    let coeffs: Vec<f64> = (0..m).map(|k| sys.c_vec[k] + sys.g_vec[k] + wp[k]).collect();
    Ok(SolveResult {
        w,
        iterations,
        residual_norm: fnorm,
        converged,
        residual_history: history,
        solution: Solution { basis: sys.basis.clone(), coeffs, alpha: problem.alpha },
        solvability: problem.solvability(),
    })
}

/// End-to-end pipeline: assemble, iterate, reconstruct.
pub fn solve(problem: &Problem, opts: &SolveOptions) -> Result<SolveResult> {
    let sys = AssembledSystem::new(problem, opts)?;
    newton_solve(&sys, problem, opts)
}

/// Pointwise defect of the original equation at x:
/// |D^alpha y_N(x) - g(x) - int_0^1 k(x,t) f(t, y_N(t)) dt|.
///
/// The Caputo term uses the monomial form of y_N, so x must be positive and
/// every active power j nu must reach alpha.
pub fn ide_residual(
    solution: &Solution,
    problem: &Problem,
    x: f64,
    quad_order: usize,
) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!("ide_residual needs x in (0, 1], got {x}")));
    }
    let nu = solution.basis().nu();
    let mono = solution.monomial_coeffs();
    let caputo = caputo_fracpoly(&mono, nu, problem.alpha, x)?;
    let rule = fractional_gauss_01(quad_order, nu);
    let fred = rule.integrate(|t| (problem.k)(x, t) * (problem.f)(t, solution.eval(t)));
    Ok((caputo - (problem.g)(x) - fred).abs())
}
