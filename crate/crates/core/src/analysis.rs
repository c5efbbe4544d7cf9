//! Error metrics for solved problems and computable a-priori bounds for the
//! operational matrix.

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::opmatrix::{frac_integral_exact, operational_matrix};
use crate::quadrature::gauss_legendre_01;
use crate::solver::{solve, Problem, Solution, SolveOptions};
use crate::special::{gamma, ln_gamma};
use rayon::prelude::*;
use std::time::Instant;

/// Pointwise and aggregate errors of a solution against a reference.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub l2_error: f64,
    pub max_error: f64,
    pub point_errors: Vec<(f64, f64)>,
    pub n: usize,
    pub nu: f64,
    pub alpha: f64,
}

/// count uniform points on [0, 1], endpoints included.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count).map(|i| i as f64 / (count as f64 - 1.0)).collect()
}

/// Default error sample: 101 uniform points.
pub fn default_sample() -> Vec<f64> {
    uniform_grid(101)
}

/// Root-mean-square absolute error over the sample points.
pub fn l2_error<F: Fn(f64) -> f64>(solution: &Solution, exact: F, sample: &[f64]) -> f64 {
    assert!(!sample.is_empty());
    let sum: f64 = sample
        .iter()
        .map(|&x| {
            let e = solution.eval(x) - exact(x);
            e * e
        })
        .sum();
    (sum / sample.len() as f64).sqrt()
}

/// Absolute errors at the given points plus the aggregate report.
pub fn max_error_at<F: Fn(f64) -> f64>(solution: &Solution, exact: F, xs: &[f64]) -> ErrorReport {
    let point_errors: Vec<(f64, f64)> =
        xs.iter().map(|&x| (x, (solution.eval(x) - exact(x)).abs())).collect();
    let max_error = point_errors.iter().fold(0.0f64, |m, &(_, e)| m.max(e));
    let l2 = l2_error(solution, exact, xs);
    ErrorReport {
        l2_error: l2,
        max_error,
        point_errors,
        n: solution.basis().degree_index(),
        nu: solution.basis().nu(),
        alpha: solution.alpha,
    }
}

/// Best-approximation bound N_nu / (Gamma((N+1)nu + 1) sqrt((2N+3) nu)),
/// with N_nu the supplied maximum of the order-(N+1)nu Caputo derivative.
pub fn best_approx_bound(nu: f64, n: usize, m_nu: f64) -> f64 {
    let p = (n as f64 + 1.0) * nu;
    m_nu / ((ln_gamma(p + 1.0)).exp() * ((2.0 * n as f64 + 3.0) * nu).sqrt())
}

/// Squared best-approximation errors of x^(j nu + alpha) for j = 0..=n,
/// computed as Gram-determinant ratios through Cholesky pivots.
fn gram_ratios(basis: &Basis, alpha: f64, quad_order: usize) -> Result<Vec<f64>> {
    let n = basis.degree_index();
    let nu = basis.nu();
    let rule = gauss_legendre_01(quad_order);
    let inv = 1.0 / nu;
    // weighted sample of the basis and of each target monomial
    let xs: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&s| if nu == 1.0 { s } else { s.powf(inv) })
        .collect();
    let ws: Vec<f64> = rule.weights.iter().map(|&w| w * inv).collect();
    let phi: Vec<Vec<f64>> = xs.iter().map(|&x| basis.eval_vector_stable(x)).collect();
    let m = n + 1;
    let mut base = vec![vec![0.0f64; m]; m];
    for (l, p) in phi.iter().enumerate() {
        for r in 0..m {
            for c in 0..=r {
                base[r][c] += ws[l] * p[r] * p[c];
            }
        }
    }
    for r in 0..m {
        for c in r + 1..m {
            base[r][c] = base[c][r];
        }
    }
    let mut ratios = Vec::with_capacity(m);
    for j in 0..=n {
        let u: Vec<f64> = xs.iter().map(|&x| x.powf(j as f64 * nu + alpha)).collect();
        // bordered Gram matrix, u last; the final Cholesky pivot is the
        // determinant ratio = squared projection error
        let mut g = vec![vec![0.0f64; m + 1]; m + 1];
        for r in 0..m {
            g[r][..m].copy_from_slice(&base[r]);
        }
        for r in 0..m {
            let mut s = 0.0;
            for l in 0..xs.len() {
                s += ws[l] * phi[l][r] * u[l];
            }
            g[r][m] = s;
            g[m][r] = s;
        }
        g[m][m] = (0..xs.len()).map(|l| ws[l] * u[l] * u[l]).sum();
        ratios.push(bordered_cholesky_ratio(&g)?);
    }
    Ok(ratios)
}

/// Last Cholesky pivot of a symmetric PSD matrix; the leading block must be
/// positive definite, the final pivot is clamped at zero (it measures a
/// projection error and may round negative).
fn bordered_cholesky_ratio(g: &[Vec<f64>]) -> Result<f64> {
    let size = g.len();
    let mut l = vec![vec![0.0f64; size]; size];
    for i in 0..size {
        let mut s = g[i][i];
        for k in 0..i {
            s -= l[i][k] * l[i][k];
        }
        if i + 1 == size {
            return Ok(s.max(0.0));
        }
        if s <= 0.0 {
            return Err(Error::IllConditionedGram { pivot_index: i, pivot: s });
        }
        l[i][i] = s.sqrt();
        for r in i + 1..size {
            let mut v = g[r][i];
            for k in 0..i {
                v -= l[r][k] * l[i][k];
            }
            l[r][i] = v / l[i][i];
        }
    }
    unreachable!("loop returns on the last pivot")
}

/// Upper bounds on the weighted-L2 norms of the operational-matrix error
/// vector, one per basis function:
///
/// ```text
/// ||e_n|| <= (1/Gamma(alpha)) sum_j binom(N-n,j-n) binom(N+j+1,N-n)
///            B(alpha, j nu + 1) sqrt(Psi(x^(j nu + alpha), basis)/Psi(basis))
/// ```
///
/// normalized so that e_n is the defect of (1/Gamma(alpha)) P, the matrix
/// representation of the Riemann-Liouville integral.
pub fn gram_error_bounds(basis: &Basis, alpha: f64) -> Result<Vec<f64>> {
    let n = basis.degree_index();
    let nu = basis.nu();
    let quad_order = (2 * n + 16).max(160);
    let ratios = gram_ratios(basis, alpha, quad_order)?;
    let ga = gamma(alpha);
    let mut bounds = Vec::with_capacity(n + 1);
    for row in 0..=n {
        let mut s = 0.0;
        for j in row..=n {
            let b1 = binom(n - row, j - row);
            let b2 = binom(n + j + 1, n - row);
            let bf = crate::special::beta(alpha, j as f64 * nu + 1.0)?;
            s += b1 * b2 * bf * ratios[j].max(0.0).sqrt();
        }
        bounds.push(s / ga);
    }
    Ok(bounds)
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Measured weighted-L2 norms of the same error vector the bounds cover:
/// || (1/Gamma(alpha)) [ int_0^x (x-s)^(alpha-1) C_n(s) ds - (P Phi)_n(x) ] ||_2.
pub fn operational_matrix_error_norms(basis: &Basis, alpha: f64) -> Result<Vec<f64>> {
    let n = basis.degree_index();
    let nu = basis.nu();
    let pmat = operational_matrix(basis, alpha)?;
    let ga = gamma(alpha);
    let quad_order = (2 * n + 16).max(160);
    let rule = gauss_legendre_01(quad_order);
    let inv = 1.0 / nu;
    let mut norms = vec![0.0f64; n + 1];
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = if nu == 1.0 { s } else { s.powf(inv) };
        let phi = basis.eval_vector_stable(x);
        for row in 0..=n {
            let coeffs: Vec<f64> = (0..=n).map(|j| basis.coeff(row, j) as f64).collect();
            let exact = frac_integral_exact(&coeffs, basis, alpha, x);
            let approx: f64 = pmat.row(row).iter().zip(&phi).map(|(a, p)| a * p).sum();
            let e = (exact - approx) / ga;
            norms[row] += w * inv * e * e;
        }
    }
    Ok(norms.into_iter().map(|v| v.max(0.0).sqrt()).collect())
}

/// One cell of a convergence sweep.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub n: usize,
    pub nu: f64,
    pub outcome: std::result::Result<SweepEntry, String>,
}

#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub l2_error: f64,
    pub iterations: usize,
    pub residual_norm: f64,
    pub converged: bool,
    /// Wall-clock seconds; the only nondeterministic field.
    pub seconds: f64,
}

/// L2 errors of the solver across a (N, nu) grid.
///
/// Cells run independently (in parallel) and failures are recorded without
/// aborting the sweep. The error metric matches the reference tables: the
/// absolute error sampled at the run's collocation points x_l, combined as
/// sqrt(sum_l |E(x_l)|^2 / N).
pub fn convergence_sweep<F>(
    problem: &Problem,
    exact: F,
    ns: &[usize],
    nus: &[f64],
    base: &SolveOptions,
) -> Vec<SweepCell>
where
    F: Fn(f64) -> f64 + Sync,
{
    let grid: Vec<(f64, usize)> = nus
        .iter()
        .flat_map(|&nu| ns.iter().map(move |&n| (nu, n)))
        .collect();
    grid.par_iter()
        .map(|&(nu, n)| {
            let started = Instant::now();
            let mut opts = base.clone();
            opts.n = n;
            opts.nu = Some(nu);
            let outcome = solve(problem, &opts)
                .map(|res| {
                    let pts = crate::basis::collocation_nodes(n, nu)
                        .map(|c| c.points)
                        .unwrap_or_else(|_| default_sample());
                    let sum: f64 = pts
                        .iter()
                        .map(|&x| {
                            let e = res.solution.eval(x) - exact(x);
                            e * e
                        })
                        .sum();
                    SweepEntry {
                        l2_error: (sum / n as f64).sqrt(),
                        iterations: res.iterations,
                        residual_norm: res.residual_norm,
                        converged: res.converged,
                        seconds: started.elapsed().as_secs_f64(),
                    }
                })
                .map_err(|e| e.to_string());
            SweepCell { n, nu, outcome }
        })
        .collect()
}
