//! Fractional Chelyshkov basis: construction, evaluation, roots and
//! weighted-L2 projections.
//!
//! The basis functions are polynomials in t = x^nu with an exact signed
//! integer coefficient table. Two evaluation routes exist: Horner over the
//! coefficient row (exact contract, but the coefficients grow like 4^N and
//! cancel), and the downward recurrence, whose intermediates stay O(N) and
//! which therefore keeps full relative accuracy at large N. The solver and
//! every quadrature-heavy path use the recurrence.

use crate::error::{Error, Result};
use crate::quadrature::weighted_integral;
use nalgebra::DMatrix;

/// Degree index and fractional exponent of a basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisConfig {
    /// Highest index; the basis has `n + 1` functions.
    pub n: usize,
    /// Fractional exponent, 0 < nu <= 1.
    pub nu: f64,
}

impl BasisConfig {
    pub fn new(n: usize, nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(Error::Domain(format!("nu must lie in (0, 1], got {nu}")));
        }
        Ok(BasisConfig { n, nu })
    }
}

/// A fractional Chelyshkov basis with its exact coefficient table.
#[derive(Debug, Clone)]
pub struct Basis {
    config: BasisConfig,
    /// Row-major (n+1) x (n+1); row k holds the coefficients of t^j for
    /// j = k..=n, zeros below the diagonal.
    coeffs: Vec<i128>,
}

/// Values of all basis functions at one point.
pub type BasisVector = Vec<f64>;

/// Collocation nodes: the 1/nu-power images of the roots of the classical
/// polynomial of index one higher, sorted ascending in (0, 1).
#[derive(Debug, Clone)]
pub struct CollocationNodes {
    pub points: Vec<f64>,
}

fn checked_binomial(n: usize, k: usize) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)?;
        acc /= (i + 1) as i128;
    }
    Some(acc)
}

impl Basis {
    /// Build the exact coefficient table
    /// c[k][j] = (-1)^(j-k) binom(n-k, j-k) binom(n+j+1, n-k).
    pub fn new(config: BasisConfig) -> Result<Self> {
        let n = config.n;
        let len = n + 1;
        let mut coeffs = vec![0i128; len * len];
        for k in 0..=n {
            for j in k..=n {
                let b1 = checked_binomial(n - k, j - k);
                let b2 = checked_binomial(n + j + 1, n - k);
                let c = b1
                    .zip(b2)
                    .and_then(|(a, b)| a.checked_mul(b))
                    .ok_or(Error::CoefficientOverflow { n: k, max_index: n })?;
                coeffs[k * len + j] = if (j - k) % 2 == 0 { c } else { -c };
            }
        }
        Ok(Basis { config, coeffs })
    }

    pub fn config(&self) -> BasisConfig {
        self.config
    }

    pub fn degree_index(&self) -> usize {
        self.config.n
    }

    pub fn nu(&self) -> f64 {
        self.config.nu
    }

    /// Number of basis functions (n + 1).
    pub fn len(&self) -> usize {
        self.config.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact coefficient of t^j in function k.
    pub fn coeff(&self, k: usize, j: usize) -> i128 {
        self.coeffs[k * self.len() + j]
    }

    /// Evaluate function k at x by Horner in t = x^nu.
    ///
    /// Conventions at x = 0: t^0 = 1 and t^j = 0 for j >= 1, so function 0
    /// takes the value n + 1 and all others vanish.
    pub fn eval_one(&self, k: usize, x: f64) -> f64 {
        let n = self.config.n;
        debug_assert!(k <= n);
        let t = self.t_of(x);
        let mut acc = 0.0;
        for j in (k..=n).rev() {
            acc = acc * t + self.coeff(k, j) as f64;
        }
        acc * t.powi(k as i32)
    }

    /// Phi(x): all basis functions at x, componentwise `eval_one`.
    pub fn eval_vector(&self, x: f64) -> BasisVector {
        (0..self.len()).map(|k| self.eval_one(k, x)).collect()
    }

    /// All basis functions at x via the downward recurrence.
    ///
    /// Requires x > 0 because the recurrence carries an x^(-nu) factor.
    /// Cross-validates `eval_vector` and is the preferred route at large n.
    pub fn eval_recurrence(&self, x: f64) -> Result<BasisVector> {
        if x <= 0.0 {
            return Err(Error::Domain(format!(
                "recurrence evaluation needs x > 0 (x^-nu factor), got {x}"
            )));
        }
        let t = self.t_of(x);
        Ok(family_values(self.config.n, t))
    }

    /// Recurrence evaluation with the x = 0 limit filled in. Stable at any n.
    pub fn eval_vector_stable(&self, x: f64) -> BasisVector {
        if x <= 0.0 {
            let mut v = vec![0.0; self.len()];
            v[0] = self.len() as f64;
            return v;
        }
        family_values(self.config.n, self.t_of(x))
    }

    #[inline]
    fn t_of(&self, x: f64) -> f64 {
        if self.config.nu == 1.0 {
            x
        } else {
            x.powf(self.config.nu)
        }
    }
}

/// Recurrence coefficients a, b, c, d for stepping from functions k and k+1
/// down to k-1.
pub(crate) fn recurrence_coeffs(n: usize, k: usize) -> (f64, f64, f64, f64) {
    let (nf, kf) = (n as f64, k as f64);
    let a = (kf + 1.0) * (nf - kf + 1.0) * (nf + kf + 1.0);
    let b = kf * (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
    let c = (2.0 * kf + 1.0) * ((nf + 1.0) * (nf + 1.0) + kf * kf + kf);
    let d = kf * (nf - kf) * (nf + kf + 2.0);
    (a, b, c, d)
}

/// Family values in t-space: starts from the two top functions and walks the
/// recurrence down to index 0.
fn family_values(n: usize, t: f64) -> Vec<f64> {
    let mut v = vec![0.0; n + 1];
    v[n] = t.powi(n as i32);
    if n == 0 {
        return v;
    }
    let nf = n as f64;
    v[n - 1] = 2.0 * nf * t.powi(n as i32 - 1) - (2.0 * nf + 1.0) * v[n];
    let ti = 1.0 / t;
    for k in (1..n).rev() {
        let (a, b, c, d) = recurrence_coeffs(n, k);
        v[k - 1] = ((b * ti - c) * v[k] - d * v[k + 1]) / a;
    }
    v
}

/// Family values and t-derivatives; used by the Newton polish on roots.
fn family_with_derivative(n: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; n + 1];
    let mut dv = vec![0.0; n + 1];
    v[n] = t.powi(n as i32);
    dv[n] = if n >= 1 { n as f64 * t.powi(n as i32 - 1) } else { 0.0 };
    if n == 0 {
        return (v, dv);
    }
    let nf = n as f64;
    v[n - 1] = 2.0 * nf * t.powi(n as i32 - 1) - (2.0 * nf + 1.0) * v[n];
    dv[n - 1] = 2.0 * nf * (nf - 1.0) * t.powi(n as i32 - 2) - (2.0 * nf + 1.0) * dv[n];
    let ti = 1.0 / t;
    for k in (1..n).rev() {
        let (a, b, c, d) = recurrence_coeffs(n, k);
        v[k - 1] = ((b * ti - c) * v[k] - d * v[k + 1]) / a;
        dv[k - 1] = ((b * ti - c) * dv[k] - b * ti * ti * v[k] - d * dv[k + 1]) / a;
    }
    (v, dv)
}

/// Roots of the classical (nu = 1) polynomial of index m and order 0,
/// sorted ascending in (0, 1).
///
/// Companion-matrix eigenvalues polished by Newton on the recurrence
/// evaluation; falls back to a sign-scan with bisection when the companion
/// route degrades (it does for m around 20, where the monomial coefficients
/// reach 1e12 and the eigenproblem turns ill-conditioned).
pub fn chelyshkov_roots(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let polished = companion_roots(m).map(|ests| polish_roots(m, ests));
    if let Some(roots) = polished.and_then(|r| validate_roots(m, r)) {
        return Ok(roots);
    }
    let roots = scan_roots(m)?;
    validate_roots(m, roots).ok_or_else(|| {
        Error::RootFinding(format!("could not isolate {m} roots of the index-{m} polynomial"))
    })
}

fn companion_roots(m: usize) -> Option<Vec<f64>> {
    let basis = Basis::new(BasisConfig { n: m, nu: 1.0 }).ok()?;
    let lead = basis.coeff(0, m) as f64;
    let mut comp = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..m {
        comp[(i, m - 1)] = -(basis.coeff(0, i) as f64) / lead;
    }
    let eig = comp.complex_eigenvalues();
    let mut ests: Vec<f64> = Vec::with_capacity(m);
    for ev in eig.iter() {
        if ev.im.abs() > 1e-6 {
            return None;
        }
        ests.push(ev.re);
    }
    ests.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(ests)
}

fn polish_roots(m: usize, ests: Vec<f64>) -> Vec<f64> {
    ests.into_iter()
        .map(|mut t| {
            for _ in 0..3 {
                if t <= 0.0 || t >= 1.0 {
                    break;
                }
                let (v, dv) = family_with_derivative(m, t);
                if dv[0] == 0.0 {
                    break;
                }
                t -= v[0] / dv[0];
            }
            t
        })
        .collect()
}

fn validate_roots(m: usize, mut roots: Vec<f64>) -> Option<Vec<f64>> {
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if roots.len() != m {
        return None;
    }
    for (i, &t) in roots.iter().enumerate() {
        if !(t > 0.0 && t < 1.0) || !t.is_finite() {
            return None;
        }
        if i > 0 && t - roots[i - 1] < 1e-12 {
            return None;
        }
        let (v, _) = family_with_derivative(m, t);
        if v[0].abs() > 1e-12 {
            return None;
        }
    }
    Some(roots)
}

fn scan_roots(m: usize) -> Result<Vec<f64>> {
    let nscan = (8 * m * m).max(64);
    let lo = 1e-9;
    let step = (1.0 - lo) / nscan as f64;
    let mut roots = Vec::with_capacity(m);
    let mut t_prev = lo;
    let mut f_prev = family_with_derivative(m, t_prev).0[0];
    for i in 1..=nscan {
        let t = lo + step * i as f64;
        let f = family_with_derivative(m, t).0[0];
        if f_prev == 0.0 {
            roots.push(t_prev);
        } else if f_prev * f < 0.0 {
            let (mut a, mut b, mut fa) = (t_prev, t, f_prev);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = family_with_derivative(m, mid).0[0];
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            let mut r = 0.5 * (a + b);
            for _ in 0..3 {
                let (v, dv) = family_with_derivative(m, r);
                if dv[0] == 0.0 {
                    break;
                }
                r -= v[0] / dv[0];
            }
            roots.push(r);
        }
        t_prev = t;
        f_prev = f;
    }
    if roots.len() != m {
        return Err(Error::RootFinding(format!(
            "sign scan found {} of {m} roots",
            roots.len()
        )));
    }
    Ok(roots)
}

/// Collocation nodes for a degree-n, exponent-nu discretization: the n+1
/// roots of the index-(n+1) classical polynomial mapped through t^(1/nu).
pub fn collocation_nodes(n: usize, nu: f64) -> Result<CollocationNodes> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::Domain(format!("nu must lie in (0, 1], got {nu}")));
    }
    let raw = chelyshkov_roots(n + 1)?;
    let mut points: Vec<f64> = if nu == 1.0 {
        raw
    } else {
        raw.into_iter().map(|t| t.powf(1.0 / nu)).collect()
    };
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(CollocationNodes { points })
}

/// Weighted inner product <u, v> = int_0^1 u v x^(nu-1) dx with the basis
/// weight.
pub fn inner_product<F, G>(basis: &Basis, u: F, v: G, quad_order: usize) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    weighted_integral(|x| u(x) * v(x), basis.nu(), quad_order)
}

/// Default quadrature order for projection integrals.
pub fn projection_quad_order(n: usize) -> usize {
    (2 * n + 16).max(64)
}

/// Best weighted-L2 approximation coefficients of u in the basis:
/// a_k = nu (2k+1) <u, C_k>.
pub fn project<F: Fn(f64) -> f64>(basis: &Basis, u: F, quad_order: usize) -> Vec<f64> {
    let n = basis.degree_index();
    let nu = basis.nu();
    let rule = crate::quadrature::gauss_legendre_01(quad_order);
    let inv = 1.0 / nu;
    let mut acc = vec![0.0; n + 1];
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = if nu == 1.0 { s } else { s.powf(inv) };
        let phi = basis.eval_vector_stable(x);
        let uw = u(x) * w * inv;
        for k in 0..=n {
            acc[k] += uw * phi[k];
        }
    }
    for (k, a) in acc.iter_mut().enumerate() {
        *a *= nu * (2.0 * k as f64 + 1.0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn basis(n: usize, nu: f64) -> Basis {
        Basis::new(BasisConfig::new(n, nu).unwrap()).unwrap()
    }

    #[test]
    fn coefficient_table_matches_degree_five_family() {
        let b = basis(5, 0.5);
        let rows: [&[i128]; 6] = [
            &[6, -105, 560, -1260, 1260, -462],
            &[35, -280, 756, -840, 330],
            &[56, -252, 360, -165],
            &[36, -90, 55],
            &[10, -11],
            &[1],
        ];
        for (k, row) in rows.iter().enumerate() {
            for (off, &want) in row.iter().enumerate() {
                assert_eq!(b.coeff(k, k + off), want, "row {k} offset {off}");
            }
        }
    }

    #[test]
    fn corner_coefficients() {
        for n in [0, 1, 4, 9, 25] {
            let b = basis(n, 1.0);
            assert_eq!(b.coeff(n, n), 1);
            assert_eq!(b.coeff(0, 0), n as i128 + 1);
        }
    }

    #[test]
    fn degree_structure() {
        // row k has n-k+1 terms; top coefficient magnitude binom(2n+1, n-k)
        let n = 7;
        let b = basis(n, 1.0);
        for k in 0..=n {
            let nonzero = (0..=n).filter(|&j| b.coeff(k, j) != 0).count();
            assert_eq!(nonzero, n - k + 1);
            let want = checked_binomial(2 * n + 1, n - k).unwrap();
            assert_eq!(b.coeff(k, n).abs(), want);
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            assert_eq!(b.coeff(k, n).signum(), sign);
        }
    }

    #[test]
    fn eval_examples() {
        let b5 = basis(5, 0.5);
        assert_abs_diff_eq!(b5.eval_one(0, 0.0), 6.0);
        assert_abs_diff_eq!(b5.eval_one(5, 0.25), 0.03125, epsilon = 1e-16);
        for k in 1..=5 {
            assert_eq!(b5.eval_one(k, 0.0), 0.0);
        }
        let b1 = basis(1, 0.5);
        let phi = b1.eval_vector(0.25);
        assert_abs_diff_eq!(phi[0], 2.0 - 3.0 * 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(phi[1], 0.5, epsilon = 1e-15);
        let phi1 = b1.eval_vector(1.0);
        assert_abs_diff_eq!(phi1[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(phi1[1], 1.0, epsilon = 1e-14);
        assert_eq!(basis(0, 0.7).eval_vector(0.3), vec![1.0]);
    }

    #[test]
    fn recurrence_coefficient_example() {
        let (a, _, _, _) = recurrence_coeffs(5, 1);
        assert_eq!(a, 70.0);
    }

    #[test]
    fn recurrence_matches_direct_evaluation() {
        // 1e-10 relative holds as long as the Horner side can deliver it;
        // its noise floor is eps * sum_j |c_j| t^j, which overtakes 1e-10
        // around n = 12, so larger n compare against that envelope instead
        for n in [1usize, 2, 5, 8, 10, 12, 16, 20] {
            for nu in [0.5, 1.0] {
                let b = basis(n, nu);
                for i in 0..=40 {
                    let x = 0.01 + 0.99 * i as f64 / 40.0;
                    let direct = b.eval_vector(x);
                    let rec = b.eval_recurrence(x).unwrap();
                    let t = x.powf(nu);
                    for k in 0..=n {
                        let horner_noise: f64 = (k..=n)
                            .map(|j| (b.coeff(k, j).abs() as f64) * t.powi(j as i32))
                            .sum::<f64>()
                            * 4.0
                            * f64::EPSILON;
                        let tol = (1e-10 * direct[k].abs().max(1.0)).max(horner_noise);
                        assert!(
                            (direct[k] - rec[k]).abs() <= tol,
                            "n={n} nu={nu} k={k} x={x}: {} vs {}",
                            direct[k],
                            rec[k]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn recurrence_rejects_zero() {
        assert!(basis(3, 0.5).eval_recurrence(0.0).is_err());
    }

    #[test]
    fn stable_evaluation_limit_at_zero() {
        let b = basis(6, 0.5);
        let v = b.eval_vector_stable(0.0);
        assert_eq!(v[0], 7.0);
        assert!(v[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn trivial_recurrence_for_n_one() {
        let b = basis(1, 0.5);
        let v = b.eval_recurrence(0.49).unwrap();
        assert_abs_diff_eq!(v[0], 2.0 - 3.0 * 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(v[1], 0.7, epsilon = 1e-14);
    }

    #[test]
    fn collocation_node_examples() {
        // n = 1, nu = 1/2: squares of the roots of 10t^2 - 12t + 3
        let nodes = collocation_nodes(1, 0.5).unwrap();
        assert_abs_diff_eq!(nodes.points[0], 0.12606123086601864, epsilon = 1e-13);
        assert_abs_diff_eq!(nodes.points[1], 0.7139387691339814, epsilon = 1e-13);
        // n = 0, nu = 1: root of 2 - 3t
        let nodes = collocation_nodes(0, 1.0).unwrap();
        assert_eq!(nodes.points.len(), 1);
        assert_abs_diff_eq!(nodes.points[0], 2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn raw_roots_have_small_residuals() {
        for m in [1, 2, 5, 9, 13, 17, 21] {
            let roots = chelyshkov_roots(m).unwrap();
            assert_eq!(roots.len(), m);
            for &t in &roots {
                assert!(t > 0.0 && t < 1.0);
                let (v, _) = family_with_derivative(m, t);
                assert!(v[0].abs() <= 1e-12, "m={m} t={t}: residual {}", v[0]);
            }
            for w in roots.windows(2) {
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn nodes_zero_the_next_basis_function() {
        for (n, nu) in [(3, 0.5), (7, 0.25), (12, 0.75), (19, 0.5)] {
            let nodes = collocation_nodes(n, nu).unwrap();
            let bnext = basis(n + 1, nu);
            for &x in &nodes.points {
                assert!(x > 0.0 && x < 1.0);
                let v = bnext.eval_vector_stable(x);
                assert!(v[0].abs() <= 1e-10, "n={n} nu={nu} x={x}: {}", v[0]);
            }
        }
    }

    #[test]
    fn orthogonality_table() {
        for nu in [0.25, 0.5, 0.75, 1.0] {
            for n in [3, 8, 12] {
                let b = basis(n, nu);
                let order = projection_quad_order(n);
                for p in 0..=n {
                    for q in p..=n {
                        let ip = inner_product(
                            &b,
                            |x| b.eval_vector_stable(x)[p],
                            |x| b.eval_vector_stable(x)[q],
                            order,
                        );
                        let want = if p == q { 1.0 / (nu * (2.0 * p as f64 + 1.0)) } else { 0.0 };
                        assert!(
                            (ip - want).abs() <= 1e-10,
                            "n={n} nu={nu} ({p},{q}): {ip} vs {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_integral_of_each_function() {
        // int C_k x^(nu-1) dx = 1/(nu (n+1)) for every k
        for (n, nu) in [(4, 0.5), (6, 0.25), (3, 1.0)] {
            let b = basis(n, nu);
            for k in 0..=n {
                let v = weighted_integral(|x| b.eval_vector_stable(x)[k], nu, 64);
                assert_relative_eq!(v, 1.0 / (nu * (n as f64 + 1.0)), max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn projection_recovers_basis_and_monomials() {
        let n = 5;
        let nu = 0.5;
        let b = basis(n, nu);
        let order = projection_quad_order(n);
        // u = C_2 -> unit coefficient vector
        let a = project(&b, |x| b.eval_vector_stable(x)[2], order);
        for (k, &ak) in a.iter().enumerate() {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(ak, want, epsilon = 1e-11);
        }
        // u = x^(j nu) for j <= n reconstructs exactly
        for j in [0usize, 2, 5] {
            let u = move |x: f64| x.powf(j as f64 * nu);
            let a = project(&b, u, order);
            for i in 0..=20 {
                let x = i as f64 / 20.0;
                let phi = b.eval_vector_stable(x);
                let rec: f64 = a.iter().zip(&phi).map(|(c, p)| c * p).sum();
                assert!(
                    (rec - u(x)).abs() <= 1e-12,
                    "j={j} x={x}: {rec} vs {}",
                    u(x)
                );
            }
        }
    }

    #[test]
    fn projection_error_of_next_monomial_obeys_taylor_bound() {
        // u = x^((n+1) nu): its order-(n+1)nu Caputo derivative is the
        // constant Gamma((n+1)nu + 1), so the bound applies with that N_nu
        for (n, nu) in [(3usize, 0.5), (5, 0.5), (4, 1.0)] {
            let b = basis(n, nu);
            let p = (n as f64 + 1.0) * nu;
            let u = move |x: f64| x.powf(p);
            let order = 128;
            let a = project(&b, u, order);
            let err2 = weighted_integral(
                |x| {
                    let phi = b.eval_vector_stable(x);
                    let rec: f64 = a.iter().zip(&phi).map(|(c, q)| c * q).sum();
                    (u(x) - rec).powi(2)
                },
                nu,
                order,
            );
            let bound = crate::analysis::best_approx_bound(nu, n, crate::special::gamma(p + 1.0));
            assert!(
                err2.max(0.0).sqrt() <= bound,
                "n={n} nu={nu}: err {} > bound {bound}",
                err2.sqrt()
            );
        }
    }

    #[test]
    fn overflow_is_detected_not_wrapped() {
        // i128 holds every table comfortably past n = 25; far beyond, the
        // build must fail loudly
        assert!(Basis::new(BasisConfig::new(25, 0.5).unwrap()).is_ok());
        let huge = Basis::new(BasisConfig::new(70, 0.5).unwrap());
        assert!(matches!(huge, Err(Error::CoefficientOverflow { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(BasisConfig::new(3, 0.0).is_err());
        assert!(BasisConfig::new(3, 1.5).is_err());
        assert!(BasisConfig::new(0, 1.0).is_ok());
    }

    proptest! {
        // exponent substitution: C_{n,k,nu}(x) = C_{n,k,1}(x^nu)
        #[test]
        fn exponent_substitution_identity(
            x in 1e-6f64..1.0,
            nu in 0.05f64..1.0,
            n in 0usize..9,
        ) {
            let frac = basis(n, nu);
            let unit = basis(n, 1.0);
            let t = x.powf(nu);
            for k in 0..=n {
                let a = frac.eval_one(k, x);
                let b = unit.eval_one(k, t);
                let scale = a.abs().max(b.abs()).max(1e-6);
                prop_assert!((a - b).abs() / scale <= 1e-12);
            }
        }
    }
}
