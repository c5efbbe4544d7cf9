//! Gauss-Legendre quadrature on [0, 1] and weighted integrals against
//! the basis weight x^(nu-1).

/// Nodes and weights of a quadrature rule on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Sum of w_l * f(z_l).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&z, &w)| w * f(z)).sum()
    }
}

/// n-point Gauss-Legendre rule on [0, 1], exact for polynomials of degree
/// <= 2n - 1.
///
/// Nodes come from Newton iteration on P_n with Chebyshev-angle starting
/// guesses; weights from the standard derivative formula.
pub fn gauss_legendre_01(n: usize) -> QuadratureRule {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for k in 0..m {
        // k-th root of P_n in descending order on (-1, 1)
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_with_derivative(n, x);
                x -= p2 / d2;
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]; keep symmetric pairs exactly symmetric
        nodes[n - 1 - k] = 0.5 * (1.0 + x);
        nodes[k] = 0.5 * (1.0 - x);
        weights[k] = 0.5 * w;
        weights[n - 1 - k] = 0.5 * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 1.0 / (d * d);
    }
    QuadratureRule { nodes, weights }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral of f against the weight x^(nu-1) over [0, 1]:
/// (1/nu) * int_0^1 f(s^(1/nu)) ds by the substitution x = s^(1/nu).
pub fn weighted_integral<F: Fn(f64) -> f64>(f: F, nu: f64, n: usize) -> f64 {
    let rule = gauss_legendre_01(n);
    let inv = 1.0 / nu;
    rule.integrate(|s| {
        let x = if nu == 1.0 { s } else { s.powf(inv) };
        inv * f(x)
    })
}

/// Gauss rule adapted to integrands in the span of {z^(j*nu)}: the
/// Gauss-Legendre rule pushed through z = s^(1/nu).
///
/// Exact for int_0^1 z^(j*nu) dz whenever j + 1/nu <= 2n - 1 + 1/nu - 1,
/// i.e. for fractional polynomials the plain rule cannot resolve.
pub fn fractional_gauss_01(n: usize, nu: f64) -> QuadratureRule {
    let rule = gauss_legendre_01(n);
    if nu == 1.0 {
        return rule;
    }
    let inv = 1.0 / nu;
    let nodes: Vec<f64> = rule.nodes.iter().map(|&s| s.powf(inv)).collect();
    let weights: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&s, &w)| w * inv * s.powf(inv - 1.0))
        .collect();
    QuadratureRule { nodes, weights }
}
