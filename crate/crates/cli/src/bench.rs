//! Built-in benchmark problems.
//!
//! Each entry carries a native implementation (used by the solver), the same
//! functions as expression strings (kept in sync by a fidelity test), the
//! exact solution, defaults that reproduce the reference tables, and the
//! error levels those tables report.

use fide_core::Problem;
use std::sync::Arc;

pub struct Benchmark {
    pub id: usize,
    pub title: &'static str,
    pub alpha: f64,
    pub y0: f64,
    pub default_n: usize,
    pub default_nu: f64,
    /// Multiplier on the (N+1)-point Fredholm quadrature; problem 4 composes
    /// a quartic nonlinearity with the expansion, which doubles the needed
    /// polynomial degree.
    pub default_oversample: usize,
    pub g_expr: &'static str,
    pub k_expr: &'static str,
    pub f_expr: &'static str,
    pub f_dy_expr: &'static str,
    pub exact_expr: &'static str,
}

/// Coefficients of the closed-form source term of problem 5:
/// g(x) = sqrt(pi)/2 - sqrt(pi)/8 x + sqrt(pi)/128 x^2 - A sin x - B cos x,
/// derived from the exact solution and the kernel integral
/// int_0^1 sin(x+t) y(t)^2 dt = A sin x + B cos x.
pub fn problem5_kernel_constants() -> (f64, f64) {
    let (s1, c1) = (1.0f64.sin(), 1.0f64.cos());
    let a = 15581.0 / 14400.0 * s1 + 749.0 / 2880.0 * c1 - 89.0 / 120.0;
    let b = 749.0 / 2880.0 * s1 - 15581.0 / 14400.0 * c1 + 0.6;
    (a, b)
}

pub const BENCHMARKS: [Benchmark; 5] = [
    Benchmark {
        id: 1,
        title: "half-order, constant kernel, quadratic nonlinearity; y = sqrt(x)",
        alpha: 0.5,
        y0: 0.0,
        default_n: 1,
        default_nu: 0.5,
        default_oversample: 1,
        g_expr: "sqrt(pi)/2 - 1/4",
        k_expr: "1/2",
        f_expr: "y^2",
        f_dy_expr: "2*y",
        exact_expr: "sqrt(x)",
    },
    Benchmark {
        id: 2,
        title: "half-order, unit kernel, linear nonlinearity; y = x^(3/2) + x",
        alpha: 0.5,
        y0: 0.0,
        default_n: 4,
        default_nu: 0.5,
        default_oversample: 1,
        g_expr: "2*sqrt(x)/sqrt(pi) + 3*x*sqrt(pi)/4 - 9/10",
        k_expr: "1",
        f_expr: "y",
        f_dy_expr: "1",
        exact_expr: "x^(3/2) + x",
    },
    Benchmark {
        id: 3,
        title: "first-order limit, separable kernel, quadratic nonlinearity; y = x at alpha = 1",
        alpha: 1.0,
        y0: 0.0,
        default_n: 2,
        default_nu: 1.0,
        default_oversample: 1,
        g_expr: "1 - x/4",
        k_expr: "x*t",
        f_expr: "y^2",
        f_dy_expr: "2*y",
        exact_expr: "x",
    },
    Benchmark {
        id: 4,
        title: "half-order, separable kernel, quartic nonlinearity; y = x^2 - x",
        alpha: 0.5,
        y0: 0.0,
        default_n: 4,
        default_nu: 0.5,
        default_oversample: 2,
        g_expr: "(8/3*x^(3/2) - 2*sqrt(x))/sqrt(pi) - x/1260",
        k_expr: "x*t",
        f_expr: "y^4",
        f_dy_expr: "4*y^3",
        exact_expr: "x^2 - x",
    },
    Benchmark {
        id: 5,
        title: "half-order, trigonometric kernel, quadratic nonlinearity; non-smooth y",
        alpha: 0.5,
        y0: 0.0,
        default_n: 10,
        default_nu: 0.5,
        default_oversample: 1,
        g_expr: "sqrt(pi)/2 - sqrt(pi)/8*x + sqrt(pi)/128*x^2 \
                 - 0.309332746511668*sin(x) - 0.23422629238708942*cos(x)",
        k_expr: "sin(x+t)",
        f_expr: "y^2",
        f_dy_expr: "2*y",
        exact_expr: "sqrt(x) - x^(3/2)/6 + x^(5/2)/120",
    },
];

pub fn benchmark(id: usize) -> Option<&'static Benchmark> {
    BENCHMARKS.get(id.checked_sub(1)?)
}

impl Benchmark {
    /// Native problem definition. `alpha_override` reproduces the order
    /// study of problem 3 (same g for every alpha).
    pub fn problem(&self, alpha_override: Option<f64>) -> Problem {
        let alpha = alpha_override.unwrap_or(self.alpha);
        let sq_pi = std::f64::consts::PI.sqrt();
        let built = match self.id {
            1 => Problem::new(alpha, 0.0, move |_| sq_pi / 2.0 - 0.25, |_, _| 0.5, |_, y| y * y)
                .unwrap()
                .with_derivative(|_, y| 2.0 * y)
                .with_bounds(1.0, 1.0),
            2 => Problem::new(
                alpha,
                0.0,
                move |x: f64| 2.0 * x.sqrt() / sq_pi + 3.0 * x * sq_pi / 4.0 - 0.9,
                |_, _| 1.0,
                |_, y| y,
            )
            .unwrap()
            .with_derivative(|_, _| 1.0)
            .with_bounds(1.0, 1.0),
            3 => Problem::new(alpha, 0.0, |x| 1.0 - x / 4.0, |x, t| x * t, |_, y| y * y)
                .unwrap()
                .with_derivative(|_, y| 2.0 * y),
            4 => Problem::new(
                alpha,
                0.0,
                move |x: f64| (8.0 / 3.0 * x.powf(1.5) - 2.0 * x.sqrt()) / sq_pi - x / 1260.0,
                |x, t| x * t,
                |_, y| y * y * y * y,
            )
            .unwrap()
            .with_derivative(|_, y| 4.0 * y * y * y),
            5 => {
                let (a, b) = problem5_kernel_constants();
                Problem::new(
                    alpha,
                    0.0,
                    move |x: f64| {
                        sq_pi / 2.0 - sq_pi / 8.0 * x + sq_pi / 128.0 * x * x
                            - a * x.sin()
                            - b * x.cos()
                    },
                    |x, t| (x + t).sin(),
                    |_, y| y * y,
                )
                .unwrap()
                .with_derivative(|_, y| 2.0 * y)
            }
            _ => unreachable!("benchmark ids are 1..=5"),
        };
        built
    }

    /// Exact solution.
    pub fn exact(&self) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
        match self.id {
            1 => Arc::new(|x: f64| x.sqrt()),
            2 => Arc::new(|x: f64| x.powf(1.5) + x),
            3 => Arc::new(|x: f64| x),
            4 => Arc::new(|x: f64| x * x - x),
            5 => Arc::new(|x: f64| x.sqrt() - x.powf(1.5) / 6.0 + x.powf(2.5) / 120.0),
            _ => unreachable!(),
        }
    }
}

/// Reference error levels of the published tables the defaults reproduce.
pub mod reference {
    /// Problem 2 at nu = 1, N = 4: absolute errors at x = 0.1..0.9.
    /// The x = 0.1 entry of the source table is a misprint (its mantissa is
    /// duplicated from the adjacent column); exact-arithmetic replication of
    /// the method gives 4.90088e-4 there and matches the other four entries
    /// to six significant digits.
    pub const P2_NU1_ABS_ERRORS: [(f64, f64); 5] = [
        (0.1, 1.31000e-4),
        (0.3, 5.55703e-4),
        (0.5, 8.97348e-4),
        (0.7, 7.88172e-5),
        (0.9, 5.16739e-4),
    ];

    /// Problem 5, nu = 1/2: L2 errors at N = 2, 4, 6, 8, 10.
    pub const P5_NU_HALF_L2: [(usize, f64); 5] = [
        (2, 9.1157e-3),
        (4, 1.4795e-5),
        (6, 6.4717e-7),
        (8, 1.6866e-10),
        (10, 1.1612e-10),
    ];

    /// Problem 5, nu = 1, N = 20: L2 error.
    pub const P5_NU_ONE_N20_L2: f64 = 2.0093e-4;

    /// Problem 5, nu = 1/2, N = 10: absolute errors at selected points.
    pub const P5_NU_HALF_POINTS: [(f64, f64); 5] = [
        (0.1, 3.1881e-11),
        (0.3, 5.7105e-11),
        (0.5, 4.0053e-11),
        (0.7, 7.2990e-11),
        (0.9, 7.7616e-11),
    ];

    /// Error-vector bounds for four basis functions at alpha = nu = 1/2.
    pub const GRAM_BOUNDS_FOUR_FUNCTIONS: [f64; 4] = [1.5666e-1, 9.3999e-2, 3.1333e-2, 4.4761e-3];

    /// Reference Newton iterate for problem 1 at N = 1 (truncated to f64).
    pub const P1_W: [f64; 2] = [0.07052369794346953, 0.21157109383040862];
}
