//! Degree-2 exact quadrature and quadratic test functions.

use serde::Serialize;

/// Barycentric points and weights (summing to 1) of a rule exact for
/// quadratics on a triangle: the three edge midpoints.
pub const TRIANGLE_RULE: [([f64; 4], f64); 3] = [
    ([0.5, 0.5, 0.0, 0.0], 1.0 / 3.0),
    ([0.0, 0.5, 0.5, 0.0], 1.0 / 3.0),
    ([0.5, 0.0, 0.5, 0.0], 1.0 / 3.0),
];

const TA: f64 = 0.585_410_196_624_968_5;
const TB: f64 = 0.138_196_601_125_010_5;

/// Four-point rule exact for quadratics on a tetrahedron.
pub const TET_RULE: [([f64; 4], f64); 4] = [
    ([TA, TB, TB, TB], 0.25),
    ([TB, TA, TB, TB], 0.25),
    ([TB, TB, TA, TB], 0.25),
    ([TB, TB, TB, TA], 0.25),
];

pub fn rule(dim: usize) -> &'static [([f64; 4], f64)] {
    if dim == 2 {
        &TRIANGLE_RULE
    } else {
        &TET_RULE
    }
}

/// Quadratic polynomial `c + g . x + x^T H x / 2` with symmetric `H`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestFunction {
    pub constant: f64,
    pub linear: [f64; 3],
    pub hessian: [[f64; 3]; 3],
}

impl TestFunction {
    pub fn linear(constant: f64, linear: [f64; 3]) -> Self {
        Self { constant, linear, hessian: [[0.0; 3]; 3] }
    }

    /// `u = x^2`.
    pub fn x_squared() -> Self {
        let mut h = [[0.0; 3]; 3];
        h[0][0] = 2.0;
        Self { constant: 0.0, linear: [0.0; 3], hessian: h }
    }

    /// `u = x^2 + y^2`.
    pub fn x2_plus_y2() -> Self {
        let mut h = [[0.0; 3]; 3];
        h[0][0] = 2.0;
        h[1][1] = 2.0;
        Self { constant: 0.0, linear: [0.0; 3], hessian: h }
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let mut v = self.constant;
        for i in 0..3 {
            v += self.linear[i] * x[i];
            for j in 0..3 {
                v += 0.5 * self.hessian[i][j] * x[i] * x[j];
            }
        }
        v
    }

    pub fn gradient(&self, x: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.linear[i] + (0..3).map(|j| self.hessian[i][j] * x[j]).sum::<f64>())
    }

    /// Sum of squared second derivatives over the first `dim` coordinates.
    pub fn hessian_norm_squared(&self, dim: usize) -> f64 {
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| self.hessian[i][j].powi(2)).sum()
    }

    /// `|u|_{H^2}` over a domain of the given area or volume.
    pub fn h2_seminorm(&self, dim: usize, measure: f64) -> f64 {
        (self.hessian_norm_squared(dim) * measure).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_integrate_quadratics_exactly() {
        // Integral of x^2 over the reference triangle is 1/12; of x*y, 1/24.
        let tri = [[0., 0.], [1., 0.], [0., 1.]];
        let integrate = |f: &dyn Fn(f64, f64) -> f64| {
            TRIANGLE_RULE
                .iter()
                .map(|(l, w)| {
                    let x = (0..3).map(|k| l[k] * tri[k][0]).sum::<f64>();
                    let y = (0..3).map(|k| l[k] * tri[k][1]).sum::<f64>();
                    w * f(x, y)
                })
                .sum::<f64>()
                * 0.5
        };
        assert!((integrate(&|x, _| x * x) - 1.0 / 12.0).abs() < 1e-15);
        assert!((integrate(&|x, y| x * y) - 1.0 / 24.0).abs() < 1e-15);
        // Reference tetrahedron: integral of x^2 is 1/60, of x*y is 1/120.
        let tet = [[0., 0., 0.], [1., 0., 0.], [0., 1., 0.], [0., 0., 1.]];
        let integrate3 = |f: &dyn Fn([f64; 3]) -> f64| {
            TET_RULE
                .iter()
                .map(|(l, w)| {
                    let p = std::array::from_fn(|d| (0..4).map(|k| l[k] * tet[k][d]).sum::<f64>());
                    w * f(p)
                })
                .sum::<f64>()
                / 6.0
        };
        assert!((integrate3(&|p| p[0] * p[0]) - 1.0 / 60.0).abs() < 1e-15);
        assert!((integrate3(&|p| p[0] * p[1]) - 1.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn test_function_derivatives() {
        let u = TestFunction::x2_plus_y2();
        assert_eq!(u.eval([1., 2., 3.]), 5.0);
        assert_eq!(u.gradient([1., 2., 3.]), [2., 4., 0.]);
        assert_eq!(u.h2_seminorm(3, 1.0), 8f64.sqrt());
        assert_eq!(TestFunction::x_squared().h2_seminorm(2, 1.0), 2.0);
    }
}
