use super::NumericsError;

const INITIAL_INTERVALS: usize = 16;
const MAX_LEVELS: usize = 18;

/// Composite Simpson rule on `[a, b]`, halving the step until two successive
/// estimates differ by less than `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    let mut n = INITIAL_INTERVALS;
    let mut h = (b - a) / n as f64;
    let ends = f(a) + f(b);
    let mut even: f64 = (1..n / 2).map(|i| f(a + 2.0 * i as f64 * h)).sum();
    let mut odd: f64 = (0..n / 2).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
    let mut previous = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);

    for _ in 0..MAX_LEVELS {
        n *= 2;
        h *= 0.5;
        even += odd;
        odd = (0..n / 2).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
        let estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        if !estimate.is_finite() {
            return Err(NumericsError::NoConvergence {
                what: "Simpson quadrature",
                detail: format!("non-finite estimate on [{a}, {b}]"),
            });
        }
        if (estimate - previous).abs() < tol {
            return Ok(estimate);
        }
        previous = estimate;
    }
    Err(NumericsError::NoConvergence {
        what: "Simpson quadrature",
        detail: format!("no agreement to {tol:e} after {n} intervals on [{a}, {b}]"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_cubics() {
        let got = integrate(|x| x * x, 0.0, 1.0, 1e-14).unwrap();
        assert!((got - 1.0 / 3.0).abs() < 4.0 * f64::EPSILON);
        let got = integrate(|x| x * x * x - 2.0 * x, -1.0, 2.0, 1e-14).unwrap();
        assert!((got - 0.75).abs() < 1e-14);
    }

    #[test]
    fn smooth_transcendental() {
        let got = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((got - 2.0).abs() < 1e-12);
        let got = integrate(|x| (-x).exp(), 0.0, 40.0, 1e-13).unwrap();
        assert!((got - (1.0 - (-40.0_f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let err = integrate(|x| (1.0 / x).sin() / x, 1e-9, 1.0, 1e-14).unwrap_err();
        assert!(err.is_convergence_failure());
    }
}
