//! Gauss-Legendre quadrature with a simple adaptive panel splitter.

/// Nodes and weights of the n-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the Legendre polynomial; good to ~1e-15 for the
/// orders used here (n <= 64).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-order integral of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre(order)
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Adaptive integral: bisects panels until the 16- and 32-point rules agree
/// to `rel_tol` (with a small absolute floor), up to `max_depth` splits.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, depth: u32) -> f64 {
        let coarse = integrate(f, a, b, 16);
        let fine = integrate(f, a, b, 32);
        let err = (fine - coarse).abs();
        if err <= rel_tol * fine.abs().max(1e-300) + 1e-16 || depth >= 24 {
            return fine;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, rel_tol, depth + 1) + recurse(f, mid, b, rel_tol, depth + 1)
    }
    recurse(f, a, b, rel_tol, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        // n-point rule is exact for degree 2n-1.
        let f = |x: f64| 3.0 * x.powi(5) - x.powi(2) + 0.25;
        let exact = -2.0 / 3.0 + 0.5;
        assert!((integrate(&f, -1.0, 1.0, 3) - exact).abs() < 1e-13);
    }

    #[test]
    fn adaptive_oscillatory() {
        let f = |x: f64| (40.0 * x).cos();
        let exact = 2.0 * (40.0f64).sin() / 40.0;
        assert!((integrate_adaptive(&f, -1.0, 1.0, 1e-12) - exact).abs() < 1e-11);
    }
}
