//! Shared independent oracles for the integration tests: plain quadrature
//! routines that know nothing about the library's evaluation paths.

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(f, a, fa, m, fm, flm);
        let right = simpson(f, m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(f, a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 52)
}

/// Incomplete elliptic integral of the first kind by direct quadrature of
/// its defining integrand.
pub fn incomplete_f_oracle(phi: f64, k: f64, tol: f64) -> f64 {
    adaptive_simpson(
        &|theta: f64| {
            let s = theta.sin();
            1.0 / (1.0 - k * k * s * s).sqrt()
        },
        0.0,
        phi,
        tol,
    )
}

/// Incomplete elliptic integral of the second kind by direct quadrature.
pub fn incomplete_e_oracle(phi: f64, k: f64, tol: f64) -> f64 {
    adaptive_simpson(
        &|theta: f64| {
            let s = theta.sin();
            (1.0 - k * k * s * s).sqrt()
        },
        0.0,
        phi,
        tol,
    )
}

/// Fundamental period of the squared profile by quadrature of the first
/// integral, desingularized with t = eta2 + (eta3 - eta2) sin^2(theta):
/// T = 8 int_0^{pi/2} dtheta / sqrt(t (t - eta1)).
pub fn period_oracle(eta1: f64, eta2: f64, eta3: f64, tol: f64) -> f64 {
    8.0 * adaptive_simpson(
        &|theta: f64| {
            let s = theta.sin();
            let t = eta2 + (eta3 - eta2) * s * s;
            1.0 / (t * (t - eta1)).sqrt()
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        tol,
    )
}

/// Mass of the massless soliton tail beyond |x| = l by quadrature, using
/// the substitution y = 1/x that removes the infinite range:
/// 2 int_l^inf 4c/((cx)^2 + 1) dx = 2 int_0^{1/l} 4c/(c^2 + y^2) dy.
pub fn massless_tail_oracle(c: f64, l: f64, tol: f64) -> f64 {
    2.0 * adaptive_simpson(
        &|y: f64| 4.0 * c / (c * c + y * y),
        0.0,
        1.0 / l,
        tol,
    )
}
