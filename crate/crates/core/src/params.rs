//! Parameter algebra of the periodic traveling waves: admissibility of
//! (omega, c), critical amplitudes, root formulas, modulus/scale/period as
//! functions of the squared peak value eta3, monotonicity derivatives, and
//! inversion of the period map.
//!
//! Internally every eta3-dependent quantity is evaluated through the offset
//! delta = alpha1 - eta3 with cancellation-free algebra. Near the long-period
//! limit the true offset drops far below one ulp of alpha1 (for example
//! ~1e-43 at L = 50 with (omega, c) = (1, 0)), so an f64 eta3 cannot carry
//! it; the offset can.

use crate::elliptic::{complete_e, complete_k, EllipticError, Modulus};
use crate::scalar::Real;
use thiserror::Error;

/// Relative tolerance of the massless classification |omega - c^2/4| <= tol * omega.
pub const MASSLESS_REL_TOL: f64 = 1e-12;

/// Relative half-width trimmed off the eta3 bracket ends before inversion.
pub const BRACKET_EPS_FACTOR: f64 = 1e-13;

/// Relative period residual targeted by the inversion (the contract is 1e-12).
pub const SOLVER_REL_TOL: f64 = 1e-13;

/// Smallest alpha1-offset the solver will bracket. Limits the reachable
/// half-length to roughly 300 in the exponential branch, far beyond the
/// desk-scale studies this crate targets.
pub const DELTA_MIN: f64 = 1e-290;

const SOLVER_MAX_ITER: usize = 260;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("inadmissible parameters (omega, c) = ({omega}, {c}): requires omega > c^2/4, or omega = c^2/4 with c > 0")]
    Inadmissible { omega: f64, c: f64 },
    #[error("parameters must be finite")]
    NonFinite,
    #[error("eta3 = {eta3} outside the open interval (alpha0, alpha1) = ({alpha0}, {alpha1})")]
    EtaOutOfRange { eta3: f64, alpha0: f64, alpha1: f64 },
    #[error("normalized amplitude eta = {eta} outside (beta0, beta1) = ({beta0}, {beta1}) for s = {s}")]
    NormalizedEtaOutOfRange { eta: f64, beta0: f64, beta1: f64, s: f64 },
    #[error("slope parameter s = {0} outside (-1, 1]")]
    SlopeOutOfRange(f64),
    #[error("no single-bump profile: L = {l} does not exceed L0 = {l0}")]
    NoSingleBump { l: f64, l0: f64 },
    #[error("half-length L = {l} exceeds the solver range (max ~ {max})")]
    PeriodOutOfRange { l: f64, max: f64 },
    #[error("elliptic evaluation failed: {0}")]
    Elliptic(#[from] EllipticError),
}

/// Admissible parameter pair (omega, c) with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext<F> {
    pub omega: F,
    pub c: F,
    /// Slope in the scaling c = 2 s sqrt(omega); exactly 1 in the massless case.
    pub s: F,
    pub sqrt_omega: F,
    /// True iff omega = c^2/4 and c > 0 within [`MASSLESS_REL_TOL`].
    pub massless: bool,
    /// Squared amplitude of the constant solution.
    pub alpha0: F,
    /// Squared peak amplitude of the soliton, alpha1 = 4 sqrt(omega) + 2c.
    pub alpha1: F,
    /// Negative companion root of the alpha0 quadratic (used in stable factorizations).
    pub alpha0_neg: F,
    /// alpha0 / (4 sqrt(omega)).
    pub beta0: F,
    /// alpha1 / (4 sqrt(omega)) = 1 + s.
    pub beta1: F,
    /// 4 sqrt(omega) - 2c; zero exactly in the massless case.
    pub p: F,
    /// Minimal half-period below which only the constant solution exists.
    pub l0: F,
    /// Minimal period, T0 = 2 L0.
    pub t0: F,
}

impl<F: Real> WaveContext<F> {
    /// Validates (omega, c) and populates the derived constants.
    pub fn new(omega: F, c: F) -> Result<Self, ParamError> {
        if !omega.is_finite() || !c.is_finite() {
            return Err(ParamError::NonFinite);
        }
        let inadmissible = || ParamError::Inadmissible {
            omega: omega.to_f64().unwrap_or(f64::NAN),
            c: c.to_f64().unwrap_or(f64::NAN),
        };
        if omega <= F::zero() {
            return Err(inadmissible());
        }
        let gap = omega - c * c / F::lit(4.0);
        let massless = gap.abs() <= F::lit(MASSLESS_REL_TOL) * omega;
        if massless && c <= F::zero() {
            return Err(inadmissible());
        }
        if !massless && gap < F::zero() {
            return Err(inadmissible());
        }

        let sqrt_omega = omega.sqrt();
        let s = if massless {
            F::one()
        } else {
            c / (F::two() * sqrt_omega)
        };
        let root = (F::lit(48.0) * omega + F::lit(4.0) * c * c).sqrt();
        // alpha0 = (4c + root)/3 is a benign sum for c >= 0; for c < 0 the
        // rationalized form avoids the subtraction.
        let alpha0 = if c >= F::zero() {
            (F::lit(4.0) * c + root) / F::lit(3.0)
        } else {
            F::lit(16.0) * gap / (root - F::lit(4.0) * c)
        };
        let alpha0_neg = (F::lit(4.0) * c - root) / F::lit(3.0);
        let alpha1 = F::lit(4.0) * sqrt_omega + F::two() * c;
        let four_sqrt_omega = F::lit(4.0) * sqrt_omega;
        let beta0 = alpha0 / four_sqrt_omega;
        let beta1 = alpha1 / four_sqrt_omega;
        let p = if massless {
            F::zero()
        } else {
            four_sqrt_omega - F::two() * c
        };
        let a0 = discriminant_direct(omega, c, alpha0);
        let t0 = F::lit(4.0) * F::PI() / (alpha0 * a0.sqrt()).sqrt();
        let l0 = F::half() * t0;
        Ok(Self {
            omega,
            c,
            s,
            sqrt_omega,
            massless,
            alpha0,
            alpha1,
            alpha0_neg,
            beta0,
            beta1,
            p,
            l0,
            t0,
        })
    }

    /// The discriminant A(x) = 64 omega - 3 x^2 + 8 c x.
    pub fn discriminant(&self, x: F) -> F {
        discriminant_direct(self.omega, self.c, x)
    }

    pub fn is_massless(&self) -> bool {
        self.massless
    }

    fn check_eta3(&self, eta3: F) -> Result<F, ParamError> {
        if !(eta3 > self.alpha0 && eta3 < self.alpha1) {
            return Err(ParamError::EtaOutOfRange {
                eta3: eta3.to_f64().unwrap_or(f64::NAN),
                alpha0: self.alpha0.to_f64().unwrap_or(f64::NAN),
                alpha1: self.alpha1.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.alpha1 - eta3)
    }

    fn check_offset(&self, delta: F) -> Result<(), ParamError> {
        let span = self.alpha1 - self.alpha0;
        if !(delta > F::zero() && delta < span) {
            return Err(ParamError::EtaOutOfRange {
                eta3: (self.alpha1 - delta).to_f64().unwrap_or(f64::NAN),
                alpha0: self.alpha0.to_f64().unwrap_or(f64::NAN),
                alpha1: self.alpha1.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

fn discriminant_direct<F: Real>(omega: F, c: F, x: F) -> F {
    F::lit(64.0) * omega - F::lit(3.0) * x * x + F::lit(8.0) * c * x
}

/// All eta3-dependent quantities, evaluated from the offset delta = alpha1 - eta3.
#[derive(Debug, Clone, Copy)]
struct RawShape<F> {
    eta3: F,
    eta1: F,
    eta2: F,
    a: F,
    modulus: Modulus<F>,
    g: F,
    beta_sq: F,
}

fn shape_from_offset<F: Real>(ctx: &WaveContext<F>, delta: F) -> Result<RawShape<F>, ParamError> {
    ctx.check_offset(delta)?;
    let eta3 = ctx.alpha1 - delta;
    // A(alpha1 - delta) = p^2 + delta (6 alpha1 - 8 c - 3 delta), exact in the
    // massless case where p = 0.
    let q = F::lit(6.0) * ctx.alpha1 - F::lit(8.0) * ctx.c - F::lit(3.0) * delta;
    let a = ctx.p * ctx.p + delta * q;
    let sqrt_a = a.sqrt();
    // eta3 - 4c = p - delta exactly, so -eta1 = (p - delta + sqrt(A))/2.
    let neg_eta1 = F::half() * (ctx.p - delta + sqrt_a);
    // eta2 (-eta1) = (A - (p - delta)^2)/4 = delta (8 sqrt(omega) - delta).
    let eta2 = delta * (F::lit(8.0) * ctx.sqrt_omega - delta) / neg_eta1;
    // eta3 - eta2 factored through the alpha0 quadratic; exact at both ends.
    let eta3_minus_eta2 = F::lit(6.0) * (eta3 - ctx.alpha0) * (eta3 - ctx.alpha0_neg)
        / (F::lit(3.0) * eta3 - F::lit(4.0) * ctx.c + sqrt_a);
    // eta2 - eta1 = sqrt(A); eta3 - eta1 is a sum of positives.
    let eta3_minus_eta1 = eta3 + neg_eta1;
    let k_prime_sq = eta2 * eta3_minus_eta1 / (eta3 * sqrt_a);
    let k_sq = if ctx.massless {
        // Cancellation-free rearrangement of the modulus formula for s = 1:
        // k^2 = 1/2 - (3/2) sqrt(2 - eta) / sqrt(3 eta + 2).
        let d = delta / (F::lit(4.0) * ctx.sqrt_omega);
        let eta = F::two() - d;
        F::half() - F::lit(1.5) * d.sqrt() / (F::lit(3.0) * eta + F::two()).sqrt()
    } else {
        neg_eta1 * eta3_minus_eta2 / (eta3 * sqrt_a)
    };
    let modulus = Modulus::from_squares(k_sq, k_prime_sq)?;
    let g = F::two() / (eta3 * sqrt_a).sqrt();
    let beta_sq = eta3 * modulus.m() / neg_eta1;
    Ok(RawShape {
        eta3,
        eta1: -neg_eta1,
        eta2,
        a,
        modulus,
        g,
        beta_sq,
    })
}

fn period_of_shape<F: Real>(shape: &RawShape<F>) -> Result<F, ParamError> {
    Ok(F::lit(4.0) * shape.g * complete_k(shape.modulus)?)
}

/// Roots (eta1, eta2) and discriminant A for a given eta3 in (alpha0, alpha1).
pub fn roots_from_eta3<F: Real>(
    ctx: &WaveContext<F>,
    eta3: F,
) -> Result<(F, F, F), ParamError> {
    let delta = ctx.check_eta3(eta3)?;
    let shape = shape_from_offset(ctx, delta)?;
    Ok((shape.eta1, shape.eta2, shape.a))
}

/// Modulus, argument scale g and beta^2 for a given eta3 in (alpha0, alpha1).
pub fn shape_from_eta3<F: Real>(
    ctx: &WaveContext<F>,
    eta3: F,
) -> Result<(Modulus<F>, F, F), ParamError> {
    let delta = ctx.check_eta3(eta3)?;
    let shape = shape_from_offset(ctx, delta)?;
    Ok((shape.modulus, shape.g, shape.beta_sq))
}

/// Fundamental period T(eta3) = 4 g K(k), strictly increasing on (alpha0, alpha1).
pub fn period_from_eta3<F: Real>(ctx: &WaveContext<F>, eta3: F) -> Result<F, ParamError> {
    let delta = ctx.check_eta3(eta3)?;
    period_from_offset(ctx, delta)
}

/// Fundamental period as a function of the alpha1-offset delta = alpha1 - eta3.
///
/// This form stays accurate arbitrarily close to the long-period limit where
/// eta3 itself is no longer representable apart from alpha1.
pub fn period_from_offset<F: Real>(ctx: &WaveContext<F>, delta: F) -> Result<F, ParamError> {
    let shape = shape_from_offset(ctx, delta)?;
    period_of_shape(&shape)
}

/// One exact periodic profile: the full parameter bundle for a torus of
/// half-length `l`.
#[derive(Debug, Clone, Copy)]
pub struct TorusProfile<F> {
    pub ctx: WaveContext<F>,
    /// Offset alpha1 - eta3 at full relative precision; the primary parameter.
    pub delta: F,
    /// Squared peak value; equals alpha1 - delta rounded to the scalar type.
    pub eta3: F,
    pub eta2: F,
    pub eta1: F,
    /// Discriminant A(eta3) > 0.
    pub a: F,
    pub modulus: Modulus<F>,
    /// Argument scale: the elliptic functions are evaluated at x / (2g).
    pub g: F,
    /// beta^2 = -eta3 k^2 / eta1 > 0.
    pub beta_sq: F,
    /// Fundamental period of the squared profile; equals 2 l up to the solver tolerance.
    pub t: F,
    /// Half-length of the torus.
    pub l: F,
    /// Integration constant, stored as the derived value eta1 eta2 eta3 / 32.
    pub c_psi: F,
}

impl<F: Real> TorusProfile<F> {
    /// Builds the profile for a given eta3 (the half-length is taken from the
    /// period map).
    pub fn from_eta3(ctx: &WaveContext<F>, eta3: F) -> Result<Self, ParamError> {
        let delta = ctx.check_eta3(eta3)?;
        Self::from_offset(ctx, delta)
    }

    /// Builds the profile from the offset delta = alpha1 - eta3.
    pub fn from_offset(ctx: &WaveContext<F>, delta: F) -> Result<Self, ParamError> {
        let shape = shape_from_offset(ctx, delta)?;
        let t = period_of_shape(&shape)?;
        Ok(Self::assemble(*ctx, delta, shape, t, F::half() * t))
    }

    fn assemble(ctx: WaveContext<F>, delta: F, shape: RawShape<F>, t: F, l: F) -> Self {
        TorusProfile {
            ctx,
            delta,
            eta3: shape.eta3,
            eta2: shape.eta2,
            eta1: shape.eta1,
            a: shape.a,
            modulus: shape.modulus,
            g: shape.g,
            beta_sq: shape.beta_sq,
            t,
            l,
            c_psi: shape.eta1 * shape.eta2 * shape.eta3 / F::lit(32.0),
        }
    }

    /// Residuals of the three Vieta identities, normalized by the magnitude
    /// of their largest contributing term.
    pub fn vieta_residuals(&self) -> [F; 3] {
        let four_c = F::lit(4.0) * self.ctx.c;
        let sum = self.eta1 + self.eta2 + self.eta3;
        let r1 = (sum - four_c).abs()
            / self
                .eta1
                .abs()
                .max(self.eta2.abs())
                .max(self.eta3.abs())
                .max(four_c.abs());
        let t12 = self.eta1 * self.eta2;
        let t13 = self.eta1 * self.eta3;
        let t23 = self.eta2 * self.eta3;
        let rhs2 = -F::lit(16.0) * (self.ctx.omega - self.ctx.c * self.ctx.c / F::lit(4.0));
        let r2 = (t12 + t13 + t23 - rhs2).abs()
            / t12.abs().max(t13.abs()).max(t23.abs()).max(rhs2.abs());
        let prod = self.eta1 * self.eta2 * self.eta3;
        let r3 = (prod - F::lit(32.0) * self.c_psi).abs() / prod.abs().max(F::epsilon());
        [r1, r2, r3]
    }
}

/// Inverts the period map: finds the unique profile with T(eta3) = 2 L.
///
/// Bisection on the logarithm of the alpha1-offset (guaranteed by the strict
/// monotonicity of the period map), refined by bracketed secant steps once
/// the interval is small.
pub fn solve_eta3<F: Real>(ctx: &WaveContext<F>, l: F) -> Result<TorusProfile<F>, ParamError> {
    let l_f64 = l.to_f64().unwrap_or(f64::NAN);
    if !(l > ctx.l0) {
        return Err(ParamError::NoSingleBump {
            l: l_f64,
            l0: ctx.l0.to_f64().unwrap_or(f64::NAN),
        });
    }
    let target = F::two() * l;
    let span = ctx.alpha1 - ctx.alpha0;
    let delta_max = span * (F::one() - F::lit(BRACKET_EPS_FACTOR));
    let delta_min = F::lit(DELTA_MIN);

    let t_at = |ln_delta: F| -> Result<F, ParamError> { period_from_offset(ctx, ln_delta.exp()) };

    let hi = delta_max.ln(); // T(hi) close to T0: residual negative
    let lo = delta_min.ln(); // T(lo) huge: residual positive
    let f_hi = t_at(hi)? - target;
    if f_hi >= F::zero() {
        // L is inside the bracket-trim margin of L0.
        return Err(ParamError::NoSingleBump {
            l: l_f64,
            l0: ctx.l0.to_f64().unwrap_or(f64::NAN),
        });
    }
    let f_lo = t_at(lo)? - target;
    if f_lo <= F::zero() {
        let max = (t_at(lo)? / F::two()).to_f64().unwrap_or(f64::NAN);
        return Err(ParamError::PeriodOutOfRange { l: l_f64, max });
    }

    let tol = F::lit(SOLVER_REL_TOL) * target;
    let mut a = lo;
    let mut fa = f_lo;
    let mut b = hi;
    let mut fb = f_hi;
    let mut best = a;
    let mut best_res = fa.abs();
    let track = |t: F, ft: F, best: &mut F, best_res: &mut F| {
        if ft.abs() < *best_res {
            *best = t;
            *best_res = ft.abs();
        }
    };
    track(a, fa, &mut best, &mut best_res);
    track(b, fb, &mut best, &mut best_res);

    let coarse = F::lit(1e-2);
    for _ in 0..SOLVER_MAX_ITER {
        if best_res <= tol {
            break;
        }
        let mid = if (b - a).abs() > coarse {
            F::half() * (a + b)
        } else {
            // Secant step, clamped into the bracket interior.
            let sec = b - fb * (b - a) / (fb - fa);
            let lo_b = a.min(b);
            let hi_b = a.max(b);
            let margin = F::lit(1e-3) * (hi_b - lo_b);
            if sec > lo_b + margin && sec < hi_b - margin {
                sec
            } else {
                F::half() * (a + b)
            }
        };
        let fm = t_at(mid)? - target;
        track(mid, fm, &mut best, &mut best_res);
        if fm > F::zero() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if (b - a).abs() < F::epsilon() * F::lit(8.0) {
            break;
        }
    }

    let delta = best.exp();
    let shape = shape_from_offset(ctx, delta)?;
    let t = period_of_shape(&shape)?;
    Ok(TorusProfile::assemble(*ctx, delta, shape, t, l))
}

/// f_s(eta) = -3 eta^2 + 4 s eta + 4, positive on (beta0, beta1).
pub fn f_of_eta<F: Real>(s: F, eta: F) -> F {
    -F::lit(3.0) * eta * eta + F::lit(4.0) * s * eta + F::lit(4.0)
}

/// g_s(eta) = -(eta - (s-1))(eta - (s+1)).
pub fn g_of_eta<F: Real>(s: F, eta: F) -> F {
    -(eta - (s - F::one())) * (eta - (s + F::one()))
}

/// a_s(eta) = -3 eta^2 + 3 s eta + 2, the factor multiplying K in the period slope.
pub fn a_of_eta<F: Real>(s: F, eta: F) -> F {
    -F::lit(3.0) * eta * eta + F::lit(3.0) * s * eta + F::two()
}

/// b_s(eta) = eta^2 f_s(eta).
pub fn b_of_eta<F: Real>(s: F, eta: F) -> F {
    eta * eta * f_of_eta(s, eta)
}

/// beta0(s) = (2s + sqrt(3 + s^2))/3.
pub fn beta0_of_s<F: Real>(s: F) -> F {
    (F::two() * s + (F::lit(3.0) + s * s).sqrt()) / F::lit(3.0)
}

/// beta1(s) = 1 + s.
pub fn beta1_of_s<F: Real>(s: F) -> F {
    F::one() + s
}

fn check_slope_range<F: Real>(s: F, eta: F) -> Result<(), ParamError> {
    if !(s > -F::one() && s <= F::one()) {
        return Err(ParamError::SlopeOutOfRange(
            s.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let beta0 = beta0_of_s(s);
    let beta1 = beta1_of_s(s);
    if !(eta > beta0 && eta < beta1) {
        return Err(ParamError::NormalizedEtaOutOfRange {
            eta: eta.to_f64().unwrap_or(f64::NAN),
            beta0: beta0.to_f64().unwrap_or(f64::NAN),
            beta1: beta1.to_f64().unwrap_or(f64::NAN),
            s: s.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Squared modulus as a function of the normalized amplitude eta = eta3/(4 sqrt(omega)).
///
/// For s = 1 the cancellation-free rearrangement is used; otherwise the
/// normalized-form expression.
pub fn modulus_sq_of_eta<F: Real>(s: F, eta: F) -> Result<F, ParamError> {
    check_slope_range(s, eta)?;
    if s == F::one() {
        return Ok(F::half()
            - F::lit(1.5) * (F::two() - eta).sqrt() / (F::lit(3.0) * eta + F::two()).sqrt());
    }
    let f = f_of_eta(s, eta);
    let sf = f.sqrt();
    Ok(
        (F::lit(3.0) * eta * eta + (sf - F::lit(6.0) * s) * eta
            + F::two() * (s * s - F::one()))
            / (F::two() * eta * sf),
    )
}

/// The bracket 6 s eta g_s(eta) + 4 (1 - s^2) appearing in the modulus slope.
pub fn modulus_slope_bracket<F: Real>(s: F, eta: F) -> F {
    F::lit(6.0) * s * eta * g_of_eta(s, eta) + F::lit(4.0) * (F::one() - s * s)
}

/// Closed-form lower bound of [`modulus_slope_bracket`] over eta for s in [-1, 0]:
/// (4/9)(-s^4 + (3 + s^2)^{3/2} s + 9). Vanishes at s = -1 and equals 4 at s = 0.
pub fn modulus_slope_bracket_floor<F: Real>(s: F) -> F {
    let three_plus = F::lit(3.0) + s * s;
    F::lit(4.0) / F::lit(9.0) * (-s.powi(4) + three_plus * three_plus.sqrt() * s + F::lit(9.0))
}

/// d(k^2)/d(eta) = (eta / (b sqrt(b))) (6 s eta g_s(eta) + 4(1 - s^2)); positive
/// on the admissible strip.
pub fn modulus_slope<F: Real>(s: F, eta: F) -> Result<F, ParamError> {
    check_slope_range(s, eta)?;
    let b = b_of_eta(s, eta);
    Ok(eta / (b * b.sqrt()) * modulus_slope_bracket(s, eta))
}

/// The bracket (dK/dk)(dk/deta) b_s - K eta a_s(eta) whose sign is the sign of
/// the period slope dT/deta.
pub fn period_slope_bracket<F: Real>(s: F, eta: F) -> Result<F, ParamError> {
    check_slope_range(s, eta)?;
    let k_sq = modulus_sq_of_eta(s, eta)?;
    let modulus = Modulus::from_k_squared(k_sq)?;
    let k = modulus.k();
    let kp_sq = modulus.mc();
    let big_k = complete_k(modulus)?;
    let big_e = complete_e(modulus);
    let dk_dk = (big_e - kp_sq * big_k) / (k * kp_sq);
    let dk_deta = modulus_slope(s, eta)? / (F::two() * k);
    Ok(dk_dk * dk_deta * b_of_eta(s, eta) - big_k * eta * a_of_eta(s, eta))
}

/// Sign of the period slope: +1, -1 or 0.
pub fn period_slope_sign<F: Real>(s: F, eta: F) -> Result<F, ParamError> {
    Ok(period_slope_bracket(s, eta)?.signum())
}

/// Limit of beta^2 in the long-period limit: finite for omega > c^2/4,
/// unbounded in the massless case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSqLimit<F> {
    Finite(F),
    Unbounded,
}

impl<F: Real> BetaSqLimit<F> {
    pub fn finite(&self) -> Option<F> {
        match self {
            BetaSqLimit::Finite(v) => Some(*v),
            BetaSqLimit::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, BetaSqLimit::Unbounded)
    }
}

/// Closed-form limits of the profile parameters as eta3 -> alpha1.
#[derive(Debug, Clone, Copy)]
pub struct LongPeriodLimits<F> {
    pub eta1: F,
    pub eta2: F,
    /// Limit of 1/(2g) = sqrt(4 omega - c^2)/2; zero in the massless case.
    pub inv_two_g: F,
    /// 1 for omega > c^2/4, 1/sqrt(2) in the massless case.
    pub k: F,
    pub beta_sq: BetaSqLimit<F>,
    /// mu1 = arctan sqrt((2 sqrt(omega) + c)/(2 sqrt(omega) - c)); pi/2 in the
    /// massless case (taken exactly, not as a limit of arcsine).
    pub mu1: F,
}

/// The closed-form limit record for the long-period limit of `ctx`.
pub fn long_period_limits<F: Real>(ctx: &WaveContext<F>) -> LongPeriodLimits<F> {
    let two_sqrt_omega = F::two() * ctx.sqrt_omega;
    if ctx.massless {
        LongPeriodLimits {
            eta1: F::zero(),
            eta2: F::zero(),
            inv_two_g: F::zero(),
            k: F::half().sqrt(),
            beta_sq: BetaSqLimit::Unbounded,
            mu1: F::FRAC_PI_2(),
        }
    } else {
        let beta_sq = (two_sqrt_omega + ctx.c) / (two_sqrt_omega - ctx.c);
        LongPeriodLimits {
            eta1: -ctx.p,
            eta2: F::zero(),
            inv_two_g: F::half()
                * (F::lit(4.0) * ctx.omega - ctx.c * ctx.c).sqrt(),
            k: F::one(),
            beta_sq: BetaSqLimit::Finite(beta_sq),
            mu1: beta_sq.sqrt().atan(),
        }
    }
}

/// Stable small quantities describing how a profile differs from its
/// long-period limit. Every field is a product/quotient of exactly
/// representable small factors, so the scales survive far below one ulp of
/// the O(1) parameters. Generic branch only.
#[derive(Debug, Clone, Copy)]
pub struct LimitOffsets<F> {
    /// alpha1 - eta3.
    pub delta: F,
    /// k'^2.
    pub k_prime_sq: F,
    /// (-eta1) - p.
    pub e1: F,
    /// beta^2 - beta_inf^2 (signed).
    pub d_beta_sq: F,
    /// 1/(2g) - sqrt(4 omega - c^2)/2 (signed).
    pub d_inv_two_g: F,
    /// mu1 - mu (signed).
    pub d_mu: F,
}

impl<F: Real> TorusProfile<F> {
    /// Offset bundle relative to the long-period limit; only meaningful for
    /// the generic branch (omega > c^2/4).
    pub fn limit_offsets(&self) -> Option<LimitOffsets<F>> {
        if self.ctx.massless {
            return None;
        }
        let ctx = &self.ctx;
        let delta = self.delta;
        let p = ctx.p;
        let eta3 = self.eta3;
        let alpha1 = ctx.alpha1;
        let sqrt_a = self.a.sqrt();
        let q = F::lit(6.0) * alpha1 - F::lit(8.0) * ctx.c - F::lit(3.0) * delta;
        // sqrt(A) - p = delta q / (sqrt(A) + p).
        let sqrt_a_minus_p = delta * q / (sqrt_a + p);
        let e1 = F::half() * (sqrt_a_minus_p - delta);
        let neg_eta1 = p + e1;
        let k_prime_sq = self.modulus.mc();
        // beta^2 - beta_inf^2 with beta^2 = eta3 (1 - k'^2)/(-eta1) and
        // beta_inf^2 = alpha1 / p:
        //   numerator = -p delta - p eta3 k'^2 - alpha1 e1.
        let d_beta_sq =
            (-p * delta - p * eta3 * k_prime_sq - alpha1 * e1) / (neg_eta1 * p);
        // (1/2g)^2 - (a/2)^2 = (eta3 sqrt(A) - alpha1 p)/16, with
        // eta3 sqrt(A) - alpha1 p = alpha1 (sqrt(A) - p) - delta sqrt(A).
        let half_a = F::half() * (F::lit(4.0) * ctx.omega - ctx.c * ctx.c).sqrt();
        let inv_two_g = (eta3 * sqrt_a).sqrt() / F::lit(4.0);
        let d_inv_two_g = (alpha1 * sqrt_a_minus_p - delta * sqrt_a)
            / (F::lit(16.0) * (inv_two_g + half_a));
        // mu1 - mu = atan((beta_inf - beta/k) / (1 + beta_inf beta/k)).
        let beta_inf_sq = alpha1 / p;
        let beta_inf = beta_inf_sq.sqrt();
        let beta = self.beta_sq.sqrt();
        let k = self.modulus.k();
        let one_minus_k = k_prime_sq / (F::one() + k);
        let d_beta = d_beta_sq / (beta + beta_inf);
        let num = (-beta_inf * one_minus_k - d_beta) / k;
        let r = beta / k;
        let d_mu = (num / (F::one() + beta_inf * r)).atan();
        Some(LimitOffsets {
            delta,
            k_prime_sq,
            e1,
            d_beta_sq,
            d_inv_two_g,
            d_mu,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ctx(omega: f64, c: f64) -> WaveContext<f64> {
        WaveContext::new(omega, c).unwrap()
    }

    #[test]
    fn context_reference_point() {
        let w = ctx(1.0, 0.0);
        assert_eq!(w.s, 0.0);
        assert!((w.alpha0 - 4.0 * 3.0f64.sqrt() / 3.0).abs() < 1e-15);
        assert_eq!(w.alpha1, 4.0);
        assert!((w.discriminant(w.alpha0) - 48.0).abs() < 1e-12);
        assert!((w.l0 - FRAC_PI_2).abs() < 1e-15);
        assert!((w.t0 - PI).abs() < 1e-15);
        assert!(!w.is_massless());
    }

    #[test]
    fn context_massless_point() {
        let w = ctx(1.0, 2.0);
        assert!(w.is_massless());
        assert_eq!(w.s, 1.0);
        assert_eq!(w.beta1, 2.0);
        assert_eq!(w.p, 0.0);
        assert_eq!(w.alpha1, 8.0);
    }

    #[test]
    fn context_rejects_inadmissible() {
        assert!(matches!(
            WaveContext::new(1.0, 3.0),
            Err(ParamError::Inadmissible { .. })
        ));
        assert!(matches!(
            WaveContext::new(1.0, -2.0),
            Err(ParamError::Inadmissible { .. })
        ));
        assert!(matches!(
            WaveContext::new(-1.0, 0.0),
            Err(ParamError::Inadmissible { .. })
        ));
        assert!(matches!(
            WaveContext::new(f64::NAN, 0.0),
            Err(ParamError::NonFinite)
        ));
    }

    #[test]
    fn roots_match_quadratic_formula_mid_range() {
        let w = ctx(1.0, 0.0);
        let eta3 = 3.0;
        let (eta1, eta2, a) = roots_from_eta3(&w, eta3).unwrap();
        let a_direct = w.discriminant(eta3);
        assert!((a - a_direct).abs() < 1e-12 * a_direct);
        let sd = a_direct.sqrt();
        assert!((eta1 - (-eta3 + 0.0 - sd) / 2.0).abs() < 1e-13);
        assert!((eta2 - (-eta3 + 0.0 + sd) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn roots_limits_at_both_ends() {
        let w = ctx(1.0, 0.0);
        let near_a1 = w.alpha1 - 1e-9;
        let (eta1, eta2, _) = roots_from_eta3(&w, near_a1).unwrap();
        assert!((eta1 + 4.0).abs() < 1e-8);
        assert!(eta2 > 0.0 && eta2 < 3e-9);
        let near_a0 = w.alpha0 + 1e-9;
        let (_, eta2, _) = roots_from_eta3(&w, near_a0).unwrap();
        assert!((eta2 - w.alpha0).abs() < 1e-8);
        assert!(roots_from_eta3(&w, 5.0).is_err());
        assert!(roots_from_eta3(&w, 1.0).is_err());
    }

    #[test]
    fn massless_shape_limit_is_half() {
        let w = ctx(1.0, 2.0);
        let (m, _, _) = shape_from_eta3(&w, w.alpha1 - 1e-9).unwrap();
        assert!((m.m() - 0.5).abs() < 1e-4);
    }

    #[test]
    fn generic_shape_limits() {
        let w = ctx(1.0, 0.0);
        let (m, _, beta_sq) = shape_from_eta3(&w, w.alpha1 - 1e-12).unwrap();
        assert!(m.k() > 1.0 - 1e-11);
        assert!((beta_sq - 1.0).abs() < 1e-11);
        let (m0, _, _) = shape_from_eta3(&w, w.alpha0 + 1e-10).unwrap();
        assert!(m0.m() < 1e-9);
    }

    #[test]
    fn period_endpoints() {
        let w = ctx(1.0, 0.0);
        let t_low = period_from_eta3(&w, w.alpha0 + 1e-10).unwrap();
        assert!((t_low - w.t0).abs() < 1e-8);
        let t_high = period_from_offset(&w, 1e-30).unwrap();
        assert!(t_high > 60.0);
    }

    #[test]
    fn solve_round_trip_and_bounds() {
        let w = ctx(1.0, 0.0);
        for l in [1.1 * w.l0, 2.0 * w.l0, 5.0, 10.0, 25.0, 50.0] {
            let p = solve_eta3(&w, l).unwrap();
            let t = period_from_offset(&w, p.delta).unwrap();
            assert!(
                (t - 2.0 * l).abs() <= 1e-12 * 2.0 * l,
                "L={l}: residual {:e}",
                (t - 2.0 * l).abs()
            );
            assert!(p.eta3 > w.alpha0 && p.eta3 <= w.alpha1);
        }
        assert!(matches!(
            solve_eta3(&w, 1.0),
            Err(ParamError::NoSingleBump { .. })
        ));
        let near = solve_eta3(&w, w.l0 + 1e-9).unwrap();
        assert!((near.eta3 - w.alpha0).abs() < 1e-3);
        let far = solve_eta3(&w, 50.0).unwrap();
        assert!(far.delta < 1e-6);
    }

    #[test]
    fn vieta_residuals_small() {
        for (omega, c) in [(1.0, 0.0), (1.0, 1.0), (1.0, -1.0), (4.0, 2.0), (1.0, 2.0)] {
            let w = ctx(omega, c);
            for frac in [0.1, 0.5, 0.9, 0.999] {
                let eta3 = w.alpha0 + frac * (w.alpha1 - w.alpha0);
                let p = TorusProfile::from_eta3(&w, eta3).unwrap();
                for r in p.vieta_residuals() {
                    assert!(r < 1e-10, "(omega={omega}, c={c}, frac={frac}): {r:e}");
                }
            }
        }
    }

    #[test]
    fn modulus_slope_formula_special_case() {
        // s = 0 reduces to 4 eta / (b sqrt b).
        let s = 0.0f64;
        let eta = 0.8f64;
        let b = b_of_eta(s, eta);
        let expect = 4.0 * eta / (b * b.sqrt());
        assert!((modulus_slope(s, eta).unwrap() - expect).abs() < 1e-14);
        assert!(modulus_slope(0.0, 0.1).is_err());
        assert!(modulus_slope(-1.0, 0.5).is_err());
    }

    #[test]
    fn slope_floor_endpoints() {
        assert!((modulus_slope_bracket_floor(0.0f64) - 4.0).abs() < 1e-14);
        assert!(modulus_slope_bracket_floor(-1.0f64).abs() < 1e-14);
        let mut prev = modulus_slope_bracket_floor(-1.0f64);
        for i in 1..=40 {
            let s = -1.0 + i as f64 / 40.0;
            let h = modulus_slope_bracket_floor(s);
            assert!(h > prev, "h not increasing at s={s}");
            prev = h;
        }
    }

    #[test]
    fn period_slope_positive_case_a() {
        // Case (a): s > -1/3 and gamma <= eta < beta1 makes a_s <= 0, so the
        // bracket is positive without cancellation.
        let s = 0.5;
        let gamma = (3.0 * s + (9.0 * s * s + 24.0f64).sqrt()) / 6.0;
        let beta1 = beta1_of_s(s);
        let eta = 0.5 * (gamma + beta1);
        assert!(a_of_eta(s, eta) <= 0.0);
        assert!(period_slope_sign(s, eta).unwrap() > 0.0);
    }

    #[test]
    fn long_period_limit_records() {
        let g = long_period_limits(&ctx(1.0, 0.0));
        assert_eq!(g.eta1, -4.0);
        assert_eq!(g.k, 1.0);
        assert_eq!(g.beta_sq.finite(), Some(1.0));
        assert!((g.mu1 - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((g.inv_two_g - 1.0).abs() < 1e-15);
        let m = long_period_limits(&ctx(1.0, 2.0));
        assert!(m.beta_sq.is_unbounded());
        assert_eq!(m.mu1, FRAC_PI_2);
        assert!((m.k - 0.5f64.sqrt()).abs() < 1e-16);
    }
}
