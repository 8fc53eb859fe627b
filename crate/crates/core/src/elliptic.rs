//! Jacobi elliptic functions and complete/incomplete elliptic integrals of the
//! first and second kind, accurate to near machine precision over the full
//! modulus range including k close to 1.
//!
//! Algorithm choices: complete integrals by arithmetic-geometric mean
//! iteration, incomplete integrals by Carlson symmetric forms, Jacobi
//! functions by the descending Landen transformation seeded with the AGM
//! sequence. Near-degenerate moduli are routed through asymptotic branches
//! controlled by the module constants below.

use crate::scalar::Real;
use thiserror::Error;

/// Below this complementary modulus, `K` and `E` switch to their k' -> 0
/// asymptotic branches and `jacobi` switches to hyperbolic functions.
pub const KPRIME_DEGENERATE_THRESHOLD: f64 = 1e-8;

/// Below this modulus, `jacobi` switches to the trigonometric branch.
pub const MODULUS_DEGENERATE_THRESHOLD: f64 = 1e-8;

/// Duplication-stop tolerance of the Carlson RF iteration. The truncation
/// error of the fifth-order tail behaves like ERRTOL^6.
const CARLSON_RF_ERRTOL: f64 = 2.5e-3;

/// Duplication-stop tolerance of the Carlson RD iteration.
const CARLSON_RD_ERRTOL: f64 = 1.5e-3;

/// AGM convergence tolerance of the descending Landen chain; the attained
/// accuracy is of the order of the square of this value.
const LANDEN_ACCURACY: f64 = 1e-10;

const LANDEN_MAX_STAGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("modulus out of range: k = {0} is not in [0, 1]")]
    ModulusOutOfRange(f64),
    #[error("squared modulus out of range: {0} is not in [0, 1]")]
    ModulusSquaredOutOfRange(f64),
    #[error("complete integral of the first kind diverges at k = 1")]
    FirstKindDiverges,
    #[error("amplitude out of range: phi = {0} is not in [0, pi/2]")]
    AmplitudeOutOfRange(f64),
    #[error("argument must be finite")]
    NonFiniteArgument,
}

/// Elliptic modulus together with its complementary modulus.
///
/// Both components are kept explicitly so that `k` near 1 retains full
/// information through `k_prime`: when k' falls below one ulp of 1, `k`
/// rounds to exactly 1.0 while `k_prime` still carries the true scale.
/// Generic use keeps both strictly inside (0, 1); the boundary values are
/// accepted and each operation documents how it treats them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus<F> {
    k: F,
    k_prime: F,
}

impl<F: Real> Modulus<F> {
    /// Builds the modulus from k in [0, 1], with k' = sqrt((1-k)(1+k)).
    pub fn new(k: F) -> Result<Self, EllipticError> {
        if !(k >= F::zero() && k <= F::one()) {
            return Err(EllipticError::ModulusOutOfRange(
                k.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let k_prime = ((F::one() - k) * (F::one() + k)).sqrt();
        Ok(Self { k, k_prime })
    }

    /// Builds the modulus from k^2 in [0, 1].
    pub fn from_k_squared(k_sq: F) -> Result<Self, EllipticError> {
        if !(k_sq >= F::zero() && k_sq <= F::one()) {
            return Err(EllipticError::ModulusSquaredOutOfRange(
                k_sq.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self {
            k: k_sq.sqrt(),
            k_prime: (F::one() - k_sq).sqrt(),
        })
    }

    /// Builds the modulus from independently computed k^2 and k'^2.
    ///
    /// The two squares are renormalized by their sum, so callers that obtain
    /// them from separate cancellation-free formulas keep k^2 + k'^2 = 1 to
    /// within a few ulp while preserving the relative accuracy of a tiny
    /// component.
    pub fn from_squares(k_sq: F, k_prime_sq: F) -> Result<Self, EllipticError> {
        if !(k_sq >= F::zero()) || !(k_prime_sq >= F::zero()) {
            return Err(EllipticError::ModulusSquaredOutOfRange(
                k_sq.to_f64().unwrap_or(f64::NAN),
            ));
        }
        let sum = k_sq + k_prime_sq;
        if sum <= F::zero() || !sum.is_finite() {
            return Err(EllipticError::ModulusSquaredOutOfRange(
                sum.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self {
            k: (k_sq / sum).sqrt(),
            k_prime: (k_prime_sq / sum).sqrt(),
        })
    }

    /// Builds the modulus from the complementary modulus k' in [0, 1].
    pub fn from_complementary(k_prime: F) -> Result<Self, EllipticError> {
        let c = Self::new(k_prime)?;
        Ok(Self {
            k: c.k_prime,
            k_prime: c.k,
        })
    }

    /// The complementary modulus as a `Modulus`, i.e. (k', k).
    pub fn complementary(self) -> Self {
        Self {
            k: self.k_prime,
            k_prime: self.k,
        }
    }

    #[inline]
    pub fn k(self) -> F {
        self.k
    }

    #[inline]
    pub fn k_prime(self) -> F {
        self.k_prime
    }

    /// k^2, the parameter m.
    #[inline]
    pub fn m(self) -> F {
        self.k * self.k
    }

    /// k'^2, the complementary parameter.
    #[inline]
    pub fn mc(self) -> F {
        self.k_prime * self.k_prime
    }
}

/// The triple (sn, cn, dn) at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple<F> {
    pub sn: F,
    pub cn: F,
    pub dn: F,
}

/// Complete elliptic integral of the first kind K(k) by AGM iteration.
///
/// Requires k' > 0; K diverges as k -> 1. For k' below
/// [`KPRIME_DEGENERATE_THRESHOLD`] the asymptotic form log(4/k') is used,
/// whose relative error is O(k'^2 log(1/k')).
pub fn complete_k<F: Real>(modulus: Modulus<F>) -> Result<F, EllipticError> {
    if modulus.k_prime <= F::zero() {
        return Err(EllipticError::FirstKindDiverges);
    }
    if modulus.k_prime < F::lit(KPRIME_DEGENERATE_THRESHOLD) {
        return Ok((F::lit(4.0) / modulus.k_prime).ln());
    }
    let (agm, _, _) = agm_chain(F::one(), modulus.k_prime);
    Ok(F::FRAC_PI_2() / agm)
}

/// Complete elliptic integral of the second kind E(k).
///
/// Total on [0, 1]: E(0) = pi/2 and E(1) = 1 are returned exactly. For k'
/// below [`KPRIME_DEGENERATE_THRESHOLD`] the expansion
/// E = 1 + (k'^2/2)(log(4/k') - 1/2) is used.
pub fn complete_e<F: Real>(modulus: Modulus<F>) -> F {
    if modulus.k == F::zero() {
        return F::FRAC_PI_2();
    }
    if modulus.k_prime <= F::zero() {
        return F::one();
    }
    if modulus.k_prime < F::lit(KPRIME_DEGENERATE_THRESHOLD) {
        let kp = modulus.k_prime;
        return F::one() + F::half() * kp * kp * ((F::lit(4.0) / kp).ln() - F::half());
    }
    // E = K (1 - sum 2^(n-1) c_n^2) over the AGM sequence seeded with c_0 = k.
    let (agm, c_sum, _) = agm_chain_with_csum(F::one(), modulus.k_prime, modulus.k);
    let big_k = F::FRAC_PI_2() / agm;
    big_k * (F::one() - c_sum)
}

/// Incomplete elliptic integral of the first kind F(phi, k), via Carlson RF.
///
/// Reduction to the fundamental amplitude range [0, pi/2] is the caller's
/// job; arguments outside it are rejected. k = 1 is rejected because
/// F(pi/2, 1) diverges.
pub fn incomplete_f<F: Real>(phi: F, modulus: Modulus<F>) -> Result<F, EllipticError> {
    check_amplitude(phi)?;
    if modulus.k_prime <= F::zero() {
        return Err(EllipticError::FirstKindDiverges);
    }
    let s = phi.sin();
    let c = phi.cos();
    // 1 - k^2 s^2 written as c^2 + (k' s)^2 to avoid cancellation for k ~ 1.
    let y = c * c + (modulus.k_prime * s) * (modulus.k_prime * s);
    Ok(s * carlson_rf(c * c, y, F::one()))
}

/// Incomplete elliptic integral of the second kind E(phi, k), via Carlson
/// RF and RD. Accepts the full closed modulus range [0, 1].
pub fn incomplete_e<F: Real>(phi: F, modulus: Modulus<F>) -> Result<F, EllipticError> {
    check_amplitude(phi)?;
    let s = phi.sin();
    if s == F::zero() {
        return Ok(F::zero());
    }
    if modulus.k_prime <= F::zero() {
        // E(phi, 1) = sin(phi).
        return Ok(s);
    }
    let c = phi.cos();
    let y = c * c + (modulus.k_prime * s) * (modulus.k_prime * s);
    let m = modulus.m();
    Ok(s * carlson_rf(c * c, y, F::one())
        - m / F::lit(3.0) * s * s * s * carlson_rd(c * c, y, F::one()))
}

/// Jacobi elliptic functions (sn, cn, dn)(u; k).
///
/// The argument is reduced modulo the real period 4K with exact sign
/// bookkeeping before evaluation, so accuracy is preserved for |u| up to
/// about 1e6 K. Degenerate moduli take the trigonometric (k ~ 0) or
/// hyperbolic (k ~ 1) branch.
pub fn jacobi<F: Real>(u: F, modulus: Modulus<F>) -> Result<JacobiTriple<F>, EllipticError> {
    if !u.is_finite() {
        return Err(EllipticError::NonFiniteArgument);
    }
    if modulus.k < F::lit(MODULUS_DEGENERATE_THRESHOLD) {
        return Ok(JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: F::one(),
        });
    }
    if modulus.k_prime <= F::zero() {
        // k = 1 exactly: the hyperbolic limit, no real period.
        let sech = F::one() / u.cosh();
        return Ok(JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // sn is odd, cn and dn are even: fold the sign out first, exactly.
    let sign_u = if u < F::zero() { -F::one() } else { F::one() };
    let au = u.abs();

    let big_k = complete_k(modulus)?;
    let period = F::lit(4.0) * big_k;
    let mut r = au - period * (au / period).floor();
    if r < F::zero() {
        r = r + period;
    }
    // Quadrant reduction to [0, K]:
    //   sn(u + 2K) = -sn u, cn(u + 2K) = -cn u, dn(u + 2K) = dn u
    //   sn(2K - u) =  sn u, cn(2K - u) = -cn u, dn(2K - u) = dn u
    let mut sn_sign = sign_u;
    let mut cn_sign = F::one();
    let two_k = F::two() * big_k;
    if r >= two_k {
        r = r - two_k;
        sn_sign = -sn_sign;
        cn_sign = -cn_sign;
    }
    if r > big_k {
        r = two_k - r;
        cn_sign = -cn_sign;
    }

    let (sn, cn, dn) = if modulus.k_prime < F::lit(KPRIME_DEGENERATE_THRESHOLD) {
        near_unit_core(r, big_k, modulus.k_prime)
    } else {
        sncndn_core(r, modulus.mc())
    };
    Ok(JacobiTriple {
        sn: sn_sign * sn,
        cn: cn_sign * cn,
        dn,
    })
}

/// First-order descending-Landen expansions about k = 1 on the reduced
/// argument r in [0, K]:
///   sn = tanh r + (k'^2/4)(sinh r cosh r - r) sech^2 r
///   cn = sech r - (k'^2/4)(sinh r cosh r - r) tanh r sech r
///   dn = sech r + (k'^2/4)(sinh r cosh r + r) tanh r sech r
/// The growing product (k'^2/4) sinh r cosh r is formed as
/// exp(2(r - K)) (1 - e^{-4r}), which stays in [0, 1] all the way to r = K,
/// where it restores dn(K) = k' exactly to leading order.
fn near_unit_core<F: Real>(r: F, big_k: F, k_prime: F) -> (F, F, F) {
    let e_mr = (-r).exp();
    let e_m2 = e_mr * e_mr;
    let sech = F::two() * e_mr / (F::one() + e_m2);
    let tanh = (F::one() - e_m2) / (F::one() + e_m2);
    let t = (r - big_k).exp(); // k' e^r / 4
    let grow = t * t * (F::one() - e_m2 * e_m2); // (k'^2/4) sinh r cosh r
    let linear = F::lit(0.25) * k_prime * k_prime * r;
    let sn = (tanh + (grow - linear) * sech * sech).min(F::one());
    let cn = sech - (grow - linear) * tanh * sech;
    let dn = sech + (grow + linear) * tanh * sech;
    (sn, cn, dn)
}

/// Carlson symmetric integral RF(x, y, z) by the duplication algorithm.
///
/// Arguments must be nonnegative with at most one of them zero.
pub fn carlson_rf<F: Real>(x: F, y: F, z: F) -> F {
    let errtol = F::lit(CARLSON_RF_ERRTOL);
    let third = F::one() / F::lit(3.0);
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut ave;
    let (mut dx, mut dy, mut dz);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        xt = F::lit(0.25) * (xt + lam);
        yt = F::lit(0.25) * (yt + lam);
        zt = F::lit(0.25) * (zt + lam);
        ave = third * (xt + yt + zt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) <= errtol {
            break;
        }
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let c1 = F::one() / F::lit(24.0);
    let c2 = F::lit(0.1);
    let c3 = F::lit(3.0) / F::lit(44.0);
    let c4 = F::one() / F::lit(14.0);
    (F::one() + (c1 * e2 - c2 - c3 * e3) * e2 + c4 * e3) / ave.sqrt()
}

/// Carlson symmetric integral RD(x, y, z) by the duplication algorithm.
///
/// x, y must be nonnegative with at most one zero; z must be positive.
pub fn carlson_rd<F: Real>(x: F, y: F, z: F) -> F {
    let errtol = F::lit(CARLSON_RD_ERRTOL);
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut sum = F::zero();
    let mut fac = F::one();
    let mut ave;
    let (mut dx, mut dy, mut dz);
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        sum = sum + fac / (sz * (zt + lam));
        fac = F::lit(0.25) * fac;
        xt = F::lit(0.25) * (xt + lam);
        yt = F::lit(0.25) * (yt + lam);
        zt = F::lit(0.25) * (zt + lam);
        ave = F::lit(0.2) * (xt + yt + F::lit(3.0) * zt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) <= errtol {
            break;
        }
    }
    let c1 = F::lit(3.0) / F::lit(14.0);
    let c2 = F::one() / F::lit(6.0);
    let c3 = F::lit(9.0) / F::lit(22.0);
    let c4 = F::lit(3.0) / F::lit(26.0);
    let c5 = F::lit(0.25) * c3;
    let c6 = F::lit(1.5) * c4;
    let ea = dx * dy;
    let eb = dz * dz;
    let ec = ea - eb;
    let ed = ea - F::lit(6.0) * eb;
    let ee = ed + ec + ec;
    F::lit(3.0) * sum
        + fac
            * (F::one()
                + ed * (-c1 + c5 * ed - c6 * dz * ee)
                + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea)))
            / (ave * ave.sqrt())
}

fn check_amplitude<F: Real>(phi: F) -> Result<(), EllipticError> {
    if !(phi >= F::zero() && phi <= F::FRAC_PI_2()) {
        return Err(EllipticError::AmplitudeOutOfRange(
            phi.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}

/// AGM of (a0, b0); returns (limit, unused, iterations).
fn agm_chain<F: Real>(a0: F, b0: F) -> (F, F, usize) {
    let (a, _, i) = agm_chain_with_csum(a0, b0, F::zero());
    (a, F::zero(), i)
}

/// AGM of (a0, b0) accumulating sum 2^(n-1) c_n^2 with c_0 = c0.
///
/// Past the first step the c-sequence is advanced through the exact
/// quadratic recurrence c_{n+1} = c_n^2 / (4 a_{n+1}) rather than the
/// subtraction (a_n - b_n)/2; the subtraction stalls at the rounding floor
/// once a and b agree to one ulp and the doubling weight would then amplify
/// pure noise.
fn agm_chain_with_csum<F: Real>(a0: F, b0: F, c0: F) -> (F, F, usize) {
    let mut a = a0;
    let mut b = b0;
    let mut c = F::half() * (a0 - b0);
    let mut sum = F::half() * c0 * c0;
    let mut pow = F::half();
    let tiny = F::epsilon();
    for i in 0..64 {
        let an = F::half() * (a + b);
        let bn = (a * b).sqrt();
        if i > 0 {
            c = c * c / (F::lit(4.0) * an);
        }
        pow = pow * F::two();
        sum = sum + pow * c * c;
        a = an;
        b = bn;
        if c.abs() <= tiny * a {
            return (a, sum, i);
        }
    }
    (a, sum, 64)
}

/// Descending Landen / backward recurrence for (sn, cn, dn) on a reduced
/// argument in [0, K], with mc = k'^2 strictly inside (0, 1).
fn sncndn_core<F: Real>(u: F, mc: F) -> (F, F, F) {
    let ca = F::lit(LANDEN_ACCURACY);
    let mut emc = mc;
    let mut a = F::one();
    let mut dn = F::one();
    let mut em = [F::zero(); LANDEN_MAX_STAGES];
    let mut en = [F::zero(); LANDEN_MAX_STAGES];
    let mut l = 0;
    let mut c = F::zero();
    for i in 0..LANDEN_MAX_STAGES {
        l = i;
        em[i] = a;
        emc = emc.sqrt();
        en[i] = emc;
        c = F::half() * (a + emc);
        if (a - emc).abs() <= ca * a {
            break;
        }
        emc = emc * a;
        a = c;
    }
    let phi = c * u;
    let mut sn = phi.sin();
    let mut cn = phi.cos();
    if sn != F::zero() {
        let mut aa = cn / sn;
        let mut cc = c * aa;
        for i in (0..=l).rev() {
            let b = em[i];
            aa = cc * aa;
            cc = cc * dn;
            dn = (en[i] + aa) / (b + aa);
            aa = cc / b;
        }
        let amp = F::one() / (cc * cc + F::one()).sqrt();
        sn = if sn >= F::zero() { amp } else { -amp };
        cn = cc * sn;
    }
    (sn, cn, dn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn modulus(k: f64) -> Modulus<f64> {
        Modulus::new(k).unwrap()
    }

    #[test]
    fn complete_k_at_zero_is_half_pi() {
        assert!((complete_k(modulus(0.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn complete_k_reference_values() {
        // scipy.special.ellipk(m) at m = k^2.
        let cases: [(f64, f64); 3] = [
            (0.1, 1.6124413487202192),
            (0.5, 1.8540746773013719),
            (0.9, 2.5780921133481733),
        ];
        for (m, want) in cases {
            let got = complete_k(Modulus::from_k_squared(m).unwrap()).unwrap();
            assert!((got - want).abs() < 1e-14, "K(m={m}): {got} vs {want}");
        }
    }

    #[test]
    fn complete_k_rejects_unit_modulus() {
        assert_eq!(
            complete_k(modulus(1.0)).unwrap_err(),
            EllipticError::FirstKindDiverges
        );
    }

    #[test]
    fn complete_k_asymptotic_branch_is_continuous() {
        // Straddle the crossover and compare against log(4/k') + correction.
        for kp in [2e-8f64, 1e-8, 5e-9] {
            let m = Modulus::from_complementary(kp).unwrap();
            let got = complete_k(m).unwrap();
            let asym = (4.0 / kp).ln();
            assert!((got - asym).abs() < 1e-12, "k'={kp}: {got} vs {asym}");
        }
    }

    #[test]
    fn complete_e_boundary_values() {
        assert_eq!(complete_e(modulus(1.0)), 1.0);
        assert!((complete_e(modulus(0.0)) - FRAC_PI_2).abs() < 1e-15);
        // scipy.special.ellipe(0.5)
        let got = complete_e(Modulus::from_k_squared(0.5f64).unwrap());
        assert!((got - 1.3506438810476755).abs() < 1e-14);
    }

    #[test]
    fn legendre_relation_holds() {
        for &k in &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let m = modulus(k);
            let mc = m.complementary();
            let res = complete_e(m) * complete_k(mc).unwrap()
                + complete_e(mc) * complete_k(m).unwrap()
                - complete_k(m).unwrap() * complete_k(mc).unwrap()
                - FRAC_PI_2;
            assert!(res.abs() < 1e-13, "k={k}: residual {res:e}");
        }
    }

    #[test]
    fn incomplete_f_endpoints() {
        let m = modulus(0.6);
        assert_eq!(incomplete_f(0.0, m).unwrap(), 0.0);
        let full = incomplete_f(FRAC_PI_2, m).unwrap();
        assert!((full - complete_k(m).unwrap()).abs() < 1e-13);
        // F(phi, 0) = phi.
        assert!((incomplete_f(0.83, modulus(0.0)).unwrap() - 0.83).abs() < 1e-15);
        assert!(incomplete_f(-0.1, m).is_err());
        assert!(incomplete_f(2.0, m).is_err());
        assert!(incomplete_f(0.5, modulus(1.0)).is_err());
    }

    #[test]
    fn incomplete_e_endpoints() {
        let m = modulus(0.6);
        assert_eq!(incomplete_e(0.0, m).unwrap(), 0.0);
        let full = incomplete_e(FRAC_PI_2, m).unwrap();
        assert!((full - complete_e(m)).abs() < 1e-13);
        assert!((incomplete_e(0.83, modulus(0.0)).unwrap() - 0.83).abs() < 1e-15);
        // E(phi, 1) = sin(phi).
        let e1 = incomplete_e(0.7, modulus(1.0)).unwrap();
        assert!((e1 - 0.7f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn jacobi_extremal_branches() {
        let t = jacobi(0.9, modulus(0.0)).unwrap();
        assert_eq!(t.sn, 0.9f64.sin());
        assert_eq!(t.cn, 0.9f64.cos());
        assert_eq!(t.dn, 1.0);
        let t = jacobi(0.9, modulus(1.0)).unwrap();
        assert_eq!(t.sn, 0.9f64.tanh());
        assert!((t.cn - 1.0 / 0.9f64.cosh()).abs() < 1e-16);
        assert_eq!(t.cn, t.dn);
    }

    #[test]
    fn jacobi_identities_and_symmetry() {
        let m = modulus(0.7);
        for &u in &[0.1, 0.9, 2.3, 7.7, -3.1] {
            let t = jacobi(u, m).unwrap();
            let id1 = t.sn * t.sn + t.cn * t.cn - 1.0;
            let id2 = t.dn * t.dn + m.m() * t.sn * t.sn - 1.0;
            assert!(id1.abs() < 1e-14, "u={u}: {id1:e}");
            assert!(id2.abs() < 1e-14, "u={u}: {id2:e}");
            let neg = jacobi(-u, m).unwrap();
            assert_eq!(neg.sn, -t.sn);
            assert_eq!(neg.cn, t.cn);
            assert_eq!(neg.dn, t.dn);
        }
        assert!(jacobi(f64::INFINITY, m).is_err());
    }

    #[test]
    fn jacobi_special_points() {
        let m = modulus(0.8);
        let big_k = complete_k(m).unwrap();
        let at_k = jacobi(big_k, m).unwrap();
        assert!((at_k.sn - 1.0).abs() < 1e-12);
        assert!(at_k.cn.abs() < 1e-12);
        assert!((at_k.dn - m.k_prime()).abs() < 1e-12);
    }

    #[test]
    fn jacobi_periodicity_and_large_argument() {
        let m = modulus(0.62);
        let big_k = complete_k(m).unwrap();
        for &u in &[0.37, 1.9, -2.6] {
            let t0 = jacobi(u, m).unwrap();
            let t4 = jacobi(u + 4.0 * big_k, m).unwrap();
            assert!((t0.sn - t4.sn).abs() < 1e-12);
            let t2 = jacobi(u + 2.0 * big_k, m).unwrap();
            assert!((t0.dn - t2.dn).abs() < 1e-12);
            let far = jacobi(u + 4.0 * big_k * 1.0e6, m).unwrap();
            assert!((t0.sn - far.sn).abs() < 1e-9);
        }
    }

    #[test]
    fn near_unit_branch_agrees_with_landen_algorithm() {
        // Just above the crossover the full descending-Landen algorithm is
        // the reference; the k'-expansion must match it to near machine
        // precision over the whole reduced range.
        let kp = 3e-8f64;
        let m = Modulus::from_complementary(kp).unwrap();
        let big_k = complete_k(m).unwrap();
        for i in 0..=40 {
            let u = big_k * i as f64 / 40.0;
            let t = jacobi(u, m).unwrap(); // algorithm branch (kp > 1e-8)
            let e_m2 = (-2.0 * u).exp();
            let sech = 2.0 * (-u).exp() / (1.0 + e_m2);
            let tanh = (1.0 - e_m2) / (1.0 + e_m2);
            let grow = (2.0 * (u - big_k)).exp() * (1.0 - e_m2 * e_m2);
            let lin = 0.25 * kp * kp * u;
            let sn = tanh + (grow - lin) * sech * sech;
            let cn = sech - (grow - lin) * tanh * sech;
            let dn = sech + (grow + lin) * tanh * sech;
            assert!((t.sn - sn).abs() < 1e-13, "sn at u/K={}", i as f64 / 40.0);
            assert!((t.cn - cn).abs() < 1e-13, "cn at u/K={}", i as f64 / 40.0);
            assert!((t.dn - dn).abs() < 1e-13, "dn at u/K={}", i as f64 / 40.0);
        }
    }

    #[test]
    fn near_unit_branch_trough_value() {
        // dn(K; k) = k' must hold to full relative accuracy well below the
        // crossover, where sech(K) alone would be off by a factor 2.
        for kp in [5e-9f64, 1e-12, 1e-20] {
            let m = Modulus::from_squares(1.0 - kp * kp, kp * kp).unwrap();
            let big_k = complete_k(m).unwrap();
            let t = jacobi(big_k, m).unwrap();
            assert!(
                ((t.dn - kp) / kp).abs() < 1e-9,
                "k'={kp}: dn(K) = {} vs {kp}",
                t.dn
            );
            assert!((t.sn - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_small_argument_asymptotics() {
        let m = modulus(0.45);
        let u = 1e-4;
        let t = jacobi(u, m).unwrap();
        assert!((t.sn - u).abs() < 2.0 * u * u * u);
        assert!((t.dn - 1.0).abs() < u * u);
    }

    #[test]
    fn modulus_invariant_and_constructors() {
        for &k in &[1e-6, 0.3, 0.9, 1.0 - 1e-12] {
            let m = modulus(k);
            let res = m.m() + m.mc() - 1.0;
            assert!(res.abs() <= 4.0 * f64::EPSILON, "k={k}: {res:e}");
        }
        assert!(Modulus::new(-0.1f64).is_err());
        assert!(Modulus::new(1.1f64).is_err());
        assert!(Modulus::from_k_squared(1.5f64).is_err());
        let tiny = Modulus::from_squares(1.0f64 - 1e-40, 1e-40).unwrap();
        assert_eq!(tiny.k(), 1.0); // rounds, but...
        assert!((tiny.k_prime() - 1e-20).abs() < 1e-32); // ...k' keeps the scale
    }

    #[test]
    fn carlson_degenerate_points() {
        // RF(0, 1, 1) = pi/2; RD(0, 1, 1) = 3 pi / 4 * 2 = ... check via E.
        let rf = carlson_rf(0.0, 1.0, 1.0);
        assert!((rf - FRAC_PI_2).abs() < 1e-14);
        // F(pi/4, k) against a trusted value (mpmath ellipf(pi/4, 0.25)).
        let f = incomplete_f(FRAC_PI_4, Modulus::from_k_squared(0.25).unwrap()).unwrap();
        assert!((f - 0.8043661012320656).abs() < 1e-14, "{f}");
    }
}
