//! Uniform periodic grids: the substrate for quadrature, norms and spectral
//! derivatives. Samples live on x_j = -L + j (2L/n), j = 0..n-1, with the
//! periodic wrap at x = L; n is a power of two.

use crate::scalar::Real;
use num_complex::Complex;
use rustfft::{FftNum, FftPlanner};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid length {0} is not a power of two (>= 4)")]
    BadLength(usize),
    #[error("half-length must be positive and finite")]
    BadHalfLength,
    #[error("derivative order {0} outside 1..=4")]
    BadOrder(usize),
    #[error("grids are incompatible: lengths {0} and {1} or half-lengths differ")]
    Mismatch(usize, usize),
}

/// Element type of a grid: real samples or complex samples.
pub trait GridScalar<F: Real>: Copy + Send + Sync {
    fn to_complex(self) -> Complex<F>;
    fn from_complex(z: Complex<F>) -> Self;
    fn abs_sq(self) -> F;
}

impl<F: Real> GridScalar<F> for F {
    #[inline]
    fn to_complex(self) -> Complex<F> {
        Complex::new(self, F::zero())
    }
    #[inline]
    fn from_complex(z: Complex<F>) -> Self {
        z.re
    }
    #[inline]
    fn abs_sq(self) -> F {
        self * self
    }
}

impl<F: Real> GridScalar<F> for Complex<F> {
    #[inline]
    fn to_complex(self) -> Complex<F> {
        self
    }
    #[inline]
    fn from_complex(z: Complex<F>) -> Self {
        z
    }
    #[inline]
    fn abs_sq(self) -> F {
        self.re * self.re + self.im * self.im
    }
}

/// Uniform periodic samples of a real or complex function on [-L, L).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<F, T> {
    samples: Vec<T>,
    half_length: F,
}

pub type RealGrid<F> = GridFunction<F, F>;
pub type ComplexGrid<F> = GridFunction<F, Complex<F>>;

impl<F: Real, T: GridScalar<F>> GridFunction<F, T> {
    pub fn new(samples: Vec<T>, half_length: F) -> Result<Self, GridError> {
        let n = samples.len();
        if n < 4 || !n.is_power_of_two() {
            return Err(GridError::BadLength(n));
        }
        if !(half_length > F::zero()) || !half_length.is_finite() {
            return Err(GridError::BadHalfLength);
        }
        Ok(Self {
            samples,
            half_length,
        })
    }

    /// Samples f on the uniform grid.
    pub fn sample(f: impl Fn(F) -> T, half_length: F, n: usize) -> Result<Self, GridError> {
        if n < 4 || !n.is_power_of_two() {
            return Err(GridError::BadLength(n));
        }
        if !(half_length > F::zero()) || !half_length.is_finite() {
            return Err(GridError::BadHalfLength);
        }
        let spacing = F::two() * half_length / F::from_usize(n).unwrap();
        let samples = (0..n)
            .map(|j| f(-half_length + F::from_usize(j).unwrap() * spacing))
            .collect();
        Ok(Self {
            samples,
            half_length,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn half_length(&self) -> F {
        self.half_length
    }

    #[inline]
    pub fn spacing(&self) -> F {
        F::two() * self.half_length / F::from_usize(self.n()).unwrap()
    }

    #[inline]
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    /// Grid node x_j = -L + j * spacing.
    #[inline]
    pub fn node(&self, j: usize) -> F {
        -self.half_length + F::from_usize(j).unwrap() * self.spacing()
    }

    /// Periodic trapezoidal quadrature of |f|^2 (spectrally accurate for
    /// smooth periodic data).
    pub fn l2_norm_sq(&self) -> F {
        let mut acc = F::zero();
        for &v in &self.samples {
            acc = acc + v.abs_sq();
        }
        acc * self.spacing()
    }

    /// Periodic trapezoidal quadrature of a pointwise functional of the samples.
    pub fn integrate(&self, f: impl Fn(T) -> F) -> F {
        let mut acc = F::zero();
        for &v in &self.samples {
            acc = acc + f(v);
        }
        acc * self.spacing()
    }

    /// Maximum of |f| over the grid.
    pub fn sup_norm(&self) -> F {
        self.samples
            .iter()
            .fold(F::zero(), |m, &v| m.max(v.abs_sq().sqrt()))
    }

    pub fn map<U: GridScalar<F>>(&self, f: impl Fn(T) -> U) -> GridFunction<F, U> {
        GridFunction {
            samples: self.samples.iter().map(|&v| f(v)).collect(),
            half_length: self.half_length,
        }
    }

    pub fn compatible_with<U: GridScalar<F>>(&self, other: &GridFunction<F, U>) -> bool {
        self.n() == other.n()
            && (self.half_length - other.half_length).abs()
                <= F::lit(1e-12) * self.half_length.abs()
    }
}

impl<F: Real + FftNum, T: GridScalar<F>> GridFunction<F, T> {
    /// m-th spectral derivative on the periodic grid (1 <= m <= 4): exact for
    /// band-limited data. The Nyquist mode is zeroed for odd orders, which
    /// keeps derivatives of real data real.
    pub fn derivative(&self, order: usize) -> Result<Self, GridError> {
        if !(1..=4).contains(&order) {
            return Err(GridError::BadOrder(order));
        }
        let n = self.n();
        let mut spectrum: Vec<Complex<F>> =
            self.samples.iter().map(|&v| v.to_complex()).collect();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(n).process(&mut spectrum);

        let base = F::PI() / self.half_length;
        let half = n / 2;
        for (idx, value) in spectrum.iter_mut().enumerate() {
            let m_idx: isize = if idx <= half {
                idx as isize
            } else {
                idx as isize - n as isize
            };
            if idx == half && order % 2 == 1 {
                *value = Complex::new(F::zero(), F::zero());
                continue;
            }
            let k = base * F::from_isize(m_idx).unwrap();
            let ik = Complex::new(F::zero(), k);
            let mut factor = Complex::new(F::one(), F::zero());
            for _ in 0..order {
                factor = factor * ik;
            }
            *value = *value * factor;
        }

        planner.plan_fft_inverse(n).process(&mut spectrum);
        let scale = F::one() / F::from_usize(n).unwrap();
        let samples = spectrum
            .into_iter()
            .map(|z| T::from_complex(z * scale))
            .collect();
        Ok(Self {
            samples,
            half_length: self.half_length,
        })
    }

    /// Squared Sobolev norm of order m: sum over j <= m of the squared L2
    /// norms of the j-th spectral derivatives.
    pub fn sobolev_norm_sq(&self, m: usize) -> Result<F, GridError> {
        let mut acc = self.l2_norm_sq();
        for j in 1..=m {
            acc = acc + self.derivative(j)?.l2_norm_sq();
        }
        Ok(acc)
    }

    /// Mean-zero periodic primitive: the spectral antiderivative with the
    /// zero mode set to zero. The input must have (numerically) zero mean for
    /// the result to be a true primitive.
    pub fn mean_zero_primitive(&self) -> Self {
        let n = self.n();
        let mut spectrum: Vec<Complex<F>> =
            self.samples.iter().map(|&v| v.to_complex()).collect();
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(n).process(&mut spectrum);
        let base = F::PI() / self.half_length;
        let half = n / 2;
        for (idx, value) in spectrum.iter_mut().enumerate() {
            if idx == 0 || idx == half {
                *value = Complex::new(F::zero(), F::zero());
                continue;
            }
            let m_idx: isize = if idx <= half {
                idx as isize
            } else {
                idx as isize - n as isize
            };
            let k = base * F::from_isize(m_idx).unwrap();
            *value = *value / Complex::new(F::zero(), k);
        }
        planner.plan_fft_inverse(n).process(&mut spectrum);
        let scale = F::one() / F::from_usize(n).unwrap();
        let samples = spectrum
            .into_iter()
            .map(|z| T::from_complex(z * scale))
            .collect();
        Self {
            samples,
            half_length: self.half_length,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_shapes() {
        assert!(RealGrid::<f64>::new(vec![0.0; 100], 1.0).is_err());
        assert!(RealGrid::<f64>::new(vec![0.0; 2], 1.0).is_err());
        assert!(RealGrid::<f64>::new(vec![0.0; 8], -1.0).is_err());
        let g = RealGrid::<f64>::sample(|x| x, 1.0, 8).unwrap();
        assert!(g.derivative(0).is_err());
        assert!(g.derivative(5).is_err());
    }

    #[test]
    fn constant_grid_derivative_is_zero() {
        let g = RealGrid::<f64>::sample(|_| 3.25, 2.0, 64).unwrap();
        let d = g.derivative(1).unwrap();
        for &v in d.samples() {
            assert!(v.abs() < 1e-13);
        }
        assert!((g.l2_norm_sq() - 4.0 * 3.25 * 3.25).abs() < 1e-12);
    }

    #[test]
    fn sine_is_an_eigenfunction() {
        let l = 3.0;
        let g = RealGrid::<f64>::sample(|x| (PI * x / l).sin(), l, 256).unwrap();
        let d2 = g.derivative(2).unwrap();
        let factor = -(PI / l) * (PI / l);
        for (j, &v) in d2.samples().iter().enumerate() {
            let want = factor * (PI * g.node(j) / l).sin();
            assert!((v - want).abs() < 1e-11, "j={j}: {v} vs {want}");
        }
    }

    #[test]
    fn derivative_composition_matches_second_order() {
        let l = 2.0;
        let g = RealGrid::<f64>::sample(|x| (PI * x / l).sin() + 0.3 * (2.0 * PI * x / l).cos(), l, 128)
            .unwrap();
        let twice = g.derivative(1).unwrap().derivative(1).unwrap();
        let second = g.derivative(2).unwrap();
        let norm = second.l2_norm_sq().sqrt();
        for (a, b) in twice.samples().iter().zip(second.samples()) {
            assert!((a - b).abs() < 1e-10 * norm.max(1.0));
        }
    }

    #[test]
    fn primitive_inverts_derivative() {
        let l = 1.5;
        let g = RealGrid::<f64>::sample(|x| (2.0 * PI * x / l).sin(), l, 128).unwrap();
        let back = g.derivative(1).unwrap().mean_zero_primitive();
        for (a, b) in back.samples().iter().zip(g.samples()) {
            assert!((a - b).abs() < 1e-12);
        }
        // Mean of the primitive is zero.
        let mean: f64 = back.samples().iter().sum::<f64>() / back.n() as f64;
        assert!(mean.abs() < 1e-13);
    }
}
