//! The spectral-flow filter: a smooth bump Fourier transform supported in
//! `[-gamma, gamma]`, its transfer function, and the tabulated time-domain
//! weight used by the quadrature construction of the generator.

use crate::dense::C64;
use crate::error::{Error, Result};

/// Tabulated time samples of `w_gamma` on a symmetric uniform grid.
#[derive(Debug, Clone)]
pub struct TimeSamples {
    /// Truncation: the grid covers `[-T, T]`.
    pub truncation: f64,
    pub dt: f64,
    /// `w_gamma(k * dt)` for `k = -n..=n`, stored from `-T` to `T`.
    pub values: Vec<f64>,
}

impl TimeSamples {
    pub fn n_half(&self) -> usize {
        (self.values.len() - 1) / 2
    }

    pub fn time(&self, idx: usize) -> f64 {
        (idx as f64 - self.n_half() as f64) * self.dt
    }
}

/// The filter pair `(w_gamma, ŵ_gamma)` and the transfer function
/// `W(omega) = (ŵ(omega) - 1)/(i omega)`.
#[derive(Debug, Clone)]
pub struct FilterFunction {
    pub gamma: f64,
    pub time_samples: Option<TimeSamples>,
}

impl FilterFunction {
    /// Frequency-domain-only filter (no tabulation); sufficient for the
    /// closed-form generator construction.
    pub fn frequency_only(gamma: f64) -> Result<Self> {
        if gamma <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                value: gamma,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        Ok(FilterFunction {
            gamma,
            time_samples: None,
        })
    }

    /// `ŵ_gamma(omega)`: `exp(1 - 1/(1 - (omega/gamma)^2))` inside the
    /// support, 0 outside. `ŵ(0) = 1` fixes the normalization `∫ w = 1`.
    pub fn what(&self, omega: f64) -> f64 {
        let x = omega / self.gamma;
        if x.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - x * x)).exp()
        }
    }

    /// Transfer function `W(omega) = (ŵ(omega) - 1)/(i omega)`, `W(0) = 0`.
    /// Purely imaginary and odd, so generators built from it are Hermitian.
    pub fn transfer(&self, omega: f64) -> C64 {
        if omega == 0.0 {
            return C64::new(0.0, 0.0);
        }
        // (what - 1)/(i w) = i (1 - what)/w
        C64::new(0.0, (1.0 - self.what(omega)) / omega)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' at x by recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Build the filter with tabulated time samples on a symmetric grid of step
/// `dt` covering `[-truncation, truncation]`.
///
/// `w_gamma(t) = (1/pi) ∫_0^gamma ŵ(omega) cos(omega t) d omega` by
/// Gauss-Legendre quadrature with node count scaled to resolve the
/// oscillations out to the truncation time.
pub fn make_filter(gamma: f64, truncation: f64, dt: f64) -> Result<FilterFunction> {
    if gamma <= 0.0 || truncation <= 0.0 || dt <= 0.0 {
        return Err(Error::ParameterOutOfRange {
            value: gamma.min(truncation).min(dt),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let ratio = truncation / dt;
    if ratio < 16.0 {
        return Err(Error::DegenerateGrid { ratio });
    }
    let filter = FilterFunction::frequency_only(gamma)?;
    let n_half = ratio.round() as usize;
    let n_nodes = ((8.0 * truncation * gamma) as usize).max(129);
    let (nodes01, weights01) = gauss_legendre(n_nodes);
    // map [-1, 1] -> [0, gamma]
    let half = 0.5 * gamma;
    let mut half_values = vec![0.0f64; n_half + 1];
    for (x, wq) in nodes01.iter().zip(weights01.iter()) {
        let omega = half * (x + 1.0);
        let f = filter.what(omega) * wq * half / std::f64::consts::PI;
        if f == 0.0 {
            continue;
        }
        // incremental rotation cos(omega * k dt), re-synced periodically
        let (step_c, step_s) = ((omega * dt).cos(), (omega * dt).sin());
        let mut c = 1.0f64;
        let mut s = 0.0f64;
        for (k, hv) in half_values.iter_mut().enumerate() {
            if k % 4096 == 0 {
                let phase = omega * k as f64 * dt;
                c = phase.cos();
                s = phase.sin();
            }
            *hv += f * c;
            let cn = c * step_c - s * step_s;
            s = s * step_c + c * step_s;
            c = cn;
        }
    }
    let mut values = vec![0.0f64; 2 * n_half + 1];
    for k in 0..=n_half {
        values[n_half + k] = half_values[k];
        values[n_half - k] = half_values[k];
    }
    Ok(FilterFunction {
        gamma,
        time_samples: Some(TimeSamples {
            truncation: n_half as f64 * dt,
            dt,
            values,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_polynomial_exactness() {
        let (x, w) = gauss_legendre(8);
        // exact for polynomials up to degree 15
        for k in [0usize, 2, 6, 14] {
            let got: f64 = x.iter().zip(w.iter()).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
            let want = 2.0 / (k as f64 + 1.0);
            assert!((got - want).abs() < 1e-12, "degree {k}: {got} vs {want}");
        }
        let got: f64 = x.iter().zip(w.iter()).map(|(xi, wi)| wi * xi.powi(3)).sum();
        assert!(got.abs() < 1e-14);
    }

    #[test]
    fn bump_endpoints_and_transfer() {
        let f = FilterFunction::frequency_only(0.8).unwrap();
        assert!((f.what(0.0) - 1.0).abs() < 1e-15);
        assert_eq!(f.what(0.8), 0.0);
        assert_eq!(f.what(-0.8), 0.0);
        assert_eq!(f.transfer(0.0), C64::new(0.0, 0.0));
        // outside the support: W(omega) = i/omega
        let w = f.transfer(1.6);
        assert!((w - C64::new(0.0, 1.0 / 1.6)).norm() < 1e-15);
        // purely imaginary, odd
        for omega in [0.3, 0.65, 2.0] {
            let wp = f.transfer(omega);
            let wm = f.transfer(-omega);
            assert_eq!(wp.re, 0.0);
            assert!((wp + wm).norm() < 1e-15);
            assert!((wp.conj() + wp).norm() < 1e-15);
        }
    }

    #[test]
    fn tabulated_w_is_even_and_normalized() {
        let gamma = 1.1;
        let t = 200.0 / gamma;
        let f = make_filter(gamma, t, 0.05).unwrap();
        let ts = f.time_samples.as_ref().unwrap();
        let n = ts.n_half();
        for k in 0..=n {
            let a = ts.values[n + k];
            let b = ts.values[n - k];
            assert!((a - b).abs() < 1e-12);
        }
        let total: f64 = ts.values.iter().sum::<f64>() * ts.dt;
        assert!(
            (total - 1.0).abs() < 1e-3,
            "normalization sum w dt = {total}"
        );
    }

    #[test]
    fn degenerate_grid_rejected() {
        assert!(matches!(
            make_filter(1.0, 1.0, 0.5),
            Err(Error::DegenerateGrid { .. })
        ));
    }
}
