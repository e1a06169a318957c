//! Decay dynamics of the discrete level.
//!
//! The survival amplitude is the weighted phase sum over the exact spectrum,
//! `a(t) = sum_k w_k exp(-i E_k t / hbar)`; its modulus squared is compared
//! against the golden-rule exponential `exp(-gamma t / hbar)`. On top of the
//! decay the finite ladder produces edge oscillations, a quadratic short-time
//! (Zeno) region, and partial revivals near multiples of `t0`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::ExactSpectrum;
use crate::kahan::KahanSum;
use crate::model::ModelParams;

/// Survival probability against the reference exponential on a time grid.
#[derive(Debug, Clone)]
pub struct DecayCurve {
    pub times: Vec<f64>,
    /// `P(t) = |a(t)|^2`.
    pub p: Vec<f64>,
    /// `exp(-gamma t / hbar)`.
    pub p_exp: Vec<f64>,
    /// `p - p_exp`, elementwise.
    pub dp: Vec<f64>,
}

/// Densely sampled survival probability over a revival window.
#[derive(Debug, Clone)]
pub struct RevivalProfile {
    pub times: Vec<f64>,
    pub p: Vec<f64>,
    /// Largest sampled probability and where it occurred.
    pub max_p: f64,
    pub t_at_max: f64,
}

/// Survival amplitude `<1|psi(t)>` with compensated real/imaginary parts.
pub fn survival_amplitude(t: f64, spectrum: &ExactSpectrum, p: &ModelParams) -> Complex64 {
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for (&e, &w) in spectrum.energies.iter().zip(&spectrum.weights) {
        let (s, c) = (-e * t / p.hbar).sin_cos();
        re.add(w * c);
        im.add(w * s);
    }
    Complex64::new(re.value(), im.value())
}

/// Evaluate the decay curve on `tgrid` (sorted, non-negative).
pub fn decay_curve(tgrid: &[f64], spectrum: &ExactSpectrum, p: &ModelParams) -> DecayCurve {
    let gamma = p.derived_scales().gamma;
    let prob: Vec<f64> = tgrid
        .par_iter()
        .map(|&t| survival_amplitude(t, spectrum, p).norm_sqr())
        .collect();
    let p_exp: Vec<f64> = tgrid.iter().map(|&t| (-gamma * t / p.hbar).exp()).collect();
    let dp = prob.iter().zip(&p_exp).map(|(a, b)| a - b).collect();
    DecayCurve { times: tgrid.to_vec(), p: prob, p_exp, dp }
}

/// Default grid for decay plots: 2000 points on `[0, 5 hbar/gamma]`, which
/// resolves both the decay and the `de`-scale oscillations.
pub fn default_decay_grid(p: &ModelParams) -> Result<Vec<f64>> {
    let gamma = p.derived_scales().gamma;
    if gamma == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(time_grid(5.0 * p.hbar / gamma, 2000))
}

/// `steps` equally spaced times covering `[0, tmax]`.
pub fn time_grid(tmax: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "time grid needs at least 2 points");
    assert!(tmax > 0.0, "tmax must be positive");
    (0..steps)
        .map(|i| tmax * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Sample `P(t)` over `[t_lo, t_hi]` with step `t0/1e5` and report the peak.
pub fn revival_profile(
    t_lo: f64,
    t_hi: f64,
    spectrum: &ExactSpectrum,
    p: &ModelParams,
) -> RevivalProfile {
    assert!(t_hi > t_lo, "revival window must be positive");
    let step = p.derived_scales().t0 / 1e5;
    let count = ((t_hi - t_lo) / step).ceil() as usize + 1;
    let times: Vec<f64> = (0..count).map(|i| t_lo + step * i as f64).collect();
    let prob: Vec<f64> = times
        .par_iter()
        .map(|&t| survival_amplitude(t, spectrum, p).norm_sqr())
        .collect();
    let (imax, &max_p) = prob
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .expect("window contains at least one sample");
    RevivalProfile { t_at_max: times[imax], times, p: prob, max_p }
}

/// Exact recurrence proxy: least common multiple of the truncated scaled
/// energies `|trunc(10^m * E_k / de)|`, zeros skipped.
///
/// The result counts base periods and grows astronomically with `m` and `n`;
/// it is exact as a big integer.
pub fn recurrence_time(m: u32, spectrum: &ExactSpectrum, p: &ModelParams) -> Result<BigUint> {
    let scale = 10f64.powi(m as i32);
    let mut acc: Option<BigUint> = None;
    for &e in &spectrum.energies {
        let q = (scale * e / p.de).trunc().abs();
        if q == 0.0 {
            continue;
        }
        let q = BigUint::from(q as u128);
        acc = Some(match acc {
            None => q,
            Some(l) => l.lcm(&q),
        });
    }
    acc.ok_or(Error::DegenerateRecurrence)
}
