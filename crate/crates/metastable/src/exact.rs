//! Machine-precision spectrum of the arrowhead Hamiltonian via its secular
//! equation.
//!
//! Eliminating rows 2..n of the stationary equation gives a scalar root
//! problem: `h(lambda) = (lambda - eps0) - sum_n w^2/(lambda - e_n) = 0`,
//! where `e_n` runs over the ladder levels. `h` is strictly increasing
//! between consecutive poles, so the n roots interlace the n-1 poles, with
//! one root below the lowest pole and one above the highest. Each root is
//! bracketed a priori and located by bisection; no derivative information is
//! needed and convergence is unconditional even when a root hugs a pole.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::model::ModelParams;

const MAX_BISECTIONS: usize = 200;

/// Exact eigenvalues and first-component weights, both indexed by ascending k.
#[derive(Debug, Clone)]
pub struct ExactSpectrum {
    /// Eigenvalues, strictly ascending.
    pub energies: Vec<f64>,
    /// `|<1|psi_k>|^2`; positive, summing to 1 by completeness.
    pub weights: Vec<f64>,
}

/// One exact eigenvector reconstructed from its eigenvalue.
#[derive(Debug, Clone)]
pub struct ExactEigenvector {
    /// Components in basis order (slot 0 is the discrete level).
    pub components: Vec<f64>,
    /// Deviation of the constructed norm from 1 (diagnostic; the stored
    /// components are not renormalized).
    pub norm_error: f64,
}

/// Compensated sum of `1/(lambda - e)` over the ladder, four lanes wide.
///
/// Four independent Kahan accumulators break the serial dependency of the
/// compensation updates; the lanes (sums and compensations) are merged with a
/// final compensated pass.
#[inline]
fn recip_sum(lambda: f64, ladder: &[f64]) -> f64 {
    let mut s = [0.0f64; 4];
    let mut c = [0.0f64; 4];
    let mut chunks = ladder.chunks_exact(4);
    for q in chunks.by_ref() {
        for l in 0..4 {
            let x = 1.0 / (lambda - q[l]);
            let y = x - c[l];
            let t = s[l] + y;
            c[l] = (t - s[l]) - y;
            s[l] = t;
        }
    }
    let mut tail = KahanSum::new();
    for &e in chunks.remainder() {
        tail.add(1.0 / (lambda - e));
    }
    for l in 0..4 {
        tail.add(s[l]);
        tail.add(-c[l]);
    }
    tail.value()
}

/// Same as [`recip_sum`] for `1/(lambda - e)^2`.
#[inline]
fn recip_sq_sum(lambda: f64, ladder: &[f64]) -> f64 {
    let mut s = [0.0f64; 4];
    let mut c = [0.0f64; 4];
    let mut chunks = ladder.chunks_exact(4);
    for q in chunks.by_ref() {
        for l in 0..4 {
            let d = lambda - q[l];
            let x = 1.0 / (d * d);
            let y = x - c[l];
            let t = s[l] + y;
            c[l] = (t - s[l]) - y;
            s[l] = t;
        }
    }
    let mut tail = KahanSum::new();
    for &e in chunks.remainder() {
        let d = lambda - e;
        tail.add(1.0 / (d * d));
    }
    for l in 0..4 {
        tail.add(s[l]);
        tail.add(-c[l]);
    }
    tail.value()
}

#[inline]
fn secular_eval(lambda: f64, p: &ModelParams, ladder: &[f64]) -> f64 {
    (lambda - p.eps0) - p.w * p.w * recip_sum(lambda, ladder)
}

/// The secular function `h(lambda)` whose zeros are the exact eigenvalues.
///
/// Strictly increasing between consecutive ladder levels; `-inf` to the right
/// of each pole, `+inf` to the left of the next.
pub fn secular_residual(lambda: f64, p: &ModelParams) -> Result<f64> {
    if p.w == 0.0 {
        return Ok(lambda - p.eps0);
    }
    let ladder = p.ladder();
    if ladder.contains(&lambda) {
        return Err(Error::PoleEvaluation(lambda));
    }
    Ok(secular_eval(lambda, p, &ladder))
}

/// Bisect for the root of `h` inside `(lo, hi)`.
///
/// `h < 0` at the left end and `h > 0` at the right end, by the limits at the
/// enclosing poles (or outer bounds); the endpoints themselves are never
/// evaluated, so poles are never touched.
fn bisect_root(
    mut lo: f64,
    mut hi: f64,
    index: usize,
    p: &ModelParams,
    ladder: &[f64],
) -> Result<f64> {
    let tol = 1e-14 * lo.abs().max(hi.abs()).max(p.de);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval collapsed to adjacent floats
            return Ok(mid);
        }
        let h = secular_eval(mid, p, ladder);
        if h == 0.0 {
            return Ok(mid);
        }
        if h < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::NoConvergence { index, max_iter: MAX_BISECTIONS })
}

/// All n exact eigenvalues, ascending.
///
/// `w = 0` short-circuits to the sorted unperturbed spectrum.
pub fn eigenvalues_exact(p: &ModelParams) -> Result<Vec<f64>> {
    if p.w == 0.0 {
        let mut levels = p.unperturbed_spectrum();
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return Ok(levels);
    }
    let ladder = p.ladder();
    let bound = ladder
        .iter()
        .fold(p.eps0.abs(), |m, &e| m.max(e.abs()))
        + p.n as f64 * p.w
        + p.de;
    let last = ladder.len() - 1;
    (0..p.n)
        .into_par_iter()
        .map(|k| {
            let (lo, hi) = if k == 0 {
                (-bound, ladder[0])
            } else if k == p.n - 1 {
                (ladder[last], bound)
            } else {
                (ladder[k - 1], ladder[k])
            };
            bisect_root(lo, hi, k + 1, p, &ladder)
        })
        .collect()
}

/// Exact first-component weight `|<1|psi_k>|^2 = 1/(1 + w^2 sum 1/(e_n - E_k)^2)`.
///
/// Meaningful for `w > 0` and `ek` a converged eigenvalue.
pub fn first_component_sq_exact(ek: f64, p: &ModelParams) -> Result<f64> {
    let s = recip_sq_sum(ek, &p.ladder());
    if !s.is_finite() {
        return Err(Error::EigenvalueAtPole(ek));
    }
    Ok(1.0 / (1.0 + p.w * p.w * s))
}

/// Reconstruct the unit eigenvector for eigenvalue `ek`.
///
/// The first component is fixed positive; components n >= 2 follow
/// `psi_n = psi_1 * w / (ek - e_n)`.
pub fn eigenvector_exact(ek: f64, p: &ModelParams) -> Result<ExactEigenvector> {
    if p.w == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let ladder = p.ladder();
    let psi1 = first_component_sq_exact(ek, p)?.sqrt();
    let mut components = Vec::with_capacity(p.n);
    components.push(psi1);
    for &e in &ladder {
        components.push(psi1 * p.w / (ek - e));
    }
    let mut norm_sq = KahanSum::new();
    for &x in &components {
        norm_sq.add(x * x);
    }
    Ok(ExactEigenvector {
        components,
        norm_error: norm_sq.value().sqrt() - 1.0,
    })
}

impl ExactSpectrum {
    /// Solve the full spectral problem for `p`.
    pub fn compute(p: &ModelParams) -> Result<Self> {
        if p.w == 0.0 {
            let energies = eigenvalues_exact(p)?;
            // decoupled limit: |1> itself is an eigenvector at eps0; put the
            // whole weight on the first of the degenerate pair
            let mut weights = vec![0.0; p.n];
            let at = energies
                .iter()
                .position(|&e| e == p.eps0)
                .expect("eps0 is always present in the unperturbed spectrum");
            weights[at] = 1.0;
            return Ok(Self { energies, weights });
        }
        let energies = eigenvalues_exact(p)?;
        let weights = energies
            .par_iter()
            .map(|&e| first_component_sq_exact(e, p))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { energies, weights })
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}
