//! Error analysis of the analytic solution against the exact solver.
//!
//! Three maximum-deviation metrics as functions of the width-to-spacing ratio
//! `r` at fixed `n`: energy error (final analytic energy vs exact
//! eigenvalue), weight error (ladder-sum weight at the final energy vs exact
//! weight), and line-shape error (Lorentzian weight vs exact weight). Each
//! curve falls while the mid-band error dominates and is taken over by edge
//! effects around a turning point `r0` that grows with `n`.
//!
//! The energy and weight errors rise again past `r0`, so their turning points
//! are interior minima. The Lorentzian error instead levels off into a slowly
//! drifting plateau; its turning point is the knee where the log-log descent
//! rate first crosses -1.

use std::io::Write;

use rayon::prelude::*;

use crate::approx::{approx_spectrum, ApproxLevel};
use crate::error::{Error, Result};
use crate::exact::ExactSpectrum;
use crate::model::ModelParams;

/// Which error metric a turning-point search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// `max_k |E_final - E_exact|` (an energy).
    Energy,
    /// `max_k |w_approx - w_exact|` (dimensionless).
    Weight,
    /// `max_k |w_lorentz - w_exact|` (dimensionless).
    Lorentzian,
}

/// The three metrics at one `(n, r)` point, with 1-based argmax indices.
#[derive(Debug, Clone, Copy)]
pub struct ErrorTriple {
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub argmax1: usize,
    pub argmax2: usize,
    pub argmax3: usize,
}

impl ErrorTriple {
    pub fn delta(&self, kind: DeltaKind) -> f64 {
        match kind {
            DeltaKind::Energy => self.delta1,
            DeltaKind::Weight => self.delta2,
            DeltaKind::Lorentzian => self.delta3,
        }
    }

    pub fn argmax(&self, kind: DeltaKind) -> usize {
        match kind {
            DeltaKind::Energy => self.argmax1,
            DeltaKind::Weight => self.argmax2,
            DeltaKind::Lorentzian => self.argmax3,
        }
    }
}

/// Error metrics over a grid of `r` values at fixed `n`.
#[derive(Debug, Clone)]
pub struct ErrorSweep {
    pub n: usize,
    pub r_values: Vec<f64>,
    pub triples: Vec<ErrorTriple>,
    /// Grid-resolution `(r, delta)` minima per metric, in
    /// `[energy, weight, lorentzian]` order.
    pub turning_points: [(f64, f64); 3],
}

/// Turning points and minimal errors for the standard sizes.
#[derive(Debug, Clone)]
pub struct TurningPointTable {
    pub rows: Vec<TurningPointRow>,
}

/// One row of the turning-point summary.
///
/// `delta[0]` is the energy error in units of `de` (making the table
/// independent of the energy scale); `delta[1]` and `delta[2]` are the
/// dimensionless weight errors.
#[derive(Debug, Clone, Copy)]
pub struct TurningPointRow {
    pub n: usize,
    pub r0: [f64; 3],
    pub delta: [f64; 3],
}

fn max_abs_dev(pairs: impl Iterator<Item = (f64, f64)>) -> (f64, usize) {
    let mut best = (0.0f64, 1usize);
    for (k0, (a, b)) in pairs.enumerate() {
        let d = (a - b).abs();
        if d > best.0 {
            best = (d, k0 + 1);
        }
    }
    best
}

/// All three error metrics at one `(n, r)` point; `w` is derived as
/// `de*sqrt(r/2pi)` and `eps0 = 0`, `hbar = 1`.
pub fn error_triple(n: usize, r: f64, de: f64) -> Result<ErrorTriple> {
    if r <= 0.0 || r.is_nan() {
        return Err(Error::InvalidParams(format!("r = {r} must be positive")));
    }
    let p = ModelParams::from_r(n, de, r, 0.0, 1.0)?;
    let exact = ExactSpectrum::compute(&p)?;
    let levels: Vec<ApproxLevel> = approx_spectrum(&p)?;
    let (delta1, argmax1) = max_abs_dev(
        levels
            .iter()
            .map(|l| l.e_final + p.eps0)
            .zip(exact.energies.iter().copied()),
    );
    let (delta2, argmax2) = max_abs_dev(
        levels
            .iter()
            .map(|l| l.weight_approx)
            .zip(exact.weights.iter().copied()),
    );
    let (delta3, argmax3) = max_abs_dev(
        levels
            .iter()
            .map(|l| l.weight_lorentz)
            .zip(exact.weights.iter().copied()),
    );
    Ok(ErrorTriple { delta1, delta2, delta3, argmax1, argmax2, argmax3 })
}

/// Evaluate the triple on every grid point (ascending `r` values).
pub fn sweep_over_r(n: usize, r_values: &[f64], de: f64) -> Result<ErrorSweep> {
    if r_values.is_empty() {
        return Err(Error::InvalidParams("empty r grid".into()));
    }
    if r_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("r grid must be strictly increasing".into()));
    }
    let triples: Vec<ErrorTriple> = r_values
        .par_iter()
        .map(|&r| error_triple(n, r, de))
        .collect::<Result<_>>()?;
    let turning_points = [DeltaKind::Energy, DeltaKind::Weight, DeltaKind::Lorentzian].map(|kind| {
        let (i, t) = triples
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.delta(kind).partial_cmp(&b.1.delta(kind)).unwrap())
            .unwrap();
        (r_values[i], t.delta(kind))
    });
    Ok(ErrorSweep { n, r_values: r_values.to_vec(), triples, turning_points })
}

/// `count` log-spaced values covering `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Golden-section minimization of `f` on `[a, b]`; returns `(x_min, f_min)`.
fn golden_min(f: &mut impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_895;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

const PRESCAN_POINTS: usize = 25;
/// Log-log descent rate separating the falling mid-band branch (slope ~ -2)
/// from the plateau; crossing it marks the knee of the Lorentzian error.
const KNEE_SLOPE: f64 = -1.0;

struct TurningPointSearch<'a> {
    n: usize,
    de: f64,
    kind: DeltaKind,
    /// Evaluation cache; turning-point searches revisit nearby `r`.
    cache: &'a mut Vec<(f64, f64)>,
}

impl TurningPointSearch<'_> {
    fn delta_at(&mut self, r: f64) -> Result<f64> {
        if let Some(&(_, d)) = self.cache.iter().find(|&&(rr, _)| rr == r) {
            return Ok(d);
        }
        let d = error_triple(self.n, r, self.de)?.delta(self.kind);
        self.cache.push((r, d));
        Ok(d)
    }

    /// Central log-log slope at `r` with +-5% spacing.
    fn slope_at(&mut self, r: f64) -> Result<f64> {
        let q = 1.05f64;
        let hi = self.delta_at(r * q)?;
        let lo = self.delta_at(r / q)?;
        Ok((hi.ln() - lo.ln()) / (2.0 * q.ln()))
    }

    fn run(&mut self, r_lo: f64, r_hi: f64, deltas: &[f64], grid: &[f64]) -> Result<(f64, f64)> {
        match self.kind {
            DeltaKind::Energy | DeltaKind::Weight => {
                let imin = deltas
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .unwrap()
                    .0;
                if imin == 0 || imin == grid.len() - 1 {
                    return Err(Error::NoTurningPoint { r_lo, r_hi });
                }
                let (a, b) = (grid[imin - 1].ln(), grid[imin + 1].ln());
                let mut eval = |x: f64| self.delta_at(x.exp());
                let (x, d) = golden_min(&mut eval, a, b, 0.01f64.ln_1p())?;
                Ok((x.exp(), d))
            }
            DeltaKind::Lorentzian => {
                // locate the first grid segment whose slope reaches the knee
                // threshold, then bisect on the local slope
                let slopes: Vec<f64> = deltas
                    .windows(2)
                    .zip(grid.windows(2))
                    .map(|(d, r)| (d[1].ln() - d[0].ln()) / (r[1].ln() - r[0].ln()))
                    .collect();
                let cross = slopes
                    .windows(2)
                    .position(|s| s[0] < KNEE_SLOPE && s[1] >= KNEE_SLOPE)
                    .ok_or(Error::NoTurningPoint { r_lo, r_hi })?;
                // segment midpoints bracket the crossing
                let mut a = (grid[cross].ln() + grid[cross + 1].ln()) / 2.0;
                let mut b = (grid[cross + 1].ln() + grid[cross + 2].ln()) / 2.0;
                for _ in 0..7 {
                    if b - a <= 0.01f64.ln_1p() {
                        break;
                    }
                    let mid = 0.5 * (a + b);
                    if self.slope_at(mid.exp())? < KNEE_SLOPE {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                let r0 = (0.5 * (a + b)).exp();
                Ok((r0, self.delta_at(r0)?))
            }
        }
    }
}

/// Locate the turning point of one error metric inside `[r_lo, r_hi]`.
///
/// Pre-scans 25 log-spaced points, then refines to ~1% in `r`: golden-section
/// minimization for the energy and weight errors, knee detection for the
/// Lorentzian error (see module docs). Fails with `NoTurningPoint` when the
/// bracket contains no interior minimum (respectively no knee).
pub fn locate_turning_point(
    n: usize,
    de: f64,
    kind: DeltaKind,
    r_lo: f64,
    r_hi: f64,
) -> Result<(f64, f64)> {
    if r_lo <= 0.0 || r_lo.is_nan() || r_hi <= r_lo {
        return Err(Error::InvalidParams(format!("bad r bracket [{r_lo}, {r_hi}]")));
    }
    let grid = log_grid(r_lo, r_hi, PRESCAN_POINTS);
    let sweep = sweep_over_r(n, &grid, de)?;
    let deltas: Vec<f64> = sweep.triples.iter().map(|t| t.delta(kind)).collect();
    let mut cache: Vec<(f64, f64)> = grid.iter().copied().zip(deltas.iter().copied()).collect();
    TurningPointSearch { n, de, kind, cache: &mut cache }.run(r_lo, r_hi, &deltas, &grid)
}

/// Turning points and minimal errors for `n` in {2000, 4000, 8000} over the
/// bracket `r` in [10, 250], sharing one pre-scan per size across the three
/// metrics. `delta[0]` is reported in units of `de`.
pub fn turning_point_table(de: f64) -> Result<TurningPointTable> {
    let (r_lo, r_hi) = (10.0, 250.0);
    let grid = log_grid(r_lo, r_hi, PRESCAN_POINTS);
    let mut rows = Vec::new();
    for n in [2000usize, 4000, 8000] {
        let sweep = sweep_over_r(n, &grid, de)?;
        let mut r0 = [0.0; 3];
        let mut delta = [0.0; 3];
        for (slot, kind) in [DeltaKind::Energy, DeltaKind::Weight, DeltaKind::Lorentzian]
            .into_iter()
            .enumerate()
        {
            let deltas: Vec<f64> = sweep.triples.iter().map(|t| t.delta(kind)).collect();
            let mut cache: Vec<(f64, f64)> =
                grid.iter().copied().zip(deltas.iter().copied()).collect();
            let (r, d) =
                TurningPointSearch { n, de, kind, cache: &mut cache }.run(r_lo, r_hi, &deltas, &grid)?;
            r0[slot] = r;
            delta[slot] = if kind == DeltaKind::Energy { d / de } else { d };
        }
        rows.push(TurningPointRow { n, r0, delta });
    }
    Ok(TurningPointTable { rows })
}

impl TurningPointTable {
    /// Fixed-header CSV: `N,R0_1,Delta1,R0_2,Delta2,R0_3,Delta3`.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "N,R0_1,Delta1,R0_2,Delta2,R0_3,Delta3")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                row.n,
                row.r0[0],
                row.delta[0],
                row.r0[1],
                row.delta[1],
                row.r0[2],
                row.delta[2],
            )?;
        }
        Ok(())
    }
}
