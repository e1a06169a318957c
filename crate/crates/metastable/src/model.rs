//! Model definition: an n-level system whose first basis vector is a discrete
//! level coupled with uniform strength `w` to the remaining n-1 levels, which
//! form an equidistant ladder (spacing `de`) imitating a continuum.
//!
//! The full Hamiltonian is a symmetric arrowhead matrix: the diagonal carries
//! the unperturbed levels, the first row/column carries the coupling.

use crate::error::{Error, Result};

/// Defining parameters of the model.
///
/// Indices `k` (eigenvalues) and `n` (unperturbed levels) are 1-based in all
/// public operations; vectors storing per-level data are 0-based as usual, so
/// slot `i` holds the value for level `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Matrix dimension (even, >= 4).
    pub n: usize,
    /// Spacing of the quasi-continuum levels (> 0).
    pub de: f64,
    /// Coupling matrix element between the discrete level and every ladder level (>= 0).
    pub w: f64,
    /// Energy of the discrete level; every ladder energy is offset by it too.
    pub eps0: f64,
    /// Action scale used by the time evolution (> 0).
    pub hbar: f64,
}

/// Physical scales derived from [`ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// Line width `gamma = 2*pi*w^2/de` (golden-rule rate in energy units).
    pub gamma: f64,
    /// Dimensionless width-to-spacing ratio `r = gamma/de`.
    pub r: f64,
    /// Full revival period of the unperturbed ladder, `2*pi*hbar/de`.
    pub t0: f64,
    /// Shortest resolvable time, `hbar/e0_max`.
    pub tmin: f64,
    /// Longest faithful evolution time, `hbar/de`.
    pub tmax: f64,
    /// Lower edge of the ladder relative to `eps0`: `-de*(n/2 - 1)`.
    pub e0_min: f64,
    /// Upper edge of the ladder relative to `eps0`: `de*(n/2 - 1)`.
    pub e0_max: f64,
}

impl ModelParams {
    /// Validated constructor.
    pub fn new(n: usize, de: f64, w: f64, eps0: f64, hbar: f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParams(format!("n = {n} must be at least 4")));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidParams(format!("n = {n} must be even")));
        }
        if de <= 0.0 || !de.is_finite() {
            return Err(Error::InvalidParams(format!("de = {de} must be positive")));
        }
        if w < 0.0 || !w.is_finite() {
            return Err(Error::InvalidParams(format!("w = {w} must be non-negative")));
        }
        if hbar <= 0.0 || !hbar.is_finite() {
            return Err(Error::InvalidParams(format!("hbar = {hbar} must be positive")));
        }
        if !eps0.is_finite() {
            return Err(Error::InvalidParams(format!("eps0 = {eps0} must be finite")));
        }
        Ok(Self { n, de, w, eps0, hbar })
    }

    /// Constructor taking the dimensionless ratio `r = gamma/de` instead of `w`.
    pub fn from_r(n: usize, de: f64, r: f64, eps0: f64, hbar: f64) -> Result<Self> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::InvalidParams(format!("r = {r} must be non-negative")));
        }
        let w = de * (r / (2.0 * std::f64::consts::PI)).sqrt();
        Self::new(n, de, w, eps0, hbar)
    }

    /// Unperturbed diagonal, in basis order (not sorted): slot 0 is the
    /// discrete level `eps0`; slot `n-1` (1-based level n >= 2) is
    /// `eps0 + de*(n - N/2 - 1)`. The value `eps0` appears twice, at 1-based
    /// indices 1 and N/2 + 1.
    pub fn unperturbed_spectrum(&self) -> Vec<f64> {
        let half = self.n as f64 / 2.0;
        let mut levels = Vec::with_capacity(self.n);
        levels.push(self.eps0);
        for n in 2..=self.n {
            levels.push(self.eps0 + self.de * (n as f64 - half - 1.0));
        }
        levels
    }

    /// Ladder energies (unperturbed levels for n >= 2), ascending. These are
    /// the poles of the secular function.
    pub fn ladder(&self) -> Vec<f64> {
        let half = self.n as f64 / 2.0;
        (2..=self.n)
            .map(|n| self.eps0 + self.de * (n as f64 - half - 1.0))
            .collect()
    }

    pub fn derived_scales(&self) -> DerivedScales {
        let gamma = 2.0 * std::f64::consts::PI * self.w * self.w / self.de;
        let e0_max = self.de * (self.n as f64 / 2.0 - 1.0);
        DerivedScales {
            gamma,
            r: gamma / self.de,
            t0: 2.0 * std::f64::consts::PI * self.hbar / self.de,
            tmin: self.hbar / e0_max,
            tmax: self.hbar / self.de,
            e0_min: -e0_max,
            e0_max,
        }
    }

    /// Dense arrowhead Hamiltonian (row-major). Intended for small n; the
    /// cost of anything built on it is O(n^3).
    pub fn dense_hamiltonian(&self) -> Vec<Vec<f64>> {
        let diag = self.unperturbed_spectrum();
        let mut h = vec![vec![0.0; self.n]; self.n];
        for (i, row) in h.iter_mut().enumerate() {
            row[i] = diag[i];
        }
        for i in 1..self.n {
            h[0][i] = self.w;
            h[i][0] = self.w;
        }
        h
    }
}
