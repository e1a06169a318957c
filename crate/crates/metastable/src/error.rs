use thiserror::Error;

/// Errors surfaced by the solvers and the sweep machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// The secular function was evaluated exactly at an unperturbed level.
    #[error("secular function evaluated at a pole (lambda = {0})")]
    PoleEvaluation(f64),

    /// Bisection failed to shrink a root bracket within the iteration cap.
    #[error("bisection for root {index} did not converge within {max_iter} iterations")]
    NoConvergence { index: usize, max_iter: usize },

    /// An eigenvalue coincides with an unperturbed level to machine precision.
    #[error("eigenvalue {0} coincides with an unperturbed level")]
    EigenvalueAtPole(f64),

    /// The analytic solution needs w > 0 (the logarithmic correction divides by w^2).
    #[error("analytic solution requires a positive coupling w")]
    ZeroCoupling,

    /// The approximate weight formula has a sin^2 pole on the unperturbed grid.
    #[error("approximate weight undefined at grid-aligned energy (e - eps0)/de = {0}")]
    GridEnergy(f64),

    /// All truncated scaled energies were zero; the recurrence time is undefined.
    #[error("recurrence time undefined: every truncated scaled energy is zero")]
    DegenerateRecurrence,

    /// No interior turning point inside the requested bracket.
    #[error("no turning point inside r in [{r_lo}, {r_hi}]")]
    NoTurningPoint { r_lo: f64, r_hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
