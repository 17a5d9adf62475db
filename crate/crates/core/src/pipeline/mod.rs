//! Solving `R_Z` end to end: instantiate `g_Z`, iterate a random seed onto a
//! superattracting five-cycle, and read the five roots off the cycle with
//! `Γ_Z`. Also derivation into a cache, basin images and self-verification.

mod basins;
mod cycle;
mod resolvent;
mod solver;
pub mod verify;

use std::path::PathBuf;

pub use basins::{render_basins, BasinConfig, BasinImage, Viewport};
pub use cycle::{iterate_to_cycle, random_seed_point, CycleOrbit};
pub use resolvent::{direct_roots, hausdorff, resolvent, ResolventQuintic};
pub use solver::{derive, DeriveConfig, DeriveReport, SolveReport, Solver};

use crate::error::{Error, Result};
use crate::param::DEFAULT_GUARD;
use crate::scalar::PrecisionContext;

/// Knobs for one solve.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub digits: u32,
    /// Required `max_i d(g⁵(ω̃ᵢ), ω̃ᵢ)` of the reported cycle.
    pub cycle_tol: f64,
    /// `d(p_n, p_{n+5})` below which the orbit counts as having found a cycle.
    pub detect_tol: f64,
    pub max_iter: usize,
    pub max_retries: usize,
    pub seed: u64,
    /// Radius of the excluded disks around `Z = 0` and `Z = 1/1728`.
    pub guard: f64,
    pub cache_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(digits: u32) -> Self {
        RunConfig {
            digits,
            cycle_tol: 10f64.powi(15 - digits as i32),
            detect_tol: 1e-8,
            max_iter: 5000,
            max_retries: 8,
            seed: 0x5eed,
            guard: DEFAULT_GUARD,
            cache_path: None,
        }
    }

    pub fn context(&self) -> Result<PrecisionContext> {
        PrecisionContext::new(self.digits)
    }

    /// Largest acceptable `|R_Z(r_k)|`: half the working digits.
    pub fn residual_threshold(&self) -> f64 {
        10f64.powi(-(self.digits as i32) / 2)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.cycle_tol, self.detect_tol, self.guard];
        if positive.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be positive".into()));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::new(PrecisionContext::default().digits())
    }
}
