//! Following an orbit of `g_Z` until it settles on a five-cycle.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use rand::Rng;

use super::RunConfig;
use crate::binform::{PlaneMap, ProjPoint};
use crate::error::{Error, Result};
use crate::map31::min_separation;
use crate::scalar::BigComplex;

/// A detected five-cycle `ω̃₁ … ω̃₅`, in orbit order.
#[derive(Clone, Debug)]
pub struct CycleOrbit {
    pub points: Vec<ProjPoint>,
    /// Applications of `g_Z`, polishing included.
    pub iterations: usize,
    /// `max_i d(g⁵(ω̃ᵢ), ω̃ᵢ)` at the last check.
    pub closure: f64,
}

/// A point uniform on the unit disk of one of the two affine charts, each
/// chart with probability ½.
pub fn random_seed_point<R: Rng>(rng: &mut R, prec: u32) -> ProjPoint {
    let r = rng.random::<f64>().sqrt();
    let theta = TAU * rng.random::<f64>();
    let t = BigComplex::from_f64(r * theta.cos(), r * theta.sin(), prec);
    let one = BigComplex::one(prec);
    let (w1, w2) = if rng.random::<bool>() { (t, one) } else { (one, t) };
    ProjPoint::new(w1, w2).expect("one coordinate is 1")
}

/// Iterates `g` from `p0` until `d(p_n, p_{n−5}) < detect_tol`, then applies
/// five more rounds of `g⁵` and keeps polishing until the cycle closes to
/// `cycle_tol`.
pub fn iterate_to_cycle(g: &PlaneMap<BigComplex>, p0: &ProjPoint, cfg: &RunConfig) -> Result<CycleOrbit> {
    let mut hist: VecDeque<ProjPoint> = VecDeque::with_capacity(11);
    hist.push_back(p0.clone());
    let mut detected_at = None;
    for n in 1..=cfg.max_iter {
        let next = g.apply(hist.back().unwrap())?;
        hist.push_back(next);
        if hist.len() > 10 {
            hist.pop_front();
        }
        let len = hist.len();
        match detected_at {
            None => {
                if len >= 6 && hist[len - 1].chordal_distance(&hist[len - 6]) < cfg.detect_tol {
                    detected_at = Some(n);
                }
            }
            Some(d) if n >= d + 25 && len == 10 => {
                let closure = (0..5)
                    .map(|i| hist[i + 5].chordal_distance(&hist[i]))
                    .fold(0.0, f64::max);
                if closure < cfg.cycle_tol {
                    let points: Vec<ProjPoint> = hist.range(5..).cloned().collect();
                    if min_separation(&points) < cfg.detect_tol.sqrt() {
                        return Err(Error::Degenerate(
                            "orbit settled on a cycle of period less than five".into(),
                        ));
                    }
                    return Ok(CycleOrbit {
                        points,
                        iterations: n,
                        closure,
                    });
                }
            }
            Some(_) => {}
        }
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iter,
    })
}
