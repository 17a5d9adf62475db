//! The eight end-to-end checks run by `icosolve verify`.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive, render_basins, BasinConfig, DeriveConfig, RunConfig, Solver};
use crate::binform::{roots, ProjPoint};
use crate::error::Result;
use crate::extractor::SelectorSet;
use crate::icosa::{m5_form, t5_form, u5_form};
use crate::map31::{critical_set, min_separation, MapParameters};
use crate::param::{check_admissible, derive_paramform, mismatched_coefficients, printed_f_z, s_matrix, Target};
use crate::scalar::BigComplex;

/// How much work each check does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Reduced sample counts and image size.
    Quick,
    /// The full acceptance sizes, including a fresh derivation.
    Full,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: &'static str, outcome: Result<(bool, String)>) -> Check {
    match outcome {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs all checks against `solver`.
pub fn verify(solver: &Solver, level: Level) -> VerifyReport {
    VerifyReport {
        checks: vec![
            check("exact syzygies", syzygies()),
            check("F_Z coefficients", f_z_coefficients(solver, level)),
            check("map structure", map_structure(solver)),
            check("selector contract", selectors(solver)),
            check("end-to-end solving", solving(solver, level)),
            check("semiconjugacy", semiconjugacy(solver)),
            check("basin assignment", basins(solver, level)),
            check("phi period two", phi_period_two(solver)),
        ],
    }
}

/// `T² − H³ + 1728F⁵ = 0`, `64m₅² − 95t₅²m₅ + 40t₅⁴ − 9u₅³ = 0` and `u₅m₅ = H`,
/// all over the integers.
pub fn syzygies() -> Result<(bool, String)> {
    let start = Instant::now();
    let (f, h, t) = (crate::icosa::f_form(), crate::icosa::h_form(), crate::icosa::t_form());
    let klein = &(&t.pow(2) - &h.pow(3)) + &f.pow(5).scale_i64(1728);
    let (t5, u5, m5) = (t5_form(), u5_form(), m5_form());
    let tetra = &(&(&m5.pow(2).scale_i64(64) - &(&t5.pow(2) * &m5).scale_i64(95)) + &t5.pow(4).scale_i64(40))
        - &u5.pow(3).scale_i64(9);
    let product = &u5 * &m5;
    let elapsed = start.elapsed();
    let ok = klein.is_zero() && tetra.is_zero() && product == h && elapsed < Duration::from_secs(1);
    Ok((ok, format!("exact identities hold: {ok}, {elapsed:?}")))
}

fn f_z_coefficients(solver: &Solver, level: Level) -> Result<(bool, String)> {
    let printed = printed_f_z();
    let fresh = derive_paramform(&solver.data, Target::F, &Default::default())?.remove(0);
    let mut bad = mismatched_coefficients(&fresh, &printed);
    let cached = solver.system.f_z.norm_f64();
    let mut detail = format!("13 polynomials, mismatches at {bad:?}");
    if level == Level::Full {
        let report = derive(solver.ctx(), &DeriveConfig::default())?;
        bad.extend(&report.f_z_mismatches);
        let fast = report.elapsed < Duration::from_secs(600);
        detail += &format!(", full derivation {:?}", report.elapsed);
        return Ok((bad.is_empty() && fast, detail));
    }
    Ok((bad.is_empty() && cached.is_finite(), detail))
}

fn map_structure(solver: &Solver) -> Result<(bool, String)> {
    let ctx = solver.ctx();
    let g = solver.reference_g();
    let cs = critical_set(&solver.data, &g)?;
    let closure = cs
        .points
        .iter()
        .map(|p| g.iterate(p, 5).map(|q| q.chordal_distance(p)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let printed = MapParameters::reference(solver.data.prec());
    let dist = solver.params.projective_distance(&printed);
    let ok = cs.points.len() == 60 && cs.cycles.len() == 12 && closure < ctx.tol(20) && dist < 1e-8;
    Ok((
        ok,
        format!(
            "{} critical points in {} cycles, g⁵ closure {closure:.2e}, (α:β) off by {dist:.2e}",
            cs.points.len(),
            cs.cycles.len()
        ),
    ))
}

fn selectors(solver: &Solver) -> Result<(bool, String)> {
    let d = &solver.data;
    let cs = &solver.critical;
    let set = SelectorSet::build(d, cs)?;
    let mut worst = 0.0f64;
    for (i, p) in cs.points.iter().enumerate() {
        for sel in &set.selectors {
            let want = BigComplex::from_i64((cs.labels[i] == sel.k) as i64, d.prec());
            worst = worst.max(sel.value(&d.f_big, p).dist_f64(&want));
        }
    }
    Ok((worst < d.ctx.tol(20), format!("max |B_k − δ| = {worst:.2e}")))
}

/// `Z` with `log|Z|` uniform on `[log 0.01, log 100]` and uniform argument,
/// redrawn inside the guard disks.
pub fn random_parameter<R: Rng>(rng: &mut R, prec: u32, guard: f64) -> BigComplex {
    loop {
        let r = 10f64.powf(rng.random_range(-2.0..=2.0));
        let a = TAU * rng.random::<f64>();
        let z = BigComplex::from_f64(r * a.cos(), r * a.sin(), prec);
        if check_admissible(&z, guard).is_ok() {
            return z;
        }
    }
}

fn solving(solver: &Solver, level: Level) -> Result<(bool, String)> {
    let count = if level == Level::Full { 100 } else { 8 };
    let cfg = RunConfig::new(solver.ctx().digits());
    let tol = 10f64.powi(-(solver.ctx().digits() as i32) / 3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x2024);
    let mut iterations = Vec::with_capacity(count);
    let (mut worst_match, mut worst_residual, mut slowest) = (0.0f64, 0.0f64, Duration::ZERO);
    for _ in 0..count {
        let z = random_parameter(&mut rng, solver.data.prec(), cfg.guard);
        let start = Instant::now();
        let report = solver.solve(&z, &cfg)?;
        slowest = slowest.max(start.elapsed());
        iterations.push(report.iterations);
        worst_match = worst_match.max(report.match_distance);
        worst_residual = worst_residual.max(report.max_residual());
    }
    iterations.sort_unstable();
    let median = iterations[count / 2];
    let ok = worst_match < tol && worst_residual < tol && median <= 500 && slowest < Duration::from_secs(2);
    Ok((
        ok,
        format!(
            "{count} parameters: Hausdorff {worst_match:.2e}, residual {worst_residual:.2e}, \
             median {median} iterations, slowest {slowest:?}"
        ),
    ))
}

fn semiconjugacy(solver: &Solver) -> Result<(bool, String)> {
    let d = &solver.data;
    let g = solver.reference_g();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e41);
    let mut worst = 0.0f64;
    let point = |rng: &mut ChaCha8Rng| {
        ProjPoint::from_affine(BigComplex::from_f64(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            d.prec(),
        ))
    };
    let mut done = 0;
    while done < 20 {
        let y = point(&mut rng);
        let w = point(&mut rng);
        let Ok(s) = s_matrix(d, &y) else { continue };
        let z = crate::param::z_of(d, &y)?;
        if check_admissible(&z, 1e-6).is_err() {
            continue;
        }
        let gz = solver.g_z(&z, 0.0)?;
        let lhs = g.apply(&s.apply(&w)?)?;
        let rhs = s.apply(&gz.apply(&w)?)?;
        worst = worst.max(lhs.chordal_distance(&rhs));
        done += 1;
    }
    Ok((worst < d.ctx.tol(15), format!("20 pairs, max chordal {worst:.2e}")))
}

fn basins(solver: &Solver, level: Level) -> Result<(bool, String)> {
    let size = if level == Level::Full { 512 } else { 128 };
    let cfg = BasinConfig {
        width: size,
        height: size,
        ..Default::default()
    };
    let map = solver.reference_g().to_c64();
    let cycles: Vec<Vec<_>> = solver
        .attractors(None)?
        .iter()
        .map(|c| c.iter().map(ProjPoint::to_c64).collect())
        .collect();
    let a = render_basins(&map, &cycles, &cfg)?;
    let b = render_basins(&map, &cycles, &cfg)?;
    let same = a.to_ppm() == b.to_ppm();
    let frac = a.assigned_fraction();
    Ok((
        frac >= 0.99 && same,
        format!("{size}×{size}: {:.3}% assigned, deterministic {same}", 100.0 * frac),
    ))
}

fn phi_period_two(solver: &Solver) -> Result<(bool, String)> {
    let d = &solver.data;
    let faces = roots(&d.h_big)?;
    let phi = &d.phi_big;
    let jac = phi.jacobian_form();
    let jnorm = jac.norm_f64();
    let mut worst_fix = 0.0f64;
    let mut worst_crit = 0.0f64;
    for p in &faces {
        worst_crit = worst_crit.max(jac.eval_at(p).abs_f64() / jnorm);
        let back = phi.apply(&phi.apply(p)?)?;
        worst_fix = worst_fix.max(back.chordal_distance(p));
    }
    let tol = d.ctx.tol(20);
    let ok = faces.len() == 20 && min_separation(&faces) > 1e-3 && worst_fix < tol && worst_crit < tol;
    Ok((
        ok,
        format!(
            "{} face centres, max |J_φ| {worst_crit:.2e}, max d(φ²p, p) {worst_fix:.2e}",
            faces.len()
        ),
    ))
}
