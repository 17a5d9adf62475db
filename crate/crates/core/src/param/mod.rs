//! Forms in `w` whose coefficients are Laurent polynomials in the
//! icosahedral parameter `Z = F⁵/H³`, and the coordinate change `S_y` that
//! produces them.
//!
//! For a point `y` with `Z(y) = Z`, substituting `x = S_y w` into an
//! invariant and dividing by a power of `F(y)` or `H(y)` gives a form in `w`
//! whose coefficients depend on `y` only through `Z`. Those coefficients are
//! recovered by sampling `y` and interpolating in `Z`: exactly over the
//! rationals for `F_Z`, `H_Z`, `φ_Z`, `η_Z`, and by a discrete Fourier fit on a
//! circle for floating-point targets.

pub mod cache;
mod fit;
mod reference;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::binform::{newton_polish, roots, BinaryForm, LinearAction, PlaneMap, ProjPoint};
use crate::error::{Error, Result};
use crate::icosa::IcosahedralData;
use crate::map31::MapParameters;
use crate::scalar::{BigComplex, FieldScalar, Scalar, ToBig};

pub use fit::{interpolate_exact, LaurentWindow};
pub use reference::{mismatched_coefficients, printed_f_z};

/// Default half-width of the excluded disks around `Z = 0` and `Z = 1/1728`.
pub const DEFAULT_GUARD: f64 = 1e-6;

/// `Z = 1/1728`, the parameter of the edge midpoints.
pub fn edge_parameter(prec: u32) -> BigComplex {
    BigComplex::new(Float::with_val(prec, 1) / 1728u32, Float::new(prec))
}

/// Rejects parameters within `guard` of `0` or `1/1728`.
pub fn check_admissible(z: &BigComplex, guard: f64) -> Result<()> {
    let reason = if z.abs_f64() <= guard {
        Some("the orbit collapses onto the 12 vertices")
    } else if z.dist_f64(&edge_parameter(z.prec())) <= guard {
        Some("the orbit collapses onto the 30 edge midpoints")
    } else if !z.is_finite() {
        Some("non-finite parameter")
    } else {
        None
    };
    match reason {
        Some(r) => Err(Error::DegenerateParameter {
            z: format!("{:.12}", z),
            reason: r.into(),
        }),
        None => Ok(()),
    }
}

/// `S_y`, with first column `F(y)·η(y)` and second column `H(y)·φ(y)`.
pub fn s_matrix(data: &IcosahedralData, y: &ProjPoint) -> Result<LinearAction<BigComplex>> {
    let fy = data.f_big.eval_at(y);
    let hy = data.h_big.eval_at(y);
    let scale = data.ctx.tol(4);
    if fy.abs_f64() <= scale || hy.abs_f64() <= scale {
        return Err(Error::DegenerateParameter {
            z: format!("{:.12}", z_of_values(&fy, &hy)),
            reason: "y lies on a special orbit (F(y)·H(y) = 0)".into(),
        });
    }
    let eta = (data.eta_big.first.eval_at(y), data.eta_big.second.eval_at(y));
    let phi = (data.phi_big.first.eval_at(y), data.phi_big.second.eval_at(y));
    let s = LinearAction::new(
        fy.mul_ref(&eta.0),
        hy.mul_ref(&phi.0),
        fy.mul_ref(&eta.1),
        hy.mul_ref(&phi.1),
    );
    let size = [&s.a, &s.b, &s.c, &s.d].iter().map(|e| e.abs_f64()).fold(0.0, f64::max);
    if s.det().abs_f64() <= scale * size * size {
        return Err(Error::DegenerateParameter {
            z: format!("{:.12}", z_of_values(&fy, &hy)),
            reason: "S_y is singular".into(),
        });
    }
    Ok(s)
}

/// `S_y` for an integer representative `y = (a, b)`.
pub fn s_matrix_exact(data: &IcosahedralData, a: &Integer, b: &Integer) -> LinearAction<Integer> {
    let fy = data.f.eval(a, b);
    let hy = data.h.eval(a, b);
    LinearAction::new(
        Integer::from(&fy * &data.eta.first.eval(a, b)),
        Integer::from(&hy * &data.phi.first.eval(a, b)),
        Integer::from(&fy * &data.eta.second.eval(a, b)),
        Integer::from(&hy * &data.phi.second.eval(a, b)),
    )
}

fn z_of_values(fy: &BigComplex, hy: &BigComplex) -> BigComplex {
    if hy.is_exact_zero() {
        return BigComplex::new(Float::with_val(fy.prec(), f64::INFINITY), Float::new(fy.prec()));
    }
    fy.pow_u32(5).div_ref(&hy.pow_u32(3))
}

/// `Z(y) = F(y)⁵/H(y)³`.
pub fn z_of(data: &IcosahedralData, y: &ProjPoint) -> Result<BigComplex> {
    let hy = data.h_big.eval_at(y);
    if hy.abs_f64() <= data.ctx.tol(4) {
        return Err(Error::DegenerateParameter {
            z: "∞".into(),
            reason: "H(y) vanishes: y is a face centre".into(),
        });
    }
    Ok(z_of_values(&data.f_big.eval_at(y), &hy))
}

/// Some `y` with `Z(y) = z`: a root of `F⁵ − z·H³`.
pub fn preimage(data: &IcosahedralData, z: &BigComplex) -> Result<ProjPoint> {
    let prec = z.prec();
    let form = &data.f.pow(5).to_big(prec) - &data.h.pow(3).to_big(prec).scale(z);
    let rs = roots(&form)?;
    // any root will do; take the one nearest a fixed generic point for determinism
    let anchor = ProjPoint::from_affine(BigComplex::from_f64(0.31, 0.17, prec));
    let (i, _) = anchor.nearest(&rs).unwrap();
    Ok(newton_polish(&form, &rs[i], 2))
}

/// A form of degree `wdegree` in `w` whose coefficient of `w₁^{d−k} w₂^k` is
/// `Z^(−zshift) · Σⱼ coeffs[k][j] Zʲ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamForm<S> {
    pub name: String,
    pub wdegree: usize,
    pub zshift: i32,
    pub coeffs: Vec<Vec<S>>,
}

impl<S: Scalar> ParamForm<S> {
    pub fn new(name: impl Into<String>, zshift: i32, coeffs: Vec<Vec<S>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("parametrised form without coefficients".into()));
        }
        let len = coeffs[0].len();
        if len == 0 || coeffs.iter().any(|c| c.len() != len) {
            return Err(Error::InvalidArgument(
                "every w-coefficient needs the same number of Z-coefficients".into(),
            ));
        }
        Ok(ParamForm {
            name: name.into(),
            wdegree: coeffs.len() - 1,
            zshift,
            coeffs,
        })
    }

    /// Exponent range `[−zshift, −zshift + len − 1]` of the Laurent coefficients.
    pub fn window(&self) -> LaurentWindow {
        LaurentWindow::new(-self.zshift, -self.zshift + self.coeffs[0].len() as i32 - 1)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ParamForm<T> {
        ParamForm {
            name: self.name.clone(),
            wdegree: self.wdegree,
            zshift: self.zshift,
            coeffs: self.coeffs.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    fn from_wforms(name: &str, zshift: i32, per_w: Vec<Vec<S>>) -> Self {
        ParamForm {
            name: name.into(),
            wdegree: per_w.len() - 1,
            zshift,
            coeffs: per_w,
        }
    }

    /// `(−∂_{w₂}, ∂_{w₁})` applied coefficientwise.
    pub fn cross(&self) -> Result<ParamMap<S>> {
        let d = self.wdegree;
        if d == 0 {
            return Err(Error::Degenerate(
                "the cross operator needs a form of degree at least 1".into(),
            ));
        }
        let scaled = |k: usize, m: i64| -> Vec<S> { self.coeffs[k].iter().map(|c| c.mul_i64(m)).collect() };
        let first = (1..=d).map(|k| scaled(k, -(k as i64))).collect();
        let second = (0..d).map(|k| scaled(k, (d - k) as i64)).collect();
        Ok(ParamMap {
            first: ParamForm::from_wforms(&format!("{}.cross.0", self.name), self.zshift, first),
            second: ParamForm::from_wforms(&format!("{}.cross.1", self.name), self.zshift, second),
        })
    }

    /// Removes leading and trailing Laurent coefficients that vanish for
    /// every `w`-monomial.
    pub fn trimmed(&self) -> Self {
        let len = self.coeffs[0].len();
        let zero_col = |j: usize| self.coeffs.iter().all(|c| c[j].is_exact_zero());
        let lo = (0..len).find(|&j| !zero_col(j)).unwrap_or(0);
        let hi = (0..len).rev().find(|&j| !zero_col(j)).unwrap_or(0);
        ParamForm {
            name: self.name.clone(),
            wdegree: self.wdegree,
            zshift: self.zshift - lo as i32,
            coeffs: self.coeffs.iter().map(|c| c[lo..=hi].to_vec()).collect(),
        }
    }
}

impl<S: Scalar + ToBig> ParamForm<S> {
    pub fn to_big(&self, prec: u32) -> ParamForm<BigComplex> {
        self.map(|c| c.to_big(prec))
    }
}

impl ParamForm<BigComplex> {
    /// The plain form in `w` at `Z = z`.
    pub fn instantiate(&self, z: &BigComplex) -> BinaryForm<BigComplex> {
        let shift = z.pow_i32(-self.zshift);
        BinaryForm::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let mut acc = c[c.len() - 1].clone();
                    for a in c[..c.len() - 1].iter().rev() {
                        acc = acc.mul_ref(z).add_ref(a);
                    }
                    acc.mul_ref(&shift)
                })
                .collect(),
        )
    }

    /// Largest coefficient modulus.
    pub fn norm_f64(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

impl ParamForm<Rational> {
    /// Exact instantiation at a rational parameter.
    pub fn instantiate_exact(&self, z: &Rational) -> BinaryForm<Rational> {
        let shift = crate::scalar::rational_pow(z, -self.zshift);
        BinaryForm::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let mut acc = c[c.len() - 1].clone();
                    for a in c[..c.len() - 1].iter().rev() {
                        acc = acc * z + a;
                    }
                    acc * &shift
                })
                .collect(),
        )
    }

    /// The Laurent polynomial attached to `w₁^{d−k} w₂^k`, as `(exponent, coefficient)` pairs.
    pub fn laurent(&self, k: usize) -> Vec<(i32, Rational)> {
        self.coeffs[k]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0() != std::cmp::Ordering::Equal)
            .map(|(j, c)| (j as i32 - self.zshift, c.clone()))
            .collect()
    }
}

/// A pair of [`ParamForm`]s of equal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMap<S> {
    pub first: ParamForm<S>,
    pub second: ParamForm<S>,
}

impl<S: Scalar + ToBig> ParamMap<S> {
    pub fn to_big(&self, prec: u32) -> ParamMap<BigComplex> {
        ParamMap {
            first: self.first.to_big(prec),
            second: self.second.to_big(prec),
        }
    }
}

impl ParamMap<BigComplex> {
    pub fn instantiate(&self, z: &BigComplex) -> PlaneMap<BigComplex> {
        PlaneMap {
            first: self.first.instantiate(z),
            second: self.second.instantiate(z),
        }
    }
}

/// The invariant or equivariant being carried to `w` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `F(S_y w)/F(y)³¹`.
    F,
    /// `H(S_y w)/H(y)³¹`.
    H,
    /// `adj(S_y)·φ(S_y w)/F(y)³¹`.
    Phi,
    /// `adj(S_y)·η(S_y w)/H(y)³¹`.
    Eta,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::F => "F_Z",
            Target::H => "H_Z",
            Target::Phi => "phi_Z",
            Target::Eta => "eta_Z",
        }
    }

    /// The Laurent window predicted by weights: powers of `F(y)` in the
    /// composed coefficients trade for `Z⁻¹`, powers of `H(y)` for `Z⁰`.
    pub fn window(self) -> LaurentWindow {
        match self {
            Target::F | Target::Phi => LaurentWindow::new(-6, 0),
            Target::H | Target::Eta => LaurentWindow::new(0, 10),
        }
    }

    fn components(self) -> usize {
        match self {
            Target::F | Target::H => 1,
            Target::Phi | Target::Eta => 2,
        }
    }

    /// Coefficient vectors of the target at the integer point `y = (a, b)`,
    /// one per component.
    pub fn exact_values(self, data: &IcosahedralData, a: &Integer, b: &Integer) -> Vec<Vec<Rational>> {
        let s = s_matrix_exact(data, a, b);
        let fy = data.f.eval(a, b);
        let hy = data.h.eval(a, b);
        let norm = |base: &Integer| Integer::from(rug::ops::Pow::pow(base, 31u32));
        let divide = |form: &BinaryForm<Integer>, n: &Integer| -> Vec<Rational> {
            form.coeffs()
                .iter()
                .map(|c| Rational::from((c.clone(), n.clone())))
                .collect()
        };
        match self {
            Target::F => vec![divide(&data.f.compose_linear(&s), &norm(&fy))],
            Target::H => vec![divide(&data.h.compose_linear(&s), &norm(&hy))],
            Target::Phi | Target::Eta => {
                let (m, base) = if self == Target::Phi {
                    (&data.phi, &fy)
                } else {
                    (&data.eta, &hy)
                };
                let moved = s.adjugate().apply_map(&m.compose_linear(&s));
                let n = norm(base);
                vec![divide(&moved.first, &n), divide(&moved.second, &n)]
            }
        }
    }

    /// The same values for a floating point `y`, used as an oracle.
    pub fn float_values(self, data: &IcosahedralData, y: &ProjPoint) -> Result<Vec<BinaryForm<BigComplex>>> {
        let s = s_matrix(data, y)?;
        let fy = data.f_big.eval_at(y);
        let hy = data.h_big.eval_at(y);
        Ok(match self {
            Target::F => vec![data.f_big.compose_linear(&s).scale(&fy.pow_u32(31).inv())],
            Target::H => vec![data.h_big.compose_linear(&s).scale(&hy.pow_u32(31).inv())],
            Target::Phi | Target::Eta => {
                let (m, base) = if self == Target::Phi {
                    (&data.phi_big, &fy)
                } else {
                    (&data.eta_big, &hy)
                };
                let moved = s.adjugate().apply_map(&m.compose_linear(&s));
                let inv = base.pow_u32(31).inv();
                vec![moved.first.scale(&inv), moved.second.scale(&inv)]
            }
        })
    }
}

/// How rational sample points are drawn.
#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// Extra samples beyond the window size, used only for validation.
    pub holdouts: usize,
    /// Integer coordinates are drawn from `[−max_coord, max_coord]`.
    pub max_coord: i64,
    pub seed: u64,
    /// Number of times a failing window may be widened.
    pub max_escalations: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            holdouts: 3,
            max_coord: 12,
            seed: 0x1c05a,
            max_escalations: 2,
        }
    }
}

/// A rational sample `y = (a, b)` with its exact parameter.
#[derive(Clone, Debug)]
pub struct RationalSample {
    pub a: Integer,
    pub b: Integer,
    pub z: Rational,
}

/// Draws `count` integer points with pairwise distinct `Z`, away from the
/// special orbits.
pub fn rational_samples(data: &IcosahedralData, count: usize, cfg: &SampleConfig) -> Result<Vec<RationalSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let special: Vec<(num_complex::Complex64, num_complex::Complex64)> =
        data.special_orbits()?.all().map(ProjPoint::to_c64).collect();
    let mut out: Vec<RationalSample> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::InvalidArgument(format!(
                "could not draw {count} distinct samples with coordinates up to {}",
                cfg.max_coord
            )));
        }
        let a = rng.random_range(-cfg.max_coord..=cfg.max_coord);
        let b = rng.random_range(-cfg.max_coord..=cfg.max_coord);
        if Integer::from(a).gcd(&Integer::from(b)) != 1 {
            continue;
        }
        let p = (
            num_complex::Complex64::new(a as f64, 0.0),
            num_complex::Complex64::new(b as f64, 0.0),
        );
        if special
            .iter()
            .any(|&q| crate::binform::chordal_distance_c64(p, q) < 1e-3)
        {
            continue;
        }
        let (ai, bi) = (Integer::from(a), Integer::from(b));
        let fy = data.f.eval(&ai, &bi);
        let hy = data.h.eval(&ai, &bi);
        if fy == 0 || hy == 0 {
            continue;
        }
        let z = Rational::from((
            Integer::from(rug::ops::Pow::pow(&fy, 5u32)),
            Integer::from(rug::ops::Pow::pow(&hy, 3u32)),
        ));
        if out.iter().any(|s| s.z == z) {
            continue;
        }
        out.push(RationalSample { a: ai, b: bi, z });
    }
    Ok(out)
}

/// Fits the target's coefficients as exact Laurent polynomials in `Z`.
///
/// Returns one [`ParamForm`] per component. Each coefficient is interpolated
/// through `window.len()` samples and checked exactly at the holdouts; a
/// failure widens the window.
pub fn derive_paramform(
    data: &IcosahedralData,
    target: Target,
    cfg: &SampleConfig,
) -> Result<Vec<ParamForm<Rational>>> {
    let mut window = target.window();
    let mut escalations = 0;
    loop {
        match fit_exact_window(data, target, window, cfg) {
            Ok(forms) => return Ok(forms),
            Err(Error::FitFailed { .. }) if escalations < cfg.max_escalations => {
                escalations += 1;
                window = window.escalated();
            }
            Err(e) => return Err(e),
        }
    }
}

fn fit_exact_window(
    data: &IcosahedralData,
    target: Target,
    window: LaurentWindow,
    cfg: &SampleConfig,
) -> Result<Vec<ParamForm<Rational>>> {
    let n = window.len();
    let samples = rational_samples(data, n + cfg.holdouts, cfg)?;
    let values: Vec<Vec<Vec<Rational>>> = samples
        .par_iter()
        .map(|s| target.exact_values(data, &s.a, &s.b))
        .collect();
    let (fit_s, hold_s) = samples.split_at(n);
    let zs: Vec<Rational> = fit_s.iter().map(|s| s.z.clone()).collect();
    let mut out = Vec::with_capacity(target.components());
    for comp in 0..target.components() {
        let name = if target.components() == 1 {
            target.name().to_string()
        } else {
            format!("{}.{}", target.name(), comp)
        };
        let wlen = values[0][comp].len();
        let per_w: Vec<Vec<Rational>> = (0..wlen)
            .into_par_iter()
            .map(|k| {
                let ys: Vec<Rational> = values[..n].iter().map(|v| v[comp][k].clone()).collect();
                fit::fit_laurent_exact(&zs, &ys, window)
            })
            .collect();
        let form = ParamForm::new(name.clone(), -window.lo, per_w)?;
        for (h, s) in hold_s.iter().enumerate() {
            let inst = form.instantiate_exact(&s.z);
            let truth = &values[n + h][comp];
            if let Some(k) = (0..wlen).find(|&k| inst.coeffs()[k] != truth[k]) {
                let diff = Rational::from(&inst.coeffs()[k] - &truth[k]);
                return Err(Error::FitFailed {
                    name,
                    index: k,
                    residual: diff.to_f64().abs(),
                });
            }
        }
        out.push(form.trimmed());
    }
    Ok(out)
}

/// Samples `eval` at `n` points `Z = R·e^{2πi(j+½)/n}` and recovers Laurent
/// coefficients on `window` by a discrete Fourier transform.
///
/// Returns the coefficients (one vector per output slot) and the largest
/// relative size of the aliased terms outside the window, which should be at
/// rounding level when the window is right.
pub fn fit_on_circle<F>(
    window: LaurentWindow,
    n: usize,
    radius: &Float,
    prec: u32,
    eval: F,
) -> Result<(Vec<Vec<BigComplex>>, f64)>
where
    F: Fn(&BigComplex) -> Result<Vec<BigComplex>> + Sync,
{
    fit::fit_on_circle(window, n, radius, prec, eval)
}

/// [`fit_on_circle`] over several radii, keeping each coefficient from the
/// circle where its rounding error is smallest.
pub fn fit_on_circles<F>(
    window: LaurentWindow,
    n: usize,
    radii: &[Float],
    prec: u32,
    eval: F,
) -> Result<(Vec<Vec<BigComplex>>, f64)>
where
    F: Fn(&BigComplex) -> Result<Vec<BigComplex>> + Sync,
{
    fit::fit_on_circles(window, n, radii, prec, eval)
}

/// `F_Z`, `H_Z`, `φ_Z`, `η_Z` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamForms {
    pub f_z: ParamForm<Rational>,
    pub h_z: ParamForm<Rational>,
    pub phi_z: ParamMap<Rational>,
    pub eta_z: ParamMap<Rational>,
}

impl ParamForms {
    /// Fits all four by exact interpolation.
    pub fn derive(data: &IcosahedralData, cfg: &SampleConfig) -> Result<Self> {
        let f = derive_paramform(data, Target::F, cfg)?;
        let h = derive_paramform(data, Target::H, cfg)?;
        let phi = derive_paramform(data, Target::Phi, cfg)?;
        let eta = derive_paramform(data, Target::Eta, cfg)?;
        let pair = |mut v: Vec<ParamForm<Rational>>| {
            let second = v.pop().unwrap();
            let first = v.pop().unwrap();
            ParamMap { first, second }
        };
        Ok(ParamForms {
            f_z: f.into_iter().next().unwrap(),
            h_z: h.into_iter().next().unwrap(),
            phi_z: pair(phi),
            eta_z: pair(eta),
        })
    }

    /// Compares the fitted `φ_Z`, `η_Z` with `×F_Z`, `×H_Z`; exact equality expected.
    pub fn cross_consistent(&self) -> Result<bool> {
        let same = |fitted: &ParamMap<Rational>, from: &ParamForm<Rational>| -> Result<bool> {
            let c = from.cross()?;
            let eq = |a: &ParamForm<Rational>, b: &ParamForm<Rational>| {
                let (a, b) = (a.trimmed(), b.trimmed());
                a.zshift == b.zshift && a.coeffs == b.coeffs
            };
            Ok(eq(&fitted.first, &c.first) && eq(&fitted.second, &c.second))
        };
        Ok(same(&self.phi_z, &self.f_z)? && same(&self.eta_z, &self.h_z)?)
    }

    pub fn to_big(&self, prec: u32) -> ParamSystem {
        ParamSystem {
            f_z: self.f_z.to_big(prec),
            h_z: self.h_z.to_big(prec),
            phi_z: self.phi_z.to_big(prec),
            eta_z: self.eta_z.to_big(prec),
        }
    }
}

/// Floating copies of the four parametrised forms, ready to instantiate.
#[derive(Clone, Debug)]
pub struct ParamSystem {
    pub f_z: ParamForm<BigComplex>,
    pub h_z: ParamForm<BigComplex>,
    pub phi_z: ParamMap<BigComplex>,
    pub eta_z: ParamMap<BigComplex>,
}

impl ParamSystem {
    /// `g_Z = α·H_Z·φ_Z + β·F_Z·η_Z` at `Z = z`, mirroring `g = α·H·φ + β·F·η`.
    pub fn g_z(&self, params: &MapParameters, z: &BigComplex, guard: f64) -> Result<PlaneMap<BigComplex>> {
        check_admissible(z, guard)?;
        let f = self.f_z.instantiate(z);
        let h = self.h_z.instantiate(z);
        let phi = self.phi_z.instantiate(z);
        let eta = self.eta_z.instantiate(z);
        Ok(&phi.times_form(&h).scale(&params.alpha) + &eta.times_form(&f).scale(&params.beta))
    }
}

/// `S_y` applied to a point, as a convenience for semiconjugacy checks.
pub fn apply_s(s: &LinearAction<BigComplex>, w: &ProjPoint) -> Result<ProjPoint> {
    s.apply(w)
}

/// `S_y⁻¹` applied to a point.
pub fn apply_s_inverse(s: &LinearAction<BigComplex>, x: &ProjPoint) -> Result<ProjPoint> {
    s.adjugate().apply(x)
}
