//! Interpolation in `Z`: exact Newton divided differences over the
//! rationals, and a discrete Fourier fit on a circle for floating values.

use rayon::prelude::*;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::scalar::{BigComplex, Scalar};

/// An inclusive range `lo..=hi` of exponents of `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentWindow {
    pub lo: i32,
    pub hi: i32,
}

impl LaurentWindow {
    pub fn new(lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "empty Laurent window {lo}..={hi}");
        LaurentWindow { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Doubles the width, growing by half the old width at each end.
    pub fn escalated(&self) -> Self {
        let grow = self.len().div_ceil(2) as i32;
        LaurentWindow::new(self.lo - grow, self.hi + grow)
    }
}

/// Coefficients `c₀ … c_{n−1}` of the polynomial of degree `< n` through
/// `(xs[i], ys[i])`.
pub fn interpolate_exact(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            let den = Rational::from(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    // expand the Newton form from the innermost term outwards
    let mut poly = vec![Rational::new(); n];
    poly[0] = dd[n - 1].clone();
    let mut deg = 0;
    for i in (0..n - 1).rev() {
        // poly ← poly·(x − xs[i]) + dd[i]
        for j in (0..=deg + 1).rev() {
            let shifted = if j > 0 { poly[j - 1].clone() } else { Rational::new() };
            let scaled = if j <= deg {
                Rational::from(&poly[j] * &xs[i])
            } else {
                Rational::new()
            };
            poly[j] = shifted - scaled;
        }
        deg += 1;
        poly[0] += &dd[i];
    }
    poly
}

/// Laurent coefficients on `window` through `(zs[i], ys[i])`; needs exactly
/// `window.len()` samples.
pub(crate) fn fit_laurent_exact(zs: &[Rational], ys: &[Rational], window: LaurentWindow) -> Vec<Rational> {
    let shifted: Vec<Rational> = zs
        .iter()
        .zip(ys)
        .map(|(z, y)| Rational::from(y * &crate::scalar::rational_pow(z, -window.lo)))
        .collect();
    interpolate_exact(zs, &shifted)
}

pub(crate) fn fit_on_circle<F>(
    window: LaurentWindow,
    n: usize,
    radius: &Float,
    prec: u32,
    eval: F,
) -> Result<(Vec<Vec<BigComplex>>, f64)>
where
    F: Fn(&BigComplex) -> Result<Vec<BigComplex>> + Sync,
{
    fit_on_circles(window, n, std::slice::from_ref(radius), prec, eval)
}

/// Fits on several circles and takes each coefficient `c_j` from the radius
/// `R` minimising `max|f|·R^(−j)`, the size of its rounding error.
pub(crate) fn fit_on_circles<F>(
    window: LaurentWindow,
    n: usize,
    radii: &[Float],
    prec: u32,
    eval: F,
) -> Result<(Vec<Vec<BigComplex>>, f64)>
where
    F: Fn(&BigComplex) -> Result<Vec<BigComplex>> + Sync,
{
    if n <= window.len() {
        return Err(Error::InvalidArgument(format!(
            "{n} circle samples cannot resolve {} Laurent coefficients",
            window.len()
        )));
    }
    if radii.is_empty() {
        return Err(Error::InvalidArgument("no fitting radius given".into()));
    }
    let mut best: Option<Vec<Vec<(BigComplex, f64)>>> = None;
    let mut alias = 0.0f64;
    for radius in radii {
        let (slots, a) = circle_dft(window, n, radius, prec, &eval)?;
        alias = alias.max(a);
        best = Some(match best {
            None => slots,
            Some(prev) => {
                if prev.len() != slots.len() {
                    return Err(Error::InvalidArgument("sample evaluations differ in length".into()));
                }
                prev.into_iter()
                    .zip(slots)
                    .map(|(p, q)| {
                        p.into_iter()
                            .zip(q)
                            .map(|(a, b)| if b.1 < a.1 { b } else { a })
                            .collect()
                    })
                    .collect()
            }
        });
    }
    let coeffs = best
        .unwrap()
        .into_iter()
        .map(|slot| slot.into_iter().map(|c| c.0).collect())
        .collect();
    Ok((coeffs, alias))
}

/// One circle: per slot, each coefficient with its error scale, and the
/// largest relative alias.
fn circle_dft<F>(
    window: LaurentWindow,
    n: usize,
    radius: &Float,
    prec: u32,
    eval: &F,
) -> Result<(Vec<Vec<(BigComplex, f64)>>, f64)>
where
    F: Fn(&BigComplex) -> Result<Vec<BigComplex>> + Sync,
{
    let nodes: Vec<BigComplex> = (0..n)
        .map(|j| BigComplex::root_of_unity(2 * n as u32, 2 * j as i64 + 1, prec).mul_real(radius))
        .collect();
    let values: Vec<Vec<BigComplex>> = nodes.par_iter().map(eval).collect::<Result<_>>()?;
    let slots = values[0].len();
    if values.iter().any(|v| v.len() != slots) {
        return Err(Error::InvalidArgument("sample evaluations differ in length".into()));
    }
    // exponents in the window, then the aliases that should vanish
    let exps: Vec<i32> = (window.lo..window.lo + n as i32).collect();
    let radius_big = BigComplex::new(radius.clone(), Float::new(prec));
    let r = radius.to_f64();
    let inv_n = Float::with_val(prec, 1) / n as u32;
    let per_slot: Vec<(Vec<(BigComplex, f64)>, f64)> = (0..slots)
        .into_par_iter()
        .map(|s| {
            let scale = values.iter().map(|v| v[s].abs_f64()).fold(0.0, f64::max);
            let mut coeffs = Vec::with_capacity(window.len());
            let mut alias = 0.0f64;
            for &m in &exps {
                let mut acc = BigComplex::zero(prec);
                for (j, v) in values.iter().enumerate() {
                    let tw = BigComplex::root_of_unity(2 * n as u32, -(m as i64) * (2 * j as i64 + 1), prec);
                    acc = acc.add_ref(&v[s].mul_ref(&tw));
                }
                let acc = acc.mul_real(&inv_n);
                if m <= window.hi {
                    coeffs.push((acc.mul_ref(&radius_big.pow_i32(-m)), scale * r.powi(-m)));
                } else if scale > 0.0 {
                    alias = alias.max(acc.abs_f64() / scale);
                }
            }
            (coeffs, alias)
        })
        .collect();
    let alias = per_slot.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok((per_slot.into_iter().map(|p| p.0).collect(), alias))
}
