//! Simultaneous root finding (Aberth–Ehrlich with Gauss–Seidel updates).

use rug::Float;

use super::{BinaryForm, ProjPoint};
use crate::error::{Error, Result};
use crate::scalar::{BigComplex, FieldScalar, Scalar};

const MAX_ITERATIONS: usize = 500;

/// All `d` projective roots of `f`, with multiplicity.
///
/// Vanishing leading coefficients are reported as roots at `(1, 0)` and
/// vanishing trailing ones at `(0, 1)`. The rest come from the affine
/// polynomial `f(t, 1)`.
pub fn roots(f: &BinaryForm<BigComplex>) -> Result<Vec<ProjPoint>> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("roots of a degree-0 form".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero form".into()));
    }
    let prec = f.prec();
    let c = f.coeffs();
    let lead = c.iter().take_while(|x| x.is_exact_zero()).count();
    let trail = c.iter().rev().take_while(|x| x.is_exact_zero()).count();
    let mut out = Vec::with_capacity(f.degree());
    out.extend((0..lead).map(|_| ProjPoint::infinity(prec)));
    let core = &c[lead..c.len() - trail];
    let zero = ProjPoint::from_affine(BigComplex::zero(prec));
    if core.len() > 1 {
        match polynomial_roots(core, prec) {
            Ok(ts) => out.extend(ts.into_iter().map(ProjPoint::from_affine)),
            Err(Error::RootsNotConverged {
                iterations,
                residual,
                mut best,
            }) => {
                out.append(&mut best);
                out.extend((0..trail).map(|_| zero.clone()));
                return Err(Error::RootsNotConverged {
                    iterations,
                    residual,
                    best: out,
                });
            }
            Err(e) => return Err(e),
        }
    }
    out.extend((0..trail).map(|_| zero.clone()));
    Ok(out)
}

/// Roots of `a₀tⁿ + a₁tⁿ⁻¹ + … + aₙ` with `a₀ ≠ 0`.
pub fn polynomial_roots(a: &[BigComplex], prec: u32) -> Result<Vec<BigComplex>> {
    let n = a.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if a[0].is_exact_zero() {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let a: Vec<BigComplex> = a.iter().map(|c| c.with_prec(prec)).collect();
    if n == 1 {
        return Ok(vec![a[1].div_ref(&a[0]).neg_ref()]);
    }
    let abs_coeffs: Vec<f64> = a.iter().map(|c| c.abs_f64()).collect();
    let mut z = initial_guesses(&a, prec);
    let mut done = vec![false; n];
    let tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    let one = BigComplex::one(prec);

    for iter in 1..=MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&a, &z[i]);
            if p.is_exact_zero() {
                done[i] = true;
                continue;
            }
            if backward_error_small(&p, &z[i], &abs_coeffs, prec) {
                done[i] = true;
            }
            let ratio = p.div_ref(&dp);
            let mut s = z[i].zero_like();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = s.add_ref(&z[i].sub_ref(zj).inv());
                }
            }
            let denom = one.sub_ref(&ratio.mul_ref(&s));
            let w = if denom.is_exact_zero() || !dp.is_finite() || dp.is_exact_zero() {
                ratio
            } else {
                ratio.div_ref(&denom)
            };
            if !w.is_finite() {
                continue;
            }
            let step = w.abs();
            let scale = Float::with_val(prec, z[i].abs().max(&Float::with_val(prec, 1e-300)));
            z[i] = z[i].sub_ref(&w);
            if step <= Float::with_val(prec, &tol * &scale) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
        if iter == MAX_ITERATIONS {
            break;
        }
    }
    let residual = z
        .iter()
        .map(|zi| relative_residual(&a, zi, &abs_coeffs))
        .fold(0.0, f64::max);
    Err(Error::RootsNotConverged {
        iterations: MAX_ITERATIONS,
        residual,
        best: z.into_iter().map(ProjPoint::from_affine).collect(),
    })
}

/// A few Newton steps on `f` from `p`, in the chart where `p` is dominant.
pub fn newton_polish(f: &BinaryForm<BigComplex>, p: &ProjPoint, steps: usize) -> ProjPoint {
    let fx = f.d_x();
    let fy = f.d_y();
    let mut q = p.clone();
    for _ in 0..steps {
        let v = f.eval_at(&q);
        if v.is_exact_zero() {
            break;
        }
        let next = if q.w1_dominant() {
            // y/x as the unknown with x = 1
            let d = fy.eval_at(&q);
            if d.is_exact_zero() {
                break;
            }
            let t = q.w2().sub_ref(&v.div_ref(&d));
            ProjPoint::new(q.w1().clone(), t)
        } else {
            let d = fx.eval_at(&q);
            if d.is_exact_zero() {
                break;
            }
            let t = q.w1().sub_ref(&v.div_ref(&d));
            ProjPoint::new(t, q.w2().clone())
        };
        match next {
            Ok(n) => q = n,
            Err(_) => break,
        }
    }
    q
}

fn horner_with_derivative(a: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let mut p = a[0].clone();
    let mut dp = z.zero_like();
    for c in &a[1..] {
        dp = dp.mul_ref(z).add_ref(&p);
        p = p.mul_ref(z).add_ref(c);
    }
    (p, dp)
}

/// `|p(z)| / Σ|aₖ||z|ᵏ`, in `f64`.
fn relative_residual(a: &[BigComplex], z: &BigComplex, abs_coeffs: &[f64]) -> f64 {
    let (p, _) = horner_with_derivative(a, z);
    let r = z.abs_f64();
    let bound = abs_coeffs.iter().fold(0.0, |acc, &c| acc * r + c);
    if bound == 0.0 || !bound.is_finite() {
        return p.abs_f64();
    }
    p.abs_f64() / bound
}

fn backward_error_small(p: &BigComplex, z: &BigComplex, abs_coeffs: &[f64], prec: u32) -> bool {
    let r = z.abs_f64();
    let bound = abs_coeffs.iter().fold(0.0, |acc, &c| acc * r + c);
    if !bound.is_finite() || bound == 0.0 {
        return false;
    }
    // compared in big floats: the threshold is far below f64 range at high precision
    let lhs = p.abs();
    let rhs = Float::with_val(prec, Float::i_exp(1, 4 - prec as i32)) * bound;
    lhs <= rhs
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, log|a_{n-k}|)`; one circle per hull edge.
fn initial_guesses(a: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let n = a.len() - 1;
    // point k: power k, log modulus of its coefficient
    let pts: Vec<(usize, f64)> = (0..=n)
        .filter_map(|k| {
            let c = &a[n - k];
            if c.is_exact_zero() {
                return None;
            }
            let l = log_abs(c);
            l.is_finite().then_some((k, l))
        })
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - l1) - (l2 - l1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let m = k2 - k1;
        let log_r = (l1 - l2) / m as f64;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64
                + 2.0 * std::f64::consts::PI * k2 as f64 / n as f64
                + sigma;
            let r = Float::with_val(prec, log_r).exp();
            out.push(BigComplex::polar(&r, &Float::with_val(prec, theta)));
        }
    }
    out
}

fn log_abs(c: &BigComplex) -> f64 {
    let a = c.abs();
    let (mantissa, exp) = a.to_f64_exp();
    mantissa.abs().ln() + exp as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    const PREC: u32 = 232;

    fn int_form(c: &[i64]) -> BinaryForm<BigComplex> {
        BinaryForm::new(c.iter().map(|&v| Integer::from(v)).collect()).to_big(PREC)
    }

    #[test]
    fn quintuple_root_is_found_five_times() {
        // (x − y)^5
        let f = int_form(&[1, -5, 10, -10, 5, -1]);
        let r = roots(&f).unwrap();
        assert_eq!(r.len(), 5);
        let one = ProjPoint::from_affine(BigComplex::one(PREC));
        for p in &r {
            // a fivefold root is only determined to about a fifth of the precision
            assert!(p.chordal_distance(&one) < 1e-10, "{p:?}");
        }
    }

    #[test]
    fn leading_and_trailing_zeros_give_infinity_and_zero() {
        let f = int_form(&[0, 1, 0, 0, 0, 0, -11, 0, 0, 0, 0, -1, 0]);
        let r = roots(&f).unwrap();
        assert_eq!(r.len(), 12);
        let inf = ProjPoint::infinity(PREC);
        let zero = ProjPoint::from_affine(BigComplex::zero(PREC));
        assert!(r.iter().any(|p| p.chordal_distance(&inf) == 0.0));
        assert!(r.iter().any(|p| p.chordal_distance(&zero) == 0.0));
        for p in &r {
            assert!(f.eval_at(p).abs_f64() < 1e-60);
        }
    }

    #[test]
    fn reconstruction_recovers_coefficients() {
        let f = int_form(&[3, -7, 0, 2, 11, -5, 1]);
        let r = roots(&f).unwrap();
        let lead = f.coeffs()[0].clone();
        // from_roots normalises each root so the product picks up a scalar
        let g = BinaryForm::from_roots(&r, &lead);
        let ratio = f.coeffs()[0].div_ref(&g.coeffs()[0]);
        let g = g.scale(&ratio);
        assert!(f.relative_distance(&g) < 1e-55);
    }

    #[test]
    fn wide_dynamic_range_coefficients() {
        // (t − 1e-20)(t − 1)(t − 1e20)
        let a = BigComplex::from_f64(1e-20, 0.0, PREC);
        let b = BigComplex::one(PREC);
        let c = BigComplex::from_f64(1e20, 0.0, PREC);
        let roots_in = [a, b, c];
        let f = BinaryForm::from_roots(
            &roots_in.iter().cloned().map(ProjPoint::from_affine).collect::<Vec<_>>(),
            &BigComplex::one(PREC),
        );
        let r = roots(&f).unwrap();
        for want in &roots_in {
            let p = ProjPoint::from_affine(want.clone());
            let (_, d) = p.nearest(&r).unwrap();
            assert!(d < 1e-50);
        }
    }

    #[test]
    fn linear_polynomial() {
        let r = polynomial_roots(&[BigComplex::from_i64(2, PREC), BigComplex::from_i64(-6, PREC)], PREC).unwrap();
        assert!(r[0].dist_f64(&BigComplex::from_i64(3, PREC)) < 1e-60);
    }

    #[test]
    fn newton_polish_improves_a_rough_root() {
        let f = int_form(&[1, 0, -2]);
        let p = ProjPoint::from_affine(BigComplex::from_f64(1.4, 0.0, PREC));
        let q = newton_polish(&f, &p, 12);
        let want = ProjPoint::from_affine(BigComplex::new(crate::scalar::sqrt_u32(2, PREC), Float::new(PREC)));
        assert!(q.chordal_distance(&want) < 1e-60);
    }

    #[test]
    fn degree_zero_is_rejected() {
        assert!(roots(&int_form(&[4])).is_err());
        assert!(roots(&int_form(&[0, 0, 0])).is_err());
    }
}
