//! Test-side oracles shared by the integration tests.

#![allow(dead_code)]

use icosolve::scalar::{FieldScalar, Scalar};
use icosolve::{BigComplex, BinaryForm, ProjPoint};
use rug::Float;

/// `p(t)` and `p'(t)` for coefficients in descending order.
fn horner2(coeffs: &[BigComplex], t: &BigComplex) -> (BigComplex, BigComplex) {
    let mut p = coeffs[0].clone();
    let mut dp = BigComplex::zero(t.prec());
    for c in &coeffs[1..] {
        dp = dp.mul_ref(t).add_ref(&p);
        p = p.mul_ref(t).add_ref(c);
    }
    (p, dp)
}

pub fn horner(coeffs: &[BigComplex], t: &BigComplex) -> BigComplex {
    horner2(coeffs, t).0
}

/// All roots of a polynomial with descending coefficients, by Aberth–Ehrlich
/// iteration from a circle of starting values.
pub fn aberth(coeffs: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let n = coeffs.len() - 1;
    let lead = coeffs[0].abs_f64();
    let radius = (1..=n)
        .map(|k| (coeffs[k].abs_f64() / lead).powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let a = 0.4 + std::f64::consts::TAU * k as f64 / n as f64;
            BigComplex::from_f64(radius * a.cos(), radius * a.sin(), prec)
        })
        .collect();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8)).to_f64();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner2(coeffs, &z[i]);
            if p.is_exact_zero() {
                continue;
            }
            let ratio = p.div_ref(&dp);
            let mut sum = BigComplex::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum = sum.add_ref(&z[i].sub_ref(zj).inv());
                }
            }
            let denom = BigComplex::one(prec).sub_ref(&ratio.mul_ref(&sum));
            let step = ratio.div_ref(&denom);
            moved = moved.max(step.abs_f64() / (1.0 + z[i].abs_f64()));
            z[i] = z[i].sub_ref(&step);
        }
        if moved < eps {
            break;
        }
    }
    z
}

/// Zeros of a binary form on the projective line; leading coefficients
/// negligible against the largest one count as zeros at infinity.
pub fn form_zeros(form: &BinaryForm<BigComplex>) -> Vec<ProjPoint> {
    let prec = form.prec();
    let c = form.coeffs();
    let norm = c.iter().map(|a| a.abs_f64()).fold(0.0, f64::max);
    let tiny = norm * 2f64.powi(-(prec as i32) + 16);
    let skip = c.iter().take_while(|a| a.abs_f64() <= tiny).count();
    let mut out: Vec<ProjPoint> = (0..skip)
        .map(|_| ProjPoint::new(BigComplex::one(prec), BigComplex::zero(prec)).unwrap())
        .collect();
    if c.len() - skip > 1 {
        out.extend(
            aberth(&c[skip..], prec)
                .into_iter()
                .map(|t| ProjPoint::new(t, BigComplex::one(prec)).unwrap()),
        );
    }
    out
}

pub fn hausdorff(a: &[BigComplex], b: &[BigComplex]) -> f64 {
    let one_way = |x: &[BigComplex], y: &[BigComplex]| {
        x.iter()
            .map(|p| y.iter().map(|q| p.dist_f64(q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// `v⁵ − 40Zv² − 5Zv − Z`, descending.
pub fn resolvent_coeffs(z: &BigComplex) -> Vec<BigComplex> {
    let prec = z.prec();
    vec![
        BigComplex::one(prec),
        BigComplex::zero(prec),
        BigComplex::zero(prec),
        z.mul_i64(-40),
        z.mul_i64(-5),
        z.neg_ref(),
    ]
}
